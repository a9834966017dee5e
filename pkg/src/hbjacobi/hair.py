"""The hair map, seen through its image in labeled Jacobi diagrams on X_n.

Each bead ``x_i^{+-1}`` becomes ``exp(+- leg(i+))``: the sum over ``k`` of
``k`` legs labeled ``i+`` attached at the bead's place, with weight
``(+-1)^k / k!``.  Legs count one degree each, like chords.

Labeled diagrams are stored as strand words in the symbols ``("e", p, h)``
(chord ends) and ``("l", i, 0)`` (a leg labeled ``i+``).  Relations: for a
chord ``b`` with both ends on strands and any end ``a`` next to it, the
4T combination ``sum_k [a b_k] - [b_k a]`` vanishes.  Two adjacent legs
with the same label commute automatically since their symbols coincide.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .diagcore import DiagLin, RelationWindow, Verdict
from .linalg import EchelonBasis, add_scaled

LSym = Tuple[str, int, int]
LWord = Tuple[Tuple[LSym, ...], ...]


def leg(i: int) -> LSym:
    return ("l", i, 0)


def _canon(strands: Iterable[Iterable[LSym]]) -> LWord:
    ren: Dict[int, int] = {}
    out = []
    for s in strands:
        new = []
        for x in s:
            if x[0] == "e":
                if x[1] in ren:
                    new.append(("e", ren[x[1]], 1))
                else:
                    ren[x[1]] = len(ren) + 1
                    new.append(("e", ren[x[1]], 0))
            else:
                new.append(x)
        out.append(tuple(new))
    return tuple(out)


def degree(w: LWord) -> int:
    ends = sum(1 for s in w for x in s if x[0] == "e")
    legs = sum(1 for s in w for x in s if x[0] == "l")
    return ends // 2 + legs


def _sym_text(x: LSym) -> str:
    if x[0] == "l":
        return f"leg({x[1]}+)"
    return f"e{x[1]}{'L' if x[2] == 0 else 'R'}"


def word_text(w: LWord) -> str:
    return "; ".join(f"s{i}=[{' '.join(_sym_text(x) for x in s)}]" for i, s in enumerate(w, 1))


class LabeledJacobi:
    """A truncated combination of labeled chord diagrams on X_n."""

    __slots__ = ("m", "n", "N", "terms")

    def __init__(self, m: int, n: int, N: int, terms: Optional[Mapping[LWord, object]] = None):
        self.m, self.n, self.N = m, n, N
        acc: Dict[LWord, Fraction] = {}
        for w, c in (terms or {}).items():
            if len(w) != n:
                raise ValueError("term has the wrong number of strands")
            for s in w:
                for x in s:
                    if x[0] == "l" and not 1 <= x[1] <= m:
                        raise ValueError(f"label {x[1]} out of range for m={m}")
            key = _canon(w)
            if degree(key) > N:
                continue
            v = acc.get(key, 0) + Fraction(c)
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        self.terms = acc

    def __add__(self, other: "LabeledJacobi") -> "LabeledJacobi":
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, Fraction(1))
        return LabeledJacobi(self.m, self.n, min(self.N, other.N), out)

    def __sub__(self, other: "LabeledJacobi") -> "LabeledJacobi":
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, Fraction(-1))
        return LabeledJacobi(self.m, self.n, min(self.N, other.N), out)

    def _check(self, other: "LabeledJacobi") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("labeled diagrams over different shapes")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledJacobi):
            return NotImplemented
        return (self.m, self.n) == (other.m, other.n) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def forget_legs(self) -> "LabeledJacobi":
        """Set every labeled leg to zero."""
        return LabeledJacobi(self.m, self.n, self.N, {
            w: c for w, c in self.terms.items() if not any(x[0] == "l" for s in w for x in s)})

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        rows = sorted(self.terms.items(), key=lambda wc: (degree(wc[0]), word_text(wc[0])))
        return "\n".join(f"{c} * [{word_text(w)}]" for w, c in rows)

    def __repr__(self) -> str:
        return f"LabeledJacobi(m={self.m}, n={self.n}, N={self.N}, {len(self.terms)} terms)"


def _expand_strand(strand, N: int) -> List[Tuple[Tuple[LSym, ...], Fraction, int]]:
    """All hair expansions of one strand as (word, coefficient, added degree)."""
    out: List[Tuple[Tuple[LSym, ...], Fraction, int]] = [((), Fraction(1), 0)]
    for x in strand:
        if x[0] == "e":
            out = [(w + (x,), c, d) for w, c, d in out]
            continue
        _, i, s = x
        nxt = []
        for w, c, d in out:
            for k in range(N - d + 1):
                nxt.append((w + (leg(i),) * k, c * Fraction(s) ** k / factorial(k), d + k))
        out = nxt
    return out


def hair_chi(v: DiagLin, N: Optional[int] = None) -> LabeledJacobi:
    """Replace each bead ``x_i^{+-1}`` by ``exp(+- leg(i+))``, truncated at degree ``N``."""
    if v.skeleton is not None:
        raise ValueError("hair_chi expects a morphism of A^B")
    N = v.N if N is None else min(N, v.N)
    acc: Dict[LWord, Fraction] = {}
    for t, c in v.terms.items():
        budget = N - t.degree
        if budget < 0:
            continue
        partial: List[Tuple[Tuple[Tuple[LSym, ...], ...], Fraction, int]] = [((), Fraction(c), 0)]
        for s in t.strands:
            opts = _expand_strand(s, budget)
            partial = [(w + (u,), a * b, d + e) for w, a, d in partial for u, b, e in opts if d + e <= budget]
        for w, a, _ in partial:
            key = _canon(w)
            acc[key] = acc.get(key, 0) + a
    return LabeledJacobi(v.m, v.n, N, acc)


def hair_linearity_check(v: DiagLin, w: DiagLin) -> bool:
    """``hair_chi`` is additive and never lowers the degree of a term."""
    if hair_chi(v + w) != hair_chi(v) + hair_chi(w):
        return False
    for d in (v, w):
        for t, c in d.terms.items():
            single = hair_chi(DiagLin(d.m, d.n, d.N, {t: c}, normalized=True))
            if any(degree(u) < t.degree for u in single.terms):
                return False
    return True


# --------------------------------------------------------------------------
# relation oracle on labeled diagrams


def _rank(w: LWord):
    s = word_text(w)
    return (degree(w), len(s), s)


def labeled_relations(w: LWord) -> List[Dict[LWord, Fraction]]:
    """4T combinations having ``w`` as a term."""
    rels = []
    for i, s in enumerate(w):
        for k, a in enumerate(s):
            for j in (k - 1, k + 1):
                if not 0 <= j < len(s):
                    continue
                b = s[j]
                if b[0] != "e" or (a[0] == "e" and a[1] == b[1]):
                    continue
                base = [[y for y in st if y != a] if ii == i else list(st) for ii, st in enumerate(w)]
                if a[0] == "l":
                    # identical legs are interchangeable; remove just the one at k
                    base[i] = list(s[:k]) + list(s[k + 1:])
                rel: Dict[LWord, Fraction] = {}
                for bi, st in enumerate(base):
                    for bk, y in enumerate(st):
                        if y[0] == "e" and y[1] == b[1]:
                            for pos, sign in ((bk, 1), (bk + 1, -1)):
                                new = [list(z) for z in base]
                                new[bi].insert(pos, a)
                                key = _canon(new)
                                rel[key] = rel.get(key, 0) + sign
                rel = {u: Fraction(c) for u, c in rel.items() if c}
                if rel:
                    rels.append(rel)
    return rels


def eq_labeled(a: LabeledJacobi, b: LabeledJacobi, win: Optional[RelationWindow] = None) -> Verdict:
    """Equality modulo the labeled 4T relations inside a length window."""
    a._check(b)
    win = win or RelationWindow()
    N = min(a.N, b.N)
    diff = dict(a.terms)
    add_scaled(diff, b.terms, Fraction(-1))
    diff = {w: c for w, c in diff.items() if degree(w) <= N}
    if not diff:
        return Verdict(True)
    L = max(len(s) for w in diff for s in w) + win.extra if win.max_len is None else win.max_len
    explored = 0
    by_deg: Dict[int, Dict[LWord, Fraction]] = {}
    for w, c in diff.items():
        by_deg.setdefault(degree(w), {})[w] = c
    for d, vec in sorted(by_deg.items()):
        basis = EchelonBasis(_rank)
        seen = set(vec)
        frontier = sorted(vec, key=_rank)
        found = False
        exhausted = True
        while True:
            if basis.contains(vec):
                found = True
                break
            if not frontier:
                break
            nxt = []
            for w in frontier:
                for rel in labeled_relations(w):
                    if any(max((len(s) for s in u), default=0) > L for u in rel):
                        exhausted = False
                        continue
                    basis.add(rel)
                    for u in rel:
                        if u not in seen and len(seen) < win.max_words:
                            seen.add(u)
                            nxt.append(u)
                        elif u not in seen:
                            exhausted = False
            frontier = sorted(nxt, key=_rank)
        explored += len(seen)
        if not found:
            return Verdict(False, L, explored, exhausted)
    return Verdict(True, L, explored, True)
