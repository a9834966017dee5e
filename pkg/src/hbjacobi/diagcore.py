"""Chord diagrams with beads, stored as tensor words.

A tensor word lists, for every skeleton component, the symbols met when the
component is read against its orientation.  Symbols are plain tuples:

* ``("b", j, s)``  a bead coloured by ``x_j`` (``s = +1``) or ``x_j^-1``;
* ``("e", p, h)``  one end of chord ``p``, ``h = 0`` for the half ``L`` and
  ``h = 1`` for ``R``.

Linear combinations (:class:`DiagLin`) are keyed by a gauge normal form that
absorbs chord orientation, bead cancellation and bead slides exactly.  The
4T relation is handled by a windowed linear oracle (:func:`eq_mod_relations`).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .fgroup import FreeWord, GroupHom, RankError, fg_inv
from .linalg import EchelonBasis, add_scaled

Symbol = Tuple[str, int, int]
Strand = Tuple[Symbol, ...]
L, R = 0, 1


def Bead(j: int, s: int = 1) -> Symbol:
    return ("b", j, s)


def End(p: int, h: Union[int, str]) -> Symbol:
    if isinstance(h, str):
        h = {"L": L, "R": R}[h]
    return ("e", p, h)


def is_bead(sym: Symbol) -> bool:
    return sym[0] == "b"


def is_end(sym: Symbol) -> bool:
    return sym[0] == "e"


# --------------------------------------------------------------------------
# skeleta


@dataclass(frozen=True)
class CapOnX:
    """The i-th cap of X_n; read from its left foot to its right foot."""

    index: int


@dataclass(frozen=True)
class Polarized:
    """An interval running from ``start`` to ``end``.

    Endpoints are ``(side, position)`` with side ``"s"`` (source, top) or
    ``"t"`` (target, bottom).  The tensor word reads it from ``end`` back to
    ``start``.
    """

    start: Tuple[str, int]
    end: Tuple[str, int]


Component = Union[CapOnX, Polarized]


def xn_skeleton(n: int) -> Tuple[Component, ...]:
    return tuple(CapOnX(i) for i in range(1, n + 1))


def _check_skeleton(skel: Tuple[Component, ...]) -> None:
    seen = set()
    for c in skel:
        if isinstance(c, Polarized):
            for ep in (c.start, c.end):
                if ep[0] not in ("s", "t"):
                    raise ValueError(f"bad endpoint side {ep!r}")
                if ep in seen:
                    raise ValueError(f"endpoint {ep!r} used twice")
                seen.add(ep)
        elif not isinstance(c, CapOnX):
            raise TypeError(f"unknown skeleton component {c!r}")


# --------------------------------------------------------------------------
# tensor words


@dataclass(frozen=True)
class TensorWord:
    m: int
    strands: Tuple[Strand, ...]
    skeleton: Optional[Tuple[Component, ...]] = None  # None means X_n

    def __post_init__(self) -> None:
        strands = tuple(tuple(s) for s in self.strands)
        object.__setattr__(self, "strands", strands)
        if self.skeleton is not None:
            skel = tuple(self.skeleton)
            if len(skel) != len(strands):
                raise ValueError("skeleton and strand counts differ")
            _check_skeleton(skel)
            if all(isinstance(c, CapOnX) and c.index == i + 1 for i, c in enumerate(skel)):
                skel = None
            object.__setattr__(self, "skeleton", skel)

    @property
    def n(self) -> int:
        return len(self.strands)

    @property
    def degree(self) -> int:
        return sum(1 for s in self.strands for x in s if x[0] == "e") // 2

    @property
    def is_polarized(self) -> bool:
        return self.skeleton is not None and any(isinstance(c, Polarized) for c in self.skeleton)

    def components(self) -> Tuple[Component, ...]:
        return self.skeleton if self.skeleton is not None else xn_skeleton(self.n)

    def length(self) -> int:
        return max((len(s) for s in self.strands), default=0)

    def beads(self) -> Iterator[Symbol]:
        for s in self.strands:
            for x in s:
                if x[0] == "b":
                    yield x

    def __str__(self) -> str:
        return to_text(self)


def validate(t: TensorWord) -> None:
    counts: Dict[int, List[int]] = {}
    for s in t.strands:
        for x in s:
            if x[0] == "b":
                if not 1 <= x[1] <= t.m or x[2] not in (1, -1):
                    raise RankError(f"bad bead {x!r} for m={t.m}")
            elif x[0] == "e":
                counts.setdefault(x[1], []).append(x[2])
            else:
                raise ValueError(f"unknown symbol {x!r}")
    for p, halves in counts.items():
        if len(halves) != 2:
            raise ValueError(f"chord {p} appears {len(halves)} times")


def _cancel(strand: Iterable[Symbol]) -> List[Symbol]:
    out: List[Symbol] = []
    for x in strand:
        if x[0] == "b" and out and out[-1][0] == "b" and out[-1][1] == x[1] and out[-1][2] == -x[2]:
            out.pop()
        else:
            out.append(x)
    return out


def canonicalize(t: TensorWord) -> TensorWord:
    """Renumber chords by first occurrence, first half ``L``, cancel beads."""
    validate(t)
    ren: Dict[int, int] = {}
    strands = []
    for s in t.strands:
        new: List[Symbol] = []
        for x in s:
            if x[0] == "e":
                if x[1] in ren:
                    new.append(("e", ren[x[1]], R))
                else:
                    ren[x[1]] = len(ren) + 1
                    new.append(("e", ren[x[1]], L))
            else:
                new.append(x)
        strands.append(tuple(_cancel(new)))
    return TensorWord(t.m, tuple(strands), t.skeleton)


def _word(syms: Sequence[Symbol], m: int) -> FreeWord:
    return FreeWord(m, tuple((x[1], x[2]) for x in syms))


def _syms(w: FreeWord) -> List[Symbol]:
    return [("b", j, e) for j, e in w.letters]


class _DSU:
    def __init__(self) -> None:
        self.parent: Dict[int, int] = {}

    def find(self, a: int) -> int:
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


@lru_cache(maxsize=200_000)
def bead_normal_form(t: TensorWord) -> TensorWord:
    """Unique representative modulo orientation, cancellation and bead slide.

    Segments between consecutive chord ends are edges of a graph on the
    basepoint (vertex 0) and the chords.  Gauging chord ``p`` by ``g`` sends
    a segment ``w`` from ``u`` to ``v`` to ``g_u w g_v^-1``.  Segments on a
    spanning tree (chosen greedily in reading order) are made trivial.
    """
    t = canonicalize(t)
    m = t.m
    segs: List[Tuple[int, int, FreeWord]] = []
    layout: List[List[Symbol]] = []  # the ends of each strand in order
    for s in t.strands:
        prev = 0
        buf: List[Symbol] = []
        ends: List[Symbol] = []
        for x in s:
            if x[0] == "e":
                segs.append((prev, x[1], _word(buf, m)))
                ends.append(x)
                prev = x[1]
                buf = []
            else:
                buf.append(x)
        segs.append((prev, 0, _word(buf, m)))
        layout.append(ends)
    dsu = _DSU()
    adj: Dict[int, List[Tuple[int, int, bool]]] = {}
    for k, (u, v, _) in enumerate(segs):
        if u != v and dsu.union(u, v):
            adj.setdefault(u, []).append((k, v, True))
            adj.setdefault(v, []).append((k, u, False))
    gauge: Dict[int, FreeWord] = {0: FreeWord.identity(m)}
    stack = [0]
    while stack:
        u = stack.pop()
        for k, v, forward in adj.get(u, ()):
            if v in gauge:
                continue
            w = segs[k][2]
            gauge[v] = gauge[u] * w if forward else gauge[u] * fg_inv(w)
            stack.append(v)
    strands = []
    k = 0
    for ends in layout:
        out: List[Symbol] = []
        for e in ends + [None]:
            u, v, w = segs[k]
            k += 1
            out.extend(_syms(gauge[u] * w * fg_inv(gauge[v])))
            if e is not None:
                out.append(e)
        strands.append(tuple(out))
    return TensorWord(m, tuple(strands), t.skeleton)


def gauge_chord(t: TensorWord, p: int, g: FreeWord) -> TensorWord:
    """Conjugate the segments around both ends of chord ``p`` by ``g``."""
    gi = _syms(fg_inv(g))
    gs = _syms(g)
    strands = []
    for s in t.strands:
        out: List[Symbol] = []
        for x in s:
            if x[0] == "e" and x[1] == p:
                out.extend(gi)
                out.append(x)
                out.extend(gs)
            else:
                out.append(x)
        strands.append(tuple(_cancel(out)))
    return TensorWord(t.m, tuple(strands), t.skeleton)


def homotopy_class(t: TensorWord) -> GroupHom:
    """Image of ``x_i`` is the product of the beads on strand ``i``."""
    if t.is_polarized:
        raise ValueError("homotopy class is defined only on X_n skeleta")
    return GroupHom(t.n, t.m, tuple(_word([x for x in s if x[0] == "b"], t.m) for s in t.strands))


def strip_beads(t: TensorWord) -> TensorWord:
    return TensorWord(t.m, tuple(tuple(x for x in s if x[0] == "e") for s in t.strands), t.skeleton)


def with_rank(t: TensorWord, m: int) -> TensorWord:
    return TensorWord(m, t.strands, t.skeleton)


# --------------------------------------------------------------------------
# text form

_SYM = re.compile(r"^(?:b(\d+)([+-])|e(\d+)([LR]))$")


def sym_text(x: Symbol) -> str:
    if x[0] == "b":
        return f"b{x[1]}{'+' if x[2] == 1 else '-'}"
    return f"e{x[1]}{'L' if x[2] == L else 'R'}"


def parse_sym(tok: str) -> Symbol:
    mm = _SYM.match(tok)
    if mm is None:
        raise ValueError(f"bad symbol {tok!r}")
    if mm.group(1):
        return ("b", int(mm.group(1)), 1 if mm.group(2) == "+" else -1)
    return ("e", int(mm.group(3)), L if mm.group(4) == "L" else R)


def _endpoint_text(ep: Tuple[str, int]) -> str:
    return f"{ep[0]}{ep[1]}"


def to_text(t: TensorWord) -> str:
    parts = [f"m={t.m}"]
    for i, s in enumerate(t.strands, 1):
        parts.append(f"s{i}=[{' '.join(sym_text(x) for x in s)}]")
    if t.skeleton is not None:
        comps = []
        for c in t.skeleton:
            if isinstance(c, CapOnX):
                comps.append(f"c{c.index}")
            else:
                comps.append(f"{_endpoint_text(c.start)}>{_endpoint_text(c.end)}")
        parts.append(f"skel=[{' '.join(comps)}]")
    return "; ".join(parts)


_EP = re.compile(r"^([st])(\d+)$")


def _parse_component(tok: str) -> Component:
    if tok.startswith("c") and tok[1:].isdigit():
        return CapOnX(int(tok[1:]))
    a, _, b = tok.partition(">")
    ma, mb = _EP.match(a), _EP.match(b)
    if not ma or not mb:
        raise ValueError(f"bad skeleton component {tok!r}")
    return Polarized((ma.group(1), int(ma.group(2))), (mb.group(1), int(mb.group(2))))


def parse_tensor_word(text: str) -> TensorWord:
    """Inverse of :func:`to_text`; ``s<i>`` entries must be in order."""
    m = None
    strands: List[Strand] = []
    skel = None
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, val = part.partition("=")
        key = key.strip()
        val = val.strip()
        if key == "m":
            m = int(val)
            continue
        if not (val.startswith("[") and val.endswith("]")):
            raise ValueError(f"expected [...] in {part!r}")
        body = val[1:-1].split()
        if key == "skel":
            skel = tuple(_parse_component(tok) for tok in body)
        elif key.startswith("s") and key[1:].isdigit():
            if int(key[1:]) != len(strands) + 1:
                raise ValueError(f"strand {key} out of order")
            strands.append(tuple(parse_sym(tok) for tok in body))
        else:
            raise ValueError(f"unknown field {key!r}")
    if m is None:
        raise ValueError("missing m=")
    t = TensorWord(m, tuple(strands), skel)
    validate(t)
    return t


def to_json_obj(t: TensorWord) -> dict:
    obj = {"m": t.m, "strands": [[sym_text(x) for x in s] for s in t.strands]}
    if t.skeleton is not None:
        obj["skeleton"] = to_text(t).split("skel=")[1][1:-1].split()
    return obj


def from_json_obj(obj: Mapping) -> TensorWord:
    skel = None
    if obj.get("skeleton") is not None:
        skel = tuple(_parse_component(tok) for tok in obj["skeleton"])
    t = TensorWord(int(obj["m"]), tuple(tuple(parse_sym(x) for x in s) for s in obj["strands"]), skel)
    validate(t)
    return t


def word_from_parts(m: int, strands: Sequence[Sequence[Union[Symbol, FreeWord, str]]],
                    skeleton: Optional[Tuple[Component, ...]] = None) -> TensorWord:
    """Build a tensor word where items may be symbols, FreeWords or tokens."""
    out = []
    for s in strands:
        syms: List[Symbol] = []
        for item in s:
            if isinstance(item, FreeWord):
                syms.extend(_syms(item))
            elif isinstance(item, str):
                syms.append(parse_sym(item))
            else:
                syms.append(tuple(item))
        out.append(tuple(syms))
    return TensorWord(m, tuple(out), skeleton)


# --------------------------------------------------------------------------
# linear combinations


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class DiagLin:
    """A finite rational combination of tensor words truncated above degree N.

    Keys are stored in bead normal form, so equality of DiagLin values is
    equality modulo every relation except 4T.
    """

    __slots__ = ("m", "n", "N", "skeleton", "terms")

    def __init__(self, m: int, n: int, N: int, terms: Optional[Mapping[TensorWord, object]] = None,
                 skeleton: Optional[Tuple[Component, ...]] = None, normalized: bool = False):
        self.m = m
        self.n = n
        self.N = N
        if skeleton is not None and all(isinstance(c, CapOnX) and c.index == i + 1 for i, c in enumerate(skeleton)):
            skeleton = None
        self.skeleton = skeleton
        acc: Dict[TensorWord, Fraction] = {}
        for t, c in (terms or {}).items():
            c = _frac(c)
            if not c:
                continue
            if not normalized:
                if t.m != m or t.n != n:
                    raise RankError(f"term {t} does not live in A({m},{n})")
                if t.skeleton != skeleton:
                    raise ValueError("skeleton mismatch")
                if t.degree > N:
                    continue
                t = bead_normal_form(t)
            v = acc.get(t, 0) + c
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
        self.terms = acc

    # constructors
    @classmethod
    def zero(cls, m: int, n: int, N: int, skeleton=None) -> "DiagLin":
        return cls(m, n, N, {}, skeleton)

    @classmethod
    def single(cls, t: TensorWord, N: int, coeff=1) -> "DiagLin":
        return cls(t.m, t.n, N, {t: coeff}, t.skeleton)

    def _like(self, terms: Mapping[TensorWord, Fraction], normalized: bool = True) -> "DiagLin":
        return DiagLin(self.m, self.n, self.N, terms, self.skeleton, normalized=normalized)

    def _check(self, other: "DiagLin") -> None:
        if (self.m, self.n, self.skeleton) != (other.m, other.n, other.skeleton):
            raise RankError(f"A({self.m},{self.n}) vs A({other.m},{other.n})")

    # arithmetic
    def __add__(self, other: "DiagLin") -> "DiagLin":
        self._check(other)
        out = dict(self.terms)
        add_scaled(out, other.terms, Fraction(1))
        return DiagLin(self.m, self.n, min(self.N, other.N), {k: v for k, v in out.items()
                                                               if k.degree <= min(self.N, other.N)},
                       self.skeleton, normalized=True)

    def __neg__(self) -> "DiagLin":
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "DiagLin") -> "DiagLin":
        return self + (-other)

    def scale(self, c) -> "DiagLin":
        c = _frac(c)
        return self._like({k: v * c for k, v in self.terms.items()})

    def __rmul__(self, c) -> "DiagLin":
        return self.scale(c)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagLin):
            return NotImplemented
        return (self.m, self.n, self.skeleton) == (other.m, other.n, other.skeleton) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"DiagLin(m={self.m}, n={self.n}, N={self.N}, {format_lin(self)})"

    # grading
    def truncate(self, N: int) -> "DiagLin":
        return DiagLin(self.m, self.n, min(N, self.N), {k: v for k, v in self.terms.items() if k.degree <= N},
                       self.skeleton, normalized=True)

    def degree_part(self, k: int) -> "DiagLin":
        return self._like({t: c for t, c in self.terms.items() if t.degree == k})

    def graded(self) -> Dict[int, Dict[TensorWord, Fraction]]:
        out: Dict[int, Dict[TensorWord, Fraction]] = {}
        for t, c in self.terms.items():
            out.setdefault(t.degree, {})[t] = c
        return out

    def max_length(self) -> int:
        return max((t.length() for t in self.terms), default=0)

    def map_terms(self, f: Callable[[TensorWord], Mapping[TensorWord, Fraction]], m: int, n: int,
                  N: Optional[int] = None, skeleton=None) -> "DiagLin":
        """Extend a term-wise map linearly."""
        acc: Dict[TensorWord, Fraction] = {}
        for t, c in self.terms.items():
            for u, d in f(t).items():
                acc[u] = acc.get(u, 0) + c * d
        return DiagLin(m, n, self.N if N is None else N, acc, skeleton)


def format_lin(v: DiagLin) -> str:
    if not v.terms:
        return "0"
    items = sorted(v.terms.items(), key=lambda kv: _col_rank(kv[0]))
    return " + ".join(f"({c})*[{to_text(t)}]" for t, c in items)


def diaglin_to_json(v: DiagLin) -> dict:
    items = sorted(v.terms.items(), key=lambda kv: _col_rank(kv[0]))
    return {"m": v.m, "n": v.n, "N": v.N,
            "terms": [{"coeff": str(c), "word": to_json_obj(t)} for t, c in items]}


def diaglin_from_json(obj: Mapping) -> DiagLin:
    terms: Dict[TensorWord, Fraction] = {}
    skel = None
    for it in obj["terms"]:
        t = from_json_obj(it["word"])
        skel = t.skeleton
        terms[t] = terms.get(t, 0) + Fraction(it["coeff"])
    return DiagLin(int(obj["m"]), int(obj["n"]), int(obj["N"]), terms, skel)


def empty_word(m: int, n: int, skeleton=None) -> TensorWord:
    return TensorWord(m, tuple(() for _ in range(n)), skeleton)


# --------------------------------------------------------------------------
# coalgebra


def _restrict(t: TensorWord, keep: frozenset) -> TensorWord:
    return TensorWord(t.m, tuple(tuple(x for x in s if x[0] == "b" or x[1] in keep) for s in t.strands), t.skeleton)


def split_word(t: TensorWord) -> Iterator[Tuple[TensorWord, TensorWord]]:
    """All splittings of the chord set into two parts, beads copied to both."""
    chords = sorted({x[1] for s in t.strands for x in s if x[0] == "e"})
    for r in range(len(chords) + 1):
        for sub in itertools.combinations(chords, r):
            a = frozenset(sub)
            b = frozenset(chords) - a
            yield _restrict(t, a), _restrict(t, b)


class PairLin:
    """A combination of pairs of tensor words: an element of A (x) A."""

    __slots__ = ("left", "right", "N", "terms")

    def __init__(self, left: Tuple[int, int], right: Tuple[int, int], N: int,
                 terms: Optional[Mapping[Tuple[TensorWord, TensorWord], object]] = None):
        self.left = left
        self.right = right
        self.N = N
        acc: Dict[Tuple[TensorWord, TensorWord], Fraction] = {}
        for (a, b), c in (terms or {}).items():
            c = _frac(c)
            if not c or a.degree + b.degree > N:
                continue
            key = (bead_normal_form(a), bead_normal_form(b))
            v = acc.get(key, 0) + c
            if v:
                acc[key] = v
            else:
                acc.pop(key, None)
        self.terms = acc

    @classmethod
    def tensor(cls, a: DiagLin, b: DiagLin, N: Optional[int] = None) -> "PairLin":
        N = min(a.N, b.N) if N is None else N
        terms = {}
        for s, c in a.terms.items():
            for t, d in b.terms.items():
                terms[(s, t)] = terms.get((s, t), 0) + c * d
        return cls((a.m, a.n), (b.m, b.n), N, terms)

    def __add__(self, other: "PairLin") -> "PairLin":
        terms = dict(self.terms)
        add_scaled(terms, other.terms, Fraction(1))
        return PairLin(self.left, self.right, min(self.N, other.N), terms)

    def __neg__(self) -> "PairLin":
        return PairLin(self.left, self.right, self.N, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "PairLin") -> "PairLin":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PairLin):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def swap(self) -> "PairLin":
        return PairLin(self.right, self.left, self.N, {(b, a): c for (a, b), c in self.terms.items()})


def comultiply(v: DiagLin) -> PairLin:
    """Sum over all splittings of each diagram's chords."""
    terms: Dict[Tuple[TensorWord, TensorWord], Fraction] = {}
    for t, c in v.terms.items():
        for a, b in split_word(t):
            terms[(a, b)] = terms.get((a, b), 0) + c
    return PairLin((v.m, v.n), (v.m, v.n), v.N, terms)


def counit(v: DiagLin) -> Fraction:
    """Total coefficient of the chordless diagrams."""
    return sum((c for t, c in v.terms.items() if t.degree == 0), Fraction(0))


def counit_left(p: PairLin) -> DiagLin:
    """``(counit (x) id)`` applied to a combination of pairs."""
    m, n = p.right
    terms: Dict[TensorWord, Fraction] = {}
    for (a, b), c in p.terms.items():
        if a.degree == 0:
            terms[b] = terms.get(b, 0) + c
    return DiagLin(m, n, p.N, terms)


def counit_right(p: PairLin) -> DiagLin:
    m, n = p.left
    terms: Dict[TensorWord, Fraction] = {}
    for (a, b), c in p.terms.items():
        if b.degree == 0:
            terms[a] = terms.get(a, 0) + c
    return DiagLin(m, n, p.N, terms)


def project_trivial(v: DiagLin) -> DiagLin:
    """Strip beads from diagrams whose colouring is trivial, kill the rest.

    In bead normal form every spanning-tree segment is already trivial, so
    the colouring is trivial on all loops iff no bead survives.
    """
    terms = {t: c for t, c in v.terms.items() if not any(True for _ in t.beads())}
    return DiagLin(v.m, v.n, v.N, terms, v.skeleton, normalized=True)


# --------------------------------------------------------------------------
# relation oracle


@dataclass(frozen=True)
class RelationWindow:
    """Bounds for the 4T search: strand length, alphabet and search size."""

    max_len: Optional[int] = None
    alphabet: Optional[frozenset] = None
    max_words: int = 20_000
    extra: int = 4


@dataclass(frozen=True)
class Verdict:
    equal: bool
    window: int = 0
    explored: int = 0
    exhausted: bool = True

    @property
    def name(self) -> str:
        return "Equal" if self.equal else "UnknownAtWindow"

    def __bool__(self) -> bool:
        return self.equal

    def __str__(self) -> str:
        if self.equal:
            return "Equal"
        return f"UnknownAtWindow(L={self.window}, explored={self.explored}, exhausted={self.exhausted})"


def _col_rank(t: TensorWord):
    s = to_text(t)
    return (t.degree, len(s), s)


def _end_positions(t: TensorWord) -> List[Tuple[int, int, Symbol]]:
    return [(i, k, x) for i, s in enumerate(t.strands) for k, x in enumerate(s) if x[0] == "e"]


@lru_cache(maxsize=100_000)
def four_t_relations(t: TensorWord) -> Tuple[Tuple[Tuple[TensorWord, int], ...], ...]:
    """All 4T relations (in normal-form keys) having ``t`` as one term.

    For an end ``a`` whose nearest end ``b`` on the same strand belongs to a
    different chord, chord(a) is gauged so that no bead separates them.
    With ``a`` removed the relation is the sum over both ends ``b_k`` of
    chord(b) of ``[a b_k] - [b_k a]``.
    """
    t = bead_normal_form(t)
    m = t.m
    rels = set()
    for i, k, a in _end_positions(t):
        s = t.strands[i]
        for step in (-1, 1):
            j = k + step
            between: List[Symbol] = []
            while 0 <= j < len(s) and s[j][0] == "b":
                between.append(s[j])
                j += step
            if not 0 <= j < len(s) or s[j][1] == a[1]:
                continue
            b = s[j]
            if step == -1:
                g = _word(list(reversed(between)), m)
            else:
                g = fg_inv(_word(between, m))
            u = gauge_chord(t, a[1], g)
            base = [list(x for x in st if x != a) for st in u.strands]
            terms: Dict[TensorWord, int] = {}
            for bi, st in enumerate(base):
                for bk, x in enumerate(st):
                    if x[0] == "e" and x[1] == b[1]:
                        for pos, sign in ((bk, 1), (bk + 1, -1)):
                            new = [list(y) for y in base]
                            new[bi].insert(pos, a)
                            w = bead_normal_form(TensorWord(m, tuple(tuple(y) for y in new), t.skeleton))
                            terms[w] = terms.get(w, 0) + sign
            rel = tuple(sorted(((w, c) for w, c in terms.items() if c), key=lambda wc: _col_rank(wc[0])))
            if rel:
                # fix an overall sign so duplicates coincide
                if rel[-1][1] < 0:
                    rel = tuple((w, -c) for w, c in rel)
                rels.add(rel)
    return tuple(sorted(rels, key=lambda r: [(_col_rank(w), c) for w, c in r]))


class _Oracle:
    def __init__(self, window: RelationWindow, max_len: int):
        self.window = window
        self.max_len = max_len
        self.basis = EchelonBasis(_col_rank)
        self.seen: set = set()
        self.frontier: List[TensorWord] = []
        self.exhausted = True

    def _admissible(self, t: TensorWord) -> bool:
        if t.length() > self.max_len:
            return False
        alpha = self.window.alphabet
        if alpha is not None:
            return all((x[1], x[2]) in alpha for x in t.beads())
        return True

    def seed(self, words: Iterable[TensorWord]) -> None:
        for w in sorted(words, key=_col_rank):
            if w not in self.seen:
                self.seen.add(w)
                self.frontier.append(w)

    def step(self) -> bool:
        """Expand one BFS layer; return False when there is nothing left."""
        if not self.frontier:
            return False
        nxt: List[TensorWord] = []
        for w in self.frontier:
            for rel in four_t_relations(w):
                if not all(self._admissible(u) for u, _ in rel):
                    self.exhausted = False
                    continue
                self.basis.add({u: Fraction(c) for u, c in rel})
                for u, _ in rel:
                    if u not in self.seen:
                        if len(self.seen) >= self.window.max_words:
                            self.exhausted = False
                            continue
                        self.seen.add(u)
                        nxt.append(u)
        nxt.sort(key=_col_rank)
        self.frontier = nxt
        return True


def _default_len(win: RelationWindow, inputs: Iterable[TensorWord]) -> int:
    base = max((t.length() for t in inputs), default=0)
    if win.max_len is not None:
        if win.max_len < base:
            raise ValueError(f"query length {base} exceeds window L={win.max_len}")
        return win.max_len
    return base + win.extra


def _reduce_to_zero(diff: Dict[TensorWord, Fraction], win: RelationWindow) -> Verdict:
    if not diff:
        return Verdict(True)
    L_ = _default_len(win, diff)
    by_deg: Dict[int, Dict[TensorWord, Fraction]] = {}
    for t, c in diff.items():
        by_deg.setdefault(t.degree, {})[t] = c
    explored = 0
    exhausted = True
    for k, vec in sorted(by_deg.items()):
        if k <= 1:
            return Verdict(False, L_, 0, True)
        orc = _Oracle(win, L_)
        orc.seed(vec)
        found = False
        while True:
            if orc.basis.contains(vec):
                found = True
                break
            if not orc.step():
                break
        explored += len(orc.seen)
        if not found:
            exhausted = exhausted and orc.exhausted
            return Verdict(False, L_, explored, exhausted)
    return Verdict(True, L_, explored, exhausted)


def eq_mod_relations(v: DiagLin, w: DiagLin, win: Optional[RelationWindow] = None) -> Verdict:
    """Decide ``v == w`` modulo the 4T relation inside a finite window.

    ``Equal`` is always correct.  In degree <= 1 the normal form is complete
    and the answer is exact; otherwise a negative answer is inconclusive.
    """
    v._check(w)
    win = win or RelationWindow()
    diff = dict(v.terms)
    add_scaled(diff, w.terms, Fraction(-1))
    N = min(v.N, w.N)
    diff = {t: c for t, c in diff.items() if t.degree <= N}
    return _reduce_to_zero(diff, win)


def reduce_mod_relations(v: DiagLin, win: Optional[RelationWindow] = None, rounds: int = 2) -> DiagLin:
    """Reduce ``v`` against 4T relations found within ``rounds`` BFS layers.

    The result is equal to ``v`` in the quotient and is useful for printing;
    it is canonical only if the search is exhausted.
    """
    win = win or RelationWindow()
    L_ = _default_len(win, v.terms)
    out: Dict[TensorWord, Fraction] = {}
    for k, vec in sorted(v.graded().items()):
        if k <= 1:
            out.update(vec)
            continue
        orc = _Oracle(win, L_)
        orc.seed(vec)
        for _ in range(rounds):
            if not orc.step():
                break
        out.update(orc.basis.reduce(vec))
    return DiagLin(v.m, v.n, v.N, out, v.skeleton, normalized=True)


def eq_pairs_mod_relations(p: PairLin, q: PairLin, win: Optional[RelationWindow] = None) -> Verdict:
    """Equality in A (x) A: reduce left factors, regroup, reduce right factors.

    Each pass reduces one tensor factor against the 4T relations while the
    other factor is held fixed, so any zero found is genuine.
    """
    win = win or RelationWindow()
    diff = dict(p.terms)
    add_scaled(diff, q.terms, Fraction(-1))
    if not diff:
        return Verdict(True)
    L_ = _default_len(win, [t for pair in diff for t in pair])
    win2 = RelationWindow(L_, win.alphabet, win.max_words, win.extra)

    def reduce_side(d: Dict[Tuple[TensorWord, TensorWord], Fraction], side: int):
        groups: Dict[TensorWord, Dict[TensorWord, Fraction]] = {}
        for pair, c in d.items():
            groups.setdefault(pair[1 - side], {})[pair[side]] = c
        out: Dict[Tuple[TensorWord, TensorWord], Fraction] = {}
        exhausted = True
        for other, vec in groups.items():
            red: Dict[TensorWord, Fraction] = {}
            for k in sorted({t.degree for t in vec}):
                part = {t: c for t, c in vec.items() if t.degree == k}
                if k <= 1:
                    red.update(part)
                    continue
                orc = _Oracle(win2, L_)
                orc.seed(part)
                while not orc.basis.contains(part) and orc.step():
                    pass
                exhausted = exhausted and orc.exhausted
                red.update(orc.basis.reduce(part))
            for t, c in red.items():
                key = (t, other) if side == 0 else (other, t)
                out[key] = c
        return out, exhausted

    d1, ex1 = reduce_side(diff, 0)
    d2, ex2 = reduce_side(d1, 1)
    if not d2:
        return Verdict(True, L_)
    # the first pass may have settled on different representatives; retry
    d3, ex3 = reduce_side(d2, 0)
    if not d3:
        return Verdict(True, L_)
    return Verdict(False, L_, len(d3), ex1 and ex2 and ex3)


# --------------------------------------------------------------------------
# Jacobi graphs

Node = Tuple[str, int]  # ("u", leg) on a strand or ("v", k) trivalent


@dataclass(frozen=True)
class JEdge:
    tail: Node
    head: Node
    label: FreeWord


@dataclass(frozen=True)
class JacobiGraph:
    """A coloured Jacobi diagram on X_n (or a polarized skeleton).

    ``strands`` interleave bead symbols with leg symbols ``("u", id, 0)``.
    ``vertices[k]`` lists the three edge-ends at trivalent vertex ``k`` in
    counterclockwise order; an edge-end is ``(edge index, 0 tail | 1 head)``.
    """

    m: int
    strands: Tuple[Tuple[Symbol, ...], ...]
    edges: Tuple[JEdge, ...]
    vertices: Tuple[Tuple[Tuple[int, int], ...], ...] = ()
    skeleton: Optional[Tuple[Component, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "strands", tuple(tuple(s) for s in self.strands))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "vertices", tuple(tuple(tuple(e) for e in v) for v in self.vertices))

    def validate(self) -> None:
        legs = [x[1] for s in self.strands for x in s if x[0] == "u"]
        if len(set(legs)) != len(legs):
            raise ValueError("leg attached twice")
        ends: Dict[Node, List[Tuple[int, int]]] = {}
        for idx, e in enumerate(self.edges):
            if e.label.rank != self.m:
                raise RankError("edge label rank mismatch")
            ends.setdefault(e.tail, []).append((idx, 0))
            ends.setdefault(e.head, []).append((idx, 1))
        for u in legs:
            if len(ends.get(("u", u), [])) != 1:
                raise ValueError(f"leg {u} must meet exactly one edge-end")
        for k, cyc in enumerate(self.vertices):
            if len(cyc) != 3 or sorted(cyc) != sorted(ends.get(("v", k), [])):
                raise ValueError(f"vertex {k} cyclic order does not match its edges")
        for node in ends:
            if node[0] == "u" and node[1] not in legs:
                raise ValueError(f"edge attached to missing leg {node[1]}")
            if node[0] == "v" and not 0 <= node[1] < len(self.vertices):
                raise ValueError(f"edge attached to missing vertex {node[1]}")
            if node[0] not in ("u", "v"):
                raise ValueError(f"unknown node {node!r}")
        # each dashed component needs a leg
        dsu = _DSU()
        code = {}
        for node in ends:
            code.setdefault(node, len(code))
        for e in self.edges:
            dsu.union(code[e.tail], code[e.head])
        with_leg = {dsu.find(code[("u", u)]) for u in legs}
        for node, c in code.items():
            if dsu.find(c) not in with_leg:
                raise ValueError("dashed component without univalent vertex")


def chord_graph(t: TensorWord) -> JacobiGraph:
    """View a tensor word as a Jacobi graph with one edge per chord."""
    strands = []
    where: Dict[Tuple[int, int], int] = {}
    for s in t.strands:
        out = []
        for x in s:
            if x[0] == "e":
                lid = len(where)
                where[(x[1], x[2])] = lid
                out.append(("u", lid, 0))
            else:
                out.append(x)
        strands.append(tuple(out))
    chords = sorted({p for p, _ in where})
    edges = [JEdge(("u", where[(p, L)]), ("u", where[(p, R)]), FreeWord.identity(t.m)) for p in chords]
    return JacobiGraph(t.m, tuple(strands), tuple(edges), (), t.skeleton)


class _MGraph:
    """Mutable working copy used during STU resolution."""

    def __init__(self, g: JacobiGraph):
        self.m = g.m
        self.skeleton = g.skeleton
        self.strands = [list(s) for s in g.strands]
        self.edges = {i: [e.tail, e.head, e.label] for i, e in enumerate(g.edges)}
        self.vertices = {k: list(c) for k, c in enumerate(g.vertices)}
        self.next_leg = 1 + max((x[1] for s in g.strands for x in s if x[0] == "u"), default=-1)
        self.next_edge = len(g.edges)

    def copy(self) -> "_MGraph":
        new = object.__new__(_MGraph)
        new.m = self.m
        new.skeleton = self.skeleton
        new.strands = [list(s) for s in self.strands]
        new.edges = {i: list(e) for i, e in self.edges.items()}
        new.vertices = {k: list(c) for k, c in self.vertices.items()}
        new.next_leg = self.next_leg
        new.next_edge = self.next_edge
        return new

    def leg_edge(self, u: int) -> Tuple[int, int]:
        for i, (t, h, _) in self.edges.items():
            if t == ("u", u):
                return i, 0
            if h == ("u", u):
                return i, 1
        raise KeyError(u)

    def find_leg(self, u: int) -> Tuple[int, int]:
        for i, s in enumerate(self.strands):
            for k, x in enumerate(s):
                if x[0] == "u" and x[1] == u:
                    return i, k
        raise KeyError(u)

    def push_label(self, u: int) -> None:
        """Gauge leg ``u`` so that its edge carries no bead."""
        e, side = self.leg_edge(u)
        y = self.edges[e][2]
        if y.is_identity():
            return
        # edge y from tail to head transforms as g_tail y g_head^-1
        g = fg_inv(y) if side == 0 else y
        i, k = self.find_leg(u)
        s = self.strands[i]
        self.strands[i] = s[:k] + _syms(fg_inv(g)) + [s[k]] + _syms(g) + s[k + 1:]
        self.edges[e][2] = FreeWord.identity(self.m)


def _first_choice(legs: List[Tuple[int, int, int]]) -> int:
    return 0


def stu_resolve(g: JacobiGraph, N: Optional[int] = None,
                choose: Callable[[List[Tuple[int, int, int]]], int] = _first_choice) -> DiagLin:
    """Resolve every trivalent vertex by STU; return a chord-diagram combination.

    At a vertex with counterclockwise order (leg, x, y) the leg's position
    is replaced by ``[x y] - [y x]`` in reading order.  ``choose`` picks one
    candidate from a list of ``(strand, position, leg)`` triples sorted
    lexicographically; the default takes the first.
    """
    g.validate()
    out: Dict[TensorWord, Fraction] = {}
    stack: List[Tuple[_MGraph, Fraction]] = [(_MGraph(g), Fraction(1))]
    while stack:
        mg, coeff = stack.pop()
        cands = []
        for i, s in enumerate(mg.strands):
            for k, x in enumerate(s):
                if x[0] == "u":
                    e, side = mg.leg_edge(x[1])
                    other = mg.edges[e][1 - side]
                    if other[0] == "v":
                        cands.append((i, k, x[1]))
        if not cands:
            t = _finish(mg)
            out[t] = out.get(t, 0) + coeff
            continue
        _, _, u = cands[choose(cands)]
        mg.push_label(u)
        e, side = mg.leg_edge(u)
        v = mg.edges[e][1 - side][1]
        cyc = mg.vertices.pop(v)
        r = cyc.index((e, 1 - side))
        (ex, sx), (ey, sy) = cyc[(r + 1) % 3], cyc[(r + 2) % 3]
        ux, uy = mg.next_leg, mg.next_leg + 1
        mg.next_leg += 2
        mg.edges[ex][sx] = ("u", ux)
        mg.edges[ey][sy] = ("u", uy)
        del mg.edges[e]
        i, k = mg.find_leg(u)
        for pair, sign in (((ux, uy), 1), ((uy, ux), -1)):
            branch = mg.copy()
            s = branch.strands[i]
            branch.strands[i] = s[:k] + [("u", pair[0], 0), ("u", pair[1], 0)] + s[k + 1:]
            stack.append((branch, coeff * sign))
    n = len(g.strands)
    if N is None:
        N = max((t.degree for t in out), default=0)
    return DiagLin(g.m, n, N, out, g.skeleton)


def _finish(mg: _MGraph) -> TensorWord:
    for s in list(mg.strands):
        for x in s:
            if x[0] == "u":
                mg.push_label(x[1])
    name: Dict[int, Symbol] = {}
    for p, (i, (t, h, _)) in enumerate(sorted(mg.edges.items()), 1):
        name[t[1]] = ("e", p, L)
        name[h[1]] = ("e", p, R)
    strands = tuple(tuple(name[x[1]] if x[0] == "u" else x for x in s) for s in mg.strands)
    return TensorWord(mg.m, strands, mg.skeleton)


# --------------------------------------------------------------------------
# box notation


@dataclass(frozen=True)
class SolidSite:
    strand: int  # 0-based strand index
    index: int   # insertion index in that strand's item list
    along: bool  # strand orientation agrees with the box direction


@dataclass(frozen=True)
class DashedSite:
    edge: int
    along: bool = True


@dataclass(frozen=True)
class BoxSpec:
    """A box crossed by ``sites``; edge ``box_edge`` leaves the box.

    The box end of that edge is the node ``("x", 0)`` in ``graph``.
    """

    graph: JacobiGraph
    box_edge: int
    sites: Tuple[Union[SolidSite, DashedSite], ...]


def expand_box_graphs(spec: BoxSpec) -> List[Tuple[Fraction, JacobiGraph]]:
    g = spec.graph
    e0 = g.edges[spec.box_edge]
    if ("x", 0) not in (e0.tail, e0.head):
        raise ValueError("box edge must end at the box node")
    box_side = 0 if e0.tail == ("x", 0) else 1
    new_leg = 1 + max((x[1] for s in g.strands for x in s if x[0] == "u"), default=-1)
    out: List[Tuple[Fraction, JacobiGraph]] = []
    for site in spec.sites:
        edges = list(g.edges)
        strands = [list(s) for s in g.strands]
        verts = [list(c) for c in g.vertices]
        if isinstance(site, SolidSite):
            s = strands[site.strand]
            if not 0 <= site.index <= len(s):
                raise ValueError("solid site outside strand")
            s.insert(site.index, ("u", new_leg, 0))
            node = ("u", new_leg)
            sign = Fraction(1 if site.along else -1)
        else:
            f = edges[site.edge]
            if not f.label.is_identity():
                raise ValueError("box crosses a bead on a dashed edge")
            if site.edge == spec.box_edge:
                raise ValueError("box edge cannot cross its own box")
            vid = len(verts)
            node = ("v", vid)
            fid2 = len(edges)
            edges[site.edge] = JEdge(f.tail, node, f.label)
            edges.append(JEdge(node, f.head, FreeWord.identity(g.m)))
            # the head of f moved to the new edge
            for c in verts:
                for idx, (ei, sd) in enumerate(c):
                    if ei == site.edge and sd == 1:
                        c[idx] = (fid2, 1)
            cyc = [(site.edge, 1), (spec.box_edge, box_side), (fid2, 0)]
            if not site.along:
                cyc = [cyc[0], cyc[2], cyc[1]]
            verts.append(cyc)
            sign = Fraction(1)
        b = edges[spec.box_edge]
        edges[spec.box_edge] = JEdge(node, b.head, b.label) if box_side == 0 else JEdge(b.tail, node, b.label)
        out.append((sign, JacobiGraph(g.m, tuple(tuple(s) for s in strands), tuple(edges),
                                      tuple(tuple(c) for c in verts), g.skeleton)))
    return out


def expand_box(spec: BoxSpec, N: Optional[int] = None) -> DiagLin:
    """Sum over the crossings of the box, then resolve by STU."""
    g = spec.graph
    total = None
    for sign, h in expand_box_graphs(spec):
        v = stu_resolve(h, N=64 if N is None else N).scale(sign)
        total = v if total is None else total + v
    if total is None:
        return DiagLin.zero(g.m, len(g.strands), 0 if N is None else N, g.skeleton)
    if N is None:
        total = total.truncate(max((t.degree for t in total.terms), default=0))
    return total
