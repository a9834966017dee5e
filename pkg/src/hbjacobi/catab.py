"""The category A^B: morphisms m -> n are chord diagrams on X_n with beads in F_m.

Composition substitutes, for each bead ``x_j^{+-1}`` of the outer diagram, a
cabled copy of strand ``j`` of the inner diagram.  Everything here works on
:class:`~hbjacobi.diagcore.DiagLin` values, which double as morphisms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .diagcore import (
    DiagLin,
    PairLin,
    RelationWindow,
    Symbol,
    TensorWord,
    eq_mod_relations,
    empty_word,
)
from .fgroup import RankError

MorAB = DiagLin


class TruncationError(ValueError):
    """Raised when morphisms with different truncations are combined."""


def _check_N(a: DiagLin, b: DiagLin) -> int:
    if a.N != b.N:
        raise TruncationError(f"truncation mismatch: {a.N} vs {b.N}")
    return a.N


# --------------------------------------------------------------------------
# composition


def _max_chord(t: TensorWord) -> int:
    return max((x[1] for s in t.strands for x in s if x[0] == "e"), default=0)


def compose_words(t2: TensorWord, t1: TensorWord, N: int) -> Dict[TensorWord, int]:
    """``t2 o t1`` for single tensor words, as a signed sum of words."""
    if t2.m != t1.n:
        raise RankError(f"cannot compose: inner target {t1.n} != outer source {t2.m}")
    if t1.degree + t2.degree > N:
        return {}
    shift = _max_chord(t2)
    occ: List[List[Tuple[int, int]]] = [[] for _ in range(t1.n)]
    for i, s in enumerate(t2.strands):
        for k, x in enumerate(s):
            if x[0] == "b":
                occ[x[1] - 1].append((i, k))
    # each chord end of t1 chooses the copy it sits on
    slots: List[Tuple[int, int]] = []  # (strand j of t1, position)
    for j, s in enumerate(t1.strands):
        ends = [k for k, x in enumerate(s) if x[0] == "e"]
        if ends and not occ[j]:
            return {}
        slots.extend((j, k) for k in ends)
    out: Dict[TensorWord, int] = {}
    for choice in itertools.product(*[range(len(occ[j])) for j, _ in slots]):
        where = {slot: c for slot, c in zip(slots, choice)}
        sign = 1
        strands = []
        for i, s in enumerate(t2.strands):
            new: List[Symbol] = []
            for k, x in enumerate(s):
                if x[0] != "b":
                    new.append(x)
                    continue
                j = x[1] - 1
                copy_idx = occ[j].index((i, k))
                piece: List[Symbol] = []
                for kk, y in enumerate(t1.strands[j]):
                    if y[0] == "b":
                        piece.append(y)
                    elif where[(j, kk)] == copy_idx:
                        piece.append(("e", y[1] + shift, y[2]))
                if x[2] == -1:
                    piece = [("b", y[1], -y[2]) if y[0] == "b" else y for y in reversed(piece)]
                    sign *= (-1) ** sum(1 for y in piece if y[0] == "e")
                new.extend(piece)
            strands.append(tuple(new))
        w = TensorWord(t1.m, tuple(strands))
        out[w] = out.get(w, 0) + sign
    return out


def compose(d2: DiagLin, d1: DiagLin) -> DiagLin:
    """``d2 o d1``: apply ``d1`` first."""
    if d2.m != d1.n:
        raise RankError(f"cannot compose: inner target {d1.n} != outer source {d2.m}")
    N = _check_N(d2, d1)
    acc: Dict[TensorWord, Fraction] = {}
    for t2, c2 in d2.terms.items():
        for t1, c1 in d1.terms.items():
            for w, s in compose_words(t2, t1, N).items():
                acc[w] = acc.get(w, 0) + c1 * c2 * s
    return DiagLin(d1.m, d2.n, N, acc)


def compose_all(*ds: DiagLin) -> DiagLin:
    """``compose_all(a, b, c) = a o b o c``."""
    out = ds[-1]
    for d in reversed(ds[:-1]):
        out = compose(d, out)
    return out


def tensor_words(t1: TensorWord, t2: TensorWord) -> TensorWord:
    sh_b = t1.m
    sh_c = _max_chord(t1)
    right = tuple(
        tuple(("b", x[1] + sh_b, x[2]) if x[0] == "b" else ("e", x[1] + sh_c, x[2]) for x in s)
        for s in t2.strands
    )
    return TensorWord(t1.m + t2.m, t1.strands + right)


def tensor(d1: DiagLin, d2: DiagLin) -> DiagLin:
    N = _check_N(d1, d2)
    acc: Dict[TensorWord, Fraction] = {}
    for t1, c1 in d1.terms.items():
        for t2, c2 in d2.terms.items():
            if t1.degree + t2.degree > N:
                continue
            w = tensor_words(t1, t2)
            acc[w] = acc.get(w, 0) + c1 * c2
    return DiagLin(d1.m + d2.m, d1.n + d2.n, N, acc)


def tensor_all(*ds: DiagLin) -> DiagLin:
    out = ds[0]
    for d in ds[1:]:
        out = tensor(out, d)
    return out


# --------------------------------------------------------------------------
# identities, symmetries and generators


def from_words(m: int, n: int, N: int, strands: Sequence[Sequence[Symbol]], coeff=1) -> DiagLin:
    return DiagLin(m, n, N, {TensorWord(m, tuple(tuple(s) for s in strands)): coeff})


def identity(n: int, N: int = 2) -> DiagLin:
    return from_words(n, n, N, [[("b", i, 1)] for i in range(1, n + 1)])


def permutation(sigma: Sequence[int], N: int = 2) -> DiagLin:
    """The morphism whose strand ``i`` carries ``x_{sigma[i]}`` (1-based values)."""
    n = len(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation: {sigma}")
    return from_words(n, n, N, [[("b", j, 1)] for j in sigma])


def symmetry(m: int, n: int, N: int = 2) -> DiagLin:
    """``P_{m,n}: m+n -> n+m``, swapping the two blocks."""
    return permutation([m + i for i in range(1, n + 1)] + list(range(1, m + 1)), N)


def eta(N: int = 2) -> DiagLin:
    return from_words(0, 1, N, [[]])


def mu(N: int = 2) -> DiagLin:
    return from_words(2, 1, N, [[("b", 1, 1), ("b", 2, 1)]])


def epsilon(N: int = 2) -> DiagLin:
    return from_words(1, 0, N, [])


def delta(N: int = 2) -> DiagLin:
    return from_words(1, 2, N, [[("b", 1, 1)], [("b", 1, 1)]])


def antipode(N: int = 2) -> DiagLin:
    return from_words(1, 1, N, [[("b", 1, -1)]])


def casimir(N: int = 2) -> DiagLin:
    if N < 1:
        return DiagLin.zero(0, 2, N)
    return from_words(0, 2, N, [[("e", 1, 0)], [("e", 1, 1)]])


def unit(n: int, N: int = 2) -> DiagLin:
    """``eta^{(x) n}``, the unit of the convolution algebra on ``0 -> n``."""
    return from_words(0, n, N, [[] for _ in range(n)])


def counit_map(m: int, N: int = 2) -> DiagLin:
    """``epsilon^{(x) m}: m -> 0``."""
    return from_words(m, 0, N, [])


def mu_iter(q: int, N: int = 2) -> DiagLin:
    """``mu^{[q]}: q -> 1`` (``eta`` for ``q = 0``)."""
    return from_words(q, 1, N, [[("b", i, 1) for i in range(1, q + 1)]])


def delta_iter(p: int, N: int = 2) -> DiagLin:
    """``Delta^{[p]}: 1 -> p`` (``epsilon`` for ``p = 0``)."""
    return from_words(1, p, N, [[("b", 1, 1)] for _ in range(p)])


def mu_n(n: int, N: int = 2) -> DiagLin:
    """``mu_n: 2n -> n``, strand ``i`` carries ``x_i x_{n+i}``."""
    return from_words(2 * n, n, N, [[("b", i, 1), ("b", n + i, 1)] for i in range(1, n + 1)])


def delta_n(m: int, N: int = 2) -> DiagLin:
    """Comultiplication of ``H^{(x) m}``: ``m -> 2m``."""
    return from_words(m, 2 * m, N, [[("b", i, 1)] for i in range(1, m + 1)] * 2)


def adjoint(N: int = 2) -> DiagLin:
    """``ad = mu^{[3]} (id (x) id (x) S)(id (x) P)(Delta (x) id)``."""
    return compose_all(
        mu_iter(3, N),
        tensor_all(identity(2, N), antipode(N)),
        tensor(identity(1, N), symmetry(1, 1, N)),
        tensor(delta(N), identity(1, N)),
    )


def r_element(N: int = 2) -> DiagLin:
    """``r = 1/2 mu c``."""
    return compose(mu(N), casimir(N)).scale(Fraction(1, 2))


_GENERATORS = {
    "eta": eta,
    "mu": mu,
    "epsilon": epsilon,
    "eps": epsilon,
    "Delta": delta,
    "S": antipode,
    "c": casimir,
    "ad": adjoint,
    "r": r_element,
}


def generator(name: str, N: int = 2) -> DiagLin:
    try:
        return _GENERATORS[name](N)
    except KeyError:
        raise ValueError(f"unknown generator {name!r}") from None


def chord(n: int, i: int, j: int, N: int = 2) -> DiagLin:
    """``c_{ij}: 0 -> n``, the Casimir placed on strands ``i`` and ``j``."""
    if N < 1:
        return DiagLin.zero(0, n, N)
    strands: List[List[Symbol]] = [[] for _ in range(n)]
    strands[i - 1].append(("e", 1, 0))
    strands[j - 1].append(("e", 1, 1))
    return from_words(0, n, N, strands)


# --------------------------------------------------------------------------
# convolution


def convolve_maps(f: DiagLin, g: DiagLin) -> DiagLin:
    """Convolution on ``A^B(m, n)``: strandwise concatenation, beads shared."""
    if (f.m, f.n) != (g.m, g.n):
        raise RankError(f"convolution needs equal objects: ({f.m},{f.n}) vs ({g.m},{g.n})")
    N = _check_N(f, g)
    acc: Dict[TensorWord, Fraction] = {}
    for s, a in f.terms.items():
        sh = _max_chord(s)
        for t, b in g.terms.items():
            if s.degree + t.degree > N:
                continue
            strands = tuple(
                x + tuple(("e", y[1] + sh, y[2]) if y[0] == "e" else y for y in z)
                for x, z in zip(s.strands, t.strands)
            )
            w = TensorWord(f.m, strands)
            acc[w] = acc.get(w, 0) + a * b
    return DiagLin(f.m, f.n, N, acc)


def convolve(f: DiagLin, g: DiagLin) -> DiagLin:
    """``f * g = mu_n (f (x) g)`` for ``f, g: 0 -> n``."""
    if f.m != 0 or g.m != 0:
        raise RankError("convolve expects morphisms with source 0")
    return convolve_maps(f, g)


def conv_unit(m: int, n: int, N: int = 2) -> DiagLin:
    """``eta^{(x)n} epsilon^{(x)m}``, the unit of convolution on ``A^B(m, n)``."""
    return from_words(m, n, N, [[] for _ in range(n)])


def conv_power(f: DiagLin, k: int) -> DiagLin:
    out = conv_unit(f.m, f.n, f.N)
    for _ in range(k):
        out = convolve_maps(out, f)
    return out


def _split_unit(f: DiagLin) -> Tuple[Fraction, DiagLin]:
    u = empty_word(f.m, f.n)
    a0 = f.terms.get(u, Fraction(0))
    rest = f - conv_unit(f.m, f.n, f.N).scale(a0)
    for t in rest.terms:
        if t.degree == 0:
            raise ValueError("degree-0 part is not a multiple of the unit")
    return a0, rest


def conv_inverse(f: DiagLin) -> DiagLin:
    """Convolution inverse via the geometric series, exact up to degree N."""
    a0, rest = _split_unit(f)
    if not a0:
        raise ValueError("not convolution-invertible: zero degree-0 part")
    inv0 = 1 / Fraction(a0)
    x = rest.scale(-inv0)
    out = conv_unit(f.m, f.n, f.N)
    term = conv_unit(f.m, f.n, f.N)
    for _ in range(f.N):
        term = convolve_maps(term, x)
        if not term:
            break
        out = out + term
    return out.scale(inv0)


def conv_exp(x: DiagLin) -> DiagLin:
    """``exp_*(x)`` for ``x`` without degree-0 part."""
    out = conv_unit(x.m, x.n, x.N)
    term = conv_unit(x.m, x.n, x.N)
    for k in range(1, x.N + 1):
        term = convolve_maps(term, x)
        if not term:
            break
        out = out + term.scale(Fraction(1, factorial(k)))
    return out


# --------------------------------------------------------------------------
# Casimir correspondence


def casimir_from_element(r: DiagLin) -> DiagLin:
    """``c_r = Delta r - r (x) eta - eta (x) r``."""
    if (r.m, r.n) != (0, 1):
        raise RankError("expected a morphism 0 -> 1")
    N = r.N
    e = eta(N)
    return compose(delta(N), r) - tensor(r, e) - tensor(e, r)


def element_from_casimir(c: DiagLin) -> DiagLin:
    """``r_c = 1/2 mu c``."""
    if (c.m, c.n) != (0, 2):
        raise RankError("expected a morphism 0 -> 2")
    return compose(mu(c.N), c).scale(Fraction(1, 2))


# --------------------------------------------------------------------------
# normal form factorisation


@dataclass(frozen=True)
class NFTerm:
    """``coeff * mu^{[q]} P_sigma (S^e (x) id_{2k})(id_s (x) c^{(x)k}) Delta^{[p]}``."""

    coeff: Fraction
    q: Tuple[int, ...]
    sigma: Tuple[int, ...]
    e: Tuple[int, ...]
    p: Tuple[int, ...]
    k: int


@dataclass(frozen=True)
class NormalForm:
    m: int
    n: int
    N: int
    terms: Tuple[NFTerm, ...]


def normal_form_word(t: TensorWord) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...], Tuple[int, ...], int]:
    """Read off ``(q, sigma, e, p, k)`` for one tensor word.

    The ``s`` bead inputs are ordered by handle, then by reading position;
    they are followed by the ends ``L, R`` of chords ``1..k``.
    """
    q = tuple(len(s) for s in t.strands)
    beads = [(x[1], i, pos) for i, s in enumerate(t.strands) for pos, x in enumerate(s) if x[0] == "b"]
    beads.sort()
    p = tuple(sum(1 for b in beads if b[0] == a) for a in range(1, t.m + 1))
    index = {(i, pos): idx for idx, (_, i, pos) in enumerate(beads)}
    s = len(beads)
    k = t.degree
    e = tuple(0 for _ in range(s))
    e_list = list(e)
    sigma: List[int] = []
    for i, st in enumerate(t.strands):
        for pos, x in enumerate(st):
            if x[0] == "b":
                idx = index[(i, pos)]
                e_list[idx] = 1 if x[2] == -1 else 0
                sigma.append(idx + 1)
            else:
                sigma.append(s + 2 * (x[1] - 1) + x[2] + 1)
    return q, tuple(sigma), tuple(e_list), p, k


def normal_form(d: DiagLin) -> NormalForm:
    terms = []
    for t, c in sorted(d.terms.items(), key=lambda kv: str(kv[0])):
        q, sigma, e, p, k = normal_form_word(t)
        terms.append(NFTerm(c, q, sigma, e, p, k))
    return NormalForm(d.m, d.n, d.N, tuple(terms))


def eval_nf_term(term: NFTerm, m: int, n: int, N: int) -> DiagLin:
    s = sum(term.p)
    k = term.k
    fan = tensor_all(*[delta_iter(pa, N) for pa in term.p]) if term.p else unit(0, N)
    chords = tensor_all(identity(s, N), *[casimir(N) for _ in range(k)]) if k else identity(s, N)
    anti = tensor_all(*[antipode(N) if ei else identity(1, N) for ei in term.e], identity(2 * k, N)) \
        if s else identity(2 * k, N)
    perm = permutation(term.sigma, N)
    mult = tensor_all(*[mu_iter(qi, N) for qi in term.q]) if term.q else counit_map(s + 2 * k, N)
    if fan.m != m:
        raise RankError("normal form handle count mismatch")
    out = compose_all(mult, perm, anti, chords, fan)
    return out.scale(term.coeff)


def eval_normal_form(nf: NormalForm) -> DiagLin:
    out = DiagLin.zero(nf.m, nf.n, nf.N)
    for term in nf.terms:
        out = out + eval_nf_term(term, nf.m, nf.n, nf.N)
    return out


# --------------------------------------------------------------------------
# convenience


def equal(a: DiagLin, b: DiagLin, win: Optional[RelationWindow] = None) -> bool:
    return bool(eq_mod_relations(a, b, win))


def pair_compose(p2: PairLin, p1: PairLin) -> PairLin:
    """Compose two elements of ``A (x) A`` factorwise."""
    N = min(p2.N, p1.N)
    terms: Dict[Tuple[TensorWord, TensorWord], Fraction] = {}
    for (a2, b2), c2 in p2.terms.items():
        for (a1, b1), c1 in p1.terms.items():
            if a1.degree + a2.degree + b1.degree + b2.degree > N:
                continue
            left = compose_words(a2, a1, N)
            right = compose_words(b2, b1, N)
            for u, su in left.items():
                for v, sv in right.items():
                    terms[(u, v)] = terms.get((u, v), 0) + c1 * c2 * su * sv
    return PairLin((p1.left[0], p2.left[1]), (p1.right[0], p2.right[1]), N, terms)
