"""Truncated noncommutative power series, U(t_n) and Drinfeld associators.

A series maps monomials (tuples of letters) to rationals and drops every
monomial of length above its truncation ``N``.  A :class:`QuotientAlgebra`
carries a per-degree echelon basis of a two-sided ideal; elements built over
one are kept reduced, so equality is equality in the quotient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .linalg import EchelonBasis, add_scaled

Monomial = Tuple[str, ...]


class QuotientAlgebra:
    """Free algebra on ``alphabet`` modulo a homogeneous ideal, up to degree N."""

    def __init__(self, alphabet: Sequence[str], N: int, relations: Iterable[Mapping[Monomial, Fraction]] = ()):
        self.alphabet = tuple(alphabet)
        self.N = N
        self.relations = [dict(r) for r in relations]
        self._rank = {a: i for i, a in enumerate(self.alphabet)}
        self.bases: Dict[int, EchelonBasis] = {}
        for d in range(N + 1):
            basis = EchelonBasis(self._order)
            for rel in self.relations:
                rd = {len(k) for k in rel}
                if len(rd) != 1:
                    raise ValueError("relations must be homogeneous")
                r = rd.pop()
                if r > d:
                    continue
                for i in range(d - r + 1):
                    for left in itertools.product(self.alphabet, repeat=i):
                        for right in itertools.product(self.alphabet, repeat=d - r - i):
                            basis.add({left + k + right: Fraction(c) for k, c in rel.items()})
            self.bases[d] = basis

    def _order(self, mono: Monomial):
        return tuple(self._rank[a] for a in mono)

    def reduce(self, coeffs: Mapping[Monomial, Fraction]) -> Dict[Monomial, Fraction]:
        by_deg: Dict[int, Dict[Monomial, Fraction]] = {}
        for k, c in coeffs.items():
            if c and len(k) <= self.N:
                by_deg.setdefault(len(k), {})[k] = c
        out: Dict[Monomial, Fraction] = {}
        for d, vec in by_deg.items():
            out.update(self.bases[d].reduce(vec))
        return out

    def dim(self, d: int) -> int:
        return len(self.alphabet) ** d - len(self.bases[d])

    def basis_monomials(self, d: int) -> List[Monomial]:
        piv = set(self.bases[d].pivots)
        return [m for m in itertools.product(self.alphabet, repeat=d) if m not in piv]

    def element(self, coeffs: Mapping[Monomial, object]) -> "TruncNCSeries":
        return TruncNCSeries(self.alphabet, self.N, coeffs, self)

    def gen(self, a: str) -> "TruncNCSeries":
        return self.element({(a,): 1})

    def one(self) -> "TruncNCSeries":
        return self.element({(): 1})


@dataclass(frozen=True, eq=False)
class TruncNCSeries:
    alphabet: Tuple[str, ...]
    N: int
    coeffs: Dict[Monomial, Fraction] = field(default_factory=dict)
    algebra: Optional[QuotientAlgebra] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        clean: Dict[Monomial, Fraction] = {}
        for k, c in dict(self.coeffs).items():
            k = tuple(k)
            for a in k:
                if a not in self.alphabet:
                    raise ValueError(f"letter {a!r} not in alphabet {self.alphabet}")
            c = Fraction(c)
            if c and len(k) <= self.N:
                clean[k] = clean.get(k, 0) + c
        clean = {k: v for k, v in clean.items() if v}
        if self.algebra is not None:
            clean = self.algebra.reduce(clean)
        object.__setattr__(self, "coeffs", clean)

    # constructors
    @classmethod
    def one(cls, alphabet: Sequence[str], N: int) -> "TruncNCSeries":
        return cls(tuple(alphabet), N, {(): 1})

    @classmethod
    def gen(cls, alphabet: Sequence[str], N: int, a: str) -> "TruncNCSeries":
        return cls(tuple(alphabet), N, {(a,): 1})

    def _like(self, coeffs: Mapping[Monomial, Fraction], N: Optional[int] = None) -> "TruncNCSeries":
        return TruncNCSeries(self.alphabet, self.N if N is None else N, coeffs, self.algebra)

    def _check(self, other: "TruncNCSeries") -> None:
        if self.alphabet != other.alphabet or self.algebra is not other.algebra:
            raise ValueError("series live in different algebras")

    # arithmetic
    def __add__(self, other: "TruncNCSeries") -> "TruncNCSeries":
        self._check(other)
        out = dict(self.coeffs)
        add_scaled(out, other.coeffs, Fraction(1))
        return self._like(out, min(self.N, other.N))

    def __neg__(self) -> "TruncNCSeries":
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "TruncNCSeries") -> "TruncNCSeries":
        return self + (-other)

    def scale(self, c) -> "TruncNCSeries":
        c = Fraction(c)
        return self._like({k: v * c for k, v in self.coeffs.items()})

    def __rmul__(self, c) -> "TruncNCSeries":
        return self.scale(c)

    def __mul__(self, other: Union["TruncNCSeries", int, Fraction]) -> "TruncNCSeries":
        if not isinstance(other, TruncNCSeries):
            return self.scale(other)
        self._check(other)
        N = min(self.N, other.N)
        out: Dict[Monomial, Fraction] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                if len(a) + len(b) <= N:
                    k = a + b
                    out[k] = out.get(k, 0) + x * y
        return self._like(out, N)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncNCSeries):
            return NotImplemented
        return self.alphabet == other.alphabet and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"TruncNCSeries({format_series(self)}, N={self.N})"

    def constant(self) -> Fraction:
        return self.coeffs.get((), Fraction(0))

    def degree_part(self, d: int) -> "TruncNCSeries":
        return self._like({k: v for k, v in self.coeffs.items() if len(k) == d})

    def truncate(self, N: int) -> "TruncNCSeries":
        return self._like(self.coeffs, min(N, self.N))

    def unit_like(self) -> "TruncNCSeries":
        return self._like({(): 1})

    def inverse(self) -> "TruncNCSeries":
        a0 = self.constant()
        if not a0:
            raise ValueError("series with zero constant term is not invertible")
        x = (self - self.unit_like().scale(a0)).scale(-1 / a0)
        out = self.unit_like()
        term = self.unit_like()
        for _ in range(self.N):
            term = term * x
            out = out + term
        return out.scale(1 / a0)

    def exp(self) -> "TruncNCSeries":
        if self.constant():
            raise ValueError("exp needs zero constant term")
        out = self.unit_like()
        term = self.unit_like()
        for k in range(1, self.N + 1):
            term = term * self
            out = out + term.scale(Fraction(1, factorial(k)))
        return out

    def log(self) -> "TruncNCSeries":
        if self.constant() != 1:
            raise ValueError("log needs constant term 1")
        x = self - self.unit_like()
        out = self._like({})
        term = self.unit_like()
        for k in range(1, self.N + 1):
            term = term * x
            out = out + term.scale(Fraction((-1) ** (k + 1), k))
        return out


def format_series(s: TruncNCSeries) -> str:
    if not s.coeffs:
        return "0"
    items = sorted(s.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return " + ".join(f"({c})*{''.join(k) if k else '1'}" if all(len(a) == 1 for a in k)
                      else f"({c})*{'.'.join(k)}" for k, c in items)


def commutator(a: TruncNCSeries, b: TruncNCSeries) -> TruncNCSeries:
    return a * b - b * a


# --------------------------------------------------------------------------
# associators

XY = ("X", "Y")


@dataclass(frozen=True)
class AssociatorSpec:
    series: TruncNCSeries
    provenance: str = "builtin-degree-2"

    @property
    def N(self) -> int:
        return self.series.N


def default_associator(N: int) -> AssociatorSpec:
    """``1 + [X, Y]/24`` truncated at ``N``; only defined for ``N <= 2``."""
    if N > 2:
        raise ValueError("the builtin associator is rational only up to degree 2; supply a table")
    coeffs = {(): Fraction(1)}
    if N >= 2:
        coeffs[("X", "Y")] = Fraction(1, 24)
        coeffs[("Y", "X")] = Fraction(-1, 24)
    return AssociatorSpec(TruncNCSeries(XY, N, coeffs), "builtin-degree-2")


def trivial_series(N: int) -> AssociatorSpec:
    return AssociatorSpec(TruncNCSeries.one(XY, N), "user-supplied")


def parse_associator(text: str, N: Optional[int] = None) -> AssociatorSpec:
    """Parse lines ``degree monomial num/den``; ``#`` starts a comment.

    The monomial ``1`` (or ``-``) stands for the empty word.
    """
    coeffs: Dict[Monomial, Fraction] = {}
    top = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'degree monomial coefficient'")
        deg = int(parts[0])
        mono = () if parts[1] in ("1", "-") else tuple(parts[1])
        if any(a not in XY for a in mono):
            raise ValueError(f"line {lineno}: monomial {parts[1]!r} is not over X, Y")
        if len(mono) != deg:
            raise ValueError(f"line {lineno}: degree {deg} does not match monomial {parts[1]!r}")
        coeffs[mono] = coeffs.get(mono, 0) + Fraction(parts[2])
        top = max(top, deg)
    N = top if N is None else N
    if coeffs.get((), 0) != 1:
        raise ValueError("associator must have constant term 1")
    return AssociatorSpec(TruncNCSeries(XY, N, coeffs), "user-supplied")


def load_associator(path: Union[str, Path], N: Optional[int] = None) -> AssociatorSpec:
    return parse_associator(Path(path).read_text(), N)


def coproduct_nc(s: TruncNCSeries) -> Dict[Tuple[Monomial, Monomial], Fraction]:
    """``Delta`` with primitive letters, as a map on pairs of monomials."""
    out: Dict[Tuple[Monomial, Monomial], Fraction] = {}
    for w, c in s.coeffs.items():
        n = len(w)
        for mask in range(1 << n):
            a = tuple(w[i] for i in range(n) if mask >> i & 1)
            b = tuple(w[i] for i in range(n) if not mask >> i & 1)
            out[(a, b)] = out.get((a, b), 0) + c
    return {k: v for k, v in out.items() if v}


def is_grouplike(s: TruncNCSeries) -> bool:
    """``Delta s = s (x) s`` up to total degree ``N`` (free algebra only)."""
    if s.algebra is not None:
        raise ValueError("group-likeness is tested in the free algebra")
    lhs = coproduct_nc(s)
    rhs: Dict[Tuple[Monomial, Monomial], Fraction] = {}
    for a, x in s.coeffs.items():
        for b, y in s.coeffs.items():
            if len(a) + len(b) <= s.N:
                rhs[(a, b)] = rhs.get((a, b), 0) + x * y
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


def is_primitive(s: TruncNCSeries) -> bool:
    lhs = coproduct_nc(s)
    rhs: Dict[Tuple[Monomial, Monomial], Fraction] = {}
    for w, c in s.coeffs.items():
        for key in (((), w), (w, ())):
            rhs[key] = rhs.get(key, 0) + c
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


# --------------------------------------------------------------------------
# U(t_n)


def t_name(i: int, j: int) -> str:
    if i > j:
        i, j = j, i
    return f"t{i}{j}"


def utn_relations(n: int) -> List[Dict[Monomial, Fraction]]:
    rels: List[Dict[Monomial, Fraction]] = []

    def comm(a: str, bs: Sequence[str]) -> Dict[Monomial, Fraction]:
        out: Dict[Monomial, Fraction] = {}
        for b in bs:
            for k, c in (((a, b), 1), ((b, a), -1)):
                out[k] = out.get(k, 0) + c
        return {k: Fraction(v) for k, v in out.items() if v}

    idx = range(1, n + 1)
    for i, j in itertools.combinations(idx, 2):
        for k in idx:
            if k in (i, j):
                continue
            for a, b in ((i, j), (j, i)):
                r = comm(t_name(a, b), [t_name(a, k), t_name(b, k)])
                if r:
                    rels.append(r)
    for (i, j), (k, l) in itertools.combinations(list(itertools.combinations(idx, 2)), 2):
        if len({i, j, k, l}) == 4:
            rels.append(comm(t_name(i, j), [t_name(k, l)]))
    return rels


_UTN_CACHE: Dict[Tuple[int, int], QuotientAlgebra] = {}


def utn(n: int, N: int) -> QuotientAlgebra:
    """The truncated algebra U(t_n), ``n >= 2``."""
    if n < 2:
        raise ValueError("U(t_n) needs n >= 2")
    key = (n, N)
    if key not in _UTN_CACHE:
        alphabet = [t_name(i, j) for i, j in itertools.combinations(range(1, n + 1), 2)]
        _UTN_CACHE[key] = QuotientAlgebra(alphabet, N, utn_relations(n))
    return _UTN_CACHE[key]


# --------------------------------------------------------------------------
# substitution


def subst(series: TruncNCSeries, args: Sequence[object],
          mul: Optional[Callable[[object, object], object]] = None,
          one: Optional[object] = None) -> object:
    """Replace the letters of ``series`` by ``args`` (in alphabet order).

    ``args`` may be :class:`TruncNCSeries` in a common algebra, or
    convolution-algebra morphisms ``0 -> n``; in the latter case pass
    nothing else and convolution is used.
    """
    if len(args) != len(series.alphabet):
        raise ValueError(f"expected {len(series.alphabet)} arguments, got {len(args)}")
    if mul is None or one is None:
        first = args[0] if args else None
        if isinstance(first, TruncNCSeries):
            mul = mul or (lambda a, b: a * b)
            one = one if one is not None else first.unit_like()
        else:
            from .catab import convolve_maps, conv_unit
            mul = mul or convolve_maps
            one = one if one is not None else conv_unit(first.m, first.n, first.N)
    table = dict(zip(series.alphabet, args))
    out = None
    for mono, c in sorted(series.coeffs.items()):
        term = one
        for a in mono:
            term = mul(term, table[a])
        term = term.scale(c)
        out = term if out is None else out + term
    if out is None:
        out = one.scale(0)
    return out


def _series_in(alg: QuotientAlgebra, text: Mapping[Tuple[int, int], int]) -> TruncNCSeries:
    return alg.element({(t_name(i, j),): c for (i, j), c in text.items()})


@dataclass
class AssociatorReport:
    results: Dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.results.values())


def check_associator(phi: Union[AssociatorSpec, TruncNCSeries], N: int) -> AssociatorReport:
    """Pentagon in U(t_4) and both hexagons in U(t_3), degree by degree up to N."""
    s = phi.series if isinstance(phi, AssociatorSpec) else phi
    s = s.truncate(N)
    u4 = utn(4, N)
    t = lambda i, j: _series_in(u4, {(i, j): 1})
    ph = lambda a, b: subst(s, [a, b])
    lhs = ph(t(1, 2), t(2, 3) + t(2, 4)) * ph(t(1, 3) + t(2, 3), t(3, 4))
    rhs = ph(t(2, 3), t(3, 4)) * ph(t(1, 2) + t(1, 3), t(2, 4) + t(3, 4)) * ph(t(1, 2), t(2, 3))
    res = {"pentagon": lhs == rhs}
    u3 = utn(3, N)
    t = lambda i, j: _series_in(u3, {(i, j): 1})
    half = Fraction(1, 2)
    e = lambda x: x.scale(half).exp()
    lhs = e(t(1, 3) + t(2, 3))
    rhs = ph(t(1, 3), t(1, 2)) * e(t(1, 3)) * ph(t(1, 3), t(2, 3)).inverse() * e(t(2, 3)) * ph(t(1, 2), t(2, 3))
    res["hexagon1"] = lhs == rhs
    lhs = e(t(1, 2) + t(1, 3))
    rhs = ph(t(2, 3), t(1, 3)).inverse() * e(t(1, 3)) * ph(t(1, 2), t(1, 3)) * e(t(1, 2)) * ph(t(1, 2), t(2, 3)).inverse()
    res["hexagon2"] = lhs == rhs
    res["grouplike"] = is_grouplike(s)
    return AssociatorReport(res)


def iota(u: TruncNCSeries, n: int, N: Optional[int] = None):
    """Send a series in the letters ``t_ij`` to ``A^B(0, n)``, t_ij -> c_ij."""
    from .catab import chord, conv_unit, convolve

    N = u.N if N is None else N
    gens = {}
    for a in u.alphabet:
        if not (a.startswith("t") and len(a) == 3):
            raise ValueError(f"letter {a!r} is not of the form tij")
        gens[a] = chord(n, int(a[1]), int(a[2]), N)
    return subst(u, [gens[a] for a in u.alphabet], convolve, conv_unit(0, n, N))
