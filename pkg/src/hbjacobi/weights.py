"""Weight systems of quadratic Lie algebras, evaluated through a representation.

A chord is the Casimir 2-tensor ``c^{ab}`` and a trivalent vertex with
counterclockwise edge-ends ``(x, y, z)`` is the lowered structure tensor
``kappa([b_x, b_y], b_z)``.  A strand reads its insertions left to right
in reading order, which makes STU hold on the nose.  Strands are tensored
in order, so an ``n``-strand diagram gives a matrix on ``V^{(x)n}``.
All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from .diagcore import DiagLin, JacobiGraph, TensorWord

Matrix = Tuple[Tuple[Fraction, ...], ...]


# --------------------------------------------------------------------------
# exact matrices


def mat(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def mat_identity(d: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def mat_zero(r: int, c: Optional[int] = None) -> Matrix:
    return tuple((Fraction(0),) * (r if c is None else c) for _ in range(r))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError("matrix dimension mismatch")
    cols = list(zip(*b)) if b else []
    return tuple(tuple(sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in cols) for r in a)


def mat_add(a: Matrix, b: Matrix, s=1) -> Matrix:
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        raise ValueError("matrix dimension mismatch")
    s = Fraction(s)
    return tuple(tuple(x + s * y for x, y in zip(r, q)) for r, q in zip(a, b))


def mat_scale(a: Matrix, s) -> Matrix:
    s = Fraction(s)
    return tuple(tuple(s * x for x in r) for r in a)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x * y for x in ra for y in rb) for ra in a for rb in b)


def kron_all(ms: Sequence[Matrix]) -> Matrix:
    out: Matrix = ((Fraction(1),),)
    for m in ms:
        out = kron(out, m)
    return out


def mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    rows = [list(r) + list(e) for r, e in zip(a, mat_identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(r[n:]) for r in rows)


def is_zero(a: Matrix) -> bool:
    return all(x == 0 for r in a for x in r)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


# --------------------------------------------------------------------------
# Lie data


@dataclass(frozen=True)
class LieData:
    """A Lie algebra with basis ``b_0..b_{d-1}``.

    ``f[i][j][k]`` is the coefficient of ``b_k`` in ``[b_i, b_j]``;
    ``casimir[a][b]`` is the symmetric invariant 2-tensor; ``rep[a]`` is
    the matrix of ``b_a`` on the module ``V``.
    """

    dim: int
    f: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    casimir: Matrix
    rep: Tuple[Matrix, ...]

    @property
    def dim_v(self) -> int:
        return len(self.rep[0]) if self.rep else 0

    def form(self) -> Matrix:
        """The inverse of the Casimir, that is the invariant form ``kappa_{ab}``."""
        return mat_inverse(self.casimir)

    def bracket(self, i: int, j: int) -> Tuple[Fraction, ...]:
        return self.f[i][j]

    def lowered_f(self) -> Tuple[Tuple[Tuple[Fraction, ...], ...], ...]:
        """``F[i][j][k] = kappa([b_i, b_j], b_k)``."""
        k = self.form()
        d = self.dim
        return tuple(tuple(tuple(sum((self.f[i][j][l] * k[l][m] for l in range(d)), Fraction(0))
                                 for m in range(d)) for j in range(d)) for i in range(d))

    def validate(self) -> None:
        d = self.dim
        if len(self.f) != d or any(len(r) != d or any(len(c) != d for c in r) for r in self.f):
            raise ValueError("structure constants must be a d x d x d array")
        if len(self.casimir) != d or any(len(r) != d for r in self.casimir):
            raise ValueError("casimir must be d x d")
        if len(self.rep) != d:
            raise ValueError("one representation matrix per basis element")
        if any(self.casimir[a][b] != self.casimir[b][a] for a in range(d) for b in range(d)):
            raise ValueError("casimir is not symmetric")
        if any(x for plane in ad_invariance_defect(self) for row in plane for x in row):
            raise ValueError("casimir is not ad-invariant")
        if not rep_respects_bracket(self):
            raise ValueError("representation does not respect the bracket")

    def to_json(self) -> dict:
        s = lambda x: str(x)
        return {
            "dim": self.dim,
            "f": [[[s(x) for x in c] for c in r] for r in self.f],
            "casimir": [[s(x) for x in r] for r in self.casimir],
            "rep": [[[s(x) for x in r] for r in m] for m in self.rep],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "LieData":
        try:
            d = int(obj["dim"])
            f = tuple(tuple(tuple(Fraction(x) for x in c) for c in r) for r in obj["f"])
            cas = mat(obj["casimir"])
            rep = tuple(mat(m) for m in obj["rep"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed Lie data: {exc}") from exc
        out = cls(d, f, cas, rep)
        out.validate()
        return out


def load_lie(path: Union[str, Path]) -> LieData:
    return LieData.from_json(json.loads(Path(path).read_text()))


def save_lie(L: LieData, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(L.to_json(), indent=1) + "\n")


def ad_invariance_defect(L: LieData):
    """``D[i][a][b] = sum_k f^a_{ik} c^{kb} + f^b_{ik} c^{ak}``; zero iff ``c`` is invariant."""
    d = L.dim
    return tuple(tuple(tuple(sum((L.f[i][k][a] * L.casimir[k][b] + L.f[i][k][b] * L.casimir[a][k]
                                  for k in range(d)), Fraction(0)) for b in range(d))
                       for a in range(d)) for i in range(d))


def rep_respects_bracket(L: LieData) -> bool:
    for i in range(L.dim):
        for j in range(L.dim):
            rhs = mat_zero(L.dim_v)
            for k in range(L.dim):
                if L.f[i][j][k]:
                    rhs = mat_add(rhs, L.rep[k], L.f[i][j][k])
            if commutator(L.rep[i], L.rep[j]) != rhs:
                return False
    return True


def sl2_data() -> LieData:
    """sl2 with basis ``(e, h, f)``, the trace form of ``V = C^2`` and its inverse as Casimir."""
    e = mat([[0, 1], [0, 0]])
    h = mat([[1, 0], [0, -1]])
    f = mat([[0, 0], [1, 0]])
    rep = (e, h, f)
    # read the brackets off the matrices
    def coords(m: Matrix) -> Tuple[Fraction, ...]:
        return (m[0][1], m[0][0], m[1][0])
    consts = tuple(tuple(coords(commutator(a, b)) for b in rep) for a in rep)
    form = mat([[trace(mat_mul(a, b)) for b in rep] for a in rep])
    out = LieData(3, consts, mat_inverse(form), rep)
    out.validate()
    return out


def casimir_matrix(L: LieData) -> Matrix:
    """``sum c^{ab} rho(b_a) (x) rho(b_b)`` on ``V (x) V``, by direct contraction."""
    out = mat_zero(L.dim_v ** 2)
    for a in range(L.dim):
        for b in range(L.dim):
            if L.casimir[a][b]:
                out = mat_add(out, kron(L.rep[a], L.rep[b]), L.casimir[a][b])
    return out


def cartan_trivector(L: LieData) -> Matrix:
    """``sum kappa([b^i, b^j], b^k) rho(b_i) (x) rho(b_j) (x) rho(b_k)`` on ``V^{(x)3}``.

    Indices are raised with the Casimir; the form and the bracket are taken
    from traces and commutators of the representation matrices, not from ``L.f``.
    """
    d = L.dim
    # dual basis images b^i = sum_j c^{ij} b_j in the representation
    dual = [
        _lin(L, [L.casimir[i][j] for j in range(d)]) for i in range(d)
    ]
    k = L.form()
    # the trace form of V is a multiple of kappa for simple g; recover the factor
    tr = [[trace(mat_mul(L.rep[a], L.rep[b])) for b in range(d)] for a in range(d)]
    a0, b0 = next((a, b) for a in range(d) for b in range(d) if k[a][b])
    scale = k[a0][b0] / tr[a0][b0]
    out = mat_zero(L.dim_v ** 3)
    for i, j, l in itertools.product(range(d), repeat=3):
        coeff = scale * trace(mat_mul(commutator(dual[i], dual[j]), dual[l]))
        if coeff:
            out = mat_add(out, kron_all([L.rep[i], L.rep[j], L.rep[l]]), coeff)
    return out


def _lin(L: LieData, coeffs: Sequence[Fraction]) -> Matrix:
    out = mat_zero(L.dim_v)
    for a, c in enumerate(coeffs):
        if c:
            out = mat_add(out, L.rep[a], c)
    return out


# --------------------------------------------------------------------------
# evaluation


def _probe_mats(L: LieData, m: int, args: Optional[Sequence[Matrix]]):
    args = list(args or [])
    if len(args) != m:
        raise ValueError(f"expected {m} probe matrices, got {len(args)}")
    out = {}
    for i, a in enumerate(args, 1):
        a = mat(a)
        if len(a) != L.dim_v or any(len(r) != L.dim_v for r in a):
            raise ValueError("probe matrix has the wrong dimension")
        out[(i, 1)] = a
        out[(i, -1)] = mat_inverse(a)
    return out


def _nonzero_casimir(L: LieData) -> List[Tuple[int, int, Fraction]]:
    return [(a, b, L.casimir[a][b]) for a in range(L.dim) for b in range(L.dim) if L.casimir[a][b]]


def _strand_matrix(L: LieData, strand, idx: Mapping, probes) -> Matrix:
    out = mat_identity(L.dim_v)
    for x in strand:
        if x[0] == "b":
            out = mat_mul(out, probes[(x[1], x[2])])
        else:
            out = mat_mul(out, L.rep[idx[(x[1], x[2])]])
    return out


def weight_word(t: TensorWord, L: LieData, args: Optional[Sequence[Matrix]] = None) -> Matrix:
    """Weight of one tensor word."""
    probes = _probe_mats(L, t.m, args)
    chords = sorted({x[1] for s in t.strands for x in s if x[0] == "e"})
    cas = _nonzero_casimir(L)
    out = mat_zero(L.dim_v ** len(t.strands))
    for choice in itertools.product(cas, repeat=len(chords)):
        idx = {}
        coeff = Fraction(1)
        for p, (a, b, c) in zip(chords, choice):
            idx[(p, 0)], idx[(p, 1)] = a, b
            coeff *= c
        term = kron_all([_strand_matrix(L, s, idx, probes) for s in t.strands])
        out = mat_add(out, term, coeff)
    return out


def weight_eval(v: DiagLin, L: LieData, args: Optional[Sequence[Matrix]] = None) -> Matrix:
    """The matrix of ``v`` on ``V^{(x)n}`` with beads ``x_i^{+-1}`` set to ``args[i-1]^{+-1}``."""
    if v.skeleton is not None:
        raise ValueError("weight_eval expects a diagram on X_n")
    _probe_mats(L, v.m, args)
    out = mat_zero(L.dim_v ** v.n)
    for t, c in sorted(v.terms.items(), key=lambda tc: repr(tc[0])):
        out = mat_add(out, weight_word(t, L, args), c)
    return out


def weight_graph(g: JacobiGraph, L: LieData, args: Optional[Sequence[Matrix]] = None) -> Matrix:
    """Weight of a Jacobi graph by direct contraction of its vertices."""
    g.validate()
    if any(not e.label.is_identity() for e in g.edges):
        raise ValueError("weight_graph needs beads on strands only")
    probes = _probe_mats(L, g.m, args)
    F = L.lowered_f()
    cas = _nonzero_casimir(L)
    out = mat_zero(L.dim_v ** len(g.strands))
    for choice in itertools.product(cas, repeat=len(g.edges)):
        ends = {}
        coeff = Fraction(1)
        for k, (a, b, c) in enumerate(choice):
            ends[(k, 0)], ends[(k, 1)] = a, b
            coeff *= c
        for cyc in g.vertices:
            i, j, k = (ends[e] for e in cyc)
            coeff *= F[i][j][k]
            if not coeff:
                break
        if not coeff:
            continue
        leg_idx = {}
        for k, e in enumerate(g.edges):
            for side, node in ((0, e.tail), (1, e.head)):
                if node[0] == "u":
                    leg_idx[node[1]] = ends[(k, side)]
        mats = []
        for s in g.strands:
            m = mat_identity(L.dim_v)
            for x in s:
                m = mat_mul(m, probes[(x[1], x[2])] if x[0] == "b" else L.rep[leg_idx[x[1]]])
            mats.append(m)
        out = mat_add(out, kron_all(mats), coeff)
    return out


def weight_combination(items: Sequence[Tuple[object, Union[JacobiGraph, TensorWord, DiagLin]]],
                       L: LieData, args: Optional[Sequence[Matrix]] = None) -> Matrix:
    """Weight of a rational combination of graphs, words or diagrams."""
    out = None
    for c, x in items:
        if isinstance(x, JacobiGraph):
            w = weight_graph(x, L, args)
        elif isinstance(x, TensorWord):
            w = weight_word(x, L, args)
        else:
            w = weight_eval(x, L, args)
        out = mat_scale(w, c) if out is None else mat_add(out, w, c)
    if out is None:
        raise ValueError("empty combination")
    return out
