"""The extended Kontsevich integral on generator expressions of B_q.

Objects are parenthesized words in one letter (``MagWord``); morphisms
are ``GenExpr`` trees over the generators.  ``z_eval`` is the structural
recursion using the closed values ``z_gen`` of the generators.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple, Union

from .catab import (
    compose,
    compose_all,
    delta_iter,
    epsilon,
    eta,
    identity,
    symmetry,
    tensor,
    tensor_all,
)
from .diagcore import (
    DiagLin,
    PairLin,
    RelationWindow,
    comultiply,
    counit,
    eq_pairs_mod_relations,
    homotopy_class,
)
from .fgroup import GroupHom, hom_compose, hom_tensor
from .hphi import (
    HphiStructure,
    anomaly_formula,
    build_hphi,
    r_power,
    sweedler,
    theta,
)
from .kdassoc import AssociatorSpec

# --------------------------------------------------------------------------
# objects


@dataclass(frozen=True)
class MagWord:
    """``None`` is the empty word, ``"."`` the letter, a pair a product."""

    tree: object = None

    @property
    def length(self) -> int:
        t = self.tree
        if t is None:
            return 0
        if t == ".":
            return 1
        return MagWord(t[0]).length + MagWord(t[1]).length

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        def fmt(t) -> str:
            if t == ".":
                return "."
            return "(" + fmt(t[0]) + fmt(t[1]) + ")"

        return "1" if self.tree is None else fmt(self.tree)

    @staticmethod
    def letter() -> "MagWord":
        return MagWord(".")

    def __mul__(self, other: "MagWord") -> "MagWord":
        if self.tree is None:
            return other
        if other.tree is None:
            return self
        return MagWord((self.tree, other.tree))


EMPTY = MagWord()
DOT = MagWord(".")
DOT2 = DOT * DOT


def parse_magword(text: str) -> MagWord:
    """``1`` or empty is the unit; ``.`` the letter; ``(ab)`` a product."""
    s = text.replace(" ", "")
    if s in ("", "1"):
        return EMPTY
    pos = 0

    def item():
        nonlocal pos
        if pos >= len(s):
            raise ValueError(f"unexpected end of magma word {text!r}")
        if s[pos] == ".":
            pos += 1
            return "."
        if s[pos] == "(":
            pos += 1
            a = item()
            b = item()
            if pos >= len(s) or s[pos] != ")":
                raise ValueError(f"expected ')' in magma word {text!r}")
            pos += 1
            return (a, b)
        raise ValueError(f"bad character {s[pos]!r} in magma word {text!r}")

    a = item()
    if pos < len(s):
        b = item()
        a = (a, b)
    if pos != len(s):
        raise ValueError(f"trailing input in magma word {text!r}")
    return MagWord(a)


# --------------------------------------------------------------------------
# expressions

GENERATORS = ("psi", "psi-", "mu", "eta", "eps", "Delta", "S", "S-", "r+", "r-")

_SIGNATURES = {
    "psi": (DOT2, DOT2),
    "psi-": (DOT2, DOT2),
    "mu": (DOT2, DOT),
    "eta": (EMPTY, DOT),
    "r+": (EMPTY, DOT),
    "r-": (EMPTY, DOT),
    "Delta": (DOT, DOT2),
    "eps": (DOT, EMPTY),
    "S": (DOT, DOT),
    "S-": (DOT, DOT),
}


class ExprTypeError(TypeError):
    pass


@dataclass(frozen=True)
class GenExpr:
    source: MagWord
    target: MagWord


@dataclass(frozen=True)
class Id(GenExpr):
    @staticmethod
    def of(w: MagWord) -> "Id":
        return Id(w, w)

    def __str__(self) -> str:
        return f"id[{self.source}]"


@dataclass(frozen=True)
class Gen(GenExpr):
    name: str = ""

    @staticmethod
    def of(name: str) -> "Gen":
        if name not in _SIGNATURES:
            raise ValueError(f"unknown generator {name!r}")
        s, t = _SIGNATURES[name]
        return Gen(s, t, name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Assoc(GenExpr):
    u: MagWord = EMPTY
    v: MagWord = EMPTY
    w: MagWord = EMPTY
    sign: int = 1

    @staticmethod
    def of(u: MagWord, v: MagWord, w: MagWord, sign: int = 1) -> "Assoc":
        left, right = (u * v) * w, u * (v * w)
        if sign == 1:
            return Assoc(left, right, u, v, w, 1)
        return Assoc(right, left, u, v, w, -1)

    def __str__(self) -> str:
        return f"assoc{'' if self.sign == 1 else '-'}({self.u};{self.v};{self.w})"


@dataclass(frozen=True)
class Compose(GenExpr):
    """``outer o inner``."""

    outer: GenExpr = None
    inner: GenExpr = None

    @staticmethod
    def of(outer: GenExpr, inner: GenExpr) -> "Compose":
        if inner.target != outer.source:
            raise ExprTypeError(f"cannot compose {outer} after {inner}: {inner.target} != {outer.source}")
        return Compose(inner.source, outer.target, outer, inner)

    def __str__(self) -> str:
        return f"({self.outer} . {self.inner})"


@dataclass(frozen=True)
class Tensor(GenExpr):
    left: GenExpr = None
    right: GenExpr = None

    @staticmethod
    def of(left: GenExpr, right: GenExpr) -> "Tensor":
        return Tensor(left.source * right.source, left.target * right.target, left, right)

    def __str__(self) -> str:
        return f"({self.left} (x) {self.right})"


def check_types(e: GenExpr) -> None:
    """Re-derive every annotation; raise ``ExprTypeError`` on mismatch."""
    if isinstance(e, Id):
        ok = e.source == e.target
    elif isinstance(e, Gen):
        ok = _SIGNATURES.get(e.name) == (e.source, e.target)
    elif isinstance(e, Assoc):
        ok = Assoc.of(e.u, e.v, e.w, e.sign) == e
    elif isinstance(e, Compose):
        check_types(e.outer)
        check_types(e.inner)
        ok = e.inner.target == e.outer.source and (e.source, e.target) == (e.inner.source, e.outer.target)
    elif isinstance(e, Tensor):
        check_types(e.left)
        check_types(e.right)
        ok = (e.source, e.target) == (e.left.source * e.right.source, e.left.target * e.right.target)
    else:
        raise ExprTypeError(f"not an expression: {e!r}")
    if not ok:
        raise ExprTypeError(f"ill-typed node {e}")


# --------------------------------------------------------------------------
# DSL

_WORDS = ("(x)", "psi-", "psi", "r+", "r-", "S-", "S", "eta", "eps", "Delta", "mu", ".", "(", ")")


class ExprParseError(ValueError):
    """A DSL error at a 1-based column."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


def _tokenize(text: str) -> List[Tuple[str, int]]:
    out: List[Tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        for head, close in (("id[", "]"), ("assoc-(", ")"), ("assoc(", ")")):
            if text.startswith(head, pos):
                depth, k = 0, pos + len(head) - 1
                while k < len(text):
                    ch = text[k]
                    depth += ch in "([" and 1 or (ch in ")]" and -1 or 0)
                    if depth == 0:
                        break
                    k += 1
                if k >= len(text) or text[k] != close:
                    raise ExprParseError(f"unbalanced {head!r}", pos + 1)
                out.append((text[pos:k + 1], pos + 1))
                pos = k + 1
                break
        else:
            for w in _WORDS:
                if text.startswith(w, pos):
                    out.append((w, pos + 1))
                    pos += len(w)
                    break
            else:
                raise ExprParseError(f"cannot parse {text[pos:pos + 8]!r}", pos + 1)
    return out


def _assoc_token(tok: str, col: int) -> Assoc:
    sign = -1 if tok.startswith("assoc-") else 1
    body = tok[tok.index("(") + 1:-1]
    parts = body.split(";")
    if len(parts) != 3:
        raise ExprParseError(f"assoc needs three magma words: {tok!r}", col)
    try:
        words = [parse_magword(p) for p in parts]
    except ValueError as exc:
        raise ExprParseError(str(exc), col) from exc
    return Assoc.of(*words, sign)


def parse_expr(text: str) -> GenExpr:
    """``.`` composes (right to left), ``(x)`` tensors and binds tighter.

    Errors are :class:`ExprParseError` (with a column) or :class:`ExprTypeError`.
    """
    toks = _tokenize(text)
    pos = 0
    end_col = len(text) + 1

    def peek() -> Optional[str]:
        return toks[pos][0] if pos < len(toks) else None

    def col() -> int:
        return toks[pos][1] if pos < len(toks) else end_col

    def expr() -> GenExpr:
        nonlocal pos
        parts = [term()]
        while peek() == ".":
            pos += 1
            parts.append(term())
        out = parts[-1]
        for outer in reversed(parts[:-1]):
            out = Compose.of(outer, out)
        return out

    def term() -> GenExpr:
        nonlocal pos
        out = factor()
        while peek() == "(x)":
            pos += 1
            out = Tensor.of(out, factor())
        return out

    def factor() -> GenExpr:
        nonlocal pos
        tok, c = peek(), col()
        if tok is None:
            raise ExprParseError("unexpected end of expression", c)
        pos += 1
        if tok == "(":
            e = expr()
            if peek() != ")":
                raise ExprParseError("expected ')'", col())
            pos += 1
            return e
        if tok.startswith("id["):
            try:
                return Id.of(parse_magword(tok[3:-1]))
            except ValueError as exc:
                raise ExprParseError(str(exc), c) from exc
        if tok.startswith("assoc"):
            return _assoc_token(tok, c)
        if tok in _SIGNATURES:
            return Gen.of(tok)
        raise ExprParseError(f"unexpected token {tok!r}", c)

    e = expr()
    if pos != len(toks):
        raise ExprParseError(f"trailing input {peek()!r}", col())
    return e


# --------------------------------------------------------------------------
# values of the generators


@lru_cache(maxsize=None)
def _default_structure(N: int) -> HphiStructure:
    return build_hphi(None, N)


def structure(N: int, phi: Optional[AssociatorSpec] = None) -> HphiStructure:
    return _default_structure(N) if phi is None else build_hphi(phi, N)


def _z_psi(h: HphiStructure, sign: int) -> DiagLin:
    R = h.R if sign == 1 else h.R_inv
    return sweedler([R, 2], ["x2 x4 x2^-1", "x1 x3 x1^-1"], h.N)


def _z_S(h: HphiStructure, sign: int) -> DiagLin:
    root = r_power(h, Fraction(sign, 2))
    return sweedler([root, 1], ["x1 x2^-1 x1^-1"], h.N)


def _z_mu(h: HphiStructure) -> DiagLin:
    return sweedler([h.phi, h.phi_inv, h.nu, 2], ["x1 x4 x8 x4^-1 x2^-1 x3 x5 x9 x6^-1 x7"], h.N)


def _z_delta(h: HphiStructure) -> DiagLin:
    a = anomaly_formula(h)
    a_delta = sweedler([a, 1], ["x1 x3", "x2 x3"], h.N)
    R21 = compose(symmetry(1, 1, h.N), h.R)
    return compose_all(theta(h, 5), theta(h, 4, R21), theta(h, 3), theta(h, 2), a_delta)


def z_assoc(u: int, v: int, w: int, sign: int, h: HphiStructure) -> DiagLin:
    """``f = (Delta^{[u]} (x) Delta^{[v]} (x) Delta^{[w]}) phi^{±1}`` acting by conjugation.

    Strand ``j`` reads ``f^j x_j S(f^j)``: each strand passes through its
    handle, so the legs land on both halves.
    """
    N = h.N
    n = u + v + w
    p = h.phi if sign == 1 else h.phi_inv
    fan = compose(tensor_all(delta_iter(u, N), delta_iter(v, N), delta_iter(w, N)), p)
    return sweedler([fan, n], [f"x{j} x{n + j} x{j}^-1" for j in range(1, n + 1)], N)


def z_gen(gen: Union[str, Assoc, Gen], N: int = 2, phi: Optional[AssociatorSpec] = None,
          h: Optional[HphiStructure] = None) -> DiagLin:
    h = h or structure(N, phi)
    if isinstance(gen, Assoc):
        return z_assoc(gen.u.length, gen.v.length, gen.w.length, gen.sign, h)
    name = gen.name if isinstance(gen, Gen) else gen
    N = h.N
    if name == "psi":
        return _z_psi(h, 1)
    if name == "psi-":
        return _z_psi(h, -1)
    if name == "mu":
        return _z_mu(h)
    if name == "Delta":
        return _z_delta(h)
    if name == "eta":
        return eta(N)
    if name == "eps":
        return epsilon(N)
    if name == "S":
        return _z_S(h, 1)
    if name == "S-":
        return _z_S(h, -1)
    if name == "r+":
        return h.r_inv
    if name == "r-":
        return h.r_elt
    raise ValueError(f"unknown generator {name!r}")


def z_eval(e: GenExpr, N: int = 2, phi: Optional[AssociatorSpec] = None,
           h: Optional[HphiStructure] = None) -> DiagLin:
    check_types(e)
    h = h or structure(N, phi)
    return _eval(e, h)


def _eval(e: GenExpr, h: HphiStructure) -> DiagLin:
    if isinstance(e, Id):
        return identity(e.source.length, h.N)
    if isinstance(e, (Gen, Assoc)):
        return z_gen(e, h=h)
    if isinstance(e, Compose):
        return compose(_eval(e.outer, h), _eval(e.inner, h))
    if isinstance(e, Tensor):
        return tensor(_eval(e.left, h), _eval(e.right, h))
    raise ExprTypeError(f"not an expression: {e!r}")


# --------------------------------------------------------------------------
# group-likeness and homotopy classes


def check_grouplike(v: DiagLin, win: Optional[RelationWindow] = None) -> bool:
    if counit(v) != 1:
        return False
    return eq_pairs_mod_relations(comultiply(v), PairLin.tensor(v, v, v.N), win).equal


_HOMS = {
    "mu": GroupHom.from_strings(2, ["x1 x2"]),
    "Delta": GroupHom.from_strings(1, ["x1", "x1"]),
    "S": GroupHom.from_strings(1, ["x1^-1"]),
    "S-": GroupHom.from_strings(1, ["x1^-1"]),
    "psi": GroupHom.from_strings(2, ["x2", "x1"]),
    "psi-": GroupHom.from_strings(2, ["x2", "x1"]),
    "eta": GroupHom.trivial(1, 0),
    "r+": GroupHom.trivial(1, 0),
    "r-": GroupHom.trivial(1, 0),
    "eps": GroupHom.trivial(0, 1),
}


def expected_homotopy(e: GenExpr) -> GroupHom:
    """Compose the generators' homomorphisms ``F_target -> F_source``."""
    if isinstance(e, Id):
        return GroupHom.identity(e.source.length)
    if isinstance(e, Assoc):
        return GroupHom.identity(e.source.length)
    if isinstance(e, Gen):
        return _HOMS[e.name]
    if isinstance(e, Compose):
        return hom_compose(expected_homotopy(e.inner), expected_homotopy(e.outer))
    if isinstance(e, Tensor):
        return hom_tensor(expected_homotopy(e.left), expected_homotopy(e.right))
    raise ExprTypeError(f"not an expression: {e!r}")


def homotopy_check(e: GenExpr, N: int = 2, h: Optional[HphiStructure] = None) -> bool:
    v = z_eval(e, N, h=h)
    deg0 = [(t, c) for t, c in v.terms.items() if t.degree == 0]
    if len(deg0) != 1 or deg0[0][1] != 1:
        return False
    return homotopy_class(deg0[0][0]) == expected_homotopy(e)


# relations of B_q: (name, lhs, rhs) in the DSL
RELATIONS = (
    ("antipode_right", "mu . (id[.] (x) S) . Delta", "eta . eps"),
    ("antipode_left", "mu . (S (x) id[.]) . Delta", "eta . eps"),
    ("unit_left", "mu . (eta (x) id[.])", "id[.]"),
    ("counit_left", "(eps (x) id[.]) . Delta", "id[.]"),
    ("associative", "mu . (mu (x) id[.])", "mu . (id[.] (x) mu) . assoc(.;.;.)"),
    ("coassociative", "assoc(.;.;.) . (Delta (x) id[.]) . Delta", "(id[.] (x) Delta) . Delta"),
    ("counit_mu", "eps . mu", "eps (x) eps"),
    ("delta_eta", "Delta . eta", "eta (x) eta"),
    ("S_eta", "S . eta", "eta"),
    ("eps_S", "eps . S", "eps"),
    ("S_inverse", "S . S-", "id[.]"),
    ("psi_inverse", "psi . psi-", "id[(..)]"),
    ("psi_natural", "psi . (S (x) id[.])", "(id[.] (x) S) . psi"),
    ("psi_unit", "mu . psi . (eta (x) id[.])", "mu . (id[.] (x) eta)"),
    ("psi_mu", "psi . (mu (x) id[.])",
     "(id[.] (x) mu) . assoc(.;.;.) . (psi (x) id[.]) . assoc-(.;.;.) . (id[.] (x) psi) . assoc(.;.;.)"),
    ("ribbon_cancel", "mu . (r- (x) r+)", "eta"),
)


# --------------------------------------------------------------------------
# hand-encoded diagrams for the degree <= 2 tables

Item = Tuple  # ("b", j, ±1) | ("u", k) | ("box", (legs...), ("b", j, ±1))


def _expand_boxes(strands) -> List[Tuple[int, List[List[Tuple]]]]:
    """A box around a bead with legs ``a_1..a_k``: sum over the legs moved past
    the bead; those land after it in reverse order, each with a sign -1."""
    out: List[Tuple[int, List[List[Tuple]]]] = [(1, [])]
    for s in strands:
        variants: List[Tuple[int, List[Tuple]]] = [(1, [])]
        for it in s:
            if it[0] != "box":
                variants = [(c, w + [it]) for c, w in variants]
                continue
            legs, bead = it[1], it[2]
            k = len(legs)
            new = []
            for mask in range(1 << k):
                left = [("u", legs[i]) for i in range(k) if not mask >> i & 1]
                right = [("u", legs[i]) for i in reversed(range(k)) if mask >> i & 1]
                sign = -1 if bin(mask).count("1") % 2 else 1
                new += [(c * sign, w + left + [bead] + right) for c, w in variants]
            variants = new
        out = [(c * d, acc + [w]) for c, acc in out for d, w in variants]
    return out


def diagram(m: int, strands, chords=(), tripods=(), wheels=(), N: int = 2) -> DiagLin:
    """A Jacobi diagram on ``len(strands)`` strands with beads in ``x_1..x_m``.

    ``chords`` are pairs of leg names (tail, head); ``tripods`` are triples
    of leg names in counterclockwise order around the vertex; a wheel lists
    its spokes' legs in order around the planar loop.
    """
    from .diagcore import JEdge, JacobiGraph, stu_resolve
    from .fgroup import FreeWord

    one = FreeWord.identity(m)
    total = DiagLin.zero(m, len(strands), N)
    for c, ss in _expand_boxes(strands):
        ids = {}
        for s in ss:
            for x in s:
                if x[0] == "u":
                    ids.setdefault(x[1], len(ids))
        gstrands = [tuple(("u", ids[x[1]], 0) if x[0] == "u" else x for x in s) for s in ss]
        edges = [JEdge(("u", ids[a]), ("u", ids[b]), one) for a, b in chords]
        verts = []
        for k, legs in enumerate(tripods):
            cyc = []
            for a in legs:
                cyc.append((len(edges), 1))
                edges.append(JEdge(("u", ids[a]), ("v", k), one))
            verts.append(tuple(cyc))
        for legs in wheels:
            k, base = len(legs), len(verts)
            loop0 = len(edges)
            # loop edge i runs from vertex i to vertex i+1
            for i in range(k):
                edges.append(JEdge(("v", base + i), ("v", base + (i + 1) % k), one))
            for i, a in enumerate(legs):
                spoke = len(edges)
                edges.append(JEdge(("u", ids[a]), ("v", base + i), one))
                verts.append(((spoke, 1), (loop0 + i, 0), (loop0 + (i - 1) % k, 1)))
        g = JacobiGraph(m, tuple(gstrands), tuple(edges), tuple(verts))
        total = total + stu_resolve(g, N).scale(c)
    return total


def _b(j: int, s: int = 1) -> Tuple:
    return ("b", j, s)


def _u(name: str) -> Tuple:
    return ("u", name)


def _box(legs: str, bead: Tuple) -> Tuple:
    return ("box", tuple(legs), bead)


# name -> (m, n, terms); each term is (coefficient, strands, chords, tripods, wheels).
# Degree-0 terms are the plain generator diagrams.
_TABLES = {
    "mu": (2, [
        (1, [[_b(1), _b(2)]], (), (), ()),
        (Fraction(1, 24), [[_box("a", _b(1)), _u("b"), _b(2), _u("c")]], (), ("bac",), ()),
        (Fraction(1, 48), [[_b(1), _u("p"), _box("q", _b(2))]], (), (), ("pq",)),
        (Fraction(-1, 48), [[_box("abc", _b(1)), _b(2)]], (), ("abc",), ()),
        (Fraction(-1, 48), [[_b(1), _box("abc", _b(2))]], (), ("bac",), ()),
    ]),
    "Delta": (1, [
        (1, [[_b(1)], [_b(1)]], (), (), ()),
        (Fraction(-1, 2), [[_b(1), _u("a")], [_box("b", _b(1))]], ("ab",), (), ()),
        (Fraction(1, 8), [[_b(1), _u("a"), _u("c")], [_box("db", _b(1))]], ("ab", "cd"), (), ()),
        (Fraction(1, 48), [[_box("p", _b(1))], [_box("q", _b(1))]], (), (), ("pq",)),
        (Fraction(-1, 12), [[_u("a"), _b(1)], [_u("b"), _box("c", _b(1))]], (), ("abc",), ()),
        (Fraction(1, 24), [[_u("a"), _box("b", _b(1))], [_u("c"), _b(1)]], (), ("abc",), ()),
        (Fraction(1, 24), [[_u("a"), _box("b", _b(1))], [_box("c", _b(1))]], (), ("abc",), ()),
        (Fraction(1, 24), [[_box("a", _b(1))], [_u("b"), _box("c", _b(1))]], (), ("abc",), ()),
    ]),
    "psi": (2, [
        (1, [[_b(2)], [_b(1)]], (), (), ()),
        (Fraction(1, 2), [[_box("a", _b(2))], [_box("c", _b(1))]], ("ac",), (), ()),
        (Fraction(1, 8), [[_box("ap", _b(2))], [_box("cq", _b(1))]], ("ac", "pq"), (), ()),
    ]),
    "psi-": (2, [
        (1, [[_b(2)], [_b(1)]], (), (), ()),
        (Fraction(-1, 2), [[_box("a", _b(2))], [_box("c", _b(1))]], ("ac",), (), ()),
        (Fraction(1, 8), [[_box("ap", _b(2))], [_box("cq", _b(1))]], ("ac", "pq"), (), ()),
    ]),
    "S": (1, [
        (1, [[_b(1, -1)]], (), (), ()),
        (Fraction(1, 2), [[_u("a"), _u("b"), _b(1, -1)]], ("ab",), (), ()),
        (Fraction(-1, 2), [[_u("a"), _b(1, -1), _u("b")]], ("ab",), (), ()),
        (Fraction(1, 8), [[_u("a"), _u("b"), _u("c"), _u("d"), _b(1, -1)]], ("ab", "cd"), (), ()),
        (Fraction(-1, 4), [[_u("a"), _b(1, -1), _u("b"), _u("c"), _u("d")]], ("ab", "cd"), (), ()),
        (Fraction(1, 8), [[_u("a"), _u("c"), _b(1, -1), _u("d"), _u("b")]], ("ab", "cd"), (), ()),
    ]),
    "S-": (1, [
        (1, [[_b(1, -1)]], (), (), ()),
        (Fraction(-1, 2), [[_u("a"), _u("b"), _b(1, -1)]], ("ab",), (), ()),
        (Fraction(1, 2), [[_u("a"), _b(1, -1), _u("b")]], ("ab",), (), ()),
        (Fraction(1, 8), [[_u("a"), _u("b"), _u("c"), _u("d"), _b(1, -1)]], ("ab", "cd"), (), ()),
        (Fraction(-1, 4), [[_u("a"), _b(1, -1), _u("b"), _u("c"), _u("d")]], ("ab", "cd"), (), ()),
        (Fraction(1, 8), [[_u("a"), _u("c"), _b(1, -1), _u("d"), _u("b")]], ("ab", "cd"), (), ()),
    ]),
    # Z(r_-) = r and Z(r_+) = r^-1
    "r-": (0, [
        (1, [[]], (), (), ()),
        (Fraction(1, 2), [[_u("a"), _u("b")]], ("ab",), (), ()),
        (Fraction(1, 8), [[_u("a"), _u("b"), _u("c"), _u("d")]], ("ab", "cd"), (), ()),
    ]),
    "r+": (0, [
        (1, [[]], (), (), ()),
        (Fraction(-1, 2), [[_u("a"), _u("b")]], ("ab",), (), ()),
        (Fraction(1, 8), [[_u("a"), _u("b"), _u("c"), _u("d")]], ("ab", "cd"), (), ()),
    ]),
    "eta": (0, [(1, [[]], (), (), ())]),
    "eps": (1, [(1, [], (), (), ())]),
}

TABLE_NAMES = tuple(_TABLES)


def table_terms(name: str, N: int = 2) -> List[Tuple[Fraction, DiagLin]]:
    """The pictured diagrams of ``Z(name)`` with their table coefficients."""
    m, terms = _TABLES[name]
    out = []
    for c, strands, chords, tripods, wheels in terms:
        d = diagram(m, strands, [tuple(x) for x in chords], [tuple(x) for x in tripods],
                    [tuple(x) for x in wheels], N)
        out.append((Fraction(c), d))
    return out


def table_value(name: str, N: int = 2) -> DiagLin:
    total = None
    for c, d in table_terms(name, N):
        total = d.scale(c) if total is None else total + d.scale(c)
    return total


def assoc_table(u: int, v: int, w: int, sign: int, N: int = 2) -> DiagLin:
    """``id -+ 1/24`` tripod whose legs are summed over the three groups of strands.

    Each leg sits in a box around the bead of its strand.
    """
    n = u + v + w
    total = identity(n, N)
    groups = [range(0, u), range(u, u + v), range(u + v, n)]
    for i in groups[0]:
        for j in groups[1]:
            for k in groups[2]:
                strands = [[_b(s + 1)] for s in range(n)]
                for leg, s in zip("abc", (i, j, k)):
                    strands[s] = [_box(leg, _b(s + 1))]
                y = diagram(n, strands, (), [("a", "b", "c")], (), N)
                total = total + y.scale(Fraction(-sign, 24))
    return total
