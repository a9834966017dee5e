"""Seeded random corpora: tensor words, Jacobi graphs and generator expressions.

Every generator takes a :class:`random.Random` so that a seed fixes the
whole corpus.
"""

from __future__ import annotations

import random
from typing import List, Optional, Sequence, Tuple

from .diagcore import DiagLin, JEdge, JacobiGraph, TensorWord
from .fgroup import FreeWord
from .zb import DOT, EMPTY, Assoc, Compose, Gen, GenExpr, Id, MagWord, Tensor

# --------------------------------------------------------------------------
# chord diagrams


def random_word(rng: random.Random, m: int, n: int, chords: int, beads: int = 2) -> TensorWord:
    """``chords`` chords and up to ``beads`` bead letters spread over ``n`` strands."""
    strands: List[List[Tuple[str, int, int]]] = [[] for _ in range(n)]

    def drop(sym) -> None:
        s = strands[rng.randrange(n)]
        s.insert(rng.randint(0, len(s)), sym)

    for p in range(1, chords + 1):
        drop(("e", p, 0))
        drop(("e", p, 1))
    if m:
        for _ in range(rng.randint(0, beads)):
            drop(("b", rng.randint(1, m), rng.choice((1, -1))))
    return TensorWord(m, tuple(tuple(s) for s in strands))


def random_diagram(rng: random.Random, m: int, n: int, max_degree: int = 2, N: int = 2,
                   terms: int = 2, beads: int = 2) -> DiagLin:
    acc = {}
    for _ in range(terms):
        t = random_word(rng, m, n, rng.randint(0, max_degree), beads)
        acc[t] = acc.get(t, 0) + rng.choice((1, -1, 2, -2, 3))
    return DiagLin(m, n, N, acc)


# --------------------------------------------------------------------------
# Jacobi graphs


def _one(m: int) -> FreeWord:
    return FreeWord.identity(m)


def _place_legs(rng: random.Random, n: int, k: int, m: int = 0, beads: int = 0):
    strands: List[List[Tuple[str, int, int]]] = [[] for _ in range(n)]
    for u in range(k):
        s = strands[rng.randrange(n)]
        s.insert(rng.randint(0, len(s)), ("u", u, 0))
    for _ in range(beads if m else 0):
        s = strands[rng.randrange(n)]
        s.insert(rng.randint(0, len(s)), ("b", rng.randint(1, m), rng.choice((1, -1))))
    return tuple(tuple(s) for s in strands)


def tree_graph(strands, m: int, leaves: Sequence[int], extra_chords: Sequence[Tuple[int, int]] = ()) -> JacobiGraph:
    """The tree ``T(a, b | c, d)`` (two vertices) or a tripod, on the given legs.

    With four leaves the vertices have counterclockwise ends ``(a, b, e)``
    and ``(e, c, d)``.
    """
    one = _one(m)
    edges: List[JEdge] = []
    verts = []
    if len(leaves) == 3:
        cyc = []
        for a in leaves:
            cyc.append((len(edges), 1))
            edges.append(JEdge(("u", a), ("v", 0), one))
        verts.append(tuple(cyc))
    elif len(leaves) == 4:
        a, b, c, d = leaves
        edges = [JEdge(("u", a), ("v", 0), one), JEdge(("u", b), ("v", 0), one),
                 JEdge(("v", 0), ("v", 1), one),
                 JEdge(("u", c), ("v", 1), one), JEdge(("u", d), ("v", 1), one)]
        verts = [((0, 1), (1, 1), (2, 0)), ((2, 1), (3, 1), (4, 1))]
    else:
        raise ValueError("trees have three or four leaves")
    for x, y in extra_chords:
        edges.append(JEdge(("u", x), ("u", y), one))
    return JacobiGraph(m, strands, tuple(edges), tuple(verts))


def random_graph(rng: random.Random, n: int = 2, m: int = 0, beads: int = 0) -> JacobiGraph:
    """A tripod or a two-vertex tree, possibly with one extra chord."""
    k = rng.choice((3, 4))
    chord = rng.random() < 0.4 and k == 3
    total = k + (2 if chord else 0)
    strands = _place_legs(rng, n, total, m, beads)
    extra = [(k, k + 1)] if chord else []
    return tree_graph(strands, m, list(range(k)), extra)


def as_pair(g: JacobiGraph, vertex: int = 0) -> List[Tuple[int, JacobiGraph]]:
    """``g + g'`` where ``g'`` reverses the cyclic order at ``vertex``."""
    verts = list(g.vertices)
    a, b, c = verts[vertex]
    verts[vertex] = (a, c, b)
    flipped = JacobiGraph(g.m, g.strands, g.edges, tuple(verts), g.skeleton)
    return [(1, g), (1, flipped)]


def ihx_triple(strands, m: int, legs: Sequence[int]) -> List[Tuple[int, JacobiGraph]]:
    """``T(a,b|c,d) + T(b,c|a,d) + T(c,a|b,d)`` with ``d`` fixed."""
    a, b, c, d = legs
    return [(1, tree_graph(strands, m, (a, b, c, d))),
            (1, tree_graph(strands, m, (b, c, a, d))),
            (1, tree_graph(strands, m, (c, a, b, d)))]


def random_as(rng: random.Random, n: int = 2) -> List[Tuple[int, JacobiGraph]]:
    g = random_graph(rng, n)
    return as_pair(g, rng.randrange(len(g.vertices)))


def random_ihx(rng: random.Random, n: int = 2) -> List[Tuple[int, JacobiGraph]]:
    strands = _place_legs(rng, n, 4)
    return ihx_triple(strands, 0, (0, 1, 2, 3))


# --------------------------------------------------------------------------
# generator expressions

_FROM = {
    None: ("eta", "r+", "r-"),
    ".": ("Delta", "S", "S-", "eps"),
    (".", "."): ("mu", "psi", "psi-"),
}


def _step(rng: random.Random, w: MagWord, max_len: int) -> GenExpr:
    t = w.tree
    opts: List[GenExpr] = [Id.of(w)]
    for name in _FROM.get(t, ()):
        opts.append(Gen.of(name))
    if t is None:
        opts.append(Tensor.of(Gen.of("eta"), Gen.of(rng.choice(("r+", "r-")))))
    if t == ".":
        opts.append(Tensor.of(Gen.of(rng.choice(("eta", "r+"))), Id.of(w)))
    if isinstance(t, tuple):
        a, b = MagWord(t[0]), MagWord(t[1])
        if isinstance(t[1], tuple):
            opts.append(Assoc.of(a, MagWord(t[1][0]), MagWord(t[1][1]), -1))
        if isinstance(t[0], tuple):
            opts.append(Assoc.of(MagWord(t[0][0]), MagWord(t[0][1]), b, 1))
        opts.append(Tensor.of(_step(rng, a, max_len), Id.of(b)))
        opts.append(Tensor.of(Id.of(a), _step(rng, b, max_len)))
    opts = [e for e in opts if e.target.length <= max_len]
    return rng.choice(opts)


def random_magword(rng: random.Random, length: int) -> MagWord:
    if length == 0:
        return EMPTY
    if length == 1:
        return DOT
    k = rng.randint(1, length - 1)
    return random_magword(rng, k) * random_magword(rng, length - k)


def random_expr(rng: random.Random, steps: int = 3, max_len: int = 3,
                source: Optional[MagWord] = None) -> GenExpr:
    """A type-correct composite of ``steps`` random layers."""
    w = source if source is not None else random_magword(rng, rng.randint(0, 2))
    e: GenExpr = _step(rng, w, max_len)
    for _ in range(steps - 1):
        e = Compose.of(_step(rng, e.target, max_len), e)
    return e
