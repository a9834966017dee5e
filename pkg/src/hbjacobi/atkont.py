"""Chord diagrams on polarized 1-manifolds and the Kontsevich integral.

A morphism ``w -> w'`` of A^T is a combination of chord diagrams on one
polarized manifold whose top reads ``w`` and whose bottom reads ``w'``.
Letters follow the boundary sign rule: ``+`` on top is where a strand
starts, ``+`` at the bottom is where it ends (both point downwards).

The integral uses the normalization where caps are 1 and cups carry ``nu``.
The cube presentation route closes the top endpoints through handles and
returns a morphism of A^B.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .diagcore import DiagLin, Polarized, RelationWindow, TensorWord, Verdict, eq_mod_relations
from .hphi import HphiStructure, build_hphi

Endpoint = Tuple[str, int]
Comp = Tuple[Endpoint, Endpoint]  # (start, end)


class ShapeError(ValueError):
    """Raised for mismatched boundaries, closed components or bad presentations."""


# --------------------------------------------------------------------------
# words in Mag(+-) and Mon(+-)


def dual_mon(w: str) -> str:
    return "".join("-" if c == "+" else "+" for c in reversed(w))


def _flip(c: str) -> str:
    return "-" if c == "+" else "+"


def parse_signword(text: str):
    """Parse a parenthesized sign word.

    Returns ``None`` (empty), a letter, or a pair.  Empty groups vanish and a
    group holding one item is that item, so ``"(+())"`` reads as ``+``.
    """
    s = "".join(text.split())
    pos = 0

    def group(closing: bool):
        nonlocal pos
        items = []
        while pos < len(s):
            ch = s[pos]
            if ch in "+-":
                items.append(ch)
                pos += 1
            elif ch == "(":
                pos += 1
                it = group(True)
                if it is not None:
                    items.append(it)
            elif ch == ")":
                if not closing:
                    raise ShapeError(f"unbalanced ')' at column {pos + 1} in {text!r}")
                pos += 1
                break
            else:
                raise ShapeError(f"bad character {ch!r} at column {pos + 1} in {text!r}")
        else:
            if closing:
                raise ShapeError(f"missing ')' in {text!r}")
        if len(items) > 2:
            raise ShapeError(f"group with {len(items)} items in {text!r}; words must be binary")
        if not items:
            return None
        if len(items) == 1:
            return items[0]
        return (items[0], items[1])

    return group(False)


def sign_text(tree) -> str:
    if tree is None:
        return ""
    if isinstance(tree, str):
        return tree
    return "(" + sign_text(tree[0]) + sign_text(tree[1]) + ")"


def mon(tree) -> str:
    if tree is None:
        return ""
    if isinstance(tree, str):
        return tree
    return mon(tree[0]) + mon(tree[1])


def dual_tree(tree):
    if tree is None:
        return None
    if isinstance(tree, str):
        return _flip(tree)
    return (dual_tree(tree[1]), dual_tree(tree[0]))


def _as_tree(w):
    return parse_signword(w) if isinstance(w, str) else w


# --------------------------------------------------------------------------
# morphisms of A^T


def _ep_key(ep: Endpoint) -> Tuple[int, int]:
    return (0 if ep[0] == "s" else 1, ep[1])


def _comp_key(c: Comp) -> Tuple[int, int]:
    return min(_ep_key(c[0]), _ep_key(c[1]))


def _check_comps(source: str, target: str, comps: Sequence[Comp]) -> None:
    seen = set()
    for start, end in comps:
        for ep, role in ((start, "start"), (end, "end")):
            side, pos = ep
            word = source if side == "s" else target
            if not 1 <= pos <= len(word):
                raise ShapeError(f"endpoint {ep} outside the boundary")
            letter = word[pos - 1]
            # + on top starts, + at the bottom ends
            want = "+" if (side == "s") == (role == "start") else "-"
            if letter != want:
                raise ShapeError(f"endpoint {ep} has letter {letter} but is a {role}")
            if ep in seen:
                raise ShapeError(f"endpoint {ep} used twice")
            seen.add(ep)
    if len(seen) != len(source) + len(target):
        raise ShapeError("some boundary points are not attached")


class MorAT:
    """A combination of chord diagrams on a fixed polarized skeleton."""

    __slots__ = ("source", "target", "comps", "lin")

    def __init__(self, source: str, target: str, comps: Sequence[Comp],
                 terms: Mapping[Tuple[Tuple[tuple, ...], ...], object], N: int):
        comps = list(comps)
        _check_comps(source, target, comps)
        order = sorted(range(len(comps)), key=lambda i: _comp_key(comps[i]))
        self.source = source
        self.target = target
        self.comps: Tuple[Comp, ...] = tuple(comps[i] for i in order)
        skel = tuple(Polarized(c[0], c[1]) for c in self.comps)
        acc: Dict[TensorWord, object] = {}
        for strands, c in terms.items():
            if len(strands) != len(comps):
                raise ShapeError("term does not match the skeleton")
            t = TensorWord(0, tuple(tuple(strands[i]) for i in order), skel)
            acc[t] = acc.get(t, 0) + c
        self.lin = DiagLin(0, len(comps), N, acc, skel)

    @classmethod
    def _from_lin(cls, source: str, target: str, comps: Tuple[Comp, ...], lin: DiagLin) -> "MorAT":
        out = cls.__new__(cls)
        out.source, out.target, out.comps, out.lin = source, target, comps, lin
        return out

    @property
    def N(self) -> int:
        return self.lin.N

    def items(self) -> Iterable[Tuple[Tuple[Tuple[tuple, ...], ...], Fraction]]:
        for t, c in self.lin.terms.items():
            yield t.strands, c

    def _same(self, other: "MorAT") -> None:
        if (self.source, self.target, self.comps) != (other.source, other.target, other.comps):
            raise ShapeError("morphisms live on different skeleta")

    def __add__(self, other: "MorAT") -> "MorAT":
        self._same(other)
        return MorAT._from_lin(self.source, self.target, self.comps, self.lin + other.lin)

    def __sub__(self, other: "MorAT") -> "MorAT":
        self._same(other)
        return MorAT._from_lin(self.source, self.target, self.comps, self.lin - other.lin)

    def scale(self, c) -> "MorAT":
        return MorAT._from_lin(self.source, self.target, self.comps, self.lin.scale(c))

    def degree_part(self, k: int) -> "MorAT":
        return MorAT._from_lin(self.source, self.target, self.comps, self.lin.degree_part(k))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MorAT):
            return NotImplemented
        return (self.source, self.target, self.comps) == (other.source, other.target, other.comps) \
            and self.lin == other.lin

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.comps, self.lin))

    def __repr__(self) -> str:
        return f"MorAT({self.source!r} -> {self.target!r}, {self.lin!r})"


def eq_at(a: MorAT, b: MorAT, win: Optional[RelationWindow] = None) -> Verdict:
    """Equality modulo 4T; morphisms on different skeleta are never equal."""
    if (a.source, a.target, a.comps) != (b.source, b.target, b.comps):
        return Verdict(False, 0, 0, True)
    return eq_mod_relations(a.lin, b.lin, win)


def at_identity(word: str, N: int = 2) -> MorAT:
    comps = []
    for k, c in enumerate(word, 1):
        comps.append((("s", k), ("t", k)) if c == "+" else (("t", k), ("s", k)))
    return MorAT(word, word, comps, {tuple(() for _ in word): 1}, N)


def _max_chord(strands) -> int:
    return max((x[1] for s in strands for x in s if x[0] == "e"), default=0)


def _shift(strand, sh: int) -> tuple:
    return tuple(("e", x[1] + sh, x[2]) for x in strand)


def at_tensor(a: MorAT, b: MorAT) -> MorAT:
    ls, lt = len(a.source), len(a.target)

    def move(ep: Endpoint) -> Endpoint:
        return (ep[0], ep[1] + (ls if ep[0] == "s" else lt))

    comps = list(a.comps) + [(move(s), move(e)) for s, e in b.comps]
    N = min(a.N, b.N)
    acc: Dict[tuple, Fraction] = {}
    for sa, ca in a.items():
        sh = _max_chord(sa)
        da = sum(1 for s in sa for x in s) // 2
        for sb, cb in b.items():
            if da + sum(1 for s in sb for x in s) // 2 > N:
                continue
            key = tuple(sa) + tuple(_shift(s, sh) for s in sb)
            acc[key] = acc.get(key, 0) + ca * cb
    return MorAT(a.source + b.source, a.target + b.target, comps, acc, N)


def at_tensor_all(*ds: MorAT) -> MorAT:
    out = ds[0]
    for d in ds[1:]:
        out = at_tensor(out, d)
    return out


def _glue_plan(lower: MorAT, upper: MorAT) -> Tuple[List[Comp], List[List[Tuple[int, int]]]]:
    """Components of ``lower o upper`` as chains of (piece, index) in reading order.

    Piece 0 is ``lower``, piece 1 is ``upper``.  Reading runs from the end of
    a component to its start, crossing the middle boundary as needed.
    """
    by_end: Dict[Tuple[int, Endpoint], int] = {}
    for side, d in ((0, lower), (1, upper)):
        for i, (_, e) in enumerate(d.comps):
            by_end[(side, e)] = i

    def outer(side: int, ep: Endpoint) -> bool:
        return (side == 0 and ep[0] == "t") or (side == 1 and ep[0] == "s")

    def across(side: int, ep: Endpoint) -> Tuple[int, Endpoint]:
        # lower's top k is upper's bottom k
        return (1, ("t", ep[1])) if side == 0 else (0, ("s", ep[1]))

    comps: List[Comp] = []
    chains: List[List[Tuple[int, int]]] = []
    used = set()
    for side, d in ((0, lower), (1, upper)):
        for i, (_, e) in enumerate(d.comps):
            if not outer(side, e):
                continue
            chain = []
            cur_side, cur = side, i
            while True:
                used.add((cur_side, cur))
                chain.append((cur_side, cur))
                st = (lower, upper)[cur_side].comps[cur][0]
                if outer(cur_side, st):
                    break
                cur_side, ep = across(cur_side, st)
                cur = by_end[(cur_side, ep)]
            comps.append((st, e))
            chains.append(chain)
    total = len(lower.comps) + len(upper.comps)
    if len(used) != total:
        raise ShapeError("composition closes a component; only interval skeleta are supported")
    return comps, chains


def at_compose(lower: MorAT, upper: MorAT) -> MorAT:
    """``lower o upper``: ``upper`` sits on top and is applied first."""
    if upper.target != lower.source:
        raise ShapeError(f"cannot stack: {upper.target!r} over {lower.source!r}")
    comps, chains = _glue_plan(lower, upper)
    N = min(lower.N, upper.N)
    acc: Dict[tuple, Fraction] = {}
    for sl, cl in lower.items():
        sh = _max_chord(sl)
        dl = sum(len(s) for s in sl) // 2
        for su, cu in upper.items():
            if dl + sum(len(s) for s in su) // 2 > N:
                continue
            src = (sl, tuple(_shift(s, sh) for s in su))
            key = tuple(tuple(x for side, i in chain for x in src[side][i]) for chain in chains)
            acc[key] = acc.get(key, 0) + cl * cu
    return MorAT(upper.source, lower.target, comps, acc, N)


def at_compose_all(*ds: MorAT) -> MorAT:
    """``at_compose_all(a, b, c) = a o b o c``."""
    out = ds[-1]
    for d in reversed(ds[:-1]):
        out = at_compose(d, out)
    return out


def reverse(d: MorAT, which: Iterable[int]) -> MorAT:
    """Orientation reversal ``S`` on the listed components (indices into ``d.comps``)."""
    which = set(which)
    src, tgt = list(d.source), list(d.target)
    comps = []
    for i, (s, e) in enumerate(d.comps):
        if i in which:
            for ep in (s, e):
                word = src if ep[0] == "s" else tgt
                word[ep[1] - 1] = _flip(word[ep[1] - 1])
            comps.append((e, s))
        else:
            comps.append((s, e))
    acc: Dict[tuple, Fraction] = {}
    for strands, c in d.items():
        sign = 1
        new = []
        for i, s in enumerate(strands):
            if i in which:
                sign *= (-1) ** len(s)
                new.append(tuple(reversed(s)))
            else:
                new.append(s)
        key = tuple(new)
        acc[key] = acc.get(key, 0) + sign * c
    return MorAT("".join(src), "".join(tgt), comps, acc, d.N)


@dataclass(frozen=True)
class CablingSpec:
    """Words assigned to the components of a morphism, indexed as in ``comps``."""

    words: Tuple[str, ...]

    @classmethod
    def of(cls, words: Sequence[Union[str, object]]) -> "CablingSpec":
        return cls(tuple(w if isinstance(w, str) and "(" not in w else mon(_as_tree(w)) for w in words))


def cable(d: MorAT, f: Union[CablingSpec, Sequence[str]]) -> MorAT:
    """The f-cabling: delete, double and reverse components as ``f`` prescribes."""
    if not isinstance(f, CablingSpec):
        f = CablingSpec.of(f)
    words = f.words
    if len(words) != len(d.comps):
        raise ShapeError("cabling must name a word for every component")
    owner: Dict[Endpoint, int] = {}
    for i, (s, e) in enumerate(d.comps):
        owner[s] = i
        owner[e] = i

    def layout(side: str, word: str):
        blocks, pos = {}, 0
        out = []
        for k, letter in enumerate(word, 1):
            u = words[owner[(side, k)]]
            b = u if letter == "+" else dual_mon(u)
            blocks[k] = (pos, letter, len(u))
            pos += len(u)
            out.append(b)
        return blocks, "".join(out)

    sblocks, new_src = layout("s", d.source)
    tblocks, new_tgt = layout("t", d.target)

    def slot(ep: Endpoint, j: int) -> Endpoint:
        off, letter, k = (sblocks if ep[0] == "s" else tblocks)[ep[1]]
        return (ep[0], off + 1 + (j if letter == "+" else k - 1 - j))

    comps: List[Comp] = []
    copies: List[Tuple[int, int, bool]] = []  # (old comp, copy, reversed)
    for i, (s, e) in enumerate(d.comps):
        for j, letter in enumerate(words[i]):
            a, b = slot(s, j), slot(e, j)
            rev = letter == "-"
            comps.append((b, a) if rev else (a, b))
            copies.append((i, j, rev))
    index = {(i, j): n for n, (i, j, _) in enumerate(copies)}
    acc: Dict[tuple, Fraction] = {}
    for strands, c in d.items():
        ends = [(i, k) for i, s in enumerate(strands) for k in range(len(s))]
        ranges = [range(len(words[i])) for i, _ in ends]
        for choice in itertools.product(*ranges):
            where = dict(zip(ends, choice))
            new: List[List[tuple]] = [[] for _ in copies]
            for i, s in enumerate(strands):
                for k, x in enumerate(s):
                    new[index[(i, where[(i, k)])]].append(x)
            sign = 1
            for n, (_, _, rev) in enumerate(copies):
                if rev:
                    sign *= (-1) ** len(new[n])
                    new[n].reverse()
            key = tuple(tuple(s) for s in new)
            acc[key] = acc.get(key, 0) + sign * c
    return MorAT(new_src, new_tgt, comps, acc, d.N)


def from_xn(x: DiagLin, word: Optional[str] = None) -> MorAT:
    """A beadless element ``0 -> n`` of A^B placed on downward strands.

    Strand ``i`` keeps its reading order, so convolution becomes stacking
    with the left factor at the bottom.  Letters ``-`` of ``word`` reverse
    the corresponding strand.
    """
    if x.m != 0:
        raise ShapeError("from_xn expects a morphism with source 0")
    base = "+" * x.n
    acc = {t.strands: c for t, c in x.terms.items()}
    if any(sym[0] != "e" for t in x.terms for s in t.strands for sym in s):
        raise ShapeError("from_xn expects a beadless element")
    d = MorAT(base, base, [(("s", k), ("t", k)) for k in range(1, x.n + 1)], acc, x.N)
    if word is not None:
        if len(word) != x.n:
            raise ShapeError("word length differs from the number of strands")
        d = reverse(d, [i for i, c in enumerate(word) if c == "-"])
    return d


def r_rotate(d: MorAT) -> MorAT:
    """Rotation by pi of a morphism ``w -> w`` on parallel strands."""
    n = len(d.source)
    if d.source != d.target or any(s[1] != e[1] for s, e in d.comps):
        raise ShapeError("rotation is defined here on parallel strands only")
    word = dual_mon(d.source)
    comps = []
    for s, e in d.comps:
        flipv = {"s": "t", "t": "s"}
        comps.append(((flipv[s[0]], n + 1 - s[1]), (flipv[e[0]], n + 1 - e[1])))
    return MorAT(word, word, comps, dict(d.items()), d.N)


# --------------------------------------------------------------------------
# sliced tangles


@dataclass(frozen=True)
class Piece:
    """An elementary q-tangle.

    ``kind`` is one of ``X`` (crossing, ``sign`` = +1/-1, ``letters`` the top
    letters), ``cap``, ``cup`` (``letters`` the two feet) or ``assoc``
    (``words`` = (u, v, w), ``sign`` = +1 for ``(u(vw)) -> ((uv)w)``).
    """

    kind: str
    sign: int = 1
    letters: str = "++"
    words: Tuple[str, ...] = ()

    @property
    def name(self) -> str:
        if self.kind == "X":
            return f"X{'+' if self.sign > 0 else '-'}[{self.letters}]"
        if self.kind in ("cap", "cup"):
            return f"{self.kind.capitalize()}({self.letters})"
        return f"Assoc({','.join(self.words)}){'+' if self.sign > 0 else '-'}"

    def source_text(self) -> str:
        if self.kind == "X":
            return f"({self.letters})"
        if self.kind == "cap":
            return ""
        if self.kind == "cup":
            return f"({self.letters})"
        u, v, w = self.words
        return f"({u}({v}{w}))" if self.sign > 0 else f"(({u}{v}){w})"

    def target_text(self) -> str:
        if self.kind == "X":
            return f"({self.letters[::-1]})"
        if self.kind == "cap":
            return f"({self.letters})"
        if self.kind == "cup":
            return ""
        u, v, w = self.words
        return f"(({u}{v}){w})" if self.sign > 0 else f"({u}({v}{w}))"


def _split_args(body: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return out


def parse_piece(text: str) -> Piece:
    t = text.strip()
    if t.startswith("X") and len(t) >= 2 and t[1] in "+-":
        sign = 1 if t[1] == "+" else -1
        rest = t[2:]
        letters = "++"
        if rest:
            if not (rest.startswith("[") and rest.endswith("]")):
                raise ShapeError(f"bad crossing {text!r}")
            letters = rest[1:-1]
        if len(letters) != 2 or any(c not in "+-" for c in letters):
            raise ShapeError(f"bad crossing letters in {text!r}")
        return Piece("X", sign, letters)
    for kind in ("Cap", "Cup"):
        if t.startswith(kind + "(") and t.endswith(")"):
            letters = t[len(kind) + 1:-1]
            if letters not in ("+-", "-+"):
                raise ShapeError(f"bad {kind} orientation in {text!r}")
            return Piece(kind.lower(), 1, letters)
    if t.startswith("Assoc(") and t[-1] in "+-" and t[-2] == ")":
        args = _split_args(t[len("Assoc("):-2])
        if len(args) != 3:
            raise ShapeError(f"Assoc needs three words in {text!r}")
        trees = [parse_signword(a) for a in args]
        if any(tr is None for tr in trees):
            raise ShapeError(f"Assoc words must be non-empty in {text!r}")
        return Piece("assoc", 1 if t[-1] == "+" else -1, words=tuple(sign_text(tr) for tr in trees))
    raise ShapeError(f"unsupported elementary piece {text!r}")


@dataclass(frozen=True)
class Slice:
    """``left`` and ``right`` are the text around the piece in the boundary words."""

    left: str
    piece: Piece
    right: str

    @property
    def source(self):
        return parse_signword(self.left + self.piece.source_text() + self.right)

    @property
    def target(self):
        return parse_signword(self.left + self.piece.target_text() + self.right)

    def left_letters(self) -> str:
        return "".join(c for c in self.left if c in "+-")

    def right_letters(self) -> str:
        return "".join(c for c in self.right if c in "+-")

    def to_line(self) -> str:
        return f"left={self.left} piece={self.piece.name} right={self.right}"


@dataclass(frozen=True)
class SlicedTangle:
    source: object
    slices: Tuple[Slice, ...]

    def __post_init__(self) -> None:
        cur = self.source
        for k, s in enumerate(self.slices, 1):
            if s.source != cur:
                raise ShapeError(f"slice {k} starts at {sign_text(s.source)!r}, expected {sign_text(cur)!r}")
            cur = s.target

    @property
    def target(self):
        cur = self.source
        for s in self.slices:
            cur = s.target
        return cur


def parse_slice_line(line: str) -> Slice:
    fields: Dict[str, str] = {}
    for tok in line.split():
        if "=" not in tok:
            raise ShapeError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    if "piece" not in fields:
        raise ShapeError(f"slice without piece: {line!r}")
    unknown = set(fields) - {"left", "piece", "right"}
    if unknown:
        raise ShapeError(f"unknown slice fields {sorted(unknown)}")
    return Slice(fields.get("left", ""), parse_piece(fields["piece"]), fields.get("right", ""))


# --------------------------------------------------------------------------
# the integral on elementary pieces


@lru_cache(maxsize=8)
def _default_structure(N: int) -> HphiStructure:
    return build_hphi(None, N)


def _structure(N: int, h: Optional[HphiStructure]) -> HphiStructure:
    if h is None:
        return _default_structure(N)
    if h.N < N:
        raise ValueError(f"structure known to degree {h.N}, {N} requested")
    return h


def crossing(sign: int, letters: str = "++", N: int = 2) -> MorAT:
    """``exp(sign/2 chord)`` on the crossing, then reversal of ``-`` strands."""
    terms = {}
    for k in range(N + 1):
        a = tuple(("e", p, 0) for p in range(1, k + 1))
        b = tuple(("e", p, 1) for p in range(1, k + 1))
        terms[(a, b)] = Fraction(sign, 2) ** k / factorial(k)
    d = MorAT("++", "++", [(("s", 1), ("t", 2)), (("s", 2), ("t", 1))], terms, N)
    # components are ordered by their top endpoint
    return reverse(d, [i for i, c in enumerate(letters) if c == "-"])


def cap(letters: str, N: int = 2) -> MorAT:
    comps = [(("t", 2), ("t", 1))] if letters == "+-" else [(("t", 1), ("t", 2))]
    return MorAT("", letters, comps, {((),): 1}, N)


def cup(letters: str, N: int = 2, h: Optional[HphiStructure] = None) -> MorAT:
    nu = _structure(N, h).nu.truncate(N)
    d = MorAT("+-", "", [(("s", 1), ("s", 2))], {t.strands: c for t, c in nu.terms.items()}, N)
    return d if letters == "+-" else reverse(d, [0])


def associator_value(words: Sequence[str], sign: int, N: int = 2, h: Optional[HphiStructure] = None) -> MorAT:
    """``C_{u,v,w}(Phi^{sign})`` with ``Phi = phi(t12, t23)^-1``."""
    st = _structure(N, h)
    x = st.phi_inv if sign > 0 else st.phi
    phi = from_xn(x.truncate(N))
    return cable(phi, [mon(parse_signword(w)) for w in words])


def piece_value(p: Piece, N: int = 2, h: Optional[HphiStructure] = None) -> MorAT:
    if p.kind == "X":
        return crossing(p.sign, p.letters, N)
    if p.kind == "cap":
        return cap(p.letters, N)
    if p.kind == "cup":
        return cup(p.letters, N, h)
    if p.kind == "assoc":
        return associator_value(p.words, p.sign, N, h)
    raise ShapeError(f"unsupported elementary piece {p.kind!r}")


def z_slice(s: Slice, N: int = 2, h: Optional[HphiStructure] = None) -> MorAT:
    return at_tensor_all(at_identity(s.left_letters(), N), piece_value(s.piece, N, h),
                         at_identity(s.right_letters(), N))


def z_tangle(t: SlicedTangle, N: int = 2, h: Optional[HphiStructure] = None) -> MorAT:
    out = at_identity(mon(t.source), N)
    for s in t.slices:
        out = at_compose(z_slice(s, N, h), out)
    return out


# --------------------------------------------------------------------------
# cabling anomalies


def cabled_cap(w) -> SlicedTangle:
    """A slicing of ``C_w`` of the cap ``(+-)``, ending at ``(w w*)``."""
    tree = _as_tree(w)
    if tree is None:
        return SlicedTangle(None, ())
    return SlicedTangle(None, tuple(_cabled_cap_slices(tree)))


def _cabled_cap_slices(tree) -> List[Slice]:
    if isinstance(tree, str):
        return [Slice("", Piece("cap", 1, tree + _flip(tree)), "")]
    w1, w2 = tree
    t1, t2 = sign_text(w1), sign_text(w2)
    d1, d2 = sign_text(dual_tree(w1)), sign_text(dual_tree(w2))
    out = _cabled_cap_slices(w1)
    for s in _cabled_cap_slices(w2):
        out.append(Slice("(" + t1 + "(" + s.left, s.piece, s.right + d1 + "))"))
    out.append(Slice("(" + t1, Piece("assoc", -1, words=(t2, d2, d1)), ")"))
    out.append(Slice("", Piece("assoc", 1, words=(t1, t2, "(" + d2 + d1 + ")")), ""))
    return out


def anomaly(w, N: int = 2, h: Optional[HphiStructure] = None) -> MorAT:
    """``a_w``: the integral of the cabled cap with everything moved to the w side."""
    tree = _as_tree(w)
    word = mon(tree)
    k = len(word)
    z = z_tangle(cabled_cap(tree), N, h)
    # component j of the nested caps has feet j and 2k+1-j
    feet = {}
    for i, (s, e) in enumerate(z.comps):
        lo = min(s[1], e[1])
        feet[lo] = i
    comps = []
    for j, c in enumerate(word, 1):
        comps.append((("s", j), ("t", j)) if c == "+" else (("t", j), ("s", j)))
    order = [feet[j] for j in range(1, k + 1)]
    terms = {tuple(strands[i] for i in order): c for strands, c in z.items()}
    return MorAT(word, word, comps, terms, N)


def anomaly_recursion_sides(w, f: Sequence[str], N: int = 2, h: Optional[HphiStructure] = None
                            ) -> Tuple[MorAT, MorAT]:
    """Both sides of the recursion for ``a_{C_f(w)}``.

    The right side is ``(r^[w_1](a_{f(1)}) (x) ...) o C_f(a_w)`` where
    ``r^[-]`` is the rotation by pi.
    """
    tree = _as_tree(w)
    word = mon(tree)
    ftrees = [_as_tree(x) for x in f]
    if len(ftrees) != len(word):
        raise ShapeError("f must give one word per letter")
    leaves = iter(ftrees)

    def substitute(t):
        if isinstance(t, str):
            u = next(leaves)
            return u if t == "+" else dual_tree(u)
        return (substitute(t[0]), substitute(t[1]))

    cf_w = substitute(tree)
    lhs = anomaly(cf_w, N, h)
    aw = anomaly(tree, N, h)
    cabled = cable(aw, [mon(u) for u in ftrees])
    parts = []
    for letter, u in zip(word, ftrees):
        a = anomaly(u, N, h)
        parts.append(a if letter == "+" else r_rotate(a))
    rhs = at_compose(at_tensor_all(*parts), cabled) if parts else cabled
    return lhs, rhs


# --------------------------------------------------------------------------
# cube presentations


def dbl(v, v_words: Sequence[object]):
    """``dbl^v(v_1, ..., v_m)`` as a sign tree; ``v`` is a MagWord tree."""
    trees = [_as_tree(x) for x in v_words]
    it = iter(trees)

    def build(t) -> str:
        if t is None:
            return ""
        if t == ".":
            u = next(it)
            return "(" + sign_text(u) + sign_text(dual_tree(u)) + ")"
        return "(" + build(t[0]) + build(t[1]) + ")"

    text = build(v)
    rest = list(it)
    if rest:
        raise ShapeError("more handle words than letters in v")
    return parse_signword(text)


def _bottom_shape(tree) -> bool:
    if tree is None:
        return True
    if tree == ("+", "-"):
        return True
    if isinstance(tree, tuple):
        return _bottom_shape(tree[0]) and _bottom_shape(tree[1]) and tree[0] is not None
    return False


def close_handles(d: MorAT, v_words: Sequence[object]) -> DiagLin:
    """Turn a square presentation ``dbl(v_1..v_m) -> (+-)^n`` into A^B(m, n).

    Top points ``j`` and ``2k+1-j`` of block ``i`` are joined through handle
    ``i``.  Passing from the ``v_i`` half to the ``v_i*`` half in reading
    order contributes ``x_i``; the other way ``x_i^-1``.
    """
    words = [mon(_as_tree(x)) for x in v_words]
    m = len(words)
    if d.source != "".join(u + dual_mon(u) for u in words):
        raise ShapeError("source is not dbl(v_1, ..., v_m)")
    t = d.target
    if len(t) % 2 or any(t[i:i + 2] != "+-" for i in range(0, len(t), 2)):
        raise ShapeError("target is not (+-)^n")
    n = len(t) // 2
    partner: Dict[int, Tuple[int, int, int]] = {}
    off = 0
    for i, u in enumerate(words, 1):
        k = len(u)
        for j in range(1, k + 1):
            a, b = off + j, off + 2 * k + 1 - j
            partner[a] = (b, i, 1)
            partner[b] = (a, i, -1)
        off += 2 * k
    by_end = {e: idx for idx, (_, e) in enumerate(d.comps)}
    chains: List[List[Union[int, tuple]]] = []
    used = set()
    for j in range(1, n + 1):
        cur = by_end.get(("t", 2 * j - 1))
        chain: List[Union[int, tuple]] = []
        while True:
            if cur is None or cur in used:
                raise ShapeError("presentation does not close up into bottom arcs")
            used.add(cur)
            chain.append(cur)
            st = d.comps[cur][0]
            if st[0] == "t":
                if st[1] != 2 * j:
                    raise ShapeError("an arc joins two different bottom pairs")
                break
            q, i, e = partner[st[1]]
            chain.append(("b", i, e))
            cur = by_end.get(("s", q))
        chains.append(chain)
    if len(used) != len(d.comps):
        raise ShapeError("presentation has a closed component")
    acc: Dict[TensorWord, Fraction] = {}
    for strands, c in d.items():
        out = []
        for chain in chains:
            seq: List[tuple] = []
            for x in chain:
                if isinstance(x, tuple):
                    seq.append(x)
                else:
                    seq.extend(strands[x])
            out.append(tuple(seq))
        w = TensorWord(m, tuple(out))
        acc[w] = acc.get(w, 0) + c
    return DiagLin(m, n, d.N, acc)


def z_cube(u: SlicedTangle, v, v_words: Sequence[object], N: int = 2,
           h: Optional[HphiStructure] = None) -> DiagLin:
    """The extended integral from a cube presentation ``u`` with handle words."""
    vtree = getattr(v, "tree", v)
    src = dbl(vtree, v_words)
    if u.source != src:
        raise ShapeError(f"presentation starts at {sign_text(u.source)!r}, expected {sign_text(src)!r}")
    if not _bottom_shape(u.target):
        raise ShapeError(f"presentation ends at {sign_text(u.target)!r}, expected a w(+-) shape")
    zu = z_tangle(u, N, h)
    parts = []
    for x in v_words:
        tr = _as_tree(x)
        parts.append(anomaly(tr, N, h))
        parts.append(at_identity(dual_mon(mon(tr)), N))
    if parts:
        zu = at_compose(zu, at_tensor_all(*parts))
    return close_handles(zu, v_words)


# --------------------------------------------------------------------------
# presentation files


@dataclass(frozen=True)
class CubePresentation:
    name: str
    v: object  # MagWord tree
    words: Tuple[str, ...]
    tangle: SlicedTangle

    def evaluate(self, N: int = 2, h: Optional[HphiStructure] = None) -> DiagLin:
        return z_cube(self.tangle, self.v, self.words, N, h)


def _parse_v(text: str):
    from .zb import parse_magword

    return parse_magword(text).tree


def _count_dots(t) -> int:
    if t is None:
        return 0
    if t == ".":
        return 1
    return _count_dots(t[0]) + _count_dots(t[1])


def parse_cube(text: str, name: str = "") -> CubePresentation:
    """Parse a presentation file.

    The header line ``v=<magma word> words=<w1>,<w2>,...`` names the handle
    words; every other non-comment line is a slice.
    """
    v = None
    words: Optional[List[str]] = None
    slices: List[Slice] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("v="):
                fields = dict(tok.split("=", 1) for tok in line.split())
                v = _parse_v(fields.get("v", ""))
                m = _count_dots(v)
                ws = fields.get("words", "").split(",")
                if m == 0:
                    if any(ws):
                        raise ShapeError("words given for an empty handle word")
                    ws = []
                elif len(ws) != m:
                    raise ShapeError(f"{len(ws)} handle words for {m} handles")
                words = [sign_text(parse_signword(x)) for x in ws]
            else:
                slices.append(parse_slice_line(line))
        except (ShapeError, ValueError) as exc:
            raise ShapeError(f"line {lineno}: {exc}") from None
    if words is None:
        raise ShapeError("missing header line 'v=... words=...'")
    src = dbl(v, words)
    return CubePresentation(name, v, tuple(words), SlicedTangle(src, tuple(slices)))


def load_cube(path: Union[str, Path]) -> CubePresentation:
    p = Path(path)
    return parse_cube(p.read_text(), p.stem)


DATA_DIR = Path(__file__).with_name("data")

SHIPPED = ("id1", "psi", "psi-", "mu", "Delta", "S", "S-", "r+", "r-", "eta", "eps", "assoc", "assoc-")


def shipped(name: str) -> CubePresentation:
    if name not in SHIPPED:
        raise KeyError(f"no shipped presentation for {name!r}")
    return load_cube(DATA_DIR / f"{name}.slices")


def to_xn(d: MorAT) -> DiagLin:
    """Inverse of :func:`from_xn` on parallel downward strands."""
    n = len(d.source)
    if d.source != "+" * n or d.target != d.source or any(s != ("s", e[1]) for s, e in d.comps):
        raise ShapeError("to_xn expects parallel downward strands")
    return DiagLin(0, n, d.N, {TensorWord(0, strands): c for strands, c in d.items()})
