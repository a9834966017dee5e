"""Free groups F_m as reduced words, and homomorphisms between them.

A letter is a pair ``(index, exponent)`` with ``index`` in ``1..rank`` and
``exponent`` in ``{+1, -1}``.  Words are reduced eagerly, so two words are
equal as group elements iff they compare equal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

Letter = Tuple[int, int]


class RankError(ValueError):
    """Raised when words or homomorphisms of incompatible ranks meet."""


def _reduce(letters: Iterable[Letter]) -> Tuple[Letter, ...]:
    out: list[Letter] = []
    for j, e in letters:
        if out and out[-1][0] == j and out[-1][1] == -e:
            out.pop()
        else:
            out.append((j, e))
    return tuple(out)


@dataclass(frozen=True, order=True)
class FreeWord:
    rank: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise RankError(f"negative rank {self.rank}")
        for j, e in self.letters:
            if e not in (1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {e}")
            if not 1 <= j <= self.rank:
                raise RankError(f"letter x{j} outside rank {self.rank}")
        object.__setattr__(self, "letters", _reduce(tuple(self.letters)))

    # constructors -------------------------------------------------------
    @classmethod
    def identity(cls, rank: int) -> "FreeWord":
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, j: int, e: int = 1) -> "FreeWord":
        return cls(rank, ((j, e),))

    @classmethod
    def from_powers(cls, rank: int, powers: Sequence[Tuple[int, int]]) -> "FreeWord":
        """Build from ``(index, power)`` pairs with arbitrary integer powers."""
        letters: list[Letter] = []
        for j, p in powers:
            s = 1 if p > 0 else -1
            letters.extend([(j, s)] * abs(p))
        return cls(rank, tuple(letters))

    # group operations ---------------------------------------------------
    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return fg_mul(self, other)

    def inverse(self) -> "FreeWord":
        return fg_inv(self)

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def with_rank(self, rank: int) -> "FreeWord":
        return FreeWord(rank, self.letters)

    def __str__(self) -> str:
        return format_word(self)


def fg_mul(a: FreeWord, b: FreeWord) -> FreeWord:
    if a.rank != b.rank:
        raise RankError(f"rank mismatch: {a.rank} vs {b.rank}")
    return FreeWord(a.rank, a.letters + b.letters)


def fg_inv(a: FreeWord) -> FreeWord:
    return FreeWord(a.rank, tuple((j, -e) for j, e in reversed(a.letters)))


def fg_pow(a: FreeWord, k: int) -> FreeWord:
    base = a if k >= 0 else fg_inv(a)
    return FreeWord(a.rank, base.letters * abs(k))


_TOKEN = re.compile(r"^x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str, rank: int | None = None) -> FreeWord:
    """Parse ``x1 x2^-1 x1``; ``1`` or the empty string is the identity.

    If ``rank`` is omitted the largest index present is used.
    """
    powers: list[Tuple[int, int]] = []
    for tok in text.split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError(f"bad free-group token {tok!r}")
        j = int(m.group(1))
        p = int(m.group(2)) if m.group(2) is not None else 1
        if j < 1:
            raise ValueError(f"generator index must be positive in {tok!r}")
        powers.append((j, p))
    if rank is None:
        rank = max((j for j, _ in powers), default=0)
    return FreeWord.from_powers(rank, powers)


def format_word(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"x{j}" if e == 1 else f"x{j}^-1" for j, e in w.letters)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism F_source_rank -> F_target_rank given by generator images."""

    source_rank: int
    target_rank: int
    images: Tuple[FreeWord, ...]

    def __post_init__(self) -> None:
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source_rank:
            raise RankError(f"expected {self.source_rank} images, got {len(images)}")
        for w in images:
            if w.rank != self.target_rank:
                raise RankError(f"image {w} has rank {w.rank}, expected {self.target_rank}")

    @classmethod
    def identity(cls, n: int) -> "GroupHom":
        return cls(n, n, tuple(FreeWord.generator(n, j) for j in range(1, n + 1)))

    @classmethod
    def trivial(cls, n: int, m: int) -> "GroupHom":
        return cls(n, m, tuple(FreeWord.identity(m) for _ in range(n)))

    @classmethod
    def from_strings(cls, target_rank: int, images: Sequence[str]) -> "GroupHom":
        return cls(len(images), target_rank, tuple(parse_word(s, target_rank) for s in images))

    def __call__(self, w: FreeWord) -> FreeWord:
        return hom_apply(self, w)

    def __str__(self) -> str:
        body = ", ".join(f"x{i + 1}->{format_word(w)}" for i, w in enumerate(self.images))
        return f"F{self.source_rank}->F{self.target_rank}: {body}"


def hom_apply(h: GroupHom, w: FreeWord) -> FreeWord:
    if w.rank != h.source_rank:
        raise RankError(f"word of rank {w.rank} fed to hom with source rank {h.source_rank}")
    letters: list[Letter] = []
    for j, e in w.letters:
        img = h.images[j - 1]
        letters.extend(img.letters if e == 1 else fg_inv(img).letters)
    return FreeWord(h.target_rank, tuple(letters))


def hom_compose(g: GroupHom, h: GroupHom) -> GroupHom:
    """Return ``g o h`` (apply ``h`` first), so ``(g o h)(w) = g(h(w))``."""
    if h.target_rank != g.source_rank:
        raise RankError(
            f"cannot compose: inner target rank {h.target_rank} != outer source rank {g.source_rank}"
        )
    return GroupHom(h.source_rank, g.target_rank, tuple(hom_apply(g, w) for w in h.images))


def hom_tensor(g: GroupHom, h: GroupHom) -> GroupHom:
    """Free product of homomorphisms: generators of ``h`` are shifted past those of ``g``."""
    m = g.target_rank + h.target_rank
    imgs = [FreeWord(m, w.letters) for w in g.images]
    shift = g.target_rank
    imgs += [FreeWord(m, tuple((j + shift, e) for j, e in w.letters)) for w in h.images]
    return GroupHom(g.source_rank + h.source_rank, m, tuple(imgs))
