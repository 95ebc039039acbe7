"""Tensor words over a finite list of invertible generators.

A word is a binary tree whose leaves are the unit S, a generator X_i, or a
formal inverse X_i^-1, with two extra node kinds: dual(w) and (u * v).  Duals
are kept as nodes; nothing is flattened or simplified here.  The letter list
of a word is its left-to-right leaf sequence with a sign attached to each
occurrence, where dual() flips every sign underneath it (but keeps the order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class Unit:
    def __repr__(self) -> str:
        return "S"


@dataclass(frozen=True)
class Gen:
    index: int  # 1-based

    def __repr__(self) -> str:
        return f"X{self.index}"


@dataclass(frozen=True)
class DualGen:
    index: int

    def __repr__(self) -> str:
        return f"X{self.index}^-1"


@dataclass(frozen=True)
class Dual:
    inner: "TensorWord"

    def __repr__(self) -> str:
        return f"dual({self.inner!r})"


@dataclass(frozen=True)
class Tensor:
    left: "TensorWord"
    right: "TensorWord"

    def __repr__(self) -> str:
        return f"({self.left!r} * {self.right!r})"


TensorWord = Union[Unit, Gen, DualGen, Dual, Tensor]

UNIT = Unit()


@dataclass(frozen=True)
class Signature:
    n: int
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("need at least one generator")
        names = self.names or tuple(f"X{i}" for i in range(1, self.n + 1))
        if len(names) != self.n or len(set(names)) != self.n:
            raise ValueError("names must be distinct, one per generator")
        object.__setattr__(self, "names", names)


@dataclass(frozen=True)
class SignedLetter:
    generator: int  # 1-based index
    sign: int  # +1 or -1
    ordinal: int  # position in left-to-right reading


def _walk(w: TensorWord, flip: bool) -> Iterator[tuple[int, int]]:
    if isinstance(w, Unit):
        return
    elif isinstance(w, Gen):
        yield (w.index, -1 if flip else 1)
    elif isinstance(w, DualGen):
        yield (w.index, 1 if flip else -1)
    elif isinstance(w, Dual):
        yield from _walk(w.inner, not flip)
    elif isinstance(w, Tensor):
        yield from _walk(w.left, flip)
        yield from _walk(w.right, flip)
    else:
        raise TypeError(f"not a tensor word: {w!r}")


def letters(w: TensorWord) -> list[SignedLetter]:
    """Left-to-right signed letter list of w."""
    return [SignedLetter(g, s, k) for k, (g, s) in enumerate(_walk(w, False))]


def num_letters(w: TensorWord) -> int:
    return sum(1 for _ in _walk(w, False))


def multidegree(w: TensorWord, n: int) -> tuple[int, ...]:
    """Signed letter count per generator, as a length-n vector."""
    a = [0] * n
    for g, s in _walk(w, False):
        a[g - 1] += s
    return tuple(a)


def _right_nested(leaves: list[TensorWord]) -> TensorWord:
    w = leaves[-1]
    for leaf in reversed(leaves[:-1]):
        w = Tensor(leaf, w)
    return w


def power_word(a: tuple[int, ...]) -> TensorWord:
    """The nested normal form X^a: generator blocks in index order, each
    block right-nested, blocks combined right-nested.  Negative entries use
    formal inverses; zero entries are skipped; a = 0 gives the unit."""
    blocks = []
    for i, ai in enumerate(a, start=1):
        if ai > 0:
            blocks.append(_right_nested([Gen(i)] * ai))
        elif ai < 0:
            blocks.append(_right_nested([DualGen(i)] * (-ai)))
    if not blocks:
        return UNIT
    return _right_nested(blocks)


def to_text(w: TensorWord) -> str:
    """Render in the surface grammar: S, X<k>, X<k>^-1, dual(w), (u * v)."""
    if isinstance(w, Unit):
        return "S"
    if isinstance(w, Gen):
        return f"X{w.index}"
    if isinstance(w, DualGen):
        return f"X{w.index}^-1"
    if isinstance(w, Dual):
        return f"dual({to_text(w.inner)})"
    if isinstance(w, Tensor):
        return f"({to_text(w.left)} * {to_text(w.right)})"
    raise TypeError(f"not a tensor word: {w!r}")


def is_inverse_restricted(w: TensorWord) -> bool:
    """True when dual() never appears (formal inverses only via X_i^-1)."""
    if isinstance(w, Dual):
        return False
    if isinstance(w, Tensor):
        return is_inverse_restricted(w.left) and is_inverse_restricted(w.right)
    return True


def max_generator(w: TensorWord) -> int:
    """Largest generator index appearing in w (0 for the unit)."""
    return max((g for g, _ in _walk(w, False)), default=0)
