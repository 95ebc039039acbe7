"""Formal composites of coherence moves between inverse-restricted words.

A composite is a source word plus an ordered list of moves; each move carries
a tree path (L/R segments from the root) addressing the subword it rewrites,
with identities implied everywhere else, and an inverted flag.  Move kinds:

  assoc        (u*v)*w -> u*(v*w)          inverted: the other direction
  unitor-left  S*w -> w                    inverted: w -> S*w
  unitor-right w*S -> w                    inverted: w -> w*S
  twist(u,v)   u*v -> v*u                  inverted: applies at v*u
  alpha i      S -> X_i^-1 * X_i           inverted: the other direction
  alphahat i   X_i * X_i^-1 -> S           inverted: the other direction

The evaluator maps a composite to its exponent vector in (Z/2)^n: a twist of
operands with multidegrees a, b contributes a_i b_i mod 2 in coordinate i and
every other move contributes nothing.  Two composites with equal endpoints
and equal evaluation denote the same morphism in every symmetric monoidal
category; unequal evaluations are reported as NotForced, never as unequal.

Compilation to the diagram category replaces an inverted alpha by the
crossed cap and an inverted alphahat by the crossed cup, incrementing a per-
generator substitution count s; the omitted factor is the basic commuter, so
for closed composites  evaluate(c)_i = loops_i + s_i (mod 2)  against the
compiled picture.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from . import kl
from .words import (
    DualGen,
    Gen,
    Tensor,
    TensorWord,
    UNIT,
    Unit,
    is_inverse_restricted,
    letters,
    multidegree,
    num_letters,
    power_word,
    to_text,
)

Path = tuple[str, ...]  # 'L' / 'R' segments


class MoveError(ValueError):
    """A move does not apply to the running word (carries the move index)."""

    def __init__(self, msg: str, index: Optional[int] = None):
        super().__init__(msg if index is None else f"move {index}: {msg}")
        self.index = index


class EndpointMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str  # assoc | unitor_l | unitor_r | twist | alpha | alphahat
    path: Path = ()
    inverted: bool = False
    u: Optional[TensorWord] = None  # twist operands
    v: Optional[TensorWord] = None
    gen: Optional[int] = None  # alpha/alphahat generator

    def inverse(self) -> "Move":
        return replace(self, inverted=not self.inverted)


def assoc(path: Path = (), inverted: bool = False) -> Move:
    return Move("assoc", path, inverted)


def unitor(side: str, path: Path = (), inverted: bool = False) -> Move:
    return Move("unitor_l" if side == "left" else "unitor_r", path, inverted)


def twist(u: TensorWord, v: TensorWord, path: Path = (), inverted: bool = False) -> Move:
    return Move("twist", path, inverted, u=u, v=v)


def alpha(i: int, path: Path = (), inverted: bool = False) -> Move:
    return Move("alpha", path, inverted, gen=i)


def alphahat(i: int, path: Path = (), inverted: bool = False) -> Move:
    return Move("alphahat", path, inverted, gen=i)


def subword(w: TensorWord, path: Path) -> TensorWord:
    for seg in path:
        if not isinstance(w, Tensor):
            raise MoveError(f"path runs past a leaf at segment {seg}")
        w = w.left if seg == "L" else w.right
    return w


def replace_subword(w: TensorWord, path: Path, new: TensorWord) -> TensorWord:
    if not path:
        return new
    if not isinstance(w, Tensor):
        raise MoveError("path runs past a leaf")
    if path[0] == "L":
        return Tensor(replace_subword(w.left, path[1:], new), w.right)
    return Tensor(w.left, replace_subword(w.right, path[1:], new))


def _apply_local(sub: TensorWord, m: Move) -> TensorWord:
    k, inv = m.kind, m.inverted
    if k == "assoc":
        if not inv:
            if isinstance(sub, Tensor) and isinstance(sub.left, Tensor):
                return Tensor(sub.left.left, Tensor(sub.left.right, sub.right))
            raise MoveError(f"assoc needs ((u*v)*w), got {to_text(sub)}")
        if isinstance(sub, Tensor) and isinstance(sub.right, Tensor):
            return Tensor(Tensor(sub.left, sub.right.left), sub.right.right)
        raise MoveError(f"assoc^-1 needs (u*(v*w)), got {to_text(sub)}")
    if k == "unitor_l":
        if not inv:
            if isinstance(sub, Tensor) and isinstance(sub.left, Unit):
                return sub.right
            raise MoveError(f"unitor-left needs (S*w), got {to_text(sub)}")
        return Tensor(UNIT, sub)
    if k == "unitor_r":
        if not inv:
            if isinstance(sub, Tensor) and isinstance(sub.right, Unit):
                return sub.left
            raise MoveError(f"unitor-right needs (w*S), got {to_text(sub)}")
        return Tensor(sub, UNIT)
    if k == "twist":
        want = Tensor(m.u, m.v) if not inv else Tensor(m.v, m.u)
        if sub != want:
            raise MoveError(
                f"twist operands do not match: at {to_text(sub)}, expected {to_text(want)}"
            )
        return Tensor(m.v, m.u) if not inv else Tensor(m.u, m.v)
    if k == "alpha":
        pair = Tensor(DualGen(m.gen), Gen(m.gen))
        if not inv:
            if isinstance(sub, Unit):
                return pair
            raise MoveError(f"alpha needs S, got {to_text(sub)}")
        if sub == pair:
            return UNIT
        raise MoveError(f"alpha^-1 needs {to_text(pair)}, got {to_text(sub)}")
    if k == "alphahat":
        pair = Tensor(Gen(m.gen), DualGen(m.gen))
        if not inv:
            if sub == pair:
                return UNIT
            raise MoveError(f"alphahat needs {to_text(pair)}, got {to_text(sub)}")
        if isinstance(sub, Unit):
            return pair
        raise MoveError(f"alphahat^-1 needs S, got {to_text(sub)}")
    raise MoveError(f"unknown move kind {k}")


def apply_move(w: TensorWord, m: Move) -> TensorWord:
    return replace_subword(w, m.path, _apply_local(subword(w, m.path), m))


@dataclass(frozen=True)
class FormalComposite:
    source: TensorWord
    moves: tuple[Move, ...]
    n: int  # number of generators in scope

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    def then(self, other: "FormalComposite") -> "FormalComposite":
        if target_word(self) != other.source:
            raise EndpointMismatch("cannot chain: endpoint words differ")
        return FormalComposite(self.source, self.moves + other.moves, max(self.n, other.n))

    def inverse(self) -> "FormalComposite":
        return FormalComposite(
            target_word(self), tuple(m.inverse() for m in reversed(self.moves)), self.n
        )


def words_along(c: FormalComposite) -> list[TensorWord]:
    """Running word before each move plus the final word; validates."""
    if not is_inverse_restricted(c.source):
        raise MoveError("source word must be inverse-restricted")
    out = [c.source]
    w = c.source
    for idx, m in enumerate(c.moves):
        try:
            w = apply_move(w, m)
        except MoveError as e:
            raise MoveError(str(e), index=idx) from None
        out.append(w)
    return out


def target_word(c: FormalComposite) -> TensorWord:
    return words_along(c)[-1]


def evaluate(c: FormalComposite) -> tuple[int, ...]:
    """Exponent vector of the basic commuters in (Z/2)^n."""
    words_along(c)  # validate
    e = [0] * c.n
    for m in c.moves:
        if m.kind == "twist":
            du = multidegree(m.u, c.n)
            dv = multidegree(m.v, c.n)
            for i in range(c.n):
                e[i] = (e[i] + du[i] * dv[i]) % 2
    return tuple(e)


def i_parity(c: FormalComposite, i: int) -> int:
    """Mod-2 count of self-twists of generator i (word-level twists counted
    through their expansion, which gives deg_i(u) * deg_i(v))."""
    return evaluate(c)[i - 1]


def equal(c1: FormalComposite, c2: FormalComposite) -> str:
    """'forced-equal' or 'not-forced'; endpoint mismatch is an error."""
    if c1.source != c2.source:
        raise EndpointMismatch(
            f"sources differ: {to_text(c1.source)} vs {to_text(c2.source)}"
        )
    if target_word(c1) != target_word(c2):
        raise EndpointMismatch(
            f"targets differ: {to_text(target_word(c1))} vs {to_text(target_word(c2))}"
        )
    n = max(c1.n, c2.n)
    e1 = evaluate(FormalComposite(c1.source, c1.moves, n))
    e2 = evaluate(FormalComposite(c2.source, c2.moves, n))
    return "forced-equal" if e1 == e2 else "not-forced"


# ---------------------------------------------------------------------------
# canonical isomorphism to the power-word normal form


class _Builder:
    """Accumulates moves while tracking the running word."""

    def __init__(self, source: TensorWord):
        self.word = source
        self.moves: list[Move] = []

    def do(self, m: Move) -> None:
        self.word = apply_move(self.word, m)
        self.moves.append(m)


def _flatten(b: _Builder, path: Path) -> None:
    """Rewrite the subword at path into a right comb of its letters (or S),
    using assoc and unitors only."""
    sub = subword(b.word, path)
    if not isinstance(sub, Tensor):
        return
    _flatten(b, path + ("L",))
    _flatten(b, path + ("R",))
    _merge(b, path)


def _merge(b: _Builder, path: Path) -> None:
    # both children are right combs or S; splice them into one comb
    sub = subword(b.word, path)
    if isinstance(sub.left, Unit):
        b.do(unitor("left", path))
        return
    if isinstance(sub.right, Unit):
        b.do(unitor("right", path))
        return
    while isinstance(subword(b.word, path).left, Tensor):
        b.do(assoc(path))
        _merge(b, path + ("R",))
        return


def _comb_paths(w: TensorWord) -> list[Path]:
    """Path of each letter in a right comb (letters only, no units)."""
    paths: list[Path] = []
    p: Path = ()
    cur = w
    while isinstance(cur, Tensor):
        paths.append(p + ("L",))
        p = p + ("R",)
        cur = cur.right
    paths.append(p)
    return paths


def _comb_swap(b: _Builder, p: int, k: int) -> None:
    """Swap letters p, p+1 of the right comb (k letters total) by a twist."""
    lets = _comb_letter_words(b.word)
    base: Path = ("R",) * p
    if p + 1 == k - 1:
        b.do(twist(lets[p], lets[p + 1], base))
    else:
        b.do(assoc(base, inverted=True))
        b.do(twist(lets[p], lets[p + 1], base + ("L",)))
        b.do(assoc(base))


def _comb_cancel(b: _Builder, p: int, k: int) -> None:
    """Cancel opposite-sign same-generator letters at comb positions p, p+1."""
    lets = _comb_letter_words(b.word)
    gen = lets[p].index
    first_is_gen = isinstance(lets[p], Gen)
    base: Path = ("R",) * p
    if p + 1 == k - 1:
        cancel_path = base
    else:
        b.do(assoc(base, inverted=True))
        cancel_path = base + ("L",)
    if first_is_gen:
        b.do(alphahat(gen, cancel_path))
    else:
        b.do(alpha(gen, cancel_path, inverted=True))
    # remove the unit left behind
    if p + 1 == k - 1:
        if p == 0:
            return  # whole word is now S
        b.do(unitor("right", ("R",) * (p - 1)))
    else:
        b.do(unitor("left", base))


def _comb_letter_words(w: TensorWord) -> list[TensorWord]:
    out: list[TensorWord] = []
    cur = w
    while isinstance(cur, Tensor):
        out.append(cur.left)
        cur = cur.right
    out.append(cur)
    return out


def _sort_and_cancel(b: _Builder, rng: Optional[random.Random]) -> None:
    """Reduce the right comb to sorted blocks: cancel adjacent opposite-sign
    pairs of one generator, bubble distinct generators past each other.  The
    measure (length, inversions) drops at every step, so any choice order
    terminates; a seeded rng picks among the applicable steps."""
    while True:
        w = b.word
        if isinstance(w, Unit):
            return
        lets = _comb_letter_words(w)
        k = len(lets)
        gens = [l.index for l in lets]
        signs = [1 if isinstance(l, Gen) else -1 for l in lets]
        cancels = [
            p
            for p in range(k - 1)
            if gens[p] == gens[p + 1] and signs[p] != signs[p + 1]
        ]
        swaps = [
            p for p in range(k - 1) if gens[p] > gens[p + 1]
        ]
        if not cancels and not swaps:
            return
        if rng is None:
            if cancels:
                _comb_cancel(b, cancels[0], k)
            else:
                _comb_swap(b, swaps[0], k)
        else:
            kind, p = rng.choice(
                [("c", p) for p in cancels] + [("s", p) for p in swaps]
            )
            (_comb_cancel if kind == "c" else _comb_swap)(b, p, k)


def _to_right_comb(b: _Builder, path: Path) -> None:
    """Assoc-only right-combing of a unit-free subword."""
    while True:
        sub = subword(b.word, path)
        if not (isinstance(sub, Tensor) and isinstance(sub.left, Tensor)):
            break
        b.do(assoc(path))
    if isinstance(subword(b.word, path), Tensor):
        _to_right_comb(b, path + ("R",))


def _reassociate(b: _Builder, path: Path, target: TensorWord) -> None:
    """Assoc-only rewrite of the (unit-free) subword at path into the target
    tree shape with the same letter sequence."""
    sub = subword(b.word, path)
    if sub == target:
        return
    if not isinstance(target, Tensor):
        raise MoveError("reassociation target mismatch")
    _to_right_comb(b, path)
    m = num_letters(target.left)
    for _ in range(m - 1):
        b.do(assoc(path, inverted=True))
    # left child now holds the first m letters
    if num_letters(subword(b.word, path).left) != m:
        raise MoveError("reassociation letter-count mismatch")
    _reassociate(b, path + ("L",), target.left)
    _reassociate(b, path + ("R",), target.right)


def canonical_phi(
    w: TensorWord, n: int, rng: Optional[random.Random] = None
) -> FormalComposite:
    """The canonical composite w -> X^multidegree(w): flatten, bubble letters
    of distinct generators past each other, cancel adjacent opposite-sign
    pairs of one generator, then reassociate into the nested normal form.
    Never twists two letters of the same generator; evaluates to 0.

    With an rng the reduction order is randomized (still canonical-move-only),
    giving independent witnesses for the uniqueness theorem.
    """
    if not is_inverse_restricted(w):
        raise MoveError("canonical_phi needs an inverse-restricted word")
    b = _Builder(w)
    _flatten(b, ())
    _sort_and_cancel(b, rng)
    target = power_word(multidegree(w, n))
    if not isinstance(target, Unit):
        _reassociate(b, (), target)
    if b.word != target:
        raise MoveError("canonical form not reached")  # pragma: no cover
    return FormalComposite(w, tuple(b.moves), n)


# ---------------------------------------------------------------------------
# compilation to the diagram category


def _embed(word: TensorWord, path: Path, local: kl.KLMorphism) -> kl.KLMorphism:
    """Tensor the local picture with identities along the tree context."""
    if not path:
        return local
    if not isinstance(word, Tensor):
        raise MoveError("path runs past a leaf")
    if path[0] == "L":
        return kl.tensor(_embed(word.left, path[1:], local), kl.identity(word.right))
    return kl.tensor(kl.identity(word.left), _embed(word.right, path[1:], local))


def _move_to_kl(word: TensorWord, m: Move, s: list[int]) -> kl.KLMorphism:
    sub = subword(word, m.path)
    out = _apply_local(sub, m)
    if m.kind in ("assoc", "unitor_l", "unitor_r"):
        local = kl.retree(sub, out)
    elif m.kind == "twist":
        local = kl.symmetry(m.u, m.v) if not m.inverted else kl.symmetry(m.v, m.u)
    elif m.kind == "alpha":
        if not m.inverted:
            local = kl.cup(m.gen)
        else:
            local = kl.cap_crossed(m.gen)  # alpha^-1 ~ tr(id) . (alphahat t)
            s[m.gen - 1] += 1
    elif m.kind == "alphahat":
        if not m.inverted:
            local = kl.cap(m.gen)
        else:
            local = kl.cup_crossed(m.gen)  # alphahat^-1 ~ tr(id) . (t alpha)
            s[m.gen - 1] += 1
    else:
        raise MoveError(f"unknown move kind {m.kind}")
    return _embed(word, m.path, local)


def compile_to_kl(c: FormalComposite) -> tuple[kl.KLMorphism, tuple[int, ...]]:
    """Compose the elementary pictures of all moves; inverted duality moves
    are replaced by their crossed counterparts with the dropped basic-
    commuter factor tallied per generator in s."""
    ws = words_along(c)
    s = [0] * c.n
    acc = kl.identity(c.source)
    for w, m in zip(ws, c.moves):
        acc = kl.compose(_move_to_kl(w, m, s), acc)
    return acc, tuple(s)


def close_up(c: FormalComposite) -> FormalComposite:
    """Deterministic closure into an S -> S composite with the same
    evaluation: conjugate by canonical maps into X^a, then bend around with
    a canonical cup S -> X^-a * X^a and its inverse."""
    src, dst = c.source, target_word(c)
    a = multidegree(src, c.n)
    if a != multidegree(dst, c.n):
        raise EndpointMismatch("close_up needs equal multidegrees")
    g = canonical_phi(src, c.n)
    h = canonical_phi(dst, c.n)
    middle = g.inverse().then(c).then(h)  # X^a -> X^a
    neg = tuple(-x for x in a)
    pair = Tensor(power_word(neg), power_word(a))
    v = canonical_phi(pair, c.n)  # X^-a * X^a -> S
    u = v.inverse()  # S -> X^-a * X^a
    shifted = tuple(replace(m, path=("R",) + m.path) for m in middle.moves)
    return FormalComposite(UNIT, u.moves + shifted + v.moves, c.n)


# ---------------------------------------------------------------------------
# word-level twist expansion (debug cross-check for the Prop-6.5-style rule)


def expand_twists(c: FormalComposite) -> FormalComposite:
    """Replace every twist whose operands are not single letters by a chain
    of single-letter transpositions (with assoc/unitor plumbing)."""
    ws = words_along(c)
    out: list[Move] = []
    for w, m in zip(ws, c.moves):
        if m.kind != "twist" or (
            not isinstance(m.u, Tensor | Unit) and not isinstance(m.v, Tensor | Unit)
        ):
            out.append(m)
            continue
        u, v = (m.u, m.v) if not m.inverted else (m.v, m.u)
        out.extend(_twist_expansion(subword(w, m.path), u, v, m.path))
    return FormalComposite(c.source, tuple(out), c.n)


def _twist_expansion(sub: TensorWord, u: TensorWord, v: TensorWord, path: Path) -> list[Move]:
    b = _Builder(sub)
    ku, kv = num_letters(u), num_letters(v)
    if ku == 0 or kv == 0:
        # a twist with the unit on one side is a unitor zig-zag
        if ku == 0 and kv == 0:
            return []  # S*S -> S*S, identity either way
        side_gone = "left" if ku == 0 else "right"
        side_back = "right" if ku == 0 else "left"
        b.do(unitor(side_gone, ()))
        b.do(unitor(side_back, (), inverted=True))
        # fix shapes of the surviving block
        want = Tensor(v, u)
        if b.word != want:
            b2 = _Builder(b.word)
            _reassociate(b2, (), want)
            b.moves.extend(b2.moves)
            b.word = b2.word
        return [replace(m, path=path + m.path) for m in b.moves]
    _flatten(b, ())
    # bubble each u-letter rightward across the v block, last one first
    for start in range(ku - 1, -1, -1):
        for p in range(start, start + kv):
            k = num_letters(b.word)
            _comb_swap(b, p, k)
    _reassociate(b, (), Tensor(v, u))
    return [replace(m, path=path + m.path) for m in b.moves]
