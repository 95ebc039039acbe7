"""Seeded random instance generators shared by the test suites: random
words, random diagram-category morphisms, and random closed composites for
the coherence oracle."""

from __future__ import annotations

import random
from collections import Counter

from . import composites as comp
from . import kl
from .words import (
    DualGen,
    Gen,
    Tensor,
    TensorWord,
    UNIT,
    Unit,
    letters,
    multidegree,
    num_letters,
)


def random_tree(rng: random.Random, leaves: list[TensorWord]) -> TensorWord:
    """A uniformly bracketed tensor tree over the given leaf sequence."""
    if not leaves:
        return UNIT
    if len(leaves) == 1:
        return leaves[0]
    k = rng.randrange(1, len(leaves))
    return Tensor(random_tree(rng, leaves[:k]), random_tree(rng, leaves[k:]))


def random_word(rng: random.Random, n: int, max_letters: int, allow_unit: bool = True) -> TensorWord:
    k = rng.randrange(0 if allow_unit else 1, max_letters + 1)
    leaves: list[TensorWord] = []
    for _ in range(k):
        i = rng.randrange(1, n + 1)
        leaves.append(Gen(i) if rng.random() < 0.5 else DualGen(i))
    return random_tree(rng, leaves)


def random_word_of_multidegree(
    rng: random.Random, a: tuple[int, ...], extra_pairs: int
) -> TensorWord:
    """A random word with the given multidegree: the forced letters plus
    some cancelling pairs, shuffled into a random tree."""
    leaves: list[TensorWord] = []
    for i, ai in enumerate(a, start=1):
        leaves += [Gen(i)] * max(ai, 0) + [DualGen(i)] * max(-ai, 0)
    for _ in range(extra_pairs):
        i = rng.randrange(1, len(a) + 1)
        leaves += [Gen(i), DualGen(i)]
    rng.shuffle(leaves)
    return random_tree(rng, leaves)


def random_kl_between(rng: random.Random, src: TensorWord, dst: TensorWord, n: int) -> kl.KLMorphism:
    """A uniformly random correspondence src -> dst (words must have equal
    multidegree), with a small random loop multiset."""
    dom = letters(src)
    cod = letters(dst)
    tails: dict[int, list] = {}
    heads: dict[int, list] = {}
    for l in dom:
        (tails if l.sign > 0 else heads).setdefault(l.generator, []).append(("d", l.ordinal))
    for l in cod:
        (heads if l.sign > 0 else tails).setdefault(l.generator, []).append(("c", l.ordinal))
    pairs = []
    for g in set(tails) | set(heads):
        ts, hs = tails.get(g, []), heads.get(g, [])
        assert len(ts) == len(hs), "multidegree mismatch"
        rng.shuffle(hs)
        pairs += list(zip(ts, hs))
    loops = Counter()
    for _ in range(rng.randrange(0, 3)):
        loops[rng.randrange(1, n + 1)] += 1
    return kl._morphism(src, dst, pairs, loops)


def random_kl_chain(rng: random.Random, n: int, max_letters: int, length: int):
    """Composable random morphisms w_0 -> w_1 -> ... -> w_length."""
    w0 = random_word(rng, n, max_letters)
    a = multidegree(w0, n)
    ws = [w0]
    for _ in range(length):
        ws.append(random_word_of_multidegree(rng, a, rng.randrange(0, 2)))
    return [random_kl_between(rng, ws[i], ws[i + 1], n) for i in range(length)]


def _twistable_nodes(w: TensorWord, path=()):
    out = []
    if isinstance(w, Tensor):
        out.append((path, w))
        out += _twistable_nodes(w.left, path + ("L",))
        out += _twistable_nodes(w.right, path + ("R",))
    return out


def _all_paths(w: TensorWord, path=()):
    out = [(path, w)]
    if isinstance(w, Tensor):
        out += _all_paths(w.left, path + ("L",))
        out += _all_paths(w.right, path + ("R",))
    return out


def random_closed_composite(
    rng: random.Random, n: int, max_letters: int = 8, steps: int = 12
) -> comp.FormalComposite:
    """A random composite S -> S: a random walk through applicable moves
    starting at the unit, closed off with the canonical map (every word met
    along the way has multidegree zero, so the canonical target is S)."""
    moves: list[comp.Move] = []
    w: TensorWord = UNIT
    for _ in range(steps):
        candidates: list[comp.Move] = []
        k = num_letters(w)
        for path, sub in _all_paths(w):
            if isinstance(sub, Tensor):
                if isinstance(sub.left, Tensor):
                    candidates.append(comp.assoc(path))
                if isinstance(sub.right, Tensor):
                    candidates.append(comp.assoc(path, inverted=True))
                if isinstance(sub.left, Unit):
                    candidates.append(comp.unitor("left", path))
                if isinstance(sub.right, Unit):
                    candidates.append(comp.unitor("right", path))
                candidates.append(comp.twist(sub.left, sub.right, path))
                candidates.append(
                    comp.twist(sub.right, sub.left, path, inverted=True)
                )
                i = _single_gen(sub.left)
                j = _single_gen(sub.right)
                if i > 0 and j == -i:
                    candidates.append(comp.alphahat(i, path))
                if j > 0 and i == -j:
                    candidates.append(comp.alpha(j, path, inverted=True))
            if isinstance(sub, Unit):
                if k + 2 <= max_letters:
                    g = rng.randrange(1, n + 1)
                    candidates.append(comp.alpha(g, path))
                    candidates.append(comp.alphahat(g, path, inverted=True))
                candidates.append(comp.unitor("left", path, inverted=True))
                candidates.append(comp.unitor("right", path, inverted=True))
        m = rng.choice(candidates)
        moves.append(m)
        w = comp.apply_move(w, m)
    closing = comp.canonical_phi(w, n, rng=rng)
    return comp.FormalComposite(UNIT, tuple(moves) + closing.moves, n)


def _single_gen(w: TensorWord) -> int:
    """+i for the letter X_i, -i for its inverse, 0 otherwise."""
    if isinstance(w, Gen):
        return w.index
    if isinstance(w, DualGen):
        return -w.index
    return 0
