"""Formal composites of structure moves, canonical normalization paths, and
the loop-counting oracle that decides when two paths are forced equal.

Run from the repository root:  python3 demos/02_coherence_paths.py
"""

import random
from collections import Counter

from invcoh import composites as comp
from invcoh import kl
from invcoh.sampling import random_closed_composite
from invcoh.words import DualGen, Gen, Tensor, UNIT, to_text

# Every word reduces to its power-word normal form along a composite of
# structure moves that never twists two letters of one generator.
w = Tensor(Tensor(Gen(2), Gen(1)), Tensor(DualGen(2), Gen(1)))
c = comp.canonical_phi(w, 2)
print("word:  ", to_text(w))
print("target:", to_text(comp.target_word(c)))
for m in c.moves:
    print("  ", m.kind, "at", m.path or "root")
print("evaluation:", comp.evaluate(c))
print()

# Randomizing the reduction order gives an independent path; both paths
# evaluate to zero, so they are forced to agree.
c2 = comp.canonical_phi(w, 2, rng=random.Random(7))
print("seeded path length", len(c2.moves), "verdict:", comp.equal(c, c2))
print()

# The trace composite S -> S picks up one self-twist of X1.
tr = comp.FormalComposite(
    UNIT, (comp.alpha(1), comp.twist(DualGen(1), Gen(1)), comp.alphahat(1)), 1
)
print("trace evaluation:", comp.evaluate(tr))

# Compiling to the diagram category explains the value: the exponent of
# each commuter is the loop count plus the substitution count, mod 2.
m, s = comp.compile_to_kl(tr)
print("compiled loops:", dict(m.loops), "substitutions:", s)
print()

rng = random.Random(0)
c3 = random_closed_composite(rng, 2, max_letters=6, steps=10)
m3, s3 = comp.compile_to_kl(c3)
loops = Counter(dict(m3.loops))
print("random closed composite with", len(c3.moves), "moves")
print("evaluation:", comp.evaluate(c3))
print("loops + substitutions mod 2:", tuple((loops[i + 1] + s3[i]) % 2 for i in range(2)))
