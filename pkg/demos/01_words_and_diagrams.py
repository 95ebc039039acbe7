"""Tensor words over invertible generators and their matching diagrams.

Run from the repository root:  python3 demos/01_words_and_diagrams.py
"""

from invcoh import kl
from invcoh.words import DualGen, Gen, Tensor, multidegree, power_word, to_text

X, Y = Gen(1), Gen(2)
Xi, Yi = DualGen(1), DualGen(2)

w = Tensor(X, Tensor(Y, Tensor(Xi, Tensor(Yi, Y))))
print("word:        ", to_text(w))
print("multidegree: ", multidegree(w, 2))
print("normal form: ", to_text(power_word(multidegree(w, 2))))
print()

# A morphism in the diagram category is a perfect matching of the letters,
# oriented by sign, plus a bag of closed loops.
tw = kl.symmetry(X, Y)
print("t_{X1,X2}:")
print(kl.to_record(tw))

# Closing a strand against its inverse produces a loop when composed with
# the matching opening.
loop = kl.compose(kl.cap(1), kl.cup_crossed(1))
print("cap . crossed cup:")
print(kl.to_record(loop))

# Traces close the open strands; the identity on X1*X1*X1 closes into
# three loops, a cyclic permutation into one.
w3 = Tensor(X, Tensor(X, X))
print("trace of id:      ", dict(kl.trace_kl(kl.identity(w3)).loops))
cyc = kl._morphism(w3, w3, [(("d", 0), ("c", 1)), (("d", 1), ("c", 2)), (("d", 2), ("c", 0))])
print("trace of 3-cycle: ", dict(kl.trace_kl(cyc).loops))
