"""The commuter sign calculus: the bilinear pairing tau, the left/right
bracket conversion ledger, skew-commutation of graded symbols, and the
corrections picked up under topological realization.

Run from the repository root:  python3 demos/03_sign_rules.py
"""

from invcoh import signs
from invcoh.models import FiniteAbelianGroup
from invcoh.signs import CommuterGroup, GradedExpression, GradedSymbol

g = CommuterGroup(2)
a, b = (2, 1), (1, 1)
print("tau(a, b)      =", g.show(signs.tau(a, b, g)))
print("tau(a, b+b)    =", g.show(signs.tau(a, (2, 2), g)))
print("tau(-a, b)     =", g.show(signs.tau((-2, -1), b, g)))
print()

# Converting a right bracket to a left bracket costs tau(b, a-b); tensoring
# with an identity on the right costs tau(a-b, c).
print("rule a factor:", g.show(signs.lr_correction("a", a=a, b=b, group=g)))
print("rule c factor:", g.show(signs.lr_correction("c", a=a, b=b, c=(0, 3), group=g)))
print()

# Graded symbols skew-commute: swapping pays tau of the degrees.
f = GradedExpression.from_symbol(GradedSymbol("f", a), g)
h = GradedExpression.from_symbol(GradedSymbol("h", b), g)
for syms, factor, coeff in signs.multiply(h, f).terms:
    names = " ".join(s.name for s in syms)
    print(f"h*f normalizes to {coeff} * {names} * {g.show(factor)}")
print()

# The same identities hold with commuters sent to declared 2-torsion
# elements of a finite group.
fin = CommuterGroup(2, target=FiniteAbelianGroup((4, 2)), images=((2, 0), (0, 1)))
print("tau(a, b) in Z/4 x Z/2:", signs.tau(a, b, fin))
print()

# Realization corrections: composition is only preserved up to a sign.
print("motivic skew exponents (k, m):", signs.motivic_skew(2, 1, 3, 1))
print("realization defect, default convention: ", signs.realization_correction("X1=S^{1,0}", b=1, c=2, d=1))
print("realization defect, alternate convention:", signs.realization_correction("X1=S^{1,1}", a=2, b=1, s=1))
