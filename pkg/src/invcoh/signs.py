"""Sign calculus for Z^n-graded homotopy-style rings.

Everything here is bookkeeping with the basic commuters t_1..t_n: 2-torsion
units of the coefficient group, with

    tau(a, b) = t_1^(a_1 b_1) ... t_n^(a_n b_n).

The default coefficient group is (Z/2)^n with t_i the i-th basis vector; a
finite abelian group with chosen 2-torsion images of the t_i can be declared
instead.  Graded expressions multiply with a sort-based normal form, paying
a tau factor for each adjacent transposition of symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .models import FiniteAbelianGroup


class SignError(ValueError):
    pass


@dataclass(frozen=True)
class CommuterGroup:
    """Recipient of the commuter values: by default (Z/2)^n with t_i = e_i,
    otherwise a declared group with chosen 2-torsion images."""

    n: int
    target: Optional[FiniteAbelianGroup] = None
    images: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        if self.target is not None:
            if self.images is None or len(self.images) != self.n:
                raise SignError("declared targets need one image per commuter")
            for t in self.images:
                el = self.target.reduce(t)
                if self.target.add(el, el) != self.target.zero():
                    raise SignError(f"commuter image {t} is not 2-torsion")

    def identity(self) -> tuple[int, ...]:
        if self.target is None:
            return (0,) * self.n
        return self.target.zero()

    def commuter(self, i: int) -> tuple[int, ...]:
        if self.target is None:
            return tuple(1 if j == i - 1 else 0 for j in range(self.n))
        return self.target.reduce(self.images[i - 1])

    def mul(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        if self.target is None:
            return tuple((a + b) % 2 for a, b in zip(x, y))
        return self.target.add(x, y)

    def power(self, x: tuple[int, ...], k: int) -> tuple[int, ...]:
        out = self.identity()
        for _ in range(k % 2):  # all values are 2-torsion
            out = self.mul(out, x)
        return out

    def show(self, x: tuple[int, ...]) -> str:
        if self.target is not None:
            return str(tuple(x))
        parts = [f"t{i + 1}" for i, e in enumerate(x) if e % 2]
        return "*".join(parts) if parts else "1"


def tau(a: tuple[int, ...], b: tuple[int, ...], group: Optional[CommuterGroup] = None) -> tuple[int, ...]:
    """tau_{a,b} = prod t_i^(a_i b_i)."""
    if len(a) != len(b):
        raise SignError("degree vectors must have equal length")
    g = group or CommuterGroup(len(a))
    out = g.identity()
    for i, (ai, bi) in enumerate(zip(a, b), start=1):
        out = g.mul(out, g.power(g.commuter(i), ai * bi))
    return out


def lr_correction(
    rule: str,
    a: Optional[tuple[int, ...]] = None,
    b: Optional[tuple[int, ...]] = None,
    c: Optional[tuple[int, ...]] = None,
    d: Optional[tuple[int, ...]] = None,
    group: Optional[CommuterGroup] = None,
    flavor: str = "r",
) -> tuple[int, ...]:
    """Correction factor turning one side of the [f]_r/[f]_l ledger rules
    into the other.  For a map X^a -> X^b tensored/composed with others:

      a:  [f]_r = [f]_l . tau(b, a-b)
      b:  [id_c * f]_r = [f]_r                      (identity)
      c:  [f * id_c]_r = [f]_r . tau(a-b, c)
      d:  [f * id_c]_l = [f]_l                      (identity)
      e:  [id_c * f]_l = [f]_l . tau(a-b, c)
      f:  [gf]_r = [g]_r [f]_r; [gf]_l = [g]_l [f]_l . tau(a-b, c-d)
      g:  [f*g]_r = [f]_r [g]_r . tau(a-b, d);  _l variant tau(b, c-d)

    Only the factor is returned; the symbolic parts are the caller's.
    """

    def need(*vs):
        missing = [name for name, v in vs if v is None]
        if missing:
            raise SignError(f"rule {rule} needs degrees {', '.join(missing)}")

    def sub(x, y):
        return tuple(p - q for p, q in zip(x, y))

    g = group
    if rule == "a":
        need(("a", a), ("b", b))
        return tau(b, sub(a, b), g)
    if rule in ("b", "d"):
        return (group or CommuterGroup(len(a or b or c or (0,)))).identity()
    if rule in ("c", "e"):
        need(("a", a), ("b", b), ("c", c))
        return tau(sub(a, b), c, g)
    if rule == "f":
        if flavor == "r":
            return (group or CommuterGroup(len(a or (0,)))).identity()
        need(("a", a), ("b", b), ("c", c), ("d", d))
        return tau(sub(a, b), sub(c, d), g)
    if rule == "g":
        if flavor == "r":
            need(("a", a), ("b", b), ("d", d))
            return tau(sub(a, b), d, g)
        need(("b", b), ("c", c), ("d", d))
        return tau(b, sub(c, d), g)
    raise SignError(f"unknown rule tag {rule!r}")


@dataclass(frozen=True)
class GradedSymbol:
    name: str
    degree: tuple[int, ...]
    module: bool = False  # lives in a module, not the coefficient ring


@dataclass(frozen=True)
class GradedExpression:
    """Integer-linear combination of normalized monomials.  A monomial is a
    sorted symbol tuple with an accumulated commuter factor; at most one
    module symbol is allowed and it stays rightmost."""

    group: CommuterGroup
    # (symbols, unit factor) -> integer coefficient
    terms: tuple[tuple[tuple[GradedSymbol, ...], tuple[int, ...], int], ...]

    @staticmethod
    def from_symbol(sym: GradedSymbol, group: CommuterGroup) -> "GradedExpression":
        return GradedExpression(group, (((sym,), group.identity(), 1),))

    @staticmethod
    def unit(group: CommuterGroup, factor: Optional[tuple[int, ...]] = None) -> "GradedExpression":
        return GradedExpression(group, ((tuple(), factor or group.identity(), 1),))

    def add(self, other: "GradedExpression") -> "GradedExpression":
        return _collect(self.group, list(self.terms) + list(other.terms))


def _sort_monomial(
    group: CommuterGroup, syms: tuple[GradedSymbol, ...], factor: tuple[int, ...]
) -> tuple[tuple[GradedSymbol, ...], tuple[int, ...]]:
    """Bubble sort by name, paying tau(deg u, deg v) per transposition.
    Module symbols are kept rightmost and never pass one another."""
    lst = list(syms)
    if sum(1 for s in lst if s.module) > 1:
        raise SignError("cannot multiply two module elements")
    changed = True
    while changed:
        changed = False
        for k in range(len(lst) - 1):
            u, v = lst[k], lst[k + 1]
            out_of_order = (not u.module and v.module is False and u.name > v.name) or (
                u.module and not v.module
            )
            if out_of_order:
                factor = group.mul(factor, tau(u.degree, v.degree, group))
                lst[k], lst[k + 1] = v, u
                changed = True
    return tuple(lst), factor


def _collect(group, raw_terms):
    acc: dict = {}
    for syms, factor, coeff in raw_terms:
        syms, factor = _sort_monomial(group, tuple(syms), tuple(factor))
        key = (syms, factor)
        acc[key] = acc.get(key, 0) + coeff
    terms = tuple(
        (syms, factor, coeff)
        for (syms, factor), coeff in sorted(
            acc.items(), key=lambda kv: ([s.name for s in kv[0][0]], kv[0][1])
        )
        if coeff != 0
    )
    return GradedExpression(group, terms)


def multiply(x: GradedExpression, y: GradedExpression) -> GradedExpression:
    """Bilinear product; monomials concatenate then normalize by sorting,
    with commuter factors for the transpositions.  Unit factors are central
    and multiply in the group."""
    if x.group != y.group:
        raise SignError("mixed commuter groups")
    g = x.group
    raw = []
    for sx, fx, cx in x.terms:
        for sy, fy, cy in y.terms:
            raw.append((sx + sy, g.mul(fx, fy), cx * cy))
    return _collect(g, raw)


def d_of_trace_relations(
    a: tuple[int, ...], which: str, group: Optional[CommuterGroup] = None
) -> tuple[int, ...]:
    """Commuter factors in the trace/D-invariant relations at degree a:

      'D-to-trace':   tr(f) = (this factor) . D(f), factor prod t_i^(a_i)
      'trace-squared': tau_{X^a}^2, always the identity
      'tau-is-D-of-twist': D(t_{X^a,X^a}) = tau(a, a), same as the D-to-trace
                           factor coordinatewise mod 2
    """
    g = group or CommuterGroup(len(a))
    if which == "D-to-trace":
        out = g.identity()
        for i, ai in enumerate(a, start=1):
            out = g.mul(out, g.power(g.commuter(i), ai))
        return out
    if which == "trace-squared":
        return g.identity()
    if which == "tau-is-D-of-twist":
        return tau(a, a, g)
    raise SignError(f"unknown relation {which!r}")


def motivic_skew(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    """Exponents (k, m) in  f g = g f . (-1)^k eps^m  for f in pi_{a,b},
    g in pi_{c,d} under the regrading pi_{p,q} = pi_{(p-q,q)}."""
    return (((a - b) * (c - d)) % 2, (b * d) % 2)


def realization_correction(
    convention: str,
    b: Optional[int] = None,
    c: Optional[int] = None,
    d: Optional[int] = None,
    a: Optional[int] = None,
    s: Optional[int] = None,
) -> int:
    """Multiplicativity defect of topological realization, as +1/-1.

    'X1=S^{1,0}' (default): psi(fg) = psi(f) psi(g) (-1)^(b(c-d)); needs b, c, d.
    'X1=S^{1,1}' (alternate): psi(fg) = (-1)^((a-b)s) psi(f) psi(g); needs a, b, s.
    """
    if convention == "X1=S^{1,0}":
        if b is None or c is None or d is None:
            raise SignError("default convention needs b, c, d")
        return -1 if (b * (c - d)) % 2 else 1
    if convention == "X1=S^{1,1}":
        if a is None or b is None or s is None:
            raise SignError("alternate convention needs a, b, s")
        return -1 if ((a - b) * s) % 2 else 1
    raise SignError(f"unknown convention {convention!r}")
