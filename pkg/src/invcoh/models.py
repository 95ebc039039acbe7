"""Finite symmetric monoidal categories with object group A and unit
automorphisms N, given by an associator cochain alpha: A^3 -> N and a
braiding cochain beta: A^2 -> N.

A morphism x -> y exists only for x = y and is an element of N; composition
and tensor are both addition in N.  The coherence axioms say exactly that
(alpha, beta) is a normalized 3-cocycle for the Eilenberg-MacLane style
complex built in the cohomology module, so these categories are a complete
family of oracles for the universal sign formulas.

A composite's value is the sum of its move values: associator alpha(x,y,z),
twist beta(x,y), unitor 0, duality unit u_i, duality counit the derived
uhat_i, with inverted moves contributing the negative.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .composites import FormalComposite, Move, subword, words_along
from .words import Tensor, TensorWord, multidegree

Element = tuple[int, ...]


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant-factor style presentation: a product of cyclic groups given
    by a modulus list, 0 meaning an infinite cyclic factor."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if any(m < 0 for m in self.moduli):
            raise ModelError("moduli must be nonnegative")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def is_finite(self) -> bool:
        return all(m > 0 for m in self.moduli)

    def order(self) -> int:
        if not self.is_finite():
            raise ModelError("infinite group has no order")
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def reduce(self, x: Iterable[int]) -> Element:
        x = tuple(x)
        if len(x) != self.rank:
            raise ModelError(f"element length {len(x)} != rank {self.rank}")
        return tuple(xi % m if m else xi for xi, m in zip(x, self.moduli))

    def zero(self) -> Element:
        return (0,) * self.rank

    def add(self, x: Element, y: Element) -> Element:
        return self.reduce(a + b for a, b in zip(x, y))

    def neg(self, x: Element) -> Element:
        return self.reduce(-a for a in x)

    def sub(self, x: Element, y: Element) -> Element:
        return self.add(x, self.neg(y))

    def scale(self, k: int, x: Element) -> Element:
        return self.reduce(k * a for a in x)

    def elements(self) -> list[Element]:
        if not self.is_finite():
            raise ModelError("cannot enumerate an infinite group")
        return [tuple(t) for t in itertools.product(*(range(m) for m in self.moduli))]

    def __str__(self) -> str:
        if not self.moduli:
            return "0"
        return " x ".join("Z" if m == 0 else f"Z/{m}" for m in self.moduli)

    @staticmethod
    def parse(text: str) -> "FiniteAbelianGroup":
        """Accepts strings like 'Z/2 x Z/4', 'Z', 'Z/6'; '0' or '1' for the
        trivial group."""
        text = text.strip()
        if text in ("0", "1"):
            return FiniteAbelianGroup(())
        moduli = []
        for part in re.split(r"\s*[x×]\s*", text):
            part = part.strip()
            m = re.fullmatch(r"Z(?:/(\d+))?", part)
            if not m:
                raise ModelError(f"cannot parse group factor {part!r}")
            moduli.append(int(m.group(1)) if m.group(1) else 0)
        return FiniteAbelianGroup(tuple(moduli))

    @staticmethod
    def parse_element(g: "FiniteAbelianGroup", text: str) -> Element:
        text = text.strip().lstrip("(").rstrip(")")
        if not text:
            return g.reduce(())
        return g.reduce(int(t) for t in text.split(","))


@dataclass(frozen=True)
class ExtendedSMC:
    A: FiniteAbelianGroup
    N: FiniteAbelianGroup
    alpha: Callable[[Element, Element, Element], Element]
    beta: Callable[[Element, Element], Element]
    name: str = ""

    @staticmethod
    def from_tables(
        A: FiniteAbelianGroup,
        N: FiniteAbelianGroup,
        alpha_table: dict[tuple[Element, Element, Element], Element],
        beta_table: dict[tuple[Element, Element], Element],
        name: str = "",
    ) -> "ExtendedSMC":
        def alpha(x, y, z):
            return N.reduce(alpha_table.get((x, y, z), N.zero()))

        def beta(x, y):
            return N.reduce(beta_table.get((x, y), N.zero()))

        return ExtendedSMC(A, N, alpha, beta, name)


def strict_model(A: FiniteAbelianGroup, N: FiniteAbelianGroup) -> ExtendedSMC:
    return ExtendedSMC(A, N, lambda x, y, z: N.zero(), lambda x, y: N.zero(), "strict")


def graded_line_model() -> ExtendedSMC:
    """Graded lines: objects are integer degrees, unit automorphisms {+1,-1}
    written additively as Z/2, trivial associator, braiding (-1)^(mn)."""
    A = FiniteAbelianGroup((0,))
    N = FiniteAbelianGroup((2,))

    def beta(x: Element, y: Element) -> Element:
        return ((x[0] * y[0]) % 2,)

    return ExtendedSMC(A, N, lambda x, y, z: N.zero(), beta, "graded-line")


def _sample_triples(M: ExtendedSMC, bound: Optional[int]):
    if M.A.is_finite():
        els = M.A.elements()
    else:
        if bound is None:
            raise ModelError("infinite object group: supply a sampling bound")
        rng = range(-bound, bound + 1)
        els = [M.A.reduce(t) for t in itertools.product(rng, repeat=M.A.rank)]
    return els


def check_axioms(M: ExtendedSMC, bound: Optional[int] = None) -> dict:
    """Pentagon, both hexagons, antisymmetry of the braiding, and the unit
    normalization, each reported pass/fail with a first counterexample."""
    A, N = M.A, M.N
    els = _sample_triples(M, bound)
    report = {
        "pentagon": None,
        "hexagon1": None,
        "hexagon2": None,
        "symmetry": None,
        "normalized": None,
    }
    failures: dict[str, tuple] = {}
    al, be = M.alpha, M.beta

    def check(key: str, ok: bool, witness: tuple):
        if report[key] is None:
            report[key] = True
        if not ok and key not in failures:
            failures[key] = witness
            report[key] = False

    zero = A.zero()
    for a in els:
        check("normalized", be(a, zero) == N.zero() and be(zero, a) == N.zero(), (a,))
        for b in els:
            check(
                "symmetry", N.add(be(a, b), be(b, a)) == N.zero(), (a, b)
            )
            check(
                "normalized",
                al(a, b, zero) == N.zero()
                and al(a, zero, b) == N.zero()
                and al(zero, a, b) == N.zero(),
                (a, b),
            )
            for c in els:
                lhs1 = N.add(N.add(al(a, b, c), N.neg(al(a, c, b))), al(c, a, b))
                rhs1 = N.add(N.add(be(A.add(a, b), c), N.neg(be(a, c))), N.neg(be(b, c)))
                check("hexagon1", lhs1 == rhs1, (a, b, c))
                lhs2 = N.add(N.add(al(a, b, c), N.neg(al(b, a, c))), al(b, c, a))
                rhs2 = N.add(
                    N.add(be(a, b), N.neg(be(a, A.add(b, c)))), be(a, c)
                )
                check("hexagon2", lhs2 == rhs2, (a, b, c))
                for d in els:
                    pent = N.add(
                        N.add(
                            N.add(al(b, c, d), N.neg(al(A.add(a, b), c, d))),
                            al(a, A.add(b, c), d),
                        ),
                        N.add(N.neg(al(a, b, A.add(c, d))), al(a, b, c)),
                    )
                    check("pentagon", pent == N.zero(), (a, b, c, d))
    report["all"] = all(v for v in report.values() if v is not None)
    report["failures"] = failures
    return report


@dataclass(frozen=True)
class GeneratorAssignment:
    """Object a_i in A and duality unit value u_i in N per generator; the
    counit values are derived from the triangle identity."""

    objects: tuple[Element, ...]
    units: tuple[Element, ...]

    @property
    def n(self) -> int:
        return len(self.objects)


def derive_alphahat(M: ExtendedSMC, assignment: GeneratorAssignment, i: int) -> Element:
    """The unique counit value making the triangle
    X -> X*S -> X*(X^-1*X) -> (X*X^-1)*X -> S*X -> X the identity:
    uhat = alpha(x, -x, x) - u."""
    x = assignment.objects[i - 1]
    u = assignment.units[i - 1]
    return M.N.sub(M.alpha(x, M.A.neg(x), x), u)


def _object_of(M: ExtendedSMC, assignment: GeneratorAssignment, w: TensorWord) -> Element:
    a = multidegree(w, assignment.n)
    out = M.A.zero()
    for ai, obj in zip(a, assignment.objects):
        out = M.A.add(out, M.A.scale(ai, obj))
    return out


def _move_value(
    M: ExtendedSMC, assignment: GeneratorAssignment, word: TensorWord, m: Move
) -> Element:
    N = M.N
    sub = subword(word, m.path)
    if m.kind in ("unitor_l", "unitor_r"):
        return N.zero()
    if m.kind == "assoc":
        # non-inverted applies at ((u*v)*w); inverted at (u*(v*w))
        if not m.inverted:
            x = _object_of(M, assignment, sub.left.left)
            y = _object_of(M, assignment, sub.left.right)
            z = _object_of(M, assignment, sub.right)
            return M.alpha(x, y, z)
        x = _object_of(M, assignment, sub.left)
        y = _object_of(M, assignment, sub.right.left)
        z = _object_of(M, assignment, sub.right.right)
        return N.neg(M.alpha(x, y, z))
    if m.kind == "twist":
        x = _object_of(M, assignment, m.u)
        y = _object_of(M, assignment, m.v)
        val = M.beta(x, y)
        return N.neg(val) if m.inverted else val
    if m.kind == "alpha":
        u = assignment.units[m.gen - 1]
        return N.neg(u) if m.inverted else u
    if m.kind == "alphahat":
        uhat = derive_alphahat(M, assignment, m.gen)
        return N.neg(uhat) if m.inverted else uhat
    raise ModelError(f"unknown move kind {m.kind}")


def evaluate_in_model(
    c: FormalComposite, M: ExtendedSMC, assignment: GeneratorAssignment
) -> tuple[Element, Element, Element]:
    """(value, source object, target object) of a composite in the model."""
    if assignment.n < c.n:
        raise ModelError("assignment covers fewer generators than the composite")
    ws = words_along(c)
    val = M.N.zero()
    for w, m in zip(ws, c.moves):
        val = M.N.add(val, _move_value(M, assignment, w, m))
    return val, _object_of(M, assignment, ws[0]), _object_of(M, assignment, ws[-1])


def precompile(c: FormalComposite) -> list[tuple]:
    """Strip a composite down to what model evaluation needs: per move, the
    multidegrees of the relevant subwords.  Lets one pool of random
    composites be re-evaluated quickly across many models."""
    ws = words_along(c)
    out = []
    for w, m in zip(ws, c.moves):
        sub = subword(w, m.path)
        if m.kind in ("unitor_l", "unitor_r"):
            continue
        if m.kind == "assoc":
            if not m.inverted:
                degs = (sub.left.left, sub.left.right, sub.right)
            else:
                degs = (sub.left, sub.right.left, sub.right.right)
            out.append(("assoc", m.inverted, tuple(multidegree(x, c.n) for x in degs)))
        elif m.kind == "twist":
            out.append(
                (
                    "twist",
                    m.inverted,
                    (multidegree(m.u, c.n), multidegree(m.v, c.n)),
                )
            )
        else:
            out.append((m.kind, m.inverted, m.gen))
    return out


def evaluate_precompiled(
    pre: list[tuple], M: ExtendedSMC, assignment: GeneratorAssignment
) -> Element:
    A, N = M.A, M.N

    def obj(deg: tuple[int, ...]) -> Element:
        out = A.zero()
        for ai, o in zip(deg, assignment.objects):
            out = A.add(out, A.scale(ai, o))
        return out

    val = N.zero()
    for kind, inverted, data in pre:
        if kind == "assoc":
            v = M.alpha(*(obj(d) for d in data))
        elif kind == "twist":
            x, y = (obj(d) for d in data)
            v = M.beta(x, y)
        elif kind == "alpha":
            v = assignment.units[data - 1]
        else:  # alphahat
            v = derive_alphahat(M, assignment, data)
        val = N.add(val, N.neg(v) if inverted else v)
    return val


def model_invariants(M: ExtendedSMC, assignment: GeneratorAssignment, bound: Optional[int] = None) -> dict:
    """Structural checks: x -> beta(x,x) is an additive 2-torsion map, the
    second duality triangle closes, and the trace of the identity composite
    at each generator equals beta(a_i, a_i)."""
    from . import composites as comp
    from .words import DualGen, Gen, UNIT

    A, N = M.A, M.N
    els = _sample_triples(M, bound)
    tau_hom = all(
        N.add(M.beta(x, x), M.beta(y, y)) == M.beta(A.add(x, y), A.add(x, y))
        for x in els
        for y in els
    )
    tau_torsion = all(N.add(M.beta(x, x), M.beta(x, x)) == N.zero() for x in els)
    second_triangle = all(
        N.add(
            M.alpha(A.neg(x), x, A.neg(x)), M.alpha(x, A.neg(x), x)
        )
        == N.zero()
        for x in (assignment.objects)
    )
    traces = []
    tr_matches_tau = True
    for i in range(1, assignment.n + 1):
        c = comp.FormalComposite(
            UNIT,
            (
                comp.alpha(i),
                comp.twist(DualGen(i), Gen(i)),
                comp.alphahat(i),
            ),
            assignment.n,
        )
        val, _, _ = evaluate_in_model(c, M, assignment)
        ai = assignment.objects[i - 1]
        traces.append(val)
        if val != M.beta(ai, ai):
            tr_matches_tau = False
    return {
        "tau_values": tuple(traces),
        "tau_homomorphism": tau_hom,
        "tau_two_torsion": tau_torsion,
        "second_triangle": second_triangle,
        "trace_equals_tau": tr_matches_tau,
        "all": tau_hom and tau_torsion and second_triangle and tr_matches_tau,
    }


# ---------------------------------------------------------------------------
# model files


def load_model(text: str) -> tuple[ExtendedSMC, Optional[GeneratorAssignment]]:
    """Parse a structured-text model description.

    Lines: `builtin: strict|graded-line`, `A: Z/2 x Z/4`, `N: Z/2`,
    `alpha[a,b,c] = n`, `beta[a,b] = n`, `assign Xk = a`, `unit Xk = n`,
    where group elements are comma-separated integer tuples like `1` or
    `(1,0)`.  Blank lines and `#` comments are ignored.
    """
    builtin = None
    A = N = None
    alpha_table: dict = {}
    beta_table: dict = {}
    objects: dict[int, str] = {}
    units: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("builtin:"):
                builtin = line.split(":", 1)[1].strip()
            elif line.startswith("A:"):
                A = FiniteAbelianGroup.parse(line.split(":", 1)[1])
            elif line.startswith("N:"):
                N = FiniteAbelianGroup.parse(line.split(":", 1)[1])
            elif line.startswith("alpha[") or line.startswith("beta["):
                head, value = line.split("=", 1)
                args = head[head.index("[") + 1 : head.rindex("]")]
                parts = _split_args(args)
                if line.startswith("alpha["):
                    if len(parts) != 3:
                        raise ModelError("alpha needs three arguments")
                    alpha_table[tuple(parts)] = value.strip()
                else:
                    if len(parts) != 2:
                        raise ModelError("beta needs two arguments")
                    beta_table[tuple(parts)] = value.strip()
            elif line.startswith("assign "):
                gen, value = line[len("assign ") :].split("=", 1)
                objects[int(gen.strip().lstrip("X"))] = value.strip()
            elif line.startswith("unit "):
                gen, value = line[len("unit ") :].split("=", 1)
                units[int(gen.strip().lstrip("X"))] = value.strip()
            else:
                raise ModelError(f"unrecognized line {line!r}")
        except ModelError:
            raise
        except Exception as e:
            raise ModelError(f"line {lineno}: {e}") from None

    if builtin == "graded-line":
        M = graded_line_model()
    elif builtin == "strict":
        if A is None or N is None:
            raise ModelError("builtin strict needs A: and N: lines")
        M = strict_model(A, N)
    elif builtin is not None:
        raise ModelError(f"unknown builtin model {builtin!r}")
    else:
        if A is None or N is None:
            raise ModelError("model file needs A: and N: lines")
        at = {
            tuple(FiniteAbelianGroup.parse_element(A, p) for p in k): FiniteAbelianGroup.parse_element(N, v)
            for k, v in alpha_table.items()
        }
        bt = {
            tuple(FiniteAbelianGroup.parse_element(A, p) for p in k): FiniteAbelianGroup.parse_element(N, v)
            for k, v in beta_table.items()
        }
        M = ExtendedSMC.from_tables(A, N, at, bt)

    assignment = None
    if objects:
        ids = sorted(objects)
        if ids != list(range(1, len(ids) + 1)):
            raise ModelError("assign lines must cover X1..Xn")
        objs = tuple(
            FiniteAbelianGroup.parse_element(M.A, objects[i]) for i in ids
        )
        us = tuple(
            FiniteAbelianGroup.parse_element(M.N, units.get(i, ""))
            if i in units
            else M.N.zero()
            for i in ids
        )
        assignment = GeneratorAssignment(objs, us)
    return M, assignment


def _split_args(args: str) -> list[str]:
    """Split 'a, b, c' where each element may be a parenthesized tuple."""
    parts, depth, cur = [], 0, ""
    for ch in args:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]
