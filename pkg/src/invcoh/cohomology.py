"""Bar complex of a finite abelian group and the explicit low-degree
Eilenberg-MacLane style complex whose normalized 3-cocycle pairs (alpha,
beta) are exactly the extended symmetric monoidal structures of the models
module.

The chain groups are free on tuples of group elements:

  E_1 = Z<A>   E_2 = Z<A^2>   E_3 = Z<A^3> + Z<A^2>'
  E_4 = Z<A^4> + Z<A^3>_1 + Z<A^3>_2 + Z<A^2>''

with differentials

  d2[a|b]      = [a] - [a+b] + [b]
  d3[a|b|c]    = [b|c] - [a+b|c] + [a|b+c] - [a|b]
  d3[a|b]'     = [a|b] - [b|a]
  d4[a|b|c|d]  = [b|c|d] - [a+b|c|d] + [a|b+c|d] - [a|b|c+d] + [a|b|c]
  d4[a|b|c]_1  = [a|b|c] - [a|c|b] + [c|a|b] - [b|c]' + [a+b|c]' - [a|c]'
  d4[a|b|c]_2  = [a|b|c] - [b|a|c] + [b|c|a] + [a|b]' - [a|b+c]' + [a|c]'
  d4[a|b]''    = [a|b]' + [b|a]'

Coefficient computations are done one cyclic factor of N at a time with the
Smith-form machinery in linalg; homology over the integers comes from ranks
and invariant factors of the differentials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .linalg import (
    invariant_factors,
    kernel_mod,
    quotient_invariants,
    smith_normal_form,
    solve_mod,
    subgroup_order,
)
from .models import Element, FiniteAbelianGroup, ModelError


class CohomologyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# bar complex


@dataclass(frozen=True)
class Cochain:
    """A function A^k -> N stored as a table on tuples of elements."""

    A: FiniteAbelianGroup
    N: FiniteAbelianGroup
    degree: int
    table: dict

    def __call__(self, *args: Element) -> Element:
        if len(args) != self.degree:
            raise CohomologyError(f"expected {self.degree} arguments")
        return self.N.reduce(self.table.get(tuple(args), self.N.zero()))

    def is_normalized(self) -> bool:
        zero = self.A.zero()
        return all(
            self(*t) == self.N.zero()
            for t in itertools.product(self.A.elements(), repeat=self.degree)
            if zero in t
        )


def bar_delta(c: Cochain) -> Cochain:
    """Standard bar differential C^k -> C^(k+1); preserves normalization."""
    if c.degree > 3:
        raise CohomologyError("degrees above 3 are not needed here")
    A, N = c.A, c.N
    k = c.degree
    table = {}
    for t in itertools.product(A.elements(), repeat=k + 1):
        val = c(*t[1:])
        for i in range(k):
            merged = t[:i] + (A.add(t[i], t[i + 1]),) + t[i + 2 :]
            term = c(*merged)
            val = N.add(val, term if i % 2 else N.neg(term))
        last = c(*t[:-1])
        val = N.add(val, N.neg(last) if k % 2 == 0 else last)
        table[t] = val
    return Cochain(A, N, k + 1, table)


def bar_basis(A: FiniteAbelianGroup, k: int) -> list[tuple]:
    return list(itertools.product(A.elements(), repeat=k))


def bar_d_matrix(A: FiniteAbelianGroup, k: int) -> np.ndarray:
    """Matrix of d_k: Z<A^k> -> Z<A^(k-1)> (rows indexed by the target)."""
    src = bar_basis(A, k)
    dst = bar_basis(A, k - 1)
    index = {t: i for i, t in enumerate(dst)}
    mat = np.zeros((len(dst), len(src)), dtype=np.int64)
    for j, t in enumerate(src):
        if k == 1:
            continue
        mat[index[t[1:]], j] += 1
        for i in range(k - 1):
            merged = t[:i] + (A.add(t[i], t[i + 1]),) + t[i + 2 :]
            mat[index[merged], j] += -1 if i % 2 == 0 else 1
        mat[index[t[:-1]], j] += 1 if k % 2 == 0 else -1
    return mat


# ---------------------------------------------------------------------------
# the extended complex


def em_basis(A: FiniteAbelianGroup, k: int) -> list[tuple]:
    els = A.elements()
    if k == 1:
        return [("b", (a,)) for a in els]
    if k == 2:
        return [("b", t) for t in itertools.product(els, repeat=2)]
    if k == 3:
        return [("b", t) for t in itertools.product(els, repeat=3)] + [
            ("s", t) for t in itertools.product(els, repeat=2)
        ]
    if k == 4:
        return (
            [("b", t) for t in itertools.product(els, repeat=4)]
            + [("h1", t) for t in itertools.product(els, repeat=3)]
            + [("h2", t) for t in itertools.product(els, repeat=3)]
            + [("s", t) for t in itertools.product(els, repeat=2)]
        )
    raise CohomologyError("the complex lives in degrees 1..4")


def _em_d_terms(A: FiniteAbelianGroup, gen: tuple) -> list[tuple[tuple, int]]:
    tag, t = gen
    add = A.add
    if tag == "b" and len(t) == 2:
        a, b = t
        return [(("b", (a,)), 1), (("b", (add(a, b),)), -1), (("b", (b,)), 1)]
    if tag == "b" and len(t) == 3:
        a, b, c = t
        return [
            (("b", (b, c)), 1),
            (("b", (add(a, b), c)), -1),
            (("b", (a, add(b, c))), 1),
            (("b", (a, b)), -1),
        ]
    if tag == "s" and len(t) == 2:
        a, b = t
        return [(("b", (a, b)), -1), (("b", (b, a)), 1)]
    if tag == "b" and len(t) == 4:
        a, b, c, d = t
        return [
            (("b", (b, c, d)), 1),
            (("b", (add(a, b), c, d)), -1),
            (("b", (a, add(b, c), d)), 1),
            (("b", (a, b, add(c, d))), -1),
            (("b", (a, b, c)), 1),
        ]
    if tag == "h1":
        a, b, c = t
        return [
            (("b", (a, b, c)), 1),
            (("b", (a, c, b)), -1),
            (("b", (c, a, b)), 1),
            (("s", (b, c)), 1),
            (("s", (add(a, b), c)), -1),
            (("s", (a, c)), 1),
        ]
    if tag == "h2":
        a, b, c = t
        return [
            (("b", (a, b, c)), 1),
            (("b", (b, a, c)), -1),
            (("b", (b, c, a)), 1),
            (("s", (a, b)), -1),
            (("s", (a, add(b, c))), 1),
            (("s", (a, c)), -1),
        ]
    raise CohomologyError(f"no differential rule for {gen}")


def em_d_matrix(A: FiniteAbelianGroup, k: int) -> np.ndarray:
    """Matrix of d_k: E_k -> E_(k-1); d_1 = 0."""
    src = em_basis(A, k)
    if k == 1:
        return np.zeros((0, len(src)), dtype=np.int64)
    dst = em_basis(A, k - 1)
    index = {g: i for i, g in enumerate(dst)}
    mat = np.zeros((len(dst), len(src)), dtype=np.int64)
    for j, gen in enumerate(src):
        if gen[0] == "s" and k == 4:
            a, b = gen[1]
            mat[index[("s", (a, b))], j] -= 1
            mat[index[("s", (b, a))], j] -= 1
            continue
        for target, coeff in _em_d_terms(A, gen):
            mat[index[target], j] += coeff
    return mat


def em_homology(A: FiniteAbelianGroup, k: int) -> tuple[int, list[int]]:
    """(free rank, invariant factors > 1) of H_k of the extended complex,
    k in 1..3, over the integers."""
    if k not in (1, 2, 3):
        raise CohomologyError("homology computed in degrees 1..3")
    n_k = len(em_basis(A, k))
    r_k = len(invariant_factors(em_d_matrix(A, k)))
    facs = invariant_factors(em_d_matrix(A, k + 1))
    r_next = len(facs)
    free = n_k - r_k - r_next
    torsion = [d for d in facs if d > 1]
    return free, torsion


def _degenerate_indices(A: FiniteAbelianGroup, basis: list[tuple]) -> list[int]:
    zero = A.zero()
    return [i for i, (_, t) in enumerate(basis) if zero in t]


def _coboundary_matrix(A: FiniteAbelianGroup, k: int) -> np.ndarray:
    """Matrix of delta^(k-1): C^(k-1) -> C^k on the extended complex, the
    transpose of d_k."""
    return em_d_matrix(A, k).T


def em_cohomology(
    A: FiniteAbelianGroup, N: FiniteAbelianGroup, k: int
) -> tuple[list[int], list[dict]]:
    """(invariant factors > 1, representative cochains) of H^k of the
    extended complex with coefficients in N, k in 1..3.  Representatives are
    tables keyed by the tagged basis tuples."""
    if k not in (1, 2, 3):
        raise CohomologyError("cohomology computed in degrees 1..3")
    basis = em_basis(A, k)
    ker_mat = _coboundary_matrix(A, k + 1)  # delta^k, rows E_(k+1)
    im_mat = _coboundary_matrix(A, k) if k > 1 else np.zeros((len(basis), 0), dtype=np.int64)
    invs: list[int] = []
    reps: list[dict] = []
    for factor_idx, m in enumerate(N.moduli):
        if m == 0:
            raise CohomologyError("coefficients must be finite")
        gens = [im_mat[:, j] for j in range(im_mat.shape[1])]
        facs, vecs = quotient_invariants(ker_mat, gens, m)
        invs.extend(facs)
        for vec in vecs:
            table = {}
            for i, key in enumerate(basis):
                val = [0] * N.rank
                val[factor_idx] = int(vec[i]) % m
                if any(val):
                    table[key] = N.reduce(val)
            reps.append(table)
    return sorted(invs), reps


def is_em_cocycle_pair(
    A: FiniteAbelianGroup, N: FiniteAbelianGroup, alpha: dict, beta: dict
) -> bool:
    """True when (alpha, beta), as one degree-3 cochain of the extended
    complex, is killed by delta^3.  Missing table entries count as zero."""
    basis = em_basis(A, 3)
    delta3 = _coboundary_matrix(A, 4)
    for j, m in enumerate(N.moduli):
        x = np.zeros(len(basis), dtype=np.int64)
        for i, (tag, t) in enumerate(basis):
            table = alpha if tag == "b" else beta
            x[i] = N.reduce(table.get(t, N.zero()))[j]
        if ((delta3 @ x) % m).any():
            return False
    return True


def em_cocycle_generators(
    A: FiniteAbelianGroup, N: FiniteAbelianGroup, normalized: bool = False
) -> list[tuple[dict, dict, int]]:
    """Generators of the group of 3-cocycle pairs (alpha, beta), each as
    (alpha_table, beta_table, order).  With normalized=True the degenerate
    coordinates are forced to zero."""
    basis = em_basis(A, 3)
    delta3 = _coboundary_matrix(A, 4)
    rows = [delta3]
    if normalized:
        deg = _degenerate_indices(A, basis)
        extra = np.zeros((len(deg), len(basis)), dtype=np.int64)
        for r, i in enumerate(deg):
            extra[r, i] = 1
        rows.append(extra)
    mat = np.vstack(rows)
    out = []
    for factor_idx, m in enumerate(N.moduli):
        for vec, order in kernel_mod(mat, m):
            alpha_table: dict = {}
            beta_table: dict = {}
            for i, (tag, t) in enumerate(basis):
                v = int(vec[i]) % m
                if v == 0:
                    continue
                val = [0] * N.rank
                val[factor_idx] = v
                if tag == "b":
                    alpha_table[t] = N.reduce(val)
                else:
                    beta_table[t] = N.reduce(val)
            out.append((alpha_table, beta_table, order))
    return out


def enumerate_span(
    A: FiniteAbelianGroup,
    N: FiniteAbelianGroup,
    gens: list[tuple[dict, dict, int]],
    cap: Optional[int] = None,
) -> list[tuple[dict, dict]]:
    """All (alpha, beta) pairs in the span of the generators (or raise if
    there are more than cap)."""
    total = 1
    for _, _, order in gens:
        total *= order
    if cap is not None and total > cap:
        raise CohomologyError(f"span has {total} elements, above the cap {cap}")
    out = []
    for ks in itertools.product(*(range(order) for _, _, order in gens)):
        alpha: dict = {}
        beta: dict = {}
        for k, (at, bt, _) in zip(ks, gens):
            for t, v in at.items():
                alpha[t] = N.add(alpha.get(t, N.zero()), N.scale(k, v))
            for t, v in bt.items():
                beta[t] = N.add(beta.get(t, N.zero()), N.scale(k, v))
        alpha = {t: v for t, v in alpha.items() if v != N.zero()}
        beta = {t: v for t, v in beta.items() if v != N.zero()}
        out.append((alpha, beta))
    return out


# ---------------------------------------------------------------------------
# comparison with the bar complex


def alt_bilinear_forms(A: FiniteAbelianGroup, N: FiniteAbelianGroup) -> list[Cochain]:
    """All antisymmetric bilinear forms A x A -> N (beta(x,y) = -beta(y,x)
    with bilinearity; the diagonal is allowed to be nonzero 2-torsion)."""
    moduli = A.moduli
    r = len(moduli)
    els_N = N.elements()

    def ok(i: int, j: int, c: Element) -> bool:
        return (
            N.scale(moduli[i], c) == N.zero() and N.scale(moduli[j], c) == N.zero()
        )

    slots = [(i, j) for i in range(r) for j in range(i, r)]
    choices = []
    for i, j in slots:
        if i == j:
            choices.append([c for c in els_N if ok(i, j, c) and N.add(c, c) == N.zero()])
        else:
            choices.append([c for c in els_N if ok(i, j, c)])
    out = []
    for pick in itertools.product(*choices):
        c = {}
        for (i, j), v in zip(slots, pick):
            c[(i, j)] = v
            c[(j, i)] = N.neg(v)
        table = {}
        for x in A.elements():
            for y in A.elements():
                val = N.zero()
                for i in range(r):
                    for j in range(r):
                        val = N.add(val, N.scale(x[i] * y[j], c[(i, j)]))
                if val != N.zero():
                    table[(x, y)] = val
        out.append(Cochain(A, N, 2, table))
    return out


def two_torsion_homs(A: FiniteAbelianGroup, N: FiniteAbelianGroup) -> list[dict]:
    """All homomorphisms A -> N killed by 2, i.e. Hom(A/2A, N), as tables."""
    moduli = A.moduli
    r = len(moduli)
    choices = []
    for i in range(r):
        choices.append(
            [
                c
                for c in N.elements()
                if N.add(c, c) == N.zero() and N.scale(moduli[i], c) == N.zero()
            ]
        )
    out = []
    for pick in itertools.product(*choices):
        table = {}
        for x in A.elements():
            val = N.zero()
            for i in range(r):
                val = N.add(val, N.scale(x[i], pick[i]))
            table[x] = val
        out.append(table)
    return out


def comparison_to_bar(A: FiniteAbelianGroup, N: FiniteAbelianGroup) -> dict:
    """Executable form of the vanishing of the map into bar H^3: for every
    3-cocycle pair, the alpha component is a bar coboundary (witnessed by a
    solver certificate on each generator), and the diagonal-restriction map
    from antisymmetric bilinear forms onto Hom(A/2A, N) is surjective."""
    gens = em_cocycle_generators(A, N)
    b3 = bar_basis(A, 3)
    b2 = bar_basis(A, 2)
    delta2 = bar_d_matrix(A, 3).T  # C^2 -> C^3, rows indexed by triples
    witnesses = []
    all_solvable = True
    for alpha_table, beta_table, order in gens:
        # each generator lives in one cyclic factor of N
        used = {
            j
            for v in itertools.chain(alpha_table.values(), beta_table.values())
            for j in range(N.rank)
            if v[j] != 0
        }
        sigma_total = {}
        solvable = True
        for j in sorted(used):
            m = N.moduli[j]
            rhs = [alpha_table.get(t, N.zero())[j] for t in b3]
            x = solve_mod(delta2, rhs, m)
            if x is None:
                solvable = False
                break
            for idx, t in enumerate(b2):
                val = list(sigma_total.get(t, N.zero()))
                val[j] = int(x[idx]) % m
                sigma_total[t] = N.reduce(val)
        all_solvable = all_solvable and solvable
        witnesses.append(
            {
                "alpha": alpha_table,
                "beta": beta_table,
                "order": order,
                "sigma": sigma_total if solvable else None,
            }
        )
    forms = alt_bilinear_forms(A, N)
    targets = two_torsion_homs(A, N)
    image = {tuple(sorted((x, f(x, x)) for x in A.elements())) for f in forms}
    wanted = {tuple(sorted(t.items())) for t in targets}
    return {
        "alpha_always_coboundary": all_solvable,
        "witnesses": witnesses,
        "alt_bilinear_count": len(forms),
        "diagonal_map_surjective": wanted <= image,
        "hom_a2a_n_count": len(targets),
    }


# ---------------------------------------------------------------------------
# trivializations and ring classification


def _norm_pairs(A: FiniteAbelianGroup) -> list[tuple[Element, Element]]:
    zero = A.zero()
    return [
        (a, b)
        for a in A.elements()
        for b in A.elements()
        if a != zero and b != zero
    ]


def _norm_delta2_matrix(A: FiniteAbelianGroup) -> np.ndarray:
    """delta: normalized C^2 -> C^3, rows indexed by all-nonzero triples."""
    pairs = _norm_pairs(A)
    index = {p: i for i, p in enumerate(pairs)}
    zero = A.zero()
    triples = [
        t
        for t in itertools.product(A.elements(), repeat=3)
        if zero not in t
    ]
    mat = np.zeros((len(triples), len(pairs)), dtype=np.int64)
    for r, (a, b, c) in enumerate(triples):
        for p, coeff in (
            ((b, c), 1),
            ((A.add(a, b), c), -1),
            ((a, A.add(b, c)), 1),
            ((a, b), -1),
        ):
            if p in index:  # terms with a zero slot vanish on normalized cochains
                mat[r, index[p]] += coeff
    return mat, triples, pairs


def trivialize(
    A: FiniteAbelianGroup,
    N: FiniteAbelianGroup,
    alpha: Cochain | dict,
    cap: int = 4096,
) -> dict:
    """All normalized sigma with delta sigma = alpha: one particular solution
    plus the group Z^2_norm it is a torsor over (enumerated up to cap,
    otherwise returned by generators)."""
    mat, triples, pairs = _norm_delta2_matrix(A)
    table = alpha.table if isinstance(alpha, Cochain) else alpha
    get = lambda t: N.reduce(table.get(t, N.zero()))
    particular = {}
    for j, m in enumerate(N.moduli):
        rhs = [get(t)[j] for t in triples]
        x = solve_mod(mat, rhs, m)
        if x is None:
            return {"solvable": False, "particular": None, "z2_generators": [], "solutions": None}
        for idx, p in enumerate(pairs):
            val = list(particular.get(p, N.zero()))
            val[j] = int(x[idx]) % m
            particular[p] = N.reduce(val)
    gens = []
    for j, m in enumerate(N.moduli):
        for vec, order in kernel_mod(mat, m):
            t = {}
            for idx, p in enumerate(pairs):
                v = int(vec[idx]) % m
                if v:
                    val = [0] * N.rank
                    val[j] = v
                    t[p] = N.reduce(val)
            gens.append((t, order))
    total = 1
    for _, order in gens:
        total *= order
    solutions = None
    if total <= cap:
        solutions = []
        for ks in itertools.product(*(range(o) for _, o in gens)):
            s = dict(particular)
            for k, (t, _) in zip(ks, gens):
                for p, v in t.items():
                    s[p] = N.add(s.get(p, N.zero()), N.scale(k, v))
            solutions.append({p: v for p, v in s.items() if v != N.zero()})
    return {
        "solvable": True,
        "particular": {p: v for p, v in particular.items() if v != N.zero()},
        "z2_generators": gens,
        "z2_order": total,
        "solutions": solutions,
    }


@dataclass(frozen=True)
class ClassificationProblem:
    A: FiniteAbelianGroup
    N: FiniteAbelianGroup
    alpha: Optional[dict] = None  # defaults to 0


def classify_rings(p: ClassificationProblem, cap: int = 4096) -> dict:
    """Trivializations of alpha modulo the unit-twisting action: classes are
    Z^2_norm modulo coboundaries of normalized 1-cochains, with a witnessing
    u for same-class pairs; the class count is checked against |H^2(A; N)|
    from the full bar complex."""
    A, N = p.A, p.N
    triv = trivialize(A, N, p.alpha or {}, cap=cap)
    if not triv["solvable"]:
        raise CohomologyError("alpha is not trivializable")
    if triv["solutions"] is None:
        raise CohomologyError("too many trivializations to classify at this cap")
    mat, triples, pairs = _norm_delta2_matrix(A)
    zero = A.zero()
    singles = [a for a in A.elements() if a != zero]
    # delta^1 on normalized u, restricted to all-nonzero pairs
    d1 = np.zeros((len(pairs), len(singles)), dtype=np.int64)
    sindex = {a: i for i, a in enumerate(singles)}
    for r, (a, b) in enumerate(pairs):
        d1[r, sindex[a]] += 1
        d1[r, sindex[b]] += 1
        s = A.add(a, b)
        if s in sindex:
            d1[r, sindex[s]] -= 1

    def coboundary_witness(theta: dict):
        """u with delta u = theta, or None."""
        u_table = {}
        for j, m in enumerate(N.moduli):
            rhs = [N.reduce(theta.get(pr, N.zero()))[j] for pr in pairs]
            x = solve_mod(d1, rhs, m)
            if x is None:
                return None
            for idx, a in enumerate(singles):
                val = list(u_table.get(a, N.zero()))
                val[j] = int(x[idx]) % m
                u_table[a] = N.reduce(val)
        return u_table

    def diff(s1: dict, s2: dict) -> dict:
        keys = set(s1) | set(s2)
        return {
            k: N.sub(N.reduce(s1.get(k, N.zero())), N.reduce(s2.get(k, N.zero())))
            for k in keys
        }

    classes: list[dict] = []
    for sol in triv["solutions"]:
        placed = False
        for cls in classes:
            u = coboundary_witness(diff(sol, cls["representative"]))
            if u is not None:
                cls["members"].append({"sigma": sol, "witness_u": u})
                placed = True
                break
        if not placed:
            classes.append({"representative": sol, "members": []})

    # independent order of H^2(A; N) from the full bar complex
    ker_mat = bar_d_matrix(A, 3).T
    im_mat = bar_d_matrix(A, 2).T
    h2_order = 1
    for m in N.moduli:
        facs, _ = quotient_invariants(
            ker_mat, [im_mat[:, j] for j in range(im_mat.shape[1])], m
        )
        for f in facs:
            h2_order *= f
    return {
        "classes": classes,
        "class_count": len(classes),
        "h2_order": h2_order,
        "consistent": len(classes) == h2_order,
    }
