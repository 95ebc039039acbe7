"""The free symmetric monoidal category with left duals on the generators.

Objects are tensor words; a morphism w1 -> w2 is a sign- and label-compatible
perfect matching between the signed letter lists of w1 and w2, together with
a formal multiset of loop labels (one entry per closed loop that has been
discarded during composition).  Only the incidence structure is stored, no
planar data.

Vertices are addressed ('d', k) / ('c', k) by position in the letter list.
An edge always runs from its tail to its head, where a vertex is a tail
exactly when its effective sign is -: for domain vertices the letter sign is
flipped, for codomain vertices it is taken as is.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .words import (
    Dual,
    Tensor,
    TensorWord,
    UNIT,
    letters,
    to_text,
)

Vertex = tuple[str, int]  # ('d', ordinal) or ('c', ordinal)
Edge = tuple[Vertex, Vertex]  # (tail, head)


class KLError(ValueError):
    pass


def _freeze_loops(loops: Counter | dict | Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    c = Counter(dict(loops))
    return tuple(sorted((g, m) for g, m in c.items() if m))


@dataclass(frozen=True)
class KLMorphism:
    src: TensorWord
    dst: TensorWord
    edges: frozenset[Edge]
    loops: tuple[tuple[int, int], ...] = ()

    def loop_counter(self) -> Counter:
        return Counter(dict(self.loops))

    def validate(self) -> None:
        dom = letters(self.src)
        cod = letters(self.dst)
        # effective sign: - means tail, + means head
        eff = {("d", l.ordinal): -l.sign for l in dom}
        eff.update({("c", l.ordinal): l.sign for l in cod})
        gen = {("d", l.ordinal): l.generator for l in dom}
        gen.update({("c", l.ordinal): l.generator for l in cod})
        seen: set[Vertex] = set()
        for tail, head in self.edges:
            for v in (tail, head):
                if v not in eff:
                    raise KLError(f"edge endpoint {v} is not a vertex")
                if v in seen:
                    raise KLError(f"vertex {v} lies on two edges")
                seen.add(v)
            if eff[tail] != -1 or eff[head] != 1:
                raise KLError(f"edge {tail}->{head} violates the sign rule")
            if gen[tail] != gen[head]:
                raise KLError(f"edge {tail}->{head} joins different generators")
        if len(seen) != len(dom) + len(cod):
            raise KLError("some vertex lies on no edge")


def _oriented(u: Vertex, v: Vertex, eff: dict[Vertex, int]) -> Edge:
    if eff[u] == -1 and eff[v] == 1:
        return (u, v)
    if eff[v] == -1 and eff[u] == 1:
        return (v, u)
    raise KLError(f"cannot orient edge {u}--{v}")


def _vertex_tables(src: TensorWord, dst: TensorWord):
    dom = letters(src)
    cod = letters(dst)
    eff = {("d", l.ordinal): -l.sign for l in dom}
    eff.update({("c", l.ordinal): l.sign for l in cod})
    gen = {("d", l.ordinal): l.generator for l in dom}
    gen.update({("c", l.ordinal): l.generator for l in cod})
    return dom, cod, eff, gen


def _morphism(src: TensorWord, dst: TensorWord, pairs: Iterable[tuple[Vertex, Vertex]],
              loops=()) -> KLMorphism:
    _, _, eff, _ = _vertex_tables(src, dst)
    edges = frozenset(_oriented(u, v, eff) for u, v in pairs)
    m = KLMorphism(src, dst, edges, _freeze_loops(Counter(dict(loops)) if not isinstance(loops, Counter) else loops))
    m.validate()
    return m


def identity(w: TensorWord) -> KLMorphism:
    k = len(letters(w))
    return _morphism(w, w, [(("d", i), ("c", i)) for i in range(k)])


def retree(src: TensorWord, dst: TensorWord) -> KLMorphism:
    """Identity correspondence between two words with equal letter lists:
    associators, unitors, and double-dual style canonical pictures."""
    ls, ld = letters(src), letters(dst)
    if [(l.generator, l.sign) for l in ls] != [(l.generator, l.sign) for l in ld]:
        raise KLError("retree needs equal letter lists")
    return _morphism(src, dst, [(("d", i), ("c", i)) for i in range(len(ls))])


def symmetry(u: TensorWord, v: TensorWord) -> KLMorphism:
    """t_{u,v}: u*v -> v*u, the block-permutation correspondence."""
    ku, kv = len(letters(u)), len(letters(v))
    pairs = [(("d", i), ("c", kv + i)) for i in range(ku)]
    pairs += [(("d", ku + j), ("c", j)) for j in range(kv)]
    return _morphism(Tensor(u, v), Tensor(v, u), pairs)


def cup(i: int) -> KLMorphism:
    """alpha_i: S -> X_i^-1 * X_i."""
    return _morphism(UNIT, Tensor(_dual_letter(i), _letter(i)), [(("c", 0), ("c", 1))])


def cup_crossed(i: int) -> KLMorphism:
    """t . alpha_i: S -> X_i * X_i^-1."""
    return _morphism(UNIT, Tensor(_letter(i), _dual_letter(i)), [(("c", 0), ("c", 1))])


def cap(i: int) -> KLMorphism:
    """alphahat_i: X_i * X_i^-1 -> S."""
    return _morphism(Tensor(_letter(i), _dual_letter(i)), UNIT, [(("d", 0), ("d", 1))])


def cap_crossed(i: int) -> KLMorphism:
    """alphahat_i . t: X_i^-1 * X_i -> S."""
    return _morphism(Tensor(_dual_letter(i), _letter(i)), UNIT, [(("d", 0), ("d", 1))])


def _letter(i: int):
    from .words import Gen

    return Gen(i)


def _dual_letter(i: int):
    from .words import DualGen

    return DualGen(i)


def elementary(kind: str, **kw) -> KLMorphism:
    """Single entry point for the elementary pictures.

    kinds: identity(w), retree(src, dst), symmetry(u, v),
           cup(i), cup_crossed(i), cap(i), cap_crossed(i).
    """
    table = {
        "identity": lambda: identity(kw["w"]),
        "retree": lambda: retree(kw["src"], kw["dst"]),
        "symmetry": lambda: symmetry(kw["u"], kw["v"]),
        "cup": lambda: cup(kw["i"]),
        "cup_crossed": lambda: cup_crossed(kw["i"]),
        "cap": lambda: cap(kw["i"]),
        "cap_crossed": lambda: cap_crossed(kw["i"]),
    }
    if kind not in table:
        raise KLError(f"unknown elementary move kind: {kind}")
    return table[kind]()


def compose(g: KLMorphism, f: KLMorphism) -> KLMorphism:
    """g . f, discarding middle-level loops into the loop multiset."""
    if f.dst != g.src:
        raise KLError(
            f"endpoint mismatch: composing through {to_text(f.dst)} vs {to_text(g.src)}"
        )
    mid = letters(f.dst)
    mf: dict[Vertex, Vertex] = {}
    for a, b in f.edges:
        mf[a] = b
        mf[b] = a
    mg: dict[Vertex, Vertex] = {}
    for a, b in g.edges:
        mg[a] = b
        mg[b] = a

    _, _, eff, _ = _vertex_tables(f.src, g.dst)
    out_pairs: list[tuple[Vertex, Vertex]] = []
    visited_mid: set[int] = set()

    def follow(start: Vertex, layer: str) -> Vertex:
        # walk alternately through f and g edges until leaving the middle
        cur, lay = start, layer
        while True:
            nxt = (mf if lay == "f" else mg)[cur]
            side, k = nxt
            in_middle = (lay == "f" and side == "c") or (lay == "g" and side == "d")
            if not in_middle:
                return nxt
            visited_mid.add(k)
            cur = (("d", k) if lay == "f" else ("c", k))
            visited_mid.add(k)
            lay = "g" if lay == "f" else "f"

    outer_f = {v for e in f.edges for v in e if v[0] == "d"}
    outer_g = {v for e in g.edges for v in e if v[0] == "c"}
    done: set[Vertex] = set()
    for v in sorted(outer_f) + sorted(outer_g):
        if v in done:
            continue
        lay = "f" if v in outer_f else "g"
        end = follow(v, lay)
        # both endpoints live in the outer layers; record once
        done.add(v)
        done.add(end)
        out_pairs.append((v, end))

    loops = f.loop_counter() + g.loop_counter()
    for l in mid:
        k = l.ordinal
        if k in visited_mid:
            continue
        # trace the closed cycle through this middle vertex
        cur, lay = ("c", k), "f"
        while True:
            visited_mid.add(cur[1])
            nxt = (mf if lay == "f" else mg)[cur]
            visited_mid.add(nxt[1])
            cur = (("d", nxt[1]) if lay == "f" else ("c", nxt[1]))
            lay = "g" if lay == "f" else "f"
            if cur == ("c", k) and lay == "f":
                break
        loops[l.generator] += 1

    # fix outer pair endpoints: an endpoint found on the f side keeps its
    # tag 'd'; one on the g side keeps 'c' -- both already correct.
    return _morphism(f.src, g.dst, out_pairs, loops)


def loops_via_components(g: KLMorphism, f: KLMorphism) -> Counter:
    """Independent loop count for compose(g, f): union-find over the glued
    edge set; a component with no outer vertex is a loop."""
    if f.dst != g.src:
        raise KLError("endpoint mismatch")
    # nodes: ('f','d',k), ('m',k), ('g','c',k); f-cod and g-dom both map to m
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        for v in (x, y):
            parent.setdefault(v, v)
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    def node(layer: str, v: Vertex):
        side, k = v
        if layer == "f" and side == "c":
            return ("m", k)
        if layer == "g" and side == "d":
            return ("m", k)
        return (layer, side, k)

    for a, b in f.edges:
        union(node("f", a), node("f", b))
    for a, b in g.edges:
        union(node("g", a), node("g", b))
    gen_of_mid = {l.ordinal: l.generator for l in letters(f.dst)}
    outer_roots = {
        find(x)
        for x in parent
        if x[0] in ("f", "g")
    }
    loops: Counter = Counter()
    seen_roots: set = set()
    for l in letters(f.dst):
        r = find(("m", l.ordinal))
        if r in outer_roots or r in seen_roots:
            continue
        seen_roots.add(r)
        loops[gen_of_mid[l.ordinal]] += 1
    return loops + f.loop_counter() + g.loop_counter()


def tensor(f: KLMorphism, g: KLMorphism) -> KLMorphism:
    """Side-by-side juxtaposition; loops add."""
    kd = len(letters(f.src))
    kc = len(letters(f.dst))

    def shift(v: Vertex) -> Vertex:
        side, k = v
        return (side, k + (kd if side == "d" else kc))

    pairs = list(f.edges) + [(shift(a), shift(b)) for a, b in g.edges]
    return _morphism(
        Tensor(f.src, g.src),
        Tensor(f.dst, g.dst),
        pairs,
        f.loop_counter() + g.loop_counter(),
    )


def trace_kl(f: KLMorphism) -> KLMorphism:
    """Close an endomorphism up: join dom k to cod k for every letter and
    count the resulting components, one loop label each."""
    if f.src != f.dst:
        raise KLError("trace needs src = dst")
    lets = letters(f.src)
    m: dict[Vertex, Vertex] = {}
    for a, b in f.edges:
        m[a] = b
        m[b] = a
    loops = f.loop_counter()
    seen: set[int] = set()
    for l in lets:
        if l.ordinal in seen:
            continue
        # cycle alternates f edges and closure edges (d,k)--(c,k)
        k = l.ordinal
        cur: Vertex = ("d", k)
        while True:
            seen.add(cur[1])
            nxt = m[cur]
            seen.add(nxt[1])
            cur = (("c", nxt[1]) if nxt[0] == "d" else ("d", nxt[1]))
            if cur == ("d", k):
                break
        loops[l.generator] += 1
    return KLMorphism(UNIT, UNIT, frozenset(), _freeze_loops(loops))


def to_record(m: KLMorphism) -> str:
    """Structured-text record: words, letter lists, edges, loop multiset."""

    def letter_str(l):
        return f"X{l.generator}{'+' if l.sign > 0 else '-'}"

    lines = [
        f"src: {to_text(m.src)}",
        f"dst: {to_text(m.dst)}",
        "dom: " + " ".join(letter_str(l) for l in letters(m.src)),
        "cod: " + " ".join(letter_str(l) for l in letters(m.dst)),
        "edges: "
        + " ".join(
            f"({t[0]}{t[1]},{h[0]}{h[1]})" for t, h in sorted(m.edges)
        ),
        "loops: " + " ".join(f"X{g}:{c}" for g, c in m.loops),
    ]
    return "\n".join(lines) + "\n"
