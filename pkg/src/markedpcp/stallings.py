"""Base-pointed labeled graphs: bouquets of morphisms, label-synchronised
products, core graphs, and petal extraction.

Edges always carry positive labels; traversing a negative letter means
walking an edge against its direction.  Petal paths are stored as sequences
of (edge id, direction) pairs with direction +1 (forward) or -1 (reversed).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, replace
from functools import lru_cache

from .morphisms import Morphism
from .words import GROUP, Alphabet, Letter, Word

Petal = tuple[str, tuple[tuple[int, int], ...]]


@dataclass(frozen=True)
class StallingsGraph:
    alphabet: Alphabet
    num_vertices: int
    edges: tuple[tuple[int, int, int], ...]  # (source, target, label index)
    base: int = 0
    petals: tuple[Petal, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.num_vertices < 1:
            raise ValueError("a graph has at least its base vertex")
        if not 0 <= self.base < self.num_vertices:
            raise ValueError("base vertex out of range")
        for s, t, lab in self.edges:
            if not (0 <= s < self.num_vertices and 0 <= t < self.num_vertices):
                raise ValueError("edge endpoint out of range")
            if not 0 <= lab < len(self.alphabet):
                raise ValueError("edge label out of range")

    def degree(self, v: int) -> int:
        # a loop contributes twice, so a vertex carrying only a loop is
        # never pruned by coring
        return sum((s == v) + (t == v) for s, t, _ in self.edges)


def _edge_head(edge: tuple[int, int, int], direction: int) -> int:
    return edge[1] if direction > 0 else edge[0]


def bouquet(f: Morphism) -> StallingsGraph:
    """One petal per generator, spelling its image as a path from the base
    back to the base; negative letters become reversed edges."""
    if f.mode != GROUP:
        raise ValueError("bouquets are built from group-mode morphisms")
    edges: list[tuple[int, int, int]] = []
    petals: list[Petal] = []
    num_vertices = 1
    for sym, img in zip(f.domain.symbols, f.images):
        if not img:
            raise ValueError(f"image of {sym} is empty: petal would be degenerate")
        path = []
        prev = 0
        for pos, l in enumerate(img.letters):
            nxt = 0 if pos == len(img.letters) - 1 else num_vertices
            if pos < len(img.letters) - 1:
                num_vertices += 1
            if l.sign > 0:
                edges.append((prev, nxt, l.index))
                path.append((len(edges) - 1, 1))
            else:
                edges.append((nxt, prev, l.index))
                path.append((len(edges) - 1, -1))
            prev = nxt
        petals.append((sym, tuple(path)))
    return StallingsGraph(f.codomain, num_vertices, tuple(edges), 0, tuple(petals))


def is_folded_both_ways(graph: StallingsGraph) -> bool:
    """Deterministic in both directions: no two outgoing edges from a vertex
    share a label, and no two incoming edges share one."""
    outs = Counter((s, lab) for s, _, lab in graph.edges)
    ins = Counter((t, lab) for _, t, lab in graph.edges)
    return all(c == 1 for c in outs.values()) and all(c == 1 for c in ins.values())


def _product_with_pairs(
    g1: StallingsGraph, g2: StallingsGraph
) -> tuple[StallingsGraph, list[tuple[int, int]]]:
    if g1.alphabet != g2.alphabet:
        raise ValueError("product requires a common label alphabet")
    n2 = g2.num_vertices

    def vid(v1: int, v2: int) -> int:
        return v1 * n2 + v2

    by_label: dict[int, list[int]] = {}
    for j, (_, _, lab) in enumerate(g2.edges):
        by_label.setdefault(lab, []).append(j)
    edges: list[tuple[int, int, int]] = []
    pairs: list[tuple[int, int]] = []
    for i, (s1, t1, lab) in enumerate(g1.edges):
        for j in by_label.get(lab, ()):
            s2, t2, _ = g2.edges[j]
            edges.append((vid(s1, s2), vid(t1, t2), lab))
            pairs.append((i, j))
    prod = StallingsGraph(
        g1.alphabet,
        g1.num_vertices * n2,
        tuple(edges),
        vid(g1.base, g2.base),
        None,
    )
    return prod, pairs


def product(g1: StallingsGraph, g2: StallingsGraph) -> StallingsGraph:
    """Label-synchronised product on all vertex pairs, based at the pair of
    base vertices."""
    return _product_with_pairs(g1, g2)[0]


def _core_with_maps(
    graph: StallingsGraph, v: int
) -> tuple[StallingsGraph, list[int], list[int]]:
    """Core of the graph at v plus the surviving old vertex/edge ids."""
    if not 0 <= v < graph.num_vertices:
        raise ValueError("core vertex not in graph")
    alive_edge = [True] * len(graph.edges)
    incident: list[list[int]] = [[] for _ in range(graph.num_vertices)]
    degree = [0] * graph.num_vertices
    for i, (s, t, _) in enumerate(graph.edges):
        incident[s].append(i)
        incident[t].append(i)
        degree[s] += 1
        degree[t] += 1
    queue = deque(u for u in range(graph.num_vertices) if u != v and degree[u] == 1)
    dead = [False] * graph.num_vertices
    while queue:
        u = queue.popleft()
        if dead[u] or degree[u] != 1:
            continue
        dead[u] = True
        for i in incident[u]:
            if not alive_edge[i]:
                continue
            alive_edge[i] = False
            s, t, _ = graph.edges[i]
            for w in (s, t):
                degree[w] -= 1
            other = t if s == u else s
            if other != v and not dead[other] and degree[other] == 1:
                queue.append(other)
    # restrict to the connected component of v; pruning alone can leave
    # stray components of a product graph
    neighbours: list[list[int]] = [[] for _ in range(graph.num_vertices)]
    for i, (s, t, _) in enumerate(graph.edges):
        if alive_edge[i]:
            neighbours[s].append(t)
            neighbours[t].append(s)
    reachable = [False] * graph.num_vertices
    reachable[v] = True
    stack = [v]
    while stack:
        u = stack.pop()
        for w in neighbours[u]:
            if not reachable[w]:
                reachable[w] = True
                stack.append(w)
    kept_vertices = [u for u in range(graph.num_vertices) if reachable[u] and not dead[u]]
    new_id = {u: i for i, u in enumerate(kept_vertices)}
    kept_edges = [
        i
        for i, (s, t, _) in enumerate(graph.edges)
        if alive_edge[i] and reachable[s] and reachable[t]
    ]
    edges = tuple(
        (new_id[graph.edges[i][0]], new_id[graph.edges[i][1]], graph.edges[i][2])
        for i in kept_edges
    )
    core = StallingsGraph(graph.alphabet, len(kept_vertices), edges, new_id[v], None)
    return core, kept_vertices, kept_edges


def core_at(graph: StallingsGraph, v: int) -> StallingsGraph:
    """Maximal subgraph through v with no degree-1 vertices other than
    possibly v itself, restricted to v's connected component."""
    return _core_with_maps(graph, v)[0]


def _petal_label(graph: StallingsGraph, path: tuple[tuple[int, int], ...]) -> list[Letter]:
    return [Letter(graph.edges[e][2], d) for e, d in path]


def _label_key(label: list[Letter]) -> tuple:
    return (len(label), tuple(l.sort_key() for l in label))


def _extract_petals(graph: StallingsGraph) -> tuple[Petal, ...]:
    """Split the graph into closed petal paths at the base.

    Requires a bouquet: every non-base vertex of degree two and all edges
    covered by pairwise disjoint base-to-base circuits.  Each petal is
    oriented so that its label is shortlex-minimal against its inverse, and
    petals are sorted by (first letter, shortlex of label), then named
    p0, p1, ... in that order.
    """
    leaving: dict[int, list[tuple[int, int]]] = {}
    for i, (s, t, _) in enumerate(graph.edges):
        leaving.setdefault(s, []).append((i, 1))
        leaving.setdefault(t, []).append((i, -1))
    unused = sorted(leaving.get(graph.base, []))
    unused_set = set(unused)

    paths: list[tuple[tuple[int, int], ...]] = []
    total_steps = 0
    for start in unused:
        if start not in unused_set:
            continue
        unused_set.discard(start)
        path = [start]
        e, d = start
        cur = _edge_head(graph.edges[e], d)
        while cur != graph.base:
            arrived_back = (e, -d)
            options = [x for x in leaving.get(cur, []) if x != arrived_back]
            if len(options) != 1:
                raise ValueError("graph is not a bouquet at its base")
            e, d = options[0]
            path.append((e, d))
            cur = _edge_head(graph.edges[e], d)
            total_steps += 1
            if total_steps > len(graph.edges) + 1:
                raise ValueError("graph is not a bouquet at its base")
        closing = (e, -d)
        if closing not in unused_set:
            raise ValueError("graph is not a bouquet at its base")
        unused_set.discard(closing)
        paths.append(tuple(path))

    used = Counter(e for path in paths for e, _ in path)
    if len(used) != len(graph.edges) or any(c != 1 for c in used.values()):
        raise ValueError("graph is not a bouquet at its base")

    oriented = []
    for path in paths:
        label = _petal_label(graph, path)
        flipped = tuple((e, -d) for e, d in reversed(path))
        flipped_label = [l.inverse() for l in reversed(label)]
        if _label_key(flipped_label) < _label_key(label):
            path, label = flipped, flipped_label
        oriented.append((path, label))
    oriented.sort(key=lambda pl: (pl[1][0].sort_key(), _label_key(pl[1])))
    return tuple((f"p{i}", path) for i, (path, _) in enumerate(oriented))


def core_of_pair(
    g: Morphism, h: Morphism
) -> tuple[StallingsGraph, tuple[int, ...], tuple[int, ...]]:
    """Core of the product of the two bouquets at the paired base vertices.

    Returns the core (with petal structure attached) and the projections of
    its edges onto the edges of the two bouquets.  For immersions the core
    is always a bouquet; anything else is rejected.
    """
    if g.codomain != h.codomain:
        raise ValueError("core of a pair needs a common codomain")
    gb = bouquet(g)
    hb = bouquet(h)
    if not (is_folded_both_ways(gb) and is_folded_both_ways(hb)):
        raise ValueError("core of a pair is only defined for immersions")
    prod, pairs = _product_with_pairs(gb, hb)
    core, _, kept_edges = _core_with_maps(prod, prod.base)
    g_edges = tuple(pairs[i][0] for i in kept_edges)
    h_edges = tuple(pairs[i][1] for i in kept_edges)
    petals = _extract_petals(core)
    return replace(core, petals=petals), g_edges, h_edges


def _petal_positions(b: StallingsGraph) -> dict[int, tuple[int, int, int]]:
    loc = {}
    for gi, (_, path) in enumerate(b.petals or ()):
        for pos, (e, d) in enumerate(path):
            loc[e] = (gi, pos, d)
    return loc


def _decode_path(
    path: list[tuple[int, int]], b: StallingsGraph, loc: dict[int, tuple[int, int, int]]
) -> tuple[Letter, ...]:
    """Read a closed base-to-base path of a bouquet as a word in its petals."""
    out: list[Letter] = []
    i = 0
    while i < len(path):
        e, d = path[i]
        gi, pos, pd = loc[e]
        petal_path = (b.petals or ())[gi][1]
        n = len(petal_path)
        if d == pd:
            if pos != 0:
                raise ValueError("path is not a concatenation of petal traversals")
            expected = list(petal_path)
            sign = 1
        else:
            if pos != n - 1:
                raise ValueError("path is not a concatenation of petal traversals")
            expected = [(e2, -d2) for e2, d2 in reversed(petal_path)]
            sign = -1
        if path[i : i + n] != expected:
            raise ValueError("path is not a concatenation of petal traversals")
        out.append(Letter(gi, sign))
        i += n
    return tuple(out)


def petals_to_morphisms(
    core: StallingsGraph,
    g_edges: tuple[int, ...],
    h_edges: tuple[int, ...],
    g: Morphism,
    h: Morphism,
) -> tuple[Morphism, Morphism]:
    """Turn the petals of a pair core into morphisms onto the two domains.

    Each core petal, pushed through a projection, traverses whole petals of
    the underlying bouquet; collapsing those traversals to generator letters
    gives the images of a fresh generator per petal.
    """
    if core.petals is None:
        raise ValueError("core carries no petal structure")
    gb = bouquet(g)
    hb = bouquet(h)
    loc_g = _petal_positions(gb)
    loc_h = _petal_positions(hb)
    sigma2 = Alphabet(tuple(name for name, _ in core.petals), GROUP)
    g_images = []
    h_images = []
    for _, path in core.petals:
        pushed_g = [(g_edges[e], d) for e, d in path]
        pushed_h = [(h_edges[e], d) for e, d in path]
        g_images.append(Word(g.domain, _decode_path(pushed_g, gb, loc_g)))
        h_images.append(Word(h.domain, _decode_path(pushed_h, hb, loc_h)))
    g_prime = Morphism(sigma2, g.domain, tuple(g_images))
    h_prime = Morphism(sigma2, h.domain, tuple(h_images))
    return g_prime, h_prime


@lru_cache(maxsize=None)
def _traversal_index(graph: StallingsGraph) -> tuple[dict, dict]:
    forward = {}
    backward = {}
    for s, t, lab in graph.edges:
        forward[(s, lab)] = t
        backward[(t, lab)] = s
    return forward, backward


def membership(graph: StallingsGraph, w: Word) -> bool:
    """Does w label a reduced closed circuit at the base?

    Requires the graph folded both ways, so traversal is deterministic.
    """
    if w.alphabet != graph.alphabet:
        raise ValueError("word does not lie over the graph's label alphabet")
    if not is_folded_both_ways(graph):
        raise ValueError("membership requires a graph folded both ways")
    forward, backward = _traversal_index(graph)
    cur = graph.base
    for l in w.letters:
        nxt = forward.get((cur, l.index)) if l.sign > 0 else backward.get((cur, l.index))
        if nxt is None:
            return False
        cur = nxt
    return cur == graph.base


def export_dot(graph: StallingsGraph) -> str:
    """Deterministic DOT rendering; the base vertex is drawn doubled."""
    lines = ["digraph stallings {"]
    for v in range(graph.num_vertices):
        if v == graph.base:
            lines.append(f"  v{v} [shape=doublecircle];")
        else:
            lines.append(f"  v{v};")
    for s, t, lab in graph.edges:
        lines.append(f'  v{s} -> v{t} [label="{graph.alphabet.symbols[lab]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
