"""Combinatorial shadows of genus-0 stable maps on the product ruled surface.

A stable map in class A - kF whose structure lies over stratum m >= k has a
distinguished stem component in class A - mF; everything else maps into
fibers.  This module handles the combinatorics only: trees of components
with homology labels and labeled marked points, the stability condition,
enumeration of the fiber strata with their dimensions, and the labeled-tree
automorphism count that bounds the isotropy of a stable map.

Stratum descriptors serialize to JSON objects with fields

    parts     list of fiber degrees of the branches (a partition)
    shape     one entry per part: nested [degree, [children...]] trees,
              with an extra boolean marker slot in the pointed variant
    dim       real dimension of the stratum
    isotropy  order of the combinatorial automorphism group

Pointed descriptors additionally carry "pointed" and "inferred": true.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .homology import TRIVIAL, H2Class


def fiber_class(d: int) -> H2Class:
    """The class dF on the product surface; d = 0 is a ghost label."""
    if d < 0:
        raise ValueError("fiber multiples have d >= 0")
    return TRIVIAL.h2(0, d)


def stem_class(m: int) -> H2Class:
    return TRIVIAL.h2(1, -m)


@dataclass(frozen=True)
class TreeComponent:
    """One component of the domain: homology label plus marked-point count."""

    label: H2Class
    marked: int = 0

    @property
    def is_ghost(self) -> bool:
        return self.label.coeffs == (0, 0)


@dataclass(frozen=True)
class StableTree:
    """Tree of components with labeled marked points.

    Edges are unordered pairs of component indices; double points are
    simple, so the edge set has no repeats.  At most one component is the
    stem, and its class must be A - mF with m >= 0.
    """

    components: tuple[TreeComponent, ...]
    edges: tuple[tuple[int, int], ...]
    stem: int | None = None

    def __post_init__(self):
        n = len(self.components)
        if n == 0:
            raise ValueError("tree must have at least one component")
        norm = []
        for i, j in self.edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bad edge ({i}, {j})")
            norm.append((min(i, j), max(i, j)))
        if len(set(norm)) != len(norm):
            raise ValueError("components meet in at most one point")
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if len(self.edges) != n - 1 or not self._connected():
            raise ValueError("component graph must be a tree")
        if self.stem is not None:
            a, b = self.components[self.stem].label.coeffs
            if a != 1 or b > 0:
                raise ValueError("stem class must be A - mF with m >= 0")

    def _connected(self) -> bool:
        adj = self.adjacency()
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.components)

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in self.components]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for i, j in self.edges if v in (i, j))

    @property
    def total_class(self) -> H2Class:
        total = TRIVIAL.h2(0, 0)
        for c in self.components:
            total = total + c.label
        return total


def is_stable(t: StableTree) -> bool:
    """Whether every ghost component carries at least three special points.

    Special points are nodes and marked points; nonconstant components are
    unconstrained.
    """
    for v, comp in enumerate(t.components):
        if comp.is_ghost and t.degree(v) + comp.marked < 3:
            return False
    return True


def combinatorial_isotropy(t: StableTree, cyclic_cover_factors: bool = False) -> int:
    """Order of the automorphism group of the labeled tree.

    Automorphisms fix the stem and preserve component labels.  Marked points
    are labeled, so any component carrying one is fixed.  This counts only
    domain-tree symmetry and is an upper bound for the isotropy of a stable
    map with this shadow.

    With `cyclic_cover_factors` on, every component of fiber degree d >= 2
    contributes an extra declared factor of d for the deck symmetry of a
    maximally symmetric cover; off by default.
    """
    n = len(t.components)
    adj = t.adjacency()

    def key(v: int):
        comp = t.components[v]
        # labeled marked points pin the component: make its key unique
        pin = v if comp.marked > 0 else -1
        return (comp.label.coeffs, comp.marked, pin)

    def walk(v: int, parent: int) -> tuple[tuple, int]:
        children = []
        order = 1
        for w in adj[v]:
            if w != parent:
                canon, aut = walk(w, v)
                children.append(canon)
                order *= aut
        children.sort()
        for _, group in itertools.groupby(children):
            m = sum(1 for _ in group)
            for i in range(2, m + 1):
                order *= i
        return (key(v), tuple(children)), order

    if t.stem is not None or n == 1:
        root = t.stem if t.stem is not None else 0
        _, order = walk(root, -1)
    else:
        centers = _tree_centers(n, adj)
        if len(centers) == 1:
            _, order = walk(centers[0], -1)
        else:
            u, v = centers
            cu, ou = walk(u, v)
            cv, ov = walk(v, u)
            order = ou * ov * (2 if cu == cv else 1)
    if cyclic_cover_factors:
        for comp in t.components:
            a, d = comp.label.coeffs
            if a == 0 and d >= 2:
                order *= d
    return order


def _tree_centers(n: int, adj) -> list[int]:
    if n == 1:
        return [0]
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


# ---------------------------------------------------------------------------
# decompositions of the total fiber degree


@dataclass(frozen=True)
class FiberDecomposition:
    """Unordered positive fiber degrees of the branches."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)


def enumerate_decompositions(n: int) -> list[FiberDecomposition]:
    """All integer partitions of n, each exactly once (empty for n <= 0)."""
    if n <= 0:
        return []

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    return [FiberDecomposition(p) for p in rec(n, n)]


def top_stratum_dimension(d: FiberDecomposition) -> int:
    """Real dimension 4n - 2p of the open stratum with these branch degrees."""
    return 4 * d.total - 2 * len(d.parts)


def branch_moduli_dim(d: int) -> int:
    """Dimension 4(d - 1) of degree-d one-pointed stable maps to the sphere."""
    if d < 1:
        raise ValueError("branch degree must be >= 1")
    return 4 * (d - 1)


# ---------------------------------------------------------------------------
# branch shapes
#
# A branch attaches to the stem at one node, so its moduli is the space of
# one-pointed stable maps to the sphere of its total degree.  A shape is the
# combinatorial type of one of its strata: a rooted tree (root = component
# carrying the attach node) with nonnegative degree labels, ghosts needing
# two children on top of the root/parent special point.  Shapes are nested
# tuples (degree, (child, child, ...)), canonically sorted.


@lru_cache(maxsize=None)
def _shapes_all(d: int) -> tuple[tuple, ...]:
    if d < 1:
        return ()
    out = []
    for root_deg in range(d, -1, -1):
        rest = d - root_deg
        min_children = 2 if root_deg == 0 else 0
        for parts in _partition_tuples(rest):
            if len(parts) < min_children:
                continue
            for combo in _child_multisets(parts):
                out.append((root_deg, combo))
    return tuple(sorted(set(out)))


def _partition_tuples(n: int):
    if n == 0:
        yield ()
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def _child_multisets(parts: tuple[int, ...]):
    """Multisets of shapes realizing the given child degrees."""
    groups = [(v, sum(1 for _ in g)) for v, g in itertools.groupby(parts)]
    pools = []
    for value, mult in groups:
        pools.append(list(
            itertools.combinations_with_replacement(_shapes_all(value), mult)))
    for pick in itertools.product(*pools):
        combo = tuple(sorted(itertools.chain.from_iterable(pick)))
        yield combo


def branch_shapes(d: int, max_extra_nodes: int | None = 3) -> list[tuple]:
    """Shapes of degree-d branches with at most the given number of nodes.

    The enumeration is finite even unbounded (ghosts need two children, so a
    degree-d branch has at most 2d - 1 components); the bound just trims
    deep degenerations.  Pass None for the full list.
    """
    shapes = _shapes_all(d)
    if max_extra_nodes is None:
        return list(shapes)
    return [s for s in shapes if shape_edges(s) <= max_extra_nodes]


def shape_edges(shape) -> int:
    return len(shape[1]) + sum(shape_edges(c) for c in shape[1])


def shape_aut_order(shape, cyclic_cover_factors: bool = False) -> int:
    """Automorphisms of a rooted shape: permutations of equal child subtrees."""
    order = 1
    children = sorted(shape[1])
    for _, group in itertools.groupby(children):
        m = sum(1 for _ in group)
        for i in range(2, m + 1):
            order *= i
    for c in children:
        order *= shape_aut_order(c, cyclic_cover_factors)
    if cyclic_cover_factors and shape[0] >= 2:
        order *= shape[0]
    return order


def shape_to_json(shape) -> list:
    return [shape[0], [shape_to_json(c) for c in shape[1]]]


# pointed shapes carry one distinguished marked point somewhere in the
# branch; nodes are (degree, point_here, children).  A ghost carrying the
# point maps to the fixed incidence point, and a ghost's image is the node
# on its first nonconstant ancestor, so the point may not sit on a ghost
# whose whole path to the branch root consists of ghosts (the root's image
# is the attach point on the stem curve, away from the incidence point).


@lru_cache(maxsize=None)
def _pointed_shapes_all(d: int) -> tuple[tuple, ...]:
    if d < 1:
        return ()
    out = []
    for root_deg in range(d, -1, -1):
        rest = d - root_deg
        # point on this component (one special point)
        min_children = 1 if root_deg == 0 else 0
        for parts in _partition_tuples(rest):
            if len(parts) < min_children:
                continue
            for combo in _child_multisets(parts):
                out.append((root_deg, True,
                            tuple(sorted(_plain(c) for c in combo))))
        # point in one child subtree
        min_children = 2 if root_deg == 0 else 0
        for parts in _partition_tuples(rest):
            if len(parts) < min_children:
                continue
            for i, part in enumerate(parts):
                if i > 0 and parts[i - 1] == part:
                    continue  # symmetric choice
                others = parts[:i] + parts[i + 1:]
                for pointed_child in _pointed_shapes_all(part):
                    for combo in _child_multisets(others):
                        children = tuple(sorted(
                            (pointed_child,) + tuple(_plain(c) for c in combo)))
                        out.append((root_deg, False, children))
    return tuple(sorted(set(out)))


def _plain(shape) -> tuple:
    """Embed an unpointed shape into pointed form (all markers off)."""
    return (shape[0], False, tuple(sorted(_plain(c) for c in shape[1])))


def _point_on_all_ghost_path(shape) -> bool:
    """Whether the marked point sits on a ghost chained to the root by ghosts."""
    deg, here, children = shape
    if here:
        return deg == 0
    for c in children:
        if _has_point(c):
            return deg == 0 and _point_on_all_ghost_path(c)
    return False


def _has_point(shape) -> bool:
    return shape[1] or any(_has_point(c) for c in shape[2])


def pointed_branch_shapes(d: int, max_extra_nodes: int | None = 3) -> list[tuple]:
    shapes = [s for s in _pointed_shapes_all(d)
              if not _point_on_all_ghost_path(s)]
    if max_extra_nodes is None:
        return shapes
    return [s for s in shapes if pointed_shape_edges(s) <= max_extra_nodes]


def pointed_shape_edges(shape) -> int:
    return len(shape[2]) + sum(pointed_shape_edges(c) for c in shape[2])


def pointed_shape_aut_order(shape, cyclic_cover_factors: bool = False) -> int:
    order = 1
    children = sorted(shape[2])
    for _, group in itertools.groupby(children):
        m = sum(1 for _ in group)
        for i in range(2, m + 1):
            order *= i
    for c in children:
        order *= pointed_shape_aut_order(c, cyclic_cover_factors)
    if cyclic_cover_factors and shape[0] >= 2:
        order *= shape[0]
    return order


def pointed_shape_to_json(shape) -> list:
    return [shape[0], shape[1], [pointed_shape_to_json(c) for c in shape[2]]]


# ---------------------------------------------------------------------------
# stratum descriptors


@dataclass(frozen=True)
class StratumDescriptor:
    """One combinatorial stratum of the fiber over a stratum of structures.

    `shapes` aligns with `decomposition.parts`.  In the pointed variant one
    branch is attached at the fixed incidence fiber and carries the marked
    point; its decorated shape sits in `pointed_shape` and `pointed_part`
    holds its degree.  Pointed output is inferred by the same counting rules
    as the plain case and flagged as such.
    """

    decomposition: FiberDecomposition
    shapes: tuple[tuple, ...]
    dimension: int
    isotropy: int
    pointed_part: int | None = None
    pointed_shape: tuple | None = None

    @property
    def inferred(self) -> bool:
        return self.pointed_part is not None

    def to_json(self) -> dict:
        out = {
            "parts": list(self.decomposition.parts),
            "shape": [shape_to_json(s) for s in self.shapes],
            "dim": self.dimension,
            "isotropy": self.isotropy,
        }
        if self.pointed_part is not None:
            out["pointed"] = {
                "part": self.pointed_part,
                "tree": pointed_shape_to_json(self.pointed_shape),
            }
            out["inferred"] = True
        return out


def enumerate_strata(n: int, max_branch_depth: int | None = 3,
                     pointed: bool = False,
                     cyclic_cover_factors: bool = False) -> list[StratumDescriptor]:
    """All stratum descriptors for total fiber degree n.

    Every decomposition of n is combined with every admissible branch
    degeneration of at most `max_branch_depth` nodes per branch.  Dimensions
    are 4n - 2p on top and drop by 2 per extra node or per extra branch.
    With `pointed` the configurations carry one marked point on a branch
    over a fixed base point; this variant is inferred, not pinned.
    """
    if n < 1:
        return []
    out = []
    for dec in enumerate_decompositions(n):
        p = len(dec.parts)
        groups = [(v, sum(1 for _ in g))
                  for v, g in itertools.groupby(dec.parts)]
        if not pointed:
            for combo in _assign_shapes(groups, max_branch_depth):
                extra = sum(shape_edges(s) for s in combo)
                dim = 4 * n - 2 * p - 2 * extra
                iso = 1
                for s in combo:
                    iso *= shape_aut_order(s, cyclic_cover_factors)
                out.append(StratumDescriptor(dec, combo, dim, iso))
        else:
            seen_values = set()
            for d0 in dec.parts:
                if d0 in seen_values:
                    continue
                seen_values.add(d0)
                rest = list(dec.parts)
                rest.remove(d0)
                rest_groups = [(v, sum(1 for _ in g))
                               for v, g in itertools.groupby(rest)]
                for ps in pointed_branch_shapes(d0, max_branch_depth):
                    for combo in _assign_shapes(rest_groups, max_branch_depth):
                        extra = (pointed_shape_edges(ps)
                                 + sum(shape_edges(s) for s in combo))
                        # p - 1 moving attach points; the pointed branch
                        # is pinned at the fixed fiber
                        dim = (sum(4 * (di - 1) for di in dec.parts)
                               - 2 * extra + 2 * (p - 1))
                        iso = pointed_shape_aut_order(ps, cyclic_cover_factors)
                        for s in combo:
                            iso *= shape_aut_order(s, cyclic_cover_factors)
                        out.append(StratumDescriptor(
                            dec, combo, dim, iso,
                            pointed_part=d0, pointed_shape=ps))
    out.sort(key=lambda s: (-s.dimension, s.decomposition.parts, s.shapes))
    return out


def _assign_shapes(groups, max_depth):
    pools = []
    for value, mult in groups:
        pool = branch_shapes(value, max_depth)
        pools.append(list(itertools.combinations_with_replacement(pool, mult)))
    for pick in itertools.product(*pools):
        yield tuple(itertools.chain.from_iterable(pick))


def stratum_tree(descriptor: StratumDescriptor, stem_drop: int) -> StableTree:
    """Realize a descriptor as a stable tree with stem class A - mF.

    The result represents A - kF with k = m - n, where n is the total fiber
    degree of the descriptor; labels always sum to that class exactly.
    """
    components = [TreeComponent(stem_class(stem_drop))]
    edges: list[tuple[int, int]] = []

    def add(shape, parent: int):
        idx = len(components)
        components.append(TreeComponent(fiber_class(shape[0])))
        edges.append((parent, idx))
        for child in shape[1]:
            add(child, idx)

    for s in descriptor.shapes:
        add(s, 0)
    if descriptor.pointed_shape is not None:
        def add_pointed(shape, parent: int):
            idx = len(components)
            components.append(TreeComponent(fiber_class(shape[0]),
                                            marked=1 if shape[1] else 0))
            edges.append((parent, idx))
            for child in shape[2]:
                add_pointed(child, idx)
        add_pointed(descriptor.pointed_shape, 0)
    return StableTree(tuple(components), tuple(edges), stem=0)
