"""Plumbing calculus for the links of strata.

Linear plumbings of circle bundles over the sphere are recognized as lens
spaces through the negative continued fraction of their Euler numbers, with
the sign convention that the unit circle bundle of O(-n) is L(n, 1); every
other sign in the module follows from that choice.  Blow-downs of (+/-1)
vertices give an independent rewrite route to the same normal forms.  The
five-dimensional rewrites (plumbing a 3-sphere bundle with the canonical
circle bundle over the plane, or with the weighted orbifold circle bundle)
are applied only in the forms needed by the link pipelines; anything else
raises rather than guessing a normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .bundles import OrbiLineBundle, Rank2BundleExpr, gluing_bundle, ly_bundle, v2_bundle
from .homology import NONTRIVIAL, intersect, stratum_curve_class


class UnsupportedPlumbingError(ValueError):
    """A plumbing operation outside the rewrite rules implemented here."""


# ---------------------------------------------------------------------------
# normal-form spaces


@dataclass(frozen=True)
class Space:
    """Normal form of a link computation.

    Tags: "lens" (with p, q), "circle_bundle" (euler), "sphere_bundle3"
    (degree sum), "pullback_canonical" (the circle bundle over the blow-up
    of the plane pulled back from the plane), "s5", and "other".  The
    conventions L(0,1) = S2 x S1, L(1,0) = S3 and L(2,1) = RP3 are applied
    in `display` and `lens_equivalent`, not by retagging.
    """

    tag: str
    p: int | None = None
    q: int | None = None
    euler: int | None = None
    degree_sum: int | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)
    eulers: tuple[tuple[str, int], ...] = field(default=(), compare=False)

    def euler_over(self, name: str) -> int:
        for key, value in self.eulers:
            if key == name:
                return value
        raise KeyError(name)

    def display(self) -> str:
        if self.tag == "lens":
            if self.p == 0:
                return "L(0,1) = S2 x S1"
            if self.p == 1:
                return "L(1,0) = S3"
            if (self.p, self.q) == (2, 1):
                return "L(2,1) = RP3"
            return f"L({self.p},{self.q})"
        if self.tag == "s5":
            return "S5"
        if self.tag == "sphere_bundle3":
            return f"S(O({self.degree_sum})+O(0))"
        if self.tag == "circle_bundle":
            return f"S(O({self.euler}))"
        if self.tag == "pullback_canonical":
            return "S(L_can) pulled back over the blowdown"
        return self.tag

    def to_json(self) -> dict:
        return {"tag": self.tag, "p": self.p, "q": self.q,
                "notes": list(self.notes)}


def lens_space(p: int, q: int, notes: tuple[str, ...] = ()) -> Space:
    """L(p, q) normalized to p >= 0 and 0 <= q < p when p >= 2."""
    if p < 0:
        p, q = -p, -q
    if p == 0:
        q = 1
    elif p == 1:
        q = 0
    else:
        q %= p
    return Space("lens", p=p, q=q, notes=notes)


S2XS1 = lens_space(0, 1)
RP3 = lens_space(2, 1)
S3 = lens_space(1, 0)


def _as_lens_pq(s: Space) -> tuple[int, int]:
    if s.tag == "lens":
        return s.p, s.q
    if s.tag == "circle_bundle":
        norm = lens_space(-s.euler, 1)
        return norm.p, norm.q
    if s.tag == "s2xs1":
        return 0, 1
    if s.tag == "rp3":
        return 2, 1
    if s.tag == "s3":
        return 1, 0
    raise ValueError(f"{s.tag} is not a lens space")


def lens_equivalent(a: Space, b: Space) -> bool:
    """Diffeomorphism test for lens spaces.

    L(p, q) = L(p, q') iff q' is congruent to +/- q or to a +/- inverse of q
    mod p; L(0, .) is S2 x S1 and L(1, .) is S3 regardless of q.
    """
    p1, q1 = _as_lens_pq(a)
    p2, q2 = _as_lens_pq(b)
    if p1 != p2:
        return False
    p = p1
    if p in (0, 1):
        return True
    q1 %= p
    q2 %= p
    if q1 == q2 or (q1 + q2) % p == 0:
        return True
    return (q1 * q2) % p in (1 % p, (-1) % p)


# ---------------------------------------------------------------------------
# plumbing graphs and linear chains


@dataclass(frozen=True)
class CircleBundleVertex:
    euler: int


@dataclass(frozen=True)
class SphereBundleVertex:
    degrees: tuple[int, int]


@dataclass(frozen=True)
class OrbiVertex:
    bundle: OrbiLineBundle
    attach_at: str = "regular"


@dataclass(frozen=True)
class PlumbingGraph:
    """A tree of bundle vertices joined by plumbing edges."""

    vertices: tuple
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        norm = []
        for i, j in self.edges:
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bad edge ({i}, {j})")
            norm.append((min(i, j), max(i, j)))
        if len(set(norm)) != len(norm):
            raise ValueError("parallel plumbing edges are not allowed")
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if n > 0 and (len(self.edges) != n - 1 or not self._connected()):
            raise ValueError("plumbing graph must be a tree")
        for i, j in self.edges:
            kinds = {type(self.vertices[i]), type(self.vertices[j])}
            if kinds == {CircleBundleVertex}:
                continue
            if kinds == {SphereBundleVertex, OrbiVertex}:
                continue
            raise UnsupportedPlumbingError(
                "only circle-circle and sphere-orbifold plumbings are handled")

    def _connected(self) -> bool:
        adj = {v: [] for v in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    @classmethod
    def chain(cls, eulers) -> "PlumbingGraph":
        verts = tuple(CircleBundleVertex(int(e)) for e in eulers)
        edges = tuple((i, i + 1) for i in range(len(verts) - 1))
        return cls(verts, edges)

    def neighbors(self, v: int) -> list[int]:
        return [j if i == v else i for i, j in self.edges if v in (i, j)]

    def chain_eulers(self) -> list[int]:
        """Euler numbers of a linear circle-bundle chain, end to end."""
        if not all(isinstance(v, CircleBundleVertex) for v in self.vertices):
            raise ValueError("not a circle-bundle chain")
        n = len(self.vertices)
        if n == 0:
            return []
        if n == 1:
            return [self.vertices[0].euler]
        ends = [v for v in range(n) if len(self.neighbors(v)) == 1]
        if len(ends) != 2 or any(len(self.neighbors(v)) > 2 for v in range(n)):
            raise ValueError("chain must be linear")
        order = [min(ends)]
        prev = -1
        while len(order) < n:
            nxt = [w for w in self.neighbors(order[-1]) if w != prev]
            prev = order[-1]
            order.append(nxt[0])
        return [self.vertices[v].euler for v in order]


def chain_to_lens(eulers) -> Space:
    """Lens space bounding a linear plumbing with the given Euler numbers.

    Evaluates the negative continued fraction [-e1, -e2, ...] projectively
    (a 2x2 integer matrix product), so interior infinities are harmless:
    a value p/q of 1/0 is the 3-sphere, 0/1 the product S2 x S1.
    """
    eulers = [int(e) for e in eulers]
    if not eulers:
        raise ValueError("need a nonempty chain")
    m00, m01, m10, m11 = 1, 0, 0, 1
    for e in eulers:
        a = -e
        m00, m01, m10, m11 = (m00 * a + m01, -m00,
                              m10 * a + m11, -m10)
    return lens_space(m00, m10)


def circle_bundle_space(euler: int) -> Space:
    """Normal form of the unit circle bundle of O(euler) over the sphere."""
    return chain_to_lens([euler])


def blow_down(g: PlumbingGraph) -> PlumbingGraph:
    """Remove one (+/-1) circle-bundle vertex, if any, joining its neighbors.

    Each neighbor's Euler number changes by the opposite sign; with no such
    vertex the graph is returned unchanged.  Vertices with three or more
    neighbors would create cycles and are not handled.
    """
    for v, vert in enumerate(g.vertices):
        if isinstance(vert, CircleBundleVertex) and vert.euler in (1, -1):
            nbrs = g.neighbors(v)
            if len(nbrs) > 2:
                raise UnsupportedPlumbingError(
                    "blow-down of a vertex with three or more neighbors")
            sign = vert.euler
            new_vertices = []
            relabel = {}
            for w, wv in enumerate(g.vertices):
                if w == v:
                    continue
                relabel[w] = len(new_vertices)
                if w in nbrs:
                    wv = replace(wv, euler=wv.euler - sign)
                new_vertices.append(wv)
            new_edges = [(relabel[i], relabel[j]) for i, j in g.edges
                         if v not in (i, j)]
            if len(nbrs) == 2:
                new_edges.append((relabel[nbrs[0]], relabel[nbrs[1]]))
            return PlumbingGraph(tuple(new_vertices), tuple(new_edges))
    return g


def blow_down_fully(g: PlumbingGraph) -> PlumbingGraph:
    while True:
        nxt = blow_down(g)
        if nxt == g:
            return g
        g = nxt


def recognize_reduced_chain(g: PlumbingGraph) -> Space:
    """Normal form of a blown-down chain.

    Empty graph: the 3-sphere.  A single vertex is read off directly as a
    circle bundle; longer minimal chains go through the continued fraction.
    """
    eulers = g.chain_eulers()
    if not eulers:
        return S3
    return chain_to_lens(eulers)


# ---------------------------------------------------------------------------
# rank-2 rewrites used by the link pipelines


def plumb_with_canonical(b: Rank2BundleExpr) -> Rank2BundleExpr:
    """Plumb the 3-sphere bundle with the canonical circle bundle over the
    plane: both degrees go up by one.

    The plumbed disk bundle is the blow-up of the shifted sum at a point of
    its zero section, so on boundaries S(O(k)+O(m)) becomes
    S(O(k+1)+O(m+1)).
    """
    return b.twisted(1, 1)


def plumb_with_ly(b: Rank2BundleExpr, attach_at: str = "regular",
                  extra_twist: int = 1) -> Rank2BundleExpr:
    """Plumb with the weighted orbifold circle bundle at a regular fiber.

    The weighted fiber winds once more than a canonical fiber, so this is
    plumbing with the canonical circle bundle after one extra positive twist
    on the first factor: (k, m) -> (k+2, m+1).  `extra_twist` = -1 flips the
    orientation resolution of that extra twist and is exposed only as a
    diagnostic.  Plumbing at the singular fiber has no rewrite rule here.
    """
    if attach_at != "regular":
        raise UnsupportedPlumbingError(
            "plumbing at the singular fiber has no normal form here")
    if extra_twist not in (1, -1):
        raise ValueError("extra_twist must be +1 or -1")
    return plumb_with_canonical(b.twisted(extra_twist, 0))


def twist_by_attaching(b: Rank2BundleExpr) -> Rank2BundleExpr:
    """Twist both factors by the degree -1 line of the attaching parameter.

    When the two-fiber gluing bundle is attached to the double-cover
    stratum, rotating the stem gluing parameter rotates both remaining
    parameters once, which tensors each factor with the tautological
    degree -1 bundle: (k, m) -> (k-1, m-1).
    """
    return b.twisted(-1, -1)


def identify_pullback_over_blowdown(b: Rank2BundleExpr) -> Space:
    """Identify S(O(k)+O(m)) with k+m = -1 as a blowdown pullback.

    The projectivization of O(-1)+O(0) is the one-point blow-up of the
    plane, and its tautological circle bundle is the pullback of the
    canonical circle bundle under the blowdown map: trivial over the rigid
    section, Euler number -1 over the other section and over the fiber.
    """
    if b.normal_form != -1:
        raise ValueError("pullback identification needs degree sum -1")
    return Space(
        "pullback_canonical",
        eulers=(("S-", 0), ("S+", -1), ("fiber", -1)),
        notes=("circle bundle over the one-point blow-up of the plane",
               "pulled back from the canonical circle bundle under the blowdown"),
    )


def collapse_exceptional(s: Space) -> Space:
    """Collapse the circles over the exceptional sphere to a single fiber.

    The pullback bundle is trivial over the exceptional sphere, so the
    collapse lands on the canonical circle bundle over the plane, which is
    the 5-sphere.  A conic in the plane is a degree-2 sphere, so the
    circles over it form the Euler number -2 bundle, a real projective
    3-space; that sublink is recorded on the result.
    """
    if s.tag != "pullback_canonical":
        raise ValueError("can only collapse the tagged pullback space")
    conic_euler = 2 * s.euler_over("fiber")
    sublink = circle_bundle_space(conic_euler)
    return Space(
        "s5",
        eulers=(("conic", conic_euler),),
        notes=("canonical circle bundle over the plane",
               f"sublink over a conic: {sublink.display()}"),
    )


# ---------------------------------------------------------------------------
# link pipelines


def link_adjacent(k: int) -> Space:
    """Normal link of stratum k+1 inside the closure of stratum k.

    Computed as the unit circle bundle of the gluing-parameter bundle, then
    recognized as a lens space; nothing is hard-coded.
    """
    if k < 1:
        raise ValueError("adjacent strata need k >= 1")
    return circle_bundle_space(gluing_bundle(k).degree)


@dataclass(frozen=True)
class Link20Result:
    """Trace and results of the two-step link computation at the open end."""

    steps: tuple[tuple[str, object], ...]
    l_z: Space
    link: Space
    sublink: Space


def link20_pipeline() -> Link20Result:
    """Link of stratum 2 inside the closure of the open stratum.

    The gluing data over the two-fiber stratum is twisted by the attaching
    parameter, plumbed into the orbifold bundle over the double-cover
    stratum at a regular fiber, identified as the blowdown pullback, and
    collapsed over the exceptional sphere, landing on the 5-sphere with the
    adjacent link sitting inside as the circles over a conic.
    """
    steps: list[tuple[str, object]] = []
    b = v2_bundle()
    steps.append(("gluing-bundle-over-two-fiber-stratum", b))
    b = twist_by_attaching(b)
    steps.append(("attaching-twist", b))
    b = plumb_with_ly(b)
    steps.append(("orbifold-plumbing-regular-fiber", b))
    l_z = Space("sphere_bundle3", degree_sum=b.normal_form,
                notes=("link of the zero section in the gluing data",))
    pulled = identify_pullback_over_blowdown(b)
    steps.append(("blowdown-pullback", pulled))
    final = collapse_exceptional(pulled)
    steps.append(("collapse-exceptional-fibers", final))
    sublink = circle_bundle_space(final.euler_over("conic"))
    return Link20Result(tuple(steps), l_z, final, sublink)


@dataclass(frozen=True)
class NontrivialLinkResult:
    """Stated adjacent link on the blow-up surface, plus a diagnostic.

    `space` is the stated value L(4k+1, 1).  `derived` is what the
    self-intersection-plus-two gluing-degree rule would give instead; the
    two disagree and the disagreement is reported, never reconciled.
    """

    space: Space
    derived: Space
    derived_degree: int

    @property
    def agrees(self) -> bool:
        return lens_equivalent(self.space, self.derived)


def link_nontrivial(k: int) -> NontrivialLinkResult:
    """Normal link of stratum k+1 in stratum k on the blow-up surface."""
    if k < 1:
        raise ValueError("need k >= 1")
    stated = lens_space(4 * k + 1, 1,
                        notes=("stated adjacent link on the blow-up",))
    b = stratum_curve_class(NONTRIVIAL, k + 1)
    degree = intersect(b, b) + 2
    derived = circle_bundle_space(degree)
    return NontrivialLinkResult(space=stated, derived=derived,
                                derived_degree=degree)


def orbifold_plumbing_bundle() -> OrbiLineBundle:
    """The orbifold side of the two-step pipeline, for inspection."""
    return ly_bundle()
