"""Exact intersection-form and symplectic-area arithmetic on the second
homology of the two rational ruled surfaces.

The trivial bundle is the product of two spheres, with hyperbolic pairing on
the basis (A, F) where A is the base class and F the fiber.  The nontrivial
bundle is the one-point blow-up of the projective plane, with diagonal
pairing (+1, -1) on the basis (L, E) of a line and the exceptional sphere.
All arithmetic here is exact: integer coefficients and `fractions.Fraction`
areas.  Admissibility of a stratum is a strict inequality that can sit
exactly on an integer boundary, so no floating point is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction


class BundleKind(Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"


@dataclass(frozen=True)
class RuledSurface:
    """A rational ruled surface with a fixed integral basis of H_2.

    `pairing` is the intersection matrix in that basis and `tangent_chern`
    holds the coefficients of the first Chern class of the tangent bundle.
    """

    kind: BundleKind
    basis_names: tuple[str, str]
    pairing: tuple[tuple[int, int], tuple[int, int]]
    tangent_chern: tuple[int, int]

    def h2(self, a: int, b: int) -> "H2Class":
        """Return the class a*e1 + b*e2 in this surface's basis."""
        return H2Class(self, (a, b))

    def basis_class(self, i: int) -> "H2Class":
        return self.h2(1, 0) if i == 0 else self.h2(0, 1)

    @property
    def fiber_class(self) -> "H2Class":
        # F itself on the product; L - E on the blow-up.
        if self.kind is BundleKind.TRIVIAL:
            return self.h2(0, 1)
        return self.h2(1, -1)

    @property
    def tangent_chern_class(self) -> "H2Class":
        return self.h2(*self.tangent_chern)

    def __repr__(self):
        return f"RuledSurface({self.kind.value})"


TRIVIAL = RuledSurface(
    kind=BundleKind.TRIVIAL,
    basis_names=("A", "F"),
    pairing=((0, 1), (1, 0)),
    tangent_chern=(2, 2),
)

NONTRIVIAL = RuledSurface(
    kind=BundleKind.NONTRIVIAL,
    basis_names=("L", "E"),
    pairing=((1, 0), (0, -1)),
    tangent_chern=(3, -1),
)


@dataclass(frozen=True)
class H2Class:
    """An integral second homology class in the surface's fixed basis."""

    surface: RuledSurface
    coeffs: tuple[int, int]

    def __post_init__(self):
        a, b = self.coeffs
        if not (isinstance(a, int) and isinstance(b, int)):
            raise TypeError("homology coefficients must be exact integers")

    def __add__(self, other: "H2Class") -> "H2Class":
        _require_same_surface(self, other)
        return H2Class(self.surface, (self.coeffs[0] + other.coeffs[0],
                                      self.coeffs[1] + other.coeffs[1]))

    def __sub__(self, other: "H2Class") -> "H2Class":
        return self + (-other)

    def __neg__(self) -> "H2Class":
        return H2Class(self.surface, (-self.coeffs[0], -self.coeffs[1]))

    def __rmul__(self, n: int) -> "H2Class":
        if not isinstance(n, int):
            return NotImplemented
        return H2Class(self.surface, (n * self.coeffs[0], n * self.coeffs[1]))

    def __repr__(self):
        names = self.surface.basis_names
        terms = []
        for c, name in zip(self.coeffs, names):
            if c == 0:
                continue
            if c == 1:
                terms.append(f"+{name}")
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c:+d}{name}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


def _require_same_surface(c1: H2Class, c2: H2Class):
    if c1.surface != c2.surface:
        raise ValueError("classes live on different surfaces")


def intersect(c1: H2Class, c2: H2Class) -> int:
    """Intersection number of two classes on the same surface.

    Symmetric and bilinear over the integers; e.g. on the product surface
    (A - kF) . (A - mF) = -(k + m).
    """
    _require_same_surface(c1, c2)
    m = c1.surface.pairing
    (a1, b1), (a2, b2) = c1.coeffs, c2.coeffs
    return (a1 * (m[0][0] * a2 + m[0][1] * b2)
            + b1 * (m[1][0] * a2 + m[1][1] * b2))


@dataclass(frozen=True)
class SymplecticForm:
    """The normalized form with area 1 on the fiber, parametrized by lambda.

    On the product surface the base class A has area 1 + lambda with
    lambda >= 0.  On the blow-up the line L has area 1 + lambda and the
    exceptional sphere E has area lambda > 0.
    """

    surface: RuledSurface
    lam: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.surface.kind is BundleKind.TRIVIAL:
            if self.lam < 0:
                raise ValueError("lambda must be >= 0 on the product surface")
        else:
            if self.lam <= 0:
                raise ValueError("lambda must be > 0 on the blow-up")


def area(form: SymplecticForm, c: H2Class) -> Fraction:
    """Symplectic area of a class, exact in lambda.

    Linear in the class: on the product, area(A - kF) = 1 + lambda - k.
    """
    if form.surface != c.surface:
        raise ValueError("form and class live on different surfaces")
    a, b = c.coeffs
    lam = form.lam
    if form.surface.kind is BundleKind.TRIVIAL:
        return a * (1 + lam) + b
    return a * (1 + lam) + b * lam


def stratum_curve_class(surface: RuledSurface, k: int) -> H2Class:
    """The curve class whose embedded representative defines stratum k.

    Product surface: A - kF for k >= 0.  Blow-up: E - (k-1)F for k >= 1,
    a section of self-intersection 1 - 2k.
    """
    if surface.kind is BundleKind.TRIVIAL:
        if k < 0:
            raise ValueError("k must be >= 0")
        return surface.h2(1, -k)
    if k < 1:
        raise ValueError("blow-up strata are indexed by k >= 1")
    # E - (k-1)(L-E) = -(k-1) L + k E
    return surface.h2(-(k - 1), k)


def admissible_strata(form: SymplecticForm) -> list[int]:
    """All stratum indices k whose defining curve class has positive area.

    This is the set-builder form { k : area > 0 }, evaluated exactly; on the
    product surface it equals {0, ..., l} where l - 1 < lambda <= l.  On the
    blow-up the indices start at k = 1.
    """
    start = 0 if form.surface.kind is BundleKind.TRIVIAL else 1
    out = []
    k = start
    while area(form, stratum_curve_class(form.surface, k)) > 0:
        out.append(k)
        k += 1
    return out


def chern_pairing(c: H2Class) -> int:
    """Pairing of the tangent bundle's first Chern class with c."""
    return intersect(c.surface.tangent_chern_class, c)


def strata_codim(surface: RuledSurface, k: int) -> int:
    """Codimension of stratum k in the space of compatible structures.

    Product surface: 4k - 2 for k >= 1, and 0 for the open stratum k = 0.
    Blow-up: the stated value 4k.  On the blow-up this disagrees with the
    adjunction-style count (see `codim_cross_check`); the stated value is
    returned verbatim and never silently reconciled.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if surface.kind is BundleKind.TRIVIAL:
        if k == 0:
            return 0  # open stratum
        return 4 * k - 2
    if k == 0:
        raise ValueError("blow-up strata are indexed by k >= 1; "
                         "the whole space is the closure of k = 1")
    return 4 * k


@dataclass(frozen=True)
class CodimCheck:
    """Stated stratum codimension next to the adjunction-style count.

    `adjunction` is -(2 c1.B - 2) for the stratum's curve class B, the
    negative index of the deformation problem.  On the product surface the
    two agree; on the blow-up they differ by 4 and the tension is surfaced
    here rather than resolved.
    """

    stated: int
    adjunction: int

    @property
    def consistent(self) -> bool:
        return self.stated == self.adjunction


def codim_cross_check(surface: RuledSurface, k: int) -> CodimCheck:
    if k < 1:
        raise ValueError("cross-check defined for k >= 1")
    b = stratum_curve_class(surface, k)
    adj = -(2 * chern_pairing(b) - 2)
    return CodimCheck(stated=strata_codim(surface, k), adjunction=adj)


def link_dimension(m: int, k: int) -> int:
    """Dimension of the normal link of stratum m inside the closure of k.

    4(m - k) - 1 for m > k >= 1.  For k = 0 the pointed link is used and its
    dimension is 4m - 3; that value is inferred from the m = 2 case, where
    the pointed link is the 5-sphere, and is not covered by the generic
    formula.
    """
    if m <= k:
        raise ValueError("need m > k")
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return 4 * m - 3
    return 4 * (m - k) - 1
