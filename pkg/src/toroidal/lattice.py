"""The type calculus for Z/p-lattices.

A finitely generated free abelian group with a Z/p-action decomposes, after
localizing at p, into three kinds of indecomposable summands: rank-(p-1)
modules coming from ideal classes of the p-th cyclotomic integers, rank-p
projective modules, and trivial rank-1 summands.  The multiplicities
(r, s, t) classify the lattice for every purpose of this package: the
generating function of the lattice, the types of its exterior powers, and
the periodic group cohomology all depend only on the triple.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import ConsistencyError
from .series import (
    AlphaSeries,
    ideal_summand_factor,
    projective_summand_factor,
    trivial_summand_factor,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class TypeCohomology:
    """Dimensions of the periodic group cohomology of a lattice type.

    Degree 0 is free of rank h0_rank; every positive degree is an
    elementary abelian p-group, of dimension odd_dim in odd degrees and
    even_dim in even degrees (period 2).
    """

    h0_rank: int
    odd_dim: int
    even_dim: int

    def __post_init__(self) -> None:
        if min(self.h0_rank, self.odd_dim, self.even_dim) < 0:
            raise ValueError("cohomology dimensions must be nonnegative")

    def torsion_dim(self, degree: int) -> int:
        """F_p-dimension in a positive degree."""
        if degree <= 0:
            raise ValueError("positive degrees only; degree 0 is free")
        return self.odd_dim if degree % 2 else self.even_dim


@dataclass(frozen=True)
class LatticeType:
    """The triple (r, s, t) together with the prime p.

    r counts ideal-class summands of rank p-1, s projective summands of
    rank p, t trivial summands; the underlying abelian group has rank
    r(p-1) + sp + t.
    """

    p: int
    r: int
    s: int
    t: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        for name in ("r", "s", "t"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a nonnegative integer, got {v!r}")

    @property
    def rank(self) -> int:
        return self.r * (self.p - 1) + self.s * self.p + self.t

    def direct_sum(self, other: "LatticeType") -> "LatticeType":
        if self.p != other.p:
            raise ValueError("cannot sum lattice types for different primes")
        return LatticeType(self.p, self.r + other.r, self.s + other.s, self.t + other.t)

    # -- generating function ---------------------------------------------

    def f_series(self, truncation_degree: int | None = None) -> AlphaSeries:
        """The rank generating function of the exterior powers.

        The product of one cyclotomic-quotient factor per ideal-class
        summand, one (1 + e_p x^p) per projective summand and one (1 + x)
        per trivial summand.  Defaults to truncation at rank + 1, which is
        one degree more than the series can be nonzero.
        """
        n = self.rank + 1 if truncation_degree is None else truncation_degree
        if n < 0:
            raise ValueError("truncation degree must be nonnegative")
        out = ideal_summand_factor(self.p, n) ** self.r
        out = out * projective_summand_factor(self.p, n) ** self.s
        return out * trivial_summand_factor(n) ** self.t

    # -- derived structure -------------------------------------------------

    def exterior_type(self, i: int) -> "LatticeType":
        """The type of the i-th exterior power of this lattice.

        Computed from the degree-i coefficients (f_i, g_i) of the generating
        function: the exterior power has type (g_i, h_i - f_i, f_i) where
        p*h_i = C(n, i) + (p-1)(f_i - g_i).  Non-integrality of h_i or a
        negative projective multiplicity is mathematically impossible, so
        either raises ConsistencyError rather than being clamped.
        """
        n = self.rank
        if not 0 <= i <= n:
            raise ValueError(f"exterior power degree must lie in 0..{n}, got {i}")
        series = self.f_series(n)
        f_i = series.f_coeffs[i]
        g_i = series.g_coeffs[i]
        h_i, rem = divmod(comb(n, i) + (self.p - 1) * (f_i - g_i), self.p)
        if rem:
            raise ConsistencyError(
                f"non-integral fixed rank for exterior power {i} of {self}: "
                f"C({n},{i}) + ({self.p}-1)({f_i} - {g_i}) is not divisible by {self.p}"
            )
        if h_i - f_i < 0:
            raise ConsistencyError(
                f"negative projective multiplicity for exterior power {i} of "
                f"{self}: h={h_i}, f={f_i}"
            )
        return LatticeType(self.p, g_i, h_i - f_i, f_i)

    def type_cohomology(self) -> TypeCohomology:
        """Periodic group cohomology dimensions of this type.

        The projective summands contribute only to degree 0; ideal-class
        summands contribute one p-torsion dimension in every odd positive
        degree; trivial summands contribute one in degree 0 and one
        p-torsion dimension in every even positive degree.
        """
        return TypeCohomology(
            h0_rank=self.s + self.t, odd_dim=self.r, even_dim=self.t
        )

    def q_series(self, truncation_degree: int | None = None) -> AlphaSeries:
        """(r x + t x^2) / (1 - x^2): positive-degree group cohomology dims."""
        n = self.rank + 1 if truncation_degree is None else truncation_degree
        numerator = AlphaSeries.monomial(self.r, 1, n) + AlphaSeries.monomial(
            self.t, 2, n
        )
        return numerator.geometric_factor()

    def __str__(self) -> str:
        return f"(r={self.r}, s={self.s}, t={self.t}) at p={self.p}"
