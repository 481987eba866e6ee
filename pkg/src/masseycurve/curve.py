"""Smooth plane curves and graded pieces of their Jacobian rings.

A degree-n form G cuts out a smooth projective plane curve exactly when
its three partial derivatives form a regular sequence, which at the
level of graded pieces means the partials generate everything in degree
3n-5 and beyond.  The quotient by the partials, the Jacobian ring, is
then a complete intersection ring whose graded dimensions follow the
Hilbert series ((1-t^(n-1))/(1-t))^3, with one-dimensional top piece in
degree 3n-6.

A CurveContext packages a validated smooth curve together with caches of
per-degree solvers over the partials, so repeated membership questions,
dimension counts and cup pairings share one elimination per degree.
Cache fills are idempotent (the canonical solver is deterministic), so
concurrent readers are safe; at worst two threads build the same solver
and one result wins.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass

from .linalg import (
    GradedSolveReport,
    GradedSolver,
    kernel_basis,
    monomial_basis,
)
from .poly import DegreeMismatchError, HomogeneousPoly, Monomial


class SingularCurveError(ValueError):
    """The given form does not define a smooth curve."""


@dataclass(frozen=True)
class QuotientBasis:
    """Monomials representing a basis of one Jacobian-ring piece: the
    first monomials, in canonical order, off the leading positions of
    the ideal piece."""

    degree: int
    representative_monomials: tuple[Monomial, ...]

    def representatives(self) -> tuple[HomogeneousPoly, ...]:
        return tuple(HomogeneousPoly.single(m) for m in self.representative_monomials)


def _det3(m) -> HomogeneousPoly:
    """Determinant of a 3x3 matrix of forms, by cofactor expansion."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def is_smooth(G: HomogeneousPoly) -> bool:
    """Regular-sequence test: the partials must generate the full graded
    piece in degree 3n-5 (equivalently, the curve G = 0 has no singular
    point)."""
    n = G.degree
    if n < 3:
        raise ValueError(f"curve degree must be at least 3, got {n}")
    partials = tuple(G.partial(i) for i in range(3))
    degree = 3 * n - 5
    solver = GradedSolver(degree, partials)
    return solver.rank == monomial_basis(degree).size


def quotient_dimensions(G: HomogeneousPoly, degrees) -> list[int]:
    """Graded dimensions of Q[x]/(partials of G) at the given degrees.
    Works for singular curves too (used to report why a curve fails the
    smoothness test)."""
    partials = tuple(G.partial(i) for i in range(3))
    out = []
    for d in degrees:
        solver = GradedSolver(d, partials)
        out.append(monomial_basis(d).size - solver.rank)
    return out


class CurveContext:
    """A validated smooth plane curve with cached graded solvers.

    Build through :func:`build_context`; the constructor assumes the
    smoothness check already passed.
    """

    def __init__(self, G: HomogeneousPoly, partials: tuple[HomogeneousPoly, ...]):
        self.G = G
        self.n = G.degree
        self.partials = partials
        self.genus = (self.n - 1) * (self.n - 2) // 2
        self.c_x = self.n - 3
        self.top_degree = 3 * self.n - 6
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"CurveContext(degree={self.n}, genus={self.genus})"

    def cached(self, key, build):
        """Idempotent memo slot.  Duplicate computation under a race is
        acceptable; both threads compute the same value."""
        value = self._cache.get(key)
        if value is None:
            value = build()
            self._cache[key] = value
        return value

    # -- solvers -----------------------------------------------------------

    def jacobian_solver(self, degree: int) -> GradedSolver:
        """Solver over the partials at one degree.  At the top degree
        3n-6 the distinguished column is the derivative determinant, so
        the same factorization serves membership and cup pairing."""
        if degree == self.top_degree:
            return self.cached(
                ("jac", degree),
                lambda: GradedSolver(
                    degree, self.partials, special=self._hessian_poly()
                ),
            )
        return self.cached(
            ("jac", degree), lambda: GradedSolver(degree, self.partials)
        )

    def jacobian_membership(self, F: HomogeneousPoly) -> GradedSolveReport | None:
        """Canonical witnesses for F inside the ideal of partials, or
        None.  The distinguished column, when the cached solver carries
        one, sits last, so the generator witnesses are identical to a
        plain membership solve."""
        solver = self.jacobian_solver(F.degree)
        report = solver.solve_report(F)
        if report is None:
            return None
        if report.special_coefficient:
            return None  # nonzero component along the distinguished form
        if report.special_coefficient is not None:
            report = GradedSolveReport(
                report.target_degree, report.witness, None, report.residual_is_zero
            )
        return report

    # -- graded dimensions -------------------------------------------------

    def jacobian_ring_dim(self, degree: int) -> int:
        if degree < 0:
            raise ValueError(f"degree must be nonnegative, got {degree}")
        solver = self.jacobian_solver(degree)
        return monomial_basis(degree).size - solver.generator_rank

    def jacobian_ring_basis(self, degree: int) -> QuotientBasis:
        solver = self.jacobian_solver(degree)
        basis = monomial_basis(degree)
        keep = solver.generator_pivot_rows()
        monos = tuple(
            m for i, m in enumerate(basis.monomials) if i not in keep
        )
        return QuotientBasis(degree, monos)

    # -- distinguished forms -----------------------------------------------

    def _hessian_poly(self) -> HomogeneousPoly:
        def build():
            matrix = [
                [self.partials[i].partial(j) for j in range(3)] for i in range(3)
            ]
            det = _det3(matrix)
            assert det.degree == self.top_degree
            return det

        return self.cached("hessian_like_det", build)

    def hessian_like_det(self) -> HomogeneousPoly:
        """Determinant of the matrix of partial derivatives of the
        partials, degree 3n-6.  Nonzero modulo the ideal for a smooth
        curve; it spans the one-dimensional top piece and normalizes the
        cup pairing."""
        det = self._hessian_poly()
        # Constructing the top-degree solver asserts the determinant is
        # outside the ideal; it cannot fail for a validated context.
        self.jacobian_solver(self.top_degree)
        return det

    # -- pairings ----------------------------------------------------------

    def cup_pairing(self, U_a: HomogeneousPoly, U_b: HomogeneousPoly) -> Fraction:
        """Coefficient of the product U_a * U_b along the derivative
        determinant in the top graded piece.  Zero exactly when the
        product falls inside the ideal of partials."""
        if U_a.degree + U_b.degree != self.top_degree:
            raise DegreeMismatchError(
                f"degrees {U_a.degree} + {U_b.degree} do not reach the top "
                f"degree {self.top_degree}"
            )
        solver = self.jacobian_solver(self.top_degree)
        report = solver.solve_report(U_a * U_b)
        if report is None:
            raise RuntimeError(
                "top graded piece not spanned; context is inconsistent"
            )
        return report.special_coefficient

    # -- annihilators ------------------------------------------------------

    def annihilator_space(self, U1: HomogeneousPoly, degree: int):
        """Deterministic basis of {U0 of this degree : U0 * U1 lies in
        the ideal of partials}.  For zero U1 that is the whole graded
        piece, returned as the monomial basis."""
        if degree < 0:
            raise ValueError(f"degree must be nonnegative, got {degree}")
        product_degree = degree + U1.degree
        solver = self.jacobian_solver(product_degree)
        basis = monomial_basis(degree)
        quotient_rows = sorted(
            set(range(monomial_basis(product_degree).size))
            - solver.generator_pivot_rows()
        )
        columns = []
        for m in basis.monomials:
            h = solver.reduce_target(HomogeneousPoly.single(m) * U1)
            columns.append([h.get(r, Fraction(0)) for r in quotient_rows])
        rows = [
            [columns[c][r] for c in range(basis.size)]
            for r in range(len(quotient_rows))
        ]
        kernel = kernel_basis(rows, basis.size)
        return [
            HomogeneousPoly(
                degree, {m: v for m, v in zip(basis.monomials, vec) if v}
            )
            for vec in kernel
        ]


def build_context(G: HomogeneousPoly) -> CurveContext:
    """Validate a curve and assemble its context.

    Raises ValueError for degrees below 3 and SingularCurveError when
    the partials fail the regular-sequence test.
    """
    n = G.degree
    if n < 3:
        raise ValueError(f"curve degree must be at least 3, got {n}")
    if not G.terms:
        raise SingularCurveError("the zero form does not define a curve")
    partials = tuple(G.partial(i) for i in range(3))
    degree = 3 * n - 5
    solver = GradedSolver(degree, partials)
    if solver.rank != monomial_basis(degree).size:
        raise SingularCurveError(
            f"curve of degree {n} is singular: partials span only "
            f"{solver.rank} of {monomial_basis(degree).size} dimensions "
            f"in degree {degree}"
        )
    return CurveContext(G, partials)
