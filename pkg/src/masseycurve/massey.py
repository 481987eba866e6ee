"""Massey triple products on a smooth plane curve, as exact residues.

Setting.  Fix a smooth curve G = 0 of degree n with partials (G0, G1,
G2).  First cohomology classes are represented by forms U of degree
2n-3 or n-3.  The cup product of two classes vanishes exactly when the
product of their representatives falls into the ideal of partials; a
decomposition U_a * U_b = R0*G0 + R1*G1 + R2*G2 witnesses that.

Given a triple (U0, U1, U2) with both adjacent cups vanishing, the
triple product is computed from two such decompositions through two
explicit forms of degree 6n-9:

    A = U0*x1*R0^(12)*G0*G1 + U2*x0*R2^(01)*G0*G2 + U0*x0*R0^(12)*G0*G0
    B = A0^(01)*U2*G1*G2 + U0*A1^(12)*G0*G2 + U0*U1*U2*x0*G0

where the bracket vectors attached to a decomposition (R0, R1, R2) are

    A0 = x1*R2 - x2*R1,  A1 = -x0*R2 + x2*R0,  A2 = x0*R1 - x1*R0.

The value of the triple product is then the coefficient of the
determinant det(d(G_i^2)/dx_j) when n*(A - B) is split over the squared
partials: n*(A-B) = v0*G0^2 + v1*G1^2 + v2*G2^2 + value * det.  The
quotient by the squared partials is one-dimensional in degree 6n-9 and
the determinant spans it, so the coefficient is well defined; the split
is re-verified exactly on every call.

The value generally depends on the chosen decompositions (they are
unique only up to syzygy), so this module always consumes either the
canonical solver witnesses or explicitly supplied ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import CurveContext, _det3
from .linalg import GradedSolveReport, GradedSolver
from .poly import DegreeMismatchError, HomogeneousPoly

_X0 = HomogeneousPoly.variable(0)
_X1 = HomogeneousPoly.variable(1)
_X2 = HomogeneousPoly.variable(2)


class UndefinedMasseyProductError(ValueError):
    """An adjacent cup product does not vanish, so the triple product is
    not defined; carries the obstructing pair and its pairing value."""

    def __init__(self, pair: str, pairing: Fraction):
        super().__init__(
            f"cup product of {pair} does not vanish "
            f"(pairing {pairing.numerator}/{pairing.denominator})"
        )
        self.pair = pair
        self.pairing = pairing

    def to_dict(self) -> dict:
        return {
            "pair": self.pair,
            "pairing": f"{self.pairing.numerator}/{self.pairing.denominator}",
        }


class WitnessIdentityError(ValueError):
    """Supplied decomposition multipliers fail their defining identity."""


@dataclass(frozen=True)
class DecompWitness:
    """Multipliers (R0, R1, R2) with U_a * U_b = sum(R_i * G_i)."""

    multipliers: tuple[HomogeneousPoly, HomogeneousPoly, HomogeneousPoly]

    def __iter__(self):
        return iter(self.multipliers)

    def __getitem__(self, i):
        return self.multipliers[i]

    def combination(self, partials) -> HomogeneousPoly:
        acc = None
        for r, g in zip(self.multipliers, partials):
            term = r * g
            acc = term if acc is None else acc + term
        return acc

    def to_dict(self) -> dict:
        return {"multipliers": [str(r) for r in self.multipliers]}


@dataclass(frozen=True)
class AVectors:
    """The bracket vector of a decomposition, one form per index."""

    a0: HomogeneousPoly
    a1: HomogeneousPoly
    a2: HomogeneousPoly

    @classmethod
    def from_witness(cls, w: DecompWitness) -> "AVectors":
        r0, r1, r2 = w.multipliers
        return cls(
            a0=_X1 * r2 - _X2 * r1,
            a1=_X2 * r0 - _X0 * r2,
            a2=_X0 * r1 - _X1 * r0,
        )


@dataclass(frozen=True)
class MasseyResult:
    """A fully auditable triple-product evaluation: the value, both
    intermediate forms, both decompositions, and the exact residue
    split over the squared partials."""

    value: Fraction
    a: HomogeneousPoly
    b: HomogeneousPoly
    witnesses01: DecompWitness
    witnesses12: DecompWitness
    residue_witnesses: GradedSolveReport
    det: HomogeneousPoly

    def to_dict(self) -> dict:
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "a": str(self.a),
            "b": str(self.b),
            "witnesses01": self.witnesses01.to_dict(),
            "witnesses12": self.witnesses12.to_dict(),
            "residue": self.residue_witnesses.to_dict(),
            "det": str(self.det),
        }


def decompose_cup(
    ctx: CurveContext, U_a: HomogeneousPoly, U_b: HomogeneousPoly
) -> DecompWitness | None:
    """Canonical decomposition of U_a * U_b over the partials, or None
    when the cup product does not vanish."""
    if U_a.degree + U_b.degree != ctx.top_degree:
        raise DegreeMismatchError(
            f"degrees {U_a.degree} + {U_b.degree} do not reach the top "
            f"degree {ctx.top_degree}"
        )
    report = ctx.jacobian_membership(U_a * U_b)
    if report is None:
        return None
    return DecompWitness(report.witness)


def _squares(ctx: CurveContext):
    return ctx.cached(
        "squared_partials", lambda: tuple(g * g for g in ctx.partials)
    )


def _det_poly(ctx: CurveContext) -> HomogeneousPoly:
    def build():
        squares = _squares(ctx)
        matrix = [[squares[i].partial(j) for j in range(3)] for i in range(3)]
        det = _det3(matrix)
        assert det.degree == 6 * ctx.n - 9
        return det

    return ctx.cached("big_ideal_det", build)


def _big_solver(ctx: CurveContext) -> GradedSolver:
    return ctx.cached(
        ("big", 6 * ctx.n - 9),
        lambda: GradedSolver(6 * ctx.n - 9, _squares(ctx), special=_det_poly(ctx)),
    )


def big_ideal_det(ctx: CurveContext) -> HomogeneousPoly:
    """Determinant of the derivative matrix of the squared partials,
    degree 6n-9.  It spans the one-dimensional quotient by the squared
    partials in that degree; the solver construction asserts it stays
    outside their span."""
    det = _det_poly(ctx)
    _big_solver(ctx)
    return det


def _check_witness(
    ctx: CurveContext,
    product: HomogeneousPoly,
    witness: DecompWitness,
    label: str,
) -> None:
    expected_degree = product.degree - (ctx.n - 1)
    for r in witness.multipliers:
        if r.terms and r.degree != expected_degree:
            raise WitnessIdentityError(
                f"{label}: multiplier degree {r.degree}, expected {expected_degree}"
            )
    if witness.combination(ctx.partials) != product:
        raise WitnessIdentityError(
            f"{label}: multipliers do not recombine to the product"
        )


def compute_AB(
    ctx: CurveContext,
    U0: HomogeneousPoly,
    U1: HomogeneousPoly,
    U2: HomogeneousPoly,
    w01: DecompWitness,
    w12: DecompWitness,
) -> tuple[HomogeneousPoly, HomogeneousPoly]:
    """The two degree-(6n-9) forms whose difference carries the triple
    product.  Witness identities are re-checked before use."""
    _check_witness(ctx, U0 * U1, w01, "witnesses for U0*U1")
    _check_witness(ctx, U1 * U2, w12, "witnesses for U1*U2")

    g0, g1, g2 = ctx.partials
    r0_12 = w12[0]
    r2_01 = w01[2]
    a01 = AVectors.from_witness(w01)
    a12 = AVectors.from_witness(w12)

    a = (
        U0 * _X1 * r0_12 * g0 * g1
        + U2 * _X0 * r2_01 * g0 * g2
        + U0 * _X0 * r0_12 * g0 * g0
    )
    b = (
        a01.a0 * U2 * g1 * g2
        + U0 * a12.a1 * g0 * g2
        + U0 * U1 * U2 * _X0 * g0
    )
    expected = 6 * ctx.n - 9
    if (a.terms and a.degree != expected) or (b.terms and b.degree != expected):
        raise DegreeMismatchError(
            f"intermediate forms have degrees {a.degree}/{b.degree}, "
            f"expected {expected}"
        )
    return a, b


def _finish(ctx, U0, U1, U2, w01, w12) -> MasseyResult:
    a, b = compute_AB(ctx, U0, U1, U2, w01, w12)
    target = ctx.n * (a - b)
    if not target.terms:
        target = HomogeneousPoly.zero(6 * ctx.n - 9)
    solver = _big_solver(ctx)
    report = solver.solve_report(target)
    if report is None:
        raise RuntimeError(
            "residue split failed; squared partials plus determinant "
            "should span the whole degree"
        )
    return MasseyResult(
        value=report.special_coefficient,
        a=a,
        b=b,
        witnesses01=w01,
        witnesses12=w12,
        residue_witnesses=report,
        det=_det_poly(ctx),
    )


def _check_degrees(ctx, U0, U1, U2):
    expectations = [
        (U0, 2 * ctx.n - 3, "U0"),
        (U1, ctx.n - 3, "U1"),
        (U2, 2 * ctx.n - 3, "U2"),
    ]
    for u, degree, label in expectations:
        if u.terms and u.degree != degree:
            raise DegreeMismatchError(
                f"{label} has degree {u.degree}, expected {degree}"
            )


def massey_triple(
    ctx: CurveContext,
    U0: HomogeneousPoly,
    U1: HomogeneousPoly,
    U2: HomogeneousPoly,
) -> MasseyResult:
    """Triple product of (U0, U1, U2) using the canonical decompositions.

    Degrees must be (2n-3, n-3, 2n-3).  Both adjacent cup products must
    vanish; otherwise UndefinedMasseyProductError reports the
    obstructing pair together with its pairing value.
    """
    _check_degrees(ctx, U0, U1, U2)
    w01 = decompose_cup(ctx, U0, U1)
    if w01 is None:
        raise UndefinedMasseyProductError("U0*U1", ctx.cup_pairing(U0, U1))
    w12 = decompose_cup(ctx, U1, U2)
    if w12 is None:
        raise UndefinedMasseyProductError("U1*U2", ctx.cup_pairing(U1, U2))
    return _finish(ctx, U0, U1, U2, w01, w12)


def massey_triple_with_witnesses(
    ctx: CurveContext,
    U0: HomogeneousPoly,
    U1: HomogeneousPoly,
    U2: HomogeneousPoly,
    w01: DecompWitness,
    w12: DecompWitness,
) -> MasseyResult:
    """Triple product evaluated against explicitly supplied
    decompositions (they are verified, then trusted).  Different valid
    decompositions of the same products may change the value; supplying
    them pins the defining system down."""
    _check_degrees(ctx, U0, U1, U2)
    return _finish(ctx, U0, U1, U2, w01, w12)
