"""Exact linear algebra on graded pieces of Q[x0, x1, x2].

Degree-d forms are identified with coordinate vectors over the canonical
monomial basis (descending graded-lex).  The solver answers one question
in two guises: is a target form an exact combination of
generator-multiples, optionally plus one distinguished form, and if so
which combination?  All arithmetic is exact.

Determinism contract.  Witnesses are canonical: the column matrix lists
the products (multiplier monomial) x (generator), generators taken
last-first and multipliers in descending graded-lex order within each
generator, with the distinguished column at the very end.  Forward
elimination is fraction-free (Bareiss) over integers with
first-nonzero-row pivot selection, free variables are pinned to zero,
and back substitution is exact.  Identical inputs therefore produce
bit-identical witnesses on every run and under any thread schedule.

Construction runs the elimination once and keeps the pivot rows plus the
update trace, so one matrix can serve many right-hand sides; replaying
the trace on a sparse target costs roughly one rational operation per
recorded update that actually touches it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .poly import DegreeMismatchError, HomogeneousPoly, Monomial

_ZERO = Fraction(0)


class MonomialBasis:
    """The degree-d monomials in canonical (descending graded-lex) order."""

    __slots__ = ("degree", "monomials", "index")

    def __init__(self, degree: int, monomials: tuple[Monomial, ...]):
        self.degree = degree
        self.monomials = monomials
        self.index = {m: i for i, m in enumerate(monomials)}

    @property
    def size(self) -> int:
        return len(self.monomials)

    def __repr__(self) -> str:
        return f"MonomialBasis(degree={self.degree}, size={self.size})"


@lru_cache(maxsize=None)
def monomial_basis(degree: int) -> MonomialBasis:
    """Shared basis object for one degree; (d+1)(d+2)/2 monomials."""
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    monos = tuple(
        (e0, e1, degree - e0 - e1)
        for e0 in range(degree, -1, -1)
        for e1 in range(degree - e0, -1, -1)
    )
    return MonomialBasis(degree, monos)


def to_coords(p: HomogeneousPoly, basis: MonomialBasis) -> list[Fraction]:
    if p.degree != basis.degree and p.terms:
        raise DegreeMismatchError(
            f"form of degree {p.degree} against basis of degree {basis.degree}"
        )
    return [p.terms.get(m, _ZERO) for m in basis.monomials]


def from_coords(coords, basis: MonomialBasis) -> HomogeneousPoly:
    coords = list(coords)
    if len(coords) != basis.size:
        raise ValueError(f"expected {basis.size} coordinates, got {len(coords)}")
    return HomogeneousPoly(
        basis.degree, {m: c for m, c in zip(basis.monomials, coords) if c}
    )


@dataclass(frozen=True)
class GradedSolveReport:
    """Outcome of an exact graded solve.

    ``witness`` holds one multiplier form per generator (zero multipliers
    included) and ``special_coefficient`` the coefficient on the
    distinguished form, or None when no distinguished form was involved.
    ``residual_is_zero`` records that re-multiplying the witnesses
    against the generators (plus special coefficient times special)
    reproduced the target exactly; the solver verifies this on every
    call and refuses to return an unverified report.
    """

    target_degree: int
    witness: tuple[HomogeneousPoly, ...]
    special_coefficient: Fraction | None
    residual_is_zero: bool

    def to_dict(self) -> dict:
        out = {
            "target_degree": self.target_degree,
            "witness": [str(w) for w in self.witness],
            "residual_is_zero": self.residual_is_zero,
        }
        if self.special_coefficient is not None:
            c = self.special_coefficient
            out["special_coefficient"] = f"{c.numerator}/{c.denominator}"
        return out


def _denominator_lcm(p: HomogeneousPoly) -> int:
    scale = 1
    for c in p.terms.values():
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    return scale


class GradedSolver:
    """Reusable canonical solver for one target degree and generator list.

    Generators of degree exceeding the target degree (and zero
    generators) contribute no columns; their witness is the zero form.
    When ``special`` is given, its column must survive elimination as a
    pivot; if instead it lies in the span of the generator columns,
    construction fails, since the distinguished coefficient would not be
    well defined.
    """

    def __init__(
        self,
        target_degree: int,
        generators,
        special: HomogeneousPoly | None = None,
    ):
        self.target_degree = target_degree
        self.generators = tuple(generators)
        self.special = special
        self.basis = monomial_basis(target_degree)

        # Canonical column order: generators last-first, multipliers in
        # descending graded-lex order, distinguished column at the end.
        cols: list[tuple[int | None, Monomial | None, int]] = []
        col_vectors: list[dict[int, int]] = []
        index = self.basis.index
        for gi in range(len(self.generators) - 1, -1, -1):
            g = self.generators[gi]
            mult_deg = target_degree - g.degree
            if mult_deg < 0 or not g.terms:
                continue
            scale = _denominator_lcm(g)
            int_terms = [(e, int(c * scale)) for e, c in g.terms.items()]
            for m in monomial_basis(mult_deg).monomials:
                col = {
                    index[(e[0] + m[0], e[1] + m[1], e[2] + m[2])]: c
                    for e, c in int_terms
                }
                cols.append((gi, m, scale))
                col_vectors.append(col)
        self._special_col = None
        if special is not None:
            if special.degree != target_degree:
                raise DegreeMismatchError(
                    f"distinguished form of degree {special.degree}, "
                    f"target degree {target_degree}"
                )
            scale = _denominator_lcm(special)
            col = {index[e]: int(c * scale) for e, c in special.terms.items()}
            self._special_col = len(cols)
            cols.append((None, None, scale))
            col_vectors.append(col)
        self._cols = cols

        self._eliminate(col_vectors)

        if special is not None and self._special_col not in self._pivot_cols:
            raise ValueError(
                "distinguished form lies in the span of the generators"
            )

    def _eliminate(self, col_vectors: list[dict[int, int]]) -> None:
        nrows = self.basis.size
        rows: list[dict[int, int]] = [{} for _ in range(nrows)]
        for c, col in enumerate(col_vectors):
            for r, v in col.items():
                rows[r][c] = v

        pivoted = [False] * nrows
        pivots: list[tuple[int, int, int]] = []
        trace: list[tuple[int, int, dict[int, int]]] = []
        prev = 1
        for c in range(len(col_vectors)):
            pr = -1
            for r in range(nrows):
                if not pivoted[r] and c in rows[r]:
                    pr = r
                    break
            if pr < 0:
                continue  # free column: coefficient pinned to zero
            prow = rows[pr]
            piv = prow[c]
            entries: dict[int, int] = {}
            for i in range(nrows):
                if pivoted[i] or i == pr:
                    continue
                row_i = rows[i]
                e = row_i.pop(c, 0)
                if e:
                    entries[i] = e
                    new = {j: v * piv for j, v in row_i.items()}
                    for j, v in prow.items():
                        if j == c:
                            continue
                        w = new.get(j, 0) - e * v
                        if w:
                            new[j] = w
                        elif j in new:
                            del new[j]
                    if prev != 1:
                        for j in new:
                            v = new[j]
                            assert v % prev == 0, "fraction-free update not exact"
                            new[j] = v // prev
                    rows[i] = new
                elif piv != prev and row_i:
                    for j in row_i:
                        v = row_i[j] * piv
                        assert v % prev == 0, "fraction-free scaling not exact"
                        row_i[j] = v // prev
            pivoted[pr] = True
            pivots.append((pr, c, piv))
            if entries:
                trace.append((pr, piv, entries))
            prev = piv

        if __debug__:
            for r in range(nrows):
                assert pivoted[r] or not rows[r], "nonzero residue off pivot rows"

        self._rows = rows
        self._pivots = pivots
        self._trace = trace
        self._pivot_cols = {c for _, c, _ in pivots}
        self._pivot_row_set = {r for r, _, _ in pivots}

    # -- structure ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def generator_rank(self) -> int:
        """Rank of the generator columns alone (distinguished column,
        when present, always adds exactly one)."""
        return len(self._pivots) - (1 if self.special is not None else 0)

    def generator_pivot_rows(self) -> frozenset[int]:
        """Leading monomial positions of the generator-column span; this
        set is intrinsic to the span and independent of column order."""
        if self.special is None:
            return frozenset(self._pivot_row_set)
        sr = next(r for r, c, _ in self._pivots if c == self._special_col)
        return frozenset(self._pivot_row_set - {sr})

    # -- solving -----------------------------------------------------------

    def reduce_target(self, p: HomogeneousPoly) -> dict[int, Fraction]:
        """Replay the recorded elimination on one target; the result is
        the forward-eliminated right-hand side up to the known row
        scalings (exactly what consistency checks and back substitution
        need)."""
        if p.degree != self.target_degree and p.terms:
            raise DegreeMismatchError(
                f"target of degree {p.degree}, solver degree {self.target_degree}"
            )
        index = self.basis.index
        h = {index[m]: c for m, c in p.terms.items()}
        for r, piv, entries in self._trace:
            hr = h.get(r)
            if hr:
                factor = hr / piv
                for i, e in entries.items():
                    nv = h.get(i, _ZERO) - factor * e
                    if nv:
                        h[i] = nv
                    elif i in h:
                        del h[i]
        return h

    def quotient_residual(self, h: dict[int, Fraction]) -> dict[int, Fraction]:
        """Coordinates of a reduced target off the generator pivot rows;
        empty exactly when the target lies in the generator span."""
        keep = self.generator_pivot_rows()
        return {r: v for r, v in h.items() if v and r not in keep}

    def solve(self, p: HomogeneousPoly) -> dict[int, Fraction] | None:
        """Canonical coefficients {column: value} with free columns at
        zero, or None when the target is outside the span."""
        h = self.reduce_target(p)
        pivot_rows = self._pivot_row_set
        for r, v in h.items():
            if v and r not in pivot_rows:
                return None
        x: dict[int, Fraction] = {}
        pivots = self._pivots
        rows = self._rows
        for k in range(len(pivots) - 1, -1, -1):
            r, c, piv = pivots[k]
            s = h.get(r)
            if s:
                s = s * (pivots[k - 1][2] if k else 1)
            else:
                s = _ZERO
            for j, v in rows[r].items():
                if j != c:
                    xj = x.get(j)
                    if xj:
                        s = s - xj * v
            if s:
                x[c] = s / piv
        return x

    def solve_report(self, p: HomogeneousPoly) -> GradedSolveReport | None:
        x = self.solve(p)
        if x is None:
            return None
        gen_terms: list[dict] = [{} for _ in self.generators]
        special_coeff = _ZERO if self.special is not None else None
        for c, val in x.items():
            gi, mono, scale = self._cols[c]
            if gi is None:
                special_coeff = val * scale
            else:
                gen_terms[gi][mono] = val * scale
        witness = tuple(
            HomogeneousPoly(max(self.target_degree - g.degree, 0), gen_terms[i])
            for i, g in enumerate(self.generators)
        )

        # Self-certification: every returned witness is re-multiplied
        # against the generators and must reproduce the target exactly.
        acc = HomogeneousPoly.zero(self.target_degree)
        for w, g in zip(witness, self.generators):
            if w.terms:
                acc = acc + w * g
        if special_coeff:
            acc = acc + special_coeff * self.special
        if acc != p:
            raise RuntimeError("solver witness failed re-multiplication")
        return GradedSolveReport(self.target_degree, witness, special_coeff, True)


def solve_membership(F: HomogeneousPoly, generators) -> GradedSolveReport | None:
    """Canonical witnesses with F = sum(witness_i * generator_i), or None
    when F is outside the span of the generator multiples."""
    generators = tuple(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    for g in generators:
        if g.degree > F.degree:
            raise DegreeMismatchError(
                f"generator of degree {g.degree} exceeds target degree {F.degree}"
            )
    return GradedSolver(F.degree, generators).solve_report(F)


def solve_with_distinguished(
    F: HomogeneousPoly, generators, special: HomogeneousPoly
) -> GradedSolveReport:
    """Split F exactly as sum(witness_i * generator_i) + coefficient *
    special.  The coefficient is unique whenever the distinguished form
    is outside the generator span; if it is inside, ValueError."""
    generators = tuple(generators)
    if not generators:
        raise ValueError("at least one generator is required")
    for g in generators:
        if g.degree > F.degree:
            raise DegreeMismatchError(
                f"generator of degree {g.degree} exceeds target degree {F.degree}"
            )
    solver = GradedSolver(F.degree, generators, special=special)
    report = solver.solve_report(F)
    if report is None:
        raise ValueError(
            "target is outside the span of the generators and the "
            "distinguished form"
        )
    return report


# -- small dense helpers ---------------------------------------------------


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns the reduced
    rows and the pivot column indices.  Dense and simple, for the small
    systems (kernels, rank cross-checks) where that is all we need."""
    m = [list(row) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivot_cols


def kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Canonical kernel basis of the linear map given by ``rows``: one
    vector per free column of the RREF, in column order, with the free
    coordinate set to one."""
    reduced, pivot_cols = rref(rows)
    pivot_set = set(pivot_cols)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivot_cols):
            if reduced[r][free]:
                v[pc] = -reduced[r][free]
        basis.append(v)
    return basis
