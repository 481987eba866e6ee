"""Randomized search for triples with vanishing cups, and vanishing-ratio
statistics.

Sparse representatives make vanishing cup products common: a product of
few monomials often falls into the ideal of partials, while dense random
forms almost never do.  The harness quantifies that.  Term caps either
come straight from the configuration or are derived from a divisor
parameter ell as ceil(count/ell) of the relevant monomial count.

Reproducibility: every trial draws from its own generator seeded by a
keyed hash of (seed, trial index), so results are independent of
execution order and thread count, and a report is a pure function of
(seed, configuration) apart from the wall-clock field.
"""

from __future__ import annotations

import dataclasses
import hashlib
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .curve import CurveContext
from .linalg import monomial_basis
from .poly import HomogeneousPoly

COEFFICIENT_POOL = "a/b with a uniform in [-9..9] nonzero, b uniform in [1..9]"


class BudgetExhaustedError(RuntimeError):
    """The attempt budget ran out before a triple was found."""


@dataclass
class SearchConfig:
    """Knobs for triple search and ratio experiments.

    ``max_terms_*`` cap the term counts directly; when ``ell`` is set it
    takes precedence for ratio experiments and the caps become
    ceil(count/ell).  The coefficient pool is fixed and disclosed in
    every report.
    """

    n: int
    max_terms_u0: int = 3
    max_terms_u1: int = 3
    max_terms_u2: int = 3
    ell: int | None = None
    samples: int = 1000
    seed: int = 0
    attempt_budget: int = 1_000_000
    coefficient_pool: str = field(default=COEFFICIENT_POOL)

    def validate(self) -> "SearchConfig":
        if self.n < 3:
            raise ValueError(f"curve degree must be at least 3, got {self.n}")
        for label, cap in (
            ("max_terms_u0", self.max_terms_u0),
            ("max_terms_u1", self.max_terms_u1),
            ("max_terms_u2", self.max_terms_u2),
        ):
            if cap < 1:
                raise ValueError(f"{label} must be positive, got {cap}")
        if self.ell is not None and self.ell < 1:
            raise ValueError(f"ell must be positive, got {self.ell}")
        if self.samples < 1:
            raise ValueError(f"samples must be positive, got {self.samples}")
        if self.attempt_budget < 1:
            raise ValueError(
                f"attempt budget must be positive, got {self.attempt_budget}"
            )
        return self


@dataclass(frozen=True)
class RatioReport:
    """Vanishing count over one sampled population.  Everything except
    ``elapsed_ms`` is deterministic given (seed, configuration)."""

    n: int
    ell: int | None
    samples: int
    vanish_count: int
    ratio: Fraction
    elapsed_ms: int
    seed: int
    u0_cap: int
    u1_cap: int
    coefficient_pool: str = COEFFICIENT_POOL

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ell": self.ell,
            "samples": self.samples,
            "vanish_count": self.vanish_count,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "elapsed_ms": self.elapsed_ms,
            "seed": self.seed,
            "u0_cap": self.u0_cap,
            "u1_cap": self.u1_cap,
            "coefficient_pool": self.coefficient_pool,
        }

    def without_timing(self) -> "RatioReport":
        """Copy with the wall-clock field zeroed, for byte-identical
        reports across machines and thread counts."""
        return dataclasses.replace(self, elapsed_ms=0)


def m_counts(n: int) -> tuple[int, int]:
    """Monomial counts in degrees n-3 and 2n-3: the population sizes the
    divisor parameter is measured against."""
    if n < 3:
        raise ValueError(f"curve degree must be at least 3, got {n}")
    return (n - 1) * (n - 2) // 2, (2 * n - 1) * (2 * n - 2) // 2


def trial_rng(seed: int, trial: int) -> random.Random:
    """Independent stream for one trial, from a keyed hash of (seed,
    trial): stable across platforms, thread counts and execution order."""
    digest = hashlib.sha256(f"{seed}:{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def random_coefficient(rng: random.Random) -> Fraction:
    a = rng.randint(-9, 8)
    if a >= 0:
        a += 1
    return Fraction(a, rng.randint(1, 9))


def random_homogeneous_poly(
    degree: int, max_terms: int, rng: random.Random
) -> HomogeneousPoly:
    """Uniform monomial subset of size uniform in [1, max_terms], with
    pool coefficients.  The cap must not exceed the monomial count."""
    basis = monomial_basis(degree)
    if not 1 <= max_terms <= basis.size:
        raise ValueError(
            f"term cap {max_terms} outside [1, {basis.size}] for degree {degree}"
        )
    k = rng.randint(1, max_terms)
    chosen = rng.sample(range(basis.size), k)
    return HomogeneousPoly(
        degree,
        {basis.monomials[i]: random_coefficient(rng) for i in chosen},
    )


def find_triple(ctx: CurveContext, config: SearchConfig):
    """Rejection-sample triples until both adjacent cup products vanish.

    Returns (U0, U1, U2, attempts).  Every accepted pair is
    witness-certified by the membership solver, never merely rank
    tested.  Raises BudgetExhaustedError when the budget runs out.
    """
    config.validate()
    if config.n != ctx.n:
        raise ValueError(
            f"configuration degree {config.n} does not match curve degree {ctx.n}"
        )
    d_outer = 2 * ctx.n - 3
    d_mid = ctx.n - 3
    m_mid, m_outer = m_counts(ctx.n)
    cap0 = min(config.max_terms_u0, m_outer)
    cap1 = min(config.max_terms_u1, max(m_mid, 1))
    cap2 = min(config.max_terms_u2, m_outer)
    for attempt in range(1, config.attempt_budget + 1):
        rng = trial_rng(config.seed, attempt)
        u0 = random_homogeneous_poly(d_outer, cap0, rng)
        u1 = random_homogeneous_poly(d_mid, cap1, rng)
        u2 = random_homogeneous_poly(d_outer, cap2, rng)
        if (
            ctx.jacobian_membership(u0 * u1) is not None
            and ctx.jacobian_membership(u1 * u2) is not None
        ):
            return u0, u1, u2, attempt
    raise BudgetExhaustedError(
        f"no triple with vanishing cups in {config.attempt_budget} attempts"
    )


def _experiment_caps(config: SearchConfig) -> tuple[int, int]:
    m_mid, m_outer = m_counts(config.n)
    m_mid = max(m_mid, 1)
    if config.ell is not None:
        return -(-m_outer // config.ell), -(-m_mid // config.ell)
    return min(config.max_terms_u0, m_outer), min(config.max_terms_u1, m_mid)


def vanishing_ratio_experiment(
    ctx: CurveContext, config: SearchConfig, threads: int = 1
) -> RatioReport:
    """Sample pairs (U0, U1) and count how often U0 * U1 falls into the
    ideal of partials.  Each hit is witness-certified.  Trials are
    independent, so they may be evaluated on a thread pool; the count is
    a sum over trials and does not depend on scheduling."""
    config.validate()
    if config.n != ctx.n:
        raise ValueError(
            f"configuration degree {config.n} does not match curve degree {ctx.n}"
        )
    u0_cap, u1_cap = _experiment_caps(config)
    d_outer = 2 * ctx.n - 3
    d_mid = ctx.n - 3

    def run_trial(trial: int) -> int:
        rng = trial_rng(config.seed, trial)
        u0 = random_homogeneous_poly(d_outer, u0_cap, rng)
        u1 = random_homogeneous_poly(d_mid, u1_cap, rng)
        return 1 if ctx.jacobian_membership(u0 * u1) is not None else 0

    started = time.perf_counter()
    ctx.jacobian_solver(3 * ctx.n - 6)  # build once, outside the pool
    trials = range(1, config.samples + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            vanish = sum(pool.map(run_trial, trials, chunksize=64))
    else:
        vanish = sum(map(run_trial, trials))
    elapsed_ms = int(round((time.perf_counter() - started) * 1000))

    return RatioReport(
        n=config.n,
        ell=config.ell,
        samples=config.samples,
        vanish_count=vanish,
        ratio=Fraction(vanish, config.samples),
        elapsed_ms=elapsed_ms,
        seed=config.seed,
        u0_cap=u0_cap,
        u1_cap=u1_cap,
    )
