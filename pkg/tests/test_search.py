"""Sampler determinism, triple search, and the ratio experiment."""

from fractions import Fraction

import pytest

from masseycurve.linalg import monomial_basis, rref, to_coords
from masseycurve.poly import HomogeneousPoly
from masseycurve.search import (
    BudgetExhaustedError,
    SearchConfig,
    find_triple,
    m_counts,
    random_coefficient,
    random_homogeneous_poly,
    trial_rng,
    vanishing_ratio_experiment,
)


# -- counts -------------------------------------------------------------------


def test_m_counts_values():
    assert m_counts(5) == (6, 36)
    assert m_counts(3) == (1, 10)


def test_m_counts_match_basis_sizes():
    for n in range(3, 13):
        m1, m2 = m_counts(n)
        assert m1 == monomial_basis(n - 3).size
        assert m2 == monomial_basis(2 * n - 3).size


def test_m_counts_reject_low_degree():
    with pytest.raises(ValueError):
        m_counts(2)


# -- rng plumbing -------------------------------------------------------------


def test_trial_rng_reproducible():
    a = trial_rng(12, 7)
    b = trial_rng(12, 7)
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]


def test_trial_rng_streams_differ():
    assert trial_rng(12, 7).random() != trial_rng(12, 8).random()
    assert trial_rng(12, 7).random() != trial_rng(13, 7).random()


def test_coefficient_pool_bounds():
    rng = trial_rng(0, 1)
    seen = set()
    for _ in range(500):
        c = random_coefficient(rng)
        seen.add(c)
        assert c != 0
        # reduced fractions from a/b with |a| <= 9, 1 <= b <= 9
        assert abs(c.numerator) <= 9 and c.denominator <= 9
    assert len(seen) > 20


# -- random polynomials -------------------------------------------------------


def test_single_monomial_sample():
    p = random_homogeneous_poly(2, 1, trial_rng(3, 1))
    assert p.degree == 2
    assert len(p.terms) == 1


def test_capped_sample_degree_seven():
    p = random_homogeneous_poly(7, 3, trial_rng(5, 9))
    assert p.degree == 7
    assert 1 <= len(p.terms) <= 3


def test_same_state_same_output():
    assert random_homogeneous_poly(4, 3, trial_rng(8, 2)) == random_homogeneous_poly(
        4, 3, trial_rng(8, 2)
    )


def test_cap_out_of_range():
    with pytest.raises(ValueError):
        random_homogeneous_poly(2, 0, trial_rng(0, 1))
    with pytest.raises(ValueError):
        random_homogeneous_poly(2, 7, trial_rng(0, 1))


# -- config validation --------------------------------------------------------


def test_config_rejects_bad_fields():
    with pytest.raises(ValueError):
        SearchConfig(n=5, samples=0).validate()
    with pytest.raises(ValueError):
        SearchConfig(n=5, ell=0).validate()
    with pytest.raises(ValueError):
        SearchConfig(n=5, max_terms_u0=0).validate()
    with pytest.raises(ValueError):
        SearchConfig(n=5, attempt_budget=0).validate()
    with pytest.raises(ValueError):
        SearchConfig(n=2).validate()


# -- triple search ------------------------------------------------------------


def test_find_triple_reproducible(quintic):
    config = SearchConfig(n=5, seed=3)
    first = find_triple(quintic, config)
    second = find_triple(quintic, config)
    assert first == second
    u0, u1, u2, attempts = first
    assert attempts >= 1
    assert u0.degree == 7 and u1.degree == 2 and u2.degree == 7
    assert quintic.jacobian_membership(u0 * u1) is not None
    assert quintic.jacobian_membership(u1 * u2) is not None


def test_find_triple_constant_middle_on_cubic(cubic):
    u0, u1, u2, attempts = find_triple(cubic, SearchConfig(n=3, seed=0))
    assert u1.degree == 0
    assert len(u1.terms) == 1
    assert attempts < 100


def test_find_triple_budget_exhaustion(quintic):
    # full-width sampling at a tiny budget cannot hit the ideal
    config = SearchConfig(
        n=5, max_terms_u0=36, max_terms_u1=6, max_terms_u2=36, attempt_budget=3, seed=4
    )
    with pytest.raises(BudgetExhaustedError):
        find_triple(quintic, config)


def test_find_triple_checks_curve_degree(quintic):
    with pytest.raises(ValueError):
        find_triple(quintic, SearchConfig(n=4))


# -- ratio experiment ---------------------------------------------------------


def test_experiment_deterministic(quartic):
    config = SearchConfig(n=4, samples=80, seed=17)
    a = vanishing_ratio_experiment(quartic, config)
    b = vanishing_ratio_experiment(quartic, config)
    assert a.without_timing() == b.without_timing()
    assert a.ratio == Fraction(a.vanish_count, a.samples)


def test_experiment_thread_count_invariant(quartic):
    config = SearchConfig(n=4, samples=120, seed=23)
    serial = vanishing_ratio_experiment(quartic, config, threads=1)
    pooled = vanishing_ratio_experiment(quartic, config, threads=5)
    assert serial.without_timing() == pooled.without_timing()


def test_experiment_counts_match_replayed_trials(cubic):
    # replay the identical per-trial streams and verify each hit with an
    # independently computed dense membership certificate
    config = SearchConfig(n=3, samples=200, seed=31)
    report = vanishing_ratio_experiment(cubic, config)

    basis = monomial_basis(3)
    columns = []
    for g in cubic.partials:
        for m in monomial_basis(1).monomials:
            columns.append(to_coords(HomogeneousPoly.single(m) * g, basis))
    ideal_rows = [[col[r] for col in columns] for r in range(basis.size)]
    _, base_pivots = rref([row[:] for row in ideal_rows])

    hits = 0
    for trial in range(1, config.samples + 1):
        rng = trial_rng(config.seed, trial)
        u0 = random_homogeneous_poly(3, 3, rng)
        u1 = random_homogeneous_poly(0, 1, rng)
        target = to_coords(u0 * u1, basis)
        stacked = [row + [t] for row, t in zip(ideal_rows, target)]
        _, pivots = rref(stacked)
        if len(pivots) == len(base_pivots):
            hits += 1
    assert hits == report.vanish_count


def test_experiment_caps_follow_divisor(quartic):
    report = vanishing_ratio_experiment(quartic, SearchConfig(n=4, ell=3, samples=10))
    assert (report.u0_cap, report.u1_cap) == (7, 1)  # ceil(21/3), ceil(3/3)
    report = vanishing_ratio_experiment(quartic, SearchConfig(n=4, ell=1, samples=10))
    assert (report.u0_cap, report.u1_cap) == (21, 3)


def test_experiment_ratio_monotone_in_caps(quartic):
    # statistical, with slack: tighter caps should not vanish less often
    ratios = []
    for cap in (1, 3, 9):
        config = SearchConfig(
            n=4, max_terms_u0=cap, max_terms_u1=min(cap, 3), samples=300, seed=71
        )
        ratios.append(vanishing_ratio_experiment(quartic, config).ratio)
    slack = Fraction(1, 10)
    assert ratios[0] + slack >= ratios[1]
    assert ratios[1] + slack >= ratios[2]


def test_report_serialization(quartic):
    report = vanishing_ratio_experiment(quartic, SearchConfig(n=4, samples=10, seed=1))
    data = report.without_timing().to_dict()
    assert data["elapsed_ms"] == 0
    assert data["n"] == 4
    assert data["ratio"] == f"{report.ratio.numerator}/{report.ratio.denominator}"
