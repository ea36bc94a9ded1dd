import math

import numpy as np
import pytest

import dirac3sphere as d3s
from dirac3sphere import Metric

from _oracles import random_metrics_with_sign

ROUND = Metric(1, 1, 1)


def test_admissible_levels():
    assert list(d3s.admissible_levels(d3s.S3, 4)) == [0, 1, 2, 3, 4]
    assert list(d3s.admissible_levels(d3s.SO3_TRIVIAL, 5)) == [0, 2, 4]
    assert list(d3s.admissible_levels(d3s.SO3_NONTRIVIAL, 5)) == [1, 3, 5]
    with pytest.raises(ValueError):
        d3s.admissible_levels("sphere", 3)


def test_assemble_so3_trivial_level0_single_line():
    spec = d3s.assemble(ROUND, d3s.SO3_TRIVIAL, 0)
    assert len(spec.lines) == 1
    line = spec.lines[0]
    assert line.eigenvalue == pytest.approx(-1.5, abs=1e-14)
    assert line.tag == "AB"
    assert line.block_multiplicity == 2
    assert line.total_multiplicity == 2


def test_assemble_s3_level1_contains_mu_line():
    spec = d3s.assemble(ROUND, d3s.S3, 1)
    mu_lines = [l for l in spec.lines if abs(l.eigenvalue - 1.5) < 1e-12]
    assert len(mu_lines) == 1
    assert mu_lines[0].level == 1
    assert mu_lines[0].total_multiplicity == 2
    # the level-1 eigenvalue -5/2 merges across blocks: 3 x dim V_1 = 6
    other = [l for l in spec.lines if abs(l.eigenvalue + 2.5) < 1e-12]
    assert other[0].total_multiplicity == 6


def test_line_multiplicity_consistency():
    spec = d3s.assemble(Metric(1.3, 0.8, 0.6), d3s.S3, 9)
    for line in spec.lines:
        assert line.total_multiplicity == line.block_multiplicity * (line.level + 1)
    assert [l.eigenvalue for l in spec.lines] == sorted(l.eigenvalue for l in spec.lines)
    # each level contributes dimension 2(n+1)^2 in total multiplicity
    per_level = {}
    for line in spec.lines:
        per_level[line.level] = per_level.get(line.level, 0) + line.total_multiplicity
    assert per_level == {n: 2 * (n + 1) ** 2 for n in range(10)}


def test_spin_structure_partition():
    m = Metric(1.1, 0.9, 0.75)
    full = d3s.assemble(m, d3s.S3, 8)
    even = d3s.assemble(m, d3s.SO3_TRIVIAL, 8)
    odd = d3s.assemble(m, d3s.SO3_NONTRIVIAL, 8)
    key = lambda l: (l.eigenvalue, l.level, l.tag, l.block_multiplicity, l.total_multiplicity)
    assert sorted(map(key, full.lines)) == sorted(map(key, even.lines + odd.lines))


def test_berger_family_level1_eigenvalue():
    for T in (1.2, 1.5, 1.8):
        m = Metric(1 / T, 1, 1)
        spec = d3s.assemble(m, d3s.S3, 1)
        target = 2 - T / 2
        assert min(abs(l.eigenvalue - target) for l in spec.lines) <= 1e-10
        assert m.mu == pytest.approx(target, rel=1e-14)


def test_merged_view_combines_cross_level_coincidences():
    # T = 2 Berger metric: -3 appears at level 1 (mult 2) and level 3 (mult 8)
    spec = d3s.assemble(Metric(0.5, 1, 1), d3s.S3, 3)
    raw = [l for l in spec.lines if abs(l.eigenvalue + 3.0) < 1e-9]
    assert {l.level for l in raw} == {1, 3}
    assert sum(l.total_multiplicity for l in raw) == 10
    merged = spec.merged_lines()
    hits = [(v, mult) for v, mult in merged if abs(v + 3.0) < 1e-9]
    assert len(hits) == 1
    assert hits[0][1] == 10
    # raw lines are untouched by the merged view
    assert len([l for l in spec.lines if abs(l.eigenvalue + 3.0) < 1e-9]) == 2


def test_round_sphere_spectrum_closed_form():
    # the classical full spectrum: level n carries n + 1/2 with multiplicity
    # n(n+1) (absent at n = 0) and -(n + 3/2) with multiplicity (n+1)(n+2)
    spec = d3s.assemble(ROUND, d3s.S3, 12)
    by_level = {}
    for line in spec.lines:
        by_level.setdefault(line.level, []).append(line)
    for n in range(13):
        lines = sorted(by_level[n], key=lambda l: l.eigenvalue)
        if n == 0:
            assert len(lines) == 1
        else:
            assert len(lines) == 2
            assert lines[1].eigenvalue == pytest.approx(n + 0.5, abs=1e-10)
            assert lines[1].total_multiplicity == n * (n + 1)
        assert lines[0].eigenvalue == pytest.approx(-(n + 1.5), abs=1e-10)
        assert lines[0].total_multiplicity == (n + 1) * (n + 2)


def test_smallest_round_metric():
    report = d3s.smallest(ROUND, d3s.S3)
    assert report.value == pytest.approx(1.5, rel=1e-14)
    assert report.multiplicity_d_squared == 4
    assert report.certified
    assert report.method == "closed-form"
    assert report.certification_trace.passed


def test_smallest_other_structures_round():
    r_triv = d3s.smallest(ROUND, d3s.SO3_TRIVIAL)
    assert r_triv.value == pytest.approx(1.5, rel=1e-14)
    assert r_triv.multiplicity_d_squared == 2
    r_non = d3s.smallest(ROUND, d3s.SO3_NONTRIVIAL)
    assert r_non.value == pytest.approx(1.5, rel=1e-14)
    assert r_non.multiplicity_d_squared == 2


def test_smallest_211():
    m = Metric(2, 1, 1)
    report = d3s.smallest(m, d3s.S3)
    assert report.value == pytest.approx(m.mu, rel=1e-14)
    assert report.value == pytest.approx(1.75, rel=1e-14)
    assert report.multiplicity_d_squared == 2
    assert report.certified
    value, mult, _ = d3s.enumerated_min_abs(m, d3s.S3, 25)
    assert value == pytest.approx(report.value, rel=1e-9)
    assert mult == 2


def test_smallest_negative_scal_uncertified():
    m = Metric(1, 1, 0.4)
    report = d3s.smallest(m, d3s.S3, max_level=30)
    assert not report.certified
    assert report.method == "enumeration"
    spec = d3s.assemble(m, d3s.S3, 30)
    assert report.value == pytest.approx(min(abs(l.eigenvalue) for l in spec.lines), rel=1e-10)
    with pytest.raises(d3s.UncertifiableError):
        d3s.smallest(m, d3s.S3, certify=True)


def test_smallest_certify_off_skips_trace():
    report = d3s.smallest(ROUND, d3s.S3, certify=False)
    assert not report.certified
    assert report.certification_trace is None
    assert report.value == pytest.approx(1.5, rel=1e-14)


def test_certify_round_and_near_boundary():
    trace = d3s.certify_fundamental_tone(ROUND)
    assert trace.passed
    named = {s.name: s for s in trace.steps}
    mu_eq = named["base:G(1,0)=mu^2"]
    assert "2.25" in mu_eq.detail
    # close to the scal = 0 point the chain still passes, with small margins
    trace2 = d3s.certify_fundamental_tone(Metric(1, 1, 0.55))
    assert trace2.passed
    assert 0 < trace2.min_margin < trace.min_margin


def test_certify_rejects_boundary_point():
    with pytest.raises(d3s.UncertifiableError):
        d3s.certify_fundamental_tone(Metric(1, 1, 0.5))


def test_certified_minimum_matches_enumeration_sample():
    rng = np.random.default_rng(14)
    for m in random_metrics_with_sign(rng, 25, d3s.POSITIVE):
        for manifold, want in ((d3s.S3, m.mu), (d3s.SO3_NONTRIVIAL, m.mu), (d3s.SO3_TRIVIAL, m.C)):
            value, mult, _ = d3s.enumerated_min_abs(m, manifold, 25)
            assert value == pytest.approx(want, rel=1e-9)
            assert mult == 2
        # C >= mu > 0, strict unless a = b = c
        assert m.C >= m.mu > 0
        if not m.is_round(1e-9):
            assert m.C > m.mu
    assert Metric(1, 1, 1).C == Metric(1, 1, 1).mu


def test_round_line_multiplicity_four_only_on_diagonal():
    value, mult, _ = d3s.enumerated_min_abs(ROUND, d3s.S3, 25)
    assert value == pytest.approx(1.5, rel=1e-12)
    assert mult == 4


def test_lichnerowicz_bound():
    rng = np.random.default_rng(21)
    for m in random_metrics_with_sign(rng, 10, d3s.POSITIVE):
        spec = d3s.assemble(m, d3s.S3, 10)
        bound = m.scal / 4
        for line in spec.lines:
            assert line.eigenvalue ** 2 >= bound * (1 - 1e-9)


def test_heat_trace_large_t_dominated_by_fundamental_tone():
    result = d3s.heat_trace(ROUND, d3s.S3, 10.0, 5)
    assert result.value == pytest.approx(4 * math.exp(-22.5), rel=1e-6)


def test_heat_trace_small_t_asymptotics():
    spec = d3s.assemble(ROUND, d3s.S3, 60)
    for t in (0.02, 0.05, 0.1):
        result = d3s.heat_trace(ROUND, d3s.S3, t, 60, spectrum=spec)
        asym = (4 * math.pi * t) ** -1.5 * (4 * math.pi ** 2 - 2 * math.pi ** 2 * t)
        assert result.value == pytest.approx(asym, rel=0.01)
        assert result.tail_estimate <= 1e-10 * result.value


def test_heat_trace_level0_closed_form():
    m = Metric(1.4, 0.7, 0.9)
    for t in (0.3, 2.0):
        result = d3s.heat_trace(m, d3s.SO3_TRIVIAL, t, 0)
        assert result.value == pytest.approx(2 * math.exp(-t * m.C ** 2), rel=1e-13)


def test_heat_trace_rejects_bad_t():
    with pytest.raises(ValueError):
        d3s.heat_trace(ROUND, d3s.S3, 0.0, 5)


def test_counting_function_round():
    spec = d3s.assemble(ROUND, d3s.S3, 12)
    assert d3s.counting_function(ROUND, d3s.S3, 1.0, 12, spectrum=spec) == 0
    with pytest.warns(d3s.TruncationWarning):
        assert d3s.counting_function(ROUND, d3s.SO3_TRIVIAL, 1.5, 0) == 2


def test_counting_function_weyl_ballpark():
    import warnings

    spec = d3s.assemble(ROUND, d3s.S3, 60)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        count = d3s.counting_function(ROUND, d3s.S3, 40.0, 60, spectrum=spec)
    weyl = d3s.weyl_count_estimate(ROUND, d3s.S3, 40.0)
    assert weyl == pytest.approx((2 / 3) * 40 ** 3, rel=1e-12)
    assert abs(count - weyl) <= 0.1 * weyl


def test_counting_warns_when_levels_insufficient():
    with pytest.warns(d3s.TruncationWarning):
        d3s.counting_function(ROUND, d3s.S3, 50.0, 10)


def test_spectrum_permutation_invariance():
    import itertools

    m = Metric(1.2, 0.9, 0.6)
    base = d3s.assemble(m, d3s.S3, 6)
    base_vals = np.array([l.eigenvalue for l in base.lines for _ in range(l.total_multiplicity)])
    for perm in itertools.permutations(m.triple()):
        other = d3s.assemble(Metric(*perm), d3s.S3, 6)
        vals = np.array([l.eigenvalue for l in other.lines for _ in range(l.total_multiplicity)])
        assert np.abs(np.sort(base_vals) - np.sort(vals)).max() <= 1e-9
