"""Index-set construction, ratio statistics, and the scan window logic."""

import pytest

from conftest import naive_path_length, trial_division_is_prime

from collatzpath import (
    SET_C_SOURCE_RANKS,
    SET_D_FIT_RANKS,
    DegenerateStatsError,
    DomainError,
    IndexSet,
    Provenance,
    RangeError,
    RatioStats,
    SetLabel,
    catalog_entries,
    catalog_entry,
    double_exponents,
    fit_line_indices,
    fit_loglog,
    fixture_set_C,
    fixture_set_D,
    generate_set_A,
    generate_set_B,
    mersenne_set,
    ratio_stats,
    reference_pairs,
    scan_ratios,
)

MID_RANGE_EXPONENTS = (
    23209, 44497, 86243, 110503, 132049, 216091, 756839,
    859433, 1257787, 1398269, 2976221, 3021377, 6972593,
)

NEXT_PRIME_ROW = (
    23227, 44501, 86249, 110527, 132059, 216103, 756853,
    859447, 1257827, 1398281, 2976229, 3021407, 6972607,
)

MIDPOINT_ROW = (
    22455, 33853, 65370, 98373, 121276, 174070, 486465,
    808136, 1058610, 1328028, 2187245, 2998799, 4996985,
)


def test_mersenne_set_default():
    s = mersenne_set()
    assert s.label is SetLabel.MERSENNE
    assert s.provenance is Provenance.FIXTURE
    assert s.indices == MID_RANGE_EXPONENTS


def test_mersenne_set_ranges():
    assert mersenne_set(1, 3).indices == (2, 3, 5)
    assert mersenne_set(26, 26).indices == (23209,)
    for bad in ((0, 5), (5, 48), (10, 9)):
        with pytest.raises(RangeError):
            mersenne_set(*bad)


def test_index_set_validation():
    with pytest.raises(DomainError):
        IndexSet(label=SetLabel.A, indices=(), provenance=Provenance.GENERATED)
    with pytest.raises(DomainError):
        IndexSet(label=SetLabel.A, indices=(0, 5), provenance=Provenance.GENERATED)
    with pytest.raises(DomainError):
        IndexSet(label=SetLabel.A, indices=(5, 5), provenance=Provenance.GENERATED)
    with pytest.raises(DomainError):
        IndexSet(label=SetLabel.A, indices=(7, 3), provenance=Provenance.GENERATED)


def test_set_a_is_the_next_prime_row():
    s = generate_set_A(mersenne_set())
    assert s.label is SetLabel.A
    assert s.provenance is Provenance.GENERATED
    assert s.indices == NEXT_PRIME_ROW
    for base, lifted in zip(MID_RANGE_EXPONENTS, s.indices):
        assert lifted > base


def test_set_a_minimal_base():
    tiny = IndexSet(label=SetLabel.MERSENNE, indices=(1,), provenance=Provenance.FIXTURE)
    assert generate_set_A(tiny).indices == (2,)


def test_set_b_is_the_midpoint_row():
    s = generate_set_B()
    assert s.label is SetLabel.B
    assert s.indices == MIDPOINT_ROW
    # Successive catalog exponents in this range are both odd, so the sums
    # are even and the midpoints are exact, not floored.
    exponents = [catalog_entry(k).exponent for k in range(25, 39)]
    for mid, (a, b) in zip(s.indices, zip(exponents, exponents[1:])):
        assert 2 * mid == a + b


def test_set_b_edges():
    assert generate_set_B(2, 3).indices == (4,)
    with pytest.raises(RangeError):
        generate_set_B(5, 5)
    with pytest.raises(RangeError):
        generate_set_B(0, 3)


def test_fixture_set_c_doubles_catalog_exponents():
    s = fixture_set_C()
    assert s.provenance is Provenance.FIXTURE
    assert s.indices[:3] == (22426, 43402, 46418)
    assert len(s.indices) == 13
    assert s.indices == tuple(2 * catalog_entry(k).exponent for k in SET_C_SOURCE_RANKS)


def test_double_exponents_generator():
    base = IndexSet(label=SetLabel.MERSENNE, indices=(11213,), provenance=Provenance.FIXTURE)
    assert double_exponents(base).indices == (22426,)
    ranks_base = IndexSet(
        label=SetLabel.MERSENNE,
        indices=tuple(catalog_entry(k).exponent for k in SET_C_SOURCE_RANKS),
        provenance=Provenance.FIXTURE,
    )
    assert double_exponents(ranks_base).indices == fixture_set_C().indices


def test_fixture_set_d_sits_on_the_fit_line():
    s = fixture_set_D()
    assert s.indices[1] == 43644
    assert len(s.indices) == 13
    fit = fit_loglog([(e.rank, e.exponent) for e in catalog_entries()])
    regenerated = fit_line_indices(fit)
    assert regenerated.indices == s.indices
    assert regenerated.provenance is Provenance.GENERATED
    assert len(SET_D_FIT_RANKS) == 13


def test_ratio_stats_trivial():
    stats = ratio_stats([(1, 2), (2, 2)])
    assert stats == RatioStats(count=2, mean=1.5, sample_variance=0.5)


def test_ratio_stats_permutation_and_scale_invariance():
    pairs = [(n, d) for n, d in zip(MID_RANGE_EXPONENTS, range(100, 113))]
    forward = ratio_stats(pairs)
    assert ratio_stats(list(reversed(pairs))) == forward
    scaled = [(2 * n, 2 * d) for n, d in pairs]
    assert ratio_stats(scaled) == forward


def test_ratio_stats_uses_the_sample_divisor():
    pairs = list(reference_pairs(SetLabel.MERSENNE))
    stats = ratio_stats(pairs)
    # Divisor count-1 reproduces the published 0.0002977; divisor count
    # would give 0.000275 and miss by three orders of tolerance.
    assert abs(stats.sample_variance - 0.0002977) < 5e-8
    population_variance = stats.sample_variance * (stats.count - 1) / stats.count
    assert abs(population_variance - 0.0002977) > 5e-8


def test_ratio_stats_validation():
    with pytest.raises(DegenerateStatsError):
        ratio_stats([])
    with pytest.raises(DegenerateStatsError):
        ratio_stats([(3, 5)])
    with pytest.raises(DomainError):
        ratio_stats([(0, 5), (2, 4)])
    with pytest.raises(DomainError):
        ratio_stats([(2, -1), (3, 4)])


PUBLISHED_STATS = {
    SetLabel.MERSENNE: (13.4473, 0.0002977),
    SetLabel.A: (13.4460, 0.0003194),
    SetLabel.B: (13.4485, 0.0017853),
    SetLabel.C: (13.4618, 0.00132591),
    SetLabel.D: (13.4515, 0.000502943),
}

ROW_INDICES = {
    SetLabel.MERSENNE: MID_RANGE_EXPONENTS,
    SetLabel.A: NEXT_PRIME_ROW,
    SetLabel.B: MIDPOINT_ROW,
}


@pytest.mark.parametrize("label", list(SetLabel))
def test_reference_pairs_reproduce_published_statistics(label):
    pairs = reference_pairs(label)
    assert len(pairs) == 13
    expected_indices = ROW_INDICES.get(label)
    if expected_indices is None:
        expected_indices = (fixture_set_C() if label is SetLabel.C else fixture_set_D()).indices
    assert tuple(n for n, _ in pairs) == expected_indices
    stats = ratio_stats(list(pairs))
    mean, variance = PUBLISHED_STATS[label]
    assert abs(stats.mean - mean) < 5e-5
    assert abs(stats.sample_variance - variance) < 5e-8


def test_scan_integer_window():
    records = scan_ratios(16, 1, 1, False)
    assert [r.exponent for r in records] == [15, 16, 17]
    assert [r.is_prime_index for r in records] == [False, False, True]
    for r in records:
        assert r.d == naive_path_length(2**r.exponent - 1)[0]
        assert r.ratio == r.d / r.exponent


def test_scan_integer_window_clips_at_two():
    records = scan_ratios(3, 3, 2, False)
    assert [r.exponent for r in records] == [3, 5, 7, 9]


def test_scan_prime_window_around_a_catalog_exponent():
    records = scan_ratios(23209, 2, 1, True)
    exponents = [r.exponent for r in records]
    assert len(exponents) == 5 and exponents[2] == 23209
    assert exponents == sorted(exponents)
    for r in records:
        assert trial_division_is_prime(r.exponent)
        assert r.is_prime_index
    assert records[2].d == 312164
    assert records[2].ratio == 312164 / 23209


def test_scan_prime_window_small():
    records = scan_ratios(127, 2, 1, True, jobs=2)
    assert [r.exponent for r in records] == [109, 113, 127, 131, 137]
    assert records[2].d == 1660
    serial = scan_ratios(127, 2, 1, True, jobs=1)
    assert records == serial


def test_scan_prime_stride_skips():
    # Walking out from 100: below 97, 89, 83, 79 keeps every 2nd (89, 79);
    # above 101, 103, 107, 109 keeps every 2nd (103, 109).
    records = scan_ratios(100, 2, 2, True)
    assert [r.exponent for r in records] == [79, 89, 103, 109]


def test_scan_prime_window_truncates_at_the_bottom():
    records = scan_ratios(5, 10, 1, True)
    assert [r.exponent for r in records] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]


def test_scan_count_zero_is_empty():
    assert scan_ratios(100, 0, 5, True) == []
    assert scan_ratios(100, 0, 5, False) == []


def test_scan_validation():
    with pytest.raises(DomainError):
        scan_ratios(1, 2, 1, True)
    with pytest.raises(DomainError):
        scan_ratios(100, -1, 1, True)
    with pytest.raises(DomainError):
        scan_ratios(100, 2, 0, True)
    with pytest.raises(DomainError):
        scan_ratios(100, 2, 1, True, jobs=0)


@pytest.mark.long
def test_staircase_window_structure():
    # A wide stride-1 window across rank 26.  Structural checks only; the
    # band behaviour is reported, not asserted, since nearby non-catalog
    # primes have no published reference values.
    records = scan_ratios(23209, 25, 1, True, jobs=4)
    assert len(records) == 51
    exponents = [r.exponent for r in records]
    assert exponents == sorted(exponents)
    assert exponents[25] == 23209
    assert records[25].d == 312164
    ratios = [r.ratio for r in records]
    spread = max(ratios) - min(ratios)
    print(f"staircase window: {len(records)} primes, ratio spread {spread:.4f}")
