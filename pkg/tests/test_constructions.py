"""Instance generators: cluster-parabola, cup/cap extremal, random."""

from fractions import Fraction
from itertools import combinations

import pytest

from abr import (
    Color,
    GenerationFailedError,
    InvariantError,
    PlanarSequence,
    build_cluster_parabola,
    cluster_parabola_sequence,
    cupcap_extremal,
    divdiff_color_table,
    divided_difference,
    longest_monochromatic,
    random_cyclic_instance,
    validate_d_general_position,
    validate_general_position,
    verify_cluster_parabola,
)
from abr.constructions import _exponent_schedule

from _helpers import naive_longest_monochromatic, seeded


def test_exponent_schedule_frozen():
    sigmas, kappas, nus = _exponent_schedule(3)
    assert sigmas == [4, 18, 60]
    assert kappas == [1, 4, 7]
    assert nus == [4, 44, 142]


def test_build_sizes_and_positivity():
    for m, size in ((1, 2), (2, 4), (3, 16), (4, 256)):
        seq, params = build_cluster_parabola(m, 2)
        assert len(seq) == size
        assert params.depth == m and params.base == 2
        assert len(params.x_scale) == m - 1
        assert all(t > 0 for t in seq.ts)


def test_build_validates_arguments():
    with pytest.raises(InvariantError):
        build_cluster_parabola(0, 2)
    with pytest.raises(InvariantError):
        build_cluster_parabola(2, 1)
    with pytest.raises(InvariantError):
        build_cluster_parabola(2.0, 2)


def test_sequence_search_goldens():
    for m, expected_max in ((1, 2), (2, 4), (3, 6)):
        seq, params, report = cluster_parabola_sequence(m)
        assert params.base == 2  # the very first base already verifies
        assert report.exhaustive
        assert report.within_bound
        assert report.max_monotone == expected_max
        assert report.n == len(seq)
    # the m=3 witness: both end clusters contribute a pair, middles one point
    assert report.witness == (0, 1, 4, 8, 12, 13)


def test_m3_cluster_sign_structure():
    seq, _, _ = cluster_parabola_sequence(3)
    table = divdiff_color_table(seq, 3)

    def sign(tup):
        return table.color(tup)

    # a quadruple inside one cluster copies the level-2 sign: negative
    for c in range(4):
        assert sign((4 * c, 4 * c + 1, 4 * c + 2, 4 * c + 3)) is Color.NEGATIVE
    # three in one cluster + one outside: the parabola term dominates, positive
    assert sign((0, 1, 2, 4)) is Color.POSITIVE
    assert sign((0, 4, 5, 6)) is Color.POSITIVE
    # two-and-two: negative
    assert sign((0, 1, 4, 5)) is Color.NEGATIVE
    assert sign((4, 5, 12, 13)) is Color.NEGATIVE
    # a pair in the middle cluster of three: positive; at either end: negative
    assert sign((0, 4, 5, 8)) is Color.POSITIVE
    assert sign((0, 1, 4, 8)) is Color.NEGATIVE
    assert sign((0, 4, 8, 9)) is Color.NEGATIVE
    # one point per cluster mirrors the coarse level-2 quadruple: negative
    assert sign((0, 4, 8, 12)) is Color.NEGATIVE


def test_m3_no_seven_term_run_spot_check():
    # the exhaustive search already proves max = 6; cross-check a few
    # 7-subsets against the naive definition
    seq, _, report = cluster_parabola_sequence(3)
    table = divdiff_color_table(seq, 3)
    rng = seeded(14)
    for _ in range(40):
        subset = tuple(sorted(rng.sample(range(16), 7)))
        colors = {table.color(t) for t in combinations(subset, 4)}
        assert len(colors) == 2
    # and the reported witness really is monochromatic
    assert {table.color(t) for t in combinations(report.witness, 4)} == {Color.NEGATIVE}


def test_verify_rejects_wrong_size():
    seq, _ = build_cluster_parabola(3, 2)
    with pytest.raises(InvariantError):
        verify_cluster_parabola(seq, 2)


def test_verify_budget_not_exhaustive():
    seq, _ = build_cluster_parabola(3, 2)
    report = verify_cluster_parabola(seq, 3, budget=10)
    assert not report.exhaustive
    assert report.nodes_visited >= 10


def test_report_json_shapes():
    seq, params, report = cluster_parabola_sequence(2)
    assert set(params.to_json_obj()) == {"m", "base", "x_scale", "steepness", "h_scale"}
    obj = report.to_json_obj()
    assert set(obj) == {"m", "n", "max_monotone", "exhaustive", "witness"}
    assert obj["m"] == 2 and obj["n"] == 4


# ------------------------------------------------------------------ cupcap

def test_cupcap_sizes():
    assert len(cupcap_extremal(3)) == 2
    assert len(cupcap_extremal(4)) == 6
    assert len(cupcap_extremal(5)) == 20
    with pytest.raises(InvariantError):
        cupcap_extremal(2)
    with pytest.raises(InvariantError):
        cupcap_extremal("4")


def test_cupcap_no_collinear_triples():
    for k in (4, 5):
        seq = cupcap_extremal(k)
        assert validate_d_general_position(seq, 2).valid


def test_cupcap_extremal_lengths():
    for k, expected in ((4, 3), (5, 4)):
        seq = cupcap_extremal(k)
        result = longest_monochromatic(divdiff_color_table(seq, 2))
        assert result.exhaustive
        assert result.size == expected


def test_cupcap_4_matches_naive():
    table = divdiff_color_table(cupcap_extremal(4), 2)
    naive_size, _, _ = naive_longest_monochromatic(table)
    assert naive_size == 3


# ------------------------------------------------------------------ random

def test_random_cyclic_instance_deterministic():
    a = random_cyclic_instance(3, 7, 99)
    b = random_cyclic_instance(3, 7, 99)
    c = random_cyclic_instance(3, 7, 100)
    assert a.points == b.points
    assert a.points != c.points


def test_random_cyclic_instance_is_valid():
    rng = seeded(12)
    for _ in range(20):
        d = rng.randrange(2, 5)
        n = rng.randrange(d + 1, d + 5)
        inst = random_cyclic_instance(d, n, rng.randrange(1 << 30))
        assert inst.dimension == d and len(inst) == n
        assert validate_general_position(inst).valid


def test_random_cyclic_instance_validation():
    with pytest.raises(InvariantError):
        random_cyclic_instance(1, 4, 0)
    with pytest.raises(InvariantError):
        random_cyclic_instance(3, 3, 0)
    with pytest.raises(InvariantError):
        random_cyclic_instance(3, 5, "seed")
    with pytest.raises(GenerationFailedError):
        random_cyclic_instance(2, 5, 0, bits=1)  # two distinct values can't seat five
