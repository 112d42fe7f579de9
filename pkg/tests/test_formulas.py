from __future__ import annotations

import pytest

from grouplattice import groups
from grouplattice.formulas import (
    ABELIAN_SHAPES,
    P_GROUP_TABLE,
    TWO_PRIME_TABLES,
    TwoPrimeParams,
    UnrealizableError,
    UnsupportedShapeError,
    abelian_count,
    abelian_group,
    action_multiplier,
    cross_validate,
    formula_instances,
    two_prime_count,
    two_prime_group,
)
from grouplattice.lattice import count_subgroups


@pytest.mark.parametrize(
    "p, q, a, b, expected",
    [(2, 3, 1, 1, 6), (2, 5, 3, 1, 12), (2, 7, 1, 2, 60), (3, 7, 1, 1, 10), (2, 3, 4, 1, 12)],
)
def test_two_prime_examples(p, q, a, b, expected):
    params = TwoPrimeParams(p, q, a, b)
    assert two_prime_count(params) == expected
    if params.order <= 512:
        assert count_subgroups(two_prime_group(params)) == expected


def test_two_prime_unrealizable():
    with pytest.raises(UnrealizableError):
        two_prime_count(TwoPrimeParams(3, 5, 1, 1))
    with pytest.raises(UnrealizableError):
        action_multiplier(5, 7)


@pytest.mark.parametrize("args", [(2, 2, 1, 1), (4, 3, 1, 1), (2, 3, 0, 1), (2, 3, 1, 0)])
def test_two_prime_params_validation(args):
    with pytest.raises(ValueError):
        TwoPrimeParams(*args)


@pytest.mark.parametrize("p, modulus, k", [(2, 3, 2), (2, 49, 48), (3, 7, 2), (2, 25, 24), (4, 5, 2)])
def test_action_multiplier(p, modulus, k):
    got = action_multiplier(p, modulus)
    assert got == k
    assert pow(got, p, modulus) == 1
    assert all(pow(got, d, modulus) != 1 for d in range(1, p))


def test_two_prime_group_is_non_abelian_with_right_shape():
    g = two_prime_group(TwoPrimeParams(2, 3, 4, 1))
    assert g.order == 48 and not g.is_abelian
    assert groups.are_isomorphic(g, groups.semidirect_cyclic(3, 16, 2))


@pytest.mark.parametrize(
    "shape, p, expected",
    [((1, 1), 2, 5), ((2, 1), 3, 10), ((2, 2), 2, 15), ((1, 1, 1), 2, 16), ((3, 1), 2, 11), ((4, 1), 2, 14)],
)
def test_abelian_examples(shape, p, expected):
    assert abelian_count(shape, p) == expected
    assert count_subgroups(abelian_group(shape, p)) == expected


def test_abelian_errors():
    with pytest.raises(UnsupportedShapeError):
        abelian_count((3, 2), 2)
    with pytest.raises(UnsupportedShapeError):
        abelian_count((5, 1), 2)
    with pytest.raises(ValueError):
        abelian_count((1, 1), 4)


def test_abelian_formulas_by_shape():
    for p in (2, 3, 5, 7, 11):
        assert abelian_count((1, 1), p) == p + 3
        assert abelian_count((2, 1), p) == 2 * p + 4
        assert abelian_count((3, 1), p) == 3 * p + 5
        assert abelian_count((4, 1), p) == 4 * p + 6
        assert abelian_count((2, 2), p) == p * p + 3 * p + 5
        assert abelian_count((1, 1, 1), p) == 2 * p * p + 2 * p + 4


def test_tables_agree_with_formula():
    for q, table in TWO_PRIME_TABLES.items():
        for (a, b), value in table.items():
            assert two_prime_count(TwoPrimeParams(2, q, a, b)) == value
    for (p, n), value in P_GROUP_TABLE.items():
        assert abelian_count((n - 2, 1), p) == value


def test_tables_step_by_b_plus_one():
    for q, table in TWO_PRIME_TABLES.items():
        for (a, b), value in table.items():
            if (a + 1, b) in table:
                assert table[(a + 1, b)] - value == b + 1


def test_q3_column():
    assert [TWO_PRIME_TABLES[3][(a, 1)] for a in range(1, 6)] == [6, 8, 10, 12, 14]
    assert [P_GROUP_TABLE[(2, n)] for n in (3, 4, 5)] == [5, 8, 11]
    assert [P_GROUP_TABLE[(3, n)] for n in (3, 4, 5)] == [6, 10, 14]


def test_cross_validate_at_cap():
    report = cross_validate(512)
    assert len(report) == len(formula_instances())
    assert not [c for c in report if c.status == "FAIL"]
    for c in report:
        if c.order <= 512:
            assert c.status == "ok" and c.enumerated == c.formula == c.expected
        else:
            assert c.status == "skipped" and c.enumerated is None


def test_cross_validate_small_cap_skips():
    report = cross_validate(30)
    assert {c.status for c in report} == {"ok", "skipped"}
    assert all((c.status == "ok") == (c.order <= 30) for c in report)


def test_faithful_action_on_c5():
    g = groups.semidirect_cyclic(5, 4, 2)
    assert count_subgroups(g) == 14
    report = {c.family: c for c in cross_validate(20)}
    assert report["faithful"].status == "ok"


def test_shapes_listed():
    assert (1, 1, 1) in ABELIAN_SHAPES and (2, 2) in ABELIAN_SHAPES
