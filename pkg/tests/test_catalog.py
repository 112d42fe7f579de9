from __future__ import annotations

import os
from collections import Counter
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grouplattice import groups
from grouplattice.catalog import (
    EMBEDDED_ORDERS,
    EXTRA_CATALOG_ENV,
    KNOWN_GROUP_COUNTS,
    REFERENCE_TILDE_FIXED,
    CatalogEntry,
    CatalogIntegrityError,
    CatalogParseError,
    census,
    check_integrity,
    compare_census,
    default_extra_paths,
    format_cycles,
    load_embedded,
    load_file,
    parse_catalog,
    parse_cycles,
    per_order_counts,
    tilde_inventory,
)
from grouplattice.groupspec import group_from_spec
from grouplattice.lattice import count_subgroups
from grouplattice.structure import is_tilde_fixed, prime_factorization

DATA = Path(__file__).resolve().parents[1] / "data"


@pytest.fixture(scope="module")
def rows():
    return census(load_embedded())


def test_parse_cycles():
    assert parse_cycles("()", 3) == (0, 1, 2)
    assert parse_cycles("(0 1 2)", 4) == (1, 2, 0, 3)
    assert parse_cycles("(0 1)(2 3)", 4) == (1, 0, 3, 2)
    assert parse_cycles("(0,3)", 4) == (3, 1, 2, 0)


@pytest.mark.parametrize("text", ["", "0 1", "(0 1", "(0 4)", "(0 1)(1 2)", "(0 1) x"])
def test_parse_cycles_rejects(text):
    with pytest.raises(ValueError):
        parse_cycles(text, 4)


@settings(max_examples=50)
@given(st.integers(1, 9).flatmap(lambda n: st.permutations(list(range(n)))))
def test_cycle_notation_round_trip(perm):
    perm = tuple(perm)
    assert parse_cycles(format_cycles(perm), len(perm)) == perm


def test_parse_catalog_format():
    text = "# header\n\n6 1 S3 3; (0 1); (0 1 2)\n1 1 C1 1\n"
    entries = parse_catalog(text)
    assert [(e.order, e.index, e.name, e.degree) for e in entries] == [(6, 1, "S3", 3), (1, 1, "C1", 1)]
    assert entries[0].generators == ((1, 0, 2), (1, 2, 0))
    assert entries[1].generators == ()
    assert [parse_catalog(e.to_line())[0] for e in entries] == entries


@pytest.mark.parametrize(
    "text, line",
    [
        ("6 1 S3; (0 1)", 1),
        ("# c\n6 x S3 3; (0 1)", 2),
        ("6 1 S3 3; (0 5)", 1),
        ("6 1 S3 0", 1),
        ("\n\n4 1 C4 4; 0 1 2 3", 3),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(CatalogParseError) as info:
        parse_catalog(text, "bad.txt")
    assert info.value.line == line
    assert str(info.value).startswith(f"bad.txt:{line}:")


def test_load_file_examples(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert load_file(empty) == []

    one = tmp_path / "s3.txt"
    one.write_text("6 1 S3 3; (0 1); (0 1 2)\n")
    (e,) = load_file(one)
    assert e.order == 6 and e.group().order == 6
    assert groups.are_isomorphic(e.group(), groups.symmetric(3))

    dup = tmp_path / "dup.txt"
    dup.write_text("6 1 S3 3; (0 1); (0 1 2)\n6 2 D6 3; (1 2); (0 1 2)\n")
    with pytest.raises(CatalogIntegrityError, match="isomorphic"):
        load_file(dup)


def test_integrity_errors(tmp_path):
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("8 1 C8 4; (0 1 2 3)\n")
    with pytest.raises(CatalogIntegrityError, match="order 4"):
        load_file(wrong)
    key = tmp_path / "key.txt"
    key.write_text("2 1 C2 2; (0 1)\n2 1 C2b 2; (0 1)\n")
    with pytest.raises(CatalogIntegrityError, match="duplicate key"):
        load_file(key)
    entries = parse_catalog("2 1 C2 2; (0 1)\n")
    with pytest.raises(CatalogIntegrityError, match="expected 2"):
        check_integrity(entries, expected_counts={2: 2})


def test_embedded_catalog_counts():
    entries = load_embedded()
    counts = per_order_counts(entries)
    assert counts == {k: KNOWN_GROUP_COUNTS[k] for k in EMBEDDED_ORDERS}
    assert counts[1] == 1 and counts[16] == 14 and counts[24] == 15
    assert len(entries) == sum(counts.values())


def test_embedded_entries_close_to_declared_order():
    for e in load_embedded():
        assert e.group().order == e.order, e.name


def test_embedded_named_entries_match_their_spec():
    """Names that are valid specs must describe the group they label."""
    checked = 0
    for e in load_embedded():
        try:
            g = group_from_spec(e.name)
        except ValueError:
            continue
        assert groups.are_isomorphic(g, e.group()), e.name
        checked += 1
    assert checked >= 50


def tilde_small(rows, order):
    return {
        r.entry.name: r.subgroup_count
        for r in rows
        if r.entry.order == order and r.tilde_fixed and r.subgroup_count <= 12
    }


def test_census_order_16(rows):
    found = tilde_small(rows, 16)
    assert sorted(found.values()) == [11, 11, 11]
    expected = [group_from_spec(s) for s in ("C2xC8", "Q16", "M16")]
    got = [r.entry.group() for r in rows if r.entry.name in found]
    for g in expected:
        assert sum(groups.are_isomorphic(g, h) for h in got) == 1


def test_census_order_12(rows):
    found = tilde_small(rows, 12)
    assert sorted(found.values()) == [8, 10]
    by_count = {c: next(r.entry.group() for r in rows if r.entry.name == n) for n, c in found.items()}
    assert groups.are_isomorphic(by_count[10], groups.alternating(4))
    assert groups.are_isomorphic(by_count[8], group_from_spec("C4:C3[2]"))


def test_census_order_27(rows):
    found = [r for r in rows if r.entry.order == 27 and r.tilde_fixed and r.subgroup_count <= 12]
    assert [r.subgroup_count for r in found] == [10, 10]
    (nonab,) = [r.entry.group() for r in found if not r.entry.group().is_abelian]
    (ab,) = [r.entry.group() for r in found if r.entry.group().is_abelian]
    assert groups.are_isomorphic(nonab, groups.named("E27"))
    assert groups.are_isomorphic(ab, group_from_spec("C3xC9"))


def test_census_matches_enumeration(rows):
    for r in rows:
        g = r.entry.group()
        assert r.subgroup_count == count_subgroups(g)
        assert r.tilde_fixed == is_tilde_fixed(g)


def test_reference_rows_are_correct_groups():
    for spec, count in REFERENCE_TILDE_FIXED:
        g = group_from_spec(spec)
        assert is_tilde_fixed(g), spec
        assert count_subgroups(g) == count, spec


def test_compare_census_reports_dihedral_8(rows):
    cmp = compare_census(rows)
    assert not cmp.missing
    assert not cmp.count_mismatch
    assert [(r.entry.name, r.subgroup_count) for r in cmp.unexpected] == [("D8", 10)]
    in_range = [s for s, _ in REFERENCE_TILDE_FIXED if group_from_spec(s).order in EMBEDDED_ORDERS]
    assert sorted(s for s, _ in cmp.matched) == sorted(in_range)
    assert not cmp.ok


def test_compare_census_restricts_to_present_orders(rows):
    small = [r for r in rows if r.entry.order <= 6]
    cmp = compare_census(small)
    assert cmp.ok
    assert sorted(s for s, _ in cmp.matched) == ["C1", "C2xC2", "S3"]


def test_two_prime_orders_with_few_subgroups(rows):
    allowed = [group_from_spec(s) for s in ("S3",)]
    for r in rows:
        ps = prime_factorization(r.entry.order)
        if len(ps) != 2 or r.subgroup_count > 6:
            continue
        g = r.entry.group()
        e = sorted(ps.values())
        cyclic_ok = g.is_abelian and max(g.element_orders) == g.order and e in ([1, 1], [1, 2])
        assert cyclic_ok or any(groups.are_isomorphic(g, h) for h in allowed), r.entry.name


def test_tilde_inventory():
    inv = tilde_inventory(12)
    assert len(inv) == 25
    counts = Counter(it.count for it in inv)
    assert counts[10] == 9
    for it in inv:
        assert is_tilde_fixed(it.group)
        assert count_subgroups(it.group) == it.count <= 12


def test_default_extra_paths(monkeypatch):
    monkeypatch.delenv(EXTRA_CATALOG_ENV, raising=False)
    assert default_extra_paths() == []
    monkeypatch.setenv(EXTRA_CATALOG_ENV, os.pathsep.join(["a.txt", "b.txt"]))
    assert default_extra_paths() == [Path("a.txt"), Path("b.txt")]


@pytest.mark.parametrize("name, order, count", [("order32.txt", 32, 51), ("order81.txt", 81, 15)])
def test_extended_files(name, order, count):
    path = DATA / name
    if not path.exists():
        pytest.skip(f"{name} not present")
    entries = load_file(path)
    assert per_order_counts(entries) == {order: count}
    nonabelian = [count_subgroups(e.group()) for e in entries if not e.group().is_abelian]
    assert min(nonabelian) >= 14


def test_entry_line_format():
    e = CatalogEntry(4, 2, "C2xC2", 4, ((1, 0, 3, 2), (2, 3, 0, 1)))
    assert e.to_line() == "4 2 C2xC2 4; (0 1)(2 3); (0 2)(1 3)"
