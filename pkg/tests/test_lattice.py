import pytest

from symchain import (
    GroundSet,
    InputError,
    Subset,
    circ_count,
    disc_count,
    format_subset,
    interval_mod,
    level,
    parse_subset,
)

from oracles import circ_oracle, disc_oracle, interval_elements, mask_to_set


def s(n, *elements):
    return Subset.from_elements(GroundSet(n), elements)


def test_interval_mod_plain():
    iv = interval_mod(GroundSet(12), 2, 5)
    assert set(iv.elements()) == {2, 3, 4, 5}
    assert iv.cardinality == 4


def test_interval_mod_wraparound():
    iv = interval_mod(GroundSet(12), 11, 2)
    assert set(iv.elements()) == {11, 12, 1, 2}
    assert iv.cardinality == 4
    assert 12 in iv and 3 not in iv


def test_interval_mod_single_point():
    iv = interval_mod(GroundSet(12), 7, 7)
    assert set(iv.elements()) == {7}
    assert iv.cardinality == 1


def test_interval_mod_full_circle():
    iv = interval_mod(GroundSet(5), 3, 2)
    assert iv.cardinality == 5


def test_interval_mod_bad_element():
    with pytest.raises(InputError):
        interval_mod(GroundSet(5), 0, 3)
    with pytest.raises(InputError):
        interval_mod(GroundSet(5), 1, 6)


def test_disc_count_worked_value():
    # |x ∩ [4,5]| - |[4,5] \ x| = 1 - 1 for the running example
    x = s(12, 2, 3, 4, 6, 7, 10, 11)
    assert disc_count(x, 4, 5) == 0


def test_disc_count_empty_set():
    x = Subset(GroundSet(9), 0)
    for k in range(1, 10):
        assert disc_count(x, 1, k) == -k


def test_disc_count_single_element():
    x = s(6, 2, 5)
    assert disc_count(x, 2, 2) == 1
    assert disc_count(x, 3, 3) == -1


def test_disc_count_rejects_reversed():
    with pytest.raises(InputError):
        disc_count(s(6, 1), 4, 2)


def test_circ_count_worked_value():
    x = s(12, 2, 3, 4, 6, 7, 10, 11)
    assert circ_count(x, 11, 12) == 0


def test_circ_count_full_set():
    x = Subset(GroundSet(7), (1 << 7) - 1)
    for i in range(1, 8):
        for j in range(1, 8):
            assert circ_count(x, i, j) == (j - i) % 7 + 1


def test_circ_count_matches_disc_count_when_not_wrapping():
    n = 7
    g = GroundSet(n)
    for mask in range(1 << n):
        x = Subset(g, mask)
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                assert circ_count(x, i, j) == disc_count(x, i, j)


def test_counts_against_loop_oracles_exhaustive():
    n = 8
    g = GroundSet(n)
    for mask in range(1 << n):
        xs = mask_to_set(mask)
        x = Subset(g, mask)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert circ_count(x, i, j) == circ_oracle(n, xs, i, j)
                if i <= j:
                    assert disc_count(x, i, j) == disc_oracle(xs, i, j)


def test_complement_antisymmetry():
    n = 8
    g = GroundSet(n)
    for mask in range(1 << n):
        x = Subset(g, mask)
        xc = x.complement()
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                assert disc_count(x, i, j) + disc_count(xc, i, j) == 0


def test_walk_steps_by_one():
    n = 8
    g = GroundSet(n)
    for mask in range(1 << n):
        x = Subset(g, mask)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                assert abs(disc_count(x, i, j) - disc_count(x, i, j - 1)) == 1


def test_interval_elements_oracle_agrees():
    n = 9
    g = GroundSet(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            iv = interval_mod(g, i, j)
            assert set(iv.elements()) == interval_elements(n, i, j)
            assert iv.cardinality == len(interval_elements(n, i, j))


def test_parse_and_format_sets():
    g = GroundSet(12)
    x = parse_subset(g, "{2,3,4,6,7,10,11}")
    assert x.elements() == (2, 3, 4, 6, 7, 10, 11)
    assert format_subset(x) == "{2,3,4,6,7,10,11}"
    assert parse_subset(g, "{}").mask == 0
    assert format_subset(parse_subset(g, "{}")) == "{}"


def test_parse_and_format_bits():
    g = GroundSet(12)
    x = parse_subset(g, "011101100110", fmt="bits")
    assert x.elements() == (2, 3, 4, 6, 7, 10, 11)
    assert format_subset(x, fmt="bits") == "011101100110"


def test_parse_rejects_bad_text():
    g = GroundSet(5)
    for bad in ("1,2", "{2,1}", "{1,1}", "{0}", "{6}", "{a}", "{1,2", "01210", "011"):
        with pytest.raises(InputError):
            if set(bad) <= set("012"):
                parse_subset(g, bad, fmt="bits")
            else:
                parse_subset(g, bad)


def test_ground_set_cap(monkeypatch):
    GroundSet(64)
    with pytest.raises(InputError):
        GroundSet(65)
    monkeypatch.setenv("SYMCHAIN_MAX_N", "128")
    GroundSet(65)
    monkeypatch.setenv("SYMCHAIN_MAX_N", "bogus")
    with pytest.raises(InputError):
        GroundSet(65)


def test_level_enumeration():
    g = GroundSet(6)
    for k in range(7):
        masks = level(g, k)
        assert masks == sorted(masks)
        assert all(m.bit_count() == k for m in masks)
    assert len(level(g, 3)) == 20


def test_subset_value_semantics():
    a = s(5, 1, 3)
    b = parse_subset(GroundSet(5), "{1,3}")
    assert a == b and hash(a) == hash(b)
    assert a.issubset(s(5, 1, 3, 4))
    assert not s(5, 1, 3, 4).issubset(a)
