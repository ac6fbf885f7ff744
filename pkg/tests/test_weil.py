"""Tests for the finite-field isogeny-class engine."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quatorsion import weil

# The ten isogeny classes cited by label in the torsion arguments, with
# their decoded coefficients and the point counts those arguments use.
CITED_CLASSES = [
    ("2.2.a_e", 2, 0, 4, 9),
    ("2.2.b_b", 2, 1, 1, 9),
    ("2.3.a_ac", 3, 0, -2, 8),
    ("2.3.a_g", 3, 0, 6, 16),
    ("2.5.a_ac", 5, 0, -2, 24),
    ("2.5.a_k", 5, 0, 10, 36),
    ("2.5.d_e", 5, 3, 4, 48),
    ("2.5.f_q", 5, 5, 16, 72),
    ("2.7.a_ac", 7, 0, -2, 48),
    ("2.7.i_be", 7, 8, 30, 144),
]

# Class totals per field size, frozen from the fixture generator, which
# rederives admissibility from scratch (p-adic valuations of the roots).
# Over a prime field every valid pair is admissible; q = 9 excludes six.
CLASS_COUNTS = {
    2: (35, 35),
    3: (63, 63),
    4: (101, 101),
    5: (129, 129),
    7: (207, 207),
    9: (311, 305),
}


# ---------------------------------------------------------------------------
# prime powers


@pytest.mark.parametrize(
    "q, expected",
    [(2, (2, 1)), (7, (7, 1)), (4, (2, 2)), (8, (2, 3)), (9, (3, 2)), (121, (11, 2))],
)
def test_prime_power_base(q, expected):
    assert weil.prime_power_base(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 12, 100])
def test_prime_power_base_rejects_composites(q):
    with pytest.raises(ValueError, match="prime power"):
        weil.prime_power_base(q)


# ---------------------------------------------------------------------------
# polynomial types


def test_coefficients_and_point_count():
    w = weil.WeilPoly2(5, 3, 4)
    assert w.coefficients() == (1, 3, 4, 15, 25)
    assert w.point_count() == 48


def test_quartic_requires_prime_power_field():
    with pytest.raises(ValueError, match="prime power"):
        weil.WeilPoly2(6, 0, 0)


def test_ordinary_means_middle_coefficient_prime_to_p():
    assert weil.WeilPoly2(5, 5, 16).is_ordinary()
    assert not weil.WeilPoly2(3, 0, 6).is_ordinary()
    assert not weil.WeilPoly2(4, 1, 2).is_ordinary()


def test_elliptic_square_expands_correctly():
    e = weil.WeilPoly1(7, 4)
    assert e.point_count() == 12
    w = e.square()
    # (T^2 + 4T + 7)^2 = T^4 + 8T^3 + 30T^2 + 56T + 49
    assert w.coefficients() == (1, 8, 30, 56, 49)
    assert w.point_count() == e.point_count() ** 2


def test_elliptic_trace_bound_enforced():
    weil.WeilPoly1(4, 4)  # |a| = 2 sqrt(q) is allowed
    with pytest.raises(ValueError, match="exceeds"):
        weil.WeilPoly1(2, 3)


# ---------------------------------------------------------------------------
# validity


@pytest.mark.parametrize(
    "q, a1, a2, expected",
    [
        (5, 3, 4, True),
        (2, 9, 0, False),  # a1^2 > 16q
        (3, 0, 6, True),
        (2, 0, -4, True),  # (T^2 - 2)^2, both edge conditions tight
        (2, 0, -5, False),  # 2q + a2 < 0
        (5, 4, -6, False),  # edge^2 < 4q a1^2
    ],
)
def test_validity_examples(q, a1, a2, expected):
    assert weil.is_weil_valid(weil.WeilPoly2(q, a1, a2)) is expected


def test_validity_matches_root_moduli():
    """Oracle: valid iff all complex roots have absolute value sqrt(q)."""
    for a1 in range(-9, 10):
        for a2 in range(-12, 27):
            w = weil.WeilPoly2(5, a1, a2)
            roots = np.roots(np.array(w.coefficients(), dtype=float))
            on_circle = bool(
                np.max(np.abs(np.abs(roots) - math.sqrt(5))) < 1e-4
            )
            assert weil.is_weil_valid(w) == on_circle, (a1, a2)


# ---------------------------------------------------------------------------
# labels


@pytest.mark.parametrize("label, q, a1, a2, count", CITED_CLASSES)
def test_cited_labels_decode_and_round_trip(label, q, a1, a2, count):
    w = weil.parse_label(label)
    assert (w.q, w.a1, w.a2) == (q, a1, a2)
    assert weil.format_label(w) == label
    assert w.point_count() == count
    assert weil.is_weil_valid(w)


def test_leading_a_negates_the_following_letters():
    assert weil.parse_label("2.3.a_ac").a2 == -2
    assert weil.format_label(weil.WeilPoly2(3, 0, -2)) == "2.3.a_ac"
    # multi-letter values are base 26: "ba" = 26, "be" = 30
    assert weil.parse_label("2.2.ba_be") == weil.WeilPoly2(2, 26, 30)
    assert weil.format_label(weil.WeilPoly2(2, -26, 0)) == "2.2.aba_a"


@pytest.mark.parametrize(
    "label, message",
    [
        ("2.3.a_aa", "negative zero"),
        ("2.3.aa_b", "negative zero"),
        ("1.2.a_e", "unsupported dimension"),
        ("3.2.a_e", "unsupported dimension"),
        ("2.6.a_e", "prime power"),
        ("2.x.a_e", "invalid field size"),
        ("2.3.a", "two coefficient strings"),
        ("2.3.a_b_c", "two coefficient strings"),
        ("2.3", "three dot-separated parts"),
        ("2.3.a_e.f", "three dot-separated parts"),
        ("2.3.A_e", "invalid coefficient letter"),
        ("2.3.a_", "invalid coefficient letter"),
        ("2.3._e", "invalid coefficient letter"),
    ],
)
def test_malformed_labels_are_rejected(label, message):
    with pytest.raises(ValueError, match=message):
        weil.parse_label(label)


@given(
    st.sampled_from(weil.SUPPORTED_Q),
    st.integers(-675, 675),
    st.integers(-675, 675),
)
@settings(max_examples=1000, deadline=None)
def test_label_round_trip_on_random_coefficients(q, a1, a2):
    w = weil.WeilPoly2(q, a1, a2)
    label = weil.format_label(w)
    assert weil.parse_label(label) == w
    assert weil.format_label(weil.parse_label(label)) == label


# ---------------------------------------------------------------------------
# enumeration


def test_class_counts_per_field_size():
    for q, (valid, admissible) in CLASS_COUNTS.items():
        classes = weil.enumerate_surfaces(q)
        assert len(classes) == valid, q
        assert sum(c.honda_tate_admissible for c in classes) == admissible, q


def test_nonadmissible_classes_occur_only_over_f9():
    # Each excluded pair has a 3-adic root of valuation exactly 1 (the
    # slope-1 segment splits), certified by the fixture generator.
    for q in weil.SUPPORTED_Q:
        excluded = {
            (c.poly.a1, c.poly.a2)
            for c in weil.enumerate_surfaces(q)
            if not c.honda_tate_admissible
        }
        if q == 9:
            assert excluded == {(-4, 12), (-2, -3), (-1, 15), (1, 15), (2, -3), (4, 12)}
        else:
            assert excluded == set()


def test_enumeration_is_sorted_and_consistent():
    for q in weil.SUPPORTED_Q:
        classes = weil.enumerate_surfaces(q)
        pairs = [(c.poly.a1, c.poly.a2) for c in classes]
        assert pairs == sorted(pairs)
        assert len(set(pairs)) == len(pairs)
        for c in classes:
            assert c.poly.q == q
            assert weil.is_weil_valid(c.poly)
            assert c.label == weil.format_label(c.poly)
            assert c.poly.point_count() > 0


def test_admissible_classes_match_fixture_lists():
    fixture_dir = Path(weil.__file__).parent / "fixtures" / "av"
    for q in weil.SUPPORTED_Q:
        entries = json.loads((fixture_dir / f"av_classes_q{q}.json").read_text())
        admissible = [c for c in weil.enumerate_surfaces(q) if c.honda_tate_admissible]
        assert {(c.poly.a1, c.poly.a2) for c in admissible} == {
            (e["a1"], e["a2"]) for e in entries
        }
        assert {c.label for c in admissible} == {e["label"] for e in entries}


def test_every_cited_class_is_enumerated_admissible():
    by_label = {
        c.label: c for q in (2, 3, 5, 7) for c in weil.enumerate_surfaces(q)
    }
    for label, *_ in CITED_CLASSES:
        assert by_label[label].honda_tate_admissible, label


def test_ordinary_guess_is_one_sided():
    for q in weil.SUPPORTED_Q:
        for c in weil.enumerate_surfaces(q):
            if weil.local_admissible_guess(c.poly):
                assert c.honda_tate_admissible, c.label
    # the converse fails: this non-ordinary class is admissible
    a_g = weil.parse_label("2.3.a_g")
    assert not weil.local_admissible_guess(a_g)


def test_enumeration_rejects_unsupported_fields():
    with pytest.raises(ValueError, match="q must be one of"):
        weil.enumerate_surfaces(11)


# ---------------------------------------------------------------------------
# base change


def test_base_change_identity_and_errors():
    w = weil.parse_label("2.5.d_e")
    assert weil.base_change(w, 1) == w
    with pytest.raises(ValueError, match="positive"):
        weil.base_change(w, 0)


@pytest.mark.parametrize(
    "label", ["2.2.b_b", "2.3.a_ac", "2.5.d_e", "2.5.f_q", "2.7.i_be"]
)
@pytest.mark.parametrize("n", [2, 3, 5])
def test_base_change_matches_powered_roots(label, n):
    """Oracle: coefficients of prod (T - r^n) over the complex roots r."""
    w = weil.parse_label(label)
    roots = np.roots(np.array(w.coefficients(), dtype=float)) ** n
    expected = [round(c) for c in np.poly(roots).real]
    assert expected == list(weil.base_change(w, n).coefficients())


def test_base_change_known_point_counts():
    # the class of the reduction at 3 gains exactly 64 points over F_9
    assert weil.base_change(weil.parse_label("2.3.a_ac"), 2).point_count() == 64
    # over F_25 the count 576 has 3-part exactly 9
    over_25 = weil.base_change(weil.parse_label("2.5.a_ac"), 2)
    assert over_25 == weil.WeilPoly2(25, -4, 54)
    assert over_25.point_count() == 576
    assert math.gcd(over_25.point_count(), 3**100) == 9


@given(st.integers(0, 34), st.integers(1, 4), st.integers(1, 3))
@settings(deadline=None)
def test_base_change_composition_law(index, m, n):
    w = weil.enumerate_surfaces(2)[index].poly
    step = weil.base_change(w, m)
    assert weil.is_weil_valid(step)
    assert weil.base_change(step, n) == weil.base_change(w, m * n)


# ---------------------------------------------------------------------------
# geometric split analysis


def test_elliptic_squares_split_at_degree_one():
    for q in weil.SUPPORTED_Q:
        for a in range(-math.isqrt(4 * q), math.isqrt(4 * q) + 1):
            square = weil.WeilPoly1(q, a).square()
            assert weil.geometric_split_analysis(square) == (1, a)


@pytest.mark.parametrize(
    "label, expected",
    [
        ("2.5.d_e", (3, 18)),  # acquires QM only over the cubic extension
        ("2.5.f_q", None),  # never isogenous to a square of an elliptic curve
        ("2.5.a_k", (1, 0)),  # already a square: (T^2 + 5)^2
        ("2.5.a_ac", (2, -2)),  # endomorphisms defined over F_25
        ("2.3.a_ac", (2, -2)),  # splits over F_9 with E(F_9) of order 8
        ("2.3.a_g", (1, 0)),
        ("2.2.a_e", (1, 0)),
        ("2.2.b_b", None),  # commutative geometric endomorphism algebra
        ("2.7.i_be", (1, 4)),
        ("2.7.a_ac", (2, -2)),
    ],
)
def test_split_analysis_on_cited_classes(label, expected):
    assert weil.geometric_split_analysis(weil.parse_label(label)) == expected


def test_split_analysis_window_and_errors():
    d_e = weil.parse_label("2.5.d_e")
    assert weil.geometric_split_analysis(d_e, nmax=2) is None
    with pytest.raises(ValueError, match="positive"):
        weil.geometric_split_analysis(d_e, nmax=0)


# ---------------------------------------------------------------------------
# torsion scans


def test_three_part_bound_over_f2():
    assert weil.torsion_gcd_scan(2, 3, geometric_square_only=True) == (
        9,
        ["2.2.a_e"],
    )
    # without the geometric restriction the other count-9 class appears
    assert weil.torsion_gcd_scan(2, 3, geometric_square_only=False) == (
        9,
        ["2.2.a_e", "2.2.b_b"],
    )


def test_two_part_bound_over_f3():
    assert weil.torsion_gcd_scan(3, 2, geometric_square_only=True) == (
        16,
        ["2.3.a_g"],
    )


def test_no_surface_over_f2_has_49_points_dividing():
    best, _ = weil.torsion_gcd_scan(2, 7, geometric_square_only=False)
    assert best <= 7


def test_torsion_scan_rejects_bad_modulus():
    with pytest.raises(ValueError, match="at least 2"):
        weil.torsion_gcd_scan(2, 1, geometric_square_only=False)


# ---------------------------------------------------------------------------
# prime bounds


@pytest.mark.parametrize(
    "q, expected",
    [
        (2, {2, 3, 5}),
        (3, {2, 3, 5, 7}),
        (4, {2, 3, 5, 7}),
        (9, {2, 3, 5, 7, 11, 13}),
    ],
)
def test_qm_prime_bound(q, expected):
    assert weil.qm_prime_bound(q) == expected


def test_qm_prime_bound_requires_prime_power():
    with pytest.raises(ValueError, match="prime power"):
        weil.qm_prime_bound(6)
