import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mahonia.core.patterns import classical, count_occurrences, enumerate_avoiders
from mahonia.core.qpoly import MultiPoly, QPoly
from mahonia.core.qseries import (
    GENFUNC_PATTERNS,
    HEAD_FAMILIES,
    alpha_is_extension,
    binomial_transform,
    carlitz_riordan,
    cf_truncate,
    cfrak1_matrix,
    genfunc_312,
    get_cf_spec,
    head_closed_form,
    iota_combination_from_matrix,
    macmahon_q_catalan,
    matmul,
    normalize_alpha,
    pascal,
    pascal_inverse,
    q_binomial,
    q_factorial,
    q_int,
    render_series,
)
from mahonia.core.stats import distribution, distribution_refined, evaluate, named
from mahonia.errors import InternalInvariantError, MahoniaError, StatSpecError
from mahonia.utils.pattern_parser import parse_pattern, parse_pattern_set

AVOID_312 = [classical("312")]
MAJ_ALPHA = {"1<32>": 1, "2<31>": 1, "3<21>": 1, "<21>": 1}
INV_ALPHA = {"<23>1": 1, "<31>2": 1, "<32>1": 1, "<21>": 1}


def brute_force_alpha(alpha, n):
    patterns = {parse_pattern(p): c for p, c in alpha.items() if c}
    counts = {}
    for sigma in enumerate_avoiders(n, AVOID_312):
        value = sum(c * count_occurrences(p, sigma) for p, c in patterns.items())
        counts[value] = counts.get(value, 0) + 1
    return counts


class TestQAnalogues:
    """Tests for q-integers, factorials and binomials"""

    def test_q_factorial(self):
        assert q_factorial(3) == QPoly([1, 2, 2, 1])
        assert q_factorial(0) == 1

    def test_q_binomial(self):
        assert q_binomial(4, 2) == QPoly([1, 1, 2, 1, 1])
        assert q_binomial(7, 0) == 1

    def test_q_binomial_range(self):
        with pytest.raises(MahoniaError):
            q_binomial(2, 3)

    def test_inexact_division_is_a_bug_signal(self):
        with pytest.raises(InternalInvariantError):
            q_int(3).exact_div(q_int(2))

    def test_q_int_at_one(self):
        assert q_int(5)(1) == 5


class TestCatalanAnalogues:
    """Tests for MacMahon and Carlitz–Riordan q-Catalan numbers"""

    def test_macmahon_small(self):
        assert macmahon_q_catalan(1) == 1
        assert macmahon_q_catalan(2) == QPoly([1, 0, 1])

    def test_macmahon_matches_maj_plus_mak(self):
        spec = named("maj")
        mak = named("mak")
        for n in range(1, 8):
            counts = {}
            for sigma in enumerate_avoiders(n, [classical("231")]):
                value = evaluate(spec, sigma) + evaluate(mak, sigma)
                counts[value] = counts.get(value, 0) + 1
            assert QPoly.from_counts(counts) == macmahon_q_catalan(n)

    def test_carlitz_riordan_small(self):
        assert carlitz_riordan(0) == 1
        assert carlitz_riordan(2) == QPoly([1, 1])
        assert carlitz_riordan(3, "Ctilde") == QPoly([1, 2, 1, 1])

    def test_carlitz_riordan_matches_inv(self):
        inv = named("inv")
        for n in range(1, 9):
            assert carlitz_riordan(n, "C") == distribution(inv, n, [classical("132")])
            assert carlitz_riordan(n, "Ctilde") == distribution(inv, n, [classical("231")])

    def test_unknown_variant(self):
        with pytest.raises(MahoniaError):
            carlitz_riordan(3, "D")

    def test_inc_matches_inv(self):
        for n in range(1, 9):
            assert distribution(named("inc"), n, [classical("132")]) == \
                distribution(named("inv"), n, [classical("321")])


class TestContinuedFractions:
    """Tests for truncated continued fractions"""

    def test_cfrak1_third_coefficient(self):
        assert cf_truncate(get_cf_spec("cfrak1"), 3)[3] == QPoly([1, 2, 2])

    def test_cfrak2_third_coefficient(self):
        assert cf_truncate(get_cf_spec("cfrak2"), 3)[3] == QPoly([1, 2, 1, 1])

    def test_order_zero(self):
        assert cf_truncate(get_cf_spec("cfrak2"), 0) == [QPoly([1])]

    def test_deeper_truncation_keeps_prefix(self):
        spec = get_cf_spec("cfrak1")
        assert cf_truncate(spec, 8)[:5] == cf_truncate(spec, 4)

    @pytest.mark.parametrize("which,pairs", [
        ("cfrak1", (("mad", "231"), ("sist", "132"))),
        ("cfrak2", (("mad", "312"), ("sist", "213"))),
    ])
    def test_matches_distributions(self, which, pairs):
        series = cf_truncate(get_cf_spec(which), 8)
        for stat, pattern in pairs:
            for n in range(0, 9):
                assert series[n] == distribution(named(stat), n, [classical(pattern)]), (stat, n)

    def test_render(self):
        series = cf_truncate(get_cf_spec("cfrak2"), 2)
        assert render_series(series) == "1 + z + (1 + q)z^2"

    def test_unknown_fraction(self):
        with pytest.raises(MahoniaError):
            get_cf_spec("cfrak3")


class TestGenfunc:
    """Tests for the linear-statistic recursion over 312-avoiders"""

    def test_single_letter(self):
        assert genfunc_312(MAJ_ALPHA, 1) == MultiPoly.monomial({"u": 1, "v": 1})
        assert genfunc_312([0] * 13, 0) == MultiPoly.constant(1)

    def test_inv_on_two_letters(self):
        expected = MultiPoly.monomial({"u": 1, "v": 2}) + MultiPoly.monomial({"q": 1, "t": 1, "u": 2, "v": 1})
        assert genfunc_312(INV_ALPHA, 2) == expected

    def test_maj_matches_refined_enumeration(self):
        for n in range(1, 7):
            expected = distribution_refined(named("maj"), n, AVOID_312, ["des", "head", "last"])
            assert genfunc_312(MAJ_ALPHA, n) == expected

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(min_value=-3, max_value=3), min_size=13, max_size=13))
    def test_random_alpha_matches_brute_force(self, values):
        alpha = dict(zip(GENFUNC_PATTERNS, values))
        for n in range(1, 6):
            poly = genfunc_312(values, n)
            assert poly.substitute({"t": 1, "u": 1, "v": 1}).value_counts("q") == brute_force_alpha(alpha, n)

    @pytest.mark.slow
    def test_fixed_alphas_at_seven(self):
        for values in ([1] * 13, [0, 2, 0, -1, 3, 0, 1, 1, 0, 2, -3, 0, 1]):
            alpha = dict(zip(GENFUNC_PATTERNS, values))
            poly = genfunc_312(values, 7)
            assert poly.substitute({"t": 1, "u": 1, "v": 1}).value_counts("q") == brute_force_alpha(alpha, 7)

    def test_short_alpha_skips_vanishing_patterns(self):
        short = normalize_alpha([1] * 11)
        assert short["3<12>"] == 0
        assert short["<31>2"] == 0
        assert sum(short.values()) == 11

    def test_alpha_validation(self):
        with pytest.raises(StatSpecError):
            normalize_alpha([1, 2, 3])
        with pytest.raises(StatSpecError):
            normalize_alpha({"231": 1})

    def test_extension_flag(self):
        assert alpha_is_extension({"<21>": -1})
        assert not alpha_is_extension(MAJ_ALPHA)


class TestBinomialTransform:
    """Tests for the Pascal-matrix transform"""

    def test_iota_coefficients_of_cfrak1(self):
        assert iota_combination_from_matrix(cfrak1_matrix(6), 6) == [0, 1, -1, 2, -4, 8]

    def test_second_column(self):
        transformed = binomial_transform(cfrak1_matrix(5), "Binv", 5)
        assert [row[1] for row in transformed] == [1, 0, 0, 0, 0]

    def test_pascal_inverse(self):
        identity = [[int(i == j) for j in range(6)] for i in range(6)]
        assert matmul(pascal(6), pascal_inverse(6)) == identity

    def test_round_trip(self):
        a = cfrak1_matrix(5)
        assert binomial_transform(binomial_transform(a, "Binv", 5), "B", 5) == a

    def test_direction(self):
        with pytest.raises(MahoniaError):
            binomial_transform(cfrak1_matrix(3), "C", 3)


class TestHeadClosedForms:
    """Tests for the head distributions"""

    def test_examples(self):
        assert head_closed_form(3, "123") == QPoly([0, 1, 2, 2])
        assert head_closed_form(3, "213") == QPoly([0, 2, 1, 2])
        for family in HEAD_FAMILIES:
            assert head_closed_form(1, family) == QPoly([0, 1])

    def test_matches_enumeration(self):
        head = named("head")
        for family in HEAD_FAMILIES:
            patterns = parse_pattern_set(family)
            for n in range(1, 10):
                assert head_closed_form(n, family) == distribution(head, n, patterns), (family, n)

    def test_unknown_family(self):
        with pytest.raises(MahoniaError):
            head_closed_form(3, "321")
