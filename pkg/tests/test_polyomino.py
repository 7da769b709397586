import pytest
from math import comb
from mahonia.core.patterns import VincularPattern, classical, count_occurrences, enumerate_avoiders
from mahonia.core.perm import Permutation, descent_profile
from mahonia.core.polyomino import (
    ShortenedPolyomino,
    enumerate_polyominoes,
    lower_valleys,
    poly_statistics,
    step_areas,
    upsilon,
    upsilon_inv,
)
from mahonia.errors import AvoidanceError, PolyominoError

LABELLED = ShortenedPolyomino("NNEENENNE", "EENENNENN")
AREA_EXAMPLE = ShortenedPolyomino.parse("NNEENENENNEEE/EENEENNNEEENN")


class TestShortenedPolyomino:
    """Tests for the polyomino value type"""

    def test_parse(self):
        h = ShortenedPolyomino.parse("NE/EN")
        assert (h.upper, h.lower) == ("NE", "EN")
        assert str(h) == "NE/EN"
        assert ShortenedPolyomino.parse("NE,EN") == h

    def test_shared_north_step(self):
        with pytest.raises(PolyominoError):
            ShortenedPolyomino("NE", "NE")

    def test_upper_below_lower(self):
        with pytest.raises(PolyominoError):
            ShortenedPolyomino("EN", "NE")

    def test_length_and_alphabet(self):
        with pytest.raises(PolyominoError):
            ShortenedPolyomino("NE", "E")
        with pytest.raises(PolyominoError):
            ShortenedPolyomino("NX", "EN")

    def test_missing_separator(self):
        with pytest.raises(PolyominoError):
            ShortenedPolyomino.parse("NEEN")

    def test_enumeration_is_catalan(self):
        for n in range(1, 8):
            assert len(list(enumerate_polyominoes(n))) == comb(2 * n, n) // (n + 1)


class TestUpsilon:
    """Tests for Υ and the area statistics"""

    def test_labels(self):
        assert str(upsilon(LABELLED)) == "341625978"
        assert upsilon_inv(Permutation.parse("341625978")) == LABELLED

    def test_area_statistics(self):
        assert poly_statistics(AREA_EXAMPLE) == {"vcarea": 7, "vrarea": 9, "val": 3}

    def test_rejects_321(self):
        with pytest.raises(AvoidanceError):
            upsilon_inv(Permutation.parse("321"))

    def test_bijection(self):
        for n in range(1, 8):
            images = set()
            for h in enumerate_polyominoes(n):
                sigma = upsilon(h)
                assert upsilon_inv(sigma) == h
                images.add(sigma)
            assert images == set(enumerate_avoiders(n, [classical("321")]))

    def test_valleys_are_descents(self):
        for n in range(1, 8):
            for h in enumerate_polyominoes(n):
                assert set(lower_valleys(h)) == descent_profile(upsilon(h)).descents

    def test_areas_as_restricted_counts(self):
        for n in range(2, 7):
            for h in enumerate_polyominoes(n):
                sigma = upsilon(h)
                areas = step_areas(h)
                for i in lower_valleys(h):
                    a, b = sigma(i), sigma(i + 1)
                    left = VincularPattern((3, 1, 2), frozenset({1}), (a, b, None))
                    right = VincularPattern((2, 3, 1), frozenset({2}), (None, a, b))
                    assert areas[i - 1] == 1 + count_occurrences(left, sigma)
                    assert areas[i] == 1 + count_occurrences(right, sigma)
