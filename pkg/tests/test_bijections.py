import pytest
from hypothesis import given
from hypothesis import strategies as st
from mahonia.core.bijections import (
    AscentData,
    DescentPairData,
    ascent_data,
    chi,
    descent_pair_data,
    gender_letters,
    p_pairs,
    phi_123,
    phi_132,
    phi_231,
    phi_321,
    phi_inv_to_mad,
    polyomino_transfer,
    psi_321_312,
    q_pairs,
    r_pairs,
    reconstruct_132_from_lrmin,
    reconstruct_231,
    restricted_count,
    rl_minima_data,
    simion_schmidt,
    varphi_231_213,
)
from mahonia.core.patterns import avoids, classical, count_occurrences, enumerate_avoiders
from mahonia.core.perm import Permutation, descent_profile, extrema_profile
from mahonia.core.polyomino import enumerate_polyominoes, poly_statistics
from mahonia.core.stats import evaluate, named
from mahonia.errors import AvoidanceError, ReconstructionError
from mahonia.utils.pattern_parser import parse_pattern, parse_pattern_set

MAJ, MAK, FOZE = named("maj"), named("mak"), named("foze")


def perm(text):
    return Permutation.parse(text)


def avoiders(n, words):
    return list(enumerate_avoiders(n, parse_pattern_set(words)))


class TestPhi321:
    """Tests for the S(321) involution"""

    def test_example(self):
        assert str(phi_321(perm("341625978"))) == "415623897"
        assert str(phi_321(perm("231"))) == "312"

    def test_identity(self):
        for n in range(0, 6):
            assert phi_321(Permutation.identity(n)) == Permutation.identity(n)

    def test_gendered_letters(self):
        letters = gender_letters(perm("341625978"))
        assert letters.fixed == ((4, 1), (6, 2), (9, 7))
        assert letters.red == {3}
        assert letters.blue == {5, 8}

    def test_rejects_321(self):
        with pytest.raises(AvoidanceError):
            phi_321(perm("4321"))

    def test_involution_and_transport(self):
        two_31, thirty_one_2 = parse_pattern("2<31>"), parse_pattern("<31>2")
        for n in range(1, 9):
            for sigma in avoiders(n, "321"):
                image = phi_321(sigma)
                assert phi_321(image) == sigma
                assert evaluate(MAJ, image) == evaluate(MAK, sigma)
                before, after = descent_profile(sigma), descent_profile(image)
                assert after.descent_bottoms == before.descent_bottoms
                assert after.descent_tops == before.descent_tops
                assert count_occurrences(two_31, sigma) == count_occurrences(thirty_one_2, image)


class TestPhi123:
    """Tests for the S(123) counterpart"""

    def test_no_ascents(self):
        assert str(phi_123(perm("21"))) == "21"

    def test_involution_and_transport(self):
        for n in range(1, 8):
            for sigma in avoiders(n, "123"):
                image = phi_123(sigma)
                assert avoids(image, [classical("123")])
                assert phi_123(image) == sigma
                assert evaluate(MAJ, image) == evaluate(MAK, sigma)
                before, after = descent_profile(sigma), descent_profile(image)
                assert after.ascent_bottoms == {n + 1 - a for a in before.ascent_tops}
                assert after.ascent_tops == {n + 1 - a for a in before.ascent_bottoms}


class TestPhi132:
    """Tests for the S(132) descent remap"""

    def test_examples(self):
        assert str(phi_132(perm("213"))) == "231"
        assert phi_132(Permutation.identity(5)) == Permutation.identity(5)

    def test_bijection_and_transport(self):
        for n in range(1, 9):
            sources = avoiders(n, "132")
            images = set()
            for sigma in sources:
                image = phi_132(sigma)
                assert evaluate(MAJ, image) == evaluate(FOZE, sigma)
                assert extrema_profile(image).lr_minima == extrema_profile(sigma).lr_minima
                images.add(image)
            assert images == set(sources)


class TestPhi231:
    """Tests for the S(231) map taking foze to mak"""

    def test_examples(self):
        assert str(phi_231(perm("213"))) == "132"
        assert str(phi_231(perm("21"))) == "21"

    def test_bijection_and_transport(self):
        for n in range(1, 9):
            sources = avoiders(n, "231")
            images = set()
            for sigma in sources:
                image = phi_231(sigma)
                assert evaluate(MAK, image) == evaluate(FOZE, sigma)
                assert descent_profile(image).des == descent_profile(sigma).des
                images.add(image)
            assert images == set(sources)


class TestSimionSchmidt:
    """Tests for Simion–Schmidt and left-to-right minima reconstruction"""

    def test_examples(self):
        assert str(simion_schmidt(perm("3142"))) == "3124"
        assert str(simion_schmidt(perm("321"))) == "321"

    def test_bijection_preserves_head(self):
        for n in range(1, 8):
            images = set()
            for sigma in avoiders(n, "123"):
                image = simion_schmidt(sigma)
                assert image(1) == sigma(1)
                images.add(image)
            assert images == set(avoiders(n, "132"))

    def test_infeasible_fill(self):
        with pytest.raises(ReconstructionError):
            reconstruct_132_from_lrmin(3, [(1, 3), (3, 1)])

    def test_malformed_minima(self):
        with pytest.raises(ReconstructionError):
            reconstruct_132_from_lrmin(3, [(2, 1)])
        with pytest.raises(ReconstructionError):
            reconstruct_132_from_lrmin(3, [(1, 2), (2, 3)])


class TestReconstruct231:
    """Tests for rebuilding 231-avoiders from partial data"""

    def test_examples(self):
        assert str(reconstruct_231(DescentPairData(n=3, Q=frozenset({(3, 2)})), "iv")) == "132"
        assert str(reconstruct_231(DescentPairData(n=4), "iv")) == "1234"
        assert str(reconstruct_231(DescentPairData(n=4), "v")) == "1234"

    def test_extraction(self):
        sigma = perm("21543")
        assert q_pairs(sigma) == {(2, 1), (5, 4), (4, 3)}
        assert p_pairs(sigma) == {(2, 1), (5, 3)}
        assert restricted_count(sigma, 5) == 2
        assert r_pairs(sigma) == {(2, 0), (5, 2), (4, 0)}

    @pytest.mark.parametrize("variant", ["i", "ii", "iv", "v"])
    def test_round_trips(self, variant):
        for n in range(0, 8):
            for sigma in avoiders(n, "231"):
                if variant == "i":
                    data = rl_minima_data(sigma)
                elif variant == "ii":
                    data = ascent_data(sigma)
                else:
                    data = descent_pair_data(sigma)
                assert reconstruct_231(data, variant) == sigma

    def test_run_ends_keep_their_class(self):
        """Test the P data comes back on a 231-avoider with the same run ends"""
        for n in range(1, 8):
            for sigma in avoiders(n, "231"):
                rebuilt = reconstruct_231(descent_pair_data(sigma), "iii")
                assert avoids(rebuilt, [classical("231")])
                assert p_pairs(rebuilt) == p_pairs(sigma)

    def test_shared_run_ends(self):
        assert str(reconstruct_231(DescentPairData(n=3, P=frozenset({(3, 1)})), "iii")) == "321"

    def test_inconsistent_data(self):
        with pytest.raises(ReconstructionError):
            reconstruct_231(DescentPairData(n=3, Q=frozenset({(2, 3)})), "iv")
        with pytest.raises(ReconstructionError):
            reconstruct_231(DescentPairData(n=3, Q=frozenset({(3, 1), (3, 2)})), "iv")
        with pytest.raises(ReconstructionError):
            reconstruct_231(AscentData(n=3, last=1, ascents=frozenset({1, 2}), ascent_bottoms=frozenset()), "ii")
        with pytest.raises(ReconstructionError):
            reconstruct_231(DescentPairData(n=3), "vi")

    def test_forced_231(self):
        """Test descent pairs that only fit a 231-containing word"""
        with pytest.raises(ReconstructionError):
            reconstruct_231(DescentPairData(n=4, Q=frozenset({(3, 1), (4, 2)})), "iv")


class TestComposites:
    """Tests for the composite and head-preserving maps"""

    def test_inv_to_mad_examples(self):
        assert str(phi_inv_to_mad(perm("451623897"))) == "615324978"
        assert str(phi_inv_to_mad(perm("1"))) == "1"

    def test_inv_to_mad_transport(self):
        inv, mad = named("inv"), named("mad")
        for n in range(1, 9):
            images = set()
            for sigma in avoiders(n, "321"):
                image = phi_inv_to_mad(sigma)
                assert evaluate(mad, image) == evaluate(inv, sigma)
                images.add(image)
            assert images == set(avoiders(n, "231"))

    def test_polyomino_transfer(self):
        for n in range(1, 8):
            for h in enumerate_polyominoes(n):
                before, after = poly_statistics(h), poly_statistics(polyomino_transfer(h))
                assert after["vcarea"] == before["vrarea"]
                assert after["val"] == before["val"]

    @pytest.mark.parametrize("mapping,source,target", [
        (chi, "132,213", "123,213"),
        (psi_321_312, "321", "312"),
        (varphi_231_213, "231", "213"),
    ])
    def test_head_preserving(self, mapping, source, target):
        for n in range(1, 9):
            images = set()
            for sigma in avoiders(n, source):
                image = mapping(sigma)
                assert image(1) == sigma(1)
                images.add(image)
            assert images == set(avoiders(n, target))

    def test_head_preserving_rejects_wrong_class(self):
        with pytest.raises(AvoidanceError):
            chi(perm("132"))
        with pytest.raises(AvoidanceError):
            varphi_231_213(perm("231"))

    @given(st.integers(min_value=1, max_value=7), st.data())
    def test_phi_321_random_member(self, n, data):
        sigma = data.draw(st.sampled_from(avoiders(n, "321")))
        assert phi_321(phi_321(sigma)) == sigma
