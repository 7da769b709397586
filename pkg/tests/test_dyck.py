import pytest
from collections import Counter
from math import comb
from mahonia.core.dyck import (
    DyckPath,
    delta,
    delta_inv,
    delta_pair,
    delta_pair_inv,
    down_step_binomial_sum,
    enumerate_dyck,
    gamma,
    gamma_inv,
    lambda_inv,
    lambda_map,
    omega_stump,
    omega_stump_inv,
    path_statistics,
    phi_path,
    phi_path_inv,
    psi,
    psi_inv,
    theta,
    theta_inv,
)
from mahonia.core.patterns import classical, enumerate_avoiders
from mahonia.core.perm import Permutation, extrema_profile
from mahonia.core.stats import evaluate, iota, named
from mahonia.errors import AvoidanceError, DyckPathError, MahoniaError


def path(text):
    return DyckPath.parse(text)


def perm(text):
    return Permutation.parse(text)


def stats(p):
    return path_statistics(p)


def avoiders(n, word):
    return enumerate_avoiders(n, [classical(word)])


class TestDyckPath:
    """Tests for the path value type"""

    def test_validation(self):
        with pytest.raises(DyckPathError):
            DyckPath("DU")
        with pytest.raises(DyckPathError):
            DyckPath("UUD")
        with pytest.raises(DyckPathError):
            DyckPath("UXD")

    def test_decompositions(self):
        p = path("UUDDUD")
        assert [str(c) for c in p.components()] == ["UUDD", "UD"]
        a, b = p.first_return()
        assert (str(a), str(b)) == ("UD", "UD")
        x, y = p.last_return()
        assert (str(x), str(y)) == ("UUDD", "")
        assert p.runs() == [(2, 2), (1, 1)]
        assert DyckPath.from_runs(p.runs()) == p

    def test_enumeration_counts(self):
        for n in range(0, 8):
            paths = list(enumerate_dyck(n))
            assert len(paths) == comb(2 * n, n) // (n + 1)
            assert len(set(paths)) == len(paths)


class TestPathStatistics:
    """Tests for the path statistics"""

    def test_area(self):
        assert stats(path("UUUDUUDDDD")).area == 8

    def test_peaks(self):
        s = stats(path("UUUDUDDUUDDDUUUDDD"))
        assert s.spea == 8
        assert s.npea == 4

    def test_single_peak(self):
        values = stats(path("UD")).as_dict()
        assert values.pop("npea") == 1
        assert all(v == 0 for v in values.values())

    def test_beta(self):
        assert stats(path("UDUUDD")).beta == 1

    def test_runs_of_steps(self):
        s = stats(path("UUUDDD"))
        assert (s.dr, s.dd, s.nval) == (2, 2, 0)

    def test_area_and_down_mass_equidistributed(self):
        for n in range(1, 8):
            area = Counter(stats(p).area for p in enumerate_dyck(n))
            mass = Counter(2 * stats(p).Dmass + stats(p).dd for p in enumerate_dyck(n))
            assert area == mass


class TestDelta:
    """Tests for Δ over the three classes"""

    def test_examples(self):
        assert str(delta(perm("213"), "A231")) == "UUDDUD"
        assert str(delta_inv(path("UUDUUUDDUDDDUUDUDD"), "A231")) == "615324978"
        for variant in ("A231", "A312", "A132"):
            assert delta(Permutation(()), variant) == DyckPath("")

    def test_wrong_class(self):
        with pytest.raises(AvoidanceError):
            delta(perm("231"), "A231")
        with pytest.raises(MahoniaError):
            delta(perm("12"), "A999")

    @pytest.mark.parametrize("variant,word", [("A231", "231"), ("A312", "312"), ("A132", "132")])
    def test_round_trip(self, variant, word):
        for n in range(0, 8):
            images = set()
            for sigma in avoiders(n, word):
                p = delta(sigma, variant)
                assert delta_inv(p, variant) == sigma
                images.add(p)
            assert images == set(enumerate_dyck(n))

    def test_mad_as_mass(self):
        mad = named("mad")
        for n in range(1, 9):
            for sigma in avoiders(n, "231"):
                s = stats(delta(sigma, "A231"))
                assert evaluate(mad, sigma) == s.Umass + s.dr
            for pi in avoiders(n, "312"):
                s = stats(delta(pi, "A312"))
                assert evaluate(mad, pi) == 2 * s.Dmass + s.dd

    def test_increasing_subsequences_as_heights(self):
        inc = named("inc")
        for n in range(1, 9):
            for sigma in avoiders(n, "132"):
                p = delta(sigma, "A132")
                assert evaluate(inc, sigma) == stats(p).sdowns
                for k in range(0, 4):
                    assert iota(k, sigma) == down_step_binomial_sum(p, k)


class TestGamma:
    """Tests for Γ on 321-avoiders"""

    def test_examples(self):
        assert str(gamma(perm("341625978"))) == "UUUDUDDUUDDDUUUDDD"
        assert str(gamma(perm("451623897"))) == "UUUUDUDDUDDDUUDUDD"
        assert str(gamma(Permutation.identity(4))) == "UDUDUDUD"

    def test_rejects_321(self):
        with pytest.raises(AvoidanceError):
            gamma(perm("321"))

    def test_transport(self):
        inv = named("inv")
        for n in range(1, 9):
            for sigma in avoiders(n, "321"):
                p = gamma(sigma)
                s = stats(p)
                assert gamma_inv(p) == sigma
                assert evaluate(inv, sigma) == s.spea
                assert extrema_profile(sigma).lrmax == s.npea

    def test_den_from_peaks(self):
        den = named("den")
        for n in range(1, 9):
            for pi in avoiders(n, "321"):
                assert evaluate(den, pi) == stats(gamma(pi)).peak_excedance


class TestPathBijections:
    """Tests for Ψ, Φ, Θ and Λ"""

    def test_psi_examples(self):
        assert str(psi(path("UUUUDUDDUDDDUUDUDD"))) == "UUDUUDDUDDUUUDDUDD"
        assert str(psi(path("UD"))) == "UD"

    def test_phi_path_examples(self):
        assert str(phi_path(path("UUDUUDDUDDUUUDDUDD"))) == "UUDUUUDDUDDDUUDUDD"
        assert str(phi_path(path("UD"))) == "UD"
        assert str(phi_path(path("UDUD"))) == "UUDD"

    def test_theta_examples(self):
        assert str(theta(path("UUUUDUUDDDDDUUUDDD"))) == "UUDUUUDDUDDDUUDUDD"
        assert str(theta(path("UD"))) == "UD"
        assert str(theta(path("UUDD"))) == "UUDD"

    def test_lambda_example(self):
        assert str(lambda_map(path("UUUUDUDDUDDDUUDUDD"))) == "UUUUDUUDDDDDUUUDDD"
        assert str(lambda_map(path("UD"))) == "UD"

    def test_delta_pair_round_trip(self):
        for n in range(0, 5):
            for m in range(0, 5 - n):
                for q in enumerate_dyck(n):
                    for r in enumerate_dyck(m):
                        assert delta_pair_inv(delta_pair(q, r)) == (q, r)

    @pytest.mark.parametrize("forward,inverse", [
        (psi, psi_inv),
        (phi_path, phi_path_inv),
        (theta, theta_inv),
        (lambda_map, lambda_inv),
    ])
    def test_round_trips(self, forward, inverse):
        for n in range(0, 8):
            images = set()
            for p in enumerate_dyck(n):
                image = forward(p)
                assert inverse(image) == p
                images.add(image)
            assert len(images) == len(list(enumerate_dyck(n)))

    def test_statistic_transport(self):
        for n in range(1, 8):
            for p in enumerate_dyck(n):
                s = stats(p)
                s_psi = stats(psi(p))
                s_phi = stats(phi_path(p))
                s_theta = stats(theta(p))
                assert s.spea == s_psi.stun
                assert s.npea == n - s_psi.nval
                assert s.stun == s_phi.Umass + s_phi.dr
                assert s.sht == s_theta.Umass + s_theta.dr
                assert s.spea == stats(lambda_map(p)).sht


class TestOmega:
    """Tests for Ω on 231-avoiders"""

    def test_examples(self):
        assert str(omega_stump(perm("213"))) == "UDUUDD"
        assert str(omega_stump(Permutation.identity(3))) == "UUUDDD"

    def test_transport(self):
        maj = named("maj")
        for n in range(1, 9):
            images = set()
            for sigma in avoiders(n, "231"):
                p = omega_stump(sigma)
                s = stats(p)
                assert evaluate(maj, sigma) == s.beta
                assert evaluate(maj, sigma) == s.valley_pos_height
                images.add(p)
            assert len(images) == comb(2 * n, n) // (n + 1)

    def test_inverse(self):
        for n in range(0, 8):
            for sigma in avoiders(n, "231"):
                assert omega_stump_inv(omega_stump(sigma)) == sigma

    def test_inverse_examples(self):
        assert omega_stump_inv(DyckPath("UDUUDD")) == perm("213")
        assert omega_stump_inv(DyckPath("UDUUDUUDDD")) == perm("42135")
        assert omega_stump_inv(DyckPath("UUDUUDDDUD")) == perm("31254")
        assert omega_stump_inv(DyckPath("")) == Permutation(())

    def test_inverse_covers_every_path(self):
        for n in range(1, 8):
            for p in enumerate_dyck(n):
                sigma = omega_stump_inv(p)
                assert omega_stump(sigma) == p

    def test_inverse_at_large_n(self):
        sigma = Permutation(tuple(range(40, 0, -1)))
        assert omega_stump_inv(omega_stump(sigma)) == sigma
        assert omega_stump_inv(DyckPath("UD" * 40)) == sigma

    def test_peak_and_valley_forms_equidistributed(self):
        for n in range(1, 8):
            valleys = Counter(stats(p).valley_pos_height for p in enumerate_dyck(n))
            peaks = Counter(stats(p).peak_excedance for p in enumerate_dyck(n))
            assert valleys == peaks
