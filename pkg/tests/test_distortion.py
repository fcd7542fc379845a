import io
from fractions import Fraction

import pytest

from groupgeo import cayley, distortion
from groupgeo.errors import TooFewPoints
from groupgeo.experiments import (
    AmbientAsSubgroup,
    _bs12_axis_exponent,
    _heis_center_exponent,
    get_group,
)
from groupgeo.groups import MarkedHomomorphism, evaluate


def _z_in_z2():
    G = get_group("z2")
    return G, distortion.DirectFactor(G, 0, len)


def _a_in_bs12():
    G = get_group("bs12")
    return G, distortion.CyclicExact(G, G.marking[0], _bs12_axis_exponent)


def _center_in_heis3():
    G = get_group("heis3")
    z = G.model.element([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    return G, distortion.CyclicExact(G, z, _heis_center_exponent)


class TestOracles:
    def test_cyclic_exact_membership(self):
        G, H = _a_in_bs12()
        a = G.marking[0]
        t = G.marking[1]
        assert H.contains(G.model.power(a, 5))
        assert H.length_in_H(G.model.power(a, -7)) == 7
        assert not H.contains(t)
        assert H.is_exact

    def test_direct_factor(self):
        G, H = _z_in_z2()
        x = evaluate(G.alphabet.parse_word("x x x"), G)
        y = evaluate(G.alphabet.parse_word("y"), G)
        assert H.contains(x) and H.length_in_H(x) == 3
        assert not H.contains(y)

    def test_hom_image(self):
        # Z -> Z^2 hitting the first factor
        G = get_group("z2")
        source = get_group("free2")  # used only for its rank-1 sub-marking? no:
        # build a genuine rank-1 source
        from groupgeo.groups import FreeGroupModel, MarkedGroup
        from groupgeo.words import Alphabet, Presentation

        model = FreeGroupModel(1)
        src = MarkedGroup(
            model=model, alphabet=Alphabet(("t",)),
            marking=(model.generator(0),),
            presentation=Presentation(Alphabet(("t",))),
        )
        hom = MarkedHomomorphism(src, G, (G.alphabet.parse_word("x"),))
        H = distortion.HomImage(hom, source_radius=6)
        x2 = evaluate(G.alphabet.parse_word("x x"), G)
        assert H.contains(x2) and H.length_in_H(x2) == 2
        assert not H.is_exact  # Z is infinite, the source ball never closes

    def test_enumerated_with_cap_flags_lower_bounds(self):
        G = get_group("free2")
        x = G.model.generator(0)
        H = distortion.EnumeratedWithCap(G, [x], cap_radius=3)
        assert H.contains(G.model.power(x, 3))
        assert H.length_in_H(G.model.power(x, 3)) == 3
        assert not H.contains(G.model.power(x, 4))  # capped, hence inexact
        assert not H.is_exact

    def test_enumerated_exhausts_finite_group(self):
        G = get_group("kleinfour")
        H = distortion.EnumeratedWithCap(G, [G.marking[0]], cap_radius=5)
        assert H.is_exact
        assert H.length_in_H(G.marking[0]) == 1


class TestDistortionProfile:
    def test_z_in_z2_is_identity_profile(self):
        G, H = _z_in_z2()
        p = distortion.distortion_profile(G, H, 12)
        assert [e.delta for e in p.entries] == list(range(1, 13))
        assert all(e.exact for e in p.entries)

    def test_monotone(self):
        G, H = _a_in_bs12()
        p = distortion.distortion_profile(G, H, 9)
        deltas = [e.delta for e in p.entries]
        assert deltas == sorted(deltas)

    def test_bs12_small_values(self):
        G, H = _a_in_bs12()
        p = distortion.distortion_profile(G, H, 5)
        assert p.entries[2].delta == 3  # delta(3) = 3

    def test_bs12_exponential_lower_bounds(self):
        G, H = _a_in_bs12()
        p = distortion.distortion_profile(G, H, 17)
        for n in range(1, 9):
            assert p.entries[2 * n].delta >= 2 ** n  # entry index 2n is delta(2n+1)

    def test_heisenberg_quadratic_lower_bounds(self):
        G, H = _center_in_heis3()
        p = distortion.distortion_profile(G, H, 24)
        for n in range(1, 7):
            assert p.entries[4 * n - 1].delta >= n * n

    def test_witnesses_recheck(self):
        G, H = _z_in_z2()
        p = distortion.distortion_profile(G, H, 6)
        for e in p.entries:
            g = evaluate(G.alphabet.parse_word(e.witness_word), G)
            assert H.contains(g)
            assert H.length_in_H(g) == e.witness_dh
            assert cayley.word_length_of(g, G, e.n) is not None

    def test_capped_oracle_marks_entries(self):
        G = get_group("free2")
        H = distortion.EnumeratedWithCap(G, [G.model.generator(0)], cap_radius=2)
        p = distortion.distortion_profile(G, H, 5)
        assert not p.entries[-1].exact

    def test_rejects_zero_n_max(self):
        G, H = _z_in_z2()
        with pytest.raises(ValueError):
            distortion.distortion_profile(G, H, 0)

    def test_csv_format(self):
        G, H = _z_in_z2()
        p = distortion.distortion_profile(G, H, 4)
        buf = io.StringIO()
        p.write_csv(buf)
        lines = buf.getvalue().splitlines()
        assert lines[0] == "n,delta,exact,witness_key,witness_word,dH"
        assert len(lines) == 5
        assert lines[1].startswith("1,1,exact,")


class TestClassifyGrowth:
    def test_linear_sequence(self):
        verdict = distortion.classify_growth(
            distortion.profile_from_values([1, 2, 3, 4, 5, 6])
        )
        assert str(verdict) == "linear"

    def test_exponential_sequence(self):
        verdict = distortion.classify_growth(
            distortion.profile_from_values([1, 2, 4, 8, 16, 32])
        )
        assert str(verdict) == "exponential"

    def test_quadratic_sequence(self):
        verdict = distortion.classify_growth(
            distortion.profile_from_values([n * n for n in range(1, 9)])
        )
        assert str(verdict) == "polynomial(2)"

    def test_bounded_sequence(self):
        verdict = distortion.classify_growth(
            distortion.profile_from_values([1, 2, 2, 2, 2, 2, 2])
        )
        assert str(verdict) == "bounded"

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            distortion.classify_growth(distortion.profile_from_values([1, 2, 3]))

    def test_bs12_profile_is_exponential(self):
        G, H = _a_in_bs12()
        p = distortion.distortion_profile(G, H, 17)
        assert str(distortion.classify_growth(p)) == "exponential"


class TestUndistortedCheck:
    def test_z_in_z2_true_with_k_one(self):
        G, H = _z_in_z2()
        verdict = distortion.undistorted_check(distortion.distortion_profile(G, H, 12))
        assert verdict.verdict is True
        assert verdict.K == Fraction(1)

    def test_self_subgroup_true(self):
        G = get_group("free2")
        p = distortion.distortion_profile(G, AmbientAsSubgroup(G, 8), 8)
        verdict = distortion.undistorted_check(p)
        assert verdict.verdict is True
        assert verdict.K == Fraction(1)

    def test_bs12_false_with_growing_ratio(self):
        G, H = _a_in_bs12()
        verdict = distortion.undistorted_check(distortion.distortion_profile(G, H, 17))
        assert verdict.verdict is False
        tail = verdict.ratios[-3:]
        assert tail == sorted(tail)  # strictly climbing ratios

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            distortion.undistorted_check(distortion.profile_from_values([1, 2]))
