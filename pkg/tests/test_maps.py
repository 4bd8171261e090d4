"""Map family: exact evaluation, canonical members, symmetries, text formats."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permix import (
    ComposedMap,
    DomainError,
    IntervalPermutation,
    SlopeSignature,
    Strategy,
    all_signatures,
    canonical_signatures,
    composed_map,
    eval_map,
    orbit_representatives,
    symmetry_orbit,
    worst_mixing_rate,
)


def sig(text: str) -> SlopeSignature:
    return SlopeSignature.from_text(text)


class TestSlopeSignature:
    def test_validation(self):
        with pytest.raises(DomainError):
            SlopeSignature(1, (1,))
        with pytest.raises(DomainError):
            SlopeSignature(2, (1, 2))
        with pytest.raises(DomainError):
            SlopeSignature(3, (1, -1))

    def test_text_roundtrip(self):
        s = sig("+-+")
        assert s.m == 3 and s.epsilons == (1, -1, 1)
        assert s.to_text() == "+-+"
        with pytest.raises(DomainError):
            SlopeSignature.from_text("+x")
        with pytest.raises(DomainError):
            SlopeSignature.from_text("")

    def test_canonical(self):
        canon = canonical_signatures(2)
        assert canon.sf == sig("++")
        assert canon.zigzag == sig("+-")
        assert canon.inverted_zigzag == sig("-+")
        assert canonical_signatures(3).zigzag == sig("+-+")
        assert canonical_signatures(4).zigzag == sig("+-+-")
        with pytest.raises(DomainError):
            canonical_signatures(1)

    def test_symmetry_orbit(self):
        assert symmetry_orbit(sig("+-")) == {sig("+-"), sig("-+")}
        assert symmetry_orbit(sig("+++")) == {sig("+++"), sig("---")}
        assert symmetry_orbit(sig("++-")) == {sig("++-"), sig("-++"), sig("--+"), sig("+--")}

    def test_orbit_representatives_counts(self):
        # Burnside over {id, reverse, negate, both}: 2, 3, 6, 10 orbits
        assert [len(orbit_representatives(m)) for m in (2, 3, 4, 5)] == [2, 3, 6, 10]
        for m in (2, 3, 4):
            covered = set()
            for rep in orbit_representatives(m):
                covered |= symmetry_orbit(rep)
            assert covered == set(all_signatures(m))


class TestIntervalPermutation:
    def test_validation(self):
        with pytest.raises(DomainError):
            IntervalPermutation((1, 1))
        with pytest.raises(DomainError):
            IntervalPermutation((0, 1))
        with pytest.raises(DomainError):
            IntervalPermutation(())

    def test_text_and_inverse(self):
        p = IntervalPermutation.from_text("2,3,1")
        assert p.images == (2, 3, 1)
        assert p.to_text() == "2,3,1"
        assert p.inverse().images == (3, 1, 2)
        assert IntervalPermutation.identity(3).is_identity
        with pytest.raises(DomainError):
            IntervalPermutation.from_text("a,b")

    def test_composed_map_requires_enough_cells(self):
        with pytest.raises(DomainError):
            ComposedMap(sig("+-+"), IntervalPermutation.identity(2))
        with pytest.raises(DomainError):
            composed_map(sig("+-"))


class TestEvalMap:
    def test_tent_symmetry_point(self):
        g = composed_map(sig("+-"), n=2)
        assert eval_map(g, Fraction(3, 4)) == Fraction(1, 2)

    def test_zigzag_midpoint(self):
        g = composed_map(sig("+-+"), n=3)
        assert eval_map(g, Fraction(1, 2)) == Fraction(1, 2)

    def test_doubling_with_swap(self):
        # f(1/4) = 1/2 sits in the second half-open cell, which the swap
        # shifts down by 1/2
        g = ComposedMap(sig("++"), IntervalPermutation((2, 1)))
        assert eval_map(g, Fraction(1, 4)) == 0

    def test_right_endpoint_uses_last_branch(self):
        assert eval_map(composed_map(sig("+-"), n=2), 1) == 0
        assert eval_map(composed_map(sig("++"), n=2), 1) == 1

    def test_domain_error(self):
        g = composed_map(sig("+-"), n=2)
        with pytest.raises(DomainError):
            eval_map(g, Fraction(-1, 2))
        with pytest.raises(DomainError):
            eval_map(g, Fraction(3, 2))

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_range_invariant(self, data):
        m = data.draw(st.integers(2, 5))
        eps = tuple(data.draw(st.sampled_from([-1, 1])) for _ in range(m))
        n = data.draw(st.integers(m, 8))
        images = tuple(data.draw(st.permutations(list(range(1, n + 1)))))
        x = data.draw(st.fractions(min_value=0, max_value=1))
        g = ComposedMap(SlopeSignature(m, eps), IntervalPermutation(images))
        y = eval_map(g, x)
        assert 0 <= y <= 1

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_affine_slope_on_each_branch(self, data):
        m = data.draw(st.integers(2, 5))
        eps = tuple(data.draw(st.sampled_from([-1, 1])) for _ in range(m))
        s = SlopeSignature(m, eps)
        g = composed_map(s, n=m)
        j = data.draw(st.integers(1, m))
        # two distinct interior rationals of branch j
        a = Fraction(j - 1, m) + Fraction(1, 7 * m)
        b = Fraction(j, m) - Fraction(1, 11 * m)
        # composing with the identity exchange keeps branch slopes visible
        slope = (eval_map(g, b) - eval_map(g, a)) / (b - a)
        assert slope == m * eps[j - 1]


@pytest.mark.parametrize("m,n", [(2, n) for n in range(2, 7)] + [(3, n) for n in range(3, 7)])
def test_symmetry_orbit_members_share_worst_rate(m, n):
    for rep in orbit_representatives(m):
        values = {
            round(worst_mixing_rate(s, n, strategy=Strategy.exhaustive()).value, 9)
            for s in symmetry_orbit(rep)
        }
        assert len(values) == 1
