"""Tests for sequence-space norms and invariants."""

from __future__ import annotations

import math

import numpy as np
import pytest

from bohrkit.exceptions import DimensionMismatchError, GrammarError, NoClosedFormError, NonFiniteInputError
from bohrkit.spaces import (
    OrliczFunction,
    SpaceDescriptor,
    check_unconditionality,
    contains,
    domain_scaling,
    dual_ones_norm,
    embed_norm,
    embed_norm_estimate,
    identity_lp_norm,
    minkowski_functional,
    norm,
    orlicz_inverse,
    sup_pnorm_on_ball,
)
from bohrkit.spaces.norms import lorentz_weights

EXPONENTS = [1, 1.5, 2, 4, math.inf]


class TestGrammar:
    """Tests for the space grammar."""

    def test_parse_lq_with_infinity(self):
        """lq:q=inf parses to the polydisc."""
        space = SpaceDescriptor.parse("lq:q=inf:n=3")
        assert space.dim == 3
        assert space.is_polydisc

    def test_minkowski_alias(self):
        """minkowski is accepted as a synonym for lq."""
        assert SpaceDescriptor.parse("minkowski:q=2:n=2") == SpaceDescriptor.lq(2, 2)

    def test_mixed_dimension_is_product(self):
        """A mixed space has m·n coordinates."""
        space = SpaceDescriptor.parse("mixed:m=2:s=1:n=3:t=2")
        assert space.dim == 6
        assert space.n_inner == 3

    def test_str_round_trips(self):
        """str() of a descriptor parses back to the same descriptor."""
        space = SpaceDescriptor.lorentz(2, 1, 4, scale=0.5)
        assert SpaceDescriptor.parse(str(space)) == space

    def test_unknown_kind(self):
        """Unknown kinds are rejected."""
        with pytest.raises(GrammarError, match="unknown kind"):
            SpaceDescriptor.parse("sobolev:q=2:n=2")

    def test_missing_key(self):
        """Required keys must be present."""
        with pytest.raises(GrammarError, match="missing"):
            SpaceDescriptor.parse("lq:n=2")

    def test_invalid_orlicz_function(self):
        """A non-convex ψ is rejected at parse time."""
        with pytest.raises(GrammarError):
            SpaceDescriptor.parse("orlicz:psi=x^0.5:n=2")

    def test_with_dim(self):
        """with_dim keeps the family and replaces the dimension."""
        assert SpaceDescriptor.lq(3, 2).with_dim(5) == SpaceDescriptor.lq(3, 5)


class TestNorms:
    """Tests for norm evaluation."""

    def test_euclidean(self):
        """‖(1,2,2)‖₂ = 3."""
        assert norm(SpaceDescriptor.lq(2, 3), [1, 2, 2]) == pytest.approx(3.0)

    def test_mixed(self):
        """ℓ₁(ℓ₂) of ((3,4),(0,1)) is 5 + 1."""
        space = SpaceDescriptor.mixed(2, 1, 2, 2)
        assert norm(space, [3, 4, 0, 1]) == pytest.approx(6.0)

    def test_orlicz_square_matches_l2(self):
        """The Luxemburg norm of ψ(x) = x² is the Euclidean norm."""
        space = SpaceDescriptor.orlicz("x^2", 2)
        assert norm(space, [3, 4]) == pytest.approx(5.0, rel=1e-8)

    def test_lorentz_equal_exponents_is_lq(self):
        """d(w, t) with s = t reduces to ℓ_t."""
        space = SpaceDescriptor.lorentz(2, 2, 3)
        assert norm(space, [1, 2, 2]) == pytest.approx(3.0)

    def test_lorentz_weights_telescope(self):
        """Weights sum to n^{t/s}."""
        weights = lorentz_weights(2, 1, 4)
        assert weights[0] == 1.0
        assert weights.sum() == pytest.approx(2.0)

    def test_norm_uses_moduli(self):
        """Complex entries only enter through their moduli."""
        space = SpaceDescriptor.lq(1, 2)
        assert norm(space, [3j, -4]) == pytest.approx(7.0)

    def test_dimension_mismatch(self):
        """Vectors must match the space dimension."""
        with pytest.raises(DimensionMismatchError):
            norm(SpaceDescriptor.lq(2, 3), [1, 2])

    def test_non_finite(self):
        """NaN entries are rejected."""
        with pytest.raises(NonFiniteInputError):
            norm(SpaceDescriptor.lq(2, 2), [math.nan, 1])


class TestMinkowskiFunctional:
    """Tests for the gauge of a scaled ball."""

    def test_scaled_ball(self):
        """p_Ω(3, 4) = 2.5 on Ω = 2·B_{ℓ₂}."""
        assert minkowski_functional(SpaceDescriptor.lq(2, 2, scale=2), [3, 4]) == pytest.approx(2.5)

    def test_origin(self):
        """The gauge vanishes at the origin."""
        assert minkowski_functional(SpaceDescriptor.lorentz(2, 1, 3), [0, 0, 0]) == 0.0

    def test_l1(self):
        """p_Ω(0.3, 0.3) = 0.6 on the ℓ₁ ball."""
        assert minkowski_functional(SpaceDescriptor.lq(1, 2), [0.3, 0.3]) == pytest.approx(0.6)

    def test_contains_is_open(self):
        """Boundary points are outside the open domain."""
        space = SpaceDescriptor.lq(1, 2)
        assert contains(space, [0.3, 0.3])
        assert not contains(space, [0.5, 0.5])


class TestInvariants:
    """Tests for embedding norms, dual norms and scalings."""

    def test_dual_ones_l2(self):
        """‖Σe*_k‖ on ℓ⁴₂ is √4."""
        assert dual_ones_norm(SpaceDescriptor.lq(2, 4)) == pytest.approx(2.0)

    def test_dual_ones_lorentz(self):
        """‖Σe*_k‖ on d(w, 1) with s = 2 is n^{1−1/s}."""
        assert dual_ones_norm(SpaceDescriptor.lorentz(2, 1, 4)) == pytest.approx(2.0)

    @pytest.mark.parametrize("n", [1, 3, 7])
    def test_dual_ones_l1(self, n):
        """The dual of ℓ₁ is ℓ_∞, so ‖Σe*_k‖ = 1."""
        assert dual_ones_norm(SpaceDescriptor.lq(1, n)) == pytest.approx(1.0)

    def test_dual_ones_orlicz_closed_form(self):
        """n·ψ⁻¹(1/n) for ψ(x) = x² is √n."""
        assert dual_ones_norm(SpaceDescriptor.orlicz("x^2", 4)) == pytest.approx(2.0, rel=1e-8)

    @pytest.mark.parametrize("s,t,n,expected", [(1, 2, 4, 1.0), (2, 1, 4, 2.0), (math.inf, 2, 9, 3.0)])
    def test_identity_lp_norm(self, s, t, n, expected):
        """1 for s ≤ t, else n^{1/t − 1/s}."""
        assert identity_lp_norm(s, t, n) == pytest.approx(expected)

    def test_identity_norm_increasing_exponent(self):
        """‖Id: ℓ⁴₁ → ℓ⁴₂‖ = 1."""
        assert embed_norm(SpaceDescriptor.lq(1, 4), SpaceDescriptor.lq(2, 4)) == pytest.approx(1.0)

    def test_identity_norm_decreasing_exponent(self):
        """‖Id: ℓ⁴₂ → ℓ⁴₁‖ = 4^{1/2}."""
        assert embed_norm(SpaceDescriptor.lq(2, 4), SpaceDescriptor.lq(1, 4)) == pytest.approx(2.0)

    def test_mixed_factorization(self):
        """‖Id: ℓ²₁(ℓ³₁) → ℓ²₂(ℓ³₂)‖ = 1·1."""
        source = SpaceDescriptor.mixed(2, 1, 3, 1)
        target = SpaceDescriptor.mixed(2, 2, 3, 2)
        assert embed_norm(source, target) == pytest.approx(1.0)

    @pytest.mark.parametrize("n", [2, 4, 8, 16])
    @pytest.mark.parametrize("q_target", EXPONENTS)
    @pytest.mark.parametrize("q_source", EXPONENTS)
    def test_numeric_matches_closed_form(self, q_source, q_target, n, small_budget):
        """The sphere search agrees with ‖Id: ℓⁿ_s → ℓⁿ_t‖ within 2%."""
        source, target = SpaceDescriptor.lq(q_source, n), SpaceDescriptor.lq(q_target, n)
        estimate = embed_norm_estimate(source, target, method="numeric", budget=small_budget)
        assert estimate.method == "numeric"
        assert estimate.value == pytest.approx(identity_lp_norm(q_source, q_target, n), rel=0.02)

    @pytest.mark.parametrize(
        ("s", "t", "l", "r"),
        [(1, 1, 2, 2), (2, 2, 1, 1), (2, 1, 1, 2), (1, 2, 2, 1), (math.inf, 2, 1, 1), (1.5, math.inf, 4, 1)],
    )
    def test_mixed_numeric_matches_factorization(self, s, t, l, r, small_budget):
        """‖Id: ℓᵐ_s(ℓᵏ_t) → ℓᵐ_l(ℓᵏ_r)‖ found numerically equals the product of the two levels."""
        source, target = SpaceDescriptor.mixed(2, s, 3, t), SpaceDescriptor.mixed(2, l, 3, r)
        expected = identity_lp_norm(s, l, 2) * identity_lp_norm(t, r, 3)
        assert embed_norm_estimate(source, target, method="closed_form").value == pytest.approx(expected)
        numeric = embed_norm_estimate(source, target, method="numeric", budget=small_budget)
        assert numeric.value == pytest.approx(expected, rel=0.02)

    def test_mixed_against_lq_factorization(self, small_budget):
        """ℓ²_∞(ℓ³₂) → ℓ⁶₁ is 2·√3 both ways."""
        source, target = SpaceDescriptor.mixed(2, math.inf, 3, 2), SpaceDescriptor.lq(1, 6)
        closed = embed_norm(source, target)
        assert closed == pytest.approx(2 * math.sqrt(3))
        numeric = embed_norm_estimate(source, target, method="numeric", budget=small_budget)
        assert numeric.value == pytest.approx(closed, rel=0.02)

    def test_no_closed_form(self):
        """closed_form on an unsupported pair raises."""
        with pytest.raises(NoClosedFormError):
            embed_norm_estimate(SpaceDescriptor.orlicz("x^2+x^3", 2), SpaceDescriptor.lq(2, 2), method="closed_form")

    def test_sup_pnorm_when_p_exceeds_q(self):
        """B_{ℓ_q} ⊂ B_{ℓ_p} for p ≥ q."""
        assert sup_pnorm_on_ball(SpaceDescriptor.lq(2, 3), 3) == pytest.approx(1.0)

    def test_sup_pnorm_polydisc(self):
        """sup ‖z‖₁ on the bidisc is 2."""
        assert sup_pnorm_on_ball(SpaceDescriptor.polydisc(2), 1) == pytest.approx(2.0)

    def test_sup_pnorm_euclidean(self):
        """sup ‖z‖₁ on B_{ℓ⁴₂} is √4."""
        assert sup_pnorm_on_ball(SpaceDescriptor.lq(2, 4), 1) == pytest.approx(2.0)

    def test_domain_scaling(self):
        """S(B_ℓ₁, B_ℓ₂) = 1 and S(B_ℓ₂, B_ℓ₁) = √2."""
        l1, l2 = SpaceDescriptor.lq(1, 2), SpaceDescriptor.lq(2, 2)
        assert domain_scaling(l1, l2) == pytest.approx(1.0)
        assert domain_scaling(l2, l1) == pytest.approx(math.sqrt(2))

    def test_domain_scaling_identity(self):
        """S(Ω, Ω) = 1."""
        space = SpaceDescriptor.lorentz(3, 2, 4)
        assert domain_scaling(space, space) == 1.0

    def test_scales_enter_the_scaling(self):
        """S(2·B, B) = 2."""
        space = SpaceDescriptor.lq(2, 2)
        assert domain_scaling(space.scaled(2), space) == pytest.approx(2.0)


class TestOrliczInverse:
    """Tests for ψ⁻¹."""

    @pytest.mark.parametrize(
        ("expr", "y", "expected"),
        [("x^2", 0.25, 0.5), ("x^2+x^3", 2.0, 1.0), ("x", 7.0, 7.0)],
    )
    def test_values(self, expr, y, expected):
        """ψ⁻¹ inverts simple Young functions."""
        assert orlicz_inverse(OrliczFunction(expr=expr), y) == pytest.approx(expected, rel=1e-9)

    def test_zero(self):
        """ψ⁻¹(0) = 0."""
        assert orlicz_inverse(OrliczFunction(expr="x^2"), 0.0) == 0.0


class TestUnconditionality:
    """Tests for the lattice-norm check."""

    @pytest.mark.parametrize(
        "space",
        [SpaceDescriptor.lq(2, 4), SpaceDescriptor.lorentz(2, 1, 4), SpaceDescriptor.mixed(2, 1, 2, 2)],
        ids=str,
    )
    def test_passes(self, space):
        """Norms computed from moduli are 1-unconditional."""
        report = check_unconditionality(space, samples=100, seed=3)
        assert report.passed
        assert report.max_deviation <= 1e-12

    def test_report_is_deterministic(self):
        """The same seed samples the same vectors."""
        space = SpaceDescriptor.lq(3, 3)
        first = check_unconditionality(space, seed=5)
        second = check_unconditionality(space, seed=5)
        assert np.isclose(first.worst_margin, second.worst_margin)
