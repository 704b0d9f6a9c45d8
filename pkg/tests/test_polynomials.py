"""Tests for pluriharmonic polynomials, test families and the text format."""

from __future__ import annotations

import math

import numpy as np
import pytest

from bohrkit.exceptions import GrammarError, GuardrailError, NonFiniteInputError, ParameterError
from bohrkit.models.config import Guardrails
from bohrkit.polynomials import (
    BoundedOperatorU,
    CoeffValue,
    MultiIndex,
    PluriharmonicPoly,
    RandomFamilySpec,
    coordinate_lift,
    dumps,
    estimate_majorant,
    evaluate,
    homogeneous_indices,
    homogeneous_part,
    linear_form,
    loads,
    majorant_sum,
    loads_family,
    mobius_family,
    mobius_majorant,
    monomial,
    necessity_member,
    operator_norm,
    random_family,
    read_family,
    sup_norm,
)
from bohrkit.polynomials.families import mobius_tail_bound, mobius_truncation_degree
from bohrkit.polynomials.serialization import dump_family, write_family
from bohrkit.spaces import SpaceDescriptor

Z1 = MultiIndex.of(1, 0)
Z2 = MultiIndex.of(0, 1)
Z1Z2 = MultiIndex.of(1, 1)


def scalar(value: complex) -> CoeffValue:
    return CoeffValue.scalar(value)


class TestMultiIndex:
    """Tests for exponent vectors."""

    def test_graded_order(self):
        """Lower degree first, then larger leading exponents."""
        assert list(homogeneous_indices(2, 2)) == [MultiIndex.of(2, 0), Z1Z2, MultiIndex.of(0, 2)]

    def test_rho_pure_power(self):
        """ρ_α = 1 when α is concentrated in one coordinate."""
        assert MultiIndex.of(3, 0, 0).rho(2) == pytest.approx(1.0)

    def test_rho_mixed(self):
        """ρ_(1,1) = (2²/1)^{1/2} = 2 for q = 2."""
        assert Z1Z2.rho(2) == pytest.approx(2.0)

    def test_negative_entries(self):
        """Exponents are nonnegative."""
        with pytest.raises(ParameterError):
            MultiIndex.of(1, -1)


class TestCoefficients:
    """Tests for scalar and matrix coefficients."""

    @pytest.mark.parametrize(
        ("entries", "expected"),
        [(np.eye(2), 1.0), (np.diag([1, 2]), 2.0), ([[0, 2], [0, 0]], 2.0)],
    )
    def test_operator_norm(self, entries, expected):
        """Largest singular value."""
        assert operator_norm(CoeffValue.matrix(entries)) == pytest.approx(expected)

    def test_scalar_norm_is_modulus(self):
        """A scalar's norm is its modulus."""
        assert operator_norm(scalar(3 + 4j)) == pytest.approx(5.0)

    def test_identity_u(self):
        """λ₀·I scales every coefficient norm."""
        U = BoundedOperatorU.identity(2.0)
        assert U.norm_U == 2.0
        assert operator_norm(U.apply(CoeffValue.matrix(np.diag([1, 3])))) == pytest.approx(6.0)

    def test_matrix_u_scalar_case(self):
        """For k = 1 the norm of U is its modulus."""
        U = BoundedOperatorU.from_matrix([[0.5]], k=1)
        assert U.norm_U == pytest.approx(0.5)
        assert U.norm_certified


class TestEvaluation:
    """Tests for f(z)."""

    def test_holomorphic_monomial(self):
        """f = z₁ at (0.5, 0) is 0.5."""
        f = PluriharmonicPoly(2, {Z1: scalar(1)})
        assert evaluate(f, [0.5, 0]).to_complex() == pytest.approx(0.5)

    def test_conjugate_cancellation(self):
        """z₁ + z̄₁ vanishes at z₁ = i."""
        f = PluriharmonicPoly(1, {MultiIndex.of(1): scalar(1)}, {MultiIndex.of(1): scalar(1)})
        assert evaluate(f, [1j]).to_complex() == pytest.approx(0.0)

    def test_matrix_constant(self):
        """A constant matrix polynomial returns its coefficient everywhere."""
        f = PluriharmonicPoly(2, {MultiIndex.zero(2): CoeffValue.matrix(np.diag([1, 2]))})
        np.testing.assert_allclose(evaluate(f, [0.3, -0.2j]).data, np.diag([1, 2]))

    def test_b_has_no_constant(self):
        """The anti-holomorphic part has no α = 0 entry."""
        with pytest.raises(ParameterError):
            PluriharmonicPoly(1, {}, {MultiIndex.of(0): scalar(1)})

    def test_mixed_kinds_rejected(self):
        """All coefficients share one kind."""
        with pytest.raises(ParameterError):
            PluriharmonicPoly(2, {Z1: scalar(1), Z2: CoeffValue.matrix(np.eye(2))})


class TestHomogeneousPart:
    """Tests for degree-m extraction."""

    def test_keeps_degree_m(self):
        """1 + z₁ + z₁z₂ at m = 2 keeps only z₁z₂."""
        f = PluriharmonicPoly(2, {MultiIndex.zero(2): scalar(1), Z1: scalar(1), Z1Z2: scalar(1)})
        part = homogeneous_part(f, 2)
        assert list(part.a) == [Z1Z2]
        assert part.homogeneous_degree == 2

    def test_empty_degree(self):
        """A degree with no terms gives the zero polynomial."""
        f = PluriharmonicPoly(2, {Z1: scalar(1)})
        assert homogeneous_part(f, 3).is_zero

    def test_keeps_b(self):
        """The anti-holomorphic entry at degree m survives."""
        f = PluriharmonicPoly(2, {}, {Z1: scalar(1)})
        assert list(homogeneous_part(f, 1).b) == [Z1]


class TestSupNorm:
    """Tests for sup ‖f(z)‖ over a domain."""

    def test_known_norm(self):
        """z₁ + z₂ on the bidisc uses its known value 2."""
        space = SpaceDescriptor.polydisc(2)
        f = PluriharmonicPoly(2, {Z1: scalar(1), Z2: scalar(1)}).with_known_sup_norm(2.0, space)
        estimate = sup_norm(f, space)
        assert estimate.value == 2.0
        assert estimate.certified

    def test_monomial_closed_form(self, euclidean2):
        """|z₁z₂| ≤ (|z₁|² + |z₂|²)/2 on the Euclidean ball."""
        f = PluriharmonicPoly(2, {Z1Z2: scalar(1)})
        estimate = sup_norm(f, euclidean2)
        assert estimate.value == pytest.approx(0.5)
        assert estimate.certified

    def test_constant_matrix(self, bidisc):
        """A constant's sup norm is its operator norm."""
        f = PluriharmonicPoly(2, {MultiIndex.zero(2): CoeffValue.matrix(np.diag([1, 2]))})
        assert sup_norm(f, bidisc).value == pytest.approx(2.0)

    def test_sampled_is_lower_estimate(self, bidisc, small_budget):
        """Sampling never exceeds the true value and finds the corner."""
        f = PluriharmonicPoly(2, {Z1: scalar(1), Z2: scalar(1)})
        estimate = sup_norm(f, bidisc, small_budget, seed=1)
        assert not estimate.certified
        assert estimate.value <= 2.0 + 1e-12
        assert estimate.value == pytest.approx(2.0, rel=1e-6)


class TestMajorant:
    """Tests for the majorant sum Σ‖U c_α‖^p |z^α|^p."""

    def test_single_term_polydisc(self, disc):
        """f = z₁ with U = I at r = 0.5 gives 0.5."""
        f = PluriharmonicPoly(1, {MultiIndex.of(1): scalar(1)})
        assert estimate_majorant(f, BoundedOperatorU.identity(), disc, 0.5, 1).value == pytest.approx(0.5)

    def test_mobius_matches_closed_form(self, disc):
        """Möbius a = 0.5 at r = 1/3 gives 0.8."""
        f = mobius_family(0.5)
        value = estimate_majorant(f, BoundedOperatorU.identity(), disc, 1 / 3, 1).value
        assert value == pytest.approx(0.8, abs=1e-11)

    def test_truncated_series_matches_closed_form(self, disc):
        """An explicit U bypasses the closed form; the truncated series agrees with it."""
        f = mobius_family(0.5)
        U = BoundedOperatorU.from_matrix([[1.0]], k=1)
        series = estimate_majorant(f, U, disc, 0.5, 1)
        assert series.method == "corner"
        assert series.value == pytest.approx(mobius_majorant(0.5, 0.5), abs=1e-10)

    def test_euclidean_monomial(self, euclidean2):
        """z₁z₂ on the Euclidean ball at r = 1 gives 0.5."""
        f = PluriharmonicPoly(2, {Z1Z2: scalar(1)})
        value = estimate_majorant(f, BoundedOperatorU.identity(), euclidean2, 1.0, 1).value
        assert value == pytest.approx(0.5, rel=1e-6)

    def test_constant_term_persists(self, disc):
        """majorant_sum at r = 0 is ‖U a₀‖^p."""
        f = PluriharmonicPoly(1, {MultiIndex.zero(1): scalar(0.5), MultiIndex.of(1): scalar(1)})
        assert majorant_sum(f, BoundedOperatorU.identity(2.0), disc, 0.0, 2) == pytest.approx(1.0)

    def test_nondecreasing_in_r(self, euclidean2):
        """The majorant grows with r."""
        f = PluriharmonicPoly(2, {Z1Z2: scalar(1), MultiIndex.of(1, 0): scalar(0.5)})
        values = [majorant_sum(f, BoundedOperatorU.identity(), euclidean2, r, 1) for r in (0.0, 0.25, 0.5, 1.0)]
        assert values == sorted(values)

    def test_radius_out_of_range(self, disc):
        """r must lie in [0, 1]."""
        f = mobius_family(0.5)
        with pytest.raises(ParameterError):
            estimate_majorant(f, BoundedOperatorU.identity(), disc, 1.5, 1)


class TestFamilies:
    """Tests for the built-in test families."""

    def test_mobius_majorant_closed_form(self):
        """a + (1−a²)r/(1−ar) at a = r = 0.5 is 1."""
        assert mobius_majorant(0.5, 0.5) == pytest.approx(1.0)

    def test_mobius_coefficients(self):
        """φ_a(0) = a and the z² coefficient is −(1−a²)a."""
        f = mobius_family(0.5)
        assert f.constant_term.to_complex() == pytest.approx(0.5)
        assert f.a[MultiIndex.of(2)].to_complex() == pytest.approx(-0.375)
        assert evaluate(f, [0]).to_complex() == pytest.approx(0.5)

    def test_truncation_degree(self):
        """The tail after K terms is below 1e-12."""
        K = mobius_truncation_degree(0.9)
        assert mobius_tail_bound(0.9, K) < 1e-12
        assert mobius_tail_bound(0.9, K - 1) >= 1e-12

    def test_invalid_a(self):
        """a must lie in (0, 1)."""
        with pytest.raises(ParameterError):
            mobius_family(1.0)

    def test_lift_norm(self, euclidean2):
        """A lift on a ball with sup |z₁| = 1 keeps norm 1."""
        f = coordinate_lift(0.3, euclidean2)
        assert sup_norm(f, euclidean2).value == pytest.approx(1.0)

    def test_lift_on_l1_ball_of_scale_half(self):
        """With R = sup |z₁| < 1 the norm is (a + R)/(1 + aR)."""
        space = SpaceDescriptor.lq(1, 2, scale=0.5)
        f = coordinate_lift(0.5, space)
        assert sup_norm(f, space).value == pytest.approx(1.0 / 1.25)

    def test_monomial_known_on_lq(self, euclidean2):
        """Monomials carry a closed-form norm on ℓ_q balls."""
        f = monomial(Z1Z2, space=euclidean2)
        assert f.known_sup_norm.value == pytest.approx(0.5)

    def test_linear_form(self):
        """sup |z₁ + … + z_n| on ℓⁿ₂ is √n."""
        space = SpaceDescriptor.lq(2, 4)
        assert sup_norm(linear_form(space), space).value == pytest.approx(2.0)

    def test_necessity_member_norm(self, disc):
        """‖F_k‖ = 1 on the disc, since cos² + sin² = 1."""
        f = necessity_member(3)
        assert sup_norm(f, disc).value == pytest.approx(1.0)

    def test_random_family_deterministic(self):
        """Same seed, same family."""
        spec = RandomFamilySpec(n=2, max_degree=2, count=3)
        first = [f.fingerprint() for f in random_family(spec, seed=4)]
        second = [f.fingerprint() for f in random_family(spec, seed=4)]
        assert first == second

    def test_random_family_holomorphic(self):
        """include_antiholomorphic=False leaves every b empty."""
        spec = RandomFamilySpec(n=2, max_degree=2, count=4, include_antiholomorphic=False)
        assert all(f.is_holomorphic for f in random_family(spec, seed=0))

    def test_random_family_empty(self):
        """count = 0 yields no members."""
        assert random_family(RandomFamilySpec(n=1, max_degree=2, count=0), seed=0) == []

    def test_random_family_matrix_kind(self):
        """Matrix families have k×k coefficients."""
        spec = RandomFamilySpec(n=1, max_degree=1, coeff_kind="matrix", k=3, count=2)
        assert all(f.k == 3 and not f.is_scalar for f in random_family(spec, seed=0))

    def test_guardrail(self):
        """Beyond the guardrail the override flag is required."""
        spec = RandomFamilySpec(n=9, max_degree=1, count=1)
        with pytest.raises(GuardrailError):
            random_family(spec, seed=0, guardrails=Guardrails())


class TestSerialization:
    """Tests for the line-oriented polynomial format."""

    TEXT = """\
# a small pluriharmonic map
label sample
dim 2
kind scalar
a 0,0 = 0.5,0
a 1,0 = 1,0
b 0,1 = 0.25,-1
"""

    def test_loads(self):
        """Terms, label and dimension are read."""
        f = loads(self.TEXT)
        assert f.label == "sample"
        assert f.dim == 2
        assert f.b[Z2].to_complex() == pytest.approx(0.25 - 1j)

    def test_dumps_then_loads_preserves_coefficients(self):
        """The written form reads back to the same coefficients."""
        f = PluriharmonicPoly(
            2, {Z1: CoeffValue.matrix([[1, 2j], [0, 1]])}, {Z2: CoeffValue.matrix(np.eye(2))}, label="m",
        )
        assert loads(dumps(f)).fingerprint() == f.fingerprint()

    def test_known_norm_line(self, disc):
        """The sup line attaches a known norm."""
        f = loads(dumps(mobius_family(0.5)))
        assert f.known_sup_norm is not None
        assert sup_norm(f, disc).certified

    def test_family_separator(self):
        """Members are separated by '---'."""
        family = loads_family(dump_family([mobius_family(0.2), mobius_family(0.4)]))
        assert [f.label for f in family] == ["mobius[a=0.2]", "mobius[a=0.4]"]

    def test_duplicate_index(self):
        """The same α twice in one part is an error."""
        with pytest.raises(GrammarError):
            loads("dim 1\na 1 = 1,0\na 1 = 2,0\n")

    def test_bad_line(self):
        """Unknown lines are reported with their text."""
        with pytest.raises(GrammarError):
            loads("dim 1\nc 1 = 1,0\n")

    @pytest.mark.parametrize("value", ["inf", "-inf,0", "0,nan", "1e999,0", "matrix[[1, 0], [0, 1e999]]"])
    def test_non_finite_coefficient(self, value):
        """Infinite or NaN coefficients are rejected as non-finite input."""
        with pytest.raises(NonFiniteInputError):
            loads(f"dim 1\na 1 = {value}\n")

    def test_imaginary_unit_scalar(self):
        """A single complex token may use i for the imaginary unit."""
        assert loads("dim 1\na 1 = 0.5i\n").a[MultiIndex.of(1)].to_complex() == pytest.approx(0.5j)

    def test_read_write_file(self, tmp_path):
        """write_family and read_family agree on disk."""
        path = tmp_path / "family.txt"
        write_family(path, [necessity_member(2)])
        (f,) = read_family(path)
        assert math.isclose(f.constant_term.to_complex().imag, math.cos(0.5))

    def test_missing_file(self, tmp_path):
        """A missing file is a grammar error, not a crash."""
        with pytest.raises(GrammarError):
            read_family(tmp_path / "absent.txt")
