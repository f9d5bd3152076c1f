import math

import pytest
from hypothesis import given, strategies as st

from hilbertpoints.poly import (
    DimensionError,
    HomogeneousPart,
    MultiIndex,
    Polynomial,
    add,
    family_alpha,
    h2_norm,
    homogeneous_part,
    homogeneous_parts,
    inner_product,
    max_coefficient_diff,
    monomials_of_degree,
    mul,
    negate,
    phi_alpha,
)
from strategies import polynomials

z1 = Polynomial({(1, 0): 1})
z2 = Polynomial({(0, 1): 1})


def test_multi_index():
    k = MultiIndex((2, 0, 1))
    assert k.degree == 3
    assert k + (1, 1, 1) == (3, 1, 2)
    with pytest.raises(ValueError):
        MultiIndex((1, -1))
    with pytest.raises(ValueError):
        MultiIndex(())


def test_add_builds_phi_alpha():
    assert add(Polynomial({(2, 0): 1, (0, 2): 1}), Polynomial({(1, 1): 0.7})) == phi_alpha(0.7)


def test_add_zero_and_cancellation():
    p = phi_alpha(1.3)
    assert add(p, Polynomial.zero(2)) == p
    assert (z1 + (-z1)).terms == {}
    assert (z1 - z1).is_zero()


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        add(z1, Polynomial({(1,): 1}))
    with pytest.raises(DimensionError):
        mul(z1, Polynomial({(1, 0, 0): 1}))
    with pytest.raises(DimensionError):
        inner_product(z1, Polynomial({(1,): 1}))


def test_mul_linear_factors():
    alpha = 3.0
    root = math.sqrt(alpha**2 - 4)
    p = mul(z1 + z2 * ((alpha + root) / 2), z1 + z2 * ((alpha - root) / 2))
    assert max_coefficient_diff(p, phi_alpha(3.0)) < 1e-14


def test_mul_identity_and_binomial():
    p = phi_alpha(0.4)
    assert p * Polynomial.constant(1.0) == p
    assert (z1 + z2) * (z1 + z2) == Polynomial({(2, 0): 1, (1, 1): 2, (0, 2): 1})


def test_h2_norm_examples():
    assert h2_norm(phi_alpha(1.0)) == pytest.approx(math.sqrt(3), abs=1e-15)
    assert h2_norm(Polynomial.constant(1.0)) == 1.0
    assert h2_norm(z1 + z2) == pytest.approx(math.sqrt(2), abs=1e-15)


def test_homogeneous_part_examples():
    p = phi_alpha(0.9)
    assert homogeneous_part(p, 2).poly == p
    assert homogeneous_part(p, 1).poly.is_zero()
    q = Polynomial({(0, 0): 1, (1, 0): 1, (1, 1): 1})
    # oracle: filter the term list by total degree
    expected = {k: c for k, c in q if sum(k) == 1}
    assert homogeneous_part(q, 1).poly.terms == expected
    with pytest.raises(ValueError):
        homogeneous_part(q, -1)


def test_homogeneous_part_type_checks_degree():
    with pytest.raises(ValueError):
        HomogeneousPart(1, phi_alpha(1.0))
    assert HomogeneousPart.of(phi_alpha(1.0)).degree == 2


def test_inner_product_examples():
    a = 1.7
    assert inner_product(phi_alpha(a), phi_alpha(a)) == pytest.approx(2 + a * a, abs=1e-14)
    assert inner_product(z1, z2) == 0
    assert inner_product(phi_alpha(2.0), Polynomial({(1, 1): 1})) == 2


def test_inner_product_is_conjugate_linear_in_second_slot():
    p = Polynomial({(1, 0): 1 + 2j})
    q = Polynomial({(1, 0): 3 - 1j})
    assert inner_product(p, q) == (1 + 2j) * (3 + 1j)


def test_canonical_form_drops_tiny_and_sorts():
    p = Polynomial({(0, 1): 1.0, (1, 0): 1e-16, (0, 0): 2.0})
    assert list(p.terms) == [(0, 0), (0, 1)]


def test_polynomial_is_immutable():
    p = phi_alpha(1.0)
    with pytest.raises(AttributeError):
        p.foo = 1
    with pytest.raises(TypeError):
        p.terms[(2, 0)] = 5


def test_evaluate():
    p = phi_alpha(2.0)
    assert p(1, -1) == 0
    assert p(1j, 1) == pytest.approx(-1 + 2j + 1)


def test_monomials_of_degree():
    assert monomials_of_degree(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(monomials_of_degree(3, 3)) == 10


def test_family_alpha_detection():
    assert family_alpha(phi_alpha(1.25)) == 1.25
    assert family_alpha(phi_alpha(0.0)) == 0.0
    assert family_alpha(Polynomial({(2, 0): 1, (1, 1): -1, (0, 2): 1})) is None
    assert family_alpha(z1 + z2) is None


def test_text_roundtrip_examples():
    p = Polynomial({(2, 0): 1, (1, 1): 0.1 + 0.2j, (0, 2): -3})
    text = p.to_text()
    assert text.splitlines()[0] == "0 2 -3.0 0.0"
    assert Polynomial.from_text(text) == p
    assert Polynomial.from_text("# comment\n1 0 2\n0 1 1.5\n", dimension=2) == Polynomial({(1, 0): 2, (0, 1): 1.5})
    assert Polynomial.from_text("", dimension=3) == Polynomial.zero(3)
    with pytest.raises(ValueError):
        Polynomial.from_text("1 x 2 0\n")


@given(polynomials(nonzero=True))
def test_text_roundtrip(p):
    assert Polynomial.from_text(p.to_text()) == p


@given(polynomials(dimension=2))
def test_parseval_over_homogeneous_parts(p):
    total = h2_norm(p) ** 2
    parts = sum(h2_norm(part.poly) ** 2 for part in homogeneous_parts(p))
    assert parts == pytest.approx(total, rel=1e-12, abs=1e-300)
    assert sum((part.poly for part in homogeneous_parts(p)), Polynomial.zero(2)) == p


@given(polynomials(dimension=2), polynomials(dimension=2), polynomials(dimension=2))
def test_ring_laws(p, q, r):
    assert max_coefficient_diff(p * q, q * p) <= 1e-14
    assert max_coefficient_diff(p * (q + r), p * q + p * r) <= 1e-14 * max(1.0, h2_norm(p) * (h2_norm(q) + h2_norm(r)))


@given(polynomials())
def test_inner_product_matches_h2(p):
    assert inner_product(p, p).real == pytest.approx(h2_norm(p) ** 2, rel=1e-14, abs=1e-300)
    assert inner_product(p, p).imag == 0


@given(polynomials())
def test_add_negate_is_exactly_empty(p):
    assert add(p, negate(p)).terms == {}


@given(polynomials(dimension=2), st.sampled_from([(0, 1), (1, 0)]))
def test_permute_variables_is_involution(p, perm):
    assert p.permute_variables(perm).permute_variables(perm) == p
