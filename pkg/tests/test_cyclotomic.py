import pytest
from hypothesis import given
from hypothesis import strategies as st

from charsum.cyclotomic import (
    CycInt,
    add,
    approx_complex,
    conj,
    from_int,
    from_json_dict,
    lift,
    mul,
    neg,
    one,
    root_of_unity,
    sqrt2,
    zero,
)


@st.composite
def cycints(draw, max_r=5, max_coeff=9):
    r = draw(st.integers(min_value=1, max_value=max_r))
    n = 1 << (r - 1)
    coeffs = draw(st.lists(st.integers(-max_coeff, max_coeff), min_size=n, max_size=n))
    return CycInt(r, tuple(coeffs))


@st.composite
def cycint_pairs(draw, max_r=5):
    r = draw(st.integers(min_value=1, max_value=max_r))
    n = 1 << (r - 1)
    mk = lambda: tuple(draw(st.lists(st.integers(-9, 9), min_size=n, max_size=n)))
    return CycInt(r, mk()), CycInt(r, mk())


def test_root_examples():
    assert root_of_unity(3, 2).coeffs == (0, 0, 1, 0)
    assert root_of_unity(3, 6).coeffs == (0, 0, -1, 0)
    assert root_of_unity(1, 1).coeffs == (-1,)
    assert root_of_unity(3, 8) == one(3)
    assert root_of_unity(3, -1) == root_of_unity(3, 7)


def test_add_neg_mul_examples():
    z8 = root_of_unity(3, 1)
    assert add(z8, neg(z8)) == zero(3)
    assert mul(z8, root_of_unity(3, 7)) == one(3)
    s = sqrt2(3)
    assert mul(s, s) == from_int(2, 3)


def test_sqrt2_basis():
    assert sqrt2(3).coeffs == (0, 1, 0, -1)
    c = sqrt2(4).coeffs
    assert c[2] == 1 and c[6] == -1 and sum(abs(x) for x in c) == 2
    assert mul(sqrt2(4), sqrt2(4)) == from_int(2, 4)


def test_sqrt2_rejects_small_ring():
    with pytest.raises(ValueError):
        sqrt2(2)


def test_lift_examples():
    i_in_r2 = root_of_unity(2, 1)
    assert lift(i_in_r2, 3) == root_of_unity(3, 2)
    assert lift(from_int(5, 2), 6) == from_int(5, 6)
    a = root_of_unity(2, 1)
    assert lift(lift(a, 4), 6) == lift(a, 6)
    with pytest.raises(ValueError):
        lift(root_of_unity(4, 1), 3)


def test_ring_mismatch_rejected():
    with pytest.raises(ValueError):
        add(one(3), one(4))
    with pytest.raises(ValueError):
        mul(one(3), one(4))


def test_conj_examples():
    z = root_of_unity(3, 3)
    assert conj(root_of_unity(3, 1)) == root_of_unity(3, 7)
    assert conj(from_int(11, 4)) == from_int(11, 4)
    assert mul(z, conj(z)) == one(3)


def test_bad_shape_rejected():
    with pytest.raises(ValueError):
        CycInt(3, (1, 2))
    with pytest.raises(ValueError):
        CycInt(0, ())


def test_approx_examples():
    assert approx_complex(from_int(2, 3)) == (2.0, 0.0)
    re, im = approx_complex(root_of_unity(2, 1))
    assert abs(re) < 1e-12 and abs(im - 1.0) < 1e-12
    re, im = approx_complex(sqrt2(3))
    assert abs(re - 2**0.5) < 1e-12 and abs(im) < 1e-12


def test_json_round_trip():
    a = root_of_unity(4, 5)
    d = a.to_json_dict()
    assert d["ring_exponent"] == 4 and len(d["coeffs"]) == 8
    assert from_json_dict(d) == a


@given(cycint_pairs())
def test_unique_representation(pair):
    a, b = pair
    if a.coeffs != b.coeffs:
        assert not add(a, neg(b)).is_zero()
    else:
        assert add(a, neg(b)).is_zero()


@given(cycint_pairs())
def test_mul_commutative(pair):
    a, b = pair
    assert mul(a, b) == mul(b, a)


@given(st.data())
def test_mul_associative_and_distributive(data):
    r = data.draw(st.integers(min_value=1, max_value=4))
    n = 1 << (r - 1)
    mk = lambda: CycInt(r, tuple(data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))))
    a, b, c = mk(), mk(), mk()
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@given(cycint_pairs())
def test_conj_is_ring_homomorphism_and_involution(pair):
    a, b = pair
    assert conj(conj(a)) == a
    assert conj(add(a, b)) == add(conj(a), conj(b))
    assert conj(mul(a, b)) == mul(conj(a), conj(b))


@given(cycints())
def test_norm_is_real_nonnegative(a):
    re, im = approx_complex(mul(a, conj(a)))
    assert abs(im) < 1e-9
    assert re >= -1e-9


@given(st.integers(min_value=1, max_value=6), st.integers(), st.integers())
def test_root_exponent_arithmetic(r, i, j):
    assert mul(root_of_unity(r, i), root_of_unity(r, j)) == root_of_unity(r, i + j)
