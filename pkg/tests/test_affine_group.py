"""Group structure of the half-plane with the affine composition law."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinequant.affine_group import (GroupElement, compose, identity,
                                      inverse, left_translate)
from affinequant.errors import ParameterDomainError

elements = st.builds(
    GroupElement,
    q=st.floats(min_value=0.05, max_value=20.0, allow_nan=False),
    p=st.floats(min_value=-10.0, max_value=10.0, allow_nan=False),
)


def close(g, h, tol=1e-9):
    return abs(g.q - h.q) <= tol * max(1.0, abs(h.q)) and \
        abs(g.p - h.p) <= tol * max(1.0, abs(h.p))


def test_composition_law_explicit():
    g = compose(GroupElement(2.0, 3.0), GroupElement(5.0, 7.0))
    # (q, p)(q0, p0) = (q q0, p0/q + p)
    assert g.q == pytest.approx(10.0)
    assert g.p == pytest.approx(7.0 / 2.0 + 3.0)


def test_identity_is_neutral():
    g = GroupElement(1.7, -0.4)
    assert close(compose(identity(), g), g)
    assert close(compose(g, identity()), g)


def test_inverse_explicit():
    g = GroupElement(2.0, 3.0)
    gi = inverse(g)
    assert gi.q == pytest.approx(0.5)
    assert gi.p == pytest.approx(-6.0)


def test_positive_dilation_required():
    with pytest.raises(ParameterDomainError):
        GroupElement(0.0, 1.0)
    with pytest.raises(ParameterDomainError):
        GroupElement(-2.0, 0.0)


@given(g=elements)
@settings(max_examples=60, deadline=None)
def test_inverse_cancels(g):
    assert close(compose(g, inverse(g)), identity())
    assert close(compose(inverse(g), g), identity())


@given(a=elements, b=elements, c=elements)
@settings(max_examples=60, deadline=None)
def test_associativity(a, b, c):
    assert close(compose(compose(a, b), c), compose(a, compose(b, c)),
                 tol=1e-8)


@given(a=elements, b=elements)
@settings(max_examples=60, deadline=None)
def test_inverse_antihomomorphism(a, b):
    assert close(inverse(compose(a, b)), compose(inverse(b), inverse(a)),
                 tol=1e-8)


def test_left_translate_identity_action():
    f = lambda q, p: q * q + 3.0 * p
    g = left_translate(identity(), f)
    assert g(1.3, 0.7) == pytest.approx(f(1.3, 0.7))


def test_left_translate_composition_order():
    # action by g0 then g1 equals action by g1 g0
    f = lambda q, p: q ** 2 + 2.0 * p + 0.3 * q * p
    g0 = GroupElement(2.0, 1.0)
    g1 = GroupElement(0.5, -0.7)
    step = left_translate(g1, left_translate(g0, f))
    joint = left_translate(compose(g1, g0), f)
    for (q, p) in [(0.8, -1.2), (2.5, 0.4)]:
        assert step(q, p) == pytest.approx(joint(q, p), rel=1e-12)
