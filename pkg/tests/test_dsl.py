from fractions import Fraction

import pytest
from hypothesis import given

from conftest import elements, tensors, tensors3
from snskit.algebra import Element, IndexDomain, G, L, M, Y
from snskit.dsl import (
    IndexDomainError, ParseError, SourceSpan, format_element, format_tensor, parse_any,
    parse_element, parse_tensor, parse_tensor3,
)
from snskit.tensors import Tensor3, TensorElement, tensor2


def test_parse_basis_and_coefficients():
    assert parse_element("L[1]") == Element({L(1): 1})
    assert parse_element("  -3/4 * Y[-5/2] + M[0]") == Element({Y("-5/2"): Fraction(-3, 4), M(0): 1})
    assert parse_element("0") == Element()
    assert parse_element("L[1] - L[1]") == Element()


def test_parse_tensor_distribution_example():
    t = parse_tensor("3/2*L[2] - G[1/2] (x) M[-1]")
    assert t == tensor2(L(2), M(-1)) * Fraction(3, 2) - tensor2(G("1/2"), M(-1))
    assert format_tensor(t) == "3/2*L[2] (x) M[-1] - G[1/2] (x) M[-1]"


def test_parse_tensor_coefficients_multiply():
    assert parse_tensor("2*L[1] (x) 3*M[0]") == TensorElement({(L(1), M(0)): 6})


def test_parse_tensor3():
    t = parse_tensor3("L[0] (x) G[1/2] (x) M[-1/2]")
    assert t == Tensor3({(L(0), G("1/2"), M("-1/2")): 1})


def test_index_domain_error_has_span():
    with pytest.raises(IndexDomainError) as info:
        parse_element("L[1/2]")
    err = info.value
    assert isinstance(err, IndexDomain)
    assert "L index must be an integer" in err.message
    assert err.span == SourceSpan(0, 6)


@pytest.mark.parametrize("text, expected_hint", [
    ("L[2.5]", "'/2' for half-integers"),
    ("L[1/3]", "'2'"),
    ("L[1] +", "one of L, G, Y, M"),
    ("Q[1]", None),
    ("L[1] L[2]", "'+', '-' or end of input"),
    ("", "an element"),
])
def test_parse_errors(text, expected_hint):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    if expected_hint is not None:
        assert info.value.expected == expected_hint
    assert 0 <= info.value.span.begin <= info.value.span.end <= len(text)


def test_arity_mismatch():
    with pytest.raises(ParseError):
        parse_tensor("L[1]")
    with pytest.raises(ParseError):
        parse_element("L[1] (x) L[2]")
    with pytest.raises(ParseError):
        parse_tensor("L[1] (x) L[2] (x) L[3]")


def test_parse_any_picks_arity():
    assert isinstance(parse_any("L[1]"), Element)
    assert isinstance(parse_any("L[1] (x) L[2]"), TensorElement)
    assert isinstance(parse_any("L[1] (x) L[2] (x) L[3]"), Tensor3)


def test_span_invariant():
    with pytest.raises(ValueError):
        SourceSpan(3, 2)


def test_format_examples():
    assert format_element(Element({L(3): 1, Y("5/2"): Fraction(1, 2)})) == "L[3] + 1/2*Y[5/2]"
    assert format_element(Element()) == "0"
    assert format_tensor(TensorElement({(M(0), M(0)): -1})) == "-M[0] (x) M[0]"


def test_format_is_canonical():
    a = Element({M(0): 1, L(2): -2, G("1/2"): 1})
    b = Element({G("1/2"): 1, L(2): -2}) + Element({M(0): 1})
    assert format_element(a) == format_element(b) == "-2*L[2] + G[1/2] + M[0]"


@given(elements(max_terms=6))
def test_element_round_trip(e):
    assert parse_element(format_element(e)) == e


@given(tensors(max_terms=6))
def test_tensor_round_trip(t):
    assert parse_tensor(format_tensor(t)) == t


@given(tensors3())
def test_tensor3_round_trip(t):
    assert parse_tensor3(str(t)) == t
