import random
from fractions import Fraction

import pytest

from ncdeform import (AlgebraElement, DualElement, ExpressionError,
                      SeriesScalar, chi, commutator, evaluate, make_exp_rho,
                      make_generator, make_lambda, make_rho, normal_order_mul,
                      parse_expression)
from ncdeform.parser import evaluate_dual, evaluate_primal
from ncdeform.render import dual_to_text, element_to_text

from conftest import params, random_element


def test_commutator_expression(p111_d2):
    got = evaluate("Q1*P1 - P1*Q1", p111_d2)
    want = commutator(make_generator("Q1", p111_d2),
                      make_generator("P1", p111_d2))
    assert got == want


def test_scaled_monomial(p111_d2):
    got = evaluate("(1/2)*h1^2*Th^3", p111_d2)
    want = AlgebraElement.monomial(
        p111_d2, (3, 0, 0, 0, 0, 0, 0),
        SeriesScalar.monomial((2, 0, 0), Fraction(1, 2), 2))
    assert got == want


def test_order_is_preserved(p111_d2):
    # P1*Q1 must evaluate to the reordered product, not Q1*P1.
    got = evaluate("P1*Q1", p111_d2)
    want = normal_order_mul(make_generator("P1", p111_d2),
                            make_generator("Q1", p111_d2))
    assert got == want
    assert got != normal_order_mul(make_generator("Q1", p111_d2),
                                   make_generator("P1", p111_d2))


def test_builtins(p111_d2):
    assert evaluate("rho", p111_d2) == make_rho(p111_d2)
    assert evaluate("lambda", p111_d2) == make_lambda(p111_d2)
    assert evaluate("exp(2*rho)", p111_d2) == make_exp_rho(2, p111_d2)
    assert evaluate("exp(-rho)", p111_d2) == make_exp_rho(-1, p111_d2)
    assert evaluate("exp(1/2*rho)", p111_d2) == \
        make_exp_rho(Fraction(1, 2), p111_d2)


def test_dual_expression(p111_d2):
    got = evaluate("W[1,0,0]*Y[1,0,0,0]", p111_d2)
    assert got == DualElement.monomial((1, 0, 0), (1, 0, 0, 0), 2)
    assert evaluate("x1", p111_d2) == chi(1, 2)
    assert evaluate("x7", p111_d2) == chi(7, 2)
    assert evaluate("2*x4 - x4", p111_d2) == chi(4, 2)


def test_mixed_tokens_error(p111_d2):
    with pytest.raises(ExpressionError, match="mixed"):
        parse_expression("Q1*W[1,0,0]")


def test_syntax_errors_carry_position():
    with pytest.raises(ExpressionError) as err:
        parse_expression("Q1*")
    assert err.value.position is not None
    with pytest.raises(ExpressionError):
        parse_expression("Q1 + + P1")
    with pytest.raises(ExpressionError):
        parse_expression("W[1,0]")
    with pytest.raises(ExpressionError):
        parse_expression("Th^(1/2)")
    with pytest.raises(ExpressionError):
        parse_expression("bogus")


def test_leading_minus(p111_d2):
    got = evaluate("-Th + Q1", p111_d2)
    want = make_generator("Q1", p111_d2) - make_generator("Th", p111_d2)
    assert got == want


def test_serialize_examples(p111_d2):
    half_th = make_generator("Th", p111_d2).scale(Fraction(1, 2))
    assert element_to_text(half_th) == "(1/2)*Th"
    assert element_to_text(AlgebraElement.zero(p111_d2)) == "0"
    assert element_to_text(AlgebraElement.unit(p111_d2)) == "1"


def test_primal_roundtrip_random():
    rng = random.Random(20260808)
    p = params(1, 1, 1, 2)
    for _ in range(25):
        x = random_element(rng, p, max_gen_degree=3)
        text = element_to_text(x)
        assert evaluate_primal(parse_expression(text), p) == x, text


def test_dual_roundtrip_random():
    rng = random.Random(5)
    trunc = 2
    for _ in range(25):
        u = DualElement.zero(trunc)
        for _ in range(3):
            w = tuple(rng.randrange(2) for _ in range(3))
            y = tuple(rng.randrange(2) for _ in range(4))
            h = [0, 0, 0]
            h[rng.randrange(3)] += rng.randrange(2)
            coeff = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            u = u + DualElement.monomial(
                w, y, trunc, SeriesScalar.monomial(tuple(h), coeff, trunc))
        text = dual_to_text(u)
        if text == "0":
            continue
        assert evaluate_dual(parse_expression(text), trunc) == u, text


def test_element_json_roundtrip():
    from ncdeform import element_from_json, element_to_json
    rng = random.Random(17)
    p = params(1, 1, 1, 2)
    for _ in range(10):
        x = random_element(rng, p, max_gen_degree=3)
        assert element_from_json(element_to_json(x), p) == x


def test_dual_json_roundtrip():
    from ncdeform import dual_from_json, dual_to_json
    u = chi(1, 2) + chi(5, 2).scale(Fraction(-3, 7)) + DualElement.monomial(
        (1, 1, 0), (0, 0, 2, 0), 2, SeriesScalar.hbar(2, 2))
    assert dual_from_json(dual_to_json(u), 2) == u
