from fractions import Fraction

import pytest

from ncdeform import (AlgebraElement, SeriesScalar, TensorElement, antipode,
                      apply_coproduct_leg, commutator, coproduct, counit,
                      heisenberg_limit_report, make_exp_rho, make_generator,
                      make_lambda, make_rho, mu_antipode_leg,
                      normal_order_mul, tensor_commutator, tensor_mul,
                      tensor_of, verify_hopf_axioms)
from ncdeform.algebra import _central_mul
from ncdeform.hopf import _cop3_mono, _cop_mono, _hopf, _tensor_inverse

from conftest import params


def gens(p):
    return {name: make_generator(name, p)
            for name in ("Th", "Ph", "Ps", "Q1", "Q2", "P1", "P2")}


def test_tensor_mul_examples():
    p = params(1, 1, 1, 2)
    g = gens(p)
    one = AlgebraElement.unit(p)
    e1, em1 = make_exp_rho(1, p), make_exp_rho(-1, p)

    assert tensor_mul(tensor_of(g["Q1"], one), tensor_of(one, g["P1"])) == \
        tensor_of(g["Q1"], g["P1"])
    assert tensor_commutator(tensor_of(g["Q1"], e1),
                             tensor_of(em1, g["P1"])) == \
        TensorElement.zero(p)
    lam_th = _central_mul(make_lambda(p), g["Th"])
    assert tensor_commutator(tensor_of(g["Q1"], e1),
                             tensor_of(g["P1"], e1)) == \
        tensor_of(lam_th, make_exp_rho(2, p))


def test_coproduct_generators():
    p = params(1, 1, 1, 2)
    g = gens(p)
    e1, em1 = make_exp_rho(1, p), make_exp_rho(-1, p)
    assert coproduct(g["Q1"]) == tensor_of(g["Q1"], e1) + tensor_of(em1, g["Q1"])
    assert coproduct(g["P2"]) == tensor_of(g["P2"], e1) + tensor_of(em1, g["P2"])


def test_coproduct_rho_is_primitive():
    p = params(1, 1, 1, 3)
    rho = make_rho(p)
    one = AlgebraElement.unit(p)
    assert coproduct(rho) == tensor_of(rho, one) + tensor_of(one, rho)


def test_coproduct_theta_classical():
    p0 = params(1, 1, 1, 0)
    th = make_generator("Th", p0)
    one = AlgebraElement.unit(p0)
    assert coproduct(th) == tensor_of(th, one) + tensor_of(one, th)


def test_coproduct_theta_first_order_cross_terms():
    # cop(Th) at truncation 1 is primitive plus the antisymmetric linear part
    # that later feeds the cocommutators.
    p = params(1, 1, 1, 1)
    g = gens(p)
    one = AlgebraElement.unit(p)
    h2 = SeriesScalar.hbar(2, 1)
    h3 = SeriesScalar.hbar(3, 1)
    cross = (tensor_of(g["Th"], g["Ph"]) - tensor_of(g["Ph"], g["Th"])).scale(h2) \
        + (tensor_of(g["Th"], g["Ps"]) - tensor_of(g["Ps"], g["Th"])).scale(h3)
    expected = tensor_of(g["Th"], one) + tensor_of(one, g["Th"]) + cross.scale(2)
    assert coproduct(g["Th"]) == expected


def test_coproduct_lambda_theta():
    p = params(1, 1, 1, 3)
    g = gens(p)
    lam = make_lambda(p)
    lam_th = _central_mul(lam, g["Th"])
    e2, em2 = make_exp_rho(2, p), make_exp_rho(-2, p)
    expected = tensor_of(lam_th, e2) + tensor_of(em2, lam_th)
    assert coproduct(lam_th) == expected
    assert tensor_mul(coproduct(g["Th"]), coproduct(lam)) == expected


def test_classical_primitivity_all_generators():
    p = params(1, 1, 1, 2)
    one = AlgebraElement.unit(p)
    for name, g in gens(p).items():
        got = coproduct(g).limit((1, 2, 3))
        assert got == tensor_of(g, one) + tensor_of(one, g), name


def test_flip_difference_vanishes_classically():
    p = params(1, 1, 1, 2)
    for name, g in gens(p).items():
        t = coproduct(g)
        d = t - t.flip()
        assert all(key[-1] != (0, 0, 0) for key in d.terms), name


def test_counit_examples():
    p = params(1, 1, 1, 2)
    g = gens(p)
    assert counit(g["Q1"]) == SeriesScalar.zero(2)
    x = AlgebraElement.unit(p) + g["Th"].scale(SeriesScalar.monomial(
        (1, 0, 0), 3, 2))
    assert counit(x) == SeriesScalar.one(2)
    assert counit(make_lambda(p)) == SeriesScalar.one(2)


def test_antipode_examples():
    p = params(1, 1, 1, 2)
    g = gens(p)
    assert antipode(g["Q1"]) == -g["Q1"]
    lam = make_lambda(p)
    assert antipode(lam) == lam
    got = antipode(normal_order_mul(g["Q1"], g["P1"]))
    lam_th = _central_mul(lam, g["Th"])
    assert got == normal_order_mul(g["Q1"], g["P1"]) - lam_th


def test_antipode_mu_kills_p1():
    p = params(1, 1, 1, 2)
    t = coproduct(make_generator("P1", p))
    assert mu_antipode_leg(t, 0) == AlgebraElement.zero(p)
    assert mu_antipode_leg(t, 1) == AlgebraElement.zero(p)


def test_tensor_inverse_of_cop_lambda():
    p = params(1, 1, 1, 3)
    cache = _hopf(p)
    assert tensor_mul(cache.cop_lam, cache.cop_lam_inv) == \
        TensorElement.unit(p)


def test_coassociativity_dp_matches_leg_application():
    p = params(1, 1, 1, 2)
    cache = _hopf(p)
    for mono in [(0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 1, 0),
                 (1, 0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 0, 1, 1)]:
        cop = _cop_mono(cache, mono)
        assert _cop3_mono(cache, mono, 0) == apply_coproduct_leg(cop, 0)
        assert _cop3_mono(cache, mono, 1) == apply_coproduct_leg(cop, 1)


@pytest.mark.parametrize("alpha,beta,gamma",
                         [(1, 1, 1), (2, Fraction(1, 2), -3)])
def test_hopf_axioms_degree2(alpha, beta, gamma):
    report = verify_hopf_axioms(2, params(alpha, beta, gamma, 2))
    assert report.passed, report.to_text()


def test_heisenberg_limit_report():
    report = heisenberg_limit_report(3)
    assert report.passed, report.to_text()


def test_heisenberg_frozen_degree3():
    p = params(1, 0, 0, 3)
    got = commutator(make_generator("Q1", p),
                     make_generator("P1", p)).limit((2, 3))
    expected = AlgebraElement.monomial(p, (1, 0, 0, 0, 0, 0, 0)) + \
        AlgebraElement.monomial(p, (3, 0, 0, 0, 0, 0, 0),
                                SeriesScalar.monomial((2, 0, 0),
                                                      Fraction(2, 3), 3))
    assert got == expected


def test_heisenberg_q1_q2_commute():
    p = params(1, 0, 0, 2)
    got = commutator(make_generator("Q1", p), make_generator("Q2", p))
    assert got == AlgebraElement.zero(p)


def test_tensor_inverse_rejects_non_units():
    p = params(1, 1, 1, 2)
    g = gens(p)
    with pytest.raises(ValueError):
        _tensor_inverse(tensor_of(g["Q1"], g["P1"]))


def test_hopf_axioms_every_truncation_up_to_3():
    # Degree-3 monomial grid at every truncation D <= 3 (the D = 3 case is
    # covered by the acceptance suite).
    for trunc in (0, 1, 2):
        report = verify_hopf_axioms(3, params(1, 1, 1, trunc))
        assert report.passed, report.to_text()
