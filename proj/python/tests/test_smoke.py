import cmath
import math

import pytest

import polarlp as pl


def test_polynomial_basics():
    p = pl.ComplexPoly([1, 0, 1])  # 1 + z^2
    assert p.degree == 2
    assert p(1j) == 0
    assert pl.derivative(p).coeffs == [0, 2]
    q = pl.conjugate_reciprocal(pl.ComplexPoly([2j, 1]))
    assert q.coeffs == [1, -2j]
    # D_alpha drops the z^n term
    assert pl.polar_derivative(pl.ComplexPoly([0, 0, 1]), 3.0).degree == 1


def test_parseval():
    p = pl.ComplexPoly([1 + 2j, -0.5, 0.25j, 3])
    expected = 2 * math.pi * sum(abs(a) ** 2 for a in p.coeffs)
    r = pl.lp_mean(p, 2.0)
    assert r.converged
    assert abs(r.raw_integral - expected) <= 1e-12 * expected


def test_roots_and_gauss_lucas():
    zeros = [0.3, -0.2 + 0.4j, 0.5j, -0.6]
    p = pl.from_zeros(zeros)
    found = sorted(pl.find_roots(p).roots, key=lambda z: (z.real, z.imag))
    for a, b in zip(found, sorted(zeros, key=lambda z: (complex(z).real, complex(z).imag))):
        assert abs(a - b) < 1e-12
    assert pl.max_zero_modulus(pl.derivative(p)) <= max(abs(z) for z in zeros) + 1e-12


def test_extrema():
    p = pl.ComplexPoly([1, 1])
    assert pl.max_modulus_on_circle(p).value == pytest.approx(2.0, abs=1e-12)
    assert pl.min_modulus_on_circle(p, 0.5).value == pytest.approx(0.5, abs=1e-12)


def test_ratio_equality_extremal():
    k, n = 0.5, 5
    inst = pl.make_instance("(z-k)^n", [k] * n, 1.0, k)
    c = pl.check_ratio_mean(pl.Subject(inst), k, 1 + k, 1j, 2.0)
    assert c.verdict == pl.Verdict.equality
    assert abs(c.lhs - c.rhs) <= 1e-8 * c.rhs


def test_turan_equality_and_rejection():
    inst = [i for i in pl.extremal_catalog(1.0, 4) if i.id.startswith("z^n+1/")][0]
    assert pl.check_turan(pl.Subject(inst)).verdict == pl.Verdict.equality
    outside = pl.Subject(pl.ComplexPoly([-4, 1]))  # zero at 4
    c = pl.check_turan(outside)
    assert c.verdict == pl.Verdict.rejected
    assert "zeros" in c.note


def test_witness_bounded():
    cfg = pl.GeneratorConfig()
    cfg.count = 3
    cfg.k_values = [0.7]
    for inst in pl.random_in_disk(cfg):
        t = pl.subordination_witness(pl.Subject(inst), inst.k, inst.mu, cmath.exp(0.3j))
        assert t.max_abs_w <= 1 + 1e-8
        assert abs(t.w_at_zero) <= 1e-8
        assert all(mc.holds for mc in t.mean_comparisons)


def test_run_config_deterministic():
    yaml = """
seed: 5
generator:
  random_in_disk: {count: 3, n_range: [2, 5], k_values: [0.5, 1.0]}
axes: {p: [1, 2], alpha_phases: 2}
checkers: [ratio_mean, pointwise_chain, holder_split]
"""
    csv1, counts, code = pl.run_config(yaml)
    csv2, _, _ = pl.run_config(yaml)
    assert csv1 == csv2
    assert code == 0
    assert csv1.splitlines()[0].startswith("instance_id,checker_id,n,k,mu")
    assert all(v.get("violated", 0) == 0 for v in counts.values())


def test_bad_config():
    with pytest.raises(pl.ConfigError):
        pl.run_config("tolerances: {quadrature: -1}")
