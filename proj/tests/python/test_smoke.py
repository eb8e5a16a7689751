import json
import math
import os
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

import vlc_limits as vl

DATA = Path(os.environ.get("VLC_DATA", Path(__file__).resolve().parents[1] / "data"))


def brute_m_star(probs, n, eps):
    seq = sorted((math.prod(c) for c in product(probs, repeat=n)), reverse=True)
    need = 1 - eps
    total = Fraction(0)
    for k, p in enumerate(seq, 1):
        total += p
        if total >= need:
            return k
    return len(seq)


def test_source_roundtrip():
    src = vl.bernoulli("3/10")
    assert src.size == 2
    assert src.probs == [Fraction(7, 10), Fraction(3, 10)]
    assert "7/10" in repr(src)
    loaded = vl.Source.load(str(DATA / "bern_3_10.json"))
    assert loaded.probs == src.probs


def test_rejects_deficit():
    with pytest.raises(vl.ParseError, match="1/100"):
        vl.Source.load(str(DATA / "deficit.json"))
    with pytest.raises(ValueError):
        vl.Source(["1/2", "49/100"])


def test_moments():
    m = vl.info_moments(vl.bernoulli("1/4"))
    assert m.entropy == pytest.approx(0.811278124459, rel=1e-11)
    p = 0.25
    var = p * (1 - p) * math.log2(3) ** 2
    assert m.varentropy == pytest.approx(var, rel=1e-12)
    assert vl.info_moments(vl.Source.uniform(4)).skew is None


@pytest.mark.parametrize("n", [1, 3, 6])
@pytest.mark.parametrize("eps", [Fraction(0), Fraction(1, 10), Fraction(1, 2), Fraction(1)])
def test_m_star_against_enumeration(n, eps):
    probs = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)]
    src = vl.Source(["1/2", "1/3", "1/6"])
    expected = 0 if eps == 1 else brute_m_star(probs, n, eps)
    assert vl.m_star(src, n, eps) == expected
    assert isinstance(vl.m_star(src, n, eps), int)


def test_l_star_exact_matches_oracle():
    src = vl.bernoulli("1/4")
    assert vl.l_star_exact(src, 1, 0) == Fraction(1, 4)
    for n in range(1, 8):
        for eps in ("0", "1/10", "1/2"):
            m, l = vl.brute_force(src, n, eps)
            assert vl.m_star(src, n, eps) == m
            assert vl.l_star_exact(src, n, eps) == l
            assert vl.l_star(src, n, eps) == pytest.approx(float(l), rel=1e-14, abs=1e-15)


def test_refuses_float_eps():
    with pytest.raises(TypeError):
        vl.m_star(vl.bernoulli("1/4"), 3, 0.1)


def test_large_integer_counts():
    src = vl.bernoulli("3/10")
    m = vl.m_star(src, 400, "1/10")
    assert m > 2**300
    assert math.log2(m) == pytest.approx(fl := vl.fl_third_order(vl.info_moments(src), 400, 0.1), abs=3)
    assert fl > 0


def test_gaussian():
    for s in (1e-12, 0.01, 0.5, 0.9):
        assert vl.gauss.cdf(vl.gauss.quantile(s)) == pytest.approx(s, rel=1e-12)
    assert vl.gauss.f_g(0.0) == 0.0


def test_expansions():
    m = vl.info_moments(vl.bernoulli("3/10"))
    n = 500
    assert vl.vl_third_order(m, n, 0.5) == pytest.approx(vl.vl_second_order(m, n, 0.5) - 0.25 * math.log2(n))
    with pytest.raises(vl.DomainError):
        vl.vl_third_order(m, n, 0.0)
    with pytest.raises(vl.ParseError):
        vl.fl_md_expansion(m, n, 0.1, "furlongs")


def test_large_deviations():
    src = vl.Source(["1/2", "1/3", "1/6"])
    lam, d1, d2 = vl.cgf(src, 1.0)
    assert lam == pytest.approx(0.0, abs=1e-15)
    s, _ = vl.rate_function(src, d1)
    assert s == pytest.approx(1.0)


def test_table_and_checks():
    csv = vl.table(vl.bernoulli("1/4"), "1,2", "0,1/n")
    lines = csv.split("\n")
    assert lines[0].startswith("n,eps,L_exact,")
    assert lines[1].startswith("1,0,0.25,")
    assert csv.endswith("\n")
    assert len(lines) == 6

    out = vl.run_checks("gaussian")
    assert out[0]["passed"] is True
    json.dumps(out)
    out = vl.run_checks("oracle,sv-identity", vl.bernoulli("3/10"), n="1..6")
    assert [o["passed"] for o in out] == [True, True]
    with pytest.raises(vl.ParseError):
        vl.run_checks("none")


def test_budget():
    with pytest.raises(vl.BudgetExceeded):
        vl.m_star(vl.Source(["1/2", "1/3", "1/6"]), 60, "1/2", budget=100)
