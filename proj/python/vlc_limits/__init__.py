"""Exact and asymptotic limits of lossless compression for memoryless sources.

Probabilities and error levels passed to exact routines are rationals:
strings such as "3/10" or "0.25", ints, or fractions.Fraction. Floats are
refused there.
"""

from fractions import Fraction

from . import _vlc_limits as _ext
from ._vlc_limits import (
    BudgetExceeded,
    DomainError,
    InfoMoments,
    ParseError,
    Source,
    bahadur_rao_log,
    brute_force,
    cgf,
    describe,
    eta_md_expansion,
    fl_md_expansion,
    fl_third_order,
    gauss,
    info_moments,
    lattice_span,
    quantile_inversion,
    rate_function,
    renyi_entropy,
    run_checks,
    set_precision,
    table,
    vl_second_order,
    vl_third_order,
    vl_zero_error,
)


def _rational(x):
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"exact routines take rationals, not {type(x).__name__}")
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def m_star(source, n, eps, budget=10_000_000):
    return _ext.m_star(source, n, _rational(eps), budget)


def l_star(source, n, eps, budget=10_000_000):
    return _ext.l_star(source, n, _rational(eps), budget)


def l_star_exact(source, n, eps, budget=10_000_000):
    return _ext.l_star_exact(source, n, _rational(eps), budget)


def eta_quantile(source, n, eps):
    return _ext.eta_quantile(source, n, _rational(eps))


def zeta_quantile(source, n, eps):
    return _ext.zeta_quantile(source, n, _rational(eps))


def bernoulli(p):
    return Source.bernoulli(_rational(p))
