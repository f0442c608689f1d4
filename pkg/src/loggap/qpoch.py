"""Finite and infinite q-Pochhammer symbols and parameter derivatives.

The infinite symbol (a;q) = prod_{n>=0} (1 - a q^n) is truncated after J
factors, with J chosen from the tail bound a*q^J/(1-q) <= eps, so the
accuracy is provable without extended precision.

Derivatives factor out the leading (1 - a) term analytically:

    d/da (a;q)   = -(a;q) sum_j 1/(q^-j - a)
                 = -T(a) * (1 + (1-a)*S1t)
    d2/da2 (a;q) = (a;q) * (S1^2 - S2)
                 = 2*T(a)*S1t + (a;q)*(S1t^2 - S2t)

where T(a) = prod_{n>=1}(1 - a q^n) and S1t, S2t are the j >= 1 partial
sums of 1/(q^-j - a) and its square.  This removes the 0 * inf ambiguity
at a = 1 and the catastrophic S1^2 - S2 cancellation as a -> 1.
"""

import math

import numpy as np

__all__ = [
    "DEFAULT_EPS",
    "qpoch_inf",
    "qpoch_fin",
    "dqpoch_inf",
    "dqpoch_fin",
    "d2qpoch_inf",
    "d2qpoch_fin",
    "F_inf",
    "F_fin",
    "F_inf_plus1",
    "F_fin_plus1",
]

DEFAULT_EPS = 1e-12


def _check_q(q):
    if not 0.0 < q < 1.0:
        raise ValueError(f"q must lie in (0, 1), got {q}")


def _check_eps(eps):
    if not 0.0 < eps <= 1e-3:
        raise ValueError(f"truncation eps must lie in (0, 1e-3], got {eps}")


def _num_terms(a_abs, q, eps):
    """Smallest J with a*q^J/(1-q) <= eps."""
    if a_abs == 0.0:
        return 0
    t = eps * (1.0 - q) / a_abs
    if t >= 1.0:
        return 0
    return int(math.ceil(math.log(t) / math.log(q)))


def _factors(a, q, terms):
    return 1.0 - a * q ** np.arange(terms, dtype=np.float64)


def qpoch_inf(a: float, q: float, eps: float = DEFAULT_EPS) -> float:
    """Infinite symbol prod_{n>=0}(1 - a q^n), truncated to accuracy eps."""
    _check_q(q)
    _check_eps(eps)
    terms = _num_terms(abs(a), q, eps)
    if terms == 0:
        return 1.0
    return float(np.prod(_factors(a, q, terms)))


def qpoch_fin(a: float, q: float, r: int) -> float:
    """Finite symbol prod_{n=0}^{r-1}(1 - a q^n); r = 0 gives 1."""
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return 1.0
    return float(np.prod(_factors(a, q, r)))


def _tail_sums(a, q, eps, r=None):
    """Partial sums S1t = sum_{j>=1} q^j/(1 - a q^j) and the sum of
    squares, truncated when the term drops below eps*(1-q) (or at j = r-1
    for the finite symbol)."""
    if r is None:
        t = eps * (1.0 - q)
        jmax = int(math.ceil(math.log(t) / math.log(q))) if t < 1.0 else 1
    else:
        jmax = r - 1
    if jmax < 1:
        return 0.0, 0.0
    qj = q ** np.arange(1, jmax + 1, dtype=np.float64)
    d = qj / (1.0 - a * qj)
    return float(d.sum()), float((d * d).sum())


def dqpoch_inf(a: float, q: float, eps: float = DEFAULT_EPS) -> float:
    """First derivative of the infinite symbol with respect to a.

    Valid for a <= 1; at a = 1 the simple zero of (a;q) cancels the pole
    of the j = 0 term and the value is -prod_{n>=1}(1 - q^n).
    """
    _check_q(q)
    _check_eps(eps)
    if a > 1.0:
        raise ValueError("dqpoch_inf requires a <= 1")
    tail = qpoch_inf(a * q, q, eps)
    s1t, _ = _tail_sums(a, q, eps)
    return -tail * (1.0 + (1.0 - a) * s1t)


def dqpoch_fin(a: float, q: float, r: int) -> float:
    """First derivative of the finite symbol; r = 0 gives 0."""
    _check_q(q)
    if r < 0:
        raise ValueError("r must be >= 0")
    if r == 0:
        return 0.0
    tail = qpoch_fin(a * q, q, r - 1)
    s1t, _ = _tail_sums(a, q, None, r=r)
    return -tail * (1.0 + (1.0 - a) * s1t)


def d2qpoch_inf(a: float, q: float, eps: float = DEFAULT_EPS) -> float:
    """Second derivative of the infinite symbol; requires 0 <= a < 1."""
    _check_q(q)
    _check_eps(eps)
    if not 0.0 <= a < 1.0:
        raise ValueError("d2qpoch_inf requires 0 <= a < 1")
    tail = qpoch_inf(a * q, q, eps)
    s1t, s2t = _tail_sums(a, q, eps)
    return 2.0 * tail * s1t + (1.0 - a) * tail * (s1t * s1t - s2t)


def d2qpoch_fin(a: float, q: float, r: int) -> float:
    """Second derivative of the finite symbol; requires 0 <= a < 1."""
    _check_q(q)
    if not 0.0 <= a < 1.0:
        raise ValueError("d2qpoch_fin requires 0 <= a < 1")
    if r < 2:
        return 0.0
    tail = qpoch_fin(a * q, q, r - 1)
    s1t, s2t = _tail_sums(a, q, None, r=r)
    return 2.0 * tail * s1t + (1.0 - a) * tail * (s1t * s1t - s2t)


def F_inf(a: float, q: float, eps: float = DEFAULT_EPS) -> float:
    """a * d/da (a;q) - (a;q)."""
    return a * dqpoch_inf(a, q, eps) - qpoch_inf(a, q, eps)


def F_fin(a: float, q: float, r: int) -> float:
    """a * d/da (a;q)_r - (a;q)_r."""
    return a * dqpoch_fin(a, q, r) - qpoch_fin(a, q, r)


def _prod_minus1(a, q, terms):
    """prod(1 - a q^n) - 1 over the given terms, cancellation-free."""
    if terms == 0:
        return 0.0
    logs = np.log1p(-a * q ** np.arange(terms, dtype=np.float64))
    return float(math.expm1(logs.sum()))


def F_inf_plus1(a: float, q: float, eps: float = DEFAULT_EPS) -> float:
    """F_inf(a, q) + 1, computed without cancellation.

    F(a) = -1 + O(a^2) as a -> 0; the naive F + 1 loses the leading digits
    exactly where the small-gap density needs them.  Requires 0 <= a <= 1.
    """
    _check_q(q)
    _check_eps(eps)
    if not 0.0 <= a <= 1.0:
        raise ValueError("F_inf_plus1 requires 0 <= a <= 1")
    if a == 1.0:
        return dqpoch_inf(1.0, q, eps) + 1.0
    terms = _num_terms(a, q, eps)
    return a * dqpoch_inf(a, q, eps) - _prod_minus1(a, q, terms)


def F_fin_plus1(a: float, q: float, r: int) -> float:
    """F_fin(a, q, r) + 1, computed without cancellation; 0 <= a <= 1."""
    _check_q(q)
    if not 0.0 <= a <= 1.0:
        raise ValueError("F_fin_plus1 requires 0 <= a <= 1")
    if a == 1.0:
        return dqpoch_fin(1.0, q, r) + 1.0
    return a * dqpoch_fin(a, q, r) - _prod_minus1(a, q, r)
