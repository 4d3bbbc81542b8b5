from math import factorial, pi
from typing import Union

import numpy as np
from scipy import special

from utils.errors import InvalidInputError

ArrayLike = Union[float, np.ndarray]


def half_integer_order(nu: float) -> int:
    """Return n when |nu| = n + 1/2, else -1."""
    twice = 2 * abs(nu)
    k = int(round(twice))
    if abs(twice - k) < 1e-12 and k % 2 == 1:
        return (k - 1) // 2
    return -1


def _half_integer_terms(n: int) -> np.ndarray:
    # K_{n+1/2}(r) = sqrt(pi / 2r) e^{-r} sum_k (n+k)! / (k! (n-k)!) (2r)^{-k}
    return np.array([factorial(n + k) / (factorial(k) * factorial(n - k)) / 2**k for k in range(n + 1)])


def bessel_k(nu: float, r: ArrayLike) -> ArrayLike:
    """Modified Bessel function of the second kind K_nu(r) for r > 0.

    Half-integer orders use the terminating closed form, other orders ``scipy.special.kv``.
    K is even in nu, so negative orders are accepted.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise InvalidInputError("bessel_k is defined for r > 0 only")
    n = half_integer_order(nu)
    if n >= 0:
        coeffs = _half_integer_terms(n)
        series = sum(c * r_arr ** (-k) for k, c in enumerate(coeffs))
        value = np.sqrt(pi / (2 * r_arr)) * np.exp(-r_arr) * series
    else:
        value = special.kv(abs(nu), r_arr)
    return float(value) if np.ndim(value) == 0 else value


def matern_profile(nu: float, r: np.ndarray) -> np.ndarray:
    """r^nu K_nu(r) for r >= 0, with the finite limit 2^(nu-1) Gamma(nu) at r = 0 (nu > 0)."""
    r = np.asarray(r, dtype=float)
    n = half_integer_order(nu)
    if n >= 0:
        # r^(n+1/2) K_{n+1/2}(r) = sqrt(pi/2) e^{-r} sum_k c_k r^(n-k): no negative powers
        coeffs = _half_integer_terms(n)
        poly = sum(c * r ** (n - k) for k, c in enumerate(coeffs))
        return np.sqrt(pi / 2) * np.exp(-r) * poly
    out = np.empty_like(r)
    zero = r == 0
    out[zero] = 2 ** (nu - 1) * special.gamma(nu)
    rp = r[~zero]
    out[~zero] = rp**nu * special.kv(nu, rp)
    return out
