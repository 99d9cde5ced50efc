"""Cylindrical special functions at integer orders.

Thin wrappers over scipy.special that pin down the conventions the rest
of the package relies on:

* integer orders only, |order| <= MAX_ORDER,
* positive real arguments (zero allowed where the function is finite),
* negative orders resolved through the exact reflection identities
  J_{-n} = (-1)^n J_n, Y_{-n} = (-1)^n Y_n, I_{-n} = I_n, K_{-n} = K_n,
* derivatives formed only from the two-term recurrences, never from
  finite differences.

Scaled modified functions (e^[-x] I_n and e^[x] K_n) are exposed so
products like I_n K_m stay representable at large arguments where the
plain values overflow and underflow.

All functions accept scalars or numpy arrays for the argument and
return matching shapes.  Orders are scalar integers.
"""

import numbers

import numpy as np
from scipy import special as _sp

MAX_ORDER = 64


def _check_order(order):
    if isinstance(order, bool) or not isinstance(order, numbers.Integral):
        raise ValueError("order must be an integer, got %r" % (order,))
    if abs(int(order)) > MAX_ORDER:
        raise ValueError(
            "order %d exceeds MAX_ORDER=%d" % (int(order), MAX_ORDER))
    return int(order)


def _check_arg(x, allow_zero):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("argument must be finite")
    if allow_zero:
        if np.any(arr < 0):
            raise ValueError("argument must be nonnegative")
    else:
        if np.any(arr <= 0):
            raise ValueError("argument must be positive")
    return arr if arr.shape else arr[()]


def _match(x, values):
    # scipy ufuncs return 0-d arrays for scalar input; hand back floats
    if np.isscalar(x) or np.ndim(x) == 0:
        return values[()] if isinstance(values, np.ndarray) else values
    return values


def bessel_j(order, x):
    """Bessel function of the first kind J_order(x).

    Parameters
    ----------
    order : int
        Integer order, |order| <= MAX_ORDER.
    x : float or ndarray
        Nonnegative argument.

    Returns
    -------
    float or ndarray
    """
    n = _check_order(order)
    arr = _check_arg(x, allow_zero=True)
    val = _sp.jv(abs(n), arr)
    if n < 0 and n % 2 != 0:
        val = -val
    return _match(x, val)


def bessel_y(order, x):
    """Bessel function of the second kind Y_order(x), x > 0."""
    n = _check_order(order)
    arr = _check_arg(x, allow_zero=False)
    val = _sp.yv(abs(n), arr)
    if n < 0 and n % 2 != 0:
        val = -val
    return _match(x, val)


def hankel1(order, x):
    """Outgoing Hankel function J_order(x) + i Y_order(x), x > 0."""
    return bessel_j(order, x) + 1j * bessel_y(order, x)


def bessel_i(order, x):
    """Modified Bessel function of the first kind I_order(x), x >= 0."""
    n = _check_order(order)
    arr = _check_arg(x, allow_zero=True)
    return _match(x, _sp.iv(abs(n), arr))


def bessel_k(order, x):
    """Modified Bessel function of the second kind K_order(x), x > 0."""
    n = _check_order(order)
    arr = _check_arg(x, allow_zero=False)
    return _match(x, _sp.kv(abs(n), arr))


def bessel_i_scaled(order, x):
    """exp(-x) I_order(x); safe against overflow for large x."""
    n = _check_order(order)
    arr = _check_arg(x, allow_zero=True)
    return _match(x, _sp.ive(abs(n), arr))


def bessel_k_scaled(order, x):
    """exp(+x) K_order(x); safe against underflow for large x."""
    n = _check_order(order)
    arr = _check_arg(x, allow_zero=False)
    return _match(x, _sp.kve(abs(n), arr))


def bessel_j_prime(order, x):
    """dJ_order/dx via J' = (J_[n-1] - J_[n+1]) / 2."""
    n = _check_order(order)
    if abs(n) + 1 > MAX_ORDER:
        raise ValueError("derivative at order %d needs order %d > MAX_ORDER"
                         % (n, abs(n) + 1))
    return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x))


def bessel_y_prime(order, x):
    """dY_order/dx via Y' = (Y_[n-1] - Y_[n+1]) / 2."""
    n = _check_order(order)
    if abs(n) + 1 > MAX_ORDER:
        raise ValueError("derivative at order %d needs order %d > MAX_ORDER"
                         % (n, abs(n) + 1))
    return 0.5 * (bessel_y(n - 1, x) - bessel_y(n + 1, x))


def hankel1_prime(order, x):
    """dH1_order/dx via H' = (H_[n-1] - H_[n+1]) / 2."""
    return bessel_j_prime(order, x) + 1j * bessel_y_prime(order, x)


def bessel_i_prime(order, x):
    """dI_order/dx via I' = (I_[n-1] + I_[n+1]) / 2."""
    n = _check_order(order)
    if abs(n) + 1 > MAX_ORDER:
        raise ValueError("derivative at order %d needs order %d > MAX_ORDER"
                         % (n, abs(n) + 1))
    return 0.5 * (bessel_i(n - 1, x) + bessel_i(n + 1, x))


def bessel_k_prime(order, x):
    """dK_order/dx via K' = -(K_[n-1] + K_[n+1]) / 2."""
    n = _check_order(order)
    if abs(n) + 1 > MAX_ORDER:
        raise ValueError("derivative at order %d needs order %d > MAX_ORDER"
                         % (n, abs(n) + 1))
    return -0.5 * (bessel_k(n - 1, x) + bessel_k(n + 1, x))
