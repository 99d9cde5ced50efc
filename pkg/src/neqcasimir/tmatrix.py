"""Scattering blocks of an infinite dielectric cylinder.

For each integer azimuthal order n and axial wavenumber fraction
ktilde_z = k_z c / omega, the cylinder couples the two transverse
polarizations (M, magnetic / TE and N, electric / TM).  The 2x2 block
T[P, P'] gives the amplitude of outgoing polarization P scattered from
a unit-amplitude regular wave of polarization P'.

Two evaluation routes:

thin_t
    Closed-form leading order in the size parameter x = omega R / c,
    valid for x << 1 and orders |n| <= 1.  Entries scale as x^2.
full_t
    Exact solution of the 4x4 boundary-matching system (tangential E
    and H continuity at the surface), any order, any size parameter.

Providers (ThinExpansion, FullSolve) bind a material and radius and
produce batched blocks over nodes in (order, ktilde_z) for the force
integrator.  Index convention everywhere: P = 0 is M, P = 1 is N.

The axial fraction enters only through ktilde_z^2 and ktilde_z * n, so
blocks obey T[diag](-n) = T[diag](n) and T[offdiag](-n) = -T[offdiag](n),
and the same parity in ktilde_z.  Off-diagonal entries are equal
(T^MN = T^NM) by reciprocity.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .errors import TMatrixError
from .materials import epsilon as _epsilon
from .units import C_LIGHT

POL_M = 0
POL_N = 1

THIN_VALIDITY_X = 0.3

_THIN_WARNING = ("thin expansion evaluated beyond its validity range "
                 "(size parameter x > 0.3); consider the full solver")


@dataclass(frozen=True)
class TMatrixBlock:
    """One scattering block with its evaluation point.

    entries is a (2, 2) complex array indexed [P, P'] with M = 0, N = 1.
    """

    entries: np.ndarray
    order: int
    ktilde_z: float
    size_parameter: float

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=complex)
        if e.shape != (2, 2):
            raise TMatrixError("block entries must be 2x2")
        object.__setattr__(self, "entries", e)


def thin_t(n, ktilde_z, eps, mu, x):
    """Leading-order block for a thin cylinder.

    Parameters
    ----------
    n : int
        Azimuthal order; only |n| <= 1 exists at this order in x.
    ktilde_z : float
        Axial wavenumber over total wavenumber (any real value;
        |ktilde_z| > 1 is the evanescent region).
    eps, mu : complex
        Relative permittivity and permeability.
    x : float
        Size parameter omega R / c, must be positive.

    Returns
    -------
    TMatrixBlock
    """
    if n not in (-1, 0, 1):
        raise TMatrixError(
            "thin expansion defines orders -1, 0, 1 only; got %r" % (n,))
    if x <= 0:
        raise TMatrixError("size parameter must be positive")
    eps = complex(eps)
    mu = complex(mu)
    kz2 = float(ktilde_z) ** 2
    pref = 0.25j * math.pi * x * x
    ent = np.zeros((2, 2), dtype=complex)
    if n == 0:
        ent[POL_N, POL_N] = -pref * (eps - 1.0) * (kz2 - 1.0)
        ent[POL_M, POL_M] = -pref * (mu - 1.0) * (kz2 - 1.0)
    else:
        den = (eps + 1.0) * (mu + 1.0)
        if den == 0:
            raise TMatrixError(
                "thin expansion singular at eps = -1 or mu = -1")
        ent[POL_N, POL_N] = pref * (
            kz2 * (mu + 1.0) * (eps - 1.0) + (mu - 1.0) * (eps + 1.0)) / den
        ent[POL_M, POL_M] = pref * (
            kz2 * (mu - 1.0) * (eps + 1.0) + (mu + 1.0) * (eps - 1.0)) / den
        cross = 0.5j * math.pi * x * x * (eps * mu - 1.0) \
            * float(ktilde_z) / den * n
        ent[POL_M, POL_N] = cross
        ent[POL_N, POL_M] = cross
    return TMatrixBlock(entries=ent, order=n, ktilde_z=float(ktilde_z),
                        size_parameter=float(x))


# --- full boundary-matching solve -------------------------------------------

def _det2(a, b, c, d):
    return a * d - b * c


def _det4(m):
    """Determinant of stacked 4x4 matrices, shape (..., 4, 4).

    Laplace expansion over the first two rows: six 2x2 minors times
    their complementary minors in the last two rows.
    """
    r0 = m[..., 0, :]
    r1 = m[..., 1, :]
    r2 = m[..., 2, :]
    r3 = m[..., 3, :]

    def top(i, j):
        return _det2(r0[..., i], r0[..., j], r1[..., i], r1[..., j])

    def bot(i, j):
        return _det2(r2[..., i], r2[..., j], r3[..., i], r3[..., j])

    return (top(0, 1) * bot(2, 3)
            - top(0, 2) * bot(1, 3)
            + top(0, 3) * bot(1, 2)
            + top(1, 2) * bot(0, 3)
            - top(1, 3) * bot(0, 2)
            + top(2, 3) * bot(0, 1))


def _cyl_tables(orders_lo, orders_hi, z):
    """Tables of H1_n(z) and J_n(z) for signed integer orders in
    [orders_lo, orders_hi], complex argument allowed.

    Returns dict order -> (array over z).  Negative orders via the
    exact integer reflection (-1)^n.
    """
    n_abs_max = max(abs(orders_lo), abs(orders_hi))
    h_pos = [_sp.hankel1(n, z) for n in range(n_abs_max + 1)]
    j_pos = [_sp.jv(n, z) for n in range(n_abs_max + 1)]
    h = {}
    j = {}
    for n in range(orders_lo, orders_hi + 1):
        sign = -1.0 if (n < 0 and n % 2 != 0) else 1.0
        h[n] = sign * h_pos[abs(n)]
        j[n] = sign * j_pos[abs(n)]
    return h, j


def _full_blocks_batch(orders, ktz, eps, mu, x):
    """Solve the boundary system for every (ktz node, order).

    Parameters
    ----------
    orders : int array (No,)
    ktz : float array (Nk,)
    eps, mu : complex scalars
    x : float, size parameter.

    Returns
    -------
    entries : complex array (Nk, No, 2, 2)
    """
    orders = np.asarray(orders, dtype=int)
    ktz = np.asarray(ktz, dtype=float)
    if np.any(np.abs(np.abs(ktz) - 1.0) == 0.0):
        raise TMatrixError("ktilde_z on the light line is not evaluable")
    if x <= 0:
        raise TMatrixError("size parameter must be positive")
    eps = complex(eps)
    mu = complex(mu)

    # transverse arguments outside and inside; principal sqrt puts the
    # evanescent exterior argument on the positive imaginary axis and
    # the absorbing interior argument in the upper half plane
    p = x * np.sqrt((1.0 + 0.0j) - ktz ** 2)
    p1 = x * np.sqrt(eps * mu - ktz ** 2 + 0.0j)
    p1 = np.where(p1.imag < 0.0, -p1, p1)

    lo = int(orders.min()) - 1
    hi = int(orders.max()) + 1
    h_tab, j_tab = _cyl_tables(lo, hi, p)
    _, j1_tab = _cyl_tables(lo, hi, p1)

    root_em = cmath.sqrt(eps * mu)
    if root_em.imag < 0:
        root_em = -root_em
    if root_em == 0:
        raise TMatrixError("eps * mu = 0 is not a propagating medium")
    root_e_over_m = cmath.sqrt(eps / mu)

    Nk = ktz.shape[0]
    No = orders.shape[0]
    A = np.zeros((Nk, No, 4, 4), dtype=complex)
    B = np.zeros((Nk, No, 4, 2), dtype=complex)

    for io, n in enumerate(orders):
        n = int(n)
        Hn = h_tab[n]
        Hp = 0.5 * (h_tab[n - 1] - h_tab[n + 1])
        Jn = j_tab[n]
        Jp = 0.5 * (j_tab[n - 1] - j_tab[n + 1])
        J1n = j1_tab[n]
        J1p = 0.5 * (j1_tab[n - 1] - j1_tab[n + 1])

        px = p / x
        p1x = p1 / x
        knp = ktz * n / p
        kn1 = ktz * n / p1

        # tangential E_z
        A[:, io, 0, 1] = px * Hn
        A[:, io, 0, 3] = -(p1x / root_em) * J1n
        B[:, io, 0, POL_N] = -px * Jn
        # tangential E_phi
        A[:, io, 1, 0] = -Hp
        A[:, io, 1, 1] = -knp * Hn
        A[:, io, 1, 2] = J1p
        A[:, io, 1, 3] = (kn1 / root_em) * J1n
        B[:, io, 1, POL_M] = Jp
        B[:, io, 1, POL_N] = knp * Jn
        # tangential H_z
        A[:, io, 2, 0] = px * Hn
        A[:, io, 2, 2] = -(p1x / mu) * J1n
        B[:, io, 2, POL_M] = -px * Jn
        # tangential H_phi
        A[:, io, 3, 0] = -knp * Hn
        A[:, io, 3, 1] = -Hp
        A[:, io, 3, 2] = (kn1 / mu) * J1n
        A[:, io, 3, 3] = root_e_over_m * J1p
        B[:, io, 3, POL_M] = knp * Jn
        B[:, io, 3, POL_N] = Jp

    det = _det4(A)
    if np.any(det == 0) or not np.all(np.isfinite(det)):
        raise TMatrixError(
            "singular boundary system (accidental resonance) at "
            "x = %g" % (x,))

    out = np.empty((Nk, No, 2, 2), dtype=complex)
    for col, pol_out in ((0, POL_M), (1, POL_N)):
        for pol_in in (POL_M, POL_N):
            mod = A.copy()
            mod[..., :, col] = B[..., :, pol_in]
            out[:, :, pol_out, pol_in] = _det4(mod) / det
    if not np.all(np.isfinite(out)):
        raise TMatrixError("non-finite scattering entries at x = %g" % (x,))
    return out


def full_t(n, ktilde_z, eps, mu, x):
    """Exact scattering block from the boundary-matching system.

    Same signature as thin_t but valid at any order and size parameter.
    Raises TMatrixError on the light line (|ktilde_z| = 1) or when the
    boundary system is numerically singular.
    """
    if int(n) != n:
        raise TMatrixError("order must be an integer, got %r" % (n,))
    entries = _full_blocks_batch(
        np.array([int(n)]), np.array([float(ktilde_z)]), eps, mu, x)[0, 0]
    # cheap conditioning proxy: reciprocity violation of the solution
    scale = float(np.max(np.abs(entries)))
    if scale > 0:
        asym = abs(entries[POL_M, POL_N] - entries[POL_N, POL_M]) / scale
        if asym > 1e-6:
            warnings.warn(
                "boundary system poorly conditioned (reciprocity residual "
                "%.2e) at n=%d, ktilde_z=%g, x=%g"
                % (asym, int(n), float(ktilde_z), float(x)))
    return TMatrixBlock(entries=entries, order=int(n),
                        ktilde_z=float(ktilde_z), size_parameter=float(x))


# --- providers ---------------------------------------------------------------

class ThinExpansion:
    """Thin-cylinder block provider for a material and radius.

    Orders beyond |n| = 1 do not exist at leading order in x and are
    returned as zero blocks so truncated sums can request them freely.
    """

    max_order = 1

    def __init__(self, material, radius):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.material = material
        self.radius = float(radius)

    def size_parameter(self, omega):
        return omega * self.radius / C_LIGHT

    def block(self, n, ktilde_z, omega):
        x = self.size_parameter(omega)
        if x > THIN_VALIDITY_X:
            warnings.warn(_THIN_WARNING)
        if abs(int(n)) > 1:
            return TMatrixBlock(entries=np.zeros((2, 2), dtype=complex),
                                order=int(n), ktilde_z=float(ktilde_z),
                                size_parameter=float(x))
        eps = _epsilon(self.material, omega)
        return thin_t(n, ktilde_z, eps, 1.0, x)

    def blocks(self, orders, ktz, omega):
        """Batched blocks, shape (len(ktz), len(orders), 2, 2)."""
        orders = np.asarray(orders, dtype=int)
        ktz = np.asarray(ktz, dtype=float)
        x = self.size_parameter(omega)
        if x > THIN_VALIDITY_X:
            warnings.warn(_THIN_WARNING)
        eps = complex(_epsilon(self.material, omega))
        out = np.zeros((ktz.shape[0], orders.shape[0], 2, 2), dtype=complex)
        pref = 0.25j * math.pi * x * x
        kz2 = ktz ** 2
        den = (eps + 1.0) * 2.0
        for io, n in enumerate(orders):
            n = int(n)
            if n == 0:
                out[:, io, POL_N, POL_N] = -pref * (eps - 1.0) * (kz2 - 1.0)
            elif abs(n) == 1:
                out[:, io, POL_N, POL_N] = pref * (
                    kz2 * 2.0 * (eps - 1.0)) / den
                out[:, io, POL_M, POL_M] = pref * (
                    2.0 * (eps - 1.0)) / den
                cross = 2.0 * pref * (eps - 1.0) * ktz / den * n
                out[:, io, POL_M, POL_N] = cross
                out[:, io, POL_N, POL_M] = cross
        return out


class FullSolve:
    """Exact block provider for a material and radius."""

    max_order = None

    def __init__(self, material, radius):
        if radius <= 0:
            raise ValueError("radius must be positive")
        self.material = material
        self.radius = float(radius)

    def size_parameter(self, omega):
        return omega * self.radius / C_LIGHT

    def block(self, n, ktilde_z, omega):
        eps = _epsilon(self.material, omega)
        return full_t(n, ktilde_z, eps, 1.0, self.size_parameter(omega))

    def blocks(self, orders, ktz, omega):
        """Batched blocks, shape (len(ktz), len(orders), 2, 2)."""
        eps = _epsilon(self.material, omega)
        return _full_blocks_batch(
            np.asarray(orders, dtype=int), np.asarray(ktz, dtype=float),
            eps, 1.0, self.size_parameter(omega))
