"""Mode-resolved integrand pieces for the cylinder force integrals.

For a pair of parallel cylinders the force per length is an integral
over frequency and axial wavenumber of sums over azimuthal orders
(n for the source cylinder, m for the target).  This module supplies

* the thermal source strength (occupation),
* the source amplitude factor built from scattering blocks,
* scalar per-(n, m) kernels in the literal form of the underlying
  theory (reference implementations used by tests), and
* folded, vectorized order sums used by the engine.

The folded sums reindex the (m, m+1) pairs of the literal kernels so
that each target order appears exactly once; the result equals the
literal double sum extended over every term in which a retained block
appears, and it is manifestly even under k_z -> -k_z together with
(n, m) -> (-n, -m).

Propagating kernels use products of outgoing cylindrical waves
H1_nu(q d); the evanescent kernel is their continuation to imaginary
transverse wavenumber, which turns them into real decaying products
K_nu(|q| d) K_[nu +- 1](|q| d) * (4 / pi^2).

All "blocks" arrays are stacked scattering blocks of shape
(Nk, No, 2, 2): axial nodes x contiguous azimuthal orders x (P, P').
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as _sp

from .units import C_LIGHT, HBAR, K_BOLTZMANN

_FOUR_OVER_PI2 = 4.0 / math.pi ** 2

PROPAGATING = "propagating"
EVANESCENT = "evanescent"


@dataclass(frozen=True)
class ModePoint:
    """One (omega, k_z, n, m) integration point.

    The transverse wavenumber q = sqrt((omega/c)^2 - k_z^2) is real on
    the propagating branch and i|q| on the evanescent branch; the
    branch tag and q are derived, not stored.
    """

    omega: float
    k_z: float
    n: int
    m: int

    def __post_init__(self):
        if not (self.omega > 0 and math.isfinite(self.omega)):
            raise ValueError("omega must be positive and finite")
        if int(self.n) != self.n or int(self.m) != self.m:
            raise ValueError("orders n, m must be integers")

    @property
    def ktilde_z(self):
        return self.k_z * C_LIGHT / self.omega

    @property
    def branch(self):
        return EVANESCENT if abs(self.ktilde_z) > 1.0 else PROPAGATING

    @property
    def q(self):
        k = self.omega / C_LIGHT
        q2 = k * k - self.k_z * self.k_z
        if q2 >= 0:
            return complex(math.sqrt(q2), 0.0)
        return complex(0.0, math.sqrt(-q2))


def bose(u):
    """Thermal occupation 1 / (e^u - 1) for u = hbar omega / k_B T."""
    u = np.asarray(u, dtype=float)
    with np.errstate(over="ignore"):
        out = 1.0 / np.expm1(u)
    return out[()] if out.ndim == 0 else out


def occupation(temperature, omega):
    """Source strength a(T, omega) of thermal current fluctuations.

    a = omega^2 hbar (4 pi)^2 / c^2 * 1 / (e^[hbar omega / k_B T] - 1).
    Zero temperature means no thermal sources: returns 0.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise ValueError("omega must be positive")
    pref = w * w * HBAR * (4.0 * math.pi) ** 2 / C_LIGHT ** 2
    if temperature == 0:
        out = np.zeros_like(pref)
    else:
        out = pref * bose(HBAR * w / (K_BOLTZMANN * temperature))
    return out[()] if out.ndim == 0 else out


def _block_entries(block):
    """Accept a raw (2, 2) array or anything carrying .entries."""
    return np.asarray(getattr(block, "entries", block), dtype=complex)


def amplitude_entries(entries, order, branch, include_quadratic=True):
    """Source amplitude factor of one scattering block.

    Propagating branch: Re(T) plus, when include_quadratic, the product
    sum_[P''] T[P, P''] conj(T[P', P'']).  Evanescent branch:
    (-1)^order Re(T); no quadratic term survives there.

    entries : (2, 2) complex block; returns a (2, 2) complex array.
    """
    t = _block_entries(entries)
    if branch == PROPAGATING:
        out = t.real.astype(complex)
        if include_quadratic:
            out = out + t @ t.conj().T
        return out
    if branch == EVANESCENT:
        sign = -1.0 if (order % 2) else 1.0
        return sign * t.real.astype(complex)
    raise ValueError("branch must be 'propagating' or 'evanescent'")


def a_factor(provider, n, k_z, omega, include_quadratic=True):
    """Amplitude factor A of order n at one (omega, k_z) point.

    Evaluates the provider's scattering block and combines it per the
    branch that (omega, k_z) falls on: Re(T) plus the optional
    quadratic product on the propagating side, (-1)^n Re(T) on the
    evanescent side.
    """
    point = ModePoint(omega=omega, k_z=k_z, n=n, m=0)
    block = provider.block(n, point.ktilde_z, omega)
    return amplitude_entries(block, n, point.branch, include_quadratic)


def prop_amplitude(blocks, include_quadratic=True):
    """Vectorized propagating-branch amplitude factor.

    blocks : (..., 2, 2) complex stacked scattering blocks.
    Returns the same shape: Re(T) [+ T T^dagger].
    """
    t = np.asarray(blocks, dtype=complex)
    out = t.real.astype(complex)
    if include_quadratic:
        out = out + np.matmul(t, np.conj(np.swapaxes(t, -1, -2)))
    return out


# --- scalar reference kernels ------------------------------------------------

def _qd_propagating(n, m, k_z, omega, d):
    point = ModePoint(omega=omega, k_z=k_z, n=n, m=m)
    if point.branch != PROPAGATING:
        raise ValueError("kernel defined on the propagating branch: "
                         "|k_z| must be below omega / c")
    if not d > 0:
        raise ValueError("separation must be positive")
    return point.q.real * d


def f_kernel(n, m, k_z, omega, t1_m, t1_mp1, a2, d,
             include_quadratic=True):
    """Literal propagating interaction kernel for one (n, m) pair.

    a2 is the source amplitude factor at order n, t1_m and t1_mp1 the
    target blocks at orders m and m + 1.  Returns the real kernel
    value summed over polarizations, as consumed by the propagating
    side of the interaction-force integrand.
    """
    qd = _qd_propagating(n, m, k_z, omega, d)
    a2 = _block_entries(a2)
    t1_m = _block_entries(t1_m)
    t1_mp1 = _block_entries(t1_mp1)
    nu = n - m
    hp = _sp.hankel1(nu, qd) * np.conj(_sp.hankel1(nu - 1, qd))
    total = 0.0
    for pp in range(2):
        for qq in range(2):
            lin = t1_m[pp, qq] + np.conj(t1_mp1[qq, pp])
            quad = 0.0 + 0.0j
            if include_quadratic:
                for rr in range(2):
                    quad += t1_m[pp, rr] * np.conj(t1_mp1[rr, qq])
            total += a2[pp, qq].real * (hp * (lin + 2.0 * quad)).imag
            total += 2.0 * a2[pp, qq].imag * (hp * quad).real
    return float(total)


def f_tilde_kernel(n, m, k_z, omega, t1_m, t1_mp1, t2, d):
    """Literal evanescent interaction kernel for one (n, m) pair.

    Outgoing-wave products at imaginary transverse wavenumber reduce
    to real K-function products; all residual i-powers are folded into
    the alternating (-1)^(n+m) prefactor of the force expression,
    which is NOT included here - the caller applies it.
    """
    point = ModePoint(omega=omega, k_z=k_z, n=n, m=m)
    if point.branch != EVANESCENT:
        raise ValueError("kernel defined on the evanescent branch: "
                         "|k_z| must exceed omega / c")
    if not d > 0:
        raise ValueError("separation must be positive")
    y = point.q.imag * d
    t2 = _block_entries(t2)
    t1_m = _block_entries(t1_m)
    t1_mp1 = _block_entries(t1_mp1)
    nu = n - m
    kprod = _FOUR_OVER_PI2 * _sp.kv(nu, y) * _sp.kv(nu - 1, y)
    total = 0.0
    for pp in range(2):
        for qq in range(2):
            total += t2[pp, qq].real * kprod \
                * (t1_m[pp, qq].imag - t1_mp1[pp, qq].imag)
    return float(total)


def s_kernel(n, m, k_z, omega, a1, t2_m, t2_mp1, d):
    """Literal pair-source kernel for one (n, m) pair.

    Mixes outgoing and regular waves; defined on the propagating
    branch only, since only propagating modes carry momentum to
    infinity and the evanescent contribution vanishes identically.
    """
    qd = _qd_propagating(n, m, k_z, omega, d)
    a1 = _block_entries(a1)
    t2_m = _block_entries(t2_m)
    t2_mp1 = _block_entries(t2_mp1)
    nu = n - m
    h_nu = _sp.hankel1(nu, qd)
    h_num1 = _sp.hankel1(nu - 1, qd)
    j_nu = _sp.jv(nu, qd)
    j_num1 = _sp.jv(nu - 1, qd)
    total = 0.0
    for pp in range(2):
        for qq in range(2):
            val = h_nu * j_num1 * t2_m[pp, qq] \
                + j_nu * np.conj(h_num1) * np.conj(t2_mp1[pp, qq])
            total += 2.0 * a1[pp, qq].real * val.imag
    return float(total)


# --- vectorized tables and folded sums ---------------------------------------

@lru_cache(maxsize=64)
def _gather_indices(n_orders, nu_offset):
    """Index matrix idx[i, j] = (n_i - m_j) + nu_offset for contiguous
    symmetric orders; plus the alternating sign matrix (-1)^(n+m)."""
    half = (n_orders - 1) // 2
    orders = np.arange(-half, half + 1)
    nu = orders[:, None] - orders[None, :]
    sign = np.where((orders[:, None] + orders[None, :]) % 2 == 0, 1.0, -1.0)
    return nu + nu_offset, sign


def hankel_tables(qd, nu_max):
    """Products of outgoing waves for the propagating kernels.

    Returns (hp, h, jp):
    hp[:, j] = H1_nu(qd) conj(H1_[nu-1](qd)) for nu = j - nu_max,
               j = 0 .. 2 nu_max + 1 (one extra column at nu_max + 1),
    h[:, j]  = H1_nu(qd) for nu = j - nu_max, j = 0 .. 2 nu_max,
    jp[:, j] = J'_nu(qd) (recurrence) same layout as h.
    """
    qd = np.asarray(qd, dtype=float)
    hi = nu_max + 2  # need orders up to nu_max + 1 and one more for J'
    j_tab = np.empty((qd.shape[0], 2 * hi + 1), dtype=float)
    y_tab = np.empty_like(j_tab)
    for order in range(hi + 1):
        jv = _sp.jv(order, qd)
        yv = _sp.yv(order, qd)
        j_tab[:, hi + order] = jv
        y_tab[:, hi + order] = yv
        if order:
            sgn = -1.0 if order % 2 else 1.0
            j_tab[:, hi - order] = sgn * jv
            y_tab[:, hi - order] = sgn * yv
    h_all = j_tab + 1j * y_tab  # columns: order = col - hi

    def col(nu):
        return nu + hi

    nus = np.arange(-nu_max, nu_max + 2)
    hp = h_all[:, col(nus)] * np.conj(h_all[:, col(nus - 1)])
    nus_h = np.arange(-nu_max, nu_max + 1)
    h = h_all[:, col(nus_h)]
    jp = 0.5 * (j_tab[:, col(nus_h - 1)] - j_tab[:, col(nus_h + 1)])
    return hp, h, jp


def k_product_table(y, nu_max):
    """Evanescent wave products (4 / pi^2) K_nu (K_[nu-1] + K_[nu+1])
    at y = |q| d, for nu = column - nu_max.  Scaled Bessel functions
    keep the product representable; underflow to zero is harmless.
    """
    y = np.asarray(y, dtype=float)
    hi = nu_max + 1
    kve = np.empty((y.shape[0], hi + 1), dtype=float)
    for order in range(hi + 1):
        kve[:, order] = _sp.kve(order, y)
    damp = np.exp(-2.0 * y)

    def k(nu):
        return kve[:, np.abs(nu)]

    out = np.empty((y.shape[0], 2 * nu_max + 1), dtype=float)
    for j, nu in enumerate(range(-nu_max, nu_max + 1)):
        out[:, j] = k(nu) * (k(nu - 1) + k(nu + 1))
    return _FOUR_OVER_PI2 * out * damp[:, None]


def prop_kernel_sum(a2, t1, hp, nu_max, include_quadratic=True):
    """Folded propagating interaction sum over orders and polarizations.

    a2, t1 : (Nk, No, 2, 2) stacked source factors and target blocks on
        the same contiguous symmetric order set.
    hp : (Nk, 2 nu_max + 2) products from hankel_tables.
    Returns (Nk,) real.
    """
    no = a2.shape[1]
    idx, _ = _gather_indices(no, nu_max)
    hp_n = hp[:, idx]          # (Nk, No, No): HP_nu
    hp_np1 = hp[:, idx + 1]    # HP_[nu + 1]
    re_a2 = a2.real
    im_hp_sum = hp_n.imag + hp_np1.imag
    re_hp_diff = hp_n.real - hp_np1.real
    out = np.einsum("knab,knm,kmab->k", re_a2, im_hp_sum, t1.real,
                    optimize=True)
    out += np.einsum("knab,knm,kmab->k", re_a2, re_hp_diff, t1.imag,
                     optimize=True)
    if include_quadratic and no > 1:
        q = np.matmul(t1[:, :-1], np.conj(t1[:, 1:]))
        hp_q = hp_n[:, :, :-1]
        im_a2 = a2.imag
        out += 2.0 * np.einsum("knab,knm,kmab->k", re_a2,
                               hp_q.imag, q.real, optimize=True)
        out += 2.0 * np.einsum("knab,knm,kmab->k", re_a2,
                               hp_q.real, q.imag, optimize=True)
        out += 2.0 * np.einsum("knab,knm,kmab->k", im_a2,
                               hp_q.real, q.real, optimize=True)
        out -= 2.0 * np.einsum("knab,knm,kmab->k", im_a2,
                               hp_q.imag, q.imag, optimize=True)
    return out


def evan_kernel_sum(t2, t1, kk, nu_max):
    """Folded evanescent interaction sum including the (-1)^(n+m)
    alternation.

    t2, t1 : (Nk, No, 2, 2) source and target blocks.
    kk : (Nk, 2 nu_max + 1) table from k_product_table.
    Returns (Nk,) real.
    """
    no = t2.shape[1]
    idx, sign = _gather_indices(no, nu_max)
    kern = kk[:, idx] * sign[None, :, :]
    return np.einsum("knab,knm,kmab->k", t2.real, kern, t1.imag,
                     optimize=True)


def pair_kernel_sum(a1, t2, h, jp, nu_max):
    """Folded pair-source sum over orders and polarizations.

    a1 : (Nk, No, 2, 2) amplitude factors of the emitting cylinder.
    t2 : (Nk, No, 2, 2) blocks of the other cylinder.
    h, jp : tables from hankel_tables (values and J' at the same nu
        layout).
    Returns (Nk,) real.
    """
    no = a1.shape[1]
    idx, _ = _gather_indices(no, nu_max)
    jre = jp[:, idx] * h.real[:, idx]
    jim = jp[:, idx] * h.imag[:, idx]
    out = np.einsum("knab,knm,kmab->k", a1.real, jre, t2.imag,
                    optimize=True)
    out += np.einsum("knab,knm,kmab->k", a1.real, jim, t2.real,
                     optimize=True)
    return 4.0 * out
