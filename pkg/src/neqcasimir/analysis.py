"""Post-processing of force-versus-separation sweeps.

Sign-change detection and bisection refinement locate mechanical
equilibria; log-log slope fits and detrended-oscillation statistics
quantify the power laws and the standing-wave structure of self
forces.  Everything here works on plain arrays so it applies equally
to engine output, CSV rows, and closed-form curves.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ZeroCrossing:
    """A bracketed root of the force on cylinder 1.

    stability follows the sign convention that positive force pushes
    cylinder 1 away from cylinder 2: a +/- change with growing
    separation restores displacements toward the root (stable), a -/+
    change drives them away (unstable).
    """

    lower: float
    upper: float
    stability: str

    @property
    def midpoint(self):
        return 0.5 * (self.lower + self.upper)


def find_zero_crossings(separations, forces):
    """Brackets where the force changes sign, in grid order.

    Grid points where the force is exactly zero are folded into the
    neighboring bracket.  Returns a list of ZeroCrossing.
    """
    d = np.asarray(separations, dtype=float)
    f = np.asarray(forces, dtype=float)
    if d.ndim != 1 or d.shape != f.shape or d.size < 2:
        raise ValueError("need matching 1-D arrays with at least 2 points")
    if np.any(np.diff(d) <= 0):
        raise ValueError("separations must be strictly increasing")
    out = []
    signs = np.sign(f)
    last_nonzero = 0
    for i in range(1, d.size):
        if signs[i] == 0:
            continue
        j = last_nonzero
        if signs[j] != 0 and signs[i] != signs[j]:
            stability = "stable" if signs[j] > 0 else "unstable"
            out.append(ZeroCrossing(lower=float(d[j]), upper=float(d[i]),
                                    stability=stability))
        last_nonzero = i
    return out


def refine_zero(func, lower, upper, *, rel_tol=1e-3, max_iter=200):
    """Bisect a sign change of func to relative width rel_tol.

    func maps separation to force; the initial bracket must straddle a
    sign change.  Returns the refined ZeroCrossing.
    """
    lo, hi = float(lower), float(upper)
    if not lo < hi:
        raise ValueError("need lower < upper")
    f_lo = func(lo)
    f_hi = func(hi)
    if f_lo == 0.0:
        stability = "stable" if f_hi < 0 else "unstable"
        return ZeroCrossing(lo, lo, stability)
    if f_hi == 0.0:
        stability = "stable" if f_lo > 0 else "unstable"
        return ZeroCrossing(hi, hi, stability)
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise ValueError("no sign change on [%g, %g]" % (lo, hi))
    stability = "stable" if f_lo > 0 else "unstable"
    for _ in range(max_iter):
        if hi - lo <= rel_tol * 0.5 * (hi + lo):
            break
        mid = 0.5 * (lo + hi)
        f_mid = func(mid)
        if f_mid == 0.0:
            return ZeroCrossing(mid, mid, stability)
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return ZeroCrossing(lo, hi, stability)


def log_slope(separations, forces):
    """Least-squares slope of log|F| against log d.

    The forces must not change sign or vanish on the window; a clean
    power law F ~ d^p returns p exactly.
    """
    d = np.asarray(separations, dtype=float)
    f = np.asarray(forces, dtype=float)
    if d.size != f.size or d.size < 2:
        raise ValueError("need matching arrays with at least 2 points")
    if np.any(f == 0) or (np.any(f > 0) and np.any(f < 0)):
        raise ValueError("forces change sign on the fit window; "
                         "restrict to one power-law branch")
    slope, _ = np.polyfit(np.log(d), np.log(np.abs(f)), 1)
    return float(slope)


def detrend(separations, values, *, degree=1):
    """Residual after removing a low-order polynomial trend in d."""
    d = np.asarray(separations, dtype=float)
    y = np.asarray(values, dtype=float)
    coeffs = np.polyfit(d, y, degree)
    return y - np.polyval(coeffs, d)


def oscillation_period(separations, forces, *, envelope_power=1.5,
                       detrend_degree=1):
    """Mean period of a decaying force oscillation.

    Multiplies the force by d^envelope_power to flatten the envelope,
    removes a residual polynomial trend, and reads the period off the
    zero crossings of what remains (two crossings per cycle).  The
    grid must resolve the oscillation with several points per cycle.
    """
    d = np.asarray(separations, dtype=float)
    f = np.asarray(forces, dtype=float)
    resid = detrend(d, f * d ** envelope_power, degree=detrend_degree)
    roots = []
    for i in range(1, d.size):
        a, b = resid[i - 1], resid[i]
        if a == 0.0:
            roots.append(d[i - 1])
        elif a * b < 0:
            roots.append(d[i - 1] + (d[i] - d[i - 1]) * a / (a - b))
    if len(roots) < 3:
        raise ValueError("fewer than 3 oscillation crossings on the "
                         "window; widen it or refine the grid")
    spacings = np.diff(roots)
    return 2.0 * float(np.mean(spacings))


def envelope_slope(separations, forces):
    """Log-log slope of the oscillation envelope via |F| local maxima.

    Picks strict interior maxima of |F| and fits log|F| against log d
    through them; needs at least two peaks.  Returns (slope, peak
    separations).
    """
    d = np.asarray(separations, dtype=float)
    f = np.abs(np.asarray(forces, dtype=float))
    peaks = [i for i in range(1, d.size - 1)
             if f[i] > f[i - 1] and f[i] > f[i + 1]]
    if len(peaks) < 2:
        raise ValueError("fewer than 2 envelope peaks on the window")
    return log_slope(d[peaks], f[peaks]), d[peaks]
