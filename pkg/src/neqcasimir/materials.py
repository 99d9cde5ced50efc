"""Dielectric models, material files, and cylinder specifications.

Every model maps an angular frequency omega > 0 (rad/s) to a complex
relative permittivity with Im(eps) >= 0 (passivity).  Magnetic response
is taken as mu = 1 throughout.

Models
------
Vacuum
    eps = 1.
Constant
    Fixed complex eps, Im >= 0.
Lorentz
    Single phonon resonance
    eps(w) = eps_inf * (w^2 - w_lo^2 + i w g) / (w^2 - w_to^2 + i w g),
    appropriate for polar crystals; static value eps_inf (w_lo/w_to)^2.
Conductivity-sum
    Metallic response built from measured conductivity components:
    eps(w) = 1 - lambda^2/(2 pi c eps0) * sum_q sigma_q / (lambda_rq + i lambda)
    with lambda = 2 pi c / w the vacuum wavelength.  In the long
    wavelength limit this reduces to the conductor form
    eps -> 1 + i (sum_q sigma_q) / (eps0 w).
Low-frequency expansion
    eps(w) = eps0 + i lambda_in w / c, the leading behavior of any
    absorber at small frequency; used by the low-temperature closed
    forms.

Material JSON files carry {"name", "model", "parameters", "units"}.
Parameters declared in eV or um are converted to SI on load.
"""

import cmath
import json
import math
import numbers
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MaterialError
from .units import (
    C_LIGHT,
    EPSILON_0,
    HBAR,
    K_BOLTZMANN,
    ev_to_radps,
    um_to_radps,
)

_DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True)
class Vacuum:
    """Unit permittivity."""

    def epsilon(self, omega):
        omega = np.asarray(omega, dtype=float)
        out = np.ones(omega.shape, dtype=complex)
        return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class Constant:
    """Frequency-independent permittivity."""

    value: complex

    def __post_init__(self):
        if self.value.imag < 0:
            raise MaterialError(
                "constant permittivity must have Im >= 0, got %r"
                % (self.value,))

    def epsilon(self, omega):
        omega = np.asarray(omega, dtype=float)
        out = np.full(omega.shape, complex(self.value))
        return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class Lorentz:
    """Single-resonance phonon model.  Frequencies in rad/s."""

    eps_inf: float
    omega_lo: float
    omega_to: float
    gamma: float

    def __post_init__(self):
        if self.eps_inf <= 0:
            raise MaterialError("eps_inf must be positive")
        if not (self.omega_lo > self.omega_to > 0):
            raise MaterialError(
                "need omega_lo > omega_to > 0 for a passive resonance")
        if self.gamma <= 0:
            raise MaterialError("gamma must be positive")

    def epsilon(self, omega):
        w = np.asarray(omega, dtype=float)
        num = w * w - self.omega_lo ** 2 + 1j * w * self.gamma
        den = w * w - self.omega_to ** 2 + 1j * w * self.gamma
        out = self.eps_inf * num / den
        return out[()] if out.ndim == 0 else out

    def static_value(self):
        """Zero-frequency limit eps_inf (omega_lo / omega_to)^2."""
        return self.eps_inf * (self.omega_lo / self.omega_to) ** 2


@dataclass(frozen=True)
class ConductivitySum:
    """Metallic permittivity from conductivity components.

    terms holds (sigma_q, lambda_rq) pairs: a partial DC conductivity in
    1/(ohm m) and its relaxation wavelength in meters.
    """

    terms: tuple

    def __post_init__(self):
        if not self.terms:
            raise MaterialError("conductivity model needs at least one term")
        for sigma, lam_r in self.terms:
            if sigma <= 0 or lam_r <= 0:
                raise MaterialError(
                    "conductivity terms must be positive, got (%r, %r)"
                    % (sigma, lam_r))

    def epsilon(self, omega):
        w = np.asarray(omega, dtype=float)
        lam = 2.0 * math.pi * C_LIGHT / w
        acc = np.zeros(w.shape, dtype=complex)
        for sigma, lam_r in self.terms:
            acc = acc + sigma / (lam_r + 1j * lam)
        out = 1.0 - lam * lam / (2.0 * math.pi * C_LIGHT * EPSILON_0) * acc
        return out[()] if out.ndim == 0 else out

    def dc_conductivity(self):
        return sum(sigma for sigma, _ in self.terms)


@dataclass(frozen=True)
class LowFreqExpansion:
    """Leading low-frequency absorber: eps = eps0 + i lambda_in w / c.

    eps0 is the static permittivity, lambda_in (meters) sets the
    absorption scale.
    """

    eps0: float
    lambda_in: float

    def __post_init__(self):
        if self.eps0 < 1.0:
            raise MaterialError("static permittivity must be >= 1")
        if self.lambda_in < 0:
            raise MaterialError("lambda_in must be nonnegative")

    def epsilon(self, omega):
        w = np.asarray(omega, dtype=float)
        out = self.eps0 + 1j * self.lambda_in * w / C_LIGHT
        return out[()] if out.ndim == 0 else out


def epsilon(model, omega):
    """Evaluate a dielectric model at angular frequency omega (rad/s).

    omega may be a scalar or array; entries must be positive and
    finite.
    """
    w = np.asarray(omega, dtype=float)
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise MaterialError("omega must be positive and finite")
    return model.epsilon(omega)


def thermal_wavelength(temperature):
    """hbar c / (k_B T) in meters; the scale separating near and far
    thermal regimes.  About 7.6 um at 300 K."""
    if temperature <= 0:
        raise ValueError("temperature must be positive, got %r"
                         % (temperature,))
    return HBAR * C_LIGHT / (K_BOLTZMANN * temperature)


def skin_depth(model, omega):
    """Field penetration depth c / (omega Im sqrt(eps)).

    Uses the principal square root (Im sqrt >= 0 for passive media).
    Returns math.inf for lossless media where the wave propagates
    without decay.
    """
    eps = epsilon(model, omega)
    root = cmath.sqrt(complex(eps))
    if root.imag <= 0.0:
        return math.inf
    return C_LIGHT / (root.imag * omega)


# --- material file handling -------------------------------------------------

def _convert_frequency(value, unit, field):
    if unit in (None, "rad/s"):
        return float(value)
    if unit == "eV":
        return ev_to_radps(float(value))
    if unit == "um":
        return um_to_radps(float(value))
    raise MaterialError("unsupported unit %r for %s" % (unit, field))


def _convert_length(value, unit, field):
    if unit in (None, "m"):
        return float(value)
    if unit == "um":
        return float(value) * 1e-6
    if unit == "nm":
        return float(value) * 1e-9
    raise MaterialError("unsupported unit %r for %s" % (unit, field))


def _build_model(model_name, params, units):
    if model_name == "vacuum":
        return Vacuum()
    if model_name == "constant":
        re = params.get("eps_re")
        im = params.get("eps_im", 0.0)
        if re is None:
            raise MaterialError("constant model needs parameters.eps_re")
        return Constant(complex(float(re), float(im)))
    if model_name == "lorentz":
        try:
            return Lorentz(
                eps_inf=float(params["eps_inf"]),
                omega_lo=_convert_frequency(
                    params["omega_lo"], units.get("omega_lo"), "omega_lo"),
                omega_to=_convert_frequency(
                    params["omega_to"], units.get("omega_to"), "omega_to"),
                gamma=_convert_frequency(
                    params["gamma"], units.get("gamma"), "gamma"),
            )
        except KeyError as exc:
            raise MaterialError(
                "lorentz model missing parameter %s" % (exc,)) from None
    if model_name == "conductivity_sum":
        raw = params.get("terms")
        if not raw:
            raise MaterialError("conductivity_sum model needs parameters.terms")
        terms = []
        for i, term in enumerate(raw):
            try:
                sigma = float(term["sigma"])
                lam_r = _convert_length(
                    term["lambda_r"], units.get("lambda_r"), "lambda_r")
            except KeyError as exc:
                raise MaterialError(
                    "conductivity term %d missing %s" % (i, exc)) from None
            terms.append((sigma, lam_r))
        return ConductivitySum(terms=tuple(terms))
    if model_name == "low_freq":
        try:
            return LowFreqExpansion(
                eps0=float(params["eps0"]),
                lambda_in=_convert_length(
                    params["lambda_in"], units.get("lambda_in"), "lambda_in"),
            )
        except KeyError as exc:
            raise MaterialError(
                "low_freq model missing parameter %s" % (exc,)) from None
    raise MaterialError("unknown dielectric model %r" % (model_name,))


def load_material(source):
    """Load a material from a JSON file, a dict, or a packaged name.

    Packaged names: 'vacuum', 'sic', 'tungsten_2400K'.

    Returns
    -------
    (name, model) : (str, dielectric model)
    """
    if isinstance(source, dict):
        doc = source
    else:
        name = str(source)
        if name == "vacuum":
            return "vacuum", Vacuum()
        path = Path(name)
        if not path.suffix and not path.exists():
            path = _DATA_DIR / (name.lower() + ".json")
        if not path.exists():
            raise MaterialError("no material file or packaged name %r"
                                % (source,))
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise MaterialError("bad JSON in %s: %s" % (path, exc)) from None
    if not isinstance(doc, dict):
        raise MaterialError("material document must be an object")
    for field in ("name", "model", "parameters"):
        if field not in doc:
            raise MaterialError("material document missing %r" % (field,))
    params = doc["parameters"]
    units = doc.get("units", {})
    if not isinstance(params, dict) or not isinstance(units, dict):
        raise MaterialError("parameters and units must be objects")
    model = _build_model(str(doc["model"]), params, units)
    return str(doc["name"]), model


@dataclass(frozen=True)
class CylinderSpec:
    """One cylinder: radius in meters, dielectric model, temperature in
    kelvin.  Temperature 0 means no thermal sources."""

    radius: float
    material: object
    temperature: float = 0.0

    def __post_init__(self):
        if not isinstance(self.radius, numbers.Real) or self.radius <= 0:
            raise ValueError("radius must be positive, got %r"
                             % (self.radius,))
        if not isinstance(self.temperature, numbers.Real) \
                or self.temperature < 0:
            raise ValueError("temperature must be >= 0, got %r"
                             % (self.temperature,))
        if not hasattr(self.material, "epsilon"):
            raise ValueError("material must provide an epsilon(omega) method")
