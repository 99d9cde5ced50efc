"""Scenario files: JSON descriptions of sweep runs.

A scenario names two cylinders (radius, material, temperature), an
environment temperature, a separation grid, and numerical options.
Every dimensional quantity carries an explicit unit field; there are
no silent defaults, because mixed eV / micrometer / kelvin inputs are
the main user hazard in this problem.  Example:

    {
      "name": "demo",
      "cylinder1": {"radius": {"value": 0.1, "unit": "um"},
                    "material": "sic",
                    "temperature": {"value": 300, "unit": "K"}},
      "cylinder2": {"radius": {"value": 0.1, "unit": "um"},
                    "material": "sic",
                    "temperature": {"value": 0, "unit": "K"}},
      "environment_temperature": {"value": 0, "unit": "K"},
      "separations": {"min": {"value": 0.5, "unit": "um"},
                      "max": {"value": 50, "unit": "um"},
                      "count": 40, "spacing": "log"},
      "provider": "thin"
    }

Materials may be packaged names ('sic', 'tungsten_2400K', 'vacuum'),
inline material documents, or {"path": "file.json"} relative to the
scenario file.  Optional fields: "temperature_sets" (several
{T1, T2, T_env} triples sharing one geometry; mutually exclusive with
per-cylinder temperatures), "controls" (quadrature overrides),
"equilibrium_file" / "equilibrium" (ingested equilibrium force table),
"include_quadratic", "output".

`parse_scenario` returns the engine scenario together with a fully
resolved plain dict (defaults filled in, units normalized to SI,
materials and equilibrium data inlined) that round-trips through
`parse_scenario` again; sweep CSVs embed it as a comment header so any
output file can be re-run or refined without its original inputs.
"""

import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from .engine import QuadratureControls, Scenario
from .equilibrium import EquilibriumTable
from .errors import MaterialError, SchemaError
from .materials import (Constant, ConductivitySum, CylinderSpec, Lorentz,
                        LowFreqExpansion, Vacuum, load_material)
from .units import length_to_m

_CONTROL_FIELDS = ("rel_tol", "x_max", "u_min", "n_max", "series_tol",
                   "y_cut", "max_panels", "kz_symmetry",
                   "include_quadratic")


def _fail(path, message):
    raise SchemaError("%s: %s" % (path, message))


def _require_object(node, path):
    if not isinstance(node, dict):
        _fail(path, "expected an object, got %s" % (type(node).__name__,))
    return node


def _get(doc, key, path, required=True, default=None):
    if key not in doc:
        if required:
            _fail(path, "missing required field %r" % (key,))
        return default
    return doc[key]


def _number(node, path, *, minimum=None, exclusive=False):
    if isinstance(node, bool) or not isinstance(node, (int, float)):
        _fail(path, "expected a number, got %r" % (node,))
    value = float(node)
    if not math.isfinite(value):
        _fail(path, "must be finite")
    if minimum is not None:
        if exclusive and value <= minimum:
            _fail(path, "must be > %g" % (minimum,))
        if not exclusive and value < minimum:
            _fail(path, "must be >= %g" % (minimum,))
    return value


def _length_m(node, path):
    node = _require_object(node, path)
    value = _number(_get(node, "value", path), path + ".value",
                    minimum=0.0, exclusive=True)
    unit = _get(node, "unit", path)
    try:
        return length_to_m(value, unit)
    except ValueError as exc:
        _fail(path + ".unit", str(exc))


def _temperature_k(node, path):
    node = _require_object(node, path)
    value = _number(_get(node, "value", path), path + ".value", minimum=0.0)
    unit = _get(node, "unit", path)
    if unit != "K":
        _fail(path + ".unit", "temperatures must be in 'K', got %r"
              % (unit,))
    return value


def _material(node, path, base_dir):
    """Resolve a material reference to (name, model, resolved doc)."""
    if isinstance(node, str):
        try:
            name, model = load_material(node)
        except MaterialError as exc:
            _fail(path, str(exc))
        return name, model, _material_doc(name, model)
    node = _require_object(node, path)
    if "path" in node and "model" not in node:
        rel = Path(str(node["path"]))
        target = rel if rel.is_absolute() else Path(base_dir) / rel
        try:
            name, model = load_material(str(target))
        except MaterialError as exc:
            _fail(path + ".path", str(exc))
    else:
        try:
            name, model = load_material(node)
        except MaterialError as exc:
            _fail(path, str(exc))
    return name, model, _material_doc(name, model)


def _material_doc(name, model):
    """Inline material document (SI units) for a loaded model."""
    if isinstance(model, Vacuum):
        return {"name": name, "model": "vacuum", "parameters": {}}
    if isinstance(model, Constant):
        return {"name": name, "model": "constant",
                "parameters": {"eps_re": model.value.real,
                               "eps_im": model.value.imag}}
    if isinstance(model, Lorentz):
        return {"name": name, "model": "lorentz",
                "parameters": {"eps_inf": model.eps_inf,
                               "omega_lo": model.omega_lo,
                               "omega_to": model.omega_to,
                               "gamma": model.gamma}}
    if isinstance(model, ConductivitySum):
        return {"name": name, "model": "conductivity_sum",
                "parameters": {"terms": [
                    {"sigma": sigma, "lambda_r": lam}
                    for sigma, lam in model.terms]}}
    if isinstance(model, LowFreqExpansion):
        return {"name": name, "model": "low_freq",
                "parameters": {"eps0": model.eps0,
                               "lambda_in": model.lambda_in}}
    raise SchemaError("cannot serialize material model %r"
                      % (type(model).__name__,))


def _cylinder(node, path, base_dir, *, allow_temperature):
    node = _require_object(node, path)
    radius = _length_m(_get(node, "radius", path), path + ".radius")
    name, model, mat_doc = _material(_get(node, "material", path),
                                     path + ".material", base_dir)
    temp_node = node.get("temperature")
    if temp_node is not None and not allow_temperature:
        _fail(path + ".temperature", "per-cylinder temperatures are "
              "mutually exclusive with temperature_sets")
    if temp_node is None and allow_temperature:
        _fail(path, "missing required field 'temperature'")
    temperature = (_temperature_k(temp_node, path + ".temperature")
                   if temp_node is not None else 0.0)
    spec = CylinderSpec(radius=radius, material=model,
                        temperature=temperature)
    return spec, name, mat_doc


def _separations(node, path):
    node = _require_object(node, path)
    if "values" in node:
        unit = _get(node, "unit", path)
        raw = node["values"]
        if not isinstance(raw, list) or not raw:
            _fail(path + ".values", "expected a non-empty list")
        out = []
        for i, entry in enumerate(raw):
            value = _number(entry, "%s.values[%d]" % (path, i),
                            minimum=0.0, exclusive=True)
            try:
                out.append(length_to_m(value, unit))
            except ValueError as exc:
                _fail(path + ".unit", str(exc))
        grid = tuple(out)
    else:
        lo = _length_m(_get(node, "min", path), path + ".min")
        hi = _length_m(_get(node, "max", path), path + ".max")
        if hi <= lo:
            _fail(path, "max must exceed min")
        count_node = _get(node, "count", path)
        if isinstance(count_node, bool) or not isinstance(count_node, int):
            _fail(path + ".count", "expected an integer")
        if count_node < 2:
            _fail(path + ".count", "need at least 2 points")
        spacing = node.get("spacing", "log")
        if spacing == "log":
            grid = tuple(np.geomspace(lo, hi, count_node).tolist())
        elif spacing == "linear":
            grid = tuple(np.linspace(lo, hi, count_node).tolist())
        else:
            _fail(path + ".spacing", "expected 'log' or 'linear', got %r"
                  % (spacing,))
    if any(b <= a for a, b in zip(grid, grid[1:])):
        _fail(path, "separations must be strictly increasing")
    return grid


def _controls(node, path):
    if node is None:
        return QuadratureControls()
    node = _require_object(node, path)
    unknown = set(node) - set(_CONTROL_FIELDS)
    if unknown:
        _fail(path, "unknown control fields %s; valid ones are %s"
              % (sorted(unknown), list(_CONTROL_FIELDS)))
    kwargs = {}
    for key, value in node.items():
        if key in ("kz_symmetry", "include_quadratic"):
            if value is not None and not isinstance(value, bool):
                _fail("%s.%s" % (path, key), "expected a boolean")
            kwargs[key] = value
        elif key in ("n_max", "max_panels"):
            if value is None and key == "n_max":
                kwargs[key] = None
                continue
            if isinstance(value, bool) or not isinstance(value, int):
                _fail("%s.%s" % (path, key), "expected an integer")
            if value < 1:
                _fail("%s.%s" % (path, key), "must be >= 1")
            kwargs[key] = value
        elif key == "u_min":
            kwargs[key] = _number(value, "%s.%s" % (path, key),
                                  minimum=0.0)
        else:
            kwargs[key] = _number(value, "%s.%s" % (path, key),
                                  minimum=0.0, exclusive=True)
    try:
        return QuadratureControls(**kwargs)
    except ValueError as exc:
        _fail(path, str(exc))


def _temperature_sets(node, path):
    node = _require_object(node, path)
    unit = _get(node, "unit", path)
    if unit != "K":
        _fail(path + ".unit", "temperature sets must be in 'K', got %r"
              % (unit,))
    raw = _get(node, "sets", path)
    if not isinstance(raw, list) or not raw:
        _fail(path + ".sets", "expected a non-empty list of "
              "[T1, T2, T_env] triples")
    out = []
    for i, entry in enumerate(raw):
        where = "%s.sets[%d]" % (path, i)
        if not isinstance(entry, list) or len(entry) != 3:
            _fail(where, "expected a [T1, T2, T_env] triple")
        out.append(tuple(_number(v, "%s[%d]" % (where, j), minimum=0.0)
                         for j, v in enumerate(entry)))
    return tuple(out)


def _equilibrium(doc, base_dir):
    inline = doc.get("equilibrium")
    file_ref = doc.get("equilibrium_file")
    if inline is not None and file_ref is not None:
        _fail("equilibrium", "give either 'equilibrium' or "
              "'equilibrium_file', not both")
    allow = doc.get("allow_equilibrium_extrapolation", False)
    if not isinstance(allow, bool):
        _fail("allow_equilibrium_extrapolation", "expected a boolean")
    if inline is not None:
        inline = _require_object(inline, "equilibrium")
        d = _get(inline, "d_m", "equilibrium")
        f = _get(inline, "F_eq_N_per_m", "equilibrium")
        if not isinstance(d, list) or not isinstance(f, list):
            _fail("equilibrium", "d_m and F_eq_N_per_m must be lists")
        try:
            return EquilibriumTable(d, f, allow_extrapolation=allow)
        except SchemaError as exc:
            _fail("equilibrium", str(exc))
    if file_ref is not None:
        rel = Path(str(file_ref))
        target = rel if rel.is_absolute() else Path(base_dir) / rel
        if not target.exists():
            _fail("equilibrium_file", "no such file: %s" % (target,))
        return EquilibriumTable.from_csv(str(target),
                                         allow_extrapolation=allow)
    return None


_TOP_FIELDS = {"name", "cylinder1", "cylinder2", "environment_temperature",
               "separations", "provider", "include_quadratic", "controls",
               "equilibrium_file", "equilibrium",
               "allow_equilibrium_extrapolation", "temperature_sets",
               "output"}


def parse_scenario(doc, base_dir="."):
    """Build an engine scenario from a parsed JSON document.

    Returns (scenario, resolved) where resolved is a plain dict with
    defaults filled in, all units normalized to SI, and materials and
    equilibrium data inlined; parsing the resolved dict again gives an
    equivalent scenario.  Raises SchemaError naming the offending
    field on any violation.
    """
    doc = _require_object(doc, "scenario")
    unknown = set(doc) - _TOP_FIELDS
    if unknown:
        _fail("scenario", "unknown fields %s" % (sorted(unknown),))
    name = doc.get("name", "scenario")
    if not isinstance(name, str) or not name:
        _fail("name", "expected a non-empty string")

    sets_node = doc.get("temperature_sets")
    temperature_sets = (_temperature_sets(sets_node, "temperature_sets")
                        if sets_node is not None else None)
    per_cylinder = temperature_sets is None

    cyl1, name1, doc1 = _cylinder(_get(doc, "cylinder1", "scenario"),
                                  "cylinder1", base_dir,
                                  allow_temperature=per_cylinder)
    cyl2, name2, doc2 = _cylinder(_get(doc, "cylinder2", "scenario"),
                                  "cylinder2", base_dir,
                                  allow_temperature=per_cylinder)

    env_node = doc.get("environment_temperature")
    if temperature_sets is not None:
        if env_node is not None:
            _fail("environment_temperature", "mutually exclusive with "
                  "temperature_sets")
        t_env = 0.0
    else:
        if env_node is None:
            _fail("scenario", "missing required field "
                  "'environment_temperature'")
        t_env = _temperature_k(env_node, "environment_temperature")

    separations = _separations(_get(doc, "separations", "scenario"),
                               "separations")
    provider = doc.get("provider", "thin")
    if provider not in ("thin", "full"):
        _fail("provider", "expected 'thin' or 'full', got %r" % (provider,))
    include_quadratic = doc.get("include_quadratic")
    if include_quadratic is not None \
            and not isinstance(include_quadratic, bool):
        _fail("include_quadratic", "expected a boolean or null")
    controls = _controls(doc.get("controls"), "controls")
    equilibrium = _equilibrium(doc, base_dir)
    output = doc.get("output")
    if output is not None and not isinstance(output, str):
        _fail("output", "expected a string path")

    scenario = Scenario(
        cylinder1=cyl1, cylinder2=cyl2, separations=separations,
        environment_temperature=t_env, provider=provider,
        include_quadratic=include_quadratic, controls=controls,
        equilibrium=equilibrium, temperature_sets=temperature_sets,
        name=name, output=output)

    resolved = {
        "name": name,
        "cylinder1": _resolved_cylinder(cyl1, doc1, per_cylinder),
        "cylinder2": _resolved_cylinder(cyl2, doc2, per_cylinder),
        "separations": {"values": [float(d) for d in separations],
                        "unit": "m"},
        "provider": provider,
        "include_quadratic": include_quadratic,
        "controls": dataclasses.asdict(controls),
    }
    if temperature_sets is not None:
        resolved["temperature_sets"] = {
            "unit": "K", "sets": [list(s) for s in temperature_sets]}
    else:
        resolved["environment_temperature"] = {"value": t_env, "unit": "K"}
    if equilibrium is not None:
        resolved["equilibrium"] = {
            "d_m": equilibrium.separations.tolist(),
            "F_eq_N_per_m": equilibrium.forces.tolist()}
        resolved["allow_equilibrium_extrapolation"] = \
            equilibrium.allow_extrapolation
    if output is not None:
        resolved["output"] = output
    return scenario, resolved


def _resolved_cylinder(spec, mat_doc, per_cylinder):
    out = {"radius": {"value": spec.radius, "unit": "m"},
           "material": mat_doc}
    if per_cylinder:
        out["temperature"] = {"value": spec.temperature, "unit": "K"}
    return out


def load_scenario(path):
    """Parse a scenario JSON file; see parse_scenario."""
    target = Path(path)
    try:
        text = target.read_text()
    except OSError as exc:
        raise SchemaError("cannot read scenario file %s: %s"
                          % (path, exc)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("scenario file %s is not valid JSON: %s"
                          % (path, exc)) from None
    return parse_scenario(doc, base_dir=target.parent)
