"""Scenario files: strict INI parsing, unit conversion, and the runner.

A scenario is an INI file with one section per concern::

    [scenario]  name, units (natural | si), outputs (csv, svg), c_g
    [field]     alpha, mass, phi0, phi_dot0, kappa, dt, steps
    [matter]    t_hat = d0, d1, d2, d3
    [events]    <label> = dt, dx, dy, dz
    [signal]    distance, speed, phi_dot
    [quantum]   dims, amplitudes | state_file, alpha_max, threshold
    [sweep]     alphas, phi_dot

Unknown sections or keys are errors. In SI mode times are seconds, lengths
metres, rates 1/s and alpha m^2; everything is converted to natural units
(c0 = 1, length unit = metre) on load and back on output.
"""

from __future__ import annotations

import configparser
import math
import os
import re
import dataclasses
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from bicone import causality, entanglement, io, scalar_field, svg
from bicone.errors import BiconeError, ConfigError
from bicone.tensor import bimetric, covector, minkowski, vector

C0_SI = 299_792_458.0
PRESETS = ("bellpair", "gisin11km", "conesweep")
FLIP_MARGIN = 1e-6


def _float(text: str) -> float:
    return float(text)


def _int(text: str) -> int:
    return int(text)


def _floats(n: Optional[int] = None):
    def parse(text: str) -> tuple:
        vals = tuple(float(x) for x in re.split(r"[,\s]+", text.strip()) if x)
        if n is not None and len(vals) != n:
            raise ValueError(f"expected {n} numbers, got {len(vals)}")
        return vals

    return parse


def _choice(*options):
    def parse(text: str) -> str:
        v = text.strip().lower()
        if v not in options:
            raise ValueError(f"expected one of {options}, got {text!r}")
        return v

    return parse


def _outputs(text: str) -> tuple:
    vals = tuple(x for x in re.split(r"[,\s]+", text.strip().lower()) if x)
    bad = [v for v in vals if v not in ("csv", "svg")]
    if bad:
        raise ValueError(f"unknown output target(s) {bad}")
    return vals


def _amplitudes(text: str) -> tuple:
    pairs = [p for p in text.split(";") if p.strip()]
    out = []
    for p in pairs:
        re_im = _floats(2)(p)
        out.append(complex(*re_im))
    return tuple(out)


SCHEMA = {
    "scenario": {
        "name": str,
        "units": _choice("natural", "si"),
        "outputs": _outputs,
        "c_g": _float,
    },
    "field": {
        "alpha": _float,
        "mass": _float,
        "phi0": _float,
        "phi_dot0": _float,
        "kappa": _float,
        "dt": _float,
        "steps": _int,
    },
    "matter": {"t_hat": _floats(4)},
    "events": None,  # free labels, each an (dt, dx, dy, dz) separation
    "signal": {"distance": _float, "speed": _float, "phi_dot": _float},
    "quantum": {
        "dims": lambda s: tuple(int(x) for x in _floats(2)(s)),
        "amplitudes": _amplitudes,
        "state_file": str,
        "alpha_max": _float,
        "threshold": _float,
    },
    "sweep": {"alphas": _floats(), "phi_dot": _float},
}

LABEL = re.compile(r"^[A-Za-z][A-Za-z0-9_\-]*$")


@dataclass
class Scenario:
    name: str
    units: str = "natural"
    outputs: tuple = ("csv", "svg")
    c_g: float = 1.0
    field: dict = dataclasses.field(default_factory=dict)
    matter: Optional[tuple] = None
    events: dict = dataclasses.field(default_factory=dict)
    signal: Optional[dict] = None
    quantum: Optional[dict] = None
    sweep: Optional[dict] = None
    base_dir: str = "."


def parse_scenario(text: str, base_dir: str = ".") -> Scenario:
    cp = configparser.ConfigParser(interpolation=None, strict=True, delimiters=("=",))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable scenario: {exc}") from exc

    parsed: dict = {}
    for section in cp.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
        keys = SCHEMA[section]
        values = {}
        for key, raw in cp.items(section):
            if keys is None:
                if not LABEL.match(key):
                    raise ConfigError(f"[{section}] bad event label {key!r}")
                parser = _floats(4)
            elif key not in keys:
                raise ConfigError(f"[{section}] unknown key {key!r}")
            else:
                parser = keys[key]
            try:
                values[key] = parser(raw)
            except ValueError as exc:
                raise ConfigError(f"[{section}] {key}: {exc}") from exc
        parsed[section] = values

    head = parsed.get("scenario")
    if not head or "name" not in head:
        raise ConfigError("[scenario] name is required")
    if not LABEL.match(head["name"]):
        raise ConfigError(f"[scenario] name {head['name']!r} must be a plain label (it names the output folder)")
    sc = Scenario(
        name=head["name"],
        units=head.get("units", "natural"),
        outputs=head.get("outputs", ("csv", "svg")),
        c_g=head.get("c_g", 1.0),
        field=parsed.get("field", {}),
        matter=parsed.get("matter", {}).get("t_hat") if "matter" in parsed else None,
        events=parsed.get("events", {}),
        signal=parsed.get("signal"),
        quantum=parsed.get("quantum"),
        sweep=parsed.get("sweep"),
        base_dir=base_dir,
    )
    _validate(sc)
    return sc


def _validate(sc: Scenario):
    if sc.c_g <= 0:
        raise ConfigError("[scenario] c_g must be positive")
    f = sc.field
    for key in ("alpha", "mass", "dt"):
        if f.get(key, 0.0) < 0:
            raise ConfigError(f"[field] {key} must be non-negative")
    if f.get("kappa", 1.0) <= 0:
        raise ConfigError("[field] kappa must be positive")
    if f.get("steps", 0) < 0:
        raise ConfigError("[field] steps must be non-negative")
    if f.get("steps", 0) > 0 and f.get("dt", 0.0) <= 0:
        raise ConfigError("[field] dt must be positive when steps > 0")
    if sc.matter is not None and not f.get("steps"):
        raise ConfigError("[matter] only enters the field evolution; set [field] steps")
    if sc.quantum is not None:
        q = sc.quantum
        if ("amplitudes" in q) == ("state_file" in q):
            raise ConfigError("[quantum] needs exactly one of amplitudes, state_file")
        if "amplitudes" in q and "dims" not in q:
            raise ConfigError("[quantum] amplitudes need dims")
        if "alpha_max" not in q:
            raise ConfigError("[quantum] alpha_max is required")
        if q["alpha_max"] < 0:
            raise ConfigError("[quantum] alpha_max must be non-negative")
        if "alpha" in f:
            raise ConfigError("[field] alpha is set by the entanglement switch when [quantum] is present")
    if sc.signal is not None:
        s = sc.signal
        for key in ("distance", "speed"):
            if key not in s:
                raise ConfigError(f"[signal] {key} is required")
        if s["distance"] <= 0 or s["speed"] <= 0:
            raise ConfigError("[signal] distance and speed must be positive")
    if sc.sweep is not None:
        if not sc.sweep.get("alphas"):
            raise ConfigError("[sweep] alphas is required")
        if any(a < 0 for a in sc.sweep["alphas"]):
            raise ConfigError("[sweep] alphas must be non-negative")


def load_scenario(path) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read scenario {path}: {exc}") from exc
    return parse_scenario(text, base_dir=os.path.dirname(os.path.abspath(path)))


def preset_text(name: str) -> str:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    return resources.files("bicone.presets").joinpath(f"{name}.ini").read_text(encoding="utf-8")


def load_preset(name: str) -> Scenario:
    return parse_scenario(preset_text(name))


# --- runner ----------------------------------------------------------------------


@dataclass
class Units:
    """Conversion between the scenario's units and natural units."""

    si: bool

    @property
    def c0(self) -> float:
        return C0_SI if self.si else 1.0

    def time_in(self, t):
        return t * self.c0

    def rate_in(self, r):
        return r / self.c0

    @property
    def time_out(self) -> float:
        return 1.0 / self.c0

    def label(self, natural: str, si: str) -> str:
        return si if self.si else natural


@dataclass
class RunResult:
    scenario: Scenario
    report: list
    files: list


def run_scenario(sc: Scenario, out_dir, units: Optional[str] = None, entropy_base: str = "e") -> RunResult:
    """Evaluate a scenario and write its artifacts under ``out_dir``.

    ``units`` overrides the scenario's own unit choice.
    """
    u = Units((units or sc.units) == "si")
    base = 2.0 if entropy_base == "2" else math.e
    ent_unit = "bits" if entropy_base == "2" else "nats"
    report: list = [("scenario", sc.name, ""), ("units", "si" if u.si else "natural", "")]
    files: list = []
    want_csv = "csv" in sc.outputs
    want_svg = "svg" in sc.outputs

    def out(name):
        return os.path.join(out_dir, name)

    # entanglement switch
    f = sc.field
    alpha = f.get("alpha", 0.0)
    if sc.quantum is not None:
        q = sc.quantum
        if "state_file" in q:
            psi = io.read_state(os.path.join(sc.base_dir, q["state_file"]))
        else:
            psi = entanglement.BipartiteState.from_vector(q["amplitudes"], q["dims"])
        rho_a, rho_b = entanglement.reduced_states(psi)
        S_a = entanglement.entanglement_entropy(rho_a)
        S_b = entanglement.entanglement_entropy(rho_b)
        alpha = entanglement.effective_alpha(S_a, q["alpha_max"], q.get("threshold", 1e-12))
        report += [
            ("dims", f"{psi.dims[0]}x{psi.dims[1]}", ""),
            ("entropy_A", S_a / math.log(base), ent_unit),
            ("entropy_B", S_b / math.log(base), ent_unit),
            ("is_product", entanglement.is_product(psi), ""),
            ("alpha_max", q["alpha_max"], u.label("length^2", "m^2")),
            ("effective_alpha", alpha, u.label("length^2", "m^2")),
        ]

    # field and quantum metric
    phi_dot0 = u.rate_in(f.get("phi_dot0", 1.0))
    state0 = scalar_field.ScalarFieldState(
        phi=f.get("phi0", 0.0),
        phi_dot=phi_dot0,
        mass=u.rate_in(f.get("mass", 0.0)),
        alpha=alpha,
        kappa=f.get("kappa", 1.0),
    )
    g = minkowski()
    g_hat = scalar_field.quantum_metric(state0, g)
    c = scalar_field.c_of_state(state0)
    report += [
        ("alpha", alpha, u.label("length^2", "m^2")),
        ("phi_dot0", phi_dot0 / u.time_out, u.label("1/time", "1/s")),
        ("c", c * u.c0, u.label("c0", "m/s")),
        ("gamma", c / sc.c_g, ""),
        ("s_ratio", scalar_field.s_ratio(g, g_hat), ""),
    ]

    steps = f.get("steps", 0)
    if steps:
        matter = scalar_field.MatterBackground(sc.matter) if sc.matter is not None else None
        traj = scalar_field.evolve_homogeneous(state0, matter, u.time_in(f["dt"]), steps)
        e = traj.energy
        drift = float(abs(e[-1] - e[0]) / e[0]) if e[0] != 0 else float(abs(e[-1] - e[0]))
        report += [
            ("steps", steps, ""),
            ("c_min", float(traj.c_of_t.min()) * u.c0, u.label("c0", "m/s")),
            ("c_max", float(traj.c_of_t.max()) * u.c0, u.label("c0", "m/s")),
            ("energy_drift", drift, "relative"),
        ]
        if want_csv:
            files.append(io.write_trajectory_csv(out("trajectory.csv"), traj, u.time_out, u.c0))

    # events under both cones
    names = list(sc.events)
    records = [
        causality.classify(vector(u.time_in(d[0]), d[1], d[2], d[3]), g, g_hat) for d in sc.events.values()
    ]
    for name, rec in zip(names, records):
        report.append((f"event_{name}", f"{rec.class_g.value}/{rec.class_ghat.value}", "g/ghat"))
    if names and want_csv:
        files.append(io.write_text(out("events.csv"), io.records_csv(records, names, u.time_out, g, g_hat)))
    if want_svg and (names or sc.signal is None and sc.sweep is None):
        files.append(svg.emit_cone_svg(records, c, sc.c_g, out("cones.svg")))

    if sc.signal is not None:
        rows, extra = _signal(sc, u, out, want_svg)
        report += rows
        files += extra

    if sc.sweep is not None:
        rows, extra = _sweep(sc, u, names, out, want_csv, want_svg)
        report += rows
        files += extra

    if want_csv:
        files.append(io.write_text(out("report.csv"), io.report_csv(report)))
    return RunResult(sc, report, files)


def _signal(sc: Scenario, u: Units, out, want_svg: bool):
    s = sc.signal
    L = s["distance"]
    v = s["speed"]
    T = L / v  # natural units: time in length units
    phi_dot = u.rate_in(s.get("phi_dot", 1.0))
    qi = causality.qi_from_speed(v)
    beta_closed = causality.required_alpha(L, T, phi_dot) * phi_dot**2
    beta_bisect = causality.bisect_required_alpha(L, T, phi_dot) * phi_dot**2
    g_class = causality.classify_at_coupling(L, T, 0.0).class_g
    above = causality.classify_at_coupling(L, T, beta_closed * (1 + FLIP_MARGIN)).class_ghat
    below = causality.classify_at_coupling(L, T, beta_closed * (1 - FLIP_MARGIN)).class_ghat
    flip = (
        g_class is causality.Causality.SPACELIKE
        and above is causality.Causality.TIMELIKE
        and below is causality.Causality.SPACELIKE
    )
    rows = [
        ("distance", L / 1000.0 if u.si else L, u.label("length", "km")),
        ("transit_time_at_v_qi", T * u.time_out, u.label("time", "s")),
        ("v_qi", qi.v_qi, "c0"),
        ("theta_qi", qi.theta_qi, "rad"),
        ("w_qi", qi.w_qi, ""),
        ("required_alpha", beta_closed / phi_dot**2, u.label("length^2", "m^2")),
        ("required_alpha_phidot2_over_c02", beta_closed, ""),
        ("required_alpha_phidot2_over_c02_bisection", beta_bisect, ""),
        ("bisection_relative_gap", abs(beta_bisect - beta_closed) / beta_closed if beta_closed else 0.0, ""),
        ("class_g", g_class.value, ""),
        ("class_ghat_below_threshold", below.value, ""),
        ("class_ghat_above_threshold", above.value, ""),
        ("flip_confirmed", flip, ""),
    ]
    files = []
    if want_svg:
        g = minkowski()
        g_hat = bimetric(g, beta_closed * (1 + FLIP_MARGIN), covector(1.0, 0.0, 0.0, 0.0))
        rec = causality.classify(vector(T, L, 0.0, 0.0), g, g_hat)
        c = math.sqrt(1.0 + beta_closed * (1 + FLIP_MARGIN))
        files.append(svg.emit_cone_svg([rec], c, sc.c_g, out("signal_cones.svg")))
    return rows, files


def _sweep(sc: Scenario, u: Units, names, out, want_csv: bool, want_svg: bool):
    phi_dot = u.rate_in(sc.sweep.get("phi_dot", 1.0))
    g = minkowski()
    rows, table, files = [], [], []
    deltas = [vector(u.time_in(d[0]), d[1], d[2], d[3]) for d in sc.events.values()]
    for i, alpha in enumerate(sc.sweep["alphas"]):
        state = scalar_field.ScalarFieldState(0.0, phi_dot, alpha=alpha)
        g_hat = scalar_field.quantum_metric(state, g)
        c = scalar_field.c_of_state(state)
        recs = [causality.classify(d, g, g_hat) for d in deltas]
        for name, rec in zip(names, recs):
            table.append((alpha, c * u.c0, c / sc.c_g, name, rec.s2_g, rec.s2_ghat, rec.class_g.value, rec.class_ghat.value))
        rows.append((f"sweep_{i}_c", c * u.c0, u.label("c0", "m/s")))
        if want_svg:
            files.append(svg.emit_cone_svg(recs, c, sc.c_g, out(f"cones_sweep_{i}.svg")))
    if want_csv:
        header = ("alpha", "c", "gamma", "event", "s2_g", "s2_ghat", "class_g", "class_ghat")
        files.append(io.write_text(out("sweep.csv"), io.csv_text(header, table)))
    return rows, files


def run_path(path, out_dir, **kw) -> RunResult:
    return run_scenario(load_scenario(path), out_dir, **kw)


def run_preset(name: str, out_dir, **kw) -> RunResult:
    return run_scenario(load_preset(name), out_dir, **kw)


__all__ = [
    "BiconeError",
    "C0_SI",
    "PRESETS",
    "Scenario",
    "load_preset",
    "load_scenario",
    "parse_scenario",
    "run_path",
    "run_preset",
    "run_scenario",
]
