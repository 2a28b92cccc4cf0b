"""Scenario files: the serialized form of a wiring evaluation.

A scenario names a state (fixed, at one parameter value, or on a
parameter grid), a wiring, and optional output sinks.  The format is
JSON with a strict schema: unknown fields are rejected rather than
ignored, so a typo like "witnes" fails loudly instead of silently
evaluating something else.  Serialization is canonical (sorted keys,
two-space indent, trailing newline) and parsing then re-serializing a
canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .detection import Assignment, DetectionReport, ThresholdResult, WiringSpec, expectation, sweep
from .states import FAMILIES, FIXED_STATES, StateFamily

SCENARIO_VERSION = 1


@dataclass(frozen=True)
class FamilyRef:
    name: str
    value: float | None = None
    start: float | None = None
    stop: float | None = None
    points: int | None = None

    @property
    def mode(self) -> str:
        if self.value is not None:
            return "value"
        if self.start is not None:
            return "grid"
        return "fixed"


@dataclass(frozen=True)
class WitnessParam:
    witness: str
    name: str
    values: tuple[float, ...]


@dataclass(frozen=True)
class OutputSink:
    format: str
    path: str


@dataclass(frozen=True)
class Scenario:
    version: int
    name: str
    seed: int
    family: FamilyRef
    wiring: WiringSpec
    witness_param: WitnessParam | None = None
    outputs: tuple[OutputSink, ...] = field(default_factory=tuple)


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ValueError(f"{where}: expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ValueError(f"{where}: unknown field(s) {', '.join(unknown)}")
    missing = sorted(required - set(obj))
    if missing:
        raise ValueError(f"{where}: missing required field(s) {', '.join(missing)}")


def _parse_family(obj: dict) -> FamilyRef:
    _require_keys(obj, {"name", "value", "start", "stop", "points"}, {"name"}, "family")
    name = obj["name"]
    has_value = "value" in obj
    has_grid = any(k in obj for k in ("start", "stop", "points"))
    if has_value and has_grid:
        raise ValueError("family: give either a fixed value or a grid, not both")
    if has_grid and not all(k in obj for k in ("start", "stop", "points")):
        raise ValueError("family: a grid needs all of start, stop, points")
    if name in FIXED_STATES:
        if has_value or has_grid:
            raise ValueError(f"family: state {name!r} takes no parameter")
        return FamilyRef(name=name)
    if name not in FAMILIES:
        known = sorted(FAMILIES) + sorted(FIXED_STATES)
        raise ValueError(f"family: unknown name {name!r}; known: {', '.join(known)}")
    if has_value:
        return FamilyRef(name=name, value=float(obj["value"]))
    if has_grid:
        points = int(obj["points"])
        if points < 2:
            raise ValueError(f"family: grid needs points >= 2, got {points}")
        return FamilyRef(
            name=name, start=float(obj["start"]), stop=float(obj["stop"]), points=points
        )
    raise ValueError(f"family: {name!r} is parameterized; give value or start/stop/points")


def _parse_wiring(obj: dict) -> WiringSpec:
    _require_keys(obj, {"copies", "base_dims", "assignments"}, {"copies", "base_dims", "assignments"}, "wiring")
    assignments = []
    if not isinstance(obj["assignments"], list) or not obj["assignments"]:
        raise ValueError("wiring.assignments: expected a non-empty list")
    for idx, a in enumerate(obj["assignments"]):
        where = f"wiring.assignments[{idx}]"
        _require_keys(a, {"witness", "slots", "param"}, {"witness", "slots"}, where)
        slots = a["slots"]
        if not isinstance(slots, list) or any(
            not isinstance(s, list) or len(s) != 2 for s in slots
        ):
            raise ValueError(f"{where}.slots: expected a list of [copy, party] pairs")
        param = a.get("param")
        assignments.append(
            Assignment(
                witness=str(a["witness"]),
                slots=tuple((int(c), int(p)) for c, p in slots),
                param=None if param is None else float(param),
            )
        )
    spec = WiringSpec(
        copies=int(obj["copies"]),
        base_dims=tuple(int(d) for d in obj["base_dims"]),
        assignments=tuple(assignments),
    )
    spec.validate()
    return spec


def parse_scenario(text: str) -> Scenario:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"scenario is not valid JSON: {exc}") from exc
    _require_keys(
        obj,
        {"version", "name", "seed", "family", "wiring", "witness_param", "outputs"},
        {"version", "name", "seed", "family", "wiring"},
        "scenario",
    )
    if int(obj["version"]) != SCENARIO_VERSION:
        raise ValueError(f"unsupported scenario version {obj['version']}")
    family = _parse_family(obj["family"])
    wiring = _parse_wiring(obj["wiring"])
    witness_param = None
    if "witness_param" in obj:
        wp = obj["witness_param"]
        _require_keys(wp, {"witness", "name", "values"}, {"witness", "name", "values"}, "witness_param")
        if not isinstance(wp["values"], list) or not wp["values"]:
            raise ValueError("witness_param.values: expected a non-empty list")
        witness_param = WitnessParam(
            witness=str(wp["witness"]),
            name=str(wp["name"]),
            values=tuple(float(v) for v in wp["values"]),
        )
    outputs = []
    for idx, sink in enumerate(obj.get("outputs", [])):
        where = f"outputs[{idx}]"
        _require_keys(sink, {"format", "path"}, {"format", "path"}, where)
        if sink["format"] not in ("csv", "json"):
            raise ValueError(f"{where}.format: expected 'csv' or 'json', got {sink['format']!r}")
        outputs.append(OutputSink(format=str(sink["format"]), path=str(sink["path"])))
    return Scenario(
        version=SCENARIO_VERSION,
        name=str(obj["name"]),
        seed=int(obj["seed"]),
        family=family,
        wiring=wiring,
        witness_param=witness_param,
        outputs=tuple(outputs),
    )


def scenario_to_dict(s: Scenario) -> dict:
    fam: dict = {"name": s.family.name}
    if s.family.mode == "value":
        fam["value"] = float(s.family.value)
    elif s.family.mode == "grid":
        fam["start"] = float(s.family.start)
        fam["stop"] = float(s.family.stop)
        fam["points"] = int(s.family.points)
    assignments = []
    for a in s.wiring.assignments:
        if not isinstance(a.witness, str):
            raise ValueError("only named witnesses are serializable")
        entry: dict = {"witness": a.witness, "slots": [[c, p] for c, p in a.slots]}
        if a.param is not None:
            entry["param"] = float(a.param)
        assignments.append(entry)
    obj: dict = {
        "version": s.version,
        "name": s.name,
        "seed": s.seed,
        "family": fam,
        "wiring": {
            "copies": s.wiring.copies,
            "base_dims": list(s.wiring.base_dims),
            "assignments": assignments,
        },
    }
    if s.witness_param is not None:
        obj["witness_param"] = {
            "witness": s.witness_param.witness,
            "name": s.witness_param.name,
            "values": [float(v) for v in s.witness_param.values],
        }
    if s.outputs:
        obj["outputs"] = [{"format": o.format, "path": o.path} for o in s.outputs]
    return obj


def serialize_scenario(s: Scenario) -> str:
    return json.dumps(scenario_to_dict(s), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# Running scenarios.

@dataclass(frozen=True)
class ScenarioRun:
    """Evaluated scenario: one fixed value, one sweep, or one sweep per b."""

    scenario: Scenario
    kind: str  # "point" or "sweep"
    point_value: float | None = None
    reports: tuple[tuple[float | None, DetectionReport], ...] = ()


def _with_witness_param(wiring: WiringSpec, target: str, value: float) -> WiringSpec:
    replaced = tuple(
        Assignment(a.witness, a.slots, value) if a.witness == target else a
        for a in wiring.assignments
    )
    if replaced == wiring.assignments:
        raise ValueError(f"witness_param targets {target!r} but no assignment uses it")
    return WiringSpec(wiring.copies, wiring.base_dims, replaced)


def run_scenario(s: Scenario, points_override: int | None = None) -> ScenarioRun:
    fam = s.family
    if fam.mode == "fixed":
        rho, dims = FIXED_STATES[fam.name]
        if tuple(dims) != tuple(s.wiring.base_dims):
            raise ValueError(
                f"state {fam.name} has dims {list(dims)}, wiring expects "
                f"{list(s.wiring.base_dims)}"
            )
        if s.witness_param is not None:
            raise ValueError("witness_param over a fixed state is not supported")
        if points_override is not None:
            raise ValueError(f"scenario {s.name!r} has no parameter grid to resize")
        return ScenarioRun(s, "point", point_value=expectation(s.wiring, rho))
    family = FAMILIES[fam.name]
    if fam.mode == "value":
        if s.witness_param is not None:
            raise ValueError("witness_param with a fixed parameter value is not supported")
        if points_override is not None:
            raise ValueError(f"scenario {s.name!r} has no parameter grid to resize")
        return ScenarioRun(s, "point", point_value=expectation(s.wiring, family(fam.value)))
    points = points_override if points_override is not None else fam.points
    lo, hi = fam.start, fam.stop
    flo, fhi = family.param_range
    if not (flo <= lo <= hi <= fhi):
        raise ValueError(
            f"grid [{lo}, {hi}] outside {family.name} range [{flo}, {fhi}]"
        )
    bounded = _family_slice(family, lo, hi)
    if s.witness_param is None:
        return ScenarioRun(s, "sweep", reports=((None, sweep(s.wiring, bounded, points)),))
    reports = []
    for b in s.witness_param.values:
        wired = _with_witness_param(s.wiring, s.witness_param.witness, b)
        reports.append((b, sweep(wired, bounded, points)))
    return ScenarioRun(s, "sweep", reports=tuple(reports))


def _family_slice(family: StateFamily, lo: float, hi: float) -> StateFamily:
    """The same family with its parameter range restricted to [lo, hi]."""
    return StateFamily(
        name=family.name,
        n_parties=family.n_parties,
        dims=family.dims,
        param_name=family.param_name,
        param_range=(lo, hi),
        generator=family.generator,
    )


# ---------------------------------------------------------------------------
# Output formatting, shared with the CLI: 15 significant digits, '.' decimal
# point always (str.format on floats does not consult the locale).

def fmt(x: float) -> str:
    return f"{float(x):.15g}"


def round15(x: float) -> float:
    return float(fmt(x))


def threshold_dict(t: ThresholdResult) -> dict:
    return {"root": round15(t.root), "lo": round15(t.lo), "hi": round15(t.hi)}


def run_to_csv(run: ScenarioRun) -> str:
    """CSV table for a sweep: `param,value`, or `<p>,<b>,value` for a b-axis."""
    s = run.scenario
    if run.kind == "point":
        lines = ["param,value"]
        # fixed states have no parameter; leave the column empty
        pv = fmt(s.family.value) if s.family.mode == "value" else ""
        lines.append(f"{pv},{fmt(run.point_value)}")
        return "\n".join(lines) + "\n"
    if s.witness_param is None:
        lines = ["param,value"]
        _, report = run.reports[0]
        for p, v in zip(report.params, report.values):
            lines.append(f"{fmt(p)},{fmt(v)}")
        return "\n".join(lines) + "\n"
    pname = FAMILIES[s.family.name].param_name
    lines = [f"{pname},{s.witness_param.name},value"]
    for b, report in run.reports:
        for p, v in zip(report.params, report.values):
            lines.append(f"{fmt(p)},{fmt(b)},{fmt(v)}")
    return "\n".join(lines) + "\n"


def run_to_json(run: ScenarioRun) -> str:
    """Companion JSON: scenario identity plus located thresholds."""
    s = run.scenario
    obj: dict = {"scenario": s.name, "family": s.family.name, "seed": s.seed}
    if run.kind == "point":
        obj["kind"] = "point"
        obj["value"] = round15(run.point_value)
        if s.family.mode == "value":
            obj["param"] = round15(s.family.value)
    else:
        obj["kind"] = "sweep"
        if s.witness_param is None:
            _, report = run.reports[0]
            obj["param_name"] = report.param_name
            obj["points"] = len(report.params)
            obj["thresholds"] = [threshold_dict(t) for t in report.thresholds]
        else:
            obj["param_name"] = FAMILIES[s.family.name].param_name
            obj["axis"] = s.witness_param.name
            entries = []
            for b, report in run.reports:
                entries.append(
                    {
                        s.witness_param.name: round15(b),
                        "points": len(report.params),
                        "thresholds": [threshold_dict(t) for t in report.thresholds],
                    }
                )
            obj["sweeps"] = entries
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
