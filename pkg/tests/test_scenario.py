import json

import pytest

from witwire import scenario as sc
from witwire.reproduce import load_scenario, shipped_scenario_names


def test_shipped_scenarios_round_trip_bytes():
    from importlib import resources

    names = shipped_scenario_names()
    assert len(names) == 15
    for name in names:
        raw = (
            resources.files("witwire").joinpath("scenarios").joinpath(name + ".json")
        ).read_text(encoding="utf-8")
        parsed = sc.parse_scenario(raw)
        assert sc.serialize_scenario(parsed) == raw, name


def test_parse_rejects_unknown_fields():
    raw = json.loads(sc.serialize_scenario(load_scenario("ex1_cross")))
    raw["surprise"] = 1
    with pytest.raises(ValueError, match="unknown field"):
        sc.parse_scenario(json.dumps(raw))


def test_parse_rejects_unknown_nested_fields():
    base = json.loads(sc.serialize_scenario(load_scenario("ex1_cross")))
    for path, key in [
        ("family", "witnes"),
        ("wiring", "copiess"),
    ]:
        raw = json.loads(json.dumps(base))
        raw[path][key] = 0
        with pytest.raises(ValueError, match=path):
            sc.parse_scenario(json.dumps(raw))
    raw = json.loads(json.dumps(base))
    raw["wiring"]["assignments"][0]["paramm"] = 1.0
    with pytest.raises(ValueError, match=r"assignments\[0\]"):
        sc.parse_scenario(json.dumps(raw))


def test_parse_error_carries_position():
    with pytest.raises(ValueError, match="line 1"):
        sc.parse_scenario("{nope}")


def test_family_ref_validation():
    base = json.loads(sc.serialize_scenario(load_scenario("ex3_cyclic")))

    bad = json.loads(json.dumps(base))
    bad["family"]["value"] = 0.5  # grid and value together
    with pytest.raises(ValueError, match="not both"):
        sc.parse_scenario(json.dumps(bad))

    bad = json.loads(json.dumps(base))
    del bad["family"]["points"]
    with pytest.raises(ValueError, match="start, stop, points"):
        sc.parse_scenario(json.dumps(bad))

    bad = json.loads(json.dumps(base))
    bad["family"]["points"] = 1
    with pytest.raises(ValueError, match="points >= 2"):
        sc.parse_scenario(json.dumps(bad))

    bad = json.loads(json.dumps(base))
    bad["family"]["name"] = "not_a_family"
    with pytest.raises(ValueError, match="known:"):
        sc.parse_scenario(json.dumps(bad))

    bad = json.loads(json.dumps(base))
    bad["family"] = {"name": "ghz", "value": 0.5}  # fixed states take no parameter
    with pytest.raises(ValueError, match="no parameter"):
        sc.parse_scenario(json.dumps(bad))


def test_version_gate():
    raw = json.loads(sc.serialize_scenario(load_scenario("ex1_cross")))
    raw["version"] = 99
    with pytest.raises(ValueError, match="version"):
        sc.parse_scenario(json.dumps(raw))


def test_run_point_scenarios():
    run = sc.run_scenario(load_scenario("ex1_cross"))
    assert run.kind == "point"
    assert abs(run.point_value + 0.5) < 1e-10
    with pytest.raises(ValueError, match="grid"):
        sc.run_scenario(load_scenario("ex1_cross"), points_override=11)


def test_run_sweep_with_override():
    run = sc.run_scenario(load_scenario("ex4_p_w3"), points_override=21)
    assert run.kind == "sweep"
    b, report = run.reports[0]
    assert b is None
    assert len(report.params) == 21
    assert len(report.thresholds) == 1


def test_run_witness_param_fanout():
    run = sc.run_scenario(load_scenario("ex4_pb_w3"), points_override=21)
    assert [b for b, _ in run.reports] == [1.0, 2.0, 10.0, 100.0]
    for _, report in run.reports:
        assert len(report.params) == 21


def test_witness_param_must_match_an_assignment():
    raw = json.loads(sc.serialize_scenario(load_scenario("ex4_pb_w3")))
    raw["witness_param"]["witness"] = "W1"  # wired witnesses are P_b and W3
    parsed = sc.parse_scenario(json.dumps(raw))
    with pytest.raises(ValueError, match="no assignment"):
        sc.run_scenario(parsed, points_override=5)


def test_csv_headers_and_shape():
    run = sc.run_scenario(load_scenario("ex4_p_w3"), points_override=5)
    csv = sc.run_to_csv(run)
    lines = csv.strip().split("\n")
    assert lines[0] == "param,value"
    assert len(lines) == 6

    run_b = sc.run_scenario(load_scenario("ex4_pb_w3"), points_override=5)
    csv_b = sc.run_to_csv(run_b)
    lines_b = csv_b.strip().split("\n")
    assert lines_b[0] == "a,b,value"
    assert len(lines_b) == 1 + 4 * 5  # four b values, five grid points

    point_csv = sc.run_to_csv(sc.run_scenario(load_scenario("ghz_cyclic")))
    assert point_csv.startswith("param,value\n,")  # no parameter column value


def test_json_companion_carries_thresholds():
    run = sc.run_scenario(load_scenario("ex4_p_w3"), points_override=21)
    payload = json.loads(sc.run_to_json(run))
    assert payload["kind"] == "sweep"
    assert payload["param_name"] == "a"
    assert len(payload["thresholds"]) == 1
    assert abs(payload["thresholds"][0]["root"] - 0.7745966692) < 1e-6


def test_output_is_deterministic():
    a = sc.run_to_csv(sc.run_scenario(load_scenario("ex4_p_w3"), points_override=31))
    b = sc.run_to_csv(sc.run_scenario(load_scenario("ex4_p_w3"), points_override=31))
    assert a == b


def test_fmt_is_15_significant_digits():
    assert sc.fmt(1.0 / 3.0) == "0.333333333333333"
    assert sc.fmt(2.0) == "2"
    assert sc.round15(sc.round15(1.0 / 7.0)) == sc.round15(1.0 / 7.0)
