# Copyright 2026 The busnoc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import pytest

import busnoc

# columns a plotting step reads from the results CSV
PLOT_COLUMNS = [
    "routing",
    "traffic",
    "pir",
    "seed",
    "avg_latency_cycles",
    "max_latency_cycles",
    "throughput_flits_per_cycle_per_node",
    "packets_generated",
    "packets_delivered",
    "deadlocks_detected",
    "bus_recoveries",
    "cancellations",
    "saturated",
]

SMALL = dict(mesh_x=4, mesh_y=4, warmup_cycles=200, sim_cycles=2000)


def test_config_defaults_and_errors():
    cfg = busnoc.config()
    assert cfg["mesh_x"] == "4" and cfg["routing"] == "tfar"
    assert busnoc.config(injection_limit=None)["injection_limit"] == "none"
    with pytest.raises(busnoc.ConfigError, match="colour: unknown key"):
        busnoc.config(colour="blue")
    with pytest.raises(busnoc.ConfigError, match="threshold_log2"):
        busnoc.config(threshold_log2=0)
    assert busnoc.parse_config("pir = 0.01  # low\nrouting = xy\n")["routing"] == "xy"


def test_route_examples():
    assert busnoc.route("xy", (0, 0), (2, 1)) == ["E"]
    assert busnoc.route("xy", (2, 0), (2, 1)) == ["N"]
    assert sorted(busnoc.route("tfar", (0, 0), (2, 1))) == ["E", "N"]
    with pytest.raises(busnoc.ConfigError):
        busnoc.route("xy", (1, 1), (1, 1))


def test_run_is_deterministic():
    a = busnoc.run(routing="tfar", pir=0.01, seed=3, **SMALL)
    b = busnoc.run(routing="tfar", pir=0.01, seed=3, **SMALL)
    assert a == b
    assert a["packets_generated"] > 0
    assert a["packets_delivered"] > 0
    assert a["avg_latency_cycles"] > 0
    assert not a["saturated"]


def test_event_log_matches_across_runs():
    kw = dict(routing="oddeven", recovery="none", pir=0.02, seed=1, **SMALL)
    log = busnoc.event_log(**kw)
    assert log and log == busnoc.event_log(**kw)


def test_cycle4_scenario_recovers_over_bus():
    res = busnoc.scenario("cycle4")
    assert len(res["bus_packets"]) == 1
    assert res["all_delivered_cycle"] is not None
    assert res["report"]["packets_delivered"] == 4
    stuck = busnoc.scenario("cycle4", recovery="none", cycles=400)
    assert stuck["flit_movements"] == 0
    assert stuck["report"]["deadlocks_detected"] == 0


def test_sweep_csv_surface():
    kw = dict(pirs=[0.005, 0.01], routings="xy,tfar", traffics="transpose1", seeds=[1, 2], **SMALL)
    text = busnoc.sweep_csv(timestamp=False, **kw)
    assert text == busnoc.sweep_csv(timestamp=False, jobs=2, **kw)
    lines = text.splitlines()
    assert lines[0] == "# schema: " + busnoc.CSV_SCHEMA
    header = next(line for line in lines if not line.startswith("#"))
    assert header == busnoc.CSV_HEADER
    assert header.split(",")[: len(PLOT_COLUMNS)] == PLOT_COLUMNS

    rows = busnoc.read_results(text)
    assert len(rows) == 8
    keys = [(r["routing"], r["traffic"], float(r["pir"]), int(r["seed"])) for r in rows]
    assert keys == sorted(keys)
    for r in rows:
        assert r["error"] == ""
        assert r["saturated"] in ("true", "false")
        float(r["avg_latency_cycles"])
        float(r["throughput_flits_per_cycle_per_node"])
        int(r["packets_generated"])
        if r["routing"] == "xy":
            assert r["deadlocks_detected"] == "0"


def test_sweep_error_row():
    rows = busnoc.sweep(mesh_x=3, mesh_y=3, sim_cycles=200, warmup_cycles=0, traffics="bitreversal", pirs=[0.01])
    assert len(rows) == 1
    assert rows[0]["error"] and rows[0]["avg_latency_cycles"] == ""
