"""Smoke tests for the _collatzkit extension module.

Usage: test_smoke.py <dir-containing-module>
"""
import sys

if len(sys.argv) > 1:
    sys.path.insert(0, sys.argv[1])

import _collatzkit as ck  # noqa: E402


def test_steps():
    assert ck.v2("64") == 6
    assert ck.syracuse_step("27") == ("41", 1)
    assert ck.collatz_step("27") == "82"
    assert ck.mod_inverse_pow2("3", 4) == "11"


def test_orbit():
    o = ck.orbit("27", 200)
    assert o["reached_one"]
    assert len(o["valuations"]) == 41
    assert ck.run_length("1023") == 9
    assert ck.sigma_crossing("35655", 200) == 85


def test_exact_tables():
    assert ck.lattice_path_f(4) == "13/64"
    assert ck.lattice_path_f(10) == "1057/16384"
    assert ck.crossing_strata(4) == "5/8"
    assert ck.crossing_strata(8) == "109/128"
    frac, max_steps = ck.positive_drift_fraction(8)
    assert frac == "1/4" and max_steps == 7


def test_kernels():
    assert ck.partial_kernel_rho() == "129/1024"
    assert ck.cascade_markov_rho() == "3/4"
    core = ck.invariant_core(2)
    assert core == ["7", "27", "31", "59", "63"]
    rows = ck.fiber_transition_matrix(10)
    assert rows[0] == ["3/16", "1/8", "1/8", "3/16", "1/8", "1/32", "1/16", "5/32"]


def test_phantom():
    C, D, rho = ck.phantom_root([1, 1, 1])
    assert (C, D, rho) == ("19", "-19", "-1")
    deltas = ck.rotation_deltas([1, 1, 1, 1, 2])
    assert max(d for d in deltas if d is not None) == 4
    g = ck.gain_series(20)
    assert abs(g["partial_sum"] - 0.0876) < 0.002


def test_graphs():
    d = ck.build_state_graph_summary(10, 1, 15)
    assert not d["acyclic"] and d["cycle_residues"] == 26
    d13 = ck.build_state_graph_summary(13, 1, 15)
    assert d13["acyclic"] and d13["max_rank"] == 74


def test_suite_and_table():
    ok, js = ck.run_suite("lattice-path")
    assert ok and '"pass":true' in js
    csv = ck.emit_table("f-strata", "csv")
    assert "5/8" in csv


if __name__ == "__main__":
    fails = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"pass {name}")
            except Exception as e:  # noqa: BLE001
                print(f"FAIL {name}: {e}")
                fails += 1
    sys.exit(1 if fails else 0)
