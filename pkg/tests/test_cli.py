import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from searchlab.algorithms import SearchInstance
from searchlab.cli import EXIT_IO, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, main
from searchlab.reporting import (
    Table,
    build_trajectory,
    compare_trajectories,
    parse_csv,
    parse_json,
    to_csv,
    to_json,
)
from searchlab.subspace import W_STATE, bloch_coords, uniform_state

finite = st.floats(allow_nan=False, allow_infinity=False)


def run_cli(capsys, *argv):
    code = main(list(argv) + ["--reproducible"])
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_table(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == EXIT_OK, err
    return parse_csv(out)


# -- encodings ------------------------------------------------------------------------

@given(st.lists(st.tuples(finite, finite, st.integers(-10**9, 10**9)), min_size=1, max_size=20),
       finite)
def test_csv_roundtrip_exact(rows, footer):
    table = Table(["a", "b", "k"], rows, {"N": 64, "algorithm": "fg"}, {"slope": footer})
    back = parse_csv(to_csv(table))
    assert back.columns == table.columns
    assert back.rows == [tuple(r) for r in rows]
    assert back.metadata == table.metadata
    assert back.summary == table.summary


@given(st.lists(st.tuples(finite, st.integers(-1000, 1000)), min_size=1, max_size=20))
def test_json_roundtrip_exact(rows):
    table = Table(["v", "k"], rows, {"N": 8}, {"mean": 0.1})
    back = parse_json(to_json(table))
    assert back.rows == [tuple(r) for r in rows]
    assert back.metadata == table.metadata and back.summary == table.summary


def test_json_non_finite_encoded():
    text = to_json(Table(["x"], [(math.inf,), (math.nan,)]))
    json.loads(text)
    assert "Infinity" not in text and "NaN" not in text


def test_cli_csv_json_agree(capsys):
    a = csv_table(capsys, "gap", "--N", "32", "--samples", "11")
    code, out, _ = run_cli(capsys, "gap", "--N", "32", "--samples", "11", "--format", "json")
    b = parse_json(out)
    assert code == EXIT_OK
    assert a.rows == b.rows and a.summary == b.summary and a.metadata == b.metadata


# -- determinism and metadata -------------------------------------------------------------

@pytest.mark.parametrize("argv", [["trajectory", "--algorithm", "rc", "--N", "64"],
                                  ["norms"],
                                  ["fullspace", "--algorithm", "fenner", "--N", "32"]])
def test_reproducible_output_is_byte_identical(tmp_path, argv):
    paths = [tmp_path / f"out{i}.csv" for i in range(2)]
    for p in paths:
        assert main(argv + ["--reproducible", "-o", str(p)]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_metadata_header(capsys):
    table = csv_table(capsys, "trajectory", "--algorithm", "fenner", "--N", "16", "--eps", "0.5")
    meta = table.metadata
    assert meta["command"] == "trajectory" and meta["N"] == 16
    assert meta["eps"] == 0.5 and meta["algorithm"] == "fenner"
    assert "version" in meta and "timestamp" not in meta
    main(["gap", "--N", "16"])
    assert "# timestamp=" in capsys.readouterr().out


# -- command examples ---------------------------------------------------------------------

def test_trajectory_fg_leaves_real_plane(capsys):
    N = 1024
    table = csv_table(capsys, "trajectory", "--algorithm", "fg", "--N", str(N))
    assert len(table.rows) == 101
    assert np.max(np.abs(table.column("y"))) > 0.5
    start = [table.column(c)[0] for c in "xyz"]
    end = [table.column(c)[-1] for c in "xyz"]
    assert np.allclose(start, tuple(bloch_coords(uniform_state(N))), atol=1e-12)
    assert np.allclose(end, tuple(bloch_coords(W_STATE)), atol=1e-12)
    assert "path_length" in table.summary


@pytest.mark.parametrize("algorithm", ["grover", "fg", "rc", "rc-ground", "fenner",
                                       "walk-follower"])
def test_trajectory_columns(capsys, algorithm):
    table = csv_table(capsys, "trajectory", "--algorithm", algorithm, "--N", "16",
                      "--samples", "9")
    for col in ("index", "t", "re_aw", "im_aw", "re_ar", "im_ar", "x", "y", "z", "success_prob"):
        assert col in table.columns
    p = table.column("success_prob")
    assert np.all((p >= -1e-12) & (p <= 1 + 1e-12))


def test_gap_minimum(capsys):
    table = csv_table(capsys, "gap", "--N", "64")
    assert table.summary["min_g"] == pytest.approx(0.125, abs=1e-15)
    assert table.summary["argmin_s"] == pytest.approx(0.5, abs=1e-15)


def test_schedule_endpoints(capsys):
    table = csv_table(capsys, "schedule", "--N", "64", "--eps", "1")
    t, s = table.column("t"), table.column("s")
    assert (t[0], s[0]) == (0.0, 0.0)
    assert t[-1] == pytest.approx(table.summary["T"], rel=1e-15)
    assert s[-1] == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(t) > 0) and np.all(np.diff(s) > 0)


def test_norms_footer(capsys):
    table = csv_table(capsys, "norms", "--algorithm", "walk-follower")
    assert table.summary["slope"] == pytest.approx(-0.25, abs=0.01)
    assert len(table.rows) == 4


def test_equivalence_and_synth_commands(capsys):
    eq = csv_table(capsys, "equivalence", "--N", "64", "--samples", "50")
    assert max(abs(v) for v in eq.column(eq.columns[-1])) < 1
    syn = csv_table(capsys, "synth", "--N", "64", "--samples", "11")
    assert len(syn.rows) == 11


def test_fullspace_command(capsys):
    table = csv_table(capsys, "fullspace", "--algorithm", "fg", "--N", "32")
    assert table.column("success_prob")[-1] == pytest.approx(1.0, abs=1e-8)


# -- compare --------------------------------------------------------------------------------

def test_compare_rc_ground_against_fenner(capsys):
    table = csv_table(capsys, "compare", "--algorithm", "rc-ground", "--against", "fenner",
                      "--N", "64")
    assert table.summary["max_bloch_distance"] < 1e-6


def test_compare_grover_against_fenner(capsys):
    table = csv_table(capsys, "compare", "--algorithm", "grover", "--against", "fenner",
                      "--N", "64")
    assert table.summary["max_circle_distance"] < 1e-9
    assert table.summary["max_bloch_distance"] < 1e-9


def test_compare_fg_against_rc_ground(capsys):
    table = csv_table(capsys, "compare", "--algorithm", "fg", "--against", "rc-ground",
                      "--N", "1024", "--match", "fraction")
    assert table.summary["max_bloch_distance"] > 0.5
    assert table.summary["max_bloch_distance"] == pytest.approx(1.3919410907, abs=1e-6)


def test_compare_mismatched_sampling():
    inst = SearchInstance(16)
    with pytest.raises(ValueError):
        compare_trajectories(build_trajectory("fg", inst, 10), build_trajectory("fenner", inst, 11))


# -- exit codes -----------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [[], ["bogus"], ["gap", "--N", "1"], ["gap", "--samples", "1"],
                                  ["trajectory", "--algorithm", "nope"],
                                  ["gap", "--algorithm", "fenner"],
                                  ["norms", "--sizes", "100,1000"],
                                  ["gap", "--eps", "-1"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == EXIT_USAGE
    assert capsys.readouterr().err


def test_numerical_failure(capsys):
    assert main(["fullspace", "--algorithm", "fenner", "--N", "32", "--steps", "2"]) == EXIT_NUMERIC
    assert "numerical" in capsys.readouterr().err


def test_io_failure(tmp_path, capsys):
    target = tmp_path / "missing" / "out.csv"
    assert main(["gap", "--N", "8", "-o", str(target)]) == EXIT_IO
    assert capsys.readouterr().err
