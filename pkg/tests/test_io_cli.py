import json

import numpy as np
import pytest

from framepot import io
from framepot.cli import main, regime_rows
from framepot.core import Configuration, NonUnitRowError, gram, lifted_etf, random_configuration


def run_json(capsys, argv):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- io ---------------------------------------------------------------------

@pytest.mark.parametrize("suffix", [".json", ".csv"])
def test_configuration_round_trip(tmp_path, rng, suffix):
    X = random_configuration(6, 4, rng)
    path = io.save_configuration(X, tmp_path / f"x{suffix}")
    Y = io.load_configuration(path)
    np.testing.assert_array_equal(X.vectors, Y.vectors)


def test_gram_round_trip(tmp_path):
    G = gram(lifted_etf(4, 3))
    H = io.load_gram(io.save_gram(G, tmp_path / "g.json"))
    np.testing.assert_array_equal(G.entries, H.entries)


def test_csv_comments_skipped(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("# an orthonormal pair\n1,0\n0,1\n")
    assert io.load_configuration(path).n == 2


def test_load_rejects_non_unit(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"d": 2, "n": 2, "vectors": [[1, 0], [0, 0.9]]}))
    with pytest.raises(NonUnitRowError) as info:
        io.load_configuration(path)
    assert info.value.index == 1


@pytest.mark.parametrize("text", ["{not json", "[1, 2]", '{"vectors": [[1, 0], [1]]}',
                                  '{"d": 3, "vectors": [[1, 0]]}'])
def test_load_rejects_malformed(tmp_path, text):
    path = tmp_path / "m.json"
    path.write_text(text)
    with pytest.raises(io.FormatError):
        io.load_configuration(path)


# -- cli --------------------------------------------------------------------

def test_eval_lifted_etf(tmp_path, capsys):
    path = io.save_configuration(lifted_etf(2, 2), tmp_path / "l.json")
    code, rec = run_json(capsys, ["eval", str(path), "--p", "2"])
    assert code == 0
    assert rec["command"] == "eval"
    assert set(rec) == {"command", "params", "timestamp", "version", "results"}
    assert rec["results"]["frame_potential"] == pytest.approx(1.5, abs=1e-12)
    assert rec["results"]["coherence"] == pytest.approx(0.5, abs=1e-12)


def test_eval_orthonormal_basis(tmp_path, capsys):
    path = io.save_configuration(Configuration(np.eye(3)), tmp_path / "e.csv")
    code, rec = run_json(capsys, ["eval", str(path), "--p", "1.3"])
    assert code == 0 and rec["results"]["frame_potential"] == 0.0


def test_eval_text_output(tmp_path, capsys):
    path = io.save_configuration(lifted_etf(3, 1), tmp_path / "l.json")
    assert main(["eval", str(path), "--p", "1"]) == 0
    out = capsys.readouterr().out
    assert "frame potential  2" in out


def test_eval_non_unit_row_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vectors": [[1, 0], [0, 0.9]]}))
    assert main(["eval", str(path), "--p", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_eval_missing_file(tmp_path):
    assert main(["eval", str(tmp_path / "nope.json"), "--p", "1"]) == 2


def test_construct_lifted_etf(tmp_path, capsys):
    out = tmp_path / "c.json"
    code, rec = run_json(capsys, ["construct", "lifted-etf", "--d", "4", "--k", "2",
                                  "--out", str(out)])
    assert code == 0
    V = np.array(rec["results"]["vectors"])
    np.testing.assert_allclose(V, lifted_etf(4, 2).vectors)
    np.testing.assert_array_equal(io.load_configuration(out).vectors, V)


def test_construct_errors(capsys):
    assert main(["construct", "lifted-etf", "--d", "4", "--k", "5"]) == 2
    assert main(["construct", "lifted-etf", "--d", "4"]) == 2
    assert main(["construct", "onb-plus-repeats", "--d", "3"]) == 2


def test_construct_onb_plus_repeats(capsys):
    code, rec = run_json(capsys, ["construct", "onb-plus-repeats", "--d", "4", "--m", "2"])
    V = np.array(rec["results"]["vectors"])
    assert code == 0 and V.shape == (6, 4)
    G = np.abs(V @ V.T)
    off = G[~np.eye(6, dtype=bool)]
    # one triple of repeated vectors, all other pairs orthogonal
    assert np.sum(np.isclose(off, 1.0)) == 6
    assert np.sum(np.isclose(off, 0.0)) == 24


def test_construct_simplex_etf(capsys):
    code, rec = run_json(capsys, ["construct", "simplex-etf", "--d", "3"])
    V = np.array(rec["results"]["vectors"])
    G = V @ V.T
    np.testing.assert_allclose(G[~np.eye(4, dtype=bool)], -1 / 3, atol=1e-14)


def test_regimes_table(capsys):
    code, rec = run_json(capsys, ["regimes", "--d", "5"])
    rows = rec["results"]
    assert code == 0
    assert sum(r["kind"] == "interior" for r in rows) == 5
    assert sum(r["kind"] == "boundary" for r in rows) == 4
    assert rows[4]["p_interval"][1] == 2.0
    assert rows[0]["p_interval"][0] == 0.0
    assert rows[0]["alpha_interval"][1] == "inf"


def test_regime_rows_are_contiguous():
    rows = [r for r in regime_rows(6) if r["kind"] == "interior"]
    for a, b in zip(rows, rows[1:]):
        assert a["p_interval"][1] == b["p_interval"][0]


def test_regimes_rejects_small_d():
    assert main(["regimes", "--d", "1"]) == 2


def test_bounds_sidelnikov_at_even_p(capsys):
    _, rec = run_json(capsys, ["bounds", "--d", "3", "--n", "6", "--p", "2"])
    assert "sidelnikov" in {r["bound_name"] for r in rec["results"]}


def test_bounds_command(capsys):
    code, rec = run_json(capsys, ["bounds", "--d", "3", "--p", "1.5"])
    assert code == 0
    names = {r["bound_name"] for r in rec["results"]}
    assert {"ehler_okoudjou", "glazyrin", "theorem_min"} <= names
    assert "sidelnikov" not in names
    fams = [r for r in rec["results"] if r["bound_name"] is None]
    assert [r["k"] for r in fams] == [1, 2, 3]


def test_lemma_m_json(capsys):
    code, rec = run_json(capsys, ["lemma-m", "--d", "3", "--alpha", "1.5", "--grid-n", "60",
                                  "--restarts", "4"])
    res = rec["results"]
    assert code == 0 and res["agree"]
    assert set(res) == {"d", "alpha", "analytic", "brute", "agree"}
    assert len(res["brute"]["point"]) == 4
    assert abs(res["analytic"]["value"] - res["brute"]["value"]) <= 1e-8


def test_lemma_m_threshold_has_two_points(capsys):
    code, rec = run_json(capsys, ["lemma-m", "--d", "3", "--k", "1", "--grid-n", "60",
                                  "--restarts", "4"])
    assert code == 0 and len(rec["results"]["analytic"]["points"]) == 2


def test_lemma_m_input_errors():
    assert main(["lemma-m", "--d", "3"]) == 2
    assert main(["lemma-m", "--d", "3", "--alpha", "0.9"]) == 2
    assert main(["lemma-m", "--d", "3", "--k", "3"]) == 2
    assert main(["lemma-m", "--d", "3", "--alpha", "1.5", "--grid-n", "10"]) == 2


@pytest.mark.parametrize("argv", [
    ["regimes", "--d", "4"],
    ["bounds", "--d", "4", "--p", "0.7"],
    ["construct", "lifted-etf", "--d", "5", "--k", "3"],
    ["lemma-m", "--d", "2", "--alpha", "2.5", "--grid-n", "50", "--restarts", "3"],
])
def test_deterministic_commands_reproduce(capsys, argv):
    _, a = run_json(capsys, argv)
    _, b = run_json(capsys, argv)
    assert a["results"] == b["results"]


def test_minimize_command(tmp_path, capsys):
    cfg = tmp_path / "best.json"
    rep = tmp_path / "rep.json"
    code = main(["minimize", "--d", "2", "--p", "1.0", "--restarts", "20",
                 "--config-out", str(cfg), "--json-out", str(rep)])
    assert code == 0
    assert "classified   1" in capsys.readouterr().out
    assert io.load_configuration(cfg).n == 3
    assert json.loads(rep.read_text())["rel_gap"] <= 1e-6


def test_minimize_rejects_p_two():
    assert main(["minimize", "--d", "3", "--p", "2"]) == 2


def test_verify_small(capsys):
    code, rec = run_json(capsys, ["verify", "--d", "2", "--samples", "1", "--restarts", "30"])
    summary = rec["results"]["summary"]
    assert code == 0 and summary["passed"]
    kinds = [c["kind"] for c in rec["results"]["cells"]]
    assert kinds.count("boundary") == 1 and kinds.count("interior") == 2


def test_verify_sabotage_fails(capsys):
    code = main(["verify", "--d", "2", "--samples", "1", "--restarts", "10", "--no-boundaries",
                 "--sabotage"])
    assert code == 3
    assert "FAIL" in capsys.readouterr().out
