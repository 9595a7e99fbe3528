import json

from ltlrl.cli import main
from ltlrl.mdp import load_model


def run(capsys, *argv):
    code = main(list(argv))
    assert code == 0
    return capsys.readouterr().out


class TestGenEval:
    def test_simple_pair_files_and_optimal(self, tmp_path, capsys):
        prefix = str(tmp_path / "sp")
        out = run(capsys, "gen", "simple", "--p", "0.1", "--out", prefix)
        m1, m2 = out.split()
        mdp, labeling = load_model(m1)
        assert mdp.states == ("g", "h", "q")
        value = run(capsys, "eval", "--model", m1, "--formula", "F h").strip()
        assert value == "1"
        value = run(capsys, "eval", "--model", m2, "--formula", "F h").strip()
        assert value == "1"

    def test_gridworld_file(self, tmp_path, capsys):
        path = str(tmp_path / "grid.json")
        run(capsys, "gen", "gridworld", "--p", "0.5", "--out", path)
        mdp, labeling = load_model(path)
        assert mdp.n_states == 25
        value = float(run(capsys, "eval", "--model", path, "--formula", "F goal"))
        assert abs(value - 1.0) <= 1e-9

    def test_counterexample_shape(self, tmp_path, capsys):
        prefix = str(tmp_path / "ce")
        out = run(capsys, "gen", "counterexample", "--p", "0.5",
                  "--shape", "0,1,0,1,1,2", "--out", prefix)
        m1, _ = out.split()
        mdp, _ = load_model(m1)
        assert mdp.states == ("g0", "h0", "q0", "q1")

    def test_witness_pair_generation(self, tmp_path, capsys):
        prefix = str(tmp_path / "wp")
        out = run(capsys, "gen", "witness-pair", "--p", "0.2",
                  "--formula", "G a", "--out", prefix)
        m1, m2 = out.split()
        v1 = float(run(capsys, "eval", "--model", m1, "--formula", "G a"))
        v2 = float(run(capsys, "eval", "--model", m2, "--formula", "G a"))
        assert abs(v1 - 1.0) <= 1e-9 and abs(v2 - 1.0) <= 1e-9


class TestWitnessDump:
    def test_witness_output(self, capsys):
        out = run(capsys, "witness", "G a")
        lines = out.splitlines()
        assert lines[0] == "uncommittable-accepting"
        assert lines[1].startswith("w_a:")
        assert len(lines) == 5

    def test_dump_kinds(self, capsys, tmp_path):
        out = run(capsys, "dump", "--formula", "F a", "--kind", "nba")
        assert out.startswith("nba states=")
        out = run(capsys, "dump", "--formula", "F a", "--kind", "dra")
        assert "pair 0" in out
        path = str(tmp_path / "dfa.txt")
        run(capsys, "dump", "--formula", "a & X a", "--kind", "dfa", "--out", path)
        assert open(path).read().startswith("horizon 2")


class TestBuildTrain:
    def test_build_product_document(self, tmp_path, capsys):
        prefix = str(tmp_path / "sp")
        m1 = run(capsys, "gen", "simple", "--p", "0.1", "--out", prefix).split()[0]
        out_path = str(tmp_path / "prod.json")
        run(capsys, "build", "--scheme", "multi-discount", "--model", m1,
            "--formula", "F h", "--out", out_path)
        doc = json.loads(open(out_path).read())
        assert doc["scheme"] == "multi-discount"
        assert all("discount" in t for t in doc["transitions"])

    def test_train_writes_policy_and_eval_reads_it(self, tmp_path, capsys):
        prefix = str(tmp_path / "sp")
        m1 = run(capsys, "gen", "simple", "--p", "0.1", "--out", prefix).split()[0]
        pol_path = str(tmp_path / "policy.json")
        out = run(capsys, "train", "--algo", "q", "--scheme", "multi-discount",
                  "--model", m1, "--formula", "F h", "--steps", "50000",
                  "--seed", "7", "--out", pol_path)
        assert pol_path in out
        value = float(run(capsys, "eval", "--model", m1, "--formula", "F h",
                          "--policy", pol_path))
        assert value >= 0.9


class TestSweepChain:
    def test_sweep_intercept_checkbound_plot(self, tmp_path, capsys):
        curves = str(tmp_path / "curves.csv")
        run(capsys, "sweep", "--env", "simple", "--scheme", "multi-discount",
            "--algo", "q", "--p-grid", "0.3", "--n-grid", "10,100,1000,5000",
            "--target-se", "0.05", "--master-seed", "3", "--out", curves)
        intercepts = str(tmp_path / "intercepts.csv")
        run(capsys, "intercept", "--in", curves, "--cutoff", "0.9",
            "--out", intercepts)
        out = run(capsys, "checkbound", "--in", intercepts, "--delta", "0.1")
        assert "lower bound respected" in out
        fig = str(tmp_path / "fig.svg")
        run(capsys, "plot", "--in", curves, "--out", fig)
        assert open(fig).read().startswith("<svg")
