import json
import subprocess
import sys

import pytest

from treespanner import cli
from treespanner.graph import graph6_encode, serialize_graph
from treespanner.spanners import ClassStretchResult, Rule
from treespanner.transforms import complete_graph, cycle_graph, cycle_power, spider

NET = spider(3, thin=True)


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def graph_file(tmp_path):
    def write(g, fmt="edge-list"):
        p = tmp_path / f"g{fmt}.txt"
        p.write_text(serialize_graph(g, fmt))
        return str(p)

    return write


def payload(out):
    doc = json.loads(out)
    assert doc["schema_version"] == cli.SCHEMA_VERSION
    return doc


class TestRecognize:
    def test_net(self, capsys, graph_file):
        code, out, _ = run(capsys, ["recognize", graph_file(NET), "--json"])
        p = payload(out)["payload"]
        assert code == 0
        assert (p["split"], p["cograph"], p["spider"], p["p4_sparse"], p["zero_two"]) == (True, False, "thin", True, False)

    def test_c4(self, capsys, graph_file):
        p = payload(run(capsys, ["recognize", graph_file(cycle_graph(4)), "--json"])[1])["payload"]
        assert (p["split"], p["cograph"], p["zero_two"]) == (False, True, True)

    def test_c5(self, capsys, graph_file):
        p = payload(run(capsys, ["recognize", graph_file(cycle_graph(5)), "--json"])[1])["payload"]
        assert (p["p4_tidy"], p["p4_sparse"], p["zero_two"]) == (True, False, False)

    def test_human_output(self, capsys, graph_file):
        code, out, _ = run(capsys, ["recognize", graph_file(NET)])
        assert code == 0 and "spider: thin" in out


class TestStretch:
    @pytest.mark.parametrize("g,want", [(cycle_power(6, 2), 3), (spider(3, thin=False), 3), (complete_graph(4), 2)])
    def test_values(self, capsys, graph_file, g, want):
        doc = payload(run(capsys, ["stretch", graph_file(g), "--json", "--verify-oracle"])[1])
        assert doc["status"] == "ok"
        assert doc["payload"]["sigma"] == want and doc["payload"]["verdict"] == "AGREE"
        assert set(doc["timing"]) >= {"parse", "fast_path", "oracle"}

    def test_graph6_stdin(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["--format", "graph6", "stretch", "--json"], graph6_encode(cycle_graph(5)), monkeypatch)
        assert code == 0 and payload(out)["payload"]["sigma"] == 4

    def test_t_flag(self, capsys, graph_file):
        doc = payload(run(capsys, ["stretch", graph_file(cycle_graph(4)), "--t", "2", "--json"])[1])
        assert doc["payload"]["t_admissible"] is False

    def test_discrepancies_flagged(self, capsys, graph_file):
        doc = payload(run(capsys, ["stretch", graph_file(NET), "--class", "inflation", "--verify-oracle", "--json"])[1])
        assert doc["payload"]["verdict"] == "DISAGREE-EXPECTED"
        doc = payload(run(capsys, ["stretch", graph_file(cycle_power(6, 2)), "--class", "zero_l",
                                   "--verify-oracle", "--json"])[1])
        assert doc["payload"]["verdict"] == "DISAGREE-EXPECTED"

    def test_disconnected_refused(self, capsys, monkeypatch):
        code, out, _ = run(capsys, ["stretch", "--json"], "4 2\n0 1\n2 3\n", monkeypatch)
        assert code == 2 and payload(out)["status"] == "refused"

    def test_parse_error(self, capsys, monkeypatch):
        code, _, err = run(capsys, ["stretch"], "3 3\n0 1\n1 2\n0 1\n", monkeypatch)
        assert code == 1 and "duplicate" in err

    def test_budget(self, capsys, graph_file):
        code, out, _ = run(capsys, ["stretch", graph_file(complete_graph(7)), "--verify-oracle",
                                    "--budget", "10", "--json"])
        assert code == 1 and payload(out)["status"] == "error"


class TestVerdict:
    def _res(self, sigma, lo, hi, rule):
        return ClassStretchResult("x", sigma, lo, hi, None, rule)

    def test_rules(self):
        assert cli.verdict(self._res(3, 3, 3, Rule.CYCLE), 3) == "AGREE"
        assert cli.verdict(self._res(3, 3, 3, Rule.CYCLE), 2) == "DISAGREE"
        assert cli.verdict(self._res(None, 2, 3, Rule.INFLATION_UPPER), 2) == "DISAGREE-EXPECTED"
        assert cli.verdict(self._res(None, 2, 3, Rule.CHARACT_UPPER_FAIL), 3) == "DISAGREE-EXPECTED"
        assert cli.verdict(self._res(None, 2, 5, Rule.CHARACT_UPPER_FAIL), 4) == "AGREE"
        assert cli.verdict(self._res(None, 2, 3, Rule.LOWER_UPPER_INTERVAL), 4) == "DISAGREE"

    def test_regression_corpus_never_disagrees(self, capsys, graph_file):
        from treespanner.corpus import connected_upto

        for g in list(connected_upto(6, start=3)):
            for cls in ("auto", "zero_l"):
                doc = payload(run(capsys, ["stretch", graph_file(g), "--class", cls, "--verify-oracle", "--json"])[1])
                assert doc["payload"]["verdict"] in ("AGREE", "DISAGREE-EXPECTED"), g.edges()


class TestOtherCommands:
    def test_spanner(self, capsys, graph_file):
        code, out, _ = run(capsys, ["spanner", graph_file(NET)])
        assert code == 0 and out.splitlines()[0] == "6 5"
        doc = payload(run(capsys, ["spanner", graph_file(cycle_graph(4)), "--t", "2", "--json"])[1])
        assert doc["payload"]["admissible"] is False

    def test_oracle(self, capsys, graph_file):
        doc = payload(run(capsys, ["oracle", graph_file(cycle_graph(5)), "--json"])[1])
        assert doc["payload"]["sigma"] == 4 and doc["payload"]["spanning_trees"] == 5

    def test_inflate_subjacent(self, capsys, graph_file):
        code, out, _ = run(capsys, ["inflate", graph_file(cycle_graph(3))])
        assert out.splitlines()[0] == "6 6"
        doc = payload(run(capsys, ["subjacent", graph_file(cycle_graph(6)), "--cover", "0 1;2 3;4 5", "--json"])[1])
        assert doc["payload"]["n"] == 3 and doc["payload"]["m"] == 3

    def test_line_and_subdivide(self, capsys, graph_file):
        assert run(capsys, ["linegraph", graph_file(cycle_graph(5))])[1].splitlines()[0] == "5 5"
        assert run(capsys, ["subdivide", graph_file(complete_graph(3))])[1].splitlines()[0] == "6 6"

    def test_gen(self, capsys):
        a = run(capsys, ["gen", "split", "clique=4", "stable=5", "--seed", "3"])[1]
        b = run(capsys, ["gen", "split", "clique=4", "stable=5", "--seed", "3"])[1]
        assert a == b
        code, _, err = run(capsys, ["gen", "cograph", "n=6", "--count", "3"])
        assert code == 1 and "seed" in err
        out = run(capsys, ["gen", "thin_spider", "k=3", "r=K2", "--no-relabel"])[1]
        assert out.splitlines()[0] == "8 13"  # 3 in K, 3 legs, 1 in R, 6 from R to K

    def test_bench(self, capsys):
        doc = payload(run(capsys, ["bench", "exhaustive", "--class", "split", "--max-n", "5", "--json"])[1])
        assert all(r["agreement"] == 1.0 for r in doc["payload"]["rows"])
        doc = payload(run(capsys, ["bench", "inflation-cycles", "--max-l", "4", "--json"])[1])
        assert [r["sigma"] for r in doc["payload"]["rows"]] == [5, 7]

    def test_gen_missing_parameter(self, capsys):
        code, _, err = run(capsys, ["gen", "split", "clique=3"])
        assert code == 1 and "stable" in err

    def test_console_script(self, tmp_path):
        p = tmp_path / "c4.txt"
        p.write_text(serialize_graph(cycle_graph(4)))
        r = subprocess.run([sys.executable, "-m", "treespanner.cli", "stretch", str(p), "--json"],
                           capture_output=True, text=True, check=False)
        assert r.returncode == 0 and json.loads(r.stdout)["payload"]["sigma"] == 3
