import json
import subprocess
import sys

from efixlab.cli import EXIT_INFRA, EXIT_OK, EXIT_PARSE, EXIT_STRICT, main


def test_list(capsys):
    assert main(["list"]) == EXIT_OK
    assert "example_3_4" in capsys.readouterr().out.split()


def test_run_corpus_with_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["run", "example_3_4", "--json-out", str(out)]) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["schema_version"] == 1 and report["selector"]["guarantee"] == "BOYD_WONG"
    assert "BOYD_WONG" in capsys.readouterr().out


def test_quiet_and_strict(capsys):
    assert main(["run", "example_2_3", "--quiet"]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert main(["run", "example_2_3", "--quiet", "--strict"]) == EXIT_STRICT


def test_overrides_reach_the_report(tmp_path):
    out = tmp_path / "r.json"
    main(["run", "affine_oracle", "--quiet", "--n-max", "5", "--tol", "1e-6", "--json-out", str(out)])
    report = json.loads(out.read_text())
    assert report["contraction"]["monotone_iterate"]["n_range"] == [1, 5]


def test_check_and_errors(tmp_path, capsys):
    good = tmp_path / "good.yaml"
    good.write_text("name: g\ndomain: {lo: 0, hi: 1}\nmap: x/2\ndistance: euclidean\n"
                    "hypothesis: {boyd_wong: {psi: t/2}}\n")
    assert main(["check", str(good)]) == EXIT_OK
    bad = tmp_path / "bad.yaml"
    bad.write_text(good.read_text().replace("x/2", "x/+"))
    assert main(["check", str(bad)]) == EXIT_PARSE
    assert "line 3" in capsys.readouterr().err
    assert main(["run", "no_such_scenario"]) == EXIT_INFRA
    assert main(["check", str(tmp_path / "missing.yaml")]) == EXIT_INFRA


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "efixlab", "list"], capture_output=True, text=True)
    assert done.returncode == 0 and "affine_oracle" in done.stdout
