import json

import pytest

from hamnt import suites
from hamnt.cli import main
from hamnt.codes import Code, read_code, write_code
from hamnt.families import rep


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_family_and_invariants(tmp_path, capsys):
    path = tmp_path / "rep.code"
    assert run(capsys, "family", "rep", "--m", "3", "--q", "2", "-o", str(path))[0] == 0
    assert read_code(path) == rep(3, 2)
    code, out, _ = run(capsys, "invariants", str(path), "--json")
    report = json.loads(out)
    assert code == 0
    assert report["delta"] == 3 and report["rho"] == 1 and report["cell_sizes"] == [2, 6]


def test_family_perm_and_blowup(tmp_path, capsys):
    path = tmp_path / "s3.code"
    assert run(capsys, "family", "perm", "--q", "3", "--group", "(0 1 2);(0 1)", "-o", str(path))[0] == 0
    assert len(read_code(path)) == 6
    code, out, _ = run(capsys, "family", "blowup", "--p", "2", "-i", str(path))
    assert code == 0 and out.splitlines()[0] == "6 3"


def test_certify_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.code"
    write_code(rep(3, 2), good)
    code, out, _ = run(capsys, "certify", str(good), "--json")
    report = json.loads(out)
    assert code == 0 and report["verdict"] and report["group_order"] == 12
    assert report["classification"] == "Repetition(m=3, q=2)"

    bad = tmp_path / "bad.code"
    write_code(Code(3, 2, ((0, 0, 1),)), bad)
    assert run(capsys, "certify", str(bad))[0] == 1


def test_certify_full_ambient(tmp_path, capsys):
    path = tmp_path / "one.code"
    write_code(Code(2, 2, ((0, 0),)), path)
    code, out, _ = run(capsys, "certify", str(path), "--ambient", "full", "--json")
    assert code == 0 and json.loads(out)["group_order"] == 2


def test_parse_error_exit(tmp_path, capsys):
    path = tmp_path / "broken.code"
    path.write_text("2 2\n0,0\n0,5\n")
    code, _, err = run(capsys, "invariants", str(path))
    assert code == 2 and "line 3" in err


def test_capacity_error_exit(capsys, monkeypatch):
    monkeypatch.setenv("HAMNT_MAX_VERTICES", "4")
    code, _, err = run(capsys, "family", "whalf", "--m", "3")
    assert code == 2 and "capacity" in err


def test_usage_errors(capsys):
    assert run(capsys, "family", "inj", "--m", "3", "--q", "3")[0] == 2
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    with pytest.raises(SystemExit):
        main(["family"])


def test_verify_small_classification(capsys):
    code, out, _ = run(capsys, "verify", "thm-main2", "--m", "3", "--q", "2", "--json")
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert report["instances"][0]["details"]["by_case"] == suites.KNOWN_POSITIVES[(3, 2)]


def test_subgroups_listing(capsys):
    code, out, _ = run(capsys, "subgroups", "--q", "3", "--json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 6
    assert [r["order"] for r in rows] == [1, 2, 2, 2, 3, 6]


def test_failing_suite_dumps_replayable_counterexample(tmp_path, capsys, monkeypatch):
    # with the classifier disabled every positive is unclassified
    monkeypatch.setattr(suites, "matching_cases", lambda C: [])
    outdir = tmp_path / "ce"
    code, out, _ = run(capsys, "verify", "thm-main2", "--m", "2", "--q", "2", "--counterexamples", str(outdir))
    assert code == 1 and "FAIL" in out
    dumped = sorted(outdir.glob("*.code"))
    assert dumped
    code, out, _ = run(capsys, "certify", str(dumped[0]), "--json")
    assert code == 0 and json.loads(out)["verdict"]


def test_counterexample_round_trip(tmp_path):
    report = suites.SuiteReport("demo", {}, [suites.InstanceResult(
        {"k": 1}, False, {}, suites._counterexample(rep(2, 3), note="demo"))])
    outdir = tmp_path / "ce"
    outdir.mkdir()
    for k, inst in enumerate(report.failures()):
        (outdir / f"{report.name}-{k}.code").write_text(inst.counterexample["code"])
    assert read_code(outdir / "demo-0.code") == rep(2, 3)


def test_workers_do_not_change_results():
    one = suites.suite_one_regular(qs=[3, 4], workers=1).to_json(timing=False)
    two = suites.suite_one_regular(qs=[3, 4], workers=2).to_json(timing=False)
    assert one == two
