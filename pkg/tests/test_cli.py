import json

from cca.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_group_build(capsys):
    code, out, _ = run(capsys, ["group", "build", "z6"])
    assert code == 0
    d = json.loads(out)
    assert d["order"] == 6 and d["abelian"] is True
    assert d["labels"][0] == "0"


def test_cayley_json_and_dot(capsys):
    code, out, _ = run(capsys, ["cayley", "z6", "--set", "1,5"])
    assert code == 0
    d = json.loads(out)
    assert d["connection_set"] == ["1", "5"]
    code, out, _ = run(capsys, ["cayley", "z6", "--set", "1,5",
                                "--format", "dot"])
    assert code == 0
    assert out.startswith("graph cayley {")


def test_check_verdicts(capsys):
    code, out, _ = run(capsys, ["check", "z6", "--set", "1,5"])
    assert code == 0
    assert json.loads(out)["verdict"] == "CCA"
    code, out, _ = run(capsys,
                       ["check", "f21", "--set", "y^2,y^4,x*y^2,x^5*y^4"])
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "NonCCA"
    assert d["full_group_order"] == 168
    assert "witness_permutation" in d


def test_check_output_is_deterministic(capsys):
    argv = ["check", "f21", "--set", "y^2,y^4,x*y^2,x^5*y^4"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_decompose(capsys):
    code, out, _ = run(capsys,
                       ["decompose", "f21", "--set", "y^2,y^4,x*y^2,x^5*y^4"])
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "NonCCA"
    assert all(d["decomposition"]["properties"].values())
    assert all(d["reduction"]["checks"].values())


def test_reproduce(capsys):
    code, out, _ = run(capsys, ["reproduce", "thm45-sweep"])
    assert code == 0
    assert json.loads(out)["all_match"] is True


def test_usage_errors_exit_64(capsys):
    assert run(capsys, [])[0] == 64
    assert run(capsys, ["no-such-command"])[0] == 64
    assert run(capsys, ["check", "z6"])[0] == 64           # missing --set
    assert run(capsys, ["reproduce", "no-such-example"])[0] == 64
    code, _, err = run(capsys, ["enumerate", "agl17", "--mode", "full"])
    assert code == 64 and "--slow" in err


def test_precondition_errors_exit_2(capsys):
    # identity in the connection set
    code, _, err = run(capsys, ["cayley", "z6", "--set", "0,1,5"])
    assert code == 2 and "error" in err
    # not inverse-closed
    assert run(capsys, ["check", "z6", "--set", "1"])[0] == 2
    # disconnected graph
    assert run(capsys, ["check", "z6", "--set", "2,4"])[0] == 2
    # unparsable group spec
    assert run(capsys, ["group", "build", "zz9"])[0] == 2


def test_unknown_label_exit_2(capsys):
    code, _, err = run(capsys, ["check", "z6", "--set", "banana"])
    assert code == 2


def test_enumerate_f21(capsys):
    code, out, _ = run(capsys, ["enumerate", "f21", "--mode", "full"])
    assert code == 0
    d = json.loads(out)
    assert d["scanned"] == 1024
    assert len(d["non_cca_classes"]) == 1
    code, out, _ = run(capsys, ["enumerate", "f21", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "representative,orbit_size,autc_order"
