import json

import pytest

from cantorkit import cli


@pytest.fixture
def demo_def(tmp_path):
    path = tmp_path / "demo.fn"
    path.write_text(
        "func phi3(f) = f(3)\n"
        "func sum2(f) = f(0) + f(1)\n"
        "func window(f) = f(8) + f(1)\n"
        "func tree3(f, n) = if n < 3 then 1 else 0\n"
        "func pred1(f, n) = if n >= f(0) then 0 else 1\n"
        "func lam(z, i) = z(2 * i)\n"
        "func usb2(x, z, k) = if z >= x(0) + x(1) then 0 else 1\n"
    )
    return str(path)


@pytest.fixture
def real_def(tmp_path):
    path = tmp_path / "reals.fn"
    path.write_text(
        "func sq(x) = x * x\n"
        "func hump(x) = x * (1 - x)\n"
        "func aff(x) = x + 1/2\n"
    )
    return str(path)


def run_json(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_fan_example(capsys, demo_def):
    code, body = run_json(capsys, ["fan", "--def", demo_def, "--name", "phi3",
                                   "--json"])
    assert code == 0
    assert body["result"]["modulus"] == 4
    assert body["result"]["certified"] is True
    assert set(body) == {"result", "certified", "depth", "work_units"}


def test_byte_identical_repeat_runs(capsys, demo_def):
    argv = ["fan", "--def", demo_def, "--name", "phi3"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    second = capsys.readouterr().out
    assert first == second


def test_uncertified_exit_code(capsys, demo_def):
    code, body = run_json(capsys, ["fan", "--def", demo_def, "--name", "window",
                                   "--m0", "5", "--max-depth", "10"])
    assert code == 2
    assert body["certified"] is False


def test_error_exit_code_missing_file(capsys):
    code = cli.run(["fan", "--def", "/nonexistent.fn", "--name", "x"])
    out = capsys.readouterr().out
    assert code == 1
    assert "error" in json.loads(out)


def test_error_exit_code_bad_dsl(capsys, tmp_path):
    path = tmp_path / "bad.fn"
    path.write_text("func broken(f) = g(0)\n")
    code = cli.run(["fan", "--def", str(path), "--name", "broken"])
    assert code == 1


def test_usage_exit_unknown_subcommand(capsys):
    assert cli.run(["frobnicate"]) == 64


def test_usage_exit_unknown_flag(capsys, demo_def):
    assert cli.run(["fan", "--def", demo_def, "--name", "phi3",
                    "--bogus"]) == 64


def test_psfan(capsys, demo_def):
    code, body = run_json(capsys, ["psfan", "--def", demo_def, "--name",
                                   "sum2"])
    assert code == 0
    assert body["result"]["value"] >= body["result"]["least_modulus"]
    assert body["result"]["certified"] is True


def test_sup(capsys, demo_def):
    code, body = run_json(capsys, ["sup", "--def", demo_def, "--name", "sum2"])
    assert code == 0
    assert body["result"] == {"value": 2, "witness": "11", "depth_used": 2}


def test_bar(capsys, demo_def):
    code, body = run_json(capsys, ["bar", "--def", demo_def, "--name", "tree3",
                                   "--cap", "8"])
    assert code == 0
    assert body["result"] == {"k": 3, "certified": True}


def test_qffan(capsys, demo_def):
    code, body = run_json(capsys, ["qffan", "--def", demo_def, "--name",
                                   "pred1", "--cap", "8"])
    assert code == 0
    assert body["result"] == {"k": 1, "certified": True}


def test_ubp_theta(capsys, demo_def):
    code, body = run_json(capsys, ["ubp", "--def", demo_def, "--name", "lam",
                                   "--k", "2", "--max-depth", "6"])
    assert code == 0
    assert body["result"]["modulus"] == 3


def test_ubp_argmax(capsys, demo_def):
    code, body = run_json(capsys, ["ubp", "--op", "argmax", "--def", demo_def,
                                   "--name", "sum2", "--y", "21@0",
                                   "--max-depth", "4"])
    assert code == 0
    assert body["result"]["value"] == 3
    assert body["result"]["witness"] == [2, 1]


def test_ubp_usb(capsys, demo_def):
    code, body = run_json(capsys, ["ubp", "--op", "usb", "--def", demo_def,
                                   "--name", "usb2", "--cap", "6"])
    assert code == 0
    assert body["result"]["bound"] == 2


def test_delta(capsys, demo_def):
    code, body = run_json(capsys, ["delta", "--def", demo_def, "--name",
                                   "phi3", "--point", "1", "--max-depth", "8"])
    assert code == 0
    assert body["result"]["modulus"] == 4


def test_assoc_export(capsys, demo_def):
    code, body = run_json(capsys, ["assoc", "--def", demo_def, "--name",
                                   "sum2", "--max-depth", "6",
                                   "--export-depth", "2"])
    assert code == 0
    table = body["result"]["table"]
    assert table[""] == 0
    assert table["11"] == 3
    assert table["10"] == 2


def test_ucmod(capsys, real_def):
    code, body = run_json(capsys, ["ucmod", "--def", real_def, "--name", "sq",
                                   "--k", "8"])
    assert code == 0
    assert body["result"]["n"] >= 16


def test_posbound(capsys, real_def):
    code, body = run_json(capsys, ["posbound", "--def", real_def, "--name",
                                   "aff", "--grid", "8"])
    assert code == 0
    assert body["result"] == {"denominator": 4, "bound": "1/4"}


def test_supreal(capsys, real_def):
    code, body = run_json(capsys, ["supreal", "--def", real_def, "--name",
                                   "hump", "--k", "6"])
    assert code == 0
    assert body["result"]["value"] == "1/2^2"


def test_integrate(capsys, real_def):
    code, body = run_json(capsys, ["integrate", "--def", real_def, "--name",
                                   "sq", "--k", "10"])
    assert code == 0
    num, exp = body["result"]["value"].split("/2^")
    assert abs(int(num) / (1 << int(exp)) - 1 / 3) <= 2 ** -10


def test_cover(capsys, tmp_path):
    path = tmp_path / "cover.json"
    path.write_text(json.dumps(
        [["-1/4", "1/4"], ["0/1", "1/2"], ["1/4", "3/4"], ["1/2", "1/1"],
         ["3/4", "5/4"]]
    ))
    code, body = run_json(capsys, ["cover", "--cover", str(path),
                                   "--resolution", "6"])
    assert code == 0
    assert body["result"]["indices"] == [0, 1, 2, 3, 4]


def test_cover_failure_is_error(capsys, tmp_path):
    path = tmp_path / "cover.json"
    path.write_text(json.dumps([["1/8", "2/1"]]))
    code = cli.run(["cover", "--cover", str(path), "--resolution", "4"])
    assert code == 1


def test_finbound(capsys, real_def):
    code, body = run_json(capsys, ["finbound", "--def", real_def, "--name",
                                   "aff", "--grid", "8"])
    assert code == 0
    assert body["result"]["bound"] == 2


def test_check_subset(capsys):
    code, body = run_json(capsys, ["check", "--suite", "tool:parser"])
    assert code == 0
    assert body["result"]["failed"] == 0
    assert body["result"]["passed"] >= 1


def test_check_deterministic_bytes(capsys):
    argv = ["check", "--suite", "bar:"]
    cli.run(argv)
    first = capsys.readouterr().out
    cli.run(argv)
    second = capsys.readouterr().out
    assert first == second
