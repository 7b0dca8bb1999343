import json

import numpy as np
import pytest

from gtiframes import io as gio
from gtiframes.cli import main
from gtiframes.groups import InvalidInput, make_group
from gtiframes.systems import random_system, standard_basis_system


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def test_system_round_trip(rng):
    sys = random_system(make_group([2, 6]), rng)
    back = gio.read_system(json.loads(json.dumps(gio.write_system(sys))))
    assert back.group == sys.group
    for la, lb in zip(sys.layers, back.layers):
        assert la.translations.elements == lb.translations.elements
        for ga, gb in zip(la.generators, lb.generators):
            assert ga.weight == gb.weight
            np.testing.assert_array_equal(ga.values.values, gb.values.values)


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"group": {"factors": "4"}, "layers": []},
        {"group": {"factors": [4]}, "layers": [{"gamma": {"generators": [[1, 2]]}, "generators": []}]},
        {"group": {"factors": [4]}, "layers": [{"gamma": {"generators": []}, "generators": [{"values": [1, 2]}]}]},
        {"group": {"factors": [2]}, "layers": [{"gamma": {"generators": []}, "generators": [{"values": [1, "x"]}]}]},
        {"group": {"factors": [2]}, "layers": [{"gamma": {"generators": []}, "generators": [{"values": [1, 1], "weight": -1}]}]},
    ],
)
def test_malformed_system(data):
    with pytest.raises(InvalidInput):
        gio.read_system(data)


def test_read_elements():
    G = make_group([4])
    assert gio.read_elements(G, {"elements": [[5], [0]]}) == [(1,), (0,)]
    with pytest.raises(InvalidInput):
        gio.read_elements(G, [[1, 2]])


def test_verify_onb_pass_and_scaled_fail(capsys, descriptors):
    code, out = run_json(capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json")
    assert code == 0 and out["pass"] and out["residual"] == 0
    code, out = run_json(
        capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json", "--sys2", descriptors / "onb_times2.json"
    )
    assert code == 1 and not out["pass"] and out["residual"] == pytest.approx(1)
    code, out = run_json(capsys, "verify", "dual-brute", "--sys", descriptors / "onb.json")
    assert code == 0


def test_verify_other_kinds(capsys, descriptors):
    assert run(capsys, "verify", "parseval-talpha", "--sys", descriptors / "onb.json")[0] == 0
    assert run(capsys, "verify", "finite-gabor", "--sys", descriptors / "finite_gabor_12_3_4.json", "--tol", "1e-9")[0] == 0
    assert run(capsys, "verify", "janssen", "--sys", descriptors / "janssen_unit.json")[0] == 0
    assert run(capsys, "verify", "dual-talpha", "--sys", descriptors / "empty.json")[0] == 1


def test_verify_gabor(tmp_path, capsys):
    G = make_group([6])
    delta = [1, 0, 0, 0, 0, 0]
    data = {
        "group": {"factors": [6]},
        "lambda": {"generators": [[1]]},
        "gamma_hat": {"generators": [[1]]},
        "g": delta,
        "h": delta,
    }
    path = write(tmp_path, "gabor.json", data)
    assert run(capsys, "verify", "gabor-time", "--sys", path)[0] == 0
    assert run(capsys, "verify", "gabor-freq", "--sys", path)[0] == 0
    assert G.order == 6


def test_output_is_deterministic(capsys, descriptors):
    args = ("verify", "dual-talpha", "--sys", descriptors / "onb.json")
    first, second = run(capsys, *args)[1], run(capsys, *args)[1]
    assert first == second
    digest = json.loads(first)["provenance"]["input_digest"]
    _, other = run_json(capsys, "verify", "dual-talpha", "--sys", descriptors / "onb_times2.json")
    assert other["provenance"]["input_digest"] != digest


def test_tolerance_from_environment(capsys, descriptors, monkeypatch):
    monkeypatch.setenv("GTI_TOL", "2")
    code, out = run_json(
        capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json", "--sys2", descriptors / "onb_times2.json"
    )
    assert code == 0 and out["tol"] == 2
    monkeypatch.setenv("GTI_TOL", "abc")
    assert run(capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json")[0] == 2


def test_csv_and_gnuplot(capsys, descriptors):
    code, out = run(capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json", "--csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("alpha") and len(lines) == 9
    code, out = run(capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json", "--gnuplot-data")
    idx, res = out.strip().splitlines()[0].split()
    assert code == 0 and idx == "0" and float(res) == 0


def test_top_k(capsys, descriptors):
    _, out = run_json(capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json", "--top-k", "3")
    assert len(out["details"]["table"]) == 3


def test_errors_exit_2(tmp_path, capsys, descriptors):
    code, out = run_json(capsys, "verify", "dual-talpha", "--sys", tmp_path / "missing.json")
    assert code == 2 and out["error"]["type"] == "invalid-input"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", "dual-talpha", "--sys", bad)[0] == 2
    code, out = run_json(capsys, "verify", "nonsense", "--sys", bad)
    assert code == 2 and out["error"]["type"] == "usage"
    assert run(capsys, "repro", "no-such-example")[0] == 2
    # mismatched groups
    other = write(tmp_path, "z3.json", gio.write_system(standard_basis_system(make_group([3]))))
    assert run(capsys, "verify", "dual-talpha", "--sys", descriptors / "onb.json", "--sys2", other)[0] == 2


def test_conditions_command(capsys, descriptors):
    code, out = run_json(capsys, "conditions", "--sys", descriptors / "onb.json")
    assert code == 0 and out["cc"] == {"A": 1.0, "B": 1.0}
    code, out = run_json(capsys, "conditions", "--sys", descriptors / "onb.json", "--K", descriptors / "K_identity.json")
    assert code == 0
    code, out = run_json(capsys, "conditions", "--sys", descriptors / "ex_0402e_N2.json", "--jmax", "5")
    assert code == 0 and out["lic_discrete"]["terms"] == [1] * 5


@pytest.mark.parametrize(
    "argv",
    [
        ("repro", "ex-0402e", "--N", "3", "--jmax", "20"),
        ("repro", "ex-reordered-onb", "--N", "2", "--k", "1", "--jstar", "3"),
        ("repro", "ex-reordered-onb", "--N", "4", "--k", "0"),
        ("repro", "shannon-wavelet"),
        ("repro", "calderon-cont"),
        ("repro", "gabor-finite", "--seed", "3"),
        ("repro", "janssen-unit"),
    ],
)
def test_repro_examples_pass(capsys, argv):
    code, out = run_json(capsys, *argv)
    assert code == 0 and out["pass"]
    assert all({"quantity", "expected", "computed", "residual", "pass", "source"} <= set(r) for r in out["rows"])


def test_repro_reordered_onb_unsupported(capsys):
    assert run(capsys, "repro", "ex-reordered-onb", "--N", "3", "--k", "1", "--jstar", "2")[0] == 2


def test_repro_csv(capsys):
    code, out = run(capsys, "repro", "janssen-unit", "--csv")
    assert code == 0 and out.splitlines()[0].startswith("quantity")
