import json

import pytest

from gmsynth.cli import main
from gmsynth.qasm import parse_json
from gmsynth.ir import gms_count

T_CIRCUIT = "OPENQASM 2.0;\nqreg q[3];\nh q[0];\ncx q[0],q[1];\nrz(pi/4) q[1];\ncz q[1],q[2];\n"


@pytest.fixture
def qasm_file(tmp_path):
    p = tmp_path / "in.qasm"
    p.write_text(T_CIRCUIT)
    return p


def test_compile_verify(qasm_file, tmp_path):
    out, rep = tmp_path / "out.json", tmp_path / "rep.json"
    code = main(["compile", "--in", str(qasm_file), "--out", str(out), "--report", str(rep)])
    assert code == 0
    report = json.loads(rep.read_text())
    assert report["bound"] == 11 and report["bound_met"] and report["verified"] == "yes"
    assert report["global_gate_count"] == gms_count(parse_json(out.read_text()))


def test_compile_deterministic(qasm_file, tmp_path):
    outs = []
    for k in range(2):
        out, rep = tmp_path / f"o{k}.json", tmp_path / f"r{k}.json"
        main(["compile", "--in", str(qasm_file), "--out", str(out), "--report", str(rep), "--mode", "untargeted"])
        outs.append((out.read_bytes(), rep.read_bytes()))
    assert outs[0] == outs[1]


def test_compile_native_gate_set(qasm_file, tmp_path):
    out = tmp_path / "out.json"
    assert main(["compile", "--in", str(qasm_file), "--out", str(out), "--gate-set", "native"]) == 0
    kinds = {g.kind for g in parse_json(out.read_text()).gates}
    assert "gms" not in kinds


def test_compile_large_skips_verify(tmp_path):
    p = tmp_path / "big.qasm"
    p.write_text("qreg q[14];\nh q[0];\ncx q[0],q[13];\nrz(pi/4) q[13];\n")
    rep = tmp_path / "rep.json"
    assert main(["compile", "--in", str(p), "--out", str(tmp_path / "o.json"), "--report", str(rep)]) == 0
    assert json.loads(rep.read_text())["verified"] == "skipped"


def test_malformed_input(tmp_path, capsys):
    p = tmp_path / "bad.qasm"
    p.write_text("qreg q[2];\nccx q[0],q[1],q[1];\n")
    assert main(["compile", "--in", str(p)]) == 1
    err = capsys.readouterr().err
    assert "2:1:" in err and "unsupported_gate" in err


def test_missing_file(tmp_path):
    assert main(["stats", "--in", str(tmp_path / "nope.qasm")]) == 1


def test_stats(tmp_path, capsys):
    p = tmp_path / "c.qasm"
    p.write_text("qreg q[2];\nrz(pi/4) q[0];\nrz(pi/4) q[1];\nrz(pi/4) q[0];\ncx q[0],q[1];\n")
    assert main(["stats", "--in", str(p)]) == 0
    s = json.loads(capsys.readouterr().out)
    assert s["N"] == 3 and s["n"] == 2 and s["histogram"]["rz"] == 3 and s["depth"] == 3
    p.write_text("qreg q[2];\n")
    main(["stats", "--in", str(p)])
    s = json.loads(capsys.readouterr().out)
    assert s["N"] == 0 and not any(s["histogram"].values())


def test_verify(qasm_file, tmp_path):
    out = tmp_path / "out.json"
    main(["compile", "--in", str(qasm_file), "--out", str(out)])
    assert main(["verify", "--a", str(qasm_file), "--b", str(out)]) == 0
    extra = tmp_path / "extra.qasm"
    extra.write_text(T_CIRCUIT + "s q[0];\n")
    assert main(["verify", "--a", str(qasm_file), "--b", str(extra)]) == 2
    small = tmp_path / "small.qasm"
    small.write_text("qreg q[2];\n")
    assert main(["verify", "--a", str(qasm_file), "--b", str(small)]) == 1


def test_verify_large_clifford_uses_tableau(tmp_path):
    body = "".join(f"h q[{i}];\ncx q[{i}],q[{i + 1}];\n" for i in range(19))
    a, b = tmp_path / "a.qasm", tmp_path / "b.qasm"
    a.write_text("qreg q[20];\n" + body)
    b.write_text("qreg q[20];\n" + body + "z q[3];\nz q[3];\n")
    assert main(["verify", "--a", str(a), "--b", str(b)]) == 0
