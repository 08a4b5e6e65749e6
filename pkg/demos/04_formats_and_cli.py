"""Round trip through QASM and JSON, then drive the command line tool."""
import json
import pathlib
import tempfile

from gmsynth import emit_json, parse, parse_json
from gmsynth.cli import main
from gmsynth.untargeted import compile_untargeted

src = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[4];
h q[0];
cx q[0],q[1];
t q[1];
cx q[1],q[2];
rz(3*pi/8) q[2];
cz q[2],q[3];
"""

print("== parse ==")
c = parse(src)
print("   qubits:", c.num_qubits, "gates:", len(c.gates))

print("== compile untargeted and round trip the JSON ==")
out, report = compile_untargeted(c)
text = emit_json(out)
print("   global gates:", report.global_gate_count, "bound:", report.bound)
print("   parse_json(emit_json(c)) == c:", parse_json(text) == out)

print("== command line ==")
with tempfile.TemporaryDirectory() as d:
    d = pathlib.Path(d)
    (d / "in.qasm").write_text(src)
    code = main(["compile", "--in", str(d / "in.qasm"), "--out", str(d / "out.json"),
                 "--report", str(d / "report.json")])
    print("   compile exit code:", code)
    print("   report:", json.loads((d / "report.json").read_text()))
    print("   verify exit code:", main(["verify", "--a", str(d / "in.qasm"), "--b", str(d / "out.json")]))
