"""Compile Clifford+Phases circuits to single-qubit gates and global
Molmer-Sorensen (GMS) entangling gates, targeted or untargeted."""

from .ir import (
    CNOT,
    CZ,
    GCZ,
    GMS,
    GZZ,
    Circuit,
    Gate,
    H,
    PauliExp,
    PauliString,
    Rz,
    S,
    Sdg,
    X,
    Y,
    Z,
    count_non_clifford,
    dagger,
    gms_count,
    is_clifford_angle,
    lower_to_gms,
)
from .qasm import ParseError, emit_json, parse, parse_json, to_qasm
from .report import SynthReport
from .sim import circuits_equivalent, equiv_up_to_phase, tableau_equiv, unitary_of
from .tableau import CliffordTableau, tableau_from_circuit
from .targeted import compile_targeted, synth_clifford, synth_cnot_circuit, synth_cz_layer
from .untargeted import compile_untargeted, schedule_parallel_gzz, synth_cnot_layers

__version__ = "0.1.0"
