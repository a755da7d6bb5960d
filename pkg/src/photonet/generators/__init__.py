"""Generator catalog: ZX, ZW, linear optics and classical gates."""

from .classical import (
    Add, And, BinaryMatrix, BitControlledGate, BitControlledPhaseShift, ClassicalBox,
    ClassicalFunction, Copy, CtrlX, CtrlZ, Divide, Mod2, Multiply, Not, Or, PostselectBit,
    Sub, Threshold, Xor,
)
from .optics import (
    BBS, BS, MZI, TBS, DualRail, Gate, HadamardBS, InflatedGate, LOGate, Phase,
    PhaseShiftDR, ansatz, is_lo, lo_unitary, mzi_positions, second_quantize,
)
from .zw import Create, NumOp, PowerBox, Select, W, ZBox, annihilation, creation
from .zx import H, DenseBox, Hadamard, Spider, X, Z, qubit_gate

__all__ = [
    "Add", "And", "BinaryMatrix", "BitControlledGate", "BitControlledPhaseShift",
    "ClassicalBox", "ClassicalFunction", "Copy", "CtrlX", "CtrlZ", "Divide", "Mod2",
    "Multiply", "Not", "Or", "PostselectBit", "Sub", "Threshold", "Xor",
    "BBS", "BS", "MZI", "TBS", "DualRail", "Gate", "HadamardBS", "InflatedGate", "LOGate",
    "Phase", "PhaseShiftDR", "ansatz", "is_lo", "lo_unitary", "mzi_positions",
    "second_quantize", "Create", "NumOp", "PowerBox", "Select", "W", "ZBox",
    "annihilation", "creation", "H", "DenseBox", "Hadamard", "Spider", "X", "Z", "qubit_gate",
]
