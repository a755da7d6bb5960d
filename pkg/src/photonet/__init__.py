"""Typed string diagrams for hybrid photonic, qubit and classical circuits."""

from .channels import (
    BitFlipError, Channel, DephasingError, Discard, Encode, Measure,
    NumberResolvingMeasurement, PhotonLoss, PhotonThresholdMeasurement, XMeasurementDR,
    ZMeasurementDR, double, fidelity, inflate,
)
from .diagram import Box, Diagram, DiagramSum, Id, Scalar, Swap
from .errors import *  # noqa: F401,F403
from .evaluate import EvalResult, ProbDist, eval_channel, evaluate
from .fusion import FusionTypeI, FusionTypeII
from .generators import *  # noqa: F401,F403
from .symbols import Symbol
from .types import Ty, WireType, bit, mode, qmode, qubit

__version__ = "0.1.0"
