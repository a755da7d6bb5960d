"""Lowering diagrams to tensor networks and contracting them."""

from .contract import ContractionStats, contract
from .dims import WireDims, default_cap, infer_dims
from .network import TensorNetwork, to_tensor_network
from .paths import ContractionPath, plan, plan_greedy, plan_optimal

__all__ = [
    "ContractionPath", "ContractionStats", "TensorNetwork", "WireDims",
    "contract", "default_cap", "infer_dims", "plan", "plan_greedy",
    "plan_optimal", "to_tensor_network",
]
