"""Controlled dense coding on multipartite qubit and qutrit states."""
from .qcore import DomainError, GateMatrix, PureState, apply, check_unitary
from .protocol import (ProtocolOutcome, run_ghz, run_ghz4, run_ghz_type, run_ms, run_qutrit,
                       run_wn)

__all__ = [
    "DomainError", "GateMatrix", "PureState", "apply", "check_unitary", "ProtocolOutcome",
    "run_ghz", "run_ghz4", "run_ghz_type", "run_ms", "run_qutrit", "run_wn",
]
__version__ = "0.1.0"
