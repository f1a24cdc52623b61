"""Exact trace functions of quantum group intertwiners.

JSON documents use the same schema as the ``qchev`` command-line tool; the
helpers below accept and return plain dicts.
"""

import json

from ._qchev import (
    ConfigError,
    DomainError,
    Error,
    NoIntertwiner,
    ParseError,
    PoleError,
    TheoremViolation,
    a_operator_rank1_direct,
    a_operator_rank1_formula,
    canonical_scalar,
    cartan_matrix,
    classical_value,
    hom_dimension,
    module_dimension,
    quantum_integer,
    run_criterion,
    weyl_group_order,
)
from . import _qchev

__all__ = [
    "ConfigError",
    "DomainError",
    "Error",
    "NoIntertwiner",
    "ParseError",
    "PoleError",
    "TheoremViolation",
    "a_operator_rank1_direct",
    "a_operator_rank1_formula",
    "canonical_scalar",
    "cartan_matrix",
    "check",
    "classical_value",
    "decompose",
    "generate_traces",
    "hom_dimension",
    "module_dimension",
    "quantum_integer",
    "run_criterion",
    "weyl_group_order",
]


def generate_traces(cartan, v, mu):
    """Trace functions at the dominant weight ``mu`` for V = sum of L_w, w in ``v``."""
    return [json.loads(s) for s in _qchev.generate_traces(cartan, [list(w) for w in v], list(mu))]


def check(f):
    """Condition report for a torus function given as a dict."""
    return json.loads(_qchev.check(json.dumps(f)))


def decompose(f):
    """Decomposition of a torus function into trace functions."""
    return json.loads(_qchev.decompose(json.dumps(f)))
