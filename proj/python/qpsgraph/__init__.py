"""Graph algebra toolkit for quantum projective spaces."""

import json as _json

from . import _core
from ._core import (
    Graph,
    ParseError,
    SizeLimitError,
    basis_change_determinant,
    basis_change_matrix,
    graph_isomorphic,
    hereditary_saturated_sets,
    k_groups,
    projective_graph,
    quotient_graph,
    relation_residual,
    saturate,
    smith_normal_form,
    sphere_graph,
)

__all__ = [
    "Graph",
    "ParseError",
    "SizeLimitError",
    "basis_change_determinant",
    "basis_change_matrix",
    "graph_isomorphic",
    "hereditary_saturated_sets",
    "k_groups",
    "projective_graph",
    "quotient_graph",
    "relation_residual",
    "saturate",
    "smith_normal_form",
    "sphere_graph",
    "ktheory",
    "ideals",
    "quotient",
    "verify_splitting",
    "verify_kk",
    "numerics",
]


def ktheory(path):
    return _json.loads(_core.cmd_ktheory(str(path)))


def ideals(path):
    return _json.loads(_core.cmd_ideals(str(path)))


def quotient(path, drop):
    return _json.loads(_core.cmd_quotient(str(path), list(drop)))


def verify_splitting(n):
    return _json.loads(_core.cmd_verify_splitting(n))


def verify_kk(n, trace=False):
    return _json.loads(_core.cmd_verify_kk(n, trace))


def numerics(n, q=0.5, N=8, M=3, tol=1e-10):
    return _json.loads(_core.cmd_numerics(n, q, N, M, tol))
