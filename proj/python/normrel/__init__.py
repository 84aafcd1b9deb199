"""Bourn-normal monomorphisms and internal equivalence relations on finite
groups, groupoids and groups-with-empty-algebra.

Subsets are given as generators and closed to a subobject before use.
"""

import json
from pathlib import Path

from ._normrel import (
    DEFAULT_MAX_CARRIER,
    Error,
    ParseError,
    Relation,
    Structure,
    close,
    codiscrete,
    congruences,
    diagonal,
    generated_congruence,
    in_n0,
    is_bourn_normal,
    is_bourn_normal_to,
    join,
    load,
    load_file,
    meet,
    nor,
    parse_relation,
    rel,
    save,
    validate,
    witnesses,
)
from ._normrel import verify as _verify


def verify(paths, max_carrier=DEFAULT_MAX_CARRIER):
    """Run every suite on the given files or directories of *.alg files."""
    if isinstance(paths, (str, Path)):
        paths = [paths]
    files = []
    for p in map(Path, paths):
        files += sorted(p.glob("*.alg")) if p.is_dir() else [p]
    return json.loads(_verify([str(f) for f in files], max_carrier))


__all__ = [
    "DEFAULT_MAX_CARRIER", "Error", "ParseError", "Relation", "Structure", "close",
    "codiscrete", "congruences", "diagonal", "generated_congruence", "in_n0",
    "is_bourn_normal", "is_bourn_normal_to", "join", "load", "load_file", "meet", "nor",
    "parse_relation", "rel", "save", "validate", "verify", "witnesses",
]
