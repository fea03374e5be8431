"""Structure files and JSON reports."""

from __future__ import annotations

import json

from .multivector import MultiVec, is_poisson, NotPoisson
from .scalars import format_scalar, parse_scalar, normalize
from .srmi import LinFrame, SrmiStructure


class StructureFileError(ValueError):
    pass


def _scalar(v):
    if isinstance(v, (int,)):
        return normalize(v)
    if isinstance(v, str):
        return normalize(parse_scalar(v))
    raise StructureFileError("scalars must be integers or exact strings, got %r" % (v,))


def _matrix(rows, n, what):
    if len(rows) != n or any(len(r) != n for r in rows):
        raise StructureFileError("%s must be %dx%d" % (what, n, n))
    return [[_scalar(v) for v in r] for r in rows]


class LoadedStructure:
    """What a structure file describes: the bivector, and the SRMI data if given."""

    def __init__(self, Lambda, srmi=None, source=None):
        self.Lambda = Lambda
        self.srmi = srmi
        self.source = source


def structure_from_record(rec):
    try:
        n = int(rec["n"])
    except (KeyError, TypeError, ValueError):
        raise StructureFileError("structure record needs an integer 'n'")
    if "alpha" in rec:
        if "frame" not in rec:
            raise StructureFileError("'alpha' requires 'frame'")
        alpha = _matrix(rec["alpha"], n, "alpha")
        frame = [_matrix(m, n, "frame matrix") for m in rec["frame"]]
        if len(frame) != n:
            raise StructureFileError("frame needs %d matrices" % n)
        S = SrmiStructure(LinFrame(frame), alpha)
        if S.Lambda.is_zero():
            raise NotPoisson("alpha gives the zero tensor")
        return LoadedStructure(S.Lambda, S)
    if "bivector" in rec:
        L = MultiVec.from_records(n, rec["bivector"], p=2)
        if L.is_zero():
            raise NotPoisson("zero bivector")
        if not is_poisson(L):
            raise NotPoisson("[Λ, Λ] ≠ 0")
        return LoadedStructure(L)
    raise StructureFileError("structure record needs 'alpha'+'frame' or 'bivector'")


def load_structure(path):
    with open(path) as fh:
        try:
            rec = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructureFileError("%s: %s" % (path, exc))
    out = structure_from_record(rec)
    out.source = "file:%s" % path
    return out


def structure_to_record(S):
    return {
        "n": S.n,
        "alpha": [[format_scalar(v) for v in row] for row in S.alpha],
        "frame": [[[format_scalar(v) for v in row] for row in a] for a in S.frame.mats],
    }


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def write_report(obj, path=None):
    text = dumps(obj)
    if path is None or path == "-":
        return text
    with open(path, "w") as fh:
        fh.write(text)
    return text
