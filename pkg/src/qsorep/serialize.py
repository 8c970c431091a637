"""JSON/CSV export of generator matrices and reports.

JSON layout::

    {"n": 3, "kind": "classical", "q": 2.0, "weight": ["1"], "signs": null,
     "flavor": "classical", "basis": [[[2], [-2]], ...],
     "generators": {"I_2_1": [[[re, im], ...], ...], ...}}

Basis rows are doubled integers, top row first.  Floats go through ``repr``
and therefore round-trip bit-exactly.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .patterns import Basis, Flavor, GTPattern, HighestWeight
from .qnum import QParam
from .repmatrix import Kind, RepMatrices, RepSpec, SignVector


def generator_key(k: int) -> str:
    return f"I_{k}_{k - 1}"


def _parse_generator_key(key: str) -> int:
    parts = key.split("_")
    if len(parts) != 3 or parts[0] != "I" or int(parts[2]) != int(parts[1]) - 1:
        raise ValueError(f"bad generator key {key!r}")
    return int(parts[1])


def rep_to_json(rep: RepMatrices) -> dict:
    spec = rep.spec
    out = {
        "n": rep.n,
        "kind": spec.kind.value if spec else None,
        "q": float(spec.q.q) if spec else None,
        "weight": spec.weight.labels() if spec else None,
        "signs": list(spec.signs.values) if spec and spec.signs else None,
        "flavor": rep.basis[0].flavor.value if len(rep.basis) else None,
        "basis": [[list(r) for r in p.rows] for p in rep.basis],
        "generators": {},
    }
    for k in sorted(rep.generators):
        m = np.asarray(rep.generators[k], dtype=complex)
        out["generators"][generator_key(k)] = [
            [[float(z.real), float(z.imag)] for z in row] for row in m
        ]
    return out


def rep_from_json(data: dict) -> RepMatrices:
    """Inverse of :func:`rep_to_json`.

    The spec is rebuilt without re-validating tableaux so that edited files
    can still be checked.
    """
    flavor = Flavor(data.get("flavor") or "classical")
    basis = Basis(GTPattern(tuple(tuple(int(x) for x in r) for r in rows), flavor) for rows in data["basis"])
    gens = {}
    for key, rows in data["generators"].items():
        arr = np.array(rows, dtype=float)
        gens[_parse_generator_key(key)] = arr[..., 0] + 1j * arr[..., 1]
    spec = None
    if data.get("q") is not None and data.get("kind") is not None:
        kind = Kind.parse(data["kind"])
        wflavor = Flavor.NONCLASSICAL if kind in (Kind.NONCLASSICAL, Kind.ONEDIM) else Flavor.CLASSICAL
        weight = HighestWeight.from_values(int(data["n"]), data["weight"], wflavor)
        signs = SignVector(tuple(data["signs"])) if data.get("signs") else None
        q = QParam(float(data["q"]))
        try:
            spec = RepSpec(weight, q, kind, signs)
        except ValueError:
            spec = _LooseSpec(q, kind, weight, signs)
    return RepMatrices(gens, basis, spec)


class _LooseSpec:
    """Spec fields for a file whose metadata no longer validates."""

    def __init__(self, q, kind, weight, signs):
        self.q, self.kind, self.weight, self.signs = q, kind, weight, signs


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, obj, indent: int | None = 1) -> None:
    write_atomic(path, json.dumps(obj, indent=indent) + "\n")


def read_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _fmt_complex(z: complex) -> str:
    re, im = float(z.real), float(z.imag)
    return f"{re!r}{'+' if im >= 0 or np.isnan(im) else '-'}{abs(im)!r}i"


def write_csv(path, rep: RepMatrices) -> list[Path]:
    """One CSV per generator, ``<stem>_I_k_(k-1).csv``, entries as ``re+imi``."""
    path = Path(path)
    stem = path.with_suffix("")
    written = []
    for k in sorted(rep.generators):
        m = np.asarray(rep.generators[k], dtype=complex)
        lines = [",".join(_fmt_complex(z) for z in row) for row in m]
        target = Path(f"{stem}_{generator_key(k)}.csv")
        write_atomic(target, "\n".join(lines) + "\n")
        written.append(target)
    return written
