"""Record formats and file output shared by the command-line tools.

Numbers serialize with 12 significant digits; every file carries its seed,
tool version and quadrature convention so runs are self-describing.
"""

from __future__ import annotations

import io as _io
import json
import math

from . import __version__
from .errors import DomainError, MalformedStateError
from .measures import (
    disentangling_interval,
    eof_lower_bound,
    is_separable,
    log_negativity,
    symplectic_spectrum,
)
from .states import StandardForm, to_standard_form

CONVENTION = "vacuum-variance-1"


def fmt(x):
    """12-significant-digit decimal text; infinities and NaN spelled out."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int,)):
        return str(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.12g}"


def parse_state(tokens, dense=False):
    """Build a StandardForm from 4 standard-form numbers or 16 dense entries."""
    try:
        values = [float(t) for t in tokens]
    except ValueError as exc:
        raise MalformedStateError(f"state values must be numbers: {exc}") from exc
    if dense:
        if len(values) != 16:
            raise MalformedStateError(
                f"dense input needs 16 row-major entries, got {len(values)}"
            )
        import numpy as np

        return to_standard_form(np.array(values).reshape(4, 4))
    if len(values) != 4:
        raise MalformedStateError(f"expected 'a b c1 c2', got {len(values)} values")
    return StandardForm(*values)


def state_record(sf: StandardForm):
    return {"a": sf.a, "b": sf.b, "c1": sf.c1, "c2": sf.c2}


def measure_record(sf: StandardForm):
    """The standard measure bundle for one state."""
    separable = is_separable(sf)
    try:
        r_min = disentangling_interval(sf).r_min
    except DomainError:
        # deeply separable states can have a complex-rooted quadratic
        r_min = math.nan
    record = state_record(sf)
    record.update(
        {
            "nu_tilde_minus": symplectic_spectrum(sf, partial_transposed=True).nu_minus,
            "E_N": log_negativity(sf),
            "r_tilde_minus": r_min,
            "E_F_lower_bound": eof_lower_bound(sf),
            "separable": separable,
        }
    )
    return record


def default_metadata(seed=None, **extra):
    meta = {"tool": f"gaussent {__version__}", "convention": CONVENTION}
    if seed is not None:
        meta["seed"] = str(seed)
    meta.update({k: str(v) for k, v in extra.items()})
    return meta


def render(records, fmt_name, metadata):
    """Serialize records to text: csv with '#' metadata lines, or json-lines."""
    records = list(records)
    buf = _io.StringIO()
    if fmt_name == "json-lines":
        buf.write(json.dumps({"_metadata": metadata}, sort_keys=True) + "\n")
        for rec in records:
            buf.write(
                json.dumps({k: _jsonable(v) for k, v in rec.items()}) + "\n"
            )
        return buf.getvalue()
    if fmt_name != "csv":
        raise ValueError(f"unknown format {fmt_name!r}; expected csv or json-lines")
    for key in metadata:
        buf.write(f"# {key}: {metadata[key]}\n")
    if records:
        header = list(records[0])
        buf.write(",".join(header) + "\n")
        for rec in records:
            buf.write(",".join(fmt(rec[k]) for k in header) + "\n")
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, bool):
        return v
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return float(fmt(v))
    return v


def write_output(text, path=None):
    if path is None:
        print(text, end="")
    else:
        with open(path, "w") as fh:
            fh.write(text)
