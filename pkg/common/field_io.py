# common/field_io.py
"""
CSV serialization of grid fields.

Layout:
    # schema_version=1
    # nx=..., ny=..., half_extent_x=..., half_extent_y=...
    # quantity=..., units=..., dtype=complex|real
    # param.<name>=<type>:<value>   (type: str, int, float, bool or none)
    x,y,re,im        (complex fields)
    x,y,value        (real fields)

Rows run over y, then x, matching the (ny, nx) storage order. Every float is
written with 17 significant digits so a read returns the same bits.
"""

from __future__ import annotations

import logging
import math
import numbers
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import FieldFormatError, ParameterError
from .grid import ComplexField2D, GridSpec

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
FLOAT_FORMAT = "%.17g"
REQUIRED_KEYS = ("schema_version", "nx", "ny", "half_extent_x", "half_extent_y", "quantity", "units", "dtype")
PARAM_TYPES = {"str": str, "int": int, "float": float, "bool": bool, "none": type(None)}


def _format_param(value) -> str:
    """Tag a parameter with its type so a read returns the same value."""
    if value is None:
        return "none:"
    if isinstance(value, (bool, np.bool_)):
        return f"bool:{bool(value)}"
    if isinstance(value, numbers.Integral):
        return f"int:{int(value)}"
    if isinstance(value, numbers.Real):
        return f"float:{float(value)!r}"
    return f"str:{value}"


def _parse_param(raw: str):
    tag, sep, text = raw.partition(":")
    if not sep or tag not in PARAM_TYPES:
        raise ValueError(f"parameter value {raw!r} lacks a type tag ({', '.join(PARAM_TYPES)})")
    if tag == "none":
        if text:
            raise ValueError(f"none parameter carries a value: {text!r}")
        return None
    if tag == "bool":
        if text not in ("True", "False"):
            raise ValueError(f"bool parameter must be True or False, got {text!r}")
        return text == "True"
    return PARAM_TYPES[tag](text)


@dataclass(frozen=True)
class FieldFileHeader:
    """Everything needed to interpret the data rows of a field file."""

    nx: int
    ny: int
    half_extent_x: float
    half_extent_y: float
    quantity: str
    units: str
    dtype: str
    params: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_field(cls, F: ComplexField2D) -> "FieldFileHeader":
        spec = F.spec
        return cls(
            nx=spec.nx,
            ny=spec.ny,
            half_extent_x=spec.half_extent_x,
            half_extent_y=spec.half_extent_y,
            quantity=F.quantity,
            units=F.units,
            dtype="real" if F.is_real else "complex",
            params=dict(F.params),
        )

    @classmethod
    def from_entries(cls, path: Path, entries: dict[str, str], params: dict, lineno: int) -> "FieldFileHeader":
        missing = [key for key in REQUIRED_KEYS if key not in entries]
        if missing:
            raise FieldFormatError(str(path), lineno, f"missing header key(s): {', '.join(missing)}")
        try:
            version = int(entries["schema_version"])
            header = cls(
                nx=int(entries["nx"]),
                ny=int(entries["ny"]),
                half_extent_x=float(entries["half_extent_x"]),
                half_extent_y=float(entries["half_extent_y"]),
                quantity=entries["quantity"],
                units=entries["units"],
                dtype=entries["dtype"],
                params=params,
                schema_version=version,
            )
        except ValueError as exc:
            raise FieldFormatError(str(path), lineno, f"invalid grid header: {exc}") from None
        if header.schema_version != SCHEMA_VERSION:
            raise FieldFormatError(str(path), 1, f"unsupported schema_version {header.schema_version}")
        if header.dtype not in ("real", "complex"):
            raise FieldFormatError(str(path), lineno, f"dtype must be real or complex, got {header.dtype!r}")
        return header

    @property
    def n_columns(self) -> int:
        return 3 if self.dtype == "real" else 4

    def grid_spec(self) -> GridSpec:
        return GridSpec(
            nx=self.nx,
            ny=self.ny,
            half_extent_x=self.half_extent_x,
            half_extent_y=self.half_extent_y,
        )

    def lines(self) -> list[str]:
        lines = [
            f"schema_version={self.schema_version}",
            f"nx={self.nx}",
            f"ny={self.ny}",
            f"half_extent_x={self.half_extent_x!r}",
            f"half_extent_y={self.half_extent_y!r}",
            f"quantity={self.quantity}",
            f"units={self.units}",
            f"dtype={self.dtype}",
        ]
        for key in sorted(self.params):
            value = _format_param(self.params[key])
            if "\n" in value or "\n" in key:
                raise ParameterError("core_grid", f"parameter {key!r} cannot be written on one header line")
            lines.append(f"param.{key}={value}")
        return lines


def header_lines(F: ComplexField2D) -> list[str]:
    return FieldFileHeader.from_field(F).lines()


def write_field(F: ComplexField2D, path: str | Path) -> Path:
    path = Path(path)
    x, y = np.meshgrid(F.spec.x_axis(), F.spec.y_axis())
    columns = [x.ravel(), y.ravel()]
    if F.is_real:
        columns.append(F.values.ravel())
    else:
        columns.extend([F.values.real.ravel(), F.values.imag.ravel()])
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        np.savetxt(
            handle,
            np.column_stack(columns),
            fmt=FLOAT_FORMAT,
            delimiter=",",
            header="\n".join(header_lines(F)),
            comments="# ",
        )
    logger.debug(f"wrote {F.quantity} ({F.spec.nx}x{F.spec.ny}) to {path}")
    return path


def _parse_header(path: Path, lines: list[str]) -> tuple[dict, dict, int]:
    header: dict[str, str] = {}
    params: dict = {}
    lineno = 0
    for lineno, line in enumerate(lines, start=1):
        if not line.startswith("#"):
            return header, params, lineno - 1
        body = line[1:].strip()
        key, sep, value = body.partition("=")
        if not sep:
            raise FieldFormatError(str(path), lineno, f"header line is not key=value: {line!r}")
        if key.startswith("param."):
            try:
                params[key[len("param."):]] = _parse_param(value)
            except ValueError as exc:
                raise FieldFormatError(str(path), lineno, str(exc)) from None
        else:
            header[key] = value
    return header, params, lineno


def read_field(path: str | Path) -> ComplexField2D:
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        lines = handle.read().splitlines()

    entries, params, n_header = _parse_header(path, lines)
    header = FieldFileHeader.from_entries(path, entries, params, n_header)
    try:
        spec = header.grid_spec()
    except ParameterError as exc:
        raise FieldFormatError(str(path), n_header, f"invalid grid header: {exc}") from None
    dtype = header.dtype
    n_columns = header.n_columns
    rows = lines[n_header:]
    if len(rows) != spec.nx * spec.ny:
        raise FieldFormatError(
            str(path), n_header + len(rows), f"expected {spec.nx * spec.ny} data rows, found {len(rows)}"
        )

    x_axis, y_axis = spec.x_axis(), spec.y_axis()
    data = np.empty((len(rows), n_columns - 2), dtype=np.float64)
    for index, line in enumerate(rows):
        lineno = n_header + index + 1
        parts = line.split(",")
        if len(parts) != n_columns:
            raise FieldFormatError(str(path), lineno, f"expected {n_columns} columns, found {len(parts)}")
        try:
            x, y, *values = (float(part) for part in parts)
        except ValueError as exc:
            raise FieldFormatError(str(path), lineno, str(exc)) from None
        j, i = divmod(index, spec.nx)
        if not (math.isclose(x, x_axis[i], rel_tol=1e-12, abs_tol=1e-300)
                and math.isclose(y, y_axis[j], rel_tol=1e-12, abs_tol=1e-300)):
            raise FieldFormatError(str(path), lineno, f"coordinates ({x!r}, {y!r}) do not match the grid header")
        data[index] = values

    if dtype == "real":
        values = data[:, 0].reshape(spec.ny, spec.nx)
    else:
        values = (data[:, 0] + 1j * data[:, 1]).reshape(spec.ny, spec.nx)
    try:
        return ComplexField2D(spec, values, quantity=header.quantity, units=header.units, params=header.params)
    except ParameterError as exc:
        raise FieldFormatError(str(path), n_header, str(exc)) from None
