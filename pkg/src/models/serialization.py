"""Versioned JSON and binary serialization of spinor fields"""

import json
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from ..core.errors import SerializationError
from .bases import CollocationS2Basis, FourierS1Basis
from .domain import make_domain
from .fields import (
    FieldBasis,
    SpinorField,
    boundary_field,
    constant_spinor,
    imaginary_killing_spinor,
    polynomial_field,
)

FIELD_FORMAT = "spinlab-field"
FIELD_VERSION = 1


def _interleave(values: np.ndarray) -> np.ndarray:
    flat = np.asarray(values, dtype=np.complex128).reshape(-1)
    out = np.empty(2 * flat.size)
    out[0::2] = flat.real
    out[1::2] = flat.imag
    return out


def _deinterleave(values: np.ndarray, shape) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if values.size != 2 * int(np.prod(shape)):
        raise SerializationError(
            f"Coefficient payload has {values.size} doubles, expected {2 * int(np.prod(shape))}"
        )
    return (values[0::2] + 1j * values[1::2]).reshape(shape)


def field_header(field: SpinorField) -> Dict[str, Any]:
    """Metadata header describing how to rebuild a field

    Raises:
        SerializationError: For lazily derived or extension fields
    """
    if field.kind in ("derived", "extension"):
        raise SerializationError(
            f"Fields of kind {field.kind!r} are not serializable; restrict them to the boundary first"
        )
    header: Dict[str, Any] = {
        "format": FIELD_FORMAT,
        "version": FIELD_VERSION,
        "domain": {
            "kind": field.domain.kind.value,
            "n": field.domain.n,
            "radius": field.domain.radius,
            "resolution": field.domain.resolution,
        },
        "support": field.support.value,
        "basis": field.basis.value,
        "shape": list(field.coefficients.shape),
        "metadata": {k: v for k, v in field.metadata.items() if isinstance(v, (int, float, str, bool))},
    }
    if field.is_boundary:
        header["boundary"] = field.boundary.descriptor()
        if isinstance(field.boundary, FourierS1Basis):
            header["boundary"]["nodes"] = field.boundary.node_count
        elif isinstance(field.boundary, CollocationS2Basis):
            header["boundary"]["theta_nodes"] = field.boundary.theta_nodes
            header["boundary"]["phi_nodes"] = field.boundary.phi_nodes
    return header


def _rebuild(header: Dict[str, Any], coeffs: np.ndarray) -> SpinorField:
    if header.get("format") != FIELD_FORMAT:
        raise SerializationError(f"Not a spinlab field (format={header.get('format')!r})")
    if header.get("version") != FIELD_VERSION:
        raise SerializationError(
            f"Unsupported field format version {header.get('version')}, expected {FIELD_VERSION}"
        )
    dom = header["domain"]
    domain = make_domain(dom["kind"], int(dom["n"]), float(dom["radius"]), dom.get("resolution"))
    meta = dict(header.get("metadata", {}))
    kind = meta.get("kind")

    if header["support"] == "boundary":
        info = header["boundary"]
        if header["basis"] == FieldBasis.FOURIER_S1.value:
            basis = FourierS1Basis(int(info["labels"]), float(info["radius"]), int(info["nodes"]))
        elif header["basis"] == FieldBasis.COLLOCATION_S2.value:
            basis = CollocationS2Basis(int(info["theta_nodes"]), float(info["radius"]), int(info["phi_nodes"]))
        else:
            raise SerializationError(f"Unknown boundary basis {header['basis']!r}")
        meta.pop("kind", None)
        return boundary_field(domain, coeffs, basis, **meta)

    if kind == "polynomial":
        field = polynomial_field(domain, coeffs, int(meta["degree"]))
    elif kind == "closed_form" and meta.get("form") == "imaginary-killing":
        field = imaginary_killing_spinor(domain, int(meta["sign"]), coeffs[0])
    elif kind == "closed_form":
        field = constant_spinor(domain, coeffs[0])
    else:
        raise SerializationError(f"Cannot rebuild interior field of kind {kind!r}")
    field.metadata.update(meta)
    return field


def field_to_json(field: SpinorField) -> str:
    payload = field_header(field)
    payload["coefficients"] = _interleave(field.coefficients).tolist()
    return json.dumps(payload, sort_keys=True)


def field_from_json(text: str) -> SpinorField:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"Invalid field JSON: {exc}")
    coeffs = _deinterleave(np.array(payload.pop("coefficients", [])), tuple(payload["shape"]))
    return _rebuild(payload, coeffs)


def save_field(field: SpinorField, path: Union[str, Path], fmt: str = "json") -> Path:
    """Write a field as JSON, or as binary: one JSON header line then little-endian float64 (re, im) pairs

    Raises:
        SerializationError: If the path is not writable or the format unknown
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "json":
            path.write_text(field_to_json(field))
        elif fmt == "binary":
            header = json.dumps(field_header(field), sort_keys=True).encode("utf-8")
            with open(path, "wb") as f:
                f.write(header + b"\n")
                f.write(_interleave(field.coefficients).astype("<f8").tobytes())
        else:
            raise SerializationError(f"Format must be 'json' or 'binary', got {fmt!r}")
    except OSError as exc:
        raise SerializationError(f"Cannot write field to {path}: {exc}")
    return path


def load_field(path: Union[str, Path]) -> SpinorField:
    """Read a field written by save_field (format detected from content)"""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise SerializationError(f"Cannot read field from {path}: {exc}")
    head, sep, body = raw.partition(b"\n")
    if sep:
        try:
            header = json.loads(head.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            header = None
        if isinstance(header, dict) and "coefficients" not in header:
            values = np.frombuffer(body, dtype="<f8")
            return _rebuild(header, _deinterleave(values, tuple(header["shape"])))
    return field_from_json(raw.decode("utf-8"))
