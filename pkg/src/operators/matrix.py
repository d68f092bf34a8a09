"""Block-diagonal operator matrices on boundary bases and their portable export"""

import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from ..core.base_basis import BaseBoundaryBasis
from ..core.errors import DimensionMismatchError, SerializationError

logger = logging.getLogger(__name__)

OPERATOR_FORMAT = "spinlab-operator"
OPERATOR_VERSION = 1


class OperatorKind(str, Enum):
    EXTRINSIC_DIRAC = "extrinsic-dirac"
    TWISTED_EXTRINSIC = "twisted-extrinsic"
    MIT_PROJECTION = "mit-projection"
    CHIRALITY_PROJECTION = "chirality-projection"
    NORMAL_CLIFFORD = "normal-clifford"
    CHIRALITY = "chirality"
    IDENTITY = "identity"
    COMPOSITE = "composite"


class OperatorMatrix:
    """Discretized linear operator, block-diagonal over the labels of a boundary basis

    Attributes:
        blocks: One (block_size x block_size) complex matrix per label
        basis: Boundary basis the operator acts on
        kind: OperatorKind
        params: Sign, truncation and assembly diagnostics
    """

    def __init__(
        self,
        blocks: List[np.ndarray],
        basis: BaseBoundaryBasis,
        kind: OperatorKind,
        params: Optional[Dict[str, Any]] = None,
    ):
        if len(blocks) != len(basis.labels):
            raise DimensionMismatchError(
                f"Operator needs {len(basis.labels)} blocks, got {len(blocks)}"
            )
        for b in blocks:
            if b.shape != (basis.block_size, basis.block_size):
                raise DimensionMismatchError(
                    f"Blocks must be {basis.block_size}x{basis.block_size}, got {b.shape}"
                )
        self.blocks = [np.asarray(b, dtype=np.complex128) for b in blocks]
        self.basis = basis
        self.kind = OperatorKind(kind)
        self.params = dict(params or {})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.basis.size, self.basis.size)

    @property
    def matrix(self) -> np.ndarray:
        return self.dense()

    def dense(self) -> np.ndarray:
        """Full matrix (block-diagonal)"""
        return linalg.block_diag(*self.blocks)

    @classmethod
    def identity(cls, basis: BaseBoundaryBasis) -> "OperatorMatrix":
        eye = np.eye(basis.block_size, dtype=np.complex128)
        return cls([eye.copy() for _ in basis.labels], basis, OperatorKind.IDENTITY)

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        """Matrix-vector product on a flat coefficient vector"""
        coeffs = self.basis._check(coeffs)
        out = np.empty_like(coeffs)
        for i, block in enumerate(self.blocks):
            sl = self.basis.label_slice(i)
            out[sl] = block @ coeffs[sl]
        return out

    def _combine(self, other: "OperatorMatrix", op) -> "OperatorMatrix":
        if not self.basis.same_as(other.basis):
            raise DimensionMismatchError("Operators must act on the same basis")
        return OperatorMatrix(
            [op(a, b) for a, b in zip(self.blocks, other.blocks)],
            self.basis,
            OperatorKind.COMPOSITE,
        )

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self._combine(other, np.matmul)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self._combine(other, np.add)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self._combine(other, np.subtract)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        return OperatorMatrix([scalar * b for b in self.blocks], self.basis, OperatorKind.COMPOSITE)

    __rmul__ = __mul__

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix([b.conj().T for b in self.blocks], self.basis, OperatorKind.COMPOSITE)

    def norm(self) -> float:
        """Spectral norm (max over blocks)"""
        return max(float(np.linalg.norm(b, 2)) for b in self.blocks)

    def hermitian_defect(self) -> float:
        return max(float(np.linalg.norm(b - b.conj().T, 2)) for b in self.blocks)

    def block_for(self, label: float) -> np.ndarray:
        index = int(np.argmin(np.abs(self.basis.labels - label)))
        return self.blocks[index]

    def __repr__(self) -> str:
        return f"OperatorMatrix(kind={self.kind.value}, shape={self.shape}, basis={self.basis.name})"


def export_operator(op: OperatorMatrix, path: Union[str, Path], fmt: str = "text") -> Path:
    """Write the dense matrix in a portable format

    text:   header line '# spinlab-operator 1 <kind> <N>' then N rows of 're im re im ...'
    binary: little-endian int64 N followed by N*N row-major complex128

    Raises:
        SerializationError: On unknown format or unwritable path
    """
    path = Path(path)
    dense = op.dense()
    N = dense.shape[0]
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "text":
            interleaved = np.empty((N, 2 * N))
            interleaved[:, 0::2] = dense.real
            interleaved[:, 1::2] = dense.imag
            header = f"{OPERATOR_FORMAT} {OPERATOR_VERSION} {op.kind.value} {N}"
            np.savetxt(path, interleaved, fmt="%.17g", header=header, comments="# ")
        elif fmt == "binary":
            with open(path, "wb") as f:
                f.write(np.array([N], dtype="<i8").tobytes())
                f.write(dense.astype("<c16").tobytes())
        else:
            raise SerializationError(f"Format must be 'text' or 'binary', got {fmt!r}")
    except OSError as exc:
        raise SerializationError(f"Cannot write operator to {path}: {exc}")
    logger.debug("Exported %r to %s", op, path)
    return path


def load_operator(path: Union[str, Path], fmt: str = "text") -> np.ndarray:
    """Read a dense matrix written by export_operator"""
    path = Path(path)
    try:
        if fmt == "text":
            with open(path) as f:
                header = f.readline().lstrip("# ").split()
            if len(header) != 4 or header[0] != OPERATOR_FORMAT:
                raise SerializationError(f"Not a spinlab operator file: {path}")
            N = int(header[3])
            data = np.atleast_2d(np.loadtxt(path, comments="#"))
            if data.shape != (N, 2 * N):
                raise SerializationError(f"Expected {N}x{2 * N} values, got {data.shape}")
            return data[:, 0::2] + 1j * data[:, 1::2]
        if fmt == "binary":
            raw = path.read_bytes()
            N = int(np.frombuffer(raw[:8], dtype="<i8")[0])
            values = np.frombuffer(raw[8:], dtype="<c16")
            if values.size != N * N:
                raise SerializationError(f"Expected {N * N} entries, got {values.size}")
            return values.reshape(N, N).copy()
    except OSError as exc:
        raise SerializationError(f"Cannot read operator from {path}: {exc}")
    raise SerializationError(f"Format must be 'text' or 'binary', got {fmt!r}")


def operator_metadata(path: Union[str, Path]) -> Dict[str, Any]:
    """Header fields of a text operator file"""
    with open(path) as f:
        fmt, version, kind, N = f.readline().lstrip("# ").split()
    return {"format": fmt, "version": int(version), "kind": kind, "N": int(N)}

