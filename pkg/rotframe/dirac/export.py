"""Text exports of sampled fields and operator matrices.

Field CSV: header `x0,x,y,z,<labels...>`, one row per sample point.

Sparse triplets: a comment line `# rows cols nnz`, then one `i j re im` line
per stored entry, zero-based, row-major order, 17 significant digits.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from pathlib import Path

import numpy as np
import numpy.typing as npt
import scipy.sparse

from ..core import ConfigError, PreconditionError
from ..dynamics.records import write_series
from .metric import SpinConnection, Vierbein, WeakMetric

_LOGGER = logging.getLogger(__name__)

COORDINATE_LABELS = ("x0", "x", "y", "z")


def write_field_csv(
    path: str | Path,
    points: npt.ArrayLike,
    values: npt.ArrayLike,
    labels: Sequence[str],
) -> Path:
    points = np.asarray(points, dtype=np.float64).reshape(-1, 4)
    values = np.asarray(values, dtype=np.float64).reshape(len(points), -1)
    if values.shape[1] != len(labels):
        raise PreconditionError(f"{values.shape[1]} field components but {len(labels)} labels")
    series = {name: points[:, axis] for axis, name in enumerate(COORDINATE_LABELS)}
    series.update({label: values[:, index] for index, label in enumerate(labels)})
    return write_series(series, path)


def _tensor_labels(prefix: str, rank: int) -> list[str]:
    return [prefix + "".join(map(str, index)) for index in np.ndindex(*([4] * rank))]


def metric_table(metric: WeakMetric, points: npt.ArrayLike) -> tuple[npt.NDArray, list[str]]:
    return metric.h(points), _tensor_labels("h", 2)


def vierbein_table(vierbein: Vierbein) -> tuple[npt.NDArray, list[str]]:
    values = np.concatenate([vierbein.e, vierbein.e_inv], axis=-1)
    labels = []
    for a in range(4):
        labels += [f"e{a}{mu}" for mu in range(4)]
        labels += [f"einv{a}{mu}" for mu in range(4)]
    return values, labels


def connection_table(connection: SpinConnection) -> tuple[npt.NDArray, list[str]]:
    return connection.gamma, _tensor_labels("gamma", 3)


def write_sparse_triplets(path: str | Path, matrix, tolerance: float = 0.0) -> Path:
    coo = scipy.sparse.coo_matrix(matrix)
    coo.sum_duplicates()
    keep = np.abs(coo.data) > tolerance
    rows, cols, data = coo.row[keep], coo.col[keep], coo.data[keep].astype(np.complex128)
    order = np.lexsort((cols, rows))
    table = np.column_stack([rows[order], cols[order], data[order].real, data[order].imag])
    path = Path(path)
    header = f"# {coo.shape[0]} {coo.shape[1]} {len(data)}"
    np.savetxt(path, table, fmt=["%d", "%d", "%.17g", "%.17g"], header=header, comments="")
    _LOGGER.debug("Wrote %d triplets of a %s matrix to %s", len(data), coo.shape, path)
    return path


def read_sparse_triplets(path: str | Path) -> scipy.sparse.csr_matrix:
    path = Path(path)
    with path.open() as handle:
        header = handle.readline().split()
    if len(header) != 4 or header[0] != "#":
        raise ConfigError(f"{path}: missing '# rows cols nnz' header")
    rows, cols, count = (int(value) for value in header[1:])
    table = np.loadtxt(path, skiprows=1, ndmin=2) if count else np.zeros((0, 4))
    if len(table) != count:
        raise ConfigError(f"{path}: header announces {count} entries, found {len(table)}")
    data = table[:, 2] + 1j * table[:, 3]
    indices = table[:, :2].astype(np.int64)
    return scipy.sparse.coo_matrix((data, (indices[:, 0], indices[:, 1])), shape=(rows, cols)).tocsr()
