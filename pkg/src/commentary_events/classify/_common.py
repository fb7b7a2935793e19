from __future__ import annotations

from typing import Sequence

import numpy as np
import scipy.sparse as sp

from ..errors import DegenerateLabels, ShapeError
from ..vectorize import to_csr


def check_xy(X, y: Sequence[int], min_classes: int = 2) -> tuple[sp.csr_matrix, np.ndarray, np.ndarray]:
    """Validate a training set; return (CSR matrix, labels, sorted class ids)."""
    n = X.shape[0] if sp.issparse(X) else len(X)
    if n != len(y):
        raise ShapeError(f"X has {n} rows but y has {len(y)} labels")
    if n < 2:
        raise ShapeError("need at least two training samples")
    mat = sp.csr_matrix(X) if sp.issparse(X) else to_csr(list(X))
    mat.sort_indices()
    labels = np.asarray([int(v) for v in y], dtype=np.int64)
    classes = np.unique(labels)
    if classes.size < min_classes:
        raise DegenerateLabels(f"need at least {min_classes} distinct classes, got {classes.size}")
    return mat, labels, classes
