"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``TOPICCOH_PURE_PYTHON`` is set to a non-empty value, the numpy/Python
fallback in ``_pykernels`` is used. ``BACKEND`` names the active one.
"""
import os

from . import _pykernels
from ._pykernels import ANY_ANY, ONE_ALL, ONE_ANY, UCI, UMASS, subset_pair_masks

try:
    if os.environ.get("TOPICCOH_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _ckernels as _impl

    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "python"

doc_masks = _impl.doc_masks
mask_histogram = _impl.mask_histogram
superset_sums = _impl.superset_sums
score_table = _impl.score_table
qualitative_table = _impl.qualitative_table
score_extensions = _impl.score_extensions

__all__ = [
    "ANY_ANY", "BACKEND", "ONE_ALL", "ONE_ANY", "UCI", "UMASS",
    "doc_masks", "mask_histogram", "qualitative_table", "score_extensions",
    "score_table", "subset_pair_masks", "superset_sums",
]
