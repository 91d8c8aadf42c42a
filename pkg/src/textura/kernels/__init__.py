"""Hot-loop kernel backends: numba JIT by default, pure numpy on demand.

Set TEXTURA_KERNELS=numpy to force the fallback (or =numba to fail loudly
if numba is missing). Both backends expose the same two functions:

    coverage_accumulate(edges, width, height, evenodd, subsamples)
    resample_axis1(img, idx, wts)

See benchmarks/bench_kernels.py for a side-by-side timing comparison.
"""

from __future__ import annotations

import os

from . import numpy_impl

_ENV_VAR = "TEXTURA_KERNELS"


def _select_default():
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice == "numpy":
        return numpy_impl
    if choice == "numba":
        from . import numba_impl

        return numba_impl
    if choice not in ("", "auto"):
        raise ValueError(
            f"{_ENV_VAR} must be 'numba' or 'numpy', got {choice!r}"
        )
    try:
        from . import numba_impl

        return numba_impl
    except ImportError:
        return numpy_impl


_active = _select_default()


def backend_name() -> str:
    return _active.NAME


def use_backend(name: str) -> None:
    """Switch backends at runtime (tests and benchmarks)."""
    global _active
    if name == "numpy":
        _active = numpy_impl
    elif name == "numba":
        from . import numba_impl

        _active = numba_impl
    else:
        raise ValueError(f"unknown kernel backend {name!r}")


def coverage_accumulate(edges, width, height, evenodd, subsamples):
    return _active.coverage_accumulate(edges, width, height, evenodd, subsamples)


def resample_axis1(img, idx, wts):
    return _active.resample_axis1(img, idx, wts)
