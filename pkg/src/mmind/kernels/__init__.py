"""Hot-kernel backend selection.

The compiled extension is preferred when importable; otherwise the numpy
fallback is used. Set MMIND_BACKEND=python or MMIND_BACKEND=c to force one
(forcing `c` raises if the extension was not built).
"""

import os

_requested = os.environ.get("MMIND_BACKEND", "").strip().lower()

if _requested in ("", "c"):
    try:
        from . import _ckernels as _impl
    except ImportError:
        if _requested == "c":
            raise
        from . import _pykernels as _impl
elif _requested in ("python", "py"):
    from . import _pykernels as _impl
else:
    raise RuntimeError(f"unknown MMIND_BACKEND value: {_requested!r}")

BACKEND = _impl.BACKEND
TIE_TOL = _impl.TIE_TOL
KIND_WEIGHTED = _impl.KIND_WEIGHTED
KIND_KNUTH = _impl.KIND_KNUTH
KIND_MOST_PARTS = _impl.KIND_MOST_PARTS

build_table = _impl.build_table
guess_scores = _impl.guess_scores
select_index = _impl.select_index
play_all = _impl.play_all


def get_backend(name):
    """Explicit backend module lookup, used by the benchmark and tests."""
    if name == "python":
        from . import _pykernels

        return _pykernels
    if name == "c":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {name!r}")
