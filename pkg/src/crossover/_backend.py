"""Pick the Doppler-sum implementation at import time.

The compiled extension is used when it was built; otherwise, or when
``CROSSOVER_BACKEND=python`` is set, the numpy fallback takes over.
"""
import logging
import os

from . import _fallback

log = logging.getLogger(__name__)

try:
    from . import _kernel
except ImportError:  # extension not built
    _kernel = None

_IMPLS = {"python": _fallback.doppler_sums}
if _kernel is not None:
    _IMPLS["compiled"] = _kernel.doppler_sums

_requested = os.environ.get("CROSSOVER_BACKEND", "auto").lower()
if _requested == "python" or _kernel is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"
if _requested == "compiled" and _kernel is None:
    log.warning("CROSSOVER_BACKEND=compiled requested but the extension is not built")


def available():
    return sorted(_IMPLS)


def get(name=None):
    """Return the kernel function for ``name`` ('compiled', 'python' or None=default)."""
    name = BACKEND if name in (None, "auto") else name
    try:
        return _IMPLS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} unavailable; have {available()}") from None
