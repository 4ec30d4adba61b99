"""Kernel selection: the compiled module when importable, else pure Python.

Set MORSEFLOW_PURE=1 to force the fallback.
"""
import os

if os.environ.get("MORSEFLOW_PURE") == "1":
    from . import _kernel_py as kernel
    COMPILED = False
else:
    try:
        from . import _kernel as kernel
        COMPILED = True
    except ImportError:
        from . import _kernel_py as kernel
        COMPILED = False

canonical_search = kernel.canonical_search
