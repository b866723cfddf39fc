"""Kernel backend selection.

Imports the compiled extension when available, otherwise falls back to the
NumPy implementation.  Set MEDIACRYPT_PURE=1 to force the fallback (useful
for benchmarking and debugging).  Both backends are bit-identical.
"""

import os

if os.environ.get("MEDIACRYPT_PURE"):
    from mediacrypt._kernels._pure import (
        BACKEND,
        keystream_advance,
        keystream_bytes,
        powmod_array,
        xor_with_keystream,
    )
else:
    try:
        from mediacrypt._kernels._speedups import (  # type: ignore[no-redef]
            BACKEND,
            keystream_advance,
            keystream_bytes,
            powmod_array,
            xor_with_keystream,
        )
    except ImportError:
        from mediacrypt._kernels._pure import (  # type: ignore[no-redef]
            BACKEND,
            keystream_advance,
            keystream_bytes,
            powmod_array,
            xor_with_keystream,
        )

__all__ = [
    "BACKEND",
    "keystream_advance",
    "keystream_bytes",
    "powmod_array",
    "xor_with_keystream",
]
