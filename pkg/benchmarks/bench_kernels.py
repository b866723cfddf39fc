"""Compare the compiled kernels against the pure-numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--size BYTES] [--repeats N]

Each kernel is timed with time.perf_counter over the best of N repeats so
one-off scheduler noise does not skew the ratio.  If the compiled extension
is not importable the script still runs and reports the pure backend alone.
"""

import argparse
import time

import numpy as np

from mediacrypt._kernels import _pure


def _load_compiled():
    try:
        from mediacrypt._kernels import _speedups
    except ImportError:
        return None
    return _speedups


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - started)
    return best


def run(size: int, repeats: int) -> None:
    compiled = _load_compiled()
    backends = [("pure", _pure)] + ([("compiled", compiled)] if compiled else [])
    if compiled is None:
        print("compiled extension not available; benchmarking pure backend only")

    data = np.arange(size, dtype=np.uint64) % 251
    data8 = data.astype(np.uint8)
    values = (np.arange(size, dtype=np.uint64) % 6497).astype(np.uint16)

    cases = [
        ("keystream_bytes", lambda k: k.keystream_bytes(12345, size)),
        ("xor_with_keystream", lambda k: k.xor_with_keystream(data8, 12345)),
        ("powmod_array(e=113, n=6497)", lambda k: k.powmod_array(values, 113, 6497)),
    ]

    results = {}
    for label, fn in cases:
        for name, kernel in backends:
            seconds = best_of(lambda: fn(kernel), repeats)
            results[label, name] = seconds
            rate = size / seconds / 1e6
            print(f"{label:30s} {name:9s} {seconds * 1e3:9.2f} ms  {rate:8.1f} Melem/s")
        if compiled:
            ratio = results[label, "pure"] / results[label, "compiled"]
            print(f"{label:30s} speedup   {ratio:9.1f}x")
        print()

    # the two backends must agree bit for bit
    if compiled:
        assert compiled.keystream_bytes(7, 4096).tobytes() == _pure.keystream_bytes(7, 4096).tobytes()
        assert np.array_equal(
            compiled.powmod_array(values[:4096], 113, 6497),
            _pure.powmod_array(values[:4096], 113, 6497),
        )
        print("backend agreement check: ok")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1 << 22, help="elements per kernel call")
    parser.add_argument("--repeats", type=int, default=5, help="repeats per measurement")
    args = parser.parse_args()
    run(args.size, args.repeats)


if __name__ == "__main__":
    main()
