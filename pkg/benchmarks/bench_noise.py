"""Benchmark: pure-Python vs compiled noise-scan kernel.

Generates a synthetic source blob heavy on comments and string literals
(the worst case for the scanner) and times both kernels over it.

    python benchmarks/bench_noise.py [--mb 4] [--repeat 5]
"""

import argparse
import random
import time

from tiergraph.scan import _pykernels

try:
    from tiergraph.scan import _ckernels
except ImportError:
    _ckernels = None

_CHUNKS = [
    'public class Widget{} { private Store st{}; }\n',
    'var s = "quoted text with dots a.B() inside {}";\n',
    "// line comment mentioning repo.Save() {}\n",
    "/* block\n   comment {} */\n",
    "svc.Run(x{}); order.Total = 1; items.ForEach(x => x.Commit());\n",
    "if (a >= b) { count = count + {}; }\n",
]


def synth_source(target_bytes: int, seed: int = 42) -> str:
    rng = random.Random(seed)
    out = []
    size = 0
    i = 0
    while size < target_bytes:
        chunk = rng.choice(_CHUNKS).replace("{}", str(i))
        out.append(chunk)
        size += len(chunk)
        i += 1
    return "".join(out)


def bench(fn, source: str, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(source)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mb", type=float, default=4.0, help="synthetic source size in MiB")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    source = synth_source(int(args.mb * 1024 * 1024))
    print(f"source: {len(source) / 1e6:.1f} MB, repeat: best of {args.repeat}")

    py_time = bench(_pykernels.find_noise_spans, source, args.repeat)
    print(f"pure python : {py_time:.3f} s  ({len(source) / py_time / 1e6:.1f} MB/s)")

    if _ckernels is None:
        print("compiled    : not built (python setup.py build_ext --inplace)")
        return
    c_time = bench(_ckernels.find_noise_spans, source, args.repeat)
    print(f"compiled    : {c_time:.3f} s  ({len(source) / c_time / 1e6:.1f} MB/s)")
    print(f"speedup     : {py_time / c_time:.1f}x")

    assert _ckernels.find_noise_spans(source) == _pykernels.find_noise_spans(source), (
        "kernel outputs diverged"
    )
    print("outputs identical")


if __name__ == "__main__":
    main()
