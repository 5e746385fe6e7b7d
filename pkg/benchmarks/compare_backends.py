#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Runs both backends over the generated alphabet workload at a few text sizes
and prints median matching times side by side, plus the speedup. Useful for
deciding whether building the extension is worth it on a given machine (it
almost always is; this mostly quantifies by how much).
"""

import argparse

from matchpoint import active_backend, use_backend
from matchpoint.automaton import build_automaton, build_trie
from matchpoint.bench import measure
from matchpoint.engines import EngineKind
from matchpoint.workload import gen_patterns, gen_text


def run(sizes, pattern_count, workers, reps, seed):
    patterns = gen_patterns(pattern_count, seed)
    automaton = build_automaton(patterns)
    trie = build_trie(patterns)

    results = {}
    for name in ("native", "python"):
        try:
            use_backend(name)
        except RuntimeError:
            print(f"note: skipping {name} backend (extension not built)")
            continue
        assert active_backend() == name
        for size in sizes:
            text = gen_text(size)
            serial = measure(EngineKind.SERIAL_AC, automaton, text, reps, workers=workers)
            parallel = measure(EngineKind.PARALLEL_FLAC, trie, text, reps, workers=workers)
            results[(name, size)] = (serial.median, parallel.median)
    use_backend(None)

    print(f"{'size_bytes':>10}  {'backend':<7}  {'serial_ms':>10}  {'parallel_ms':>12}")
    for size in sizes:
        for name in ("native", "python"):
            medians = results.get((name, size))
            if medians is None:
                continue
            print(f"{size:>10}  {name:<7}  {medians[0] / 1e6:>10.3f}  {medians[1] / 1e6:>12.3f}")
        native = results.get(("native", size))
        python = results.get(("python", size))
        if native and python:
            print(
                f"{'':>10}  speedup  {python[0] / native[0]:>9.1f}x  {python[1] / native[1]:>11.1f}x"
            )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        default="16375,65500,262000,671375",
        help="comma-separated text sizes in bytes",
    )
    parser.add_argument("--patterns", type=int, default=5)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s]
    run(sizes, args.patterns, args.workers, args.reps, args.seed)


if __name__ == "__main__":
    main()
