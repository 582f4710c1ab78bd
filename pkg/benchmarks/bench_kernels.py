"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--rounds 50000] [--repeat 5]

Both backends receive identical inputs; outputs are checked for equality
before timings are reported.
"""

import argparse
import time

import numpy as np

from maxent_transitions import kernels

PAYOFF_ROW = [77.0, 35.0, 8.0, 48.0]
PAYOFF_COL = [23.0, 92.0, 65.0, 52.0]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def cases(rounds):
    rng = np.random.default_rng(0)
    ru, cu = rng.random(rounds), rng.random(rounds)
    states = rng.integers(0, 4, rounds).astype(np.int64)
    return {
        "play_session IidMixed": lambda m: m.play_session(
            kernels.IID_MIXED, [0.5, 0, 0], PAYOFF_ROW, kernels.IID_MIXED, [0.5, 0, 0], PAYOFF_COL, ru, cu),
        "play_session RothErev": lambda m: m.play_session(
            kernels.ROTH_EREV, [100.0, 0.1, 0.2], PAYOFF_ROW, kernels.ROTH_EREV, [100.0, 0.1, 0.2], PAYOFF_COL, ru, cu),
        "play_session LogitResponse": lambda m: m.play_session(
            kernels.LOGIT_RESPONSE, [0.1, 10, 0], PAYOFF_ROW, kernels.LOGIT_RESPONSE, [0.1, 10, 0], PAYOFF_COL, ru, cu),
        "count_pairs": lambda m: m.count_pairs(states),
        "max_entropy_on_segment": lambda m: m.max_entropy_on_segment(0.63, 0.69, 0.32, 0.31 / (rounds - 1), rounds),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return bool(np.array_equal(a, b)) if isinstance(a, np.ndarray) else a == b


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--rounds", type=int, default=50_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not importable; only the Python backend is available")
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for name, fn in cases(args.rounds).items():
        timings, outputs = {}, {}
        for backend, mod in backends.items():
            timings[backend], outputs[backend] = best_of(lambda: fn(mod), args.repeat)
        if len(outputs) == 2:
            assert same(outputs["python"], outputs["cython"]), f"{name}: backends disagree"
            speedup = f"{timings['python'] / timings['cython']:>9.1f}x"
        else:
            speedup = ""
        print(f"{name:<28}" + "".join(f"{timings[b] * 1e3:>10.2f}ms" for b in backends) + speedup)


if __name__ == "__main__":
    main()
