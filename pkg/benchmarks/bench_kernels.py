"""Time the jitted loop kernels against their numpy fallbacks.

Both variants of each kernel are importable regardless of the active
backend, so this script always measures the two implementations side by
side on the same synthetic integer workload and checks that they agree.
With MAXMINCONV_DISABLE_NUMBA=1 the "loop" column is the undecorated
Python loop; expect it to be slow and shrink the sizes accordingly.

Example:
    python3 benchmarks/bench_kernels.py --tnorm product --candidates 4096
"""

import argparse
import time

import numpy as np

from maxminconv._kernels import (
    TAG_LUKASIEWICZ,
    TAG_MIN,
    TAG_PRODUCT,
    _bf_hull_eval_loop,
    _bf_hull_eval_numpy,
    _scan_common_loop,
    _scan_common_numpy,
    backend_name,
)

TAGS = {"min": TAG_MIN, "product": TAG_PRODUCT, "lukasiewicz": TAG_LUKASIEWICZ}


def best_of(fn, trials):
    fn()  # warmup; compiles the jitted variant on first call
    times = []
    for _ in range(trials):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_bf_hull_eval(tag, rng, args):
    k = args.grid
    if tag == TAG_MIN:
        denom, top = 1, k - 1
    else:
        denom = top = k - 1
    lam_vals = np.arange(k, dtype=np.int64)
    x = rng.integers(0, top + 1, size=(args.generators, args.dim), dtype=np.int64)
    ps = rng.integers(0, top + 1, size=(args.candidates, args.dim), dtype=np.int64)

    d64 = np.int64(denom)
    t64 = np.int64(top)
    out_loop = np.asarray(_bf_hull_eval_loop(tag, d64, lam_vals, x, ps, t64))
    out_numpy = _bf_hull_eval_numpy(tag, denom, lam_vals, x, ps, top)
    if not np.array_equal(out_loop.astype(bool), out_numpy.astype(bool)):
        raise SystemExit("bf_hull_eval: backends disagree")

    t_loop = best_of(lambda: _bf_hull_eval_loop(tag, d64, lam_vals, x, ps, t64), args.trials)
    t_numpy = best_of(lambda: _bf_hull_eval_numpy(tag, denom, lam_vals, x, ps, top), args.trials)
    return t_loop, t_numpy, "%d hits / %d candidates" % (int(out_numpy.sum()), args.candidates)


def bench_scan_common(tag, rng, args):
    k = args.grid
    if tag == TAG_MIN:
        denom, top = 1, k - 1
    else:
        denom = top = k - 1
    grid = np.arange(k, dtype=np.int64)
    m = args.generators
    # two clusters at opposite ends so the scan usually has to walk the
    # whole grid before reporting a miss
    low = rng.integers(0, max(2, (top + 1) // 3), size=(m, args.dim), dtype=np.int64)
    high = rng.integers(top - max(1, top // 3), top + 1, size=(m, args.dim), dtype=np.int64)
    gens = np.vstack([low, high])
    offs = np.array([0, m, 2 * m], dtype=np.int64)

    d64 = np.int64(denom)
    t64 = np.int64(top)
    r_loop = int(_scan_common_loop(tag, d64, grid, np.int64(args.dim), gens, offs, t64))
    r_numpy = int(_scan_common_numpy(tag, denom, grid, args.dim, gens, offs, top))
    if r_loop != r_numpy:
        raise SystemExit("scan_common: backends disagree (%d vs %d)" % (r_loop, r_numpy))

    t_loop = best_of(
        lambda: _scan_common_loop(tag, d64, grid, np.int64(args.dim), gens, offs, t64),
        args.trials,
    )
    t_numpy = best_of(
        lambda: _scan_common_numpy(tag, denom, grid, args.dim, gens, offs, top),
        args.trials,
    )
    note = "full miss over %d points" % k**args.dim if r_loop < 0 else "hit at flat %d" % r_loop
    return t_loop, t_numpy, note


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--tnorm", choices=sorted(TAGS), default="product")
    parser.add_argument("--generators", type=int, default=4, help="generators per hull")
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--candidates", type=int, default=2048,
                        help="candidate points for bf_hull_eval")
    parser.add_argument("--grid", type=int, default=9, help="grid values per axis")
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    tag = TAGS[args.tnorm]
    rng = np.random.default_rng(args.seed)
    print(
        "backend=%s tnorm=%s generators=%d dim=%d grid=%d candidates=%d trials=%d"
        % (backend_name(), args.tnorm, args.generators, args.dim, args.grid,
           args.candidates, args.trials)
    )
    header = "%-14s %12s %12s %9s  %s" % ("kernel", "loop [s]", "numpy [s]", "ratio", "notes")
    print(header)
    print("-" * len(header))
    for name, bench in (("bf_hull_eval", bench_bf_hull_eval), ("scan_common", bench_scan_common)):
        t_loop, t_numpy, note = bench(tag, rng, args)
        ratio = t_numpy / t_loop if t_loop > 0 else float("inf")
        print("%-14s %12.6f %12.6f %8.2fx  %s" % (name, t_loop, t_numpy, ratio, note))


if __name__ == "__main__":
    main()
