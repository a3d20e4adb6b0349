"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--batch 2000]

Each row reports the best of ``repeat`` runs per backend and the speedup.
Both backends get the same inputs and their outputs are compared first.
"""
import argparse
import timeit

import numpy as np

from drkit import kernels
from drkit.clifford import build_irreducible
from drkit.exact import unit_vectors


def cases(batch: int):
    rng = np.random.default_rng(0)
    X, Y, Z = rng.standard_normal((3, batch, 16))
    a, b = rng.standard_normal((2, batch, 8))
    out = [
        ("oct_mul_batch", "oct_mul_batch", (a, b)),
        ("cayley_curvature_batch", "cayley_curvature_batch", (X, Y, Z, 1)),
        ("cayley_sectional_batch", "cayley_sectional_batch", (X, Y, 1)),
    ]
    for m in (2, 6, 7):
        G = build_irreducible(m).float_generators
        Ts = unit_vectors(1, batch // 4, 1 + G.shape[1] + m)
        out.append((f"jacobi_matrix_batch m={m}", "jacobi_matrix_batch", (G, Ts)))
        out.append((f"jacobi_traces_batch m={m}", "jacobi_traces_batch", (G, Ts)))
    return out


def _agree(x, y) -> float:
    if isinstance(x, tuple):
        return max(_agree(p, q) for p, q in zip(x, y))
    return float(np.abs(np.asarray(x) - np.asarray(y)).max())


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--batch", type=int, default=2000)
    args = p.parse_args(argv)

    backends = kernels.available()
    if "compiled" not in backends:
        print("compiled kernels not built; timing the numpy fallback only")
    mods = {name: kernels.module(name) for name in backends}
    header = f"{'kernel':<28}" + "".join(f"{name:>12}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}{'max diff':>11}"
    print(header)
    for label, fn, fargs in cases(args.batch):
        best = {}
        for name, mod in mods.items():
            f = getattr(mod, fn)
            best[name] = min(timeit.repeat(lambda: f(*fargs), number=1, repeat=args.repeat))
        row = f"{label:<28}" + "".join(f"{best[n] * 1e3:>10.2f}ms" for n in backends)
        if len(backends) == 2:
            diff = _agree(getattr(mods["compiled"], fn)(*fargs), getattr(mods["python"], fn)(*fargs))
            row += f"{best['python'] / best['compiled']:>9.1f}x{diff:>11.1e}"
        print(row)


if __name__ == "__main__":
    main()
