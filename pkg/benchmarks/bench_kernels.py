"""Time the compiled and pure-Python kernel backends on identical inputs.

    python3 benchmarks/bench_kernels.py --steps 20000 --N 1024 --repeat 5
"""

import argparse
import timeit

import numpy as np

from searchlab import kernels
from searchlab.algorithms import SearchInstance, fg_hamiltonian, rc_matrices
from searchlab.fullspace import rc_full_coefs, uniform_vector
from searchlab.subspace import uniform_state


def workloads(steps, N):
    inst = SearchInstance(N)
    s_half = np.linspace(0.0, 1.0, 2 * steps + 1)
    h = np.ascontiguousarray(rc_matrices(s_half, inst), dtype=complex)
    psi = uniform_state(N).vec
    coefs = np.ascontiguousarray(rc_full_coefs(s_half, inst), dtype=complex)
    v = uniform_vector(N)
    H = fg_hamiltonian(inst).matrix
    const = np.ascontiguousarray(np.broadcast_to(H, (2 * steps + 1, 2, 2)))
    return {
        "rk4_sampled (rc)": lambda b: b.rk4_sampled(h, psi, 0.01),
        "rk4_sampled (fg)": lambda b: b.rk4_sampled(const, psi, 0.01),
        f"rk4_structured (N={N})": lambda b: b.rk4_structured(coefs, 0, v, 0.01),
        f"apply_structured x1000 (N={N})": lambda b: [b.apply_structured(coefs[0], 0, v)
                                                      for _ in range(1000)],
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--steps", type=int, default=20000)
    parser.add_argument("--N", type=int, default=1024)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = kernels.available_backends()
    names = sorted(backends)
    print(f"selected backend: {kernels.BACKEND}; available: {', '.join(names)}")
    print(f"{'kernel':34s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in workloads(args.steps, args.N).items():
        best = {}
        for n in names:
            b = backends[n]
            best[n] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
        row = f"{label:34s}" + "".join(f"{best[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in best:
            row += f"  {best['python'] / best['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
