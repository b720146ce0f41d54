"""Compare the compiled and numpy kernel backends on dense phase-flip updates.

    python benchmarks/bench_kernels.py [--qubits 20] [--repeat 5]
"""
import argparse
import time

import numpy as np

from setlab.kernels import get_backend
from setlab.lattice import build_torus
from setlab.model import SetModel
from setlab.oracle import operator_masks


def bench(backend, amps, masks, xmask, repeat):
    backend.apply_phase_flip(amps, masks, xmask)  # warm up
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        backend.apply_phase_flip(amps, masks, xmask)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    lat = build_torus(2, 2)
    model = SetModel(lat)
    rng = np.random.default_rng(0)
    amps = rng.standard_normal(1 << lat.n_sites) + 0j
    cases = {
        "entangler (12 CCZ)": model.full_entangler().operator,
        "dressed plaquette": model.beta((1, 0), model.stabilizers()[-1]) * model.stabilizers()[-1],
        "symmetry flip": model.symmetry_operator((1, 1)),
    }
    try:
        backends = {"cython": get_backend("cython")}
    except ImportError:
        backends = {}
        print("compiled backend not built; timing the numpy fallback only")
    backends["python"] = get_backend("python")
    print(f"{lat.n_sites} qubits, best of {args.repeat}")
    for name, op in cases.items():
        masks, xmask = operator_masks(op)
        times = {b: bench(m, amps, masks, np.uint64(xmask), args.repeat) for b, m in backends.items()}
        ref = backends["python"].apply_phase_flip(amps, masks, np.uint64(xmask))
        agree = all(np.array_equal(m.apply_phase_flip(amps, masks, np.uint64(xmask)), ref) for m in backends.values())
        cols = "  ".join(f"{b}: {t * 1e3:8.2f} ms" for b, t in times.items())
        speed = f"  speedup {times['python'] / times['cython']:.1f}x" if "cython" in times else ""
        print(f"{name:<22} {cols}{speed}  agree={agree}")


if __name__ == "__main__":
    main()
