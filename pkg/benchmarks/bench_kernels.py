#!/usr/bin/env python3
"""Compare the numba kernels with their numpy twins on Cora-sized inputs,
then time whole training epochs under each backend.

    python benchmarks/bench_kernels.py [--repeat 20] [--dataset data/cora]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from maskgnn import _kernels as K
from maskgnn.graph import load_dataset

EPOCH_SNIPPET = """
import time, numpy as np
from maskgnn.train import ExperimentConfig, run_trial
from maskgnn.graph import load_dataset
from maskgnn import _kernels
ds = load_dataset({path!r})
cfg = ExperimentConfig(model={model!r}, max_epochs=2, patience=10, compute_mad=False)
run_trial(cfg, ds, 0)  # warm-up (JIT compile / caches)
cfg = ExperimentConfig(model={model!r}, max_epochs={epochs}, patience={epochs}, compute_mad=False)
t = time.perf_counter(); r = run_trial(cfg, ds, 0); dt = time.perf_counter() - t
print(_kernels.backend(), dt / r.epochs_run)
"""


def kernel_inputs(g, heads=8, f=8, seed=0):
    rng = np.random.default_rng(seed)
    indptr, src = g.self_loop_csr
    E = len(src)
    return {
        "indptr": indptr,
        "src": src,
        "w": rng.random((E, heads)),
        "x": rng.normal(size=(g.num_nodes, heads * f)),
        "gout": rng.normal(size=(g.num_nodes, heads * f)),
        "logits": rng.normal(size=(E, heads)),
        "heads": heads,
    }


def calls(kernels, a):
    alpha = K.NUMPY_KERNELS["segment_softmax"](a["indptr"], a["logits"])
    return {
        "segment_sum": lambda: kernels["segment_sum"](a["indptr"], a["src"], a["w"], a["x"], a["heads"]),
        "segment_sum_backward": lambda: kernels["segment_sum_backward"](
            a["indptr"], a["src"], a["w"], a["x"], a["gout"], a["heads"]
        ),
        "segment_softmax": lambda: kernels["segment_softmax"](a["indptr"], a["logits"]),
        "segment_softmax_backward": lambda: kernels["segment_softmax_backward"](
            a["indptr"], alpha, a["logits"]
        ),
        "scatter_rows": lambda: kernels["scatter_rows"](a["src"], a["w"], len(a["indptr"]) - 1),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dataset", default="data/cora")
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--epochs", type=int, default=30)
    args = ap.parse_args()

    ds = load_dataset(args.dataset)
    a = kernel_inputs(ds.graph)
    np_calls, nb_calls = calls(K.NUMPY_KERNELS, a), calls(K.NUMBA_KERNELS, a)
    print(f"{'kernel':<26}{'numpy ms':>10}{'numba ms':>10}{'speedup':>9}  max|diff|")
    for name in np_calls:
        ref, got = np_calls[name](), nb_calls[name]()  # also triggers compilation
        ref = np.concatenate([np.ravel(r) for r in ref]) if isinstance(ref, tuple) else ref
        got = np.concatenate([np.ravel(r) for r in got]) if isinstance(got, tuple) else got
        diff = float(np.max(np.abs(np.asarray(ref) - np.asarray(got))))
        t_np = min(timeit.repeat(np_calls[name], number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(nb_calls[name], number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<26}{t_np:>10.3f}{t_nb:>10.3f}{t_np / t_nb:>8.1f}x  {diff:.1e}")

    print(f"\nper-epoch training time ({args.epochs} epochs, {args.dataset})")
    for model in ("gin", "gat"):
        for flag in ("0", "1"):
            env = dict(os.environ, MASKGNN_NO_JIT=flag)
            code = EPOCH_SNIPPET.format(path=args.dataset, model=model, epochs=args.epochs)
            out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                 text=True, check=True).stdout.split()
            print(f"  {model:<4} {out[0]:<6} {1e3 * float(out[1]):8.1f} ms/epoch")


if __name__ == "__main__":
    main()
