"""How close is the finite part to g log N?  Summarise the shipped sweeps.

The sweeps are produced by ``x0models sweep`` (see data/asymptotic_bound.json
for the exact invocations).  Prime levels sit very close to ratio 1; prime
powers start far off (N = 169 gives 0.5625) and drift in as N grows.
"""

import json
from pathlib import Path

import numpy as np

DATA = Path(__file__).resolve().parent.parent / "data"


def load(name):
    with open(DATA / name) as fh:
        rows = [json.loads(line) for line in fh]
    return np.array([r["N"] for r in rows]), np.array([r["ratio"] for r in rows])


for name in ("sweep_primes_1e4_1e5.jsonl", "sweep_prime_powers_below_1e7.jsonl"):
    N, ratio = load(name)
    dev = np.abs(ratio - 1)
    print(f"\n{name}: {len(N)} levels")
    edges = [10, 1e3, 1e4, 1e5, 1e6, 1e7]
    for lo, hi in zip(edges, edges[1:]):
        mask = (N >= lo) & (N < hi)
        if mask.any():
            worst = N[mask][np.argmax(dev[mask])]
            print(f"  N in [{lo:>9.0f}, {hi:>9.0f}): {mask.sum():5d} levels, "
                  f"mean ratio {ratio[mask].mean():.5f}, max |ratio-1| {dev[mask].max():.5f} at N={worst}")

bound = json.loads((DATA / "asymptotic_bound.json").read_text())
print(f"\nfrozen bound B = {bound['B']} (tail bound for N > 1e4: {bound['B_prime_powers_above_1e4']})")
