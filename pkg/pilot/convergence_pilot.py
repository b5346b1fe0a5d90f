"""Pilot run behind the central-moment ratio bands used in the acceptance suite.

Repeats the acceptance protocol (k = 4, N in {128, 256}, 2000 gaussian trials)
under several master seeds and prints the spread of the adjacent-N ratios,
plus the desk-scale spacing KS statistics.

    python pilot/convergence_pilot.py > pilot/convergence_pilot.txt
"""

import sys

from toeplitz_rmt.ensemble import EnsembleConfig
from toeplitz_rmt.statistics import central_moment_from, fit_report, moment_samples, spacing_sample

SEEDS = range(1000, 1006)


def main():
    print("seed  ratio_order2  ratio_order4")
    r2, r4 = [], []
    for seed in SEEDS:
        vals = {}
        for n in (128, 256):
            m = moment_samples(EnsembleConfig(n, master_seed=seed), [4], 2000)[:, 0]
            vals[n] = (central_moment_from(m, 2), central_moment_from(m, 4))
        a, b = vals[128][0] / vals[256][0], vals[128][1] / vals[256][1]
        r2.append(a)
        r4.append(b)
        print(f"{seed}  {a:.4f}  {b:.4f}", flush=True)
    print(f"order2 range [{min(r2):.3f}, {max(r2):.3f}]; band [1.4, 2.9] (ideal 1/N scaling -> 2)")
    print(f"order4 range [{min(r4):.3f}, {max(r4):.3f}]; band [2.5, 6.5] (ideal 1/N^2 scaling -> 4)")
    print()
    print("seed  ks_poisson  ks_goe   (200 matrices, N=400, window 11)")
    for seed in SEEDS:
        rep = fit_report(spacing_sample(EnsembleConfig(400, master_seed=seed), 200, 11))
        print(f"{seed}  {rep.ks_poisson:.4f}  {rep.ks_goe:.4f}", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
