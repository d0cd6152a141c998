"""Census of S-matrix pole kinds over random models.

Counts Bound / Virtual / Metastable / Trapping / unphysical poles per N and
reports the worst pole/zero conjugation residual and any non-converged roots.

    python3 scripts/pole_census.py --count 500 --seed 0
"""

import argparse
import warnings
from collections import Counter, defaultdict

from innerzrp.sampling import random_models
from innerzrp.spectral import PoleKind, UnphysicalPoleWarning, classify, pole_roots, pole_zero_report


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    by_n = defaultdict(Counter)
    worst, unconverged = 0.0, 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnphysicalPoleWarning)
        for m in random_models(args.count, seed=args.seed):
            roots = pole_roots(m.reduced, m.spectrum)
            unconverged += sum(not r.converged for r in roots)
            for p in classify([r.k for r in roots for _ in range(r.multiplicity)]):
                by_n[m.n][p.kind] += p.multiplicity
            worst = max(worst, pole_zero_report(m.reduced, m.spectrum).max_symmetry_residual)

    kinds = list(PoleKind)
    print("N  " + "  ".join(f"{k.value:>20}" for k in kinds))
    for n in sorted(by_n):
        print(f"{n:<2} " + "  ".join(f"{by_n[n][k]:>20}" for k in kinds))
    print(f"worst conjugation residual: {worst:.2e}")
    print(f"non-converged roots: {unconverged}")


if __name__ == "__main__":
    main()
