"""Delta-sequence baseline: sigma(eps) / (4 pi eps^2 r0^2) against eps.

For the repulsive sequence the ratio is (tanh x / x - 1)^2 with
x = sqrt(3 |a| / (eps r0)), so near eps -> 0 it behaves like (1 - 1/x)^2 and
reaches the 1% band only once x >= 200, i.e. eps <= 3 |a| / (r0 * 200^2).
The attractive sequence has tan poles that accumulate as eps -> 0.

    python3 scripts/delta_sequence.py --a 1 --r0 1
"""

import argparse
import math

from innerzrp.baselines import DeltaSequenceParams, delta_ratio, eps_sweep


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--r0", type=float, default=1.0)
    ap.add_argument("--eps-min", type=float, default=1e-6)
    ap.add_argument("--eps-max", type=float, default=1e-1)
    args = ap.parse_args(argv)

    print("repulsive")
    print(f"{'eps':>10} {'x':>10} {'ratio':>12} {'(1-1/x)^2':>12}")
    for e in (1e-1, 1e-2, 1e-3, 1e-4, 7.5e-5, 1e-5, 1e-6, 1e-8):
        p = DeltaSequenceParams(abs(args.a), args.r0, e)
        print(f"{e:>10.1e} {p.x:>10.2f} {delta_ratio(p):>12.6f} {(1 - 1 / p.x) ** 2:>12.6f}")
    print(f"ratio >= 0.99 needs eps <= {3 * abs(args.a) / (args.r0 * 199.5**2):.3e}")

    for attractive in (False, True):
        a = -abs(args.a) if attractive else abs(args.a)
        out = eps_sweep(a, args.r0, attractive, args.eps_min, args.eps_max)
        label = "attractive" if attractive else "repulsive"
        print(f"{label}: {out.eps.size} grid points, last-decade spread {out.spread:.3g}, mean {out.mean:.3g}, "
              f"converged = {out.converged}")


if __name__ == "__main__":
    main()
