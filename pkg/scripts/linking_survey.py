"""Convergence survey of the Gauss linking sum on projected fiber pairs.

For random base-point pairs, computes the raw Gauss sum of the two
projected fibers at several sampling densities and reports how far the sum
sits from the nearest integer.  The residual should shrink roughly
quadratically with the sample count while the rounded value stays at +-1.
"""
import argparse

import numpy as np

from hopfgeo.hopf import fiber, gauss_linking_sum, project_fiber


def random_pair(rng):
    while True:
        b = rng.standard_normal((2, 3))
        b /= np.linalg.norm(b, axis=1)[:, None]
        if b[0, 2] > 0.95 or b[1, 2] > 0.95:
            continue
        if np.linalg.norm(b[0] - b[1]) < 0.3:
            continue
        return b


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=20)
    parser.add_argument("--densities", default="128,256,512,1024")
    parser.add_argument("--seed", type=int, default=20260825)
    args = parser.parse_args()
    densities = [int(s) for s in args.densities.split(",")]

    rng = np.random.default_rng(args.seed)
    pairs = [random_pair(rng) for _ in range(args.pairs)]

    print(f"{'samples':>8}  {'max |residual|':>15}  {'mean |residual|':>16}  signs")
    for n in densities:
        residuals = []
        signs = set()
        for b in pairs:
            c1 = project_fiber(fiber(b[0], n)).points
            c2 = project_fiber(fiber(b[1], n)).points
            raw = gauss_linking_sum(c1, c2)
            k = round(raw)
            residuals.append(abs(raw - k))
            signs.add(k)
        print(f"{n:>8}  {max(residuals):>15.3e}  "
              f"{np.mean(residuals):>16.3e}  {sorted(signs)}")


if __name__ == "__main__":
    main()
