"""Estimate a fleet size from observed serial numbers.

Draws n serial numbers uniformly from [0, true_max], fits the known-lower
uniform width case with the non-informative limit, and reports how the
posterior over the maximum concentrates, next to the classical unbiased
point estimate max * (n + 1) / n.

Run:  python3 scripts/german_tank_demo.py --n 12 --true-max 2000 --seed 7
"""

import argparse

import numpy as np

from tailbayes.conjugate_uniform import noninformative, predictive_w
from tailbayes.sufficient import suff_stats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=12, help="observed serials")
    parser.add_argument("--true-max", type=float, default=2000.0)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    serials = np.floor(rng.uniform(0.0, args.true_max, size=args.n))
    stats = suff_stats(serials)

    post = noninformative("width", stats, l=0.0)
    width_dist = post.distribution()
    pred = predictive_w(post)

    classical = stats.max * (args.n + 1) / args.n
    print(f"observed {args.n} serials, largest {stats.max:.0f} "
          f"(true maximum {args.true_max:.0f})")
    print(f"posterior over the maximum: Pareto(shape={width_dist.alpha:.0f}, "
          f"edge={width_dist.l:.0f})")
    for p in (0.5, 0.9, 0.99):
        print(f"  {p:4.0%} credible upper value: "
              f"{post.l + float(width_dist.quantile(p)):10.1f}")
    print(f"posterior mean of the maximum: "
          f"{post.l + stats.max * post.n_eff / (post.n_eff - 1):10.1f}")
    print(f"classical max*(n+1)/n estimate: {classical:10.1f}")
    print(f"predictive for the next serial: uniform on "
          f"[{pred.l:.1f}, {pred.u:.1f}] "
          f"(stretches past the observed maximum)")


if __name__ == "__main__":
    main()
