"""Closed-form vs brute-force Jordan constants of small Heisenberg groups."""
import argparse
import math
import time
from dataclasses import dataclass

from thetajordan import jordan, theta


@dataclass
class OracleConfig:
    types: tuple[tuple[int, ...], ...] = ((1,), (2,), (3,), (4,), (5,), (2, 2))
    bound: int = 512


def run(cfg: OracleConfig):
    print(f"{'type':>10} {'order':>6} {'closed':>7} {'brute':>6} {'subgroups':>10} {'secs':>6}")
    for t in cfg.types:
        H = theta.heisenberg(t)
        if H.order > cfg.bound:
            print(f"{str(t):>10} {H.order:>6} {math.prod(t):>7}  skipped (order above bound)")
            continue
        start = time.perf_counter()
        G = jordan.FiniteGroupTable.from_elements(H.enumerate_elements(), H.element_mul, H.identity)
        rep = jordan.brute_force_jordan(G, cfg.bound)
        print(f"{str(t):>10} {H.order:>6} {math.prod(t):>7} {rep.constant:>6} {rep.subgroup_count:>10} "
              f"{time.perf_counter() - start:>6.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=512)
    args = ap.parse_args()
    run(OracleConfig(bound=args.bound))
