"""Growth of Jordan constants along random pencils Ebold + nE.

For each random pencil prints f(T) = det(Ebold~ + T E~) and the Jordan
constants sqrt(f(n)) of the members; they grow like n^(g - g0).
"""
import argparse
import random
from dataclasses import dataclass

from thetajordan import exact, lattice
from thetajordan import pencil as pc
from thetajordan.appell_humbert import AHData


@dataclass
class GrowthConfig:
    pencils: int = 5
    g: int = 2
    g0: int = 0
    n_max: int = 10
    seed: int = 0


def random_pair(rng: random.Random, g: int, g0: int):
    """Forms on Z^{2g} vanishing on the first 2*g0 basis vectors, E nondegenerate elsewhere."""
    k = 2 * (g - g0)

    def alternating():
        E = exact.zeros(k, k)
        for i in range(k):
            for j in range(i + 1, k):
                E[i][j] = rng.randint(-5, 5)
                E[j][i] = -E[i][j]
        return E

    E = alternating()
    while exact.det(E) == 0:
        E = alternating()
    pad = lambda B: exact.block_diag([[0] * (2 * g0) for _ in range(2 * g0)], B) if g0 else B
    return pad(E), pad(alternating())


def run(cfg: GrowthConfig):
    rng = random.Random(cfg.seed)
    for _ in range(cfg.pencils):
        E, Ebold = random_pair(rng, cfg.g, cfg.g0)
        P = pc.Pencil(AHData.from_alternating(Ebold), AHData.from_alternating(E))
        f = pc.det_polynomial(P)
        rows = pc.growth_table(P, cfg.n_max)
        summary = pc.growth_summary(f, rows)
        print(f"f(T) = {f}")
        print("  jordan:", [r.jordan if not r.degenerate else "deg" for r in rows])
        print("  divisors at n_max:", lattice.symplectic_normal_form(P.E_n(cfg.n_max)).divisors)
        print(f"  strictly increasing from n = {summary['monotone_from']}: {summary['strictly_increasing_tail']}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(GrowthConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    run(GrowthConfig(**vars(ap.parse_args())))
