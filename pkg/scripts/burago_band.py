"""max(l_theta - ||theta||) over classes of norm <= R, for growing R.

Reports where the band stops changing on seeded random graphs, next to the
radius 8 * systole.  Short loops far from the other cycles delay the
stabilisation well past that radius.
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from szeta.graph import build_graph, format_graph, homology_basis
from szeta.spectrum import burago_band, systole, tree_weight_bound
from szeta.stable import stable_ball

WEIGHTS = [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3, 2), Fraction(3), Fraction(2, 3)]


@dataclass
class Config:
    seed: int = 2024
    graphs: int = 5
    max_multiple: int = 32
    out: Path = Path("results")


def random_graph(rng):
    n = int(rng.integers(2, 5))
    edges = [(int(rng.integers(0, v)), v, WEIGHTS[rng.integers(len(WEIGHTS))]) for v in range(1, n)]
    for _ in range(int(rng.integers(1, 4))):
        edges.append((int(rng.integers(0, n)), int(rng.integers(0, n)), WEIGHTS[rng.integers(len(WEIGHTS))]))
    return build_graph(edges)


def run(cfg: Config):
    cfg.out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(cfg.seed)
    rows = ["graph,betti,systole,R,band,tree_bound"]
    for i in range(cfg.graphs):
        g = random_graph(rng)
        basis = homology_basis(g)
        ball = stable_ball(g, basis)
        s = systole(g, basis)
        (cfg.out / f"band_graph{i}.graph").write_text(format_graph(g))
        k = 1
        while k <= cfg.max_multiple:
            band = burago_band(g, basis, k * s, ball)
            rows.append(f"{i},{g.betti},{s},{k * s},{band},{tree_weight_bound(g)}")
            print(rows[-1])
            k *= 2
    (cfg.out / "burago_band.csv").write_text("\n".join(rows) + "\n")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=Config.seed)
    p.add_argument("--graphs", type=int, default=Config.graphs)
    p.add_argument("--max-multiple", type=int, default=Config.max_multiple, help="largest R / systole")
    p.add_argument("--out", type=Path, default=Config.out)
    a = p.parse_args()
    run(Config(a.seed, a.graphs, a.max_multiple, a.out))


if __name__ == "__main__":
    main()
