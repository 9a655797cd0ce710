"""Flip the sign of each rewrite rule in turn and search for a non-associating triple.

Shows that the associativity check is sensitive to every single relation:
rules with a nonzero right-hand side should all be caught by exhaustive
search over low-degree monomial triples.
"""

import argparse
import time
from dataclasses import dataclass

from poisson_env.cli import envelope_of
from poisson_env.envelope import EnvAlgebra
from poisson_env.verify import find_nonassociative_triple


@dataclass(frozen=True)
class Config:
    instance: str = "so3.pois"
    degree: int = 2


class Flipped(EnvAlgebra):
    def __init__(self, E: EnvAlgebra, pair: tuple[int, int]):
        super().__init__(E.base, E.layer, E.xnames)
        self._pair = pair

    def _comm_entry(self, g, h):
        terms = super()._comm_entry(g, h)
        return {k: -v for k, v in terms.items()} if (g, h) == self._pair else terms


def main(cfg: Config) -> None:
    E = envelope_of(cfg.instance)
    for g in range(E.length):
        for h in range(g):
            rule = E.commutation_rule(g, h)
            label = f"[{E.letter_name(g)}, {E.letter_name(h)}] = {E.render(rule)}"
            if rule.is_zero():
                print(f"{label:<40} (zero rule, flip is a no-op)")
                continue
            bad = Flipped(E, (g, h))
            t0 = time.perf_counter()
            w = find_nonassociative_triple(bad, cfg.degree)
            found = "none" if w is None else ", ".join(bad.render(x) for x in w)
            print(f"{label:<40} witness: {found}  ({time.perf_counter() - t0:.2f} s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instance", default=Config.instance)
    ap.add_argument("--degree", type=int, default=Config.degree)
    main(Config(**vars(ap.parse_args())))
