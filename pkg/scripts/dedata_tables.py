"""Print the DE-data read off an enveloping algebra next to the closed forms."""

import argparse
from dataclasses import dataclass

from poisson_env.cli import envelope_of
from poisson_env.verify import extract_dedata, theorem_dedata


@dataclass(frozen=True)
class Config:
    instance: str = "diag_alpha.dpe"
    composite: bool = False


def main(cfg: Config) -> None:
    E = envelope_of(cfg.instance)
    r = E.render
    for level in ("inner", "outer"):
        got = extract_dedata(E, level, cfg.composite)
        want = theorem_dedata(E, level, cfg.composite)
        print(f"== {level} level")
        for u in got.sigma:
            for k in range(2):
                row = ", ".join(r(e) for e in got.sigma[u][k])
                mark = "ok" if got.sigma[u][k] == want.sigma[u][k] and got.delta[u][k] == want.delta[u][k] else "MISMATCH"
                print(f"  V{k + 1} * {u}: sigma row [{row}], delta {r(got.delta[u][k])}  {mark}")
        print(f"  P = {tuple(str(p) for p in got.p)}, tau = ({', '.join(r(t) for t in got.tau)})"
              f"  {'ok' if got.p == want.p and got.tau == want.tau else 'MISMATCH'}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("instance", nargs="?", default=Config.instance)
    ap.add_argument("--composite", action="store_true")
    main(Config(**vars(ap.parse_args())))
