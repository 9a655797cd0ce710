import functools

from poisson_env.cli import envelope_of
from poisson_env.poisson import PoissonAlgebra, check_jacobi


@functools.lru_cache(maxsize=None)
def env(name: str):
    """Enveloping algebra of a bundled instance (shared across tests)."""
    return envelope_of(name)


def so3() -> PoissonAlgebra:
    P = PoissonAlgebra(["z1", "z2", "z3"], {("z1", "z2"): "z3", ("z2", "z3"): "z1", ("z3", "z1"): "z2"})
    check_jacobi(P)
    return P


def symplectic() -> PoissonAlgebra:
    P = PoissonAlgebra(["z1", "z2"], {("z1", "z2"): 1})
    check_jacobi(P)
    return P
