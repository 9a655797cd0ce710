"""Deliberately broken enveloping algebras for negative tests."""

from poisson_env.envelope import EnvAlgebra


class FlippedSignEnvelope(EnvAlgebra):
    """Negates the rewrite rule for one pair of letters ``g > h``."""

    def __init__(self, E: EnvAlgebra, g: int = 1, h: int = 0):
        super().__init__(E.base, E.layer, E.xnames)
        self._flip = (g, h)

    def _comm_entry(self, g, h):
        terms = super()._comm_entry(g, h)
        if (g, h) == self._flip:
            return {k: -v for k, v in terms.items()}
        return terms
