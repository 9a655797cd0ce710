"""Kähler differentials of a polynomial Poisson algebra.

For ``R = Q[z_1..z_n]`` the module of differentials is free on
``dz_1..dz_n``, so an element ``sum_j f_j dz_j`` is stored as its component
vector.  It is a Lie algebra under::

    [a dr, b ds] = ab d{r,s} + a{r,b} ds - b{s,a} dr

and acts on ``R`` by derivations, ``a dr . b = a{r, b}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .poisson import PoissonAlgebra, bracket
from .poly import Polynomial, VarTable, VarTableMismatch


@dataclass(frozen=True)
class KahlerElement:
    vars: VarTable
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if len(comps) != len(self.vars):
            raise ValueError("one component per generator required")
        for c in comps:
            if c.vars != self.vars:
                raise VarTableMismatch(f"component over {c.vars}, expected {self.vars}")

    @classmethod
    def zero(cls, vars) -> KahlerElement:
        z = Polynomial.zero(vars)
        return cls(z.vars, (z,) * len(z.vars))

    @classmethod
    def basis(cls, vars, j: int | str) -> KahlerElement:
        """``dz_j``."""
        zero = Polynomial.zero(vars)
        if isinstance(j, str):
            j = zero.vars.index(j)
        one = Polynomial.const(zero.vars, 1)
        return cls(zero.vars, tuple(one if k == j else zero for k in range(len(zero.vars))))

    @classmethod
    def from_terms(cls, vars, terms: Sequence[tuple[Polynomial, int | str]]) -> KahlerElement:
        """``sum a * dz_j`` for pairs ``(a, j)``."""
        out = cls.zero(vars)
        for a, j in terms:
            out = out + cls.basis(vars, j).scale(a)
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: KahlerElement) -> KahlerElement:
        self._same(other)
        return KahlerElement(self.vars, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: KahlerElement) -> KahlerElement:
        self._same(other)
        return KahlerElement(self.vars, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> KahlerElement:
        return KahlerElement(self.vars, tuple(-a for a in self.components))

    def scale(self, a: Polynomial) -> KahlerElement:
        """Left module action of ``R``."""
        if not isinstance(a, Polynomial):
            a = Polynomial.const(self.vars, a)
        return KahlerElement(self.vars, tuple(a * c for c in self.components))

    def _same(self, other):
        if other.vars != self.vars:
            raise VarTableMismatch(f"{self.vars} vs {other.vars}")

    def __str__(self):
        parts = [f"({c})*d({n})" for n, c in zip(self.vars.names, self.components) if c]
        return " + ".join(parts) if parts else "0"


def kahler_d(f: Polynomial) -> KahlerElement:
    return KahlerElement(f.vars, tuple(f.partial(i) for i in range(len(f.vars))))


def kahler_bracket(P: PoissonAlgebra, u: KahlerElement, v: KahlerElement) -> KahlerElement:
    if u.vars != P.vars or v.vars != P.vars:
        raise VarTableMismatch("Kähler elements must live over the Poisson algebra's ring")
    gens = P.gens()
    out = KahlerElement.zero(P.vars)
    for i, a in enumerate(u.components):
        if not a:
            continue
        for j, b in enumerate(v.components):
            if not b:
                continue
            r, s = gens[i], gens[j]
            # ab d{r,s} + a{r,b} ds - b{s,a} dr
            term = kahler_d(P.table_entry(i, j)).scale(a * b)
            term = term + KahlerElement.basis(P.vars, j).scale(a * bracket(P, r, b))
            term = term - KahlerElement.basis(P.vars, i).scale(b * bracket(P, s, a))
            out = out + term
    return out


def kahler_action(P: PoissonAlgebra, u: KahlerElement, b: Polynomial) -> Polynomial:
    if u.vars != P.vars or b.vars != P.vars:
        raise VarTableMismatch("Kähler element and polynomial must live over the Poisson algebra's ring")
    out = Polynomial.zero(P.vars)
    for i, a in enumerate(u.components):
        if a:
            out = out + a * bracket(P, P.gens()[i], b)
    return out
