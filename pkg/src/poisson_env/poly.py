"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are exponent tuples aligned with a :class:`VarTable`; a polynomial
is a mapping monomial -> Fraction with no zero coefficients stored.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple[int, ...]


class VarTableMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VarTable:
    """Ordered, duplicate-free list of generator names.

    The position of a name is its index in the well-order used by the
    degree functions (``dz`` of the first name is ``e_1`` and so on).
    """

    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"bad generator name {n!r}")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self.names

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def extend(self, *names: str) -> VarTable:
        return VarTable(self.names + tuple(names))

    def __str__(self) -> str:
        return "(" + ", ".join(self.names) + ")"


def as_vartable(v) -> VarTable:
    if isinstance(v, VarTable):
        return v
    return VarTable(tuple(v))


def _rational(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Polynomial:
    """Immutable sparse polynomial over ``Q`` on a fixed :class:`VarTable`."""

    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, vars, terms: Mapping[Monomial, object] | None = None, *, _trusted=False):
        self.vars = as_vartable(vars)
        if _trusted:
            self._terms = terms
        else:
            n = len(self.vars)
            clean = {}
            for mono, c in (terms or {}).items():
                mono = tuple(mono)
                if len(mono) != n or any(e < 0 for e in mono):
                    raise ValueError(f"bad monomial {mono} for {self.vars}")
                c = _rational(c)
                if c:
                    clean[mono] = clean.get(mono, 0) + c
            self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, vars) -> Polynomial:
        return cls(vars, {}, _trusted=True)

    @classmethod
    def const(cls, vars, c) -> Polynomial:
        vars = as_vartable(vars)
        c = _rational(c)
        return cls(vars, {(0,) * len(vars): c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, vars, name: str) -> Polynomial:
        vars = as_vartable(vars)
        i = vars.index(name)
        mono = tuple(1 if k == i else 0 for k in range(len(vars)))
        return cls(vars, {mono: Fraction(1)}, _trusted=True)

    @classmethod
    def gens(cls, vars) -> list[Polynomial]:
        vars = as_vartable(vars)
        return [cls.var(vars, n) for n in vars]

    # accessors

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.vars), Fraction(0))

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    # arithmetic

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise VarTableMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.vars, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> Polynomial:
        c = _rational(c)
        if not c:
            return Polynomial.zero(self.vars)
        return Polynomial(self.vars, {m: c * v for m, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.vars, {m: c for m, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.vars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self._terms.items())))
        return self._hash

    # calculus

    def partial(self, i: int) -> Polynomial:
        """Partial derivative with respect to the ``i``-th generator."""
        if isinstance(i, str):
            i = self.vars.index(i)
        if not 0 <= i < len(self.vars):
            raise IndexError(f"generator index {i} out of range for {self.vars}")
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial(self.vars, out, _trusted=True)

    # change of rings

    def embed(self, vars) -> Polynomial:
        """Reinterpret over a VarTable containing every name of ``self.vars``."""
        vars = as_vartable(vars)
        if vars == self.vars:
            return self
        pos = [vars.index(n) for n in self.vars]
        out = {}
        for m, c in self._terms.items():
            new = [0] * len(vars)
            for p, e in zip(pos, m):
                new[p] = e
            out[tuple(new)] = c
        return Polynomial(vars, out, _trusted=True)

    def restrict(self, vars) -> Polynomial:
        """Reinterpret over a smaller VarTable; fails if a dropped variable occurs."""
        vars = as_vartable(vars)
        if vars == self.vars:
            return self
        pos = {n: i for i, n in enumerate(self.vars)}
        keep = [pos[n] for n in vars]
        drop = [i for i in range(len(self.vars)) if i not in set(keep)]
        out = {}
        for m, c in self._terms.items():
            if any(m[i] for i in drop):
                raise VarTableMismatch(f"{self} involves variables outside {vars}")
            out[tuple(m[i] for i in keep)] = c
        return Polynomial(vars, out, _trusted=True)

    def substitute(self, images: Mapping[str, Polynomial], vars=None) -> Polynomial:
        """Ring map sending each named generator to ``images[name]`` (others to themselves)."""
        target = as_vartable(vars) if vars is not None else self.vars
        gens = []
        for n in self.vars:
            if n in images:
                gens.append(images[n])
            else:
                gens.append(Polynomial.var(target, n))
        result = Polynomial.zero(target)
        for m, c in self._terms.items():
            t = Polynomial.const(target, c)
            for g, e in zip(gens, m):
                if e:
                    t = t * g**e
            result = result + t
        return result

    # rendering

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Polynomial({render_poly(self)!r}, vars={list(self.vars.names)})"


def _render_mono(vars: VarTable, mono: Monomial) -> str:
    parts = []
    for n, e in zip(vars.names, mono):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def render_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_poly(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(f.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _render_mono(f.vars, m)
        if not mono:
            body = render_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{render_rational(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class Derivation:
    """A derivation of a polynomial ring given by its values on the generators."""

    __slots__ = ("vars", "images")

    def __init__(self, vars, images: Sequence[Polynomial] | Mapping[str, Polynomial] | None = None):
        self.vars = as_vartable(vars)
        if images is None:
            images = {}
        if isinstance(images, Mapping):
            unknown = set(images) - set(self.vars.names)
            if unknown:
                raise KeyError(f"unknown generators {sorted(unknown)}")
            images = [images.get(n, Polynomial.zero(self.vars)) for n in self.vars]
        images = tuple(images)
        if len(images) != len(self.vars):
            raise ValueError("one image per generator required")
        for im in images:
            if im.vars != self.vars:
                raise VarTableMismatch(f"derivation image over {im.vars}, expected {self.vars}")
        self.images = images

    @classmethod
    def zero(cls, vars) -> Derivation:
        return cls(vars)

    def is_zero(self) -> bool:
        return all(im.is_zero() for im in self.images)

    def __call__(self, f: Polynomial) -> Polynomial:
        return derivation_apply(self, f)

    def embed(self, vars) -> Derivation:
        """Extend to a larger ring, killing the new generators."""
        vars = as_vartable(vars)
        imgs = {n: im.embed(vars) for n, im in zip(self.vars, self.images)}
        return Derivation(vars, imgs)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.vars == other.vars and self.images == other.images

    def __repr__(self):
        body = ", ".join(f"{n} -> {im}" for n, im in zip(self.vars, self.images))
        return f"Derivation({body})"


def derivation_apply(D: Derivation, f: Polynomial) -> Polynomial:
    """``D(f) = sum_i (df/dz_i) * D(z_i)``."""
    if D.vars != f.vars:
        raise VarTableMismatch(f"{D.vars} vs {f.vars}")
    result = Polynomial.zero(f.vars)
    for i, im in enumerate(D.images):
        if im:
            p = f.partial(i)
            if p:
                result = result + p * im
    return result


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.vars != g.vars:
        raise VarTableMismatch(f"{f.vars} vs {g.vars}")
    return f * g


def poly_partial(f: Polynomial, i: int) -> Polynomial:
    return f.partial(i)


def poly_sum(polys: Iterable[Polynomial], vars) -> Polynomial:
    total = Polynomial.zero(vars)
    for p in polys:
        total = total + p
    return total
