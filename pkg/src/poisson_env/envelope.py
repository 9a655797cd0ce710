"""Poisson enveloping algebras in PBW normal form.

For a polynomial Poisson algebra ``A`` whose generators split into
coefficient generators ``z_1..z_n`` and extension generators ``x_1..x_k``
(``k = 0`` plain, ``1`` single Poisson-Ore, ``2`` double Poisson-Ore), every
element of ``A^e`` is stored as a combination of standard monomials::

    f(z) * d(z_1)^b_1 ... d(z_n)^b_n * x_1^m_1 ... x_k^m_k * d(x_1)^p_1 ... d(x_k)^p_k

with ``f`` a polynomial in the ``z``.  A key is the flat exponent tuple
``(b_1..b_n, m_1..m_k, p_1..p_k)``; the letters it indexes are ordered
``d(z_1) < ... < d(z_n) < x_1 < ... < x_k < d(x_1) < ... < d(x_k)``.

Multiplication pushes letters rightward into this order using

    [d r, a]   = {r, a}
    [d r, d s] = d{r, s}
    [a, b]     = 0

for ``r, s`` generators of ``A`` and ``a, b`` in ``A``.  Every correction
term has strictly fewer ``d(x)`` letters, or the same number and strictly
fewer ``d(z)`` letters, so the rewriting terminates.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .extensions import DoubleOreOrigin, SingleOreOrigin
from .parse import Interp, ParseError, parse_expression, parse_poly
from .poisson import PoissonAlgebra
from .poly import Polynomial, VarTable, VarTableMismatch

PLAIN = "plain"
SINGLE = "single-ore"
DOUBLE = "double-ore"
LAYERS = (PLAIN, SINGLE, DOUBLE)

Key = tuple[int, ...]


class EnvelopeError(ValueError):
    pass


def _acc(acc: dict, terms: dict, coeff: Polynomial | None = None) -> None:
    """``acc += coeff * terms`` in place (coefficients multiply on the left)."""
    for k, c in terms.items():
        v = c if coeff is None else coeff * c
        s = acc.get(k)
        if s is None:
            acc[k] = v
        else:
            s = s + v
            if s:
                acc[k] = s
            else:
                del acc[k]


class EnvElement:
    """Element of an enveloping algebra: mapping standard-monomial key -> coefficient in ``R``."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg: EnvAlgebra, terms: dict[Key, Polynomial]):
        self.alg = alg
        self.terms = terms
        self._hash = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def _other(self, other) -> EnvElement:
        if isinstance(other, EnvElement):
            if other.alg is not self.alg:
                raise EnvelopeError("elements of different enveloping algebras")
            return other
        if isinstance(other, (int, Fraction, Polynomial)):
            return self.alg.i_map(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        _acc(acc, other.terms)
        return EnvElement(self.alg, acc)

    __radd__ = __add__

    def __neg__(self):
        return EnvElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.alg.nf_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.alg.nf_mul(other, self)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.alg.one()
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> EnvElement:
        """Left multiplication by a scalar or a polynomial in the coefficient generators."""
        if isinstance(c, Polynomial):
            if c.vars != self.alg.coeff_vars:
                raise VarTableMismatch(f"coefficient over {c.vars}, expected {self.alg.coeff_vars}")
        else:
            c = Fraction(c)
            if not c:
                return EnvElement(self.alg, {})
        return EnvElement(self.alg, {k: c * v for k, v in self.terms.items()})

    def coefficient(self, key: Key) -> Polynomial:
        return self.terms.get(tuple(key), Polynomial.zero(self.alg.coeff_vars))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            other = self.alg.i_map(other)
        if not isinstance(other, EnvElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self):
        return self.alg.render(self)

    def __repr__(self):
        return f"EnvElement({self.alg.render(self)!r})"


@functools.total_ordering
@dataclass(frozen=True)
class GDegree:
    """Degree in ``G = G1 x G2 x G3`` (dz-part, x-part, y-part)."""

    g1: tuple[int, ...]
    g2: tuple[int, ...]
    g3: tuple[int, ...]

    def __add__(self, other: GDegree) -> GDegree:
        self._same_shape(other)
        add = lambda a, b: tuple(x + y for x, y in zip(a, b))
        return GDegree(add(self.g1, other.g1), add(self.g2, other.g2), add(self.g3, other.g3))

    def _same_shape(self, other):
        if (len(self.g1), len(self.g2), len(self.g3)) != (len(other.g1), len(other.g2), len(other.g3)):
            raise ValueError("GDegree shape mismatch")

    def __lt__(self, other: GDegree) -> bool:
        return compare_gdegree(self, other) < 0

    def __str__(self):
        f = lambda t: "(" + ",".join(map(str, t)) + ")"
        return f"({f(self.g1)}, {f(self.g2)}, {f(self.g3)})"


def _cmp_component(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Total degree first, then the entry at the highest differing index."""
    sa, sb = sum(a), sum(b)
    if sa != sb:
        return -1 if sa < sb else 1
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return -1 if x < y else 1
    return 0


def compare_gdegree(a: GDegree, b: GDegree) -> int:
    """-1, 0 or 1; the y-part dominates, then the x-part, then the dz-part."""
    a._same_shape(b)
    for part in ("g3", "g2", "g1"):
        c = _cmp_component(getattr(a, part), getattr(b, part))
        if c:
            return c
    return 0


class EnvAlgebra:
    """Handle for the enveloping algebra of a polynomial Poisson algebra.

    Immutable after construction; internal caches only memoise pure
    functions of their arguments.
    """

    def __init__(self, P: PoissonAlgebra, layer: str = PLAIN, xnames: Iterable[str] = ()):
        if layer not in LAYERS:
            raise EnvelopeError(f"unknown layer {layer!r}")
        self.base = P
        self.layer = layer
        self.xnames = tuple(xnames)
        expected = {PLAIN: 0, SINGLE: 1, DOUBLE: 2}[layer]
        if len(self.xnames) != expected:
            raise EnvelopeError(f"layer {layer} needs {expected} extension generators")
        for x in self.xnames:
            P.vars.index(x)
        self.coeff_vars = VarTable(tuple(n for n in P.vars.names if n not in self.xnames))
        self.n = len(self.coeff_vars)
        self.k = len(self.xnames)
        self.length = self.n + 2 * self.k
        # letter i: ('d', var) or ('i', var)
        self.letters: tuple[tuple[str, str], ...] = (
            tuple(("d", z) for z in self.coeff_vars.names)
            + tuple(("i", x) for x in self.xnames)
            + tuple(("d", x) for x in self.xnames)
        )
        self._coeff_pos = [P.vars.index(z) for z in self.coeff_vars.names]
        self._x_pos = [P.vars.index(x) for x in self.xnames]
        self._zero_key = (0,) * self.length
        self._one = Polynomial.const(self.coeff_vars, 1)
        self._gen_cache: dict = {}
        self._mono_cache: dict = {}
        self._comm_cache: dict = {}
        self._act_cache: dict = {}
        self.rewrite_log = None  # set to a list to record (letter, letter) swaps

    # construction of elements

    def zero(self) -> EnvElement:
        return EnvElement(self, {})

    def one(self) -> EnvElement:
        return EnvElement(self, {self._zero_key: self._one})

    def element(self, terms: dict) -> EnvElement:
        """Element from ``{key: coefficient}``; coefficients may be polynomials, strings or numbers."""
        out = {}
        for key, c in terms.items():
            key = tuple(key)
            if len(key) != self.length or any(e < 0 for e in key):
                raise EnvelopeError(f"bad key {key}")
            if isinstance(c, str):
                from .parse import parse_poly

                c = parse_poly(c, self.coeff_vars)
            elif not isinstance(c, Polynomial):
                c = Polynomial.const(self.coeff_vars, c)
            if c.vars != self.coeff_vars:
                raise VarTableMismatch(f"coefficient over {c.vars}")
            if c:
                out[key] = c
        return EnvElement(self, out)

    def key(self, beta=None, x=None, y=None) -> Key:
        beta = tuple(beta) if beta is not None else (0,) * self.n
        x = tuple(x) if x is not None else (0,) * self.k
        y = tuple(y) if y is not None else (0,) * self.k
        if len(beta) != self.n or len(x) != self.k or len(y) != self.k:
            raise EnvelopeError("key shape mismatch")
        return beta + x + y

    def split_key(self, key: Key) -> tuple[Key, Key, Key]:
        n, k = self.n, self.k
        return key[:n], key[n:n + k], key[n + k:]

    def letter_element(self, idx: int) -> EnvElement:
        key = tuple(1 if i == idx else 0 for i in range(self.length))
        return EnvElement(self, {key: self._one})

    def letter_index(self, kind: str, var: str) -> int:
        try:
            return self.letters.index((kind, var))
        except ValueError:
            raise EnvelopeError(f"no letter {kind}({var})") from None

    def dgen(self, var: str) -> EnvElement:
        """``d(var)`` for a generator of the base ring."""
        return self.letter_element(self.letter_index("d", var))

    def igen(self, var: str) -> EnvElement:
        return self.i_map(Polynomial.var(self.base.vars, var))

    def letter_name(self, idx: int) -> str:
        kind, var = self.letters[idx]
        if kind == "i":
            return var
        if var in self.xnames:
            return self.y_name(var)
        return f"d({var})"

    def y_name(self, xvar: str) -> str:
        alias = "y" + xvar[1:] if xvar.startswith("x") else None
        if alias and alias not in self.base.vars and alias.isidentifier():
            return alias
        return f"d({xvar})"

    # maps from the base ring

    def _to_base(self, f) -> Polynomial:
        V = self.base.vars
        if isinstance(f, (int, Fraction)):
            return Polynomial.const(V, f)
        if f.vars == V:
            return f
        if all(n in V for n in f.vars.names):
            return f.embed(V)
        raise VarTableMismatch(f"{f.vars} is not part of {V}")

    def i_map(self, f) -> EnvElement:
        """Image of ``f`` in ``A`` (x-powers go to the key, the rest to the coefficient)."""
        f = self._to_base(f)
        out: dict[Key, dict] = {}
        zeros_beta = (0,) * self.n
        zeros_y = (0,) * self.k
        for m, c in f.items():
            cm = tuple(m[p] for p in self._coeff_pos)
            xm = tuple(m[p] for p in self._x_pos)
            out.setdefault(zeros_beta + xm + zeros_y, {})[cm] = c
        return EnvElement(self, {k: Polynomial(self.coeff_vars, v, _trusted=True) for k, v in out.items()})

    def d_map(self, f) -> EnvElement:
        """``d f = sum_v i(df/dv) d(v)`` over all generators ``v`` of ``A``."""
        f = self._to_base(f)
        acc: dict = {}
        for idx, name in enumerate(self.base.vars.names):
            p = f.partial(idx)
            if p:
                _acc(acc, self.nf_mul(self.i_map(p), self.dgen(name)).terms)
        return EnvElement(self, acc)

    # relation data

    def _bracket(self, r: str, s: str) -> Polynomial:
        P = self.base
        return P.bracket(P.gen(r), P.gen(s))

    def _act_entry(self, g: int, j: int) -> dict:
        """``[letter g, z_j]`` as raw terms."""
        kind, r = self.letters[g]
        if kind == "i":
            return {}
        return self.i_map(self._bracket(r, self.coeff_vars.names[j])).terms

    def _act(self, g: int, j: int) -> dict:
        key = (g, j)
        v = self._act_cache.get(key)
        if v is None:
            v = self._act_cache[key] = self._act_entry(g, j)
        return v

    def _comm_entry(self, g: int, h: int) -> dict:
        """``[letter g, letter h]`` for ``g > h`` as raw terms."""
        (kg, r), (kh, s) = self.letters[g], self.letters[h]
        if kg == "i" and kh == "i":
            return {}
        if kg == "d" and kh == "i":
            return self.i_map(self._bracket(r, s)).terms
        if kg == "i" and kh == "d":
            return self.i_map(-self._bracket(s, r)).terms
        return self.d_map(self._bracket(r, s)).terms

    def commutation_rule(self, g: int, h: int) -> EnvElement:
        """``[g, h]`` for letters ``g > h`` (the right-hand side used in rewriting)."""
        if not g > h:
            raise EnvelopeError("rules are indexed by g > h")
        return EnvElement(self, self._comm(g, h))

    def coefficient_rule(self, g: int, j: int) -> EnvElement:
        """``[g, z_j]`` for a letter ``g`` and coefficient generator ``z_j``."""
        return EnvElement(self, self._act(g, j))

    def _comm(self, g: int, h: int) -> dict:
        key = (g, h)
        v = self._comm_cache.get(key)
        if v is None:
            v = self._comm_cache[key] = self._comm_entry(g, h)
        return v

    def _coeff_comm(self, g: int, c: Polynomial) -> dict:
        """``[letter g, c]`` for ``c`` in the coefficient ring."""
        if self.letters[g][0] == "i" or c.is_constant():
            return {}
        acc: dict = {}
        for j in range(self.n):
            p = c.partial(j)
            if p:
                a = self._act(g, j)
                if a:
                    _acc(acc, a, p)
        return acc

    # rewriting

    def _gen_mono(self, g: int, L: Key) -> dict:
        """``letter_g * M_L`` in normal form."""
        ck = (g, L)
        cached = self._gen_cache.get(ck)
        if cached is not None:
            return cached
        h = next((i for i, e in enumerate(L) if e), None)
        if h is None or g <= h:
            out = {L[:g] + (L[g] + 1,) + L[g + 1:]: self._one}
        else:
            if self.rewrite_log is not None:
                self.rewrite_log.append((g, h))
            rest = L[:h] + (L[h] - 1,) + L[h + 1:]
            out = self._gen_elem(h, self._gen_mono(g, rest))
            corr = self._comm(g, h)
            for K, c in corr.items():
                _acc(out, self._mono_mono(K, rest), c)
        self._gen_cache[ck] = out
        return out

    def _gen_elem(self, g: int, X: dict) -> dict:
        """``letter_g * X`` for raw terms ``X``."""
        acc: dict = {}
        for L, c in X.items():
            _acc(acc, self._gen_mono(g, L), c)
            corr = self._coeff_comm(g, c)
            for K, c2 in corr.items():
                _acc(acc, self._mono_mono(K, L), c2)
        return acc

    def _letters_of(self, K: Key) -> list[int]:
        out = []
        for i, e in enumerate(K):
            out.extend([i] * e)
        return out

    def _mono_mono(self, K: Key, L: Key) -> dict:
        """``M_K * M_L`` with unit coefficients."""
        ck = (K, L)
        cached = self._mono_cache.get(ck)
        if cached is not None:
            return cached
        X = {L: self._one}
        for g in reversed(self._letters_of(K)):
            X = self._gen_elem(g, X)
        self._mono_cache[ck] = X
        return X

    def nf_mul(self, u: EnvElement, v: EnvElement) -> EnvElement:
        if u.alg is not self or v.alg is not self:
            raise EnvelopeError("elements of different enveloping algebras")
        acc: dict = {}
        for K, c in u.terms.items():
            X = v.terms
            for g in reversed(self._letters_of(K)):
                X = self._gen_elem(g, X)
            _acc(acc, X, c)
        return EnvElement(self, acc)

    def commutator(self, u: EnvElement, v: EnvElement) -> EnvElement:
        return self.nf_mul(u, v) - self.nf_mul(v, u)

    def product(self, factors: Iterable[EnvElement]) -> EnvElement:
        out = self.one()
        for f in factors:
            out = self.nf_mul(out, f)
        return out

    # degrees

    def g_degree(self, key: Key, coeff: Polynomial | None = None) -> GDegree:
        if coeff is not None and coeff.is_zero():
            raise EnvelopeError("degree of a zero term")
        b, x, y = self.split_key(tuple(key))
        return GDegree(b, x, y)

    def letter_degree(self, idx: int) -> GDegree:
        return self.g_degree(tuple(1 if i == idx else 0 for i in range(self.length)))

    def zero_degree(self) -> GDegree:
        return self.g_degree(self._zero_key)

    def sorted_keys(self, u: EnvElement) -> list[Key]:
        """Keys in descending degree order."""
        return sorted(u.terms, key=functools.cmp_to_key(lambda a, b: compare_gdegree(self.g_degree(a), self.g_degree(b))), reverse=True)

    # rendering and parsing

    def render_monomial(self, key: Key) -> str:
        parts = []
        for idx, e in enumerate(key):
            if e:
                name = self.letter_name(idx)
                parts.append(name if e == 1 else f"{name}^{e}")
        return " * ".join(parts)

    def render(self, u: EnvElement) -> str:
        if not u.terms:
            return "0"
        out = []
        for i, key in enumerate(self.sorted_keys(u)):
            c = u.terms[key]
            mono = self.render_monomial(key)
            neg = False
            if len(c) == 1:
                ((m, a),) = c.items()
                if a < 0:
                    neg, c = True, -c
                cs = str(c)
            else:
                cs = f"({c})"
            if not mono:
                body = cs
            elif c == 1:
                body = mono
            else:
                body = f"{cs} * {mono}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def parse(self, text: str) -> EnvElement:
        """Ordered-product expression, e.g. ``"d(z1) * z2"`` or ``"y2 * y1"``.

        ``d(f)`` accepts any polynomial ``f`` of the base algebra.
        """
        aliases = {self.y_name(x): x for x in self.xnames}

        def name(n, pos):
            if n in self.base.vars:
                return self.igen(n)
            if n in aliases:
                return self.dgen(aliases[n])
            raise ParseError(f"unknown generator {n!r}", pos)

        def call(fn, arg, pos):
            if fn != "d":
                raise ParseError(f"unknown function {fn!r}", pos)
            try:
                return self.d_map(parse_poly(arg, self.base.vars))
            except ParseError as exc:
                raise ParseError(exc.msg, None if exc.pos is None else pos + exc.pos) from None

        interp = Interp(
            const=lambda c: self.i_map(c),
            name=name,
            add=lambda a, b: a + b,
            mul=self.nf_mul,
            neg=lambda a: -a,
            call=call,
            pow=lambda a, e: a**e,
        )
        return parse_expression(text, interp)

    def opposite(self) -> EnvAlgebra:
        """Enveloping algebra of ``A`` with the negated bracket, isomorphic to the
        opposite algebra via ``a -> a``, ``d r -> d r``.
        """
        P = self.base
        neg = PoissonAlgebra(P.vars, {k: -v for k, v in P.table().items()}, origin=P.origin)
        neg.jacobi_verified = P.jacobi_verified
        return EnvAlgebra(neg, self.layer, self.xnames)

    def __repr__(self):
        return f"EnvAlgebra({self.layer}, letters={[self.letter_name(i) for i in range(self.length)]})"


def build_envelope(P: PoissonAlgebra, layer: str | None = None) -> EnvAlgebra:
    """Enveloping algebra of ``P``.

    ``layer`` defaults to what ``P.origin`` records: ``double-ore`` for an
    algebra from :func:`build_double_poisson_ore`, ``single-ore`` for one from
    :func:`build_poisson_ore_single`, ``plain`` otherwise.
    """
    if not P.jacobi_verified:
        raise EnvelopeError("bracket has not passed check_jacobi")
    origin = P.origin
    if layer is None:
        layer = DOUBLE if isinstance(origin, DoubleOreOrigin) else SINGLE if isinstance(origin, SingleOreOrigin) else PLAIN
    if layer == PLAIN:
        return EnvAlgebra(P, PLAIN)
    if layer == DOUBLE:
        if not isinstance(origin, DoubleOreOrigin):
            raise EnvelopeError("double-ore layer needs an algebra built by build_double_poisson_ore")
        return EnvAlgebra(P, DOUBLE, origin.xnames)
    if not isinstance(origin, SingleOreOrigin):
        raise EnvelopeError("single-ore layer needs an algebra built by build_poisson_ore_single")
    return EnvAlgebra(P, SINGLE, (origin.xname,))


def nf_mul(E: EnvAlgebra, u: EnvElement, v: EnvElement) -> EnvElement:
    return E.nf_mul(u, v)


def commutator(E: EnvAlgebra, u: EnvElement, v: EnvElement) -> EnvElement:
    return E.commutator(u, v)


def i_map(E: EnvAlgebra, f) -> EnvElement:
    return E.i_map(f)


def d_map(E: EnvAlgebra, f) -> EnvElement:
    return E.d_map(f)


def g_degree(E: EnvAlgebra, key: Key, coeff: Polynomial | None = None) -> GDegree:
    return E.g_degree(key, coeff)


def embed_kahler(E: EnvAlgebra, u) -> EnvElement:
    """``sum_j i(f_j) d(z_j)`` for a Kähler element over a subring of the base."""
    acc = E.zero()
    for name, f in zip(u.vars.names, u.components):
        if f:
            if name not in E.base.vars:
                raise EnvelopeError(f"generator {name!r} not in the enveloping algebra")
            acc = acc + E.nf_mul(E.i_map(f), E.dgen(name))
    return acc

