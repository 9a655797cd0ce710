import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poisson_env.envelope import EnvelopeError, build_envelope
from poisson_env.extensions import PoissonOreData, build_poisson_ore_single
from poisson_env.poisson import PoissonAlgebra, check_jacobi
from poisson_env.verify import (
    SuiteConfig,
    check_associativity,
    check_filtration,
    check_gr_commutative,
    check_kahler_lie,
    check_lem1,
    check_property_P,
    check_right_readout,
    check_subalgebra_closure,
    check_termination,
    compare_dedata,
    extract_dedata,
    filtration_violations,
    find_nonassociative_triple,
    lem1_sides,
    random_sample,
    run_suite,
    theorem_dedata,
    verify_ore_single,
    verify_theorem,
)

from conftest import env
from fixtures import FlippedSignEnvelope

DOUBLES = ["trivial.dpe", "quantum_plane.dpe", "diag_alpha.dpe", "offdiag_alpha.dpe"]


def single(alpha=None, nu=None):
    P = PoissonAlgebra(["z"])
    check_jacobi(P)
    A = build_poisson_ore_single(P, PoissonOreData.build(P.vars, alpha=alpha, nu=nu))
    check_jacobi(A)
    return build_envelope(A)


class TestSampling:
    def test_deterministic(self):
        E = env("diag_alpha.dpe")
        assert random_sample(E, 3, seed=7) == random_sample(E, 3, seed=7)

    def test_bound_zero_is_coefficient_only(self):
        E = env("diag_alpha.dpe")
        for s in range(10):
            u = random_sample(E, 0, seed=s)
            assert set(u.terms) == {E.key()}
            assert all(c.is_constant() for c in u.terms.values())

    def test_bound_one_reaches_every_letter(self):
        E = env("diag_alpha.dpe")
        seen = set()
        for s in range(200):
            for key in random_sample(E, 1, seed=s).terms:
                seen |= {i for i, e in enumerate(key) if e}
        assert seen == set(range(E.length))

    @given(st.integers(0, 10_000), st.integers(0, 3))
    @settings(max_examples=30, deadline=None)
    def test_within_bound(self, seed, bound):
        E = env("so3.pois")
        for key, c in random_sample(E, bound, seed=seed).terms.items():
            assert sum(key) + c.degree() <= bound


class TestAssociativity:
    @pytest.mark.parametrize("name", ["trivial.dpe", "symplectic.pois"])
    def test_passes(self, name):
        assert check_associativity(env(name), samples=50, degree=3, seed=1).passed

    def test_corrupted_relation_detected(self):
        bad = FlippedSignEnvelope(env("so3.pois"))
        triple = find_nonassociative_triple(bad, 2)
        assert triple is not None
        u, v, w = triple
        assert bad.nf_mul(bad.nf_mul(u, v), w) != bad.nf_mul(u, bad.nf_mul(v, w))
        v = check_associativity(bad, samples=200, degree=3, seed=0)
        assert not v.passed and v.witness


class TestPropertyP:
    def test_symplectic_single_rewrite(self):
        E = env("symplectic.pois")
        z1, z2 = E.base.gens()
        assert E.i_map(E.base.bracket(z1, z2)) == E.commutator(E.d_map(z1), E.i_map(z2)) == E.one()

    def test_square_leibniz(self):
        E = env("so3.pois")
        f = E.base.poly("z1*z2 + z3")
        assert E.d_map(f * f) == 2 * E.nf_mul(E.i_map(f), E.d_map(f))

    @pytest.mark.parametrize("name", ["symplectic.pois", "so3.pois", "trivial.dpe"])
    def test_passes(self, name):
        assert check_property_P(env(name), samples=30, degree=3, seed=2).passed


class TestLem1:
    def test_examples(self):
        E = env("symplectic.pois")
        one, z2 = E.base.poly("1"), E.base.poly("z2")
        lhs, rhs = lem1_sides(E, one, "z1", one, "z2")
        assert lhs == rhs == E.parse("d(z1) * d(z2)")
        lhs, rhs = lem1_sides(E, one, "z1", z2, "z2")
        assert lhs == rhs == E.parse("z2 * d(z1) * d(z2) + d(z2)")

    def test_zero_bracket(self):
        E = env("trivial.dpe")
        a, b = E.base.poly("z + 1"), E.base.poly("x1")
        lhs, rhs = lem1_sides(E, a, "z", b, "x2")
        assert lhs == rhs == E.product([E.i_map(a * b), E.dgen("z"), E.dgen("x2")])

    @pytest.mark.parametrize("name", ["symplectic.pois", "so3.pois", "diag_alpha.dpe"])
    def test_passes(self, name):
        assert check_lem1(env(name), samples=20, seed=3).passed

    def test_kahler_lie(self):
        assert check_kahler_lie(env("so3.pois"), samples=20).passed


class TestDegrees:
    @pytest.mark.parametrize("name", ["symplectic.pois", "so3.pois", "trivial.dpe", "diag_alpha.dpe"])
    def test_gr_commutative(self, name):
        assert check_gr_commutative(env(name)).passed

    def test_gr_blind_to_sign_flip(self):
        bad = FlippedSignEnvelope(env("so3.pois"))
        assert check_gr_commutative(bad).passed  # a sign flip keeps every degree

    @pytest.mark.parametrize("name", ["trivial.dpe", "diag_alpha.dpe", "quantum_plane.dpe", "so3.pois"])
    def test_no_filtration_violations(self, name):
        v = check_filtration(env(name))
        assert v.passed and v.witness is None and v.data["violations"] == []

    def test_offdiag_violations(self):
        vs = filtration_violations(env("offdiag_alpha.dpe"))
        assert [(v.left, v.right, v.term) for v in vs] == [("x1", "d(z)", "x2"), ("y1", "d(z)", "y2")]
        assert vs[0].degree == "((0), (0,1), (0,0))" and vs[0].bound == "((1), (1,0), (0,0))"
        v = check_filtration(env("offdiag_alpha.dpe"))
        assert v.passed and "x1 * d(z) has x2" in v.witness

    @pytest.mark.parametrize("name", ["so3.pois", "diag_alpha.dpe", "offdiag_alpha.dpe", "ore_single.pois"])
    def test_termination_measure(self, name):
        assert check_termination(env(name)).passed


class TestExtraction:
    def test_quantum_plane_outer(self):
        E = env("quantum_plane.dpe")
        D = extract_dedata(E, "outer")
        s = D.sigma["x1"]
        assert s[1][0].is_zero() and s[1][1] == E.igen("x1")
        assert E.render(D.delta["x1"][1]) == "x1 * x2"
        assert D.p == (0, 1)
        assert [E.render(t) for t in D.tau] == ["x2", "x1", "0"]

    def test_trivial_levels(self):
        E = env("trivial.dpe")
        for level in ("inner", "outer"):
            D = extract_dedata(E, level, composite=True)
            for name, s in D.sigma.items():
                u = E.parse(name)
                assert s == ((u, E.zero()), (E.zero(), u))
                assert all(d.is_zero() for d in D.delta[name])
            assert D.p == (Fraction(0), Fraction(1))
            assert all(t.is_zero() for t in D.tau)

    def test_diag_sigma_of_dz(self):
        E = env("diag_alpha.dpe")
        D = extract_dedata(E, "outer")
        zd = E.parse("z + d(z)")
        assert D.sigma["d(z)"] == ((zd, E.zero()), (E.zero(), zd))

    @pytest.mark.parametrize("name", DOUBLES)
    def test_each_equation_individually(self, name):
        E = env(name)
        for level in ("inner", "outer"):
            want = theorem_dedata(E, level)
            V = [E.letter_element(i) for i in ((E.n, E.n + 1) if level == "inner" else (E.n + 2, E.n + 3))]
            for uname in want.sigma:
                u = E.parse(uname)
                for k in range(2):
                    rhs = sum((E.nf_mul(want.sigma[uname][k][l], V[l]) for l in range(2)), want.delta[uname][k])
                    assert E.nf_mul(V[k], u) == rhs
            p11, p12 = want.p
            t1, t2, t0 = want.tau
            rel = p11 * E.nf_mul(V[0], V[0]) + p12 * E.nf_mul(V[0], V[1]) + E.nf_mul(t1, V[0]) + E.nf_mul(t2, V[1]) + t0
            assert E.nf_mul(V[1], V[0]) == rel

    def test_mismatch_is_reported(self):
        E = env("diag_alpha.dpe")
        got = extract_dedata(E, "outer")
        want = theorem_dedata(E, "outer")
        want.delta["z"] = (E.zero(), E.zero())
        assert compare_dedata(E, got, want).startswith("outer delta_1(z)")

    def test_plain_layer_rejected(self):
        with pytest.raises(EnvelopeError):
            extract_dedata(env("so3.pois"), "outer")


class TestTheorem:
    @pytest.mark.parametrize("name", DOUBLES)
    def test_passes(self, name):
        v = verify_theorem(env(name))
        assert v.passed, v.witness

    def test_corrupted_fails(self):
        E = env("diag_alpha.dpe")
        bad = FlippedSignEnvelope(E, E.n + 3, E.n + 2)  # [y2, y1]
        v = verify_theorem(bad)
        assert not v.passed and "tau" in v.witness

    def test_right_readout(self):
        for name in DOUBLES + ["ore_single.pois"]:
            assert check_right_readout(env(name)).passed


class TestOre:
    def test_bundled_passes(self):
        assert verify_ore_single(env("ore_single.pois")).passed

    def test_literal_variant_fails(self):
        v = verify_ore_single(env("ore_single.pois"), literal=True)
        assert not v.passed and "sigma_2(z)" in v.witness

    def test_sigma1_of_dz(self):
        E = env("ore_single.pois")
        assert E.render(E.parse("x * d(z)")) == "d(z) * x + z * x"

    def test_zero_data(self):
        E = single()
        assert verify_ore_single(E).passed
        D = extract_dedata(E, "outer")
        assert D.delta["d(z)"][0].is_zero()  # x*d(alpha(z)) + d(nu(z)) with alpha = nu = 0

    @pytest.mark.parametrize("alpha, nu", [({"z": "z^2"}, {"z": "1"}), ({"z": "3"}, {"z": "z"})])
    def test_other_data(self, alpha, nu):
        assert verify_ore_single(single(alpha, nu)).passed


class TestClosure:
    @pytest.mark.parametrize("name", ["diag_alpha.dpe", "ore_single.pois", "quantum_plane.dpe"])
    def test_passes(self, name):
        assert check_subalgebra_closure(env(name), samples=20, seed=4).passed

    def test_dz_words_and_identity(self):
        E = env("diag_alpha.dpe")
        rng = random.Random(0)
        words = [random_sample(E, 3, rng=rng, letters=[0]) for _ in range(5)]
        for key in E.product(words).terms:
            assert key[E.n:] == (0,) * (E.length - E.n)
        assert E.product([]) == E.one()


class TestSuites:
    def test_sorted_and_deterministic(self):
        E = env("ore_single.pois")
        cfg = SuiteConfig(samples=5, degree=2, seed=9)
        a = run_suite(E, "all", cfg)
        b = run_suite(E, "all", cfg)
        assert [v.name for v in a] == sorted(v.name for v in a)
        assert [(v.name, v.status, v.witness) for v in a] == [(v.name, v.status, v.witness) for v in b]

    def test_inapplicable_suite(self):
        with pytest.raises(EnvelopeError):
            run_suite(env("so3.pois"), "theorem")
