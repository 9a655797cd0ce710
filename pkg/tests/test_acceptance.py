"""Acceptance criteria, exact equality throughout.

Each test prints one ``ACCEPTANCE <n> <label>: PASS|FAIL`` line (bypassing
output capture) before asserting.
"""

import itertools
import time

import pytest

from poisson_env.cli import load_instance, run_command
from poisson_env.extensions import build_double_poisson_ore, compare_brackets, decompose_iterated
from poisson_env.poisson import check_jacobi
from poisson_env.verify import (
    check_associativity,
    check_lem1,
    check_property_P,
    check_subalgebra_closure,
    filtration_violations,
    find_nonassociative_triple,
    generators,
    verify_ore_single,
)

from conftest import env
from fixtures import FlippedSignEnvelope

ENVELOPED = [
    "diag_alpha.dpe", "offdiag_alpha.dpe", "ore_single.pois", "quantum_plane.dpe",
    "so3.pois", "symplectic.pois", "trivial.dpe",
]


@pytest.fixture
def report(capsys):
    def emit(n: int, label: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n:2d} {label}: {'PASS' if ok else 'FAIL'}{' (' + detail + ')' if detail else ''}")
        assert ok, detail

    return emit


def cli(capsys, *argv):
    code = run_command(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_01_theorem_closed_forms(capsys, report):
    results = {}
    for name in ["trivial.dpe", "quantum_plane.dpe", "diag_alpha.dpe", "offdiag_alpha.dpe"]:
        t0 = time.perf_counter()
        code, out, _ = cli(capsys, "verify", name, "--suite", "theorem")
        results[name] = (code, out, time.perf_counter() - t0)
    ok = all(c == 0 and o.startswith("CHECK theorem PASS") and s < 10 for c, o, s in results.values())
    slowest = max(s for _, _, s in results.values())
    report(1, "closed-form DE-data at both levels", ok, f"slowest {slowest:.2f} s")


def test_02_quadratic_relation(report):
    E = env("quantum_plane.dpe")
    got = E.parse("y2 * y1")
    want = E.parse("y1") * E.parse("y2") + E.parse("x2") * E.parse("y1") + E.parse("x1") * E.parse("y2")
    report(2, "y2*y1 on the quantum plane", got == want, E.render(got))


def test_03_associativity_and_corruption(report):
    fails = [n for n in ENVELOPED if not check_associativity(env(n), samples=200, degree=3, seed=0).passed]
    bad = FlippedSignEnvelope(env("so3.pois"))
    witness = find_nonassociative_triple(bad, 2)
    ok = not fails and witness is not None
    detail = f"failing {fails}" if fails else f"corruption witness {tuple(bad.render(w) for w in witness or ())}"
    report(3, "associativity on all instances, corruption detected", ok, detail)


def test_04_property_P(report):
    ok = all(check_property_P(env(n), samples=100, degree=3, seed=0).passed for n in ["symplectic.pois", "so3.pois"])
    report(4, "property P on symplectic and so3", ok)


def test_05_jacobi_gate(capsys, report):
    c1, o1, _ = cli(capsys, "check-jacobi", "so3.pois")
    c2, o2, _ = cli(capsys, "check-jacobi", "nonjacobi.pois")
    ok = c1 == 0 and o1.startswith("CHECK jacobi PASS") and c2 == 1
    ok = ok and "CHECK jacobi FAIL [witness: (z1, z2, z3) -> z1 + z2 + z3]" in o2
    report(5, "Jacobi gate", ok)


def test_06_condition_e_gate(capsys, report):
    good = [cli(capsys, "check-dedata", n)[0] for n in ["diag_alpha.dpe", "offdiag_alpha.dpe"]]
    code, out, _ = cli(capsys, "check-dedata", "bad_e.dpe")
    inst = load_instance("bad_e.dpe")
    check_jacobi(inst.base)
    unchecked = build_double_poisson_ore(inst.base, inst.extension, unchecked=True)
    jac = check_jacobi(unchecked)
    ok = good == [0, 0] and code == 1 and "CHECK dedata.e FAIL [witness: a=z2, defect -1]" in out and not jac.passed
    report(6, "condition (e) gate and Jacobi of the bypassed build", ok, jac.witness or "")


def test_07_lem1(report):
    report(7, "product of embedded differentials", check_lem1(env("symplectic.pois"), samples=50, seed=0, degree=2).passed)


def test_08_gr_commutative(report):
    from poisson_env.verify import check_gr_commutative

    ok = all(check_gr_commutative(env(n)).passed for n in ["symplectic.pois", "so3.pois"])
    report(8, "associated graded is commutative", ok)


def test_09_filtration_probe(report):
    clean = [filtration_violations(env(n)) for n in ["trivial.dpe", "diag_alpha.dpe"]]
    vs = filtration_violations(env("offdiag_alpha.dpe"))
    found = [(v.left, v.right, v.term, v.degree, v.bound) for v in vs]
    expected = [
        ("x1", "d(z)", "x2", "((0), (0,1), (0,0))", "((1), (1,0), (0,0))"),
        ("y1", "d(z)", "y2", "((0), (0,0), (0,1))", "((1), (0,0), (1,0))"),
    ]
    ok = clean == [[], []] and found == expected
    report(9, "filtration probe", ok, "; ".join(f"{a} * {b} -> {t}" for a, b, t, *_ in found))


def test_10_single_ore(capsys, report):
    code, out, _ = cli(capsys, "verify", "ore_single.pois", "--suite", "ore")
    ok = code == 0 and out.startswith("CHECK ore PASS") and verify_ore_single(env("ore_single.pois")).passed
    report(10, "single extension formulas", ok)


def test_11_iterated_decomposition(report):
    inst = load_instance("diag_alpha.dpe")
    check_jacobi(inst.base)
    dec = decompose_iterated(inst.base, inst.extension)
    direct = build_double_poisson_ore(inst.base, inst.extension)
    x1 = dec.middle.gen("x1")
    ok = (
        compare_brackets(dec.iterated, direct) is None
        and dec.second.alpha(x1) == x1
        and dec.second.nu(x1) == x1 * x1
    )
    report(11, "iterated decomposition of the diagonal instance", ok)


def test_12_trivial_commutative(report):
    E = env("trivial.dpe")
    gens = generators(E)
    pairs = list(itertools.combinations(gens, 2))
    nonzero = [(a, b) for (a, u), (b, v) in pairs if not E.commutator(u, v).is_zero()]
    report(12, "trivial instance is commutative", len(gens) == 6 and len(pairs) == 15 and not nonzero, f"{len(pairs)} pairs")


def test_13_closure(report):
    report(13, "z/dz subalgebra closure", check_subalgebra_closure(env("diag_alpha.dpe"), samples=50, seed=0).passed)
