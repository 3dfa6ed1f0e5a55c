import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rees_kit.arith import Ring
from rees_kit.families import (
    binary_ideal,
    link_ideal,
    mono_rees_candidate,
    mono_rees_ring,
    random_aci,
)
from rees_kit.groebner import Ideal, ideal_equality, minimal_generators, spoly_check
from rees_kit.rees import (
    AnalyzeOptions,
    FSequence,
    InvariantViolation,
    PowerColengths,
    ReesColengths,
    analyze,
    edeg,
    fiber_ideal,
    huckaba_test,
    is_birational,
    nu_T,
    presentation_degrees,
    reduction_number,
    rees_ideal,
    rees_membership,
    reltype,
    sdeg,
    verify_rees_candidate,
)

from conftest import FAST_SUITE, suite_instance, suite_report

R2 = Ring(["x", "y"])
X, Y = R2.gens()


def test_linear_type_pair():
    pres = rees_ideal([X, Y])
    B = pres.B
    assert ideal_equality(pres.L, Ideal([B("x*T2 - y*T1")]))
    assert rees_membership(B("x*T2 - y*T1"), [X, Y])
    assert not rees_membership(B("T1"), [X, Y])
    assert reltype(pres.mingens) == 1
    assert nu_T(pres.mingens) == 0
    assert sdeg(pres) == 0
    assert verify_rees_candidate(Ideal([B("x*T2 - y*T1")]), [X, Y], pres) == (True, True)


def test_elimination_route_agrees_with_saturation():
    for name in ("mono3", "binary3", "binary4"):
        I, J = suite_instance(name)
        a = rees_ideal(I, method="saturation")
        b = rees_ideal(I, method="elimination")
        assert ideal_equality(a.L, Ideal([g.to_ring(a.B) for g in b.L.gens], a.B))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_mono_candidate(n):
    B, gens, tn = mono_rees_ring(n)
    cand = mono_rees_candidate(n)
    assert len(cand) == 10
    assert all(rees_membership(g, gens, tn) for g in cand)
    if n == 3:
        assert cand[2] == B("x^2*u - y*z*T1")
        assert cand[-1] == B("u^3 - T1*T2*T3")
        pres = rees_ideal(gens, tn)
        assert len(pres.mingens) == 10
        assert max(g.bidegree()[1] for g in pres.mingens) == 3
        assert sum(1 for g in pres.mingens if g.bidegree()[1] == 1) == 6
        assert verify_rees_candidate(Ideal(cand, B), gens, pres, tn) == (True, True)
        # drop one generator: the reverse containment must fail
        assert verify_rees_candidate(Ideal(cand[:-1], B), gens, pres, tn) == (True, False)


def test_binary_sym_is_complete_intersection():
    for n in (3, 4, 5):
        I, J = suite_instance(f"binary{n}")
        pres = rees_ideal(I)
        L1 = minimal_generators(pres.L1)
        assert sorted(g.bidegree() for g in L1) == [(1, 1), (n - 1, 1)]
        tdegs = sorted(g.bidegree()[1] for g in pres.mingens)
        assert tdegs == [1, 1] + list(range(2, n + 1))
        F = fiber_ideal(pres)
        assert len(F.gens) == 1 and F.gens[0].total_degree() == n
        assert edeg(F) == n
        assert presentation_degrees(pres) == (2 * n, n + 1, n - 1)


def test_complete_intersection_fiber():
    J = [X**2, Y**2]
    pres = rees_ideal(J)
    assert not fiber_ideal(pres).gens
    assert edeg(fiber_ideal(pres)) == 1
    rep = analyze(J, J)
    assert rep.e1 == 0 and rep.f_sequence == [] and rep.reltype == 1 and rep.huckaba_acm
    assert rep.deg_T == 0


def test_reduction_number_examples():
    I = Ideal([X**2, Y**2])
    assert reduction_number(I, I) == 0
    Im, Q = suite_instance("mono4")
    assert reduction_number(Ideal(Im), Ideal(Q)) == 2


def test_huckaba_test():
    assert huckaba_test(12, FSequence(7, (6, 1, 1, 1, 1, 1, 1)))
    assert not huckaba_test(12, FSequence(7, (4, 3, 3, 1, 1, 1, 1)))
    assert huckaba_test(0, FSequence(0, ()))
    with pytest.raises(InvariantViolation):
        huckaba_test(5, FSequence(1, (4,)))


def test_birational_criteria_must_agree():
    assert is_birational(8, 2, 4, red=7, e1=12)
    with pytest.raises(InvariantViolation):
        is_birational(8, 2, 4, red=6)


def test_link_to_maximal_ideal():
    R = Ring(["x", "y", "z"])
    x, y, z = R.gens()
    J = [x**2, y**2, z**2]
    I = minimal_generators(link_ideal(Ideal(J), Ideal([x, y, z])))
    rep = analyze(I, J)
    assert rep.red == 1
    assert rep.sdeg == 1
    assert link_ideal(Ideal([X, Y]), Ideal([X, Y])).is_unit()


def test_quadric_red_one():
    # entries in the span of x^2, y^2 make I1(phi) two-generated, forcing red 1
    rng = random.Random(5)
    a, b = X**2, Y**2
    while True:
        M = [[rng.randint(-9, 9) * a + rng.randint(-9, 9) * b for _ in range(2)] for _ in range(3)]
        try:
            I, J = binary_ideal(M)
            break
        except Exception:
            continue
    rep = analyze(I, J)
    assert rep.red == 1
    assert rep.f_sequence == [rep.length_I_J]
    tdegs = sorted(g.bidegree()[1] for g in rees_ideal(I).mingens)
    assert tdegs[-1] == 2 and tdegs.count(2) == 1
    assert not rep.birational
    assert rep.edeg == 2


def test_backends_agree():
    for name in ("mono3", "binary4", "hf131"):
        I, J = suite_instance(name)
        pres = rees_ideal(I)
        direct = PowerColengths(Ideal(I), Ideal(J))
        via_rees = ReesColengths(pres, len(J))
        for j in range(1, 4):
            assert direct.colength_power(j) == via_rees.colength_power(j)
            assert direct.colength_jpower(j) == via_rees.colength_jpower(j)


def test_direct_backend_report_matches():
    I, J = suite_instance("mono3")
    a = analyze(I, J, AnalyzeOptions(power_backend="direct")).to_dict(timings=False)
    b = analyze(I, J, AnalyzeOptions(power_backend="rees")).to_dict(timings=False)
    for k in ("red", "f_sequence", "e0", "e1", "huckaba_acm", "reltype"):
        assert a[k] == b[k]


# -- suite invariants ----------------------------------------------------------

SUITE_ALL = FAST_SUITE + ["northcott"]


@pytest.mark.parametrize("name", SUITE_ALL)
def test_suite_laws(name):
    rep = suite_report(name)
    assert rep.complete, rep.errors
    fc = rep.formula_checks
    assert rep.e1 <= rep.f_sum
    assert rep.huckaba_acm == (rep.e1 == rep.f_sum)
    assert rep.e0 == rep.colength_J
    assert all(a >= b for a, b in zip(rep.f_sequence, rep.f_sequence[1:]))
    if rep.huckaba_acm:
        assert rep.reltype == rep.red + 1
        assert fc["nu_T_bound"]
    equigenerated = len({g.degree() for g in suite_instance(name)[0]}) == 1
    assert ("additivity" in fc) == equigenerated
    if equigenerated:
        assert fc["additivity"]
    assert fc["f2_identity"] and fc["f2_criterion"]


@pytest.mark.parametrize("name", SUITE_ALL)
def test_fresh_generator_correspondence(name):
    rep = suite_report(name)
    counts = dict(rep.fresh_profile["counts"])
    for s, drop in rep.fresh_profile["drops"]:
        assert (drop > 0) == (counts.get(s + 1, 0) > 0), (s, drop, counts)


@pytest.mark.parametrize("name", ["mono3", "binary3", "binary4", "binary5", "quadric", "hf141", "hf131", "hf121"])
def test_suite_kernel_and_basis(name):
    I, _ = suite_instance(name)
    pres = rees_ideal(I)
    assert all(rees_membership(g, pres.gens, pres.tnames) for g in pres.mingens)
    assert spoly_check(pres.L.groebner())


@pytest.mark.parametrize("name", ["binary3", "binary4", "binary5", "hf141", "hf131", "hf121", "northcott"])
def test_birational_criteria_consistent_on_suite(name):
    rep = suite_report(name)
    n = 2 if name.startswith("hf") or name == "northcott" else int(name[-1])
    d = 4 if n == 2 else 2
    by_edeg = rep.edeg == n ** (d - 1)
    by_red = rep.red == n ** (d - 1) - 1
    by_e1 = 2 * rep.e1 == (d - 1) * (n**d - n ** (d - 1))
    assert by_edeg == by_red == by_e1 == rep.birational


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_random_aci_laws(seed):
    rng = random.Random(seed)
    R, J, a = random_aci(rng, rng.choice([2, 3]), rng.choice([2, 3]))
    rep = analyze(J + [a], J, AnalyzeOptions(with_sdeg=False, direct_check_upto=2))
    assert rep.complete, rep.errors
    assert all(rep.formula_checks.values()), rep.formula_checks
    assert rep.e1 <= rep.f_sum
