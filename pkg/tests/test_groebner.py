import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rees_kit.arith import LEX, Ring
from rees_kit.families import northcott_ideal, northcott_reference_data, quaternary_example, random_aci
from rees_kit.groebner import (
    Budget,
    GroebnerBudgetExceeded,
    Ideal,
    buchberger,
    eliminate,
    ideal_equality,
    ideal_intersection,
    ideal_power,
    ideal_quotient,
    ideal_quotient_ideal,
    linear_membership,
    minimal_generators,
    saturate_variable,
    spoly_check,
    syzygies,
    i1_of_syzygies,
)
from rees_kit.hilbert import colength

from conftest import R3, polys

x, y, z = R3.gens()
R2 = Ring(["x", "y"])
X, Y = R2.gens()


def test_membership_examples():
    assert Ideal([X]).contains(X**2)
    assert not Ideal([X, Y]).contains(R2.one())


def test_equality_examples():
    assert ideal_equality(Ideal([X, Y]), Ideal([Y, X + Y]))
    assert not ideal_equality(Ideal([X**2]), Ideal([X]))


def test_quotient_examples():
    assert ideal_equality(ideal_quotient(Ideal([X**2]), X), Ideal([X]))
    assert ideal_equality(ideal_quotient(Ideal([X]), Y), Ideal([X]))
    assert ideal_equality(ideal_quotient_ideal(Ideal([X]), Ideal([X, Y])), Ideal([X]))


def test_socle_quotient_by_brute_force():
    J = Ideal([X**2, Y**2])
    Q = ideal_quotient_ideal(J, Ideal([X, Y]))
    assert ideal_equality(Q, Ideal([X**2, Y**2, X * Y]))
    # oracle: a degree-2 monomial u is in J:m iff xu and yu lie in J
    for u in (X**2, X * Y, Y**2):
        brute = linear_membership(X * u, J.gens) and linear_membership(Y * u, J.gens)
        assert brute == Q.contains(u)


def test_quaternary_quotient_and_duality():
    J, a = quaternary_example("hf141")
    JI = Ideal(J)
    Ja = ideal_quotient(JI, a)
    assert all(JI.contains(a * g) for g in Ja.gens)
    assert colength(Ja) == 6
    assert ideal_equality(ideal_quotient_ideal(JI, Ja), Ideal(J + [a]))


def test_northcott_duality():
    V, A = northcott_reference_data()
    ents, det = northcott_ideal(V, A)
    J = Ideal(ents)
    # the extra generator a of the aci is det A; J:(J:a) gives back (J, det A)
    Ja = ideal_quotient(J, det)
    assert ideal_equality(ideal_quotient_ideal(J, Ja), Ideal(ents + [det]))


def test_intersection_examples():
    assert ideal_equality(ideal_intersection(Ideal([X]), Ideal([Y])), Ideal([X * Y]))
    I = Ideal([X**2 + Y, X * Y])
    assert ideal_equality(ideal_intersection(I, I), I)
    K = ideal_intersection(Ideal([X, Y]), Ideal([X**2, Y]))
    assert ideal_equality(K, Ideal([X**2, Y, X * Y]))
    for d in range(4):
        for i in range(d + 1):
            u = X**i * Y ** (d - i)
            both = linear_membership(u, [X, Y]) and linear_membership(u, [X**2, Y])
            assert K.contains(u) == both


def test_eliminate_examples():
    W = Ring(["x", "y", "T1", "T2", "t"])
    x_, y_, T1, T2, t = W.gens()
    E = eliminate(Ideal([T1 - x_ * t, T2 - y_ * t]), ["t"])
    assert ideal_equality(E, Ideal([E.ring("x*T2 - y*T1")]))
    V = Ring(["x", "T", "t"])
    assert not eliminate(Ideal([V("T - x*t")]), ["t"]).gens


def test_power_examples():
    I = Ideal([X, Y])
    assert ideal_equality(ideal_power(I, 2), Ideal([X**2, X * Y, Y**2]))
    assert ideal_equality(ideal_power(I, 1), I)


def test_koszul_syzygy():
    phi = syzygies([X, Y])
    assert phi.shape == (2, 1)
    col = phi.columns[0]
    assert col[0] * X + col[1] * Y == R2.zero()
    assert ideal_equality(i1_of_syzygies(phi), Ideal([X, Y]))


def test_monomial_syzygy_entries():
    phi = syzygies([x * y * z, x**3, y**3, z**3])
    assert phi.check()
    assert ideal_equality(i1_of_syzygies(phi), Ideal([x, y, z]).power(2))


def test_minimal_generators_examples():
    assert ideal_equality(Ideal(minimal_generators(Ideal([x, x**2, y]))), Ideal([x, y]))
    assert len(minimal_generators(Ideal([x, x**2, y]))) == 2


def test_budget_exceeded_is_an_error():
    gens = [R3("x^3 + y^2*z + 3*z^3"), R3("x*y*z + y^3 - 2*x^2*z"), R3("x^2*y + z^3 + y*z^2")]
    with pytest.raises(GroebnerBudgetExceeded):
        buchberger(gens, Budget(max_reductions=5))


def test_saturation():
    I = Ideal([x * z, y * z])
    assert ideal_equality(saturate_variable(I, "z"), Ideal([x, y]))


# -- properties ------------------------------------------------------------

gen_lists = st.lists(polys(max_deg=3, max_terms=3), min_size=1, max_size=3)


@given(gen_lists)
def test_groebner_spolys_reduce_to_zero(gens):
    assume(any(gens))
    G = buchberger(gens, Budget(200_000))
    assert spoly_check(G)
    I = Ideal(gens)
    assert all(I.contains(g) for g in gens)


@given(gen_lists)
def test_lex_groebner(gens):
    assume(any(gens))
    RL = R3.with_order(LEX)
    G = buchberger([g.to_ring(RL) for g in gens], Budget(200_000))
    assert spoly_check(G)


@given(st.integers(2, 3), st.integers(0, 10**6), st.data())
def test_membership_oracle_agreement(deg, seed, data):
    rng = random.Random(seed)
    gens = [p for p in (data.draw(polys(homogeneous=rng.choice([1, 2, 3]), max_terms=3)) for _ in range(rng.randint(1, 3))) if p]
    assume(gens)
    target = data.draw(polys(homogeneous=deg + 1, max_terms=4))
    # half the time build an element of the ideal on purpose
    if data.draw(st.booleans()):
        target = sum((data.draw(polys(homogeneous=deg + 1 - g.degree(), max_terms=2)) * g for g in gens if g.degree() <= deg + 1), R3.zero())
    assert Ideal(gens).contains(target) == linear_membership(target, gens)


def _random_monomial(R, deg, rng):
    exps = [0] * R.nvars
    for _ in range(deg):
        exps[rng.randrange(R.nvars)] += 1
    return R.monomial(exps, rng.randint(1, 9))


@given(st.integers(0, 10**6))
def test_membership_oracle_on_random_aci(seed):
    rng = random.Random(seed)
    R, J, a = random_aci(rng, rng.choice([2, 3]), rng.choice([2, 3]))
    gens = J + [a]
    I = Ideal(gens)
    k = rng.randint(0, 2)
    member = sum((_random_monomial(R, k, rng) * g for g in gens), R.zero())
    other = member + _random_monomial(R, a.degree() + k, rng)
    for f in (member, other):
        assert I.contains(f) == linear_membership(f, gens)
    assert linear_membership(member, gens)


@given(gen_lists, polys(max_terms=2), polys(max_terms=2))
def test_quotient_laws(gens, f, g):
    assume(any(gens) and f and g)
    I = Ideal(gens, R3, Budget(300_000))
    Q = ideal_quotient(I, f)
    assert all(I.contains(q * f) for q in Q.gens)
    assert I.issubset(Q)
    assert ideal_equality(ideal_quotient(Q, g), ideal_quotient(I, f * g))


@given(gen_lists)
def test_elimination_soundness(gens):
    assume(any(gens))
    I = Ideal(gens, R3, Budget(300_000))
    E = eliminate(I, ["x"])
    for e in E.gens:
        assert "x" not in e.variables()
        assert I.contains(e.embed(R3))


@given(st.lists(polys(homogeneous=2, max_terms=3), min_size=1, max_size=4), st.randoms())
def test_syzygy_exactness_and_minimal_count(gens, rnd):
    gens = [g for g in gens if g]
    assume(gens)
    phi = syzygies(gens, Budget(300_000))
    for col in phi.columns:
        assert sum((c * f for c, f in zip(col, gens)), R3.zero()) == R3.zero()
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert len(minimal_generators(Ideal(gens))) == len(minimal_generators(Ideal(shuffled)))
