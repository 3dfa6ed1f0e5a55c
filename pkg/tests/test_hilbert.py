import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rees_kit.arith import Ring
from rees_kit.families import QUATERNARY_TAGS, classify_hf, quaternary_example
from rees_kit.groebner import Budget, Ideal, ideal_quotient
from rees_kit.hilbert import (
    HilbertFitError,
    NonZeroDimensional,
    colength,
    dim_and_degree,
    hilbert_function,
    hilbert_series,
    hs_coefficients,
    length_between,
    minimalize_monomials,
    monomial_numerator,
    standard_monomials,
)

from conftest import R3, polys, suite_instance

R2 = Ring(["x", "y"])
X, Y = R2.gens()
R4 = Ring(["x", "y", "z", "w"])


def test_colength_examples():
    assert colength(Ideal([X, Y])) == 1
    assert colength(Ideal([R4(f"{v}^2") for v in "xyzw"])) == 16
    I, _ = suite_instance("quadric")
    assert colength(Ideal(I)) == 12
    with pytest.raises(NonZeroDimensional):
        colength(Ideal([X**2]))


def test_length_between_examples():
    I = Ideal([X**2, Y])
    assert length_between(I, I) == 0
    J, a = quaternary_example("hf141")
    assert length_between(Ideal(J), Ideal(J + [a])) == 6
    I, Q = suite_instance("mono3")
    assert length_between(Ideal(Q), Ideal(I)) == 8


def test_hilbert_function_examples():
    assert hilbert_function(Ideal([X, Y])) == (1,)
    J, a = quaternary_example("hf141")
    assert hilbert_function(ideal_quotient(Ideal(J), a)) == (1, 4, 1)
    J, a = quaternary_example("hf131")
    assert hilbert_function(ideal_quotient(Ideal(J), a)) == (1, 3, 1)


def test_series_examples():
    assert hilbert_series([], 2).numerator == (1,)
    assert hilbert_series(Ideal([X])).numerator == (1, -1)
    assert dim_and_degree(Ideal([], R2)) == (2, 1)


def test_hs_coefficients_examples():
    J = Ideal([X**2, Y**3])
    assert hs_coefficients(J, J, 0) == (6, 0)
    I, Q = suite_instance("mono3")
    assert hs_coefficients(Ideal(I), Ideal(Q), 2) == (27, 12)


def test_hs_coefficients_rejects_non_reduction():
    # (x^2, y^2) is not a reduction of (x, y)
    with pytest.raises(HilbertFitError):
        hs_coefficients(Ideal([X, Y]), Ideal([X**2, Y**2]), 0)


@pytest.mark.parametrize("tag", sorted(QUATERNARY_TAGS))
def test_gorenstein_symmetry_and_sum(tag):
    J, a = quaternary_example(tag)
    hv, allowed, _ = classify_hf(J, a)
    assert hv == hv[::-1]
    assert allowed
    assert sum(hv) == length_between(Ideal(J), Ideal(J + [a]))


# -- properties ------------------------------------------------------------

monos = st.lists(st.lists(st.integers(0, 5), min_size=3, max_size=3), min_size=0, max_size=5)


@given(monos, st.integers(1, 5))
def test_colength_matches_enumeration(extra, k):
    gens = [(k, 0, 0), (0, k + 1, 0), (0, 0, k)] + [tuple(e) for e in extra]
    I = Ideal([R3.monomial(e) for e in gens])
    assert colength(I) == len(standard_monomials(minimalize_monomials(gens), 3))


@given(monos)
def test_numerator_matches_enumeration_by_degree(extra):
    gens = [(3, 0, 0), (0, 3, 0), (0, 0, 4)] + [tuple(e) for e in extra]
    lead = minimalize_monomials(gens)
    counts = {}
    for e in standard_monomials(lead, 3):
        counts[sum(e)] = counts.get(sum(e), 0) + 1
    hv = hilbert_function(Ideal([R3.monomial(e) for e in lead]))
    assert list(hv) == [counts.get(j, 0) for j in range(len(hv))]
    assert sum(hv) == colength(Ideal([R3.monomial(e) for e in lead]))


@given(st.lists(st.lists(st.integers(0, 3), min_size=3, max_size=3), min_size=1, max_size=4))
def test_series_matches_function_to_degree_10(gens):
    I = Ideal([R3.monomial(e) for e in gens])
    hs = hilbert_series(I)
    counts = [0] * 11
    # brute force: monomials of degree j outside the ideal
    for j in range(11):
        for a in range(j + 1):
            for b in range(j - a + 1):
                e = (a, b, j - a - b)
                if not any(all(ei >= gi for ei, gi in zip(e, g)) for g in gens):
                    counts[j] += 1
    assert hs.coefficients(10) == counts


@given(st.lists(polys(homogeneous=2, max_terms=3), min_size=1, max_size=2), st.lists(polys(homogeneous=1, max_terms=2), max_size=2))
def test_colength_monotone(extra, more):
    base = [R3("x^3"), R3("y^3"), R3("z^3")]
    I = Ideal(base + [p for p in extra if p], R3, Budget(200_000))
    K = Ideal(list(I.gens) + [p for p in more if p], R3, Budget(200_000))
    assume(not K.is_unit())
    assert colength(K) <= colength(I)


def test_multigraded_numerator_of_product_ideal():
    # k[x, T]/(x*T) with bidegrees x -> (1, 0), T -> (0, 1): 1 - s t
    num = monomial_numerator([(1, 1)], [(1, 0), (0, 1)])
    assert num == {(0, 0): 1, (1, 1): -1}
