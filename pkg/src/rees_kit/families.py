"""Constructors for the ideal families under study.

Each constructor checks its preconditions and returns plain polynomials or
ideals; the analysis itself lives in :mod:`rees_kit.rees`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import GF32003, CoefficientField, Polynomial, Ring
from .groebner import Ideal, i1_of_syzygies, ideal_quotient, ideal_quotient_ideal, syzygies
from .hilbert import NonZeroDimensional, colength, hilbert_function

__all__ = [
    "FamilyError",
    "FamilySpec",
    "MonomialACI",
    "monomial_aci",
    "monomial_aci_4",
    "mono_rees_ring",
    "mono_rees_candidate",
    "binary_ideal",
    "binary_linear_syzygy_matrix",
    "random_quadric_matrix",
    "find_quadric_red3",
    "quaternary_example",
    "QUATERNARY_TAGS",
    "northcott_ideal",
    "northcott_reference_data",
    "link_ideal",
    "classify_hf",
    "ALLOWED_HF",
    "BIRATIONAL_HF",
    "random_aci",
]


class FamilyError(ValueError):
    """A family precondition does not hold."""


@dataclass(frozen=True)
class FamilySpec:
    """JSON-friendly description of a family instance."""

    name: str
    params: tuple = ()
    tag: str | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "params": list(self.params), "tag": self.tag}


# -- monomial almost complete intersections -------------------------------

@dataclass
class MonomialACI:
    ring: Ring
    I: list[Polynomial]
    J: list[Polynomial]
    Q: list[Polynomial]
    # a > 3 alpha etc., the sufficient condition quoted for Q being a reduction
    q_condition: bool


def monomial_aci(a, b, c, alpha, beta, gamma, field: CoefficientField = GF32003, names: str = "xyz") -> MonomialACI:
    """I = (x^a, y^b, z^c, x^alpha y^beta z^gamma), J the three powers, and
    Q = (x^a - z^c, y^b - z^c, x^alpha y^beta z^gamma).

    Requires alpha/a + beta/b + gamma/c <= 1.  At equality (e.g. the
    (3,3,3,1,1,1) case) J is still a reduction; Q is checked downstream.
    """
    for v in (a, b, c):
        if v < 1:
            raise FamilyError("a, b, c must be positive")
    for v in (alpha, beta, gamma):
        if v < 0:
            raise FamilyError("alpha, beta, gamma must be nonnegative")
    s = Fraction(alpha, a) + Fraction(beta, b) + Fraction(gamma, c)
    if s > 1:
        raise FamilyError(f"alpha/a + beta/b + gamma/c = {s} > 1")
    # weights L/a, L/b, L/c make Q homogeneous when a, b, c differ
    L = math.lcm(a, b, c)
    R = Ring(list(names), field, weights=(L // a, L // b, L // c))
    x, y, z = R.gens()
    mono = x**alpha * y**beta * z**gamma
    if alpha >= a or beta >= b or gamma >= c:
        raise FamilyError("the extra monomial lies in J")
    I = [mono, x**a, y**b, z**c]
    J = [x**a, y**b, z**c]
    Q = [x**a - z**c, y**b - z**c, mono]
    return MonomialACI(R, I, J, Q, a > 3 * alpha and b > 3 * beta and c > 3 * gamma)


def monomial_aci_4(n: int, field: CoefficientField = GF32003) -> MonomialACI:
    """I(n,n,n,n,1,1,1,1) = (x1^n, .., x4^n, x1 x2 x3 x4) with the analogous
    reduction Q = (x1^n - x4^n, x2^n - x4^n, x3^n - x4^n, x1 x2 x3 x4)."""
    if n < 4:
        raise FamilyError("n >= 4 required")
    R = Ring(["x1", "x2", "x3", "x4"], field)
    xs = R.gens()
    mono = xs[0] * xs[1] * xs[2] * xs[3]
    I = [mono] + [v**n for v in xs]
    J = [v**n for v in xs]
    Q = [xs[i] ** n - xs[3] ** n for i in range(3)] + [mono]
    return MonomialACI(R, I, J, Q, True)


def mono_rees_ring(n: int, field: CoefficientField = GF32003) -> tuple[Ring, list[Polynomial], list[str]]:
    """Presentation data for I = (x^n, y^n, z^n, xyz): ring B, generators, T-names.

    T1, T2, T3 map to x^n, y^n, z^n and u maps to xyz.
    """
    R = Ring(["x", "y", "z"], field)
    x, y, z = R.gens()
    gens = [x**n, y**n, z**n, x * y * z]
    tn = ["T1", "T2", "T3", "u"]
    B = Ring(["x", "y", "z"] + tn, field, weights=[1, 1, 1, n, n, n, 3], tvars=tn)
    return B, gens, tn


def mono_rees_candidate(n: int, field: CoefficientField = GF32003) -> list[Polynomial]:
    """The ten displayed generators of L for I(n,n,n,1,1,1), n >= 3."""
    if n < 3:
        raise FamilyError("the candidate list needs n >= 3")
    B, _, _ = mono_rees_ring(n, field)
    x, y, z, T1, T2, T3, u = B.gens()
    return [
        z ** (n - 1) * u - x * y * T3,
        y ** (n - 1) * u - x * z * T2,
        x ** (n - 1) * u - y * z * T1,
        z**n * T2 - y**n * T3,
        z**n * T1 - x**n * T3,
        y**n * T1 - x**n * T2,
        y ** (n - 2) * z ** (n - 2) * u**2 - x**2 * T2 * T3,
        x ** (n - 2) * z ** (n - 2) * u**2 - y**2 * T1 * T3,
        x ** (n - 2) * y ** (n - 2) * u**2 - z**2 * T1 * T2,
        x ** (n - 3) * y ** (n - 3) * z ** (n - 3) * u**3 - T1 * T2 * T3,
    ]


# -- binary ideals ---------------------------------------------------------

def _minors(M) -> list[Polynomial]:
    def m(i, j):
        return M[i][0] * M[j][1] - M[j][0] * M[i][1]

    return [m(1, 2), -m(0, 2), m(0, 1)]


def _is_m_primary(gens: Sequence[Polynomial]) -> bool:
    try:
        colength(Ideal(gens))
    except NonZeroDimensional:
        return False
    return True


def binary_ideal(M, seed: int = 0, retries: int = 10) -> tuple[list[Polynomial], list[Polynomial]]:
    """Maximal minors of a 3x2 matrix of forms in k[x, y] and a reduction J.

    J is the first two minors when they form a regular sequence, otherwise a
    seeded random pair of combinations of the three minors.
    """
    if len(M) != 3 or any(len(r) != 2 for r in M):
        raise FamilyError("need a 3x2 matrix")
    R = M[0][0].ring
    if R.nvars != 2:
        raise FamilyError("binary ideals live in a polynomial ring in two variables")
    for col in range(2):
        degs = {M[r][col].total_degree() for r in range(3) if M[r][col]}
        if len(degs) > 1 or not all(M[r][col].is_homogeneous() for r in range(3)):
            raise FamilyError(f"column {col} is not homogeneous of constant degree")
    I = _minors(M)
    if not all(I) or not _is_m_primary(I):
        raise FamilyError("the minors do not have codimension 2")
    J = I[:2]
    rng = random.Random(seed)
    tries = 0
    while not _is_m_primary(J):
        if tries >= retries:
            raise FamilyError("no reduction found among random combinations of the minors")
        tries += 1
        J = [sum((R.const(rng.randrange(1, 100)) * g for g in I), R.zero()) for _ in range(2)]
    return I, J


def _random_form(R: Ring, deg: int, rng: random.Random, lo: int = -9, hi: int = 9) -> Polynomial:
    f = R.zero()
    n = R.nvars
    for exps in _exponents(n, deg):
        f = f + R.monomial(exps, rng.randint(lo, hi))
    return f


def _exponents(n: int, deg: int):
    if n == 1:
        yield (deg,)
        return
    for e in range(deg, -1, -1):
        for rest in _exponents(n - 1, deg - e):
            yield (e,) + rest


def binary_linear_syzygy_matrix(n: int, seed: int = 0, field: CoefficientField = GF32003):
    """A seeded 3x2 matrix with a linear column and a column of degree n-1.

    The linear column spans (x, y), so I1 of the syzygies is (x, y).
    """
    if n < 2:
        raise FamilyError("n >= 2 required")
    R = Ring(["x", "y"], field)
    x, y = R.gens()
    rng = random.Random(seed)
    for _ in range(100):
        lin = [x, y, _random_form(R, 1, rng)]
        other = [_random_form(R, n - 1, rng) for _ in range(3)]
        M = [[lin[i], other[i]] for i in range(3)]
        I = _minors(M)
        if all(I) and _is_m_primary(I) and _is_m_primary(I[:2]):
            return M
    raise FamilyError("no nondegenerate matrix found")


def random_quadric_matrix(rng: random.Random, R: Ring):
    return [[_random_form(R, 2, rng) for _ in range(2)] for _ in range(3)]


def find_quadric_red3(seed: int = 0, attempts: int = 50, field: CoefficientField = GF32003):
    """Seeded search for a 3x2 quadric matrix whose minors have red_J = 3.

    Returns (matrix, I, J, red, attempt index).
    """
    from .rees import PowerColengths, reduction_number

    R = Ring(["x", "y"], field)
    rng = random.Random(seed)
    for k in range(attempts):
        M = random_quadric_matrix(rng, R)
        try:
            I, J = binary_ideal(M, seed=seed + k)
        except FamilyError:
            continue
        r = reduction_number(Ideal(I), Ideal(J), 8, PowerColengths(Ideal(I), Ideal(J)))
        if r == 3:
            return M, I, J, r, k
    raise FamilyError("no red-3 quadric matrix in the search budget")


# -- quaternary quadrics ---------------------------------------------------

QUATERNARY_TAGS = {
    "hf141": "x*y + x*z + x*w + y*z",
    "hf131": "x*y + y*z + z*w + w*x + y*w",
    "hf121": "x*y + y*z + x*w + z*w",
}


def quaternary_example(tag: str, field: CoefficientField = GF32003) -> tuple[list[Polynomial], Polynomial]:
    """J = (x^2, y^2, z^2, w^2) and the tagged quadric a."""
    if tag not in QUATERNARY_TAGS:
        raise FamilyError(f"unknown tag {tag!r}; choose from {sorted(QUATERNARY_TAGS)}")
    R = Ring(["x", "y", "z", "w"], field)
    x, y, z, w = R.gens()
    return [x**2, y**2, z**2, w**2], R(QUATERNARY_TAGS[tag])


def _det(M) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else M[0][0].ring.zero()


def northcott_ideal(V: Sequence[Polynomial], A) -> tuple[list[Polynomial], Polynomial]:
    """(V.A, det A) for V = [x, y, alpha, beta] and A with linear top rows
    and scalar bottom rows.  Returns (the four entries of V.A, det A)."""
    if len(V) != 4 or len(A) != 4 or any(len(r) != 4 for r in A):
        raise FamilyError("need a 1x4 vector and a 4x4 matrix")
    R = V[0].ring
    if [v.total_degree() for v in V] != [1, 1, 2, 2] or not all(v.is_homogeneous() for v in V):
        raise FamilyError("V must be two linear forms followed by two quadrics")
    names = set(R.names)
    for q in V[2:]:
        if len(q.variables()) and len(q.variables() & (names - set(R.names[-2:]))):
            raise FamilyError("alpha and beta must be forms in the last two variables")
    for i, row in enumerate(A):
        for e in row:
            want = 1 if i < 2 else 0
            if e and (e.total_degree() != want or not e.is_homogeneous()):
                raise FamilyError("top rows of A must be linear forms, bottom rows scalars")
    entries = [sum((V[i] * A[i][j] for i in range(4)), R.zero()) for j in range(4)]
    det = _det(A)
    if not det:
        raise FamilyError("det A = 0")
    return entries, det


def northcott_reference_data(field: CoefficientField = GF32003):
    """The worked 4x4 example: returns (V, A)."""
    R = Ring(["x", "y", "z", "w"], field)
    x, y, z, w = R.gens()
    c = R.const
    A = [
        [x + y, z + w, x - w, z],
        [z, y + w, x - z, y],
        [c(1), c(0), c(2), c(3)],
        [c(0), c(1), c(1), c(2)],
    ]
    V = [x, y, z**2 + z * w + w**2, z**2 - w**2]
    return V, A


def link_ideal(J: Ideal, K: Ideal) -> Ideal:
    """J : K."""
    if not J.issubset(K):
        raise FamilyError("link_ideal needs J contained in K")
    return ideal_quotient_ideal(J, K)


ALLOWED_HF = {
    (1, 4, 1), (1, 2, 2, 1), (1, 1, 1, 1, 1, 1),
    (1, 3, 1), (1, 1, 1, 1, 1),
    (1, 2, 1), (1, 1, 1, 1),
    (1, 1, 1),
    (1, 1),
    (1,),
}
BIRATIONAL_HF = {(1, 4, 1), (1, 3, 1), (1, 2, 1)}


def classify_hf(J: Sequence[Polynomial], a: Polynomial) -> tuple[tuple[int, ...], bool, bool]:
    """h-vector of R/(J:a) with membership in the allowed and unmarked lists."""
    R = a.ring
    JI = Ideal(J, R)
    if JI.contains(a):
        raise FamilyError("a lies in J; (J, a) is not an almost complete intersection")
    Ja = ideal_quotient(JI, a)
    try:
        hv = hilbert_function(Ja)
    except NonZeroDimensional as exc:
        raise FamilyError("J:a is not Artinian") from exc
    return hv, hv in ALLOWED_HF, hv in BIRATIONAL_HF


# -- random instances ------------------------------------------------------

def random_aci(rng: random.Random, d: int, n: int, field: CoefficientField = GF32003, lo: int = -5, hi: int = 5, tries: int = 50):
    """Generic forms J = (g_1..g_d) of degree n and a form a of degree n
    outside J.  J is a regular sequence (checked), hence a reduction of
    (J, a) since both are equigenerated of degree n."""
    names = ["x", "y", "z", "w"][:d]
    R = Ring(names, field)
    for _ in range(tries):
        # sparse-ish forms keep coefficients and bases small
        J = [_sparse_form(R, n, rng, lo, hi) for _ in range(d)]
        if not all(J) or not _is_m_primary(J):
            continue
        a = _sparse_form(R, n, rng, lo, hi)
        if a and not Ideal(J, R).contains(a):
            return R, J, a
    raise FamilyError("no random aci found")


def _sparse_form(R: Ring, n: int, rng: random.Random, lo: int, hi: int) -> Polynomial:
    mons = list(_exponents(R.nvars, n))
    k = rng.randint(1, min(len(mons), 4))
    f = R.zero()
    for e in rng.sample(mons, k):
        c = 0
        while c == 0:
            c = rng.randint(lo, hi)
        f = f + R.monomial(e, c)
    return f
