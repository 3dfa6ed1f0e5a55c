"""Lengths, Hilbert functions and Hilbert series of graded quotients.

Everything here works on leading-term ideals.  The numerator of a Hilbert
series is computed by the pivot recursion

    N(M) = N(M + (p)) + t^deg(p) * N(M : p)

for a pure-power pivot p, with a product formula once the generators are
pairwise coprime.  The numerator may be multigraded: each variable carries
a degree vector and numerators are dicts from degree vectors to integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .arith import Polynomial, Ring
from .groebner import Ideal

__all__ = [
    "NonZeroDimensional",
    "HilbertFitError",
    "HilbertSeries",
    "monomial_numerator",
    "minimalize_monomials",
    "hilbert_series",
    "standard_monomials",
    "colength",
    "length_between",
    "hilbert_function",
    "dim_and_degree",
    "series_to_polynomial",
    "hs_coefficients",
    "samuel_polynomial",
]


class NonZeroDimensional(ValueError):
    """The quotient has infinite length."""


class HilbertFitError(ArithmeticError):
    """Colength values do not lie on a single numerical polynomial."""


Exps = tuple[int, ...]
Numer = dict[tuple[int, ...], int]


# -- monomial ideals -------------------------------------------------------

def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize_monomials(gens: Iterable[Exps]) -> list[Exps]:
    """Minimal generators of a monomial ideal given by exponent vectors."""
    gens = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), g))
    out: list[Exps] = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _nmul(a: Numer, b: Numer) -> Numer:
    out: Numer = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = tuple(x + y for x, y in zip(da, db))
            c = out.get(d, 0) + ca * cb
            if c:
                out[d] = c
            else:
                out.pop(d, None)
    return out


def _nadd(a: Numer, b: Numer) -> Numer:
    out = dict(a)
    for d, c in b.items():
        c = out.get(d, 0) + c
        if c:
            out[d] = c
        else:
            out.pop(d, None)
    return out


def _deg(e: Exps, degs: Sequence[tuple[int, ...]], k: int) -> tuple[int, ...]:
    out = [0] * k
    for i, x in enumerate(e):
        if x:
            for c, v in enumerate(degs[i]):
                out[c] += x * v
    return tuple(out)


def monomial_numerator(gens: Iterable[Exps], degs: Sequence[tuple[int, ...]]) -> Numer:
    """Numerator of the multigraded Hilbert series of k[x]/(gens).

    ``degs[i]`` is the degree vector of variable i; the series is the
    returned numerator over prod_i (1 - t^degs[i]).
    """
    k = len(degs[0]) if degs else 1
    zero = (0,) * k
    return _numer(minimalize_monomials(gens), degs, k, zero)


def _numer(gens: list[Exps], degs, k: int, zero) -> Numer:
    if not gens:
        return {zero: 1}
    if any(not any(g) for g in gens):
        return {}
    n = len(gens[0])
    count = [0] * n
    for g in gens:
        for i, x in enumerate(g):
            if x:
                count[i] += 1
    if max(count) <= 1:
        out: Numer = {zero: 1}
        for g in gens:
            out = _nmul(out, {zero: 1, _deg(g, degs, k): -1})
        return out
    i = max(range(n), key=lambda v: count[v])
    cand = sorted(g[i] for g in gens if g[i] and sum(1 for x in g if x) > 1)
    e = cand[len(cand) // 2]
    p = tuple(e if v == i else 0 for v in range(n))
    # M + (p): drop generators divisible by p
    plus = [g for g in gens if g[i] < e] + [p]
    # M : p
    colon = minimalize_monomials(tuple(max(x - e, 0) if v == i else x for v, x in enumerate(g)) for g in gens)
    a = _numer(plus, degs, k, zero)
    b = _numer(colon, degs, k, zero)
    shift = _deg(p, degs, k)
    return _nadd(a, {tuple(x + y for x, y in zip(d, shift)): c for d, c in b.items()})


def standard_monomials(lead: Sequence[Exps], nvars: int, limit: int = 10**6) -> list[Exps]:
    """Enumerate monomials outside a zero-dimensional monomial ideal.

    Plain staircase walk; used as an independent check on the series.
    """
    lead = minimalize_monomials(lead)
    if any(not any(g) for g in lead):
        return []
    bound = [None] * nvars
    for g in lead:
        s = [i for i, x in enumerate(g) if x]
        if len(s) == 1:
            i = s[0]
            bound[i] = g[i] if bound[i] is None else min(bound[i], g[i])
    if any(b is None for b in bound):
        raise NonZeroDimensional("leading ideal lacks a pure power of some variable")
    out: list[Exps] = []

    def walk(prefix: list[int]):
        if len(out) > limit:
            raise OverflowError("too many standard monomials")
        if len(prefix) == nvars:
            out.append(tuple(prefix))
            return
        i = len(prefix)
        for e in range(bound[i]):
            cand = prefix + [e]
            # prune: some generator supported on the first i+1 variables divides
            if any(all(x == 0 for x in g[i + 1:]) and _divides(g[: i + 1], cand) for g in lead):
                break
            walk(cand)

    walk([])
    return out


# -- univariate series -----------------------------------------------------

def _to_list(num: Numer) -> list[int]:
    if not num:
        return [0]
    top = max(d[0] for d in num)
    out = [0] * (top + 1)
    for d, c in num.items():
        out[d[0]] += c
    return out


def _div_one_minus_t(p: list[int]) -> list[int] | None:
    """Exact division by (1 - t); None when p(1) != 0."""
    if sum(p) != 0:
        return None
    q = []
    acc = 0
    for c in p[:-1]:
        acc += c
        q.append(acc)
    return q or [0]


def _div_one_minus_tw(p: list[int], w: int) -> list[int] | None:
    """Exact division by (1 - t^w); None when it does not divide."""
    if w == 1:
        return _div_one_minus_t(p)
    q = [0] * max(len(p) - w, 1)
    for k in range(len(q)):
        q[k] = p[k] + (q[k - w] if k >= w else 0)
    # the remainder must vanish: p - (1 - t^w) q == 0
    for k in range(len(p)):
        lhs = (q[k] if k < len(q) else 0) - (q[k - w] if 0 <= k - w < len(q) else 0)
        if lhs != p[k]:
            return None
    return q


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


@dataclass(frozen=True)
class HilbertSeries:
    """numerator(t) / (1 - t)^nvars for a standard-graded quotient."""

    numerator: tuple[int, ...]
    nvars: int

    def reduced(self) -> tuple[int, tuple[int, ...]]:
        """(dim, h) with series = h(t)/(1-t)^dim and h(1) != 0."""
        h = list(self.numerator)
        dim = self.nvars
        if not any(h):
            return 0, (0,)
        while dim > 0:
            q = _div_one_minus_t(h)
            if q is None:
                break
            h, dim = q, dim - 1
        return dim, tuple(_trim(h))

    @property
    def dimension(self) -> int:
        return self.reduced()[0]

    @property
    def degree(self) -> int:
        return sum(self.reduced()[1])

    def coefficients(self, up_to: int) -> list[int]:
        """Values of the Hilbert function in degrees 0..up_to."""
        dim, h = self.reduced()
        out = []
        for j in range(up_to + 1):
            v = 0
            for i, c in enumerate(h):
                if i <= j:
                    v += c * (math.comb(j - i + dim - 1, dim - 1) if dim else (1 if j == i else 0))
            out.append(v)
        return out


def _lead_exps(lead) -> list[Exps]:
    if isinstance(lead, Ideal):
        out = []
        for g in lead.gens:
            if len(g) != 1:
                raise ValueError("hilbert_series expects a monomial ideal")
            out.append(g.ring.exponents(g.lm()))
        return out
    return [tuple(e) for e in lead]


def hilbert_series(lead, nvars: int | None = None) -> HilbertSeries:
    """Standard-graded Hilbert series of k[x]/lead for a monomial ideal."""
    gens = _lead_exps(lead)
    if nvars is None:
        if isinstance(lead, Ideal):
            nvars = lead.ring.nvars
        elif gens:
            nvars = len(gens[0])
        else:
            raise ValueError("nvars required for an empty list")
    num = monomial_numerator(gens, [(1,)] * nvars) if gens else {(0,): 1}
    return HilbertSeries(tuple(_trim(_to_list(num))), nvars)


def series_to_polynomial(num: list[int], nvars: int, weights: Sequence[int] | None = None) -> list[int]:
    """Divide by prod (1 - t^w_i) exactly (all w_i = 1 by default); error if
    the quotient is not a polynomial."""
    p = list(num)
    for w in weights if weights is not None else [1] * nvars:
        q = _div_one_minus_tw(p, w)
        if q is None:
            raise NonZeroDimensional("quotient has positive dimension")
        p = q
    return _trim(p)


# -- ideals ----------------------------------------------------------------

def _zero_dim_lead(I: Ideal) -> list[Exps]:
    lead = I.leading_ideal()
    n = I.ring.nvars
    if any(not any(e) for e in lead):
        return [(0,) * n]
    have = set()
    for e in lead:
        s = [i for i, x in enumerate(e) if x]
        if len(s) == 1:
            have.add(s[0])
    if len(have) < n:
        missing = [I.ring.names[i] for i in range(n) if i not in have]
        raise NonZeroDimensional(f"no pure power of {', '.join(missing)} in the leading ideal")
    return lead


def colength(I: Ideal) -> int:
    """λ(R/I), the number of standard monomials."""
    lead = _zero_dim_lead(I)
    n = I.ring.nvars
    if any(not any(e) for e in lead):
        return 0
    num = _to_list(monomial_numerator(lead, [(1,)] * n))
    return sum(series_to_polynomial(num, n))


def length_between(I: Ideal, K: Ideal) -> int:
    """λ(K/I) for I ⊆ K."""
    if not I.issubset(K):
        raise ValueError("length_between needs I contained in K")
    return colength(I) - colength(K)


def _check_standard_homogeneous(I: Ideal, who: str):
    for g in I.gens:
        if len({sum(I.ring.exponents(m)) for m in g.terms}) > 1:
            raise ValueError(f"{who} needs an ideal homogeneous in the standard grading")


def hilbert_function(I: Ideal, up_to: int | None = None) -> tuple[int, ...]:
    """Hilbert function of R/I in degrees 0..up_to (whole h-vector if Artinian)."""
    _check_standard_homogeneous(I, "hilbert_function")
    hs = hilbert_series(I.leading_ideal(), I.ring.nvars)
    if up_to is None:
        dim, h = hs.reduced()
        if dim:
            raise NonZeroDimensional("give up_to for a quotient of positive dimension")
        return tuple(h)
    return tuple(hs.coefficients(up_to))


def dim_and_degree(I: Ideal) -> tuple[int, int]:
    """(Krull dimension, multiplicity) of R/I in the standard grading."""
    _check_standard_homogeneous(I, "dim_and_degree")
    hs = hilbert_series(I.leading_ideal(), I.ring.nvars)
    dim, h = hs.reduced()
    return dim, sum(h)


# -- Hilbert-Samuel coefficients ------------------------------------------

def samuel_polynomial(coeffs: Sequence[int], d: int, j: int) -> int:
    """Σ_i (-1)^i e_i C(j+d-1-i, d-i)."""
    total = 0
    for i, e in enumerate(coeffs):
        total += (-1) ** i * e * math.comb(j + d - 1 - i, d - i)
    return total


def _fit(values: dict[int, int], start: int, d: int) -> list[Fraction]:
    pts = list(range(start, start + d + 1))
    A = [[Fraction((-1) ** i * math.comb(j + d - 1 - i, d - i)) for i in range(d + 1)] + [Fraction(values[j])] for j in pts]
    m = d + 1
    for c in range(m):
        piv = next(r for r in range(c, m) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(m):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[i][m] for i in range(m)]


def hs_coefficients(
    I: Ideal,
    J: Ideal,
    r: int,
    power_colength: Callable[[int], int] | None = None,
    J_colength: int | None = None,
) -> tuple[int, int]:
    """(e0, e1) of the I-adic filtration from λ(R/I^j) on a verified window.

    ``power_colength(j)`` returns λ(R/I^j); by default powers are formed and
    measured directly.  The fit uses j = r+1..r+d+1 and checks j = r+d+2; on
    failure the window moves up by one before giving up.
    """
    d = I.ring.nvars
    if power_colength is None:
        def power_colength(j):
            return colength(I.power(j))
    values: dict[int, int] = {}

    def H(j):
        if j not in values:
            values[j] = power_colength(j)
        return values[j]

    for start in (r + 1, r + 2):
        for j in range(start, start + d + 2):
            H(j)
        coeffs = _fit(values, start, d)
        check = start + d + 1
        if all(c.denominator == 1 for c in coeffs) and samuel_polynomial([int(c) for c in coeffs], d, check) == values[check]:
            e0, e1 = int(coeffs[0]), int(coeffs[1])
            lam_J = colength(J) if J_colength is None else J_colength
            if e0 != lam_J:
                raise HilbertFitError(f"e0 = {e0} but λ(R/J) = {lam_J}; J is not a reduction of I?")
            return e0, e1
    raise HilbertFitError(f"λ(R/I^j) not polynomial on j = {r + 1}..{r + d + 3}")
