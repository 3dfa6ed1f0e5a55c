"""Rees algebras of m-primary ideals: equations and numerical invariants.

For I = (f_1..f_m) in R = k[x_1..x_d] the presentation ring is
B = R[T_1..T_m] with x of bidegree (1, 0) and T_i of bidegree
(deg f_i, 1).  The Rees ideal L is the kernel of T_i -> f_i t and (L1) is
its T-linear part, generated by the syzygies of the f_i.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .arith import GREVLEX, MonomialOrder, Polynomial, Ring
from .groebner import (
    Budget,
    DEFAULT_BUDGET,
    Ideal,
    NonHomogeneous,
    SyzygyMatrix,
    buchberger,
    homogeneous_membership,
    ideal_equality,
    ideal_power,
    ideal_product,
    minimal_generators,
    normal_form,
    saturate_variable,
    syzygies,
)
from .hilbert import (
    HilbertSeries,
    NonZeroDimensional,
    colength,
    dim_and_degree,
    hilbert_function,
    hs_coefficients,
    monomial_numerator,
    series_to_polynomial,
)

__all__ = [
    "ReesError",
    "ReductionBoundExceeded",
    "InvariantViolation",
    "ReesPresentation",
    "presentation_ring",
    "default_tnames",
    "sym_ideal",
    "rees_ideal",
    "rees_membership",
    "verify_rees_candidate",
    "PowerColengths",
    "ReesColengths",
    "FSequence",
    "reduction_number",
    "f_sequence",
    "huckaba_test",
    "reltype",
    "sdeg",
    "fiber_ideal",
    "edeg",
    "is_birational",
    "nu_T",
    "presentation_degrees",
    "degree_checks",
    "fresh_generator_profile",
    "AnalyzeOptions",
    "ReesReport",
    "analyze",
]


class ReesError(RuntimeError):
    """A computation in this module could not be completed."""


class ReductionBoundExceeded(ReesError):
    """I^{r+1} != J I^r for every r up to the bound."""


class InvariantViolation(ArithmeticError):
    """A proven identity failed; this points at an arithmetic bug."""


# -- presentation ----------------------------------------------------------

def default_tnames(n_reduction: int, n_extra: int) -> list[str]:
    """T1..Tg for the reduction, then u (one extra generator) or U1..Uk."""
    names = [f"T{i + 1}" for i in range(n_reduction)]
    if n_extra == 1:
        names.append("u")
    else:
        names += [f"U{i + 1}" for i in range(n_extra)]
    return names


def presentation_ring(R: Ring, gens: Sequence[Polynomial], tnames: Sequence[str]) -> Ring:
    if len(tnames) != len(gens):
        raise ValueError("one T-variable per generator")
    clash = set(tnames) & set(R.names)
    if clash:
        raise ValueError(f"T-variable names clash with ring variables: {sorted(clash)}")
    return Ring(
        R.names + tuple(tnames),
        R.field,
        GREVLEX,
        tuple(R.weights) + tuple(max(g.degree(), 1) for g in gens),
        tnames,
    )


def sym_ideal(phi: SyzygyMatrix, B: Ring, tnames: Sequence[str] | None = None) -> Ideal:
    """(L1): the entries of [T_1..T_m] . phi."""
    tnames = list(tnames or B.tvars)
    T = [B.var(t) for t in tnames]
    out = []
    for col in phi.columns:
        out.append(sum((c.embed(B) * Ti for c, Ti in zip(col, T) if c), B.zero()))
    return Ideal(out, B)


def _sub_ring(R: Ring) -> tuple[Ring, str]:
    t = "t"
    while t in R.index:
        t += "_"
    return Ring(R.names + (t,), R.field), t


def rees_membership(g: Polynomial, gens: Sequence[Polynomial], tnames: Sequence[str] | None = None) -> bool:
    """True iff g(x, f_1 t, ..., f_m t) = 0."""
    B = g.ring
    tnames = list(tnames or B.tvars)
    R = gens[0].ring
    W, t = _sub_ring(R)
    tv = W.var(t)
    mapping = {nm: W.var(nm) for nm in R.names}
    for nm, f in zip(tnames, gens):
        mapping[nm] = f.embed(W) * tv
    return not g.substitute(mapping, W)


@dataclass
class ReesPresentation:
    R: Ring
    B: Ring
    gens: list[Polynomial]
    tnames: list[str]
    L: Ideal
    mingens: list[Polynomial]
    phi: SyzygyMatrix
    L1: Ideal
    method: str

    @property
    def xnames(self) -> tuple[str, ...]:
        return self.R.names

    def tdeg(self, g: Polynomial) -> int:
        return g.bidegree()[1]

    def bidegrees(self) -> list[tuple[int, int]]:
        return sorted(g.bidegree() for g in self.mingens)


def _is_m_primary(gens: Sequence[Polynomial], budget: Budget) -> bool:
    try:
        colength(Ideal(gens, gens[0].ring, budget))
    except NonZeroDimensional:
        return False
    return True


def rees_ideal(
    gens: Sequence[Polynomial],
    tnames: Sequence[str] | None = None,
    method: str = "auto",
    budget: Budget | None = None,
    check: bool = True,
) -> ReesPresentation:
    """Rees ideal L of (gens) with syzygies and (L1).

    ``method``: "saturation" computes (L1) : x_d^inf, valid because x_d is
    in the radical of an m-primary I; "elimination" eliminates t from
    (T_i - f_i t); "auto" picks saturation for homogeneous m-primary input.
    Every minimal generator is checked by substitution.
    """
    budget = budget or DEFAULT_BUDGET
    gens = [g for g in gens]
    if not gens or any(not g for g in gens):
        raise ValueError("generators must be nonzero")
    R = gens[0].ring
    tnames = list(tnames or default_tnames(len(gens), 0))
    B = presentation_ring(R, gens, tnames)
    phi = syzygies(gens, budget)
    L1 = sym_ideal(phi, B, tnames)
    L1.budget = budget
    homogeneous = all(g.is_homogeneous() for g in gens)
    if method == "auto":
        method = "saturation" if homogeneous and _is_m_primary(gens, budget) else "elimination"
    if method == "saturation":
        if not homogeneous:
            raise NonHomogeneous("saturation route needs homogeneous generators")
        L = saturate_variable(L1, R.names[-1]) if L1.gens else Ideal([], B, budget)
    elif method == "elimination":
        L = _rees_by_elimination(gens, B, tnames, budget)
    else:
        raise ValueError(f"unknown method {method!r}")
    L.budget = budget
    if L.gens and L.is_homogeneous():
        mingens = minimal_generators(L)
    else:
        mingens = list(L.gens)
    mingens.sort(key=lambda g: (g.bidegree()[1], g.degree(), g.lm()))
    if check:
        for g in mingens:
            if not rees_membership(g, gens, tnames):
                raise InvariantViolation(f"computed Rees generator {g} is not in the kernel")
    Lmin = Ideal(mingens, B, budget)
    Lmin._gb.update(L._gb)
    return ReesPresentation(R, B, gens, tnames, Lmin, mingens, phi, L1, method)


def _rees_by_elimination(gens, B: Ring, tnames, budget: Budget) -> Ideal:
    t = "t"
    while t in B.index:
        t += "_"
    n = B.nvars
    # x weight 1, t weight 1, T_i weight deg f_i + 1 keeps T_i - f_i t homogeneous
    weights = tuple(B.weights[: len(B.names) - len(tnames)]) + tuple(w + 1 for w in B.weights[len(B.names) - len(tnames):]) + (1,)
    W = Ring(B.names + (t,), B.field, MonomialOrder("block", front=(n,)), weights, tnames)
    tv = W.var(t)
    polys = [W.var(nm) - f.embed(W) * tv for nm, f in zip(tnames, gens)]
    G = buchberger(polys, budget)
    kept = [g for g in G if g.diff_free([t])]
    Bw = B
    out = []
    for g in kept:
        out.append(Polynomial(Bw, {Bw.encode(W.exponents(m)[:n]): c for m, c in g.terms.items()}))
    return Ideal(out, B, budget)


def verify_rees_candidate(
    candidate: Ideal,
    gens: Sequence[Polynomial],
    presentation: ReesPresentation | None = None,
    tnames: Sequence[str] | None = None,
) -> tuple[bool, bool]:
    """(candidate ⊆ L, L ⊆ candidate).  The first half is pure substitution."""
    tnames = list(tnames or candidate.ring.tvars)
    forward = all(rees_membership(g, gens, tnames) for g in candidate.gens)
    if presentation is None:
        presentation = rees_ideal(gens, tnames, budget=candidate.budget)
    reverse = all(candidate.contains(g.to_ring(candidate.ring)) for g in presentation.mingens)
    return forward, reverse


# -- colengths of powers ---------------------------------------------------

class PowerColengths:
    """λ(R/I^j) and λ(R/J I^(j-1)) from explicit products, memoized."""

    name = "direct"

    def __init__(self, I: Ideal, J: Ideal):
        self.I, self.J = I, J
        self._pow: dict[int, Ideal] = {}
        self._lp: dict[int, int] = {0: 0}
        self._lj: dict[int, int] = {}

    def power(self, j: int) -> Ideal:
        if j not in self._pow:
            self._pow[j] = self.I if j == 1 else ideal_product(self.power(j - 1), self.I)
        return self._pow[j]

    def colength_power(self, j: int) -> int:
        if j not in self._lp:
            self._lp[j] = colength(self.power(j))
        return self._lp[j]

    def colength_jpower(self, j: int) -> int:
        """λ(R/J I^(j-1)), j >= 1."""
        if j not in self._lj:
            K = self.J if j == 1 else ideal_product(self.J, self.power(j - 1))
            self._lj[j] = colength(K)
        return self._lj[j]

    def f(self, j: int) -> int:
        return self.colength_jpower(j) - self.colength_power(j)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


class _BigradedQuotient:
    """Bigraded Hilbert series of k[x, T]/M for a monomial ideal M.

    x_i has bidegree (v_i, 0), T_i has (w_i, 1).  ``slice(q)`` is the numerator
    P_q(s) with sum_k dim (quotient)_(k, q) s^k = P_q(s) / prod (1 - s^v_i).
    """

    def __init__(self, lead, d: int, tweights: Sequence[int], xweights: Sequence[int] | None = None):
        self.d = d
        self.tw = list(tweights)
        xw = list(xweights) if xweights is not None else [1] * d
        degs = [(v, 0) for v in xw] + [(w, 1) for w in self.tw]
        num = monomial_numerator(lead, degs) if lead else {(0, 0): 1}
        self.num: dict[int, list[int]] = {}
        for (a, b), c in num.items():
            row = self.num.setdefault(b, [])
            if len(row) <= a:
                row.extend([0] * (a + 1 - len(row)))
            row[a] += c
        self._g: list[list[int]] = [[1]]

    def _gslice(self, q: int) -> list[int]:
        # coefficient of t^q in prod_i 1/(1 - s^w_i t)
        while len(self._g) <= q:
            self._g = self._extend_g(len(self._g) * 2)
        return self._g[q]

    def _extend_g(self, Q: int) -> list[list[int]]:
        g = [[1]] + [[0] for _ in range(Q)]
        for w in self.tw:
            new = [list(r) for r in g]
            for q in range(1, Q + 1):
                # new_q = g_q + s^w new_{q-1}
                shifted = [0] * w + new[q - 1]
                new[q] = _poly_add(g[q], shifted)
            g = new
        return g

    def slice(self, q: int) -> list[int]:
        out = [0]
        for b, row in self.num.items():
            if b <= q:
                out = _poly_add(out, _poly_mul(row, self._gslice(q - b)))
        return out


class ReesColengths:
    """λ(R/I^j) and λ(R/J I^(j-1)) read off the bigraded Hilbert series of B/L.

    dim (I^q)_k = dim (B/L)_(k, q), and J I^(q-1) is the T-degree q part of
    (T_J) B/L, so λ(I^q/J I^(q-1)) = length of (B/(L + T_J))_(*, q).  The
    first ``g`` T-variables must correspond to the generators of J.
    """

    name = "rees"

    def __init__(self, pres: ReesPresentation, g: int):
        if not all(f.is_homogeneous() for f in pres.gens):
            raise NonHomogeneous("the Rees route needs homogeneous generators")
        self.pres = pres
        self.g = g
        d = pres.R.nvars
        self.d = d
        tw = [f.degree() for f in pres.gens]
        G = pres.L.groebner()
        lead = [g_.ring.exponents(g_.lm()) for g_ in G]
        self.xw = list(pres.R.weights)
        self.full = _BigradedQuotient(lead, d, tw, self.xw)
        # B/(L + T_J): set the J-variables to zero
        keep = list(pres.R.names) + pres.tnames[g:]
        Bq = Ring(keep, pres.B.field, GREVLEX, tuple(pres.R.weights) + tuple(tw[g:]), pres.tnames[g:])
        zero = {nm: Bq.zero() for nm in pres.tnames[:g]}
        mapping = {nm: Bq.var(nm) for nm in keep}
        mapping.update(zero)
        gens = [h.substitute(mapping, Bq) for h in pres.mingens]
        gens = [h for h in gens if h]
        Gq = buchberger(gens, pres.L.budget) if gens else []
        leadq = [h.ring.exponents(h.lm()) for h in Gq]
        self.fiber = _BigradedQuotient(leadq, d, tw[g:], self.xw)
        self._lp: dict[int, int] = {0: 0}
        self._f: dict[int, int] = {}

    def colength_power(self, q: int) -> int:
        if q not in self._lp:
            p = [-c for c in self.full.slice(q)]
            p[0] += 1
            self._lp[q] = sum(series_to_polynomial(p, self.d, self.xw))
        return self._lp[q]

    def f(self, q: int) -> int:
        if q not in self._f:
            self._f[q] = sum(series_to_polynomial(self.fiber.slice(q), self.d, self.xw))
        return self._f[q]

    def colength_jpower(self, q: int) -> int:
        return self.colength_power(q) + self.f(q)


class _Checked:
    """Two colength backends; every value asked of both must agree."""

    def __init__(self, primary, secondary, limit: int | None = None):
        self.primary, self.secondary, self.limit = primary, secondary, limit
        self.name = f"{primary.name}+{secondary.name}"
        self.compared: list[int] = []

    def _cmp(self, what: str, j: int, a: int, other: Callable[[int], int]):
        if self.limit is None or j <= self.limit:
            b = other(j)
            if a != b:
                raise InvariantViolation(f"{what}({j}): {self.primary.name} gives {a}, {self.secondary.name} gives {b}")
            if j not in self.compared:
                self.compared.append(j)
        return a

    def colength_power(self, j):
        return self._cmp("colength_power", j, self.primary.colength_power(j), self.secondary.colength_power)

    def colength_jpower(self, j):
        return self._cmp("colength_jpower", j, self.primary.colength_jpower(j), self.secondary.colength_jpower)

    def f(self, j):
        return self.colength_jpower(j) - self.colength_power(j)


# -- reduction number and Sally fiber --------------------------------------

@dataclass(frozen=True)
class FSequence:
    r: int
    values: tuple[int, ...]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j: int) -> int:
        """f_j for j >= 1 (zero past the reduction number)."""
        return self.values[j - 1] if 1 <= j <= len(self.values) else 0

    @property
    def total(self) -> int:
        return sum(self.values)


def reduction_number(I: Ideal, J: Ideal, bound: int = 64, colengths=None) -> int:
    """Least r with I^(r+1) = J I^r.

    J I^r ⊆ I^(r+1) always, so equality is equality of colengths.
    """
    colengths = colengths or PowerColengths(I, J)
    for r in range(bound + 1):
        if colengths.colength_power(r + 1) == colengths.colength_jpower(r + 1):
            return r
    raise ReductionBoundExceeded(f"no r <= {bound} with I^(r+1) = J I^r for J = ({', '.join(map(str, J.gens))}); is J a reduction?")


def f_sequence(I: Ideal, J: Ideal, r: int | None = None, colengths=None, bound: int = 64) -> FSequence:
    """f_j = λ(R/J I^(j-1)) - λ(R/I^j) for j = 1..r."""
    colengths = colengths or PowerColengths(I, J)
    if r is None:
        r = reduction_number(I, J, bound, colengths)
    values = tuple(colengths.colength_jpower(j) - colengths.colength_power(j) for j in range(1, r + 1))
    for j in range(len(values) - 1):
        if values[j] < values[j + 1]:
            raise InvariantViolation(f"f-sequence {values} is not non-increasing")
    if any(v <= 0 for v in values):
        raise InvariantViolation(f"f-sequence {values} has a non-positive entry before the reduction number")
    return FSequence(r, values)


def huckaba_test(e1: int, fs: FSequence) -> bool:
    """R[It] almost Cohen-Macaulay iff e1 = sum f_j; e1 <= sum f_j always."""
    if e1 > fs.total:
        raise InvariantViolation(f"e1 = {e1} exceeds the f-sum {fs.total}")
    return e1 == fs.total


# -- shape of L ------------------------------------------------------------

def reltype(mingens: Sequence[Polynomial], budget: Budget | None = None) -> int:
    """Largest T-degree among minimal generators, cross-checked by membership."""
    if not mingens:
        return 1
    top = max(g.bidegree()[1] for g in mingens)
    lower = [g for g in mingens if g.bidegree()[1] < top]
    highest = [g for g in mingens if g.bidegree()[1] == top]
    if lower and homogeneous_membership(highest[0], lower, budget):
        raise InvariantViolation(f"T-degree {top} generator lies in the ideal of lower ones")
    return max(top, 1)


def _monomials(ring: Ring, names: Sequence[str], s: int):
    for combo in itertools.combinations_with_replacement(names, s):
        m = ring.one()
        for nm in combo:
            m = m * ring.var(nm)
        yield m


def sdeg(pres: ReesPresentation, bound: int = 20) -> int:
    """Least s with m^s L ⊆ (L1)."""
    L1 = pres.L1
    extra = [g for g in pres.mingens if not L1.gens or not homogeneous_membership(g, L1.gens, L1.budget)]
    if not extra:
        return 0
    G = L1.groebner()
    R = G[0].ring
    for s in range(1, bound + 1):
        ok = True
        for g in extra:
            g = g.to_ring(R)
            for m in _monomials(R, pres.xnames, s):
                if normal_form(m * g, G):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return s
    raise ReesError(f"sdeg exceeds the bound {bound}")


def fiber_ideal(pres: ReesPresentation) -> Ideal:
    """(L + m B) ∩ k[T], i.e. the image of L under x -> 0."""
    F = Ring(pres.tnames, pres.B.field)
    mapping = {nm: F.zero() for nm in pres.xnames}
    mapping.update({nm: F.var(nm) for nm in pres.tnames})
    gens = [g.substitute(mapping, F) for g in pres.mingens]
    gens = [g for g in gens if g]
    I = Ideal(gens, F, pres.L.budget)
    if gens:
        I = Ideal(minimal_generators(I), F, pres.L.budget)
    return I


def edeg(fiber: Ideal) -> int:
    """Degree of the special fiber ring k[T]/fiber."""
    if not fiber.gens:
        return 1
    if len(fiber.gens) == 1:
        return fiber.gens[0].total_degree()
    return dim_and_degree(fiber)[1]


def is_birational(edeg_value: int, n: int, d: int, red: int | None = None, e1: int | None = None) -> bool:
    """edeg = n^(d-1); the red and e1 criteria must agree when given."""
    verdict = edeg_value == n ** (d - 1)
    if red is not None and (red == n ** (d - 1) - 1) != verdict:
        raise InvariantViolation(f"edeg = {edeg_value} and red = {red} disagree on birationality")
    if e1 is not None and (2 * e1 == (d - 1) * (n ** d - n ** (d - 1))) != verdict:
        raise InvariantViolation(f"edeg = {edeg_value} and e1 = {e1} disagree on birationality")
    return verdict


def nu_T(mingens: Sequence[Polynomial]) -> int:
    """Number of minimal generators of L of T-degree at least 2."""
    return sum(1 for g in mingens if g.bidegree()[1] >= 2)


def _series(I: Ideal) -> HilbertSeries:
    from .hilbert import hilbert_series

    return hilbert_series(I.leading_ideal(), I.ring.nvars)


def presentation_degrees(pres: ReesPresentation) -> tuple[int, int, int]:
    """(deg Sym, deg Rees, deg T) in the standard grading of B.

    deg T is read off the difference of the two series on its own, so the
    additivity deg Sym = deg Rees + deg T is a genuine check.
    """
    for g in list(pres.L.gens) + list(pres.L1.gens):
        if len({sum(g.ring.exponents(m)) for m in g.terms}) > 1:
            raise NonHomogeneous("degrees need an equigenerated ideal")
    s_sym = _series(pres.L1)
    s_rees = _series(pres.L)
    n = max(len(s_sym.numerator), len(s_rees.numerator))
    diff = [
        (s_sym.numerator[i] if i < len(s_sym.numerator) else 0) - (s_rees.numerator[i] if i < len(s_rees.numerator) else 0)
        for i in range(n)
    ]
    deg_T = HilbertSeries(tuple(diff), pres.B.nvars).degree if any(diff) else 0
    dim_sym, _ = s_sym.reduced()
    dim_T = HilbertSeries(tuple(diff), pres.B.nvars).dimension if any(diff) else -1
    if dim_T < dim_sym:
        deg_T_top = 0
    else:
        deg_T_top = deg_T
    return s_sym.degree, s_rees.degree, deg_T_top


def degree_checks(deg_sym: int, deg_rees: int, deg_T: int, n: int, d: int, lam_IJ: int) -> dict[str, bool]:
    base = sum(n ** j for j in range(d))
    return {
        "deg_rees_formula": deg_rees == base,
        "deg_sym_formula": deg_sym == base + lam_IJ,
        "deg_T_formula": deg_T == lam_IJ,
    }


def fresh_generator_profile(mingens: Sequence[Polynomial], fs: FSequence) -> dict:
    """Minimal generator counts per T-degree next to the drops f_s - f_(s+1)."""
    counts: dict[int, int] = {}
    for g in mingens:
        t = g.bidegree()[1]
        counts[t] = counts.get(t, 0) + 1
    drops = [(s, fs[s] - fs[s + 1]) for s in range(1, fs.r + 1)]
    return {"counts": sorted(counts.items()), "drops": drops}


# -- orchestration ---------------------------------------------------------

@dataclass
class AnalyzeOptions:
    red_bound: int = 64
    sdeg_bound: int = 20
    budget: Budget = field(default_factory=Budget)
    # "direct": explicit powers; "rees": Hilbert series of B/L, with explicit
    # powers recomputed and compared for j <= direct_check_upto; "auto": rees
    # when a homogeneous presentation exists, else direct
    power_backend: str = "auto"
    direct_check_upto: int | None = 4
    with_sdeg: bool = True
    with_degrees: bool = True


@dataclass
class ReesReport:
    characteristic: int
    variables: list[str]
    I: list[str]
    J: list[str]
    tnames: list[str] = field(default_factory=list)
    colength_I: int | None = None
    colength_J: int | None = None
    length_I_J: int | None = None
    hvector: list[int] | None = None
    red: int | None = None
    f_sequence: list[int] | None = None
    f_sum: int | None = None
    e0: int | None = None
    e1: int | None = None
    huckaba_acm: bool | None = None
    reltype: int | None = None
    sdeg: int | None = None
    edeg: int | None = None
    birational: bool | None = None
    nu_T: int | None = None
    deg_sym: int | None = None
    deg_rees: int | None = None
    deg_T: int | None = None
    formula_checks: dict[str, bool] = field(default_factory=dict)
    rees_bidegrees: list[list[int]] | None = None
    fresh_profile: dict | None = None
    colength_I1_phi: int | None = None
    power_backend: str | None = None
    cross_checked_powers: list[int] = field(default_factory=list)
    errors: dict[str, str] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    complete: bool = True

    def to_dict(self, timings: bool = True) -> dict:
        from dataclasses import asdict

        d = asdict(self)
        if not timings:
            d.pop("timings")
        return d


def _canonical(I_gens: Sequence[Polynomial], J_gens: Sequence[Polynomial], budget: Budget) -> list[Polynomial]:
    """Generators of I listed as J first, then the needed extras."""
    R = J_gens[0].ring if J_gens else I_gens[0].ring
    J = Ideal(J_gens, R, budget)
    Iideal = Ideal(I_gens, R, budget)
    if not J.issubset(Iideal):
        raise ValueError("J is not contained in I")
    out = list(J_gens)
    extra = []
    for g in I_gens:
        if not Ideal(out + extra, R, budget).contains(g):
            extra.append(g)
    return out + extra


def analyze(I_gens: Sequence[Polynomial], J_gens: Sequence[Polynomial], options: AnalyzeOptions | None = None) -> ReesReport:
    """Run every stage on I with designated reduction J and collect a report.

    A stage error is recorded under the stage name and the report is marked
    incomplete; fields the stage would have filled stay None.
    """
    opt = options or AnalyzeOptions()
    budget = opt.budget
    R = (J_gens or I_gens)[0].ring
    rep = ReesReport(R.field.char, list(R.names), [str(g) for g in I_gens], [str(g) for g in J_gens])
    st: dict = {}

    def stage(name, fn):
        t0 = time.monotonic()
        try:
            fn()
        except Exception as exc:  # recorded, not swallowed: the report says what broke
            rep.errors[name] = f"{type(exc).__name__}: {exc}"
            rep.complete = False
        finally:
            rep.timings[name] = round(time.monotonic() - t0, 3)

    def setup():
        gens = _canonical(I_gens, J_gens, budget)
        st["gens"] = gens
        st["g"] = len(J_gens)
        st["I"] = Ideal(gens, R, budget)
        st["J"] = Ideal(J_gens, R, budget)
        st["extras"] = gens[len(J_gens):]
        st["aci"] = len(J_gens) == R.nvars and len(st["extras"]) == 1
        # weighted rings (unequal monomial exponents) skip standard-grading stages
        st["standard"] = all(w == 1 for w in R.weights)
        degs = {g.total_degree() for g in gens}
        st["n"] = degs.pop() if len(degs) == 1 and all(g.is_homogeneous() for g in gens) else None
        rep.I = [str(g) for g in gens]
        rep.tnames = default_tnames(len(J_gens), len(st["extras"]))

    def lengths():
        rep.colength_I = colength(st["I"])
        rep.colength_J = colength(st["J"])
        rep.length_I_J = rep.colength_J - rep.colength_I
        if st["aci"] and st["standard"]:
            rep.hvector = list(hilbert_function(st["J"].quotient(st["extras"][0])))

    def presentation():
        pres = rees_ideal(st["gens"], rep.tnames, budget=budget)
        st["pres"] = pres
        rep.rees_bidegrees = [list(b) for b in pres.bidegrees()]
        rep.nu_T = nu_T(pres.mingens)

    def backends():
        direct = PowerColengths(st["I"], st["J"])
        rees = None
        if "pres" in st and all(g.is_homogeneous() for g in st["gens"]):
            rees = ReesColengths(st["pres"], st["g"])
        kind = opt.power_backend
        if kind == "auto":
            kind = "rees" if rees is not None else "direct"
        if kind == "direct":
            st["cl"] = direct
        elif kind == "rees":
            if rees is None:
                raise ReesError("Rees route unavailable (no presentation or inhomogeneous input)")
            st["cl"] = st["chk"] = _Checked(rees, direct, opt.direct_check_upto)
        else:
            raise ValueError(f"unknown power backend {kind!r}")
        rep.power_backend = kind

    def reduction():
        rep.red = reduction_number(st["I"], st["J"], opt.red_bound, st["cl"])

    def fseq():
        fs = f_sequence(st["I"], st["J"], rep.red, st["cl"])
        st["fs"] = fs
        rep.f_sequence = list(fs.values)
        rep.f_sum = fs.total

    def hilbert_coeffs():
        rep.e0, rep.e1 = hs_coefficients(st["I"], st["J"], rep.red, st["cl"].colength_power, rep.colength_J)

    def huckaba():
        rep.huckaba_acm = huckaba_test(rep.e1, st["fs"])

    def relations():
        pres = st["pres"]
        rep.reltype = reltype(pres.mingens, budget)
        rep.fresh_profile = fresh_generator_profile(pres.mingens, st["fs"]) if "fs" in st else None
        if rep.huckaba_acm and rep.reltype != rep.red + 1:
            raise InvariantViolation(f"aCM but reltype {rep.reltype} != red + 1 = {rep.red + 1}")

    def symdeg():
        rep.sdeg = sdeg(st["pres"], opt.sdeg_bound)

    def fiber():
        rep.edeg = edeg(fiber_ideal(st["pres"]))
        if st["aci"] and st["n"] is not None:
            rep.birational = is_birational(rep.edeg, st["n"], R.nvars, rep.red, rep.e1)

    def degrees():
        if st["n"] is None:
            return
        rep.deg_sym, rep.deg_rees, rep.deg_T = presentation_degrees(st["pres"])
        if st["aci"] and rep.length_I_J is not None:
            rep.formula_checks.update(degree_checks(rep.deg_sym, rep.deg_rees, rep.deg_T, st["n"], R.nvars, rep.length_I_J))
        rep.formula_checks["additivity"] = rep.deg_sym == rep.deg_rees + rep.deg_T

    def sally_laws():
        if not st["aci"]:
            return
        fs = st["fs"]
        I1 = Ideal(st["pres"].phi.entries(), R, budget)
        lam = colength(I1)
        rep.colength_I1_phi = lam
        rep.formula_checks["f2_identity"] = fs[2] == fs[1] - lam
        Ja = st["J"].quotient(st["extras"][0])
        rep.formula_checks["f2_criterion"] = (rep.red <= 1) == ideal_equality(Ja, I1)
        if rep.huckaba_acm:
            rep.formula_checks["nu_T_bound"] = rep.nu_T <= rep.length_I_J

    stage("setup", setup)
    if rep.complete:
        stage("lengths", lengths)
        stage("presentation", presentation)
        stage("backends", backends)
        if "cl" in st:
            stage("reduction", reduction)
        if rep.red is not None:
            stage("f_sequence", fseq)
            stage("hilbert_coefficients", hilbert_coeffs)
        if rep.e1 is not None and "fs" in st:
            stage("huckaba", huckaba)
        if "pres" in st:
            if rep.red is not None:
                stage("reltype", relations)
            if opt.with_sdeg:
                stage("sdeg", symdeg)
            stage("fiber", fiber)
            if opt.with_degrees:
                stage("degrees", degrees)
            if "fs" in st:
                stage("sally_laws", sally_laws)
        if "chk" in st:
            rep.cross_checked_powers = sorted(st["chk"].compared)
    return rep
