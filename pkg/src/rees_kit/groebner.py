"""Buchberger's algorithm and the ideal toolbox built on it.

Internally polynomials are plain ``dict``s {packed monomial: coefficient}
over a :class:`~rees_kit.arith.Ring`; :class:`Ideal` wraps generator lists
and caches reduced Gröbner bases per monomial order.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import GREVLEX, MonomialOrder, Polynomial, Ring, RingMismatch


class GroebnerBudgetExceeded(RuntimeError):
    pass


class NonHomogeneous(ValueError):
    pass


@dataclass
class Budget:
    """Resource bounds for one Gröbner computation."""

    max_reductions: int = 2_000_000
    timeout: float | None = None


DEFAULT_BUDGET = Budget()


# ---------------------------------------------------------------- reducers


class _Basis:
    """Monic polynomials indexed for fast divisor lookup."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.lms: list[int] = []
        self.lows: list[int] = []
        self.tails: list[list[tuple[int, object]]] = []
        self.polys: list[dict] = []
        self.live: list[bool] = []
        self.memo: dict[int, int] = {}  # monomial -> reducer index, or -(#checked) - 1

    def add(self, f: dict) -> int:
        lm = max(f)
        self.lms.append(lm)
        self.lows.append(lm & self.ring.low_mask)
        self.tails.append([(m, c) for m, c in f.items() if m != lm])
        self.polys.append(f)
        self.live.append(True)
        return len(self.lms) - 1

    def find(self, m: int) -> int:
        memo = self.memo
        hit = memo.get(m)
        n = len(self.lows)
        if hit is not None:
            if hit >= 0:
                return hit
            start = -hit - 1
            if start == n:
                return -1
        else:
            start = 0
        g = self.ring.guard
        t = (m & self.ring.low_mask) | g
        lows, live = self.lows, self.live
        for i in range(start, n):
            if live[i] and (t - lows[i]) & g == g:
                memo[m] = i
                return i
        memo[m] = -n - 1
        return -1

    def kill(self, i: int):
        self.live[i] = False
        # memo entries pointing at i stay valid (the polynomial is still in the ideal)


def _reduce(f: dict, basis: _Basis, counter: list, full: bool = True) -> dict:
    """Normal form of ``f`` (consumed) modulo ``basis``."""
    p = basis.ring.p
    find = basis.find
    lms, tails = basis.lms, basis.tails
    out = {}
    steps = 0
    while f:
        m = max(f)
        c = f.pop(m)
        i = find(m)
        if i < 0:
            out[m] = c
            if not full:
                out.update(f)
                break
            continue
        q = m - lms[i]
        steps += 1
        get = f.get
        if p:
            for t, a in tails[i]:
                k = t + q
                v = (get(k, 0) - c * a) % p
                if v:
                    f[k] = v
                else:
                    del f[k]
        else:
            for t, a in tails[i]:
                k = t + q
                v = get(k, 0) - c * a
                if v:
                    f[k] = v
                else:
                    del f[k]
    counter[0] += steps
    return out


def _monic(f: dict, p: int) -> dict:
    lm = max(f)
    c = f[lm]
    if p:
        if c == 1:
            return f
        inv = pow(c, -1, p)
        return {m: a * inv % p for m, a in f.items()}
    if c == 1:
        return f
    return {m: a / c for m, a in f.items()}


def _spoly(basis: _Basis, i: int, j: int, lcm: int) -> dict:
    p = basis.ring.p
    qi = lcm - basis.lms[i]
    qj = lcm - basis.lms[j]
    f = {t + qi: a for t, a in basis.tails[i]}
    get = f.get
    for t, a in basis.tails[j]:
        k = t + qj
        v = get(k, 0) - a
        if p:
            v %= p
        if v:
            f[k] = v
        else:
            f.pop(k, None)
    return f


# ---------------------------------------------------------------- buchberger


def buchberger(
    gens: Sequence[Polynomial],
    budget: Budget | None = None,
    reduced: bool = True,
) -> list[Polynomial]:
    """Reduced Gröbner basis of ``gens`` in their ring's order.

    Gebauer–Möller pair elimination, sugar selection with first-in-first-out
    tie breaking.  Raises :class:`GroebnerBudgetExceeded` when the reduction
    count or wall-clock budget runs out.
    """
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators live in different rings")
    raw = _buchberger_raw(ring, [dict(g.terms) for g in gens], budget or DEFAULT_BUDGET)
    if reduced:
        raw = _interreduce(ring, raw)
    out = [Polynomial(ring, f) for f in raw]
    out.sort(key=lambda g: g.lm())
    return out


def _buchberger_raw(
    ring: Ring,
    polys: list[dict],
    budget: Budget,
    max_degree: int | None = None,
    track: list | None = None,
) -> list[dict]:
    """Core loop.  Inputs are queued alongside S-pairs by sugar (degree for
    homogeneous input), S-pairs first within a degree.  For homogeneous input
    the indices of inputs that did not reduce to zero are appended to
    ``track``: they form a minimal generating set.  Pairs of degree above
    ``max_degree`` are skipped (degree-truncated basis)."""
    p = ring.p
    basis = _Basis(ring)
    sugar: list[int] = []
    queue: list[tuple] = []  # heap of (sugar, kind, seq, i, j, lcm); kind 0 = pair, 1 = input
    seq = 0
    counter = [0]
    start = time.monotonic()
    guard, low_mask = ring.guard, ring.low_mask
    wdeg = ring.wdeg

    def divides(a, b):
        return ((b & low_mask | guard) - (a & low_mask)) & guard == guard

    def check_budget():
        if counter[0] > budget.max_reductions:
            raise GroebnerBudgetExceeded(f"more than {budget.max_reductions} reduction steps")
        if budget.timeout is not None and time.monotonic() - start > budget.timeout:
            raise GroebnerBudgetExceeded(f"timeout after {budget.timeout:.1f}s")

    exps: list[tuple[int, ...]] = []
    units = ring.units

    def lcm_of(a: tuple, b: tuple) -> int:
        return sum([max(x, y) * u for x, y, u in zip(a, b, units) if x or y])

    def insert(h: dict, s: int):
        nonlocal queue, seq
        hi = basis.add(h)
        sugar.append(s)
        lh = basis.lms[hi]
        eh = ring.exponents(lh)
        exps.append(eh)
        # Gebauer-Moeller UPDATE on the new pairs, grouped by lcm
        groups: dict[int, list] = {}
        for gi in range(hi):
            if basis.live[gi]:
                lg = basis.lms[gi]
                l = lcm_of(eh, exps[gi])
                groups.setdefault(l, []).append((gi, l == lh + lg))
        kept_lcms = []
        new = []
        for l in sorted(groups, key=wdeg):
            if any(divides(l2, l) for l2 in kept_lcms):
                continue
            kept_lcms.append(l)
            members = groups[l]
            if not any(cop for _, cop in members):
                new.append((members[0][0], l))
        # criterion B on old pairs
        survivors = []
        for entry in queue:
            if entry[1] == 0:
                l = entry[5]
                if divides(lh, l):
                    i, j = entry[3], entry[4]
                    if lcm_of(exps[i], eh) != l and lcm_of(exps[j], eh) != l:
                        continue
            survivors.append(entry)
        for gi, l in new:
            s_pair = max(sugar[gi] + wdeg(l - basis.lms[gi]), s + wdeg(l - lh))
            if max_degree is None or s_pair <= max_degree:
                survivors.append((s_pair, 0, seq, gi, hi, l))
                seq += 1
        heapq.heapify(survivors)
        queue = survivors
        for gi in range(hi):
            if basis.live[gi] and divides(lh, basis.lms[gi]):
                basis.kill(gi)

    for k, f in enumerate(polys):
        if f:
            s = max(wdeg(m) for m in f)
            if max_degree is not None and s > max_degree:
                continue
            heapq.heappush(queue, (s, 1, seq, k, -1, 0))
            seq += 1
    while queue:
        check_budget()
        s, kind, _, i, j, l = heapq.heappop(queue)
        if kind == 1:
            f = _reduce(dict(polys[i]), basis, counter)
            if f:
                if track is not None:
                    track.append(i)
                insert(_monic(f, p), s)
            continue
        f = _spoly(basis, i, j, l)
        if not f:
            continue
        f = _reduce(f, basis, counter)
        if f:
            insert(_monic(f, p), s)
    return [basis.polys[i] for i in range(len(basis.polys)) if basis.live[i]]


def _interreduce(ring: Ring, polys: list[dict]) -> list[dict]:
    """Make a minimal Gröbner basis reduced (tails fully reduced, monic)."""
    polys = sorted(polys, key=max)
    minimal = []
    lows = []
    g = ring.guard
    for f in polys:
        t = (max(f) & ring.low_mask) | g
        if not any((t - lo) & g == g for lo in lows):
            minimal.append(f)
            lows.append(t & ring.low_mask)
    # an element never reduces its own tail, so one shared basis suffices
    basis = _Basis(ring)
    for f in minimal:
        basis.add(f)
    out = []
    counter = [0]
    for f in minimal:
        lm = max(f)
        tail = {m: c for m, c in f.items() if m != lm}
        tail = _reduce(tail, basis, counter)
        tail[lm] = f[lm]
        out.append(_monic(tail, ring.p))
    return out


def truncated_groebner(gens: Sequence[Polynomial], max_degree: int, budget: Budget | None = None) -> list[Polynomial]:
    """Gröbner basis of homogeneous ``gens`` correct up to degree ``max_degree``."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = gens[0].ring
    if not all(g.is_homogeneous() for g in gens):
        raise NonHomogeneous("truncated bases need homogeneous input")
    raw = _buchberger_raw(ring, [dict(g.terms) for g in gens], budget or DEFAULT_BUDGET, max_degree=max_degree)
    return [Polynomial(ring, f) for f in _interreduce(ring, raw)]


def homogeneous_membership(f: Polynomial, gens: Sequence[Polynomial], budget: Budget | None = None) -> bool:
    """f in (gens) for homogeneous data, using a basis truncated at deg f."""
    if not f:
        return True
    G = truncated_groebner(gens, f.degree(), budget)
    return not normal_form(f, G)


def _monomials_of_weight(ring: Ring, k: int) -> list[int]:
    """Packed monomials of weighted degree exactly k."""
    w = ring.weights
    out = []

    def rec(i, left, exps):
        if i == ring.nvars - 1:
            if left % w[i] == 0:
                out.append(ring.encode(exps + [left // w[i]]))
            return
        for e in range(left // w[i] + 1):
            rec(i + 1, left - e * w[i], exps + [e])

    if k >= 0:
        rec(0, k, [])
    return out


def linear_membership(f: Polynomial, gens: Sequence[Polynomial]) -> bool:
    """f in (gens) for homogeneous data, by row reduction of the degree-deg f
    Macaulay matrix.  Independent of the Gröbner machinery; used as an oracle."""
    if not f:
        return True
    ring = f.ring
    if not f.is_homogeneous() or not all(g.is_homogeneous() for g in gens if g):
        raise NonHomogeneous("linear_membership needs homogeneous input")
    D = f.degree()
    fld = ring.field
    p = ring.p
    pivots: dict[int, dict] = {}  # pivot monomial -> row with leading coefficient 1

    def reduce(row: dict) -> dict:
        row = dict(row)
        while row:
            top = max(row)
            piv = pivots.get(top)
            if piv is None:
                return row
            c = row[top]
            for m, a in piv.items():
                v = row.get(m, 0) - c * a
                if p:
                    v %= p
                if v:
                    row[m] = v
                else:
                    row.pop(m, None)
        return row

    for g in gens:
        if not g or g.degree() > D:
            continue
        for u in _monomials_of_weight(ring, D - g.degree()):
            row = reduce({m + u: a for m, a in g.terms.items()})
            if row:
                inv = fld.inv(row[max(row)])
                pivots[max(row)] = {m: (a * inv % p if p else a * inv) for m, a in row.items()}
    return not reduce(f.terms)


def _reduce_with(ring: Ring, f: dict, G: Iterable[dict]) -> dict:
    basis = _Basis(ring)
    for g in G:
        basis.add(_monic(dict(g), ring.p))
    return _reduce(dict(f), basis, [0])


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (a Gröbner basis in f's ring order)."""
    ring = f.ring
    raw = []
    for g in G:
        if g.ring != ring:
            g = g.to_ring(ring)
        if g:
            raw.append(g.terms)
    if not raw:
        return f
    return Polynomial(ring, _reduce_with(ring, f.terms, raw))


def spoly_check(G: Sequence[Polynomial]) -> bool:
    """True when every S-polynomial of ``G`` reduces to zero (Buchberger's criterion)."""
    G = [g.monic() for g in G if g]
    if not G:
        return True
    ring = G[0].ring
    basis = _Basis(ring)
    for g in G:
        basis.add(dict(g.terms))
    counter = [0]
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            l = ring.lcm(basis.lms[i], basis.lms[j])
            f = _spoly(basis, i, j, l)
            if f and _reduce(f, basis, counter):
                return False
    return True


def minimal_homogeneous_basis(gens: Sequence[Polynomial], budget: Budget | None = None):
    """(reduced GB, indices of a minimal generating subset) for homogeneous input.

    Generators are injected into the degree-by-degree Buchberger loop at their
    own degree; those that still reduce to zero are redundant.
    """
    gens = list(gens)
    ring = gens[0].ring
    for g in gens:
        if not g.is_homogeneous():
            raise NonHomogeneous(f"not homogeneous w.r.t. weights {ring.weights}: {g}")
    track: list[int] = []
    raw = _buchberger_raw(ring, [dict(g.terms) for g in gens], budget or DEFAULT_BUDGET, track=track)
    G = [Polynomial(ring, f) for f in _interreduce(ring, raw)]
    G.sort(key=lambda g: g.lm())
    return G, sorted(track)


# ---------------------------------------------------------------- ideals


def _to(f: Polynomial, ring: Ring) -> Polynomial:
    return f if f.ring == ring else f.to_ring(ring)


class Ideal:
    """Ideal of a polynomial ring, with reduced Gröbner bases cached per order."""

    def __init__(self, gens: Iterable[Polynomial] = (), ring: Ring | None = None, budget: Budget | None = None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = gens[0].ring
        self.ring = ring
        self.gens = tuple(_to(g, ring) for g in gens if g)
        self.budget = budget or DEFAULT_BUDGET
        self._gb: dict[MonomialOrder, list[Polynomial]] = {}

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    # -- Gröbner bases
    def groebner(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        """Reduced GB under ``order`` (default: the ring's); lives in ``ring.with_order(order)``."""
        order = order or self.ring.order
        if order not in self._gb:
            R = self.ring.with_order(order)
            self._gb[order] = buchberger([_to(g, R) for g in self.gens], self.budget)
        return self._gb[order]

    def set_groebner(self, G: Sequence[Polynomial]):
        """Install a basis known to be a reduced GB (e.g. from saturation)."""
        G = list(G)
        order = G[0].ring.order if G else self.ring.order
        self._gb[order] = G

    def leading_ideal(self, order: MonomialOrder | None = None) -> list[tuple[int, ...]]:
        G = self.groebner(order)
        return [g.ring.exponents(g.lm()) for g in G]

    def is_unit(self) -> bool:
        G = self.groebner()
        return any(g.lm() == 0 for g in G)

    def is_zero(self) -> bool:
        return not self.gens

    # -- membership
    def reduce(self, f: Polynomial) -> Polynomial:
        f = _to(f, self.ring)
        return normal_form(f, self.groebner())

    def contains(self, f: Polynomial) -> bool:
        if not f:
            return True
        if not self.gens:
            return False
        return not self.reduce(f)

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.issubset(other) and other.issubset(self)

    # -- arithmetic
    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(list(self.gens) + [_to(g, self.ring) for g in other.gens], self.ring, self.budget)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def power(self, j: int) -> "Ideal":
        return ideal_power(self, j)

    def quotient(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            return ideal_quotient_ideal(self, other)
        return ideal_quotient(self, other)

    def intersect(self, other: "Ideal") -> "Ideal":
        return ideal_intersection(self, other)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def minimal_generators(self) -> list[Polynomial]:
        return minimal_generators(self)


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    return I.contains(f)


def ideal_equality(I: Ideal, K: Ideal) -> bool:
    return I.equals(K)


def ideal_product(I: Ideal, K: Ideal) -> Ideal:
    prods = [f * _to(g, I.ring) for f in I.gens for g in K.gens]
    return Ideal(_prune(prods), I.ring, I.budget)


def _prune(polys: list[Polynomial]) -> list[Polynomial]:
    """Drop zero, duplicate and linearly dependent generators (per degree)."""
    by_deg: dict[int, list[Polynomial]] = {}
    for f in polys:
        if f:
            by_deg.setdefault(f.degree() if f.is_homogeneous() else -1, []).append(f)
    out = []
    for deg, fs in sorted(by_deg.items()):
        if deg < 0:
            seen = set()
            for f in fs:
                key = frozenset(f.monic().terms.items())
                if key not in seen:
                    seen.add(key)
                    out.append(f)
            continue
        out.extend(_independent(fs))
    return out


def _independent(fs: list[Polynomial]) -> list[Polynomial]:
    """A maximal linearly independent sublist (sparse echelon on dicts)."""
    ring = fs[0].ring
    p = ring.p
    pivots: dict[int, dict] = {}
    keep = []
    for f in fs:
        v = dict(f.terms)
        while v:
            m = max(v)
            row = pivots.get(m)
            if row is None:
                break
            c = v[m]
            for k, a in row.items():
                w = v.get(k, 0) - c * a
                if p:
                    w %= p
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
        if v:
            pivots[max(v)] = _monic(v, p)
            keep.append(f)
    return keep


def ideal_power(I: Ideal, j: int) -> Ideal:
    """I^j by iterated multiplication, pruning dependent products each step."""
    if j < 1:
        raise ValueError("power must be >= 1")
    P = I
    for _ in range(j - 1):
        P = ideal_product(P, I)
    return P


# -- elimination machinery


def _extend(ring: Ring, extra: Sequence[str], weights: Sequence[int], order: MonomialOrder) -> Ring:
    names = ring.names + tuple(extra)
    return Ring(names, ring.field, order, tuple(ring.weights) + tuple(weights), ring.tvars)


def eliminate(I: Ideal, front: Iterable[str], keep_ring: bool = False) -> Ideal:
    """I ∩ k[variables not in ``front``] via a block elimination order."""
    front = list(front)
    ring = I.ring
    idx = tuple(ring.index[v] for v in front)
    order = MonomialOrder("block", front=idx)
    G = I.groebner(order)
    kept = [g for g in G if g.diff_free(front)]
    if keep_ring:
        return Ideal([g.to_ring(ring) for g in kept], ring, I.budget)
    sub = Ring([nm for nm in ring.names if nm not in front], ring.field, GREVLEX,
               [w for nm, w in zip(ring.names, ring.weights) if nm not in front],
               [t for t in ring.tvars if t not in front])
    out = [_restrict(g, sub) for g in kept]
    return Ideal(out, sub, I.budget)


def _restrict(f: Polynomial, sub: Ring) -> Polynomial:
    src = f.ring
    idx = [src.index[nm] for nm in sub.names]
    return Polynomial(sub, {sub.encode([src.exponents(m)[i] for i in idx]): c for m, c in f.terms.items()})


def _fresh(ring: Ring, stem: str) -> str:
    name = stem
    k = 0
    while name in ring.index:
        k += 1
        name = f"{stem}{k}"
    return name


def ideal_intersection(I: Ideal, K: Ideal) -> Ideal:
    """(t·I + (1 - t)·K) ∩ R."""
    ring = I.ring
    if not I.gens or not K.gens:
        return Ideal([], ring, I.budget)
    t = _fresh(ring, "t_")
    W = _extend(ring, [t], [1], MonomialOrder("block", front=(ring.nvars,)))
    tv = W.var(t)
    gens = [tv * g.embed(W) for g in I.gens] + [(1 - tv) * _to(g, ring).embed(W) for g in K.gens]
    J = Ideal(gens, W, I.budget)
    G = J.groebner()
    kept = [_restrict(g, ring.with_order(ring.order)) for g in G if g.diff_free([t])]
    return Ideal(kept, ring, I.budget)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ValueError when g does not divide f."""
    ring = f.ring
    g = _to(g, ring)
    basis = _Basis(ring)
    gm = g.monic()
    basis.add(dict(gm.terms))
    rem = dict(f.terms)
    quot: dict[int, object] = {}
    p = ring.p
    lm_g = gm.lm()
    while rem:
        m = max(rem)
        if not ring.divides(lm_g, m):
            raise ValueError("not divisible")
        c = rem.pop(m)
        q = m - lm_g
        quot[q] = c
        for t, a in basis.tails[0]:
            k = t + q
            v = rem.get(k, 0) - c * a
            if p:
                v %= p
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    inv = ring.field.inv(g.lc())
    return Polynomial(ring, quot).scale(inv)


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """I : f, computed as (I ∩ (f)) / f."""
    if not f:
        raise ValueError("quotient by zero")
    f = _to(f, I.ring)
    inter = ideal_intersection(I, Ideal([f], I.ring))
    return Ideal([exact_divide(g, f) for g in inter.gens], I.ring, I.budget)


def ideal_quotient_ideal(I: Ideal, K: Ideal) -> Ideal:
    """I : K = ∩ I : k over the generators k of K."""
    gens = [g for g in K.gens if g]
    if not gens:
        raise ValueError("quotient by the zero ideal")
    out = ideal_quotient(I, gens[0])
    for k in gens[1:]:
        out = ideal_intersection(out, ideal_quotient(I, k))
    return out


def saturate_variable(I: Ideal, var: str) -> Ideal:
    """I : var^∞ for homogeneous I (Bayer: grevlex with ``var`` cheapest)."""
    ring = I.ring
    if not I.is_homogeneous():
        raise NonHomogeneous("variable saturation needs homogeneous input")
    i = ring.index[var]
    prio = tuple(k for k in range(ring.nvars) if k != i) + (i,)
    order = MonomialOrder("grevlex", priority=prio)
    G = I.groebner(order)
    R = G[0].ring if G else ring.with_order(order)
    unit = R.units[i]
    out = []
    for g in G:
        low = None
        for m in g.terms:
            e = R.exponents(m)[i]
            low = e if low is None else min(low, e)
        if low:
            g = Polynomial(R, {m - low * unit: c for m, c in g.terms.items()})
        out.append(g)
    S = Ideal([g.to_ring(ring) for g in out], ring, I.budget)
    S.set_groebner(buchberger(out, I.budget))
    return S


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """Minimal homogeneous generators, pruned ascending by degree."""
    if not I.gens:
        return []
    if not I.is_homogeneous():
        raise NonHomogeneous("minimal generators need homogeneous input")
    gens = sorted(I.gens, key=lambda g: (g.degree(), g.lm()))
    G, idx = minimal_homogeneous_basis(gens, I.budget)
    I._gb.setdefault(G[0].ring.order if G else I.ring.order, G)
    return [gens[i] for i in idx]


# ---------------------------------------------------------------- syzygies


@dataclass
class SyzygyMatrix:
    """m x s matrix whose columns minimally generate the syzygies of ``gens``."""

    gens: list[Polynomial]
    columns: list[list[Polynomial]]
    degrees: list[int]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.gens), len(self.columns)

    def entries(self) -> list[Polynomial]:
        return [c for col in self.columns for c in col if c]

    def check(self) -> bool:
        """Every column c satisfies sum_i c_i f_i = 0."""
        ring = self.gens[0].ring
        for col in self.columns:
            total = ring.zero()
            for c, f in zip(col, self.gens):
                total = total + c * f
            if total:
                return False
        return True


def _tagged_ring(ring: Ring, degs: Sequence[int], with_e0: bool) -> tuple[Ring, list[str]]:
    tags = [_fresh(ring, f"e_{i}") for i in range(len(degs) + 1)]
    names = tags[1:] if not with_e0 else tags
    weights = [d + 1 for d in degs]
    if with_e0:
        weights = [1] + weights
        order = MonomialOrder("block", front=(ring.nvars,))
    else:
        order = ring.order
    W = Ring(ring.names + tuple(names), ring.field, order, tuple(ring.weights) + tuple(weights), ring.tvars)
    return W, names


def syzygies(gens: Sequence[Polynomial], budget: Budget | None = None, minimal: bool = True) -> SyzygyMatrix:
    """Syzygy module of homogeneous ``gens``.

    The module is handled as an ideal linear in tag variables e_1..e_m
    (modulo all quadratic monomials in the tags); eliminating e_0 from
    (f_i e_0 + e_i) leaves exactly the syzygies.  Columns are then pruned to
    a minimal generating set in ascending degree.
    """
    gens = list(gens)
    ring = gens[0].ring
    if any(not g for g in gens):
        raise ValueError("zero generator")
    for g in gens:
        if not g.is_homogeneous():
            raise NonHomogeneous(f"syzygies need homogeneous generators, got {g}")
    degs = [g.degree() for g in gens]
    budget = budget or DEFAULT_BUDGET
    W, tags = _tagged_ring(ring, degs, with_e0=True)
    e = [W.var(t) for t in tags]
    polys = [g.embed(W) * e[0] + e[i + 1] for i, g in enumerate(gens)]
    polys += [e[a] * e[b] for a in range(len(e)) for b in range(a, len(e))]
    G = buchberger(polys, budget)
    cols = []
    for g in G:
        ex = [0] * len(e)
        ok = True
        for m in g.terms:
            tdeg = [W.exponents(m)[ring.nvars + k] for k in range(len(e))]
            if sum(tdeg) != 1 or tdeg[0]:
                ok = False
                break
        if ok:
            cols.append(g)
    columns = [_split_column(g, ring, W, tags[1:]) for g in cols]
    mat = SyzygyMatrix(gens, columns, [_column_degree(c, degs) for c in columns])
    if minimal:
        mat = minimalize_columns(mat, budget)
    return mat


def _split_column(g: Polynomial, ring: Ring, W: Ring, tags: Sequence[str]) -> list[Polynomial]:
    parts = [dict() for _ in tags]
    base = ring.nvars
    tag_idx = [W.index[t] for t in tags]
    for m, c in g.terms.items():
        ex = W.exponents(m)
        for k, ti in enumerate(tag_idx):
            if ex[ti]:
                parts[k][ring.encode(ex[:base])] = c
                break
    return [Polynomial(ring, d) for d in parts]


def _column_degree(col: Sequence[Polynomial], degs: Sequence[int]) -> int:
    for c, d in zip(col, degs):
        if c:
            return c.degree() + d
    return -1


def module_membership(col: Sequence[Polynomial], others: Sequence[Sequence[Polynomial]], budget: Budget | None = None) -> bool:
    """Is ``col`` in the submodule of R^m generated by ``others``?"""
    ring = next(c for c in col if c).ring if any(col) else None
    if ring is None:
        return True
    m = len(col)
    W, tags = _tagged_ring(ring, [0] * m, with_e0=False)
    e = [W.var(t) for t in tags]

    def as_poly(v):
        total = W.zero()
        for c, ei in zip(v, e):
            if c:
                total = total + c.embed(W) * ei
        return total

    polys = [as_poly(v) for v in others] + [e[a] * e[b] for a in range(m) for b in range(a, m)]
    G = buchberger([q for q in polys if q], budget)
    return not normal_form(as_poly(col), G)


def minimalize_columns(mat: SyzygyMatrix, budget: Budget | None = None) -> SyzygyMatrix:
    """Keep a minimal generating subset of the columns (ascending degree)."""
    ring = mat.gens[0].ring
    degs = [g.degree() for g in mat.gens]
    W, tags = _tagged_ring(ring, degs, with_e0=False)
    e = [W.var(t) for t in tags]
    order = sorted(range(len(mat.columns)), key=lambda k: mat.degrees[k])
    polys = []
    for k in order:
        total = W.zero()
        for c, ei in zip(mat.columns[k], e):
            if c:
                total = total + c.embed(W) * ei
        polys.append(total)
    nq = len(polys)
    polys += [e[a] * e[b] for a in range(len(e)) for b in range(a, len(e))]
    _, idx = minimal_homogeneous_basis(polys, budget)
    keep = [order[i] for i in idx if i < nq]
    keep.sort(key=lambda k: (mat.degrees[k], k))
    return SyzygyMatrix(mat.gens, [mat.columns[k] for k in keep], [mat.degrees[k] for k in keep])


def i1_of_syzygies(phi: SyzygyMatrix) -> Ideal:
    """Ideal generated by all entries of the syzygy matrix."""
    ring = phi.gens[0].ring
    return Ideal(phi.entries(), ring)
