"""Exact multivariate polynomials over GF(p) and Q.

Monomials are packed into a single Python int.  The low region holds the
exponent vector (one 20-bit field per variable, exponents < 2**16); the high
region holds the values of the rows of a nonnegative integer order matrix.
Two consequences drive everything downstream:

* comparing packed ints compares monomials under the ring's order, and
* multiplying monomials is adding packed ints.

A ring therefore fixes its monomial order; switching orders means mapping a
polynomial into a sibling ring (``ring.with_order(...)``), which re-encodes and
re-sorts its terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

EXP_BITS = 20
EXP_LIMIT = 1 << 16
ROW_BITS = 40


class RingMismatch(ValueError):
    pass


class ExponentOverflow(ArithmeticError):
    pass


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------- fields


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """GF(p) for an odd prime p < 2**31, or the rationals when ``char == 0``."""

    char: int = 32003

    def __post_init__(self):
        if self.char != 0:
            if self.char == 2 or not _is_prime(self.char) or self.char >= 1 << 31:
                raise ValueError(f"characteristic must be 0 or an odd prime < 2^31, got {self.char}")

    @property
    def is_prime(self) -> bool:
        return self.char != 0

    def __call__(self, value):
        """Coerce an int or Fraction into the field."""
        if self.char:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.char) % self.char
            return int(value) % self.char
        return Fraction(value)

    def inv(self, a):
        if self.char:
            return pow(a, -1, self.char)
        return 1 / a

    def lift(self, a) -> int | Fraction:
        """Symmetric representative, for printing."""
        if self.char:
            return a - self.char if a > self.char // 2 else a
        return a.numerator if a.denominator == 1 else a

    def __str__(self):
        return f"GF({self.char})" if self.char else "QQ"


GF32003 = CoefficientField(32003)
QQ = CoefficientField(0)


# ---------------------------------------------------------------- orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, realised as a nonnegative integer matrix.

    kind:
      ``lex``      lexicographic on ``priority`` (default: ring order of variables)
      ``grevlex``  weighted degree, then reverse lex; the last variable of
                   ``priority`` is the cheapest
      ``block``    ``front`` block beats everything else; grevlex inside blocks
      ``tdeg``     degree in the ``front`` variables first, then grevlex
    """

    kind: str = "grevlex"
    front: tuple[int, ...] = ()
    priority: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block", "tdeg"):
            raise ValueError(f"unknown order kind {self.kind!r}")

    def matrix(self, nvars: int, weights: Sequence[int]) -> list[list[int]]:
        prio = list(self.priority) if self.priority is not None else list(range(nvars))
        if sorted(prio) != list(range(nvars)):
            raise ValueError("priority must be a permutation of the variables")
        if self.kind == "lex":
            rows = []
            for i in prio:
                row = [0] * nvars
                row[i] = 1
                rows.append(row)
            return rows
        if self.kind == "grevlex":
            return _grevlex_rows(prio, nvars, weights)
        front = [i for i in prio if i in self.front]
        back = [i for i in prio if i not in self.front]
        if self.kind == "block":
            rows = _grevlex_rows(front, nvars, weights) if front else []
            return rows + _grevlex_rows(back, nvars, weights)
        # tdeg
        head = [1 if i in self.front else 0 for i in range(nvars)]
        return [head] + _grevlex_rows(prio, nvars, weights)

    def name(self) -> str:
        return self.kind


def _grevlex_rows(block: list[int], nvars: int, weights: Sequence[int]) -> list[list[int]]:
    rows = []
    for k in range(len(block), 0, -1):
        row = [0] * nvars
        for i in block[:k]:
            row[i] = weights[i]
        rows.append(row)
    return rows


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


# ---------------------------------------------------------------- rings


class Ring:
    """Polynomial ring k[names] with a fixed monomial order and grading.

    ``weights`` give the grading used for homogeneity and sugar (default all
    1).  ``tvars`` marks the T-block of a presentation ring so that
    bidegrees (x-degree, T-degree) can be read off.
    """

    def __init__(
        self,
        names: Sequence[str],
        field: CoefficientField = GF32003,
        order: MonomialOrder = GREVLEX,
        weights: Sequence[int] | None = None,
        tvars: Iterable[str] = (),
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", nm):
                raise ValueError(f"bad variable name {nm!r}")
        self.names = names
        self.nvars = len(names)
        self.field = field
        self.order = order
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or min(self.weights, default=1) < 1:
            raise ValueError("weights must be positive, one per variable")
        tset = set(tvars)
        unknown = tset - set(names)
        if unknown:
            raise ValueError(f"unknown T-variables {sorted(unknown)}")
        self.tvars = tuple(nm for nm in names if nm in tset)
        self.index = {nm: i for i, nm in enumerate(names)}
        self.p = field.char

        n = self.nvars
        rows = order.matrix(n, self.weights)
        self.low_bits = EXP_BITS * n
        self.low_mask = (1 << self.low_bits) - 1
        nrows = len(rows)
        self.units = []
        for i in range(n):
            hi = 0
            for r, row in enumerate(rows):
                hi |= row[i] << (ROW_BITS * (nrows - 1 - r))
            self.units.append((hi << self.low_bits) | (1 << (EXP_BITS * i)))
        # guard bit per exponent field, used by the divisibility test
        self.guard = sum(1 << (EXP_BITS * i + EXP_BITS - 1) for i in range(n))
        self.overflow = sum(((1 << EXP_BITS) - EXP_LIMIT) << (EXP_BITS * i) for i in range(n))
        self.tmask = [nm in tset for nm in names]
        self._key = (names, field, order, self.weights, self.tvars)

    # -- identity
    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Ring({','.join(self.names)}; {self.field}; {self.order.kind})"

    def with_order(self, order: MonomialOrder) -> "Ring":
        if order == self.order:
            return self
        return Ring(self.names, self.field, order, self.weights, self.tvars)

    def with_field(self, field: CoefficientField) -> "Ring":
        return Ring(self.names, field, self.order, self.weights, self.tvars)

    # -- monomials
    def encode(self, exps: Sequence[int]) -> int:
        m = 0
        for e, u in zip(exps, self.units):
            if e:
                if e >= EXP_LIMIT or e < 0:
                    raise ExponentOverflow(f"exponent {e} out of range")
                m += e * u
        return m

    def exponents(self, m: int) -> tuple[int, ...]:
        mask = (1 << EXP_BITS) - 1
        return tuple((m >> (EXP_BITS * i)) & mask for i in range(self.nvars))

    def wdeg(self, m: int) -> int:
        return sum(w * e for w, e in zip(self.weights, self.exponents(m)))

    def tdeg(self, m: int) -> int:
        return sum(e for t, e in zip(self.tmask, self.exponents(m)) if t)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b & self.low_mask | g) - (a & self.low_mask)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode([max(x, y) for x, y in zip(self.exponents(a), self.exponents(b))])

    # -- constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {0: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.units[self.index[name]]: self.field(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(nm) for nm in self.names]

    def monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self.encode(exps): c} if c else {})

    def from_terms(self, terms: Mapping[tuple, object]) -> "Polynomial":
        out: dict[int, object] = {}
        for exps, c in terms.items():
            m = self.encode(exps)
            v = self.field(c) + out.get(m, 0)
            if self.p:
                v %= self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __call__(self, text: str) -> "Polynomial":
        return self.parse(text)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Immutable polynomial; ``terms`` maps packed monomial -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_sorted")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._sorted = None

    # -- views
    def sorted_terms(self) -> list[tuple[object, int]]:
        """(coefficient, packed monomial) pairs, strictly descending."""
        if self._sorted is None:
            self._sorted = [(self.terms[m], m) for m in sorted(self.terms, reverse=True)]
        return self._sorted

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def leading_term(self) -> tuple[object, tuple[int, ...]]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms)
        return self.terms[m], self.ring.exponents(m)

    def lm(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms)

    def lc(self):
        return self.terms[self.lm()]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.lc())
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        p = self.ring.p
        if p:
            c %= p
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: a * c % p for m, a in self.terms.items()})
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: a * c for m, a in self.terms.items()})

    def degree(self) -> int:
        """Weighted total degree (max over terms)."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(m) for m in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(self.ring.exponents(m)) for m in self.terms)

    def bidegree(self) -> tuple[int, int]:
        """(x-degree, T-degree) of the leading term."""
        e = self.ring.exponents(self.lm())
        t = sum(x for x, f in zip(e, self.ring.tmask) if f)
        return sum(e) - t, t

    def bidegrees(self) -> set[tuple[int, int]]:
        out = set()
        for m in self.terms:
            e = self.ring.exponents(m)
            t = sum(x for x, f in zip(e, self.ring.tmask) if f)
            out.add((sum(e) - t, t))
        return out

    def is_homogeneous(self) -> bool:
        return len({self.ring.wdeg(m) for m in self.terms}) <= 1

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def variables(self) -> set[str]:
        used = 0
        for m in self.terms:
            used |= m & self.ring.low_mask
        return {nm for i, nm in enumerate(self.ring.names) if (used >> (EXP_BITS * i)) & ((1 << EXP_BITS) - 1)}

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.names == self.ring.names and other.ring.field == self.ring.field:
                    return other.to_ring(self.ring)
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        if p:
            return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()})
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        p = ring.p
        out: dict[int, object] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                k = m1 + m2
                v = get(k, 0) + c1 * c2
                if p:
                    v %= p
                out[k] = v
        ov = ring.overflow
        for k in [k for k, v in out.items() if not v]:
            del out[k]
        for k in out:
            if k & ov:
                raise ExponentOverflow("exponent exceeds 2^16 - 1")
        return Polynomial(ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, c, m: int) -> "Polynomial":
        p = self.ring.p
        if p:
            return Polynomial(self.ring, {k + m: a * c % p for k, a in self.terms.items()})
        return Polynomial(self.ring, {k + m: a * c for k, a in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.ring != self.ring:
            if other.ring.names != self.ring.names or other.ring.field != self.ring.field:
                return False
            other = other.to_ring(self.ring)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- ring maps
    def to_ring(self, ring: Ring) -> "Polynomial":
        """Re-encode in a ring with the same variable names (any order)."""
        if ring == self.ring:
            return self
        if ring.names == self.ring.names:
            src = self.ring
            out = {ring.encode(src.exponents(m)): c for m, c in self.terms.items()}
            if ring.field != src.field:
                out = {m: ring.field(src.field.lift(c)) for m, c in out.items()}
                out = {m: c for m, c in out.items() if c}
            return Polynomial(ring, out)
        return self.embed(ring)

    def embed(self, ring: Ring) -> "Polynomial":
        """Map into a ring whose variables include this ring's variables."""
        src = self.ring
        try:
            idx = [ring.index[nm] for nm in src.names]
        except KeyError as exc:
            raise RingMismatch(f"variable {exc} missing from {ring!r}") from None
        out = {}
        for m, c in self.terms.items():
            e = src.exponents(m)
            t = [0] * ring.nvars
            for i, x in zip(idx, e):
                t[i] = x
            if ring.field != src.field:
                c = ring.field(src.field.lift(c))
                if not c:
                    continue
            out[ring.encode(t)] = c
        return Polynomial(ring, out)

    def substitute(self, mapping: Mapping[str, "Polynomial"], target: Ring | None = None) -> "Polynomial":
        """Image under the ring map sending each variable to ``mapping[name]``.

        Every variable of this ring must be mapped (identity maps must be
        given explicitly); images all live in ``target``.
        """
        missing = [nm for nm in self.ring.names if nm not in mapping]
        if missing:
            raise KeyError(f"unmapped variables {missing}")
        if target is None:
            vals = list(mapping.values())
            target = vals[0].ring if vals else self.ring
        images = []
        for nm in self.ring.names:
            img = mapping[nm]
            if not isinstance(img, Polynomial):
                img = target.const(img)
            elif img.ring != target:
                img = img.to_ring(target) if img.ring.names == target.names else img.embed(target)
            images.append(img)
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(i, e):
            key = (i, e)
            if key not in cache:
                cache[key] = images[i] ** e
            return cache[key]

        acc: dict[int, object] = {}
        p = target.p
        for m, c in self.terms.items():
            term = target.const(target.field(self.ring.field.lift(c)) if target.field != self.ring.field else c)
            for i, e in enumerate(self.ring.exponents(m)):
                if e:
                    term = term * power(i, e)
                    if not term:
                        break
            for k, v in term.terms.items():
                w = acc.get(k, 0) + v
                if p:
                    w %= p
                if w:
                    acc[k] = w
                else:
                    acc.pop(k, None)
        return Polynomial(target, acc)

    def diff_free(self, names: Iterable[str]) -> bool:
        """True when none of ``names`` occurs in the polynomial."""
        return not (self.variables() & set(names))

    # -- printing
    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for c, m in self.sorted_terms():
            c = ring.field.lift(c)
            e = ring.exponents(m)
            mono = "*".join(
                nm if x == 1 else f"{nm}^{x}" for nm, x in zip(ring.names, e) if x
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Polynomial({self})"


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Parser:
    """Recursive descent for  expr := term (('+'|'-') term)* ;
    term := unary ('*' unary)* ; unary := '-' unary | power ;
    power := atom ('^' int)? ; atom := int | ident | '(' expr ')'."""

    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.toks = []
        for num, ident, other in _TOKEN.findall(text):
            if num:
                self.toks.append(("num", int(num)))
            elif ident:
                self.toks.append(("id", ident))
            elif other.strip():
                self.toks.append(("op", other))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.toks:
            self.fail("empty expression")
        val = self.expr()
        if self.pos != len(self.toks):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            kind, v = self.peek()
            if (kind, v) == ("op", "*"):
                self.take()
                val = val * self.unary()
            elif kind in ("id", "num") or (kind, v) == ("op", "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            else:
                return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, v = self.take()
            if kind != "num":
                self.fail("exponent must be a nonnegative integer")
            return base ** v
        return base

    def atom(self):
        kind, v = self.take()
        if kind == "num":
            return self.ring.const(v)
        if kind == "id":
            if v not in self.ring.index:
                self.fail(f"unknown variable {v!r}")
            return self.ring.var(v)
        if (kind, v) == ("op", "("):
            val = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return val
        self.fail(f"unexpected token {v!r}")


def parse_list(ring: Ring, text: str) -> list[Polynomial]:
    """Comma-separated polynomial list (commas inside parentheses are not split)."""
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    items.append("".join(cur))
    return [ring.parse(s) for s in items if s.strip()]
