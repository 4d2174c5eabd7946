"""Exact arithmetic in GF(p) and in the cyclotomic field Q(zeta_n).

A :class:`FieldCtx` describes the ambient field together with the order ``n``
of the root of unity that the caller needs inside it.  Elements are immutable
:class:`FieldElem` values; arithmetic between elements of different contexts
raises :class:`~symtrace.errors.ContextMismatch`.

Prime field elements are residues in ``[0, p)``.  Cyclotomic elements are
coefficient vectors of length ``phi(n)`` over the rationals, reduced modulo the
n-th cyclotomic polynomial after every multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import factorint, isprime

from .errors import (
    BadCharacteristic,
    ContextMismatch,
    EvenInput,
    NoRootOfUnity,
    NotPrime,
    PathDisagreement,
    Unsupported,
)

GF = "gf"
CYCLO = "cyclo"

# enumeration oracles (square tables, isotropic search) are only run below this
ENUMERATION_LIMIT = 10**4


# ---------------------------------------------------------------------------
# integer polynomials and the cyclotomic modulus


def _divisors(n):
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _exact_div_monic(num, den):
    """Divide integer polynomial ``num`` by monic ``den`` (low to high), exactly."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for deg in range(len(num) - 1, dd - 1, -1):
        c = num[deg]
        if c:
            quot[deg - dd] = c
            for t in range(dd + 1):
                num[deg - dd + t] -= c * den[t]
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    Computed as ``(x^n - 1) / prod(Phi_d)`` over the proper divisors ``d`` of n.
    """
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _exact_div_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def prime_factors(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending."""
    out = []
    for q, e in sorted(factorint(n).items()):
        out.extend([q] * e)
    return out


@lru_cache(maxsize=None)
def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    qs = list(factorint(p - 1))
    g = 2
    while any(pow(g, (p - 1) // q, p) == 1 for q in qs):
        g += 1
    return g


# ---------------------------------------------------------------------------
# rational polynomial helpers for Q(zeta_n); lists are constant term first


def _trim(u):
    u = list(u)
    while u and not u[-1]:
        u.pop()
    return u


def _poly_divmod(u, v):
    u = [Fraction(c) for c in u]
    v = _trim(v)
    if not v:
        raise ZeroDivisionError("polynomial division by zero")
    dv = len(v) - 1
    lead = v[-1]
    quot = [Fraction(0)] * max(len(u) - dv, 1)
    for deg in range(len(u) - 1, dv - 1, -1):
        c = u[deg]
        if c:
            c = c / lead
            quot[deg - dv] = c
            for t in range(dv + 1):
                u[deg - dv + t] -= c * v[t]
    return _trim(quot), _trim(u[:dv])


def _poly_sub_mul(a, q, b):
    # a - q*b
    out = [Fraction(c) for c in a] + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _trim(out)


def _poly_inverse_mod(u, modulus):
    """Inverse of ``u`` modulo an irreducible ``modulus`` by extended Euclid."""
    r0, r1 = _trim(modulus), _trim(u)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    return [x / c for x in s0]


# ---------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class FieldCtx:
    """A field together with the order ``n`` of a required root of unity."""

    kind: str
    n: int
    p: int | None = None
    modulus: tuple[int, ...] | None = None

    @property
    def is_prime_field(self) -> bool:
        return self.kind == GF

    @cached_property
    def degree(self) -> int:
        return 1 if self.kind == GF else len(self.modulus) - 1

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == GF else 0

    def __call__(self, value) -> FieldElem:
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ContextMismatch(f"element of {value.ctx} used in {self}")
            return value
        if self.kind == GF:
            return GFElem(self, _to_residue(value, self.p))
        if isinstance(value, (int, Fraction)):
            return CycloElem(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        coeffs = [Fraction(c) for c in value]
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        return CycloElem(self, tuple(coeffs))

    @cached_property
    def zero(self) -> FieldElem:
        return self(0)

    @cached_property
    def one(self) -> FieldElem:
        return self(1)

    @cached_property
    def gen(self) -> FieldElem:
        """The class of x in Q[x]/Phi_n (cyclotomic contexts only)."""
        if self.kind != CYCLO:
            raise Unsupported("generator is only defined for cyclotomic contexts")
        if self.degree == 1:
            # Phi_1 = x - 1, Phi_2 = x + 1
            return self(-self.modulus[0])
        return self([0, 1] + [0] * (self.degree - 2))

    def elements(self):
        if self.kind != GF:
            raise Unsupported("cannot enumerate an infinite field")
        return [GFElem(self, v) for v in range(self.p)]

    def random_element(self, rng, nonzero=False, height=5):
        while True:
            if self.kind == GF:
                u = GFElem(self, rng.randrange(self.p))
            else:
                u = CycloElem(
                    self,
                    tuple(
                        Fraction(rng.randint(-height, height), rng.randint(1, height))
                        for _ in range(self.degree)
                    ),
                )
            if not nonzero or u:
                return u

    def to_json(self) -> dict:
        if self.kind == GF:
            return {"kind": "gf", "p": self.p, "n": self.n}
        return {"kind": "cyclo", "n": self.n}

    def __repr__(self):
        if self.kind == GF:
            return f"GF({self.p})[n={self.n}]"
        return f"Q(zeta_{self.n})"


def _to_residue(value, p):
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return value % p
    if isinstance(value, Fraction):
        if value.denominator % p == 0:
            raise ZeroDivisionError(f"denominator divisible by {p}")
        return value.numerator * pow(value.denominator, -1, p) % p
    raise TypeError(f"cannot map {value!r} into GF({p})")


def gf_create(p: int, n: int = 1) -> FieldCtx:
    """Prime field GF(p) required to contain a primitive n-th root of unity."""
    if n < 1:
        raise ValueError("n must be positive")
    if p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if p == 2 or n % p == 0:
        raise BadCharacteristic(f"characteristic {p} is 2 or divides n={n}")
    if (p - 1) % n:
        raise NoRootOfUnity(f"GF({p}) has no primitive {n}-th root of unity")
    return FieldCtx(GF, n, p=p)


def cyclo_create(n: int) -> FieldCtx:
    """The cyclotomic field Q(zeta_n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return FieldCtx(CYCLO, n, modulus=cyclotomic_polynomial(n))


def ctx_from_json(obj: dict) -> FieldCtx:
    if obj["kind"] == "gf":
        return gf_create(obj["p"], obj.get("n", 1))
    if obj["kind"] == "cyclo":
        return cyclo_create(obj["n"])
    raise ValueError(f"unknown field kind {obj['kind']!r}")


# ---------------------------------------------------------------------------
# elements


class FieldElem:
    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"cannot combine {self.ctx} with {other.ctx}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx(other)
        return None

    def __radd__(self, other):
        return self + other

    def __rmul__(self, other):
        return self * other

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else o - self

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is None else o / self

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self == self.ctx(other)
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


class GFElem(FieldElem):
    __slots__ = ()

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElem(self.ctx, (self.value + o.value) % self.ctx.p)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElem(self.ctx, (self.value - o.value) % self.ctx.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElem(self.ctx, self.value * o.value % self.ctx.p)

    def __neg__(self):
        return GFElem(self.ctx, -self.value % self.ctx.p)

    def __pow__(self, e):
        if e < 0 and not self.value:
            raise ZeroDivisionError("zero has no inverse")
        return GFElem(self.ctx, pow(self.value, e, self.ctx.p))

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError(f"division by zero in GF({self.ctx.p})")
        return GFElem(self.ctx, pow(self.value, -1, self.ctx.p))

    def __bool__(self):
        return self.value != 0

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        return self.value

    def signed(self) -> int:
        """Representative in (-p/2, p/2]."""
        p = self.ctx.p
        return self.value - p if self.value > p // 2 else self.value

    def sort_key(self):
        return self.value

    def to_json(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.ctx.p})"

    def __str__(self):
        return str(self.signed())


def _common_denominator(coeffs) -> int:
    den = 1
    for c in coeffs:
        den = math.lcm(den, c.denominator)
    return den


class CycloElem(FieldElem):
    __slots__ = ()

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.ctx, tuple(x + y for x, y in zip(self.value, o.value)))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return CycloElem(self.ctx, tuple(x - y for x, y in zip(self.value, o.value)))

    def __neg__(self):
        return CycloElem(self.ctx, tuple(-x for x in self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        mod = self.ctx.modulus
        d = len(mod) - 1
        # clear denominators so the convolution runs on plain integers
        du, dv = _common_denominator(self.value), _common_denominator(o.value)
        u = [int(c * du) for c in self.value]
        v = [int(c * dv) for c in o.value]
        prod = [0] * (2 * d - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        prod[i + j] += ui * vj
        for deg in range(2 * d - 2, d - 1, -1):
            c = prod[deg]
            if c:
                base = deg - d
                for t in range(d):
                    if mod[t]:
                        prod[base + t] -= c * mod[t]
        den = du * dv
        return CycloElem(self.ctx, tuple(Fraction(c, den) for c in prod[:d]))

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        inv = _poly_inverse_mod(self.value, self.ctx.modulus)
        inv = inv + [Fraction(0)] * (self.ctx.degree - len(inv))
        return CycloElem(self.ctx, tuple(inv))

    def __bool__(self):
        return any(self.value)

    def __hash__(self):
        if not any(self.value[1:]):
            return hash(self.value[0])
        return hash(self.value)

    def sort_key(self):
        return self.value

    def to_json(self):
        return [f"{c.numerator}/{c.denominator}" for c in self.value]

    def __repr__(self):
        return f"{self} in Q(zeta_{self.ctx.n})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.value):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else ""
            else:
                coef = str(c)
            terms.append(coef + mono)
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")


def elem_from_json(ctx: FieldCtx, obj) -> FieldElem:
    if ctx.kind == GF:
        return ctx(int(obj))
    if isinstance(obj, (int, str)) and not isinstance(obj, list):
        return ctx(Fraction(obj))
    return ctx([Fraction(c) for c in obj])


# ---------------------------------------------------------------------------
# roots of unity, squares, level


def has_exact_order(u: FieldElem, n: int) -> bool:
    """True iff u^n = 1 and u^(n/q) != 1 for every prime q dividing n."""
    if u ** n != 1:
        return False
    return all(u ** (n // q) != 1 for q in set(prime_factors(n)))


def root_of_unity(ctx: FieldCtx, order: int) -> FieldElem:
    """Deterministic primitive ``order``-th root of unity in ``ctx``.

    GF(p): g^((p-1)/order) with g the smallest primitive root mod p.
    Q(zeta_n): zeta^(n/order), which requires ``order | n``.
    """
    if ctx.kind == GF:
        if (ctx.p - 1) % order:
            raise NoRootOfUnity(f"GF({ctx.p}) has no primitive {order}-th root of unity")
        g = smallest_primitive_root(ctx.p)
        return GFElem(ctx, pow(g, (ctx.p - 1) // order, ctx.p))
    if ctx.n % order:
        raise NoRootOfUnity(f"order {order} does not divide n={ctx.n}")
    return ctx.gen ** (ctx.n // order)


def primitive_root_of_unity(ctx: FieldCtx) -> FieldElem:
    return root_of_unity(ctx, ctx.n)


def is_square(u: FieldElem) -> bool:
    """Euler criterion in GF(p); zero counts as a square."""
    if u.ctx.kind != GF:
        raise Unsupported("square-class decisions are only available over GF(p)")
    if not u.value:
        return True
    return pow(u.value, (u.ctx.p - 1) // 2, u.ctx.p) == 1


def legendre(i: int, p: int) -> int:
    if p == 2 or not isprime(p):
        raise NotPrime(f"{p} is not an odd prime")
    r = pow(i % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@lru_cache(maxsize=64)
def square_roots_table(p: int) -> dict[int, int]:
    """Map each square residue mod p to its smaller square root."""
    if p > ENUMERATION_LIMIT:
        raise Unsupported(f"enumeration oracle limited to p <= {ENUMERATION_LIMIT}")
    table = {}
    for x in range((p - 1) // 2, -1, -1):
        table[x * x % p] = x
    return table


@lru_cache(maxsize=64)
def smallest_nonsquare(p: int) -> int:
    c = 2
    while pow(c, (p - 1) // 2, p) == 1:
        c += 1
    return c


@dataclass(frozen=True)
class Level:
    """Level s(K) of a field.

    ``value`` is None when only the upper bound is known; ``math.inf`` when -1
    is not a sum of squares.  ``source`` is ``"computed"`` or ``"rule-derived"``.
    """

    value: float | int | None
    upper: float | int | None
    source: str
    witness: tuple[int, ...] | None = None

    def to_json(self):
        def enc(v):
            return "inf" if v == math.inf else v

        return {"value": enc(self.value), "upper": enc(self.upper), "source": self.source}


def level(ctx: FieldCtx) -> Level:
    if ctx.kind == GF:
        p = ctx.p
        computed = 1 if is_square(ctx(-1)) else 2
        witness = None
        if p <= ENUMERATION_LIMIT:
            roots = square_roots_table(p)
            if (p - 1) in roots:
                brute, witness = 1, (roots[p - 1],)
            else:
                brute = None
                for x in range(p):
                    t = (-1 - x * x) % p
                    if t in roots:
                        brute, witness = 2, (x, roots[t])
                        break
            if brute != computed:
                raise PathDisagreement(f"level of GF({p}): Euler says {computed}, search says {brute}")
        return Level(computed, computed, "computed", witness)
    n = ctx.n
    if n % 4 == 0:
        return Level(1, 1, "rule-derived")
    odd = n // 2 if n % 2 == 0 else n
    if odd == 1:
        # Q itself: formally real
        return Level(math.inf, math.inf, "rule-derived")
    if any(q % 8 in (3, 5) for q in set(prime_factors(odd))):
        return Level(2, 2, "rule-derived")
    return Level(None, 4, "rule-derived")


# ---------------------------------------------------------------------------
# Gauss sums


def gauss_sum_prime(p: int, ctx: FieldCtx, omega: FieldElem | None = None) -> FieldElem:
    """tau_p = sum_{i=1}^{p-1} (i/p) omega^i for a primitive p-th root omega."""
    if p == 2 or not isprime(p):
        raise NotPrime(f"{p} is not an odd prime")
    if omega is None:
        omega = root_of_unity(ctx, p)
    elif not has_exact_order(ctx(omega), p):
        raise NoRootOfUnity(f"{omega!r} is not a primitive {p}-th root of unity")
    tau = ctx.zero
    power = ctx.one
    for i in range(1, p):
        power = power * omega
        s = legendre(i, p)
        tau = tau + power if s == 1 else tau - power
    return tau


def signed_n(n: int) -> int:
    """(-1)^((n-1)/2) * n for odd n."""
    return n if n % 4 == 1 else -n


def square_root_of_signed_n(n: int, ctx: FieldCtx, omega: FieldElem | None = None) -> FieldElem:
    """Explicit t with t^2 = (-1)^((n-1)/2) n, as a product of prime Gauss sums.

    Each factor tau_q is evaluated at omega^(n/q), a primitive q-th root.
    """
    if n % 2 == 0:
        raise EvenInput(f"n={n} must be odd")
    if n < 1:
        raise ValueError("n must be positive")
    if omega is None:
        omega = root_of_unity(ctx, n) if n > 1 else ctx.one
    elif not has_exact_order(ctx(omega), n):
        raise NoRootOfUnity(f"{omega!r} is not a primitive {n}-th root of unity")
    t = ctx.one
    for q in prime_factors(n) if n > 1 else []:
        t = t * gauss_sum_prime(q, ctx, omega ** (n // q))
    return t
