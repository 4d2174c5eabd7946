"""Symbol algebras (a, b; n, K, omega).

The algebra is generated by x, y with x^n = a, y^n = b and yx = omega xy.
Elements are coefficient vectors over the monomial basis x^i y^j stored in
row-major order (index ``i * n + j``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from ._linalg import kernel_vector
from .errors import (
    AlgebraMismatch,
    ConsistencyError,
    HypothesisViolated,
    Unsupported,
    WrongDegreeMod4,
    ZeroParameter,
)
from .fields import GF, FieldCtx, FieldElem, has_exact_order, is_square, root_of_unity
from .quadform import QuadForm, diag, witt_decompose


class SymbolAlgebra:
    """The symbol algebra (a, b; n, K, omega) over the field ``ctx``."""

    def __init__(self, ctx: FieldCtx, n: int, a, b, omega=None, omega_power: int = 1):
        if n < 2:
            raise ValueError("degree must be at least 2")
        a, b = ctx(a), ctx(b)
        if not a or not b:
            raise ZeroParameter("a and b must be nonzero")
        if omega is None:
            omega = root_of_unity(ctx, n) ** omega_power
        omega = ctx(omega)
        if not has_exact_order(omega, n):
            raise ValueError(f"omega = {omega} is not a primitive {n}-th root of unity")
        self.ctx = ctx
        self.n = n
        self.a = a
        self.b = b
        self.omega = omega

    def __repr__(self):
        return f"SymbolAlgebra(n={self.n}, a={self.a}, b={self.b}, omega={self.omega}, ctx={self.ctx!r})"

    @property
    def dim(self) -> int:
        return self.n * self.n

    def index(self, i: int, j: int) -> int:
        return i * self.n + j

    def exponents(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.n)

    @cached_property
    def _omega_powers(self):
        out = [self.ctx.one]
        for _ in range(self.n - 1):
            out.append(out[-1] * self.omega)
        return out

    def mono_mul(self, i, j, k, l):
        """(x^i y^j)(x^k y^l) = omega^(jk) a^[i+k>=n] b^[j+l>=n] x^((i+k)%n) y^((j+l)%n)."""
        n = self.n
        coef = self._omega_powers[(j * k) % n]
        if i + k >= n:
            coef = coef * self.a
        if j + l >= n:
            coef = coef * self.b
        return coef, ((i + k) % n, (j + l) % n)

    @cached_property
    def _table(self):
        n = self.n
        table = []
        for s in range(n * n):
            i, j = divmod(s, n)
            row = []
            for t in range(n * n):
                k, l = divmod(t, n)
                coef, (p, q) = self.mono_mul(i, j, k, l)
                row.append((coef, p * n + q))
            table.append(row)
        return table

    # elements

    def element(self, coeffs) -> AlgElem:
        coeffs = tuple(self.ctx(c) for c in coeffs)
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients")
        return AlgElem(self, coeffs)

    def monomial(self, i: int, j: int, coef=1) -> AlgElem:
        coeffs = [self.ctx.zero] * self.dim
        coeffs[self.index(i % self.n, j % self.n)] = self.ctx(coef)
        return AlgElem(self, tuple(coeffs))

    @property
    def one(self) -> AlgElem:
        return self.monomial(0, 0)

    @property
    def zero(self) -> AlgElem:
        return AlgElem(self, (self.ctx.zero,) * self.dim)

    @property
    def x(self) -> AlgElem:
        return self.monomial(1, 0)

    @property
    def y(self) -> AlgElem:
        return self.monomial(0, 1)

    def random_element(self, rng) -> AlgElem:
        return AlgElem(self, tuple(self.ctx.random_element(rng) for _ in range(self.dim)))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "omega": self.omega.to_json(),
            "ctx": self.ctx.to_json(),
        }


class AlgElem:
    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: SymbolAlgebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if not isinstance(other, AlgElem):
            return False
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        return AlgElem(self.algebra, tuple(u + v for u, v in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return AlgElem(self.algebra, tuple(u - v for u, v in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgElem(self.algebra, tuple(-u for u in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            c = self.algebra.ctx(other)
            return AlgElem(self.algebra, tuple(c * u for u in self.coeffs))
        if not self._check(other):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        out = self.algebra.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    __hash__ = None

    def __bool__(self):
        return any(self.coeffs)

    def to_json(self):
        return [c.to_json() for c in self.coeffs]

    def __repr__(self):
        n = self.algebra.n
        terms = []
        for idx, c in enumerate(self.coeffs):
            if c:
                i, j = divmod(idx, n)
                mono = (f"x^{i}" if i > 1 else "x" if i else "") + (f"y^{j}" if j > 1 else "y" if j else "")
                terms.append(f"({c}){mono}" if mono else f"({c})")
        return " + ".join(terms) if terms else "0"


def multiply(u: AlgElem, v: AlgElem) -> AlgElem:
    if u.algebra is not v.algebra:
        raise AlgebraMismatch("elements belong to different algebras")
    S = u.algebra
    table = S._table
    out = [S.ctx.zero] * S.dim
    for s, cu in enumerate(u.coeffs):
        if not cu:
            continue
        row = table[s]
        for t, cv in enumerate(v.coeffs):
            if cv:
                coef, idx = row[t]
                out[idx] = out[idx] + cu * cv * coef
    return AlgElem(S, out)


def regular_rep(z: AlgElem):
    """Matrix L_z of left multiplication: L_z coeffs(w) = coeffs(z w)."""
    S = z.algebra
    d = S.dim
    table = S._table
    L = [[S.ctx.zero] * d for _ in range(d)]
    for s, zs in enumerate(z.coeffs):
        if not zs:
            continue
        for c in range(d):
            coef, r = table[s][c]
            L[r][c] = L[r][c] + zs * coef
    return L


def _regular_traces(S: SymbolAlgebra):
    """trace(L_m) for every basis monomial m."""
    cache = S.__dict__.get("_regular_traces")
    if cache is None:
        cache = []
        for s in range(S.dim):
            t = S.ctx.zero
            for c, (coef, r) in enumerate(S._table[s]):
                if r == c:
                    t = t + coef
            cache.append(t)
        S.__dict__["_regular_traces"] = cache
    return cache


def reduced_trace(z: AlgElem) -> FieldElem:
    """Trd(z) = trace(L_z) / n, using linearity of the regular trace."""
    S = z.algebra
    traces = _regular_traces(S)
    total = S.ctx.zero
    for zs, t in zip(z.coeffs, traces):
        if zs and t:
            total = total + zs * t
    return total / S.n


def trace_form(S: SymbolAlgebra) -> QuadForm:
    """Gram matrix of (u, v) -> Trd(uv) on the monomial basis."""
    traces = _regular_traces(S)
    inv_n = S.ctx.one / S.n
    trd = [t * inv_n for t in traces]
    rows = []
    for s in range(S.dim):
        row = {}
        for t, (coef, r) in enumerate(S._table[s]):
            if trd[r]:
                v = coef * trd[r]
                if v:
                    row[t] = v
        rows.append(row)
    return QuadForm(S.ctx, rows)


def paired_basis_order(n: int) -> list[tuple[int, int]]:
    """Monomials grouped with their trace partners x^(-i) y^(-j).

    Scans j outer, i inner and emits each unvisited monomial followed by its
    partner; for n = 3 this is 1, x, x^2, y, y^2, xy, x^2y^2, x^2y, xy^2.
    """
    seen = set()
    order = []
    for j in range(n):
        for i in range(n):
            if (i, j) in seen:
                continue
            partner = ((-i) % n, (-j) % n)
            order.append((i, j))
            seen.add((i, j))
            if partner not in seen:
                order.append(partner)
                seen.add(partner)
    return order


def partner_pairing(n: int) -> list[tuple[int, int]]:
    """Row-major index pairs (x^i y^j, x^(n-i) y^(n-j)) for non-self-paired monomials."""
    pairs = []
    for i in range(n):
        for j in range(n):
            pi, pj = (-i) % n, (-j) % n
            if (i, j) < (pi, pj):
                pairs.append((i * n + j, pi * n + pj))
    return pairs


# ---------------------------------------------------------------------------
# quaternion subalgebra and division criteria


@dataclass
class QuaternionRelations:
    u: AlgElem
    v: AlgElem
    u_squared_is_a: bool
    v_squared_is_b: bool
    sign: FieldElem  # c with vu = c uv

    @property
    def anticommute(self) -> bool:
        return self.sign == -1

    @property
    def holds(self) -> bool:
        return self.u_squared_is_a and self.v_squared_is_b and self.anticommute

    def to_json(self):
        return {
            "u_squared_is_a": self.u_squared_is_a,
            "v_squared_is_b": self.v_squared_is_b,
            "sign": self.sign.to_json(),
            "anticommute": self.anticommute,
        }


def quaternion_relations(S: SymbolAlgebra) -> QuaternionRelations:
    """Evaluate u = x^(n/2), v = y^(n/2) against the quaternion relations (n even)."""
    if S.n % 2:
        raise ValueError("quaternion generators need even n")
    h = S.n // 2
    u, v = S.monomial(h, 0), S.monomial(0, h)
    uv, vu = u * v, v * u
    idx = S.index(h, h)
    sign = vu.coeffs[idx] / uv.coeffs[idx]
    if vu != uv * sign:
        raise ConsistencyError("vu is not a scalar multiple of uv")
    return QuaternionRelations(u, v, u * u == S.one * S.a, v * v == S.one * S.b, sign)


def quaternion_subalgebra(S: SymbolAlgebra):
    """Generators of the quaternion algebra (a, b) inside S when n = 2 mod 4."""
    if S.n % 4 != 2:
        raise WrongDegreeMod4(f"n = {S.n} is not 2 mod 4")
    rel = quaternion_relations(S)
    if not rel.holds:
        raise ConsistencyError(f"quaternion relations fail: {rel.to_json()}")
    return (rel.u, rel.v), rel


def quaternion_norm_form(a: FieldElem, b: FieldElem) -> QuadForm:
    """<1, -a, -b, ab>."""
    if not a or not b:
        raise ZeroParameter("a and b must be nonzero")
    return diag(a.ctx, [1, -a, -b, a * b])


@dataclass
class ZeroDivisor:
    u: AlgElem
    v: AlgElem
    trials_used: int


def find_zero_divisor(S: SymbolAlgebra, trials: int = 100, seed: int = 0) -> ZeroDivisor | None:
    """Randomized search for u, v != 0 with uv = 0.

    Samples nonzero z, tests whether L_z is singular and, if so, takes v from
    its kernel.  ``None`` after ``trials`` misses is inconclusive.
    """
    if S.ctx.kind != GF:
        raise Unsupported("zero-divisor search needs a finite field")
    rng = random.Random(seed)
    for attempt in range(1, trials + 1):
        z = S.random_element(rng)
        if not z:
            continue
        kern = kernel_vector(regular_rep(z), S.ctx.zero)
        if kern is None:
            continue
        v = AlgElem(S, kern)
        if z * v:
            raise ConsistencyError("kernel vector of L_z is not annihilated by z")
        return ZeroDivisor(z, v, attempt)
    return None


NOT_DIVISION = "NotDivision"
DIVISION = "Division"
INCONCLUSIVE = "Inconclusive"


@dataclass
class Verdict:
    verdict: str
    facts: list = field(default_factory=list)

    def to_json(self):
        return {"verdict": self.verdict, "facts": list(self.facts)}


def division_verdict_prop5(n: int, T: QuadForm) -> Verdict:
    """Hyperbolic trace form with n = 2 mod 4 forces -1 to be a square and S split."""
    if n % 4 != 2:
        return Verdict(INCONCLUSIVE, [f"n = {n} is not 2 mod 4"])
    w = witt_decompose(T)
    if not w.is_hyperbolic:
        return Verdict(INCONCLUSIVE, ["trace form is not hyperbolic"])
    if not is_square(T.ctx(-1)):
        raise ConsistencyError("hyperbolic trace form with n = 2 mod 4 but -1 is not a square")
    return Verdict(
        NOT_DIVISION,
        ["n = 2 mod 4", "trace form is hyperbolic", "-1 is a square", "norm form of (a, b) is hyperbolic"],
    )


def division_verdict_prop6(n: int, T: QuadForm) -> Verdict:
    """For n a power of 2 and -1 a square, a non-hyperbolic trace form means division."""
    if n < 1 or n & (n - 1):
        raise HypothesisViolated(f"n = {n} is not a power of 2")
    if not is_square(T.ctx(-1)):
        raise HypothesisViolated("-1 is not a square in the base field")
    w = witt_decompose(T)
    if w.is_hyperbolic:
        return Verdict(INCONCLUSIVE, ["trace form is hyperbolic"])
    return Verdict(DIVISION, ["n is a power of 2", "-1 is a square", "trace form is not hyperbolic"])
