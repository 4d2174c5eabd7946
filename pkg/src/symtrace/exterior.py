"""Exterior powers of symmetric bilinear forms.

Three independent routes to the k-th exterior power:

* :func:`exterior_power_bruteforce` evaluates every k x k minor of the Gram
  matrix on the wedge basis;
* :func:`exterior_power_diagonal` multiplies the entries of a diagonal
  presentation over all k-subsets;
* :func:`exterior_sum_expand` builds the orthogonal-sum expansion
  ``Lambda^k(phi + psi) = sum_{i+j=k} Lambda^i phi (x) Lambda^j psi``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb

from ._linalg import minor_det, minor_det_mod
from .errors import BudgetExceeded, ContextMismatch, DegenerateInput, OutOfRange
from .fields import GF
from .quadform import DiagForm, Entry, FormDescriptor, QuadForm, orth_sum, tensor

DEFAULT_BUDGET = 5000
# largest C(rank, k) for which the diagonal path lists entries in subset order
EXPAND_LIMIT = 200_000


@dataclass(frozen=True)
class SubsetBasis:
    """Strictly increasing k-tuples over range(m), in lexicographic order."""

    m: int
    k: int

    @cached_property
    def subsets(self) -> tuple:
        return tuple(combinations(range(self.m), self.k))

    @cached_property
    def index(self) -> dict:
        return {s: t for t, s in enumerate(self.subsets)}

    def __len__(self):
        return comb(self.m, self.k) if 0 <= self.k <= self.m else 0


@dataclass(frozen=True)
class BigBinomial:
    r: int
    s: int
    value: int

    def __int__(self):
        return self.value


def binomial(r: int, s: int) -> BigBinomial:
    """C(r, s) as an exact integer; zero outside 0 <= s <= r."""
    if r < 0:
        raise OutOfRange("binomial needs r >= 0")
    return BigBinomial(r, s, comb(r, s) if 0 <= s <= r else 0)


def _one_form(ctx) -> QuadForm:
    return QuadForm(ctx, [{0: ctx.one}], check=False)


def _zero_form(ctx) -> QuadForm:
    return QuadForm(ctx, [], check=False)


def exterior_power_bruteforce(phi: QuadForm, k: int, budget: int = DEFAULT_BUDGET) -> QuadForm:
    """Gram matrix of Lambda^k phi with entry (I, J) = det(G[I, J]).

    For each row subset I only column subsets J inside the union of the row
    supports of I are visited; any other J contains a zero column.
    """
    if k < 0:
        raise OutOfRange("k must be >= 0")
    ctx = phi.ctx
    m = phi.dim
    if k == 0:
        return _one_form(ctx)
    if k > m:
        return _zero_form(ctx)
    size = comb(m, k)
    if size > budget:
        raise BudgetExceeded(f"C({m},{k}) = {size} exceeds the brute-force budget {budget}")
    basis = SubsetBasis(m, k)
    index = basis.index
    if ctx.kind == GF:
        # integer residues are much cheaper than field-element objects
        p = ctx.p
        G = [{j: v.value for j, v in row.items()} for row in phi.rows]
        zero = 0

        def det(sub):
            d = minor_det_mod(sub, p)
            return ctx(d) if d else None
    else:
        G = phi.rows
        zero = ctx.zero

        def det(sub):
            d = minor_det(sub)
            return d if d else None

    rows = [dict() for _ in range(size)]
    for t, I in enumerate(basis.subsets):
        cols = set()
        for i in I:
            cols.update(G[i])
        if len(cols) < k:
            continue
        for J in combinations(sorted(cols), k):
            u = index[J]
            if u < t:
                continue
            d = det([[G[i].get(j, zero) for j in J] for i in I])
            if d is not None:
                rows[t][u] = d
                rows[u][t] = d
    return QuadForm(ctx, rows, check=False)


def exterior_power_diagonal(d: DiagForm, k: int, expand_limit: int = EXPAND_LIMIT) -> DiagForm:
    """Lambda^k of <a_1..a_m> as the products a_I over k-subsets I.

    When C(m, k) <= ``expand_limit`` the entries come out in lexicographic
    subset order; above that the products are aggregated by value through the
    generating function prod_c (1 + c X)^mult(c), so the result is a
    multiset sorted by value.
    """
    if d.radical_dim:
        raise DegenerateInput("diagonal fast path needs a nondegenerate form")
    if k < 0:
        raise OutOfRange("k must be >= 0")
    ctx = d.ctx
    r = d.rank
    if k == 0:
        return DiagForm.from_entries(ctx, [ctx.one])
    if k > r:
        return DiagForm(ctx)
    if comb(r, k) <= expand_limit:
        out = []
        for subset in combinations(d.entries, k):
            v = subset[0]
            for x in subset[1:]:
                v = v * x
            out.append(v)
        return DiagForm.from_entries(ctx, out)
    return DiagForm(ctx, _grouped_products(ctx, d.grouped(), k))


def _grouped_products(ctx, groups, k):
    poly = [defaultdict(int) for _ in range(k + 1)]
    poly[0][ctx.one] = 1
    reach = 0
    for c, mult in groups:
        top = min(mult, k)
        powers = [ctx.one]
        for _ in range(top):
            powers.append(powers[-1] * c)
        binoms = [comb(mult, t) for t in range(top + 1)]
        new = [defaultdict(int) for _ in range(k + 1)]
        for j in range(min(reach, k) + 1):
            for val, count in poly[j].items():
                for t in range(min(top, k - j) + 1):
                    new[j + t][val * powers[t]] += count * binoms[t]
        poly = new
        reach += mult
    return sorted(poly[k].items(), key=lambda kv: kv[0].sort_key())


def exterior_sum_expand(phi: QuadForm, psi: QuadForm, k: int, budget: int = DEFAULT_BUDGET) -> QuadForm:
    """Right-hand side sum_{i+j=k} Lambda^i phi (x) Lambda^j psi."""
    if phi.ctx != psi.ctx:
        raise ContextMismatch(f"{phi.ctx} vs {psi.ctx}")
    out = _zero_form(phi.ctx)
    for i in range(k + 1):
        left = exterior_power_bruteforce(phi, i, budget)
        right = exterior_power_bruteforce(psi, k - i, budget)
        out = orth_sum(out, tensor(left, right))
    return out


def hyperbolic_exterior_closed_form(h: int, k: int) -> FormDescriptor:
    """Lambda^k(h x H) in closed form.

    k odd: C(2h, k)/2 hyperbolic planes.  k = 2l even:
    C(h, l) x <(-1)^l> plus (C(2h, 2l) - C(h, l))/2 hyperbolic planes.
    """
    if h < 0 or not 0 <= k <= 2 * h:
        raise OutOfRange(f"need 0 <= k <= 2h, got h={h}, k={k}")
    total = comb(2 * h, k)
    if k % 2:
        return FormDescriptor((), total // 2)
    ell = k // 2
    mult = comb(h, ell)
    sign = -1 if ell % 2 else 1
    return FormDescriptor(((mult, (Entry(sign),)),), (total - mult) // 2)


# ---------------------------------------------------------------------------
# binomial identities


def _c(r, s):
    return comb(r, s) if 0 <= s <= r else 0


def _identity_cases():
    return [
        ("pascal", lambda r, s: True, lambda r, s: _c(r, s) + _c(r, s - 1) == _c(r + 1, s)),
        (
            "difference",
            lambda r, s: True,
            lambda r, s: _exact(r + 1 - 2 * s, r + 1, _c(r + 1, s), _c(r, s) - _c(r, s - 1)),
        ),
        (
            "gap_two_sum",
            lambda r, s: True,
            lambda r, s: _c(r, s) + _c(r, s - 2) == _c(r + 2, s) - 2 * _c(r, s - 1),
        ),
        (
            "gap_two_difference",
            lambda r, s: True,
            lambda r, s: _exact(r + 2 - 2 * s, r + 2, _c(r + 2, s), _c(r, s) - _c(r, s - 2)),
        ),
        ("absorption", lambda r, s: s >= 1, lambda r, s: _exact(r, s, _c(r - 1, s - 1), _c(r, s))),
    ]


def _exact(num, den, base, expected):
    """(num/den) * base is an integer equal to ``expected``."""
    value = Fraction(num, den) * base
    return value.denominator == 1 and value == expected


def binomial_identities_check(r_max: int) -> dict:
    """Check the five binomial identities for all 0 <= s <= r <= r_max."""
    report = {"r_max": r_max, "identities": [], "pass": True}
    for name, applies, holds in _identity_cases():
        checked = 0
        failures = []
        for r in range(r_max + 1):
            for s in range(r + 1):
                if not applies(r, s):
                    continue
                checked += 1
                if not holds(r, s):
                    failures.append([r, s])
        report["identities"].append({"name": name, "checked": checked, "failures": failures})
        report["pass"] = report["pass"] and not failures
    return report
