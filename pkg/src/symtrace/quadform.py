"""Symmetric bilinear forms, diagonalization and Witt classification.

Gram matrices are stored sparsely: one ``{column: value}`` dict per row holding
only the nonzero entries.  The trace forms and exterior powers this package
builds have very few nonzero entries per row, and the diagonalization kernel
works directly on this representation.

Diagonal presentations (:class:`DiagForm`) are run-length encoded as
``(value, multiplicity)`` pairs so that forms of astronomically large rank,
such as high exterior powers, can still be classified.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import BadPairing, ContextMismatch, PathDisagreement, Unsupported, ZeroScalar
from .fields import (
    ENUMERATION_LIMIT,
    GF,
    FieldCtx,
    FieldElem,
    ctx_from_json,
    elem_from_json,
    is_square,
    square_roots_table,
)

DENSE_JSON_LIMIT = 400


class QuadForm:
    """A symmetric Gram matrix over a field."""

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: FieldCtx, rows, check=True):
        self.ctx = ctx
        self.rows = tuple(rows)
        if check:
            d = len(self.rows)
            for i, row in enumerate(self.rows):
                for j, v in row.items():
                    if not 0 <= j < d:
                        raise IndexError(f"column {j} out of range for dim {d}")
                    if not v or v.ctx != ctx:
                        raise ContextMismatch(f"bad entry at ({i}, {j})")
                    if self.rows[j].get(i) != v:
                        raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")

    @classmethod
    def from_matrix(cls, ctx, matrix):
        rows = []
        for line in matrix:
            row = {}
            for j, x in enumerate(line):
                v = ctx(x)
                if v:
                    row[j] = v
            rows.append(row)
        if any(len(line) != len(rows) for line in matrix):
            raise ValueError("Gram matrix must be square")
        return cls(ctx, rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def entry(self, i, j) -> FieldElem:
        return self.rows[i].get(j, self.ctx.zero)

    def to_matrix(self):
        z = self.ctx.zero
        return [[row.get(j, z) for j in range(self.dim)] for row in self.rows]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.ctx == other.ctx and self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        return f"QuadForm(dim={self.dim}, nnz={self.nnz()}, ctx={self.ctx!r})"

    def to_json(self) -> dict:
        out = {"dim": self.dim, "ctx": self.ctx.to_json()}
        if self.dim <= DENSE_JSON_LIMIT:
            out["gram"] = [[x.to_json() for x in line] for line in self.to_matrix()]
        else:
            out["sparse"] = [[i, j, v.to_json()] for i, row in enumerate(self.rows) for j, v in sorted(row.items())]
        return out

    @classmethod
    def from_json(cls, obj):
        ctx = ctx_from_json(obj["ctx"])
        if "gram" in obj:
            return cls.from_matrix(ctx, [[elem_from_json(ctx, x) for x in line] for line in obj["gram"]])
        rows = [dict() for _ in range(obj["dim"])]
        for i, j, v in obj["sparse"]:
            e = elem_from_json(ctx, v)
            if e:
                rows[i][j] = e
        return cls(ctx, rows)


class DiagForm:
    """Diagonal presentation <a_1, ..., a_r> plus a radical of given dimension."""

    __slots__ = ("ctx", "terms", "radical_dim")

    def __init__(self, ctx: FieldCtx, terms=(), radical_dim: int = 0):
        merged = []
        for value, count in terms:
            value = ctx(value)
            if not value:
                raise ValueError("diagonal entries must be nonzero")
            if count < 0:
                raise ValueError("negative multiplicity")
            if not count:
                continue
            if merged and merged[-1][0] == value:
                merged[-1] = (value, merged[-1][1] + count)
            else:
                merged.append((value, count))
        self.ctx = ctx
        self.terms = tuple(merged)
        self.radical_dim = radical_dim

    @classmethod
    def from_entries(cls, ctx, entries, radical_dim=0):
        return cls(ctx, [(e, 1) for e in entries], radical_dim)

    @property
    def rank(self) -> int:
        return sum(c for _, c in self.terms)

    @property
    def dim(self) -> int:
        return self.rank + self.radical_dim

    @property
    def entries(self) -> list:
        out = []
        for value, count in self.terms:
            out.extend([value] * count)
        return out

    def grouped(self) -> list:
        """(value, total multiplicity) in order of first appearance."""
        acc = {}
        for value, count in self.terms:
            acc[value] = acc.get(value, 0) + count
        return list(acc.items())

    def determinant(self):
        if self.radical_dim:
            return self.ctx.zero
        return self.regular_determinant()

    def regular_determinant(self):
        """Product of the nonzero entries, ignoring the radical."""
        d = self.ctx.one
        for value, count in self.grouped():
            d = d * value ** count
        return d

    def to_quadform(self) -> QuadForm:
        rows = [{i: v} for i, v in enumerate(self.entries)]
        rows += [{} for _ in range(self.radical_dim)]
        return QuadForm(self.ctx, rows, check=False)

    def __eq__(self, other):
        if not isinstance(other, DiagForm):
            return NotImplemented
        return (self.ctx, self.terms, self.radical_dim) == (other.ctx, other.terms, other.radical_dim)

    __hash__ = None

    def __repr__(self):
        return f"DiagForm({pretty_diag(self)}, ctx={self.ctx!r})"

    def to_json(self) -> dict:
        out = {"ctx": self.ctx.to_json(), "radical": self.radical_dim, "rank": self.rank}
        if self.rank <= 10**5:
            out["entries"] = [v.to_json() for v in self.entries]
        out["terms"] = [[v.to_json(), c] for v, c in self.terms]
        return out

    @classmethod
    def from_json(cls, obj):
        ctx = ctx_from_json(obj["ctx"])
        if "terms" in obj:
            terms = [(elem_from_json(ctx, v), c) for v, c in obj["terms"]]
        else:
            terms = [(elem_from_json(ctx, v), 1) for v in obj["entries"]]
        return cls(ctx, terms, obj.get("radical", 0))


def pretty_diag(d: DiagForm) -> str:
    parts = []
    for value, count in d.terms:
        parts.append(f"⟨{value}⟩" if count == 1 else f"{count}×⟨{value}⟩")
    if d.radical_dim:
        parts.append(f"{d.radical_dim}×⟨0⟩")
    return " ⊥ ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# constructors and operations


def diag(ctx: FieldCtx, entries) -> QuadForm:
    rows = []
    for i, e in enumerate(entries):
        v = ctx(e)
        rows.append({i: v} if v else {})
    return QuadForm(ctx, rows, check=False)


def hyperbolic(ctx: FieldCtx, h: int) -> QuadForm:
    """h x H presented as <1, -1, 1, -1, ...>."""
    if h < 0:
        raise ValueError("number of hyperbolic planes must be >= 0")
    return diag(ctx, [1, -1] * h)


def _same_ctx(phi, psi):
    if phi.ctx != psi.ctx:
        raise ContextMismatch(f"{phi.ctx} vs {psi.ctx}")


def orth_sum(phi: QuadForm, psi: QuadForm) -> QuadForm:
    _same_ctx(phi, psi)
    off = phi.dim
    rows = [dict(r) for r in phi.rows]
    rows += [{j + off: v for j, v in r.items()} for r in psi.rows]
    return QuadForm(phi.ctx, rows, check=False)


def scale(c, phi: QuadForm) -> QuadForm:
    c = phi.ctx(c)
    if not c:
        raise ZeroScalar("scaling by zero")
    return QuadForm(phi.ctx, [{j: c * v for j, v in r.items()} for r in phi.rows], check=False)


def tensor(phi: QuadForm, psi: QuadForm) -> QuadForm:
    """Kronecker product of Gram matrices; basis (i, j) -> i * dim(psi) + j."""
    _same_ctx(phi, psi)
    m = psi.dim
    rows = []
    for r1 in phi.rows:
        for r2 in psi.rows:
            rows.append({i * m + j: v * w for i, v in r1.items() for j, w in r2.items()})
    return QuadForm(phi.ctx, rows, check=False)


def diagonalize(phi: QuadForm):
    """Congruence-diagonalize ``phi``.

    Returns ``(D, P)`` where ``D`` is a :class:`DiagForm` and ``P`` is a list of
    sparse rows (dicts) such that ``P G P^T = diag(D.entries, 0, ..., 0)``.
    Pivot rule: the smallest index with a nonzero diagonal entry; otherwise
    the smallest off-diagonal pair (i, j) and the move u_i <- u_i + u_j.
    """
    ctx = phi.ctx
    d = phi.dim
    G = [dict(r) for r in phi.rows]
    P = [{i: ctx.one} for i in range(d)]
    active = [True] * d
    diag_heap = [i for i in range(d) if i in G[i]]
    heapq.heapify(diag_heap)
    all_heap = list(range(d))
    entries = []
    order = []

    def next_diag():
        while diag_heap:
            k = diag_heap[0]
            if active[k] and k in G[k]:
                return k
            heapq.heappop(diag_heap)
        return None

    while True:
        k = next_diag()
        if k is None:
            while all_heap and (not active[all_heap[0]] or not G[all_heap[0]]):
                heapq.heappop(all_heap)
            if not all_heap:
                break
            i = all_heap[0]
            j = min(G[i])
            _add_basis_vector(G, P, i, j)
            heapq.heappush(diag_heap, i)
            k = i
        pivot = G[k][k]
        nbrs = [i for i in G[k] if i != k]
        col = {i: G[i][k] for i in nbrs}
        inv = pivot.inverse()
        for i in nbrs:
            t = col[i] * inv
            row = G[i]
            del row[k]
            for j in nbrs:
                v = row.get(j)
                v = -t * col[j] if v is None else v - t * col[j]
                if v:
                    row[j] = v
                else:
                    row.pop(j, None)
            pk = P[k]
            pi = P[i]
            for c, x in pk.items():
                v = pi.get(c)
                v = -t * x if v is None else v - t * x
                if v:
                    pi[c] = v
                else:
                    pi.pop(c, None)
            if i in row:
                heapq.heappush(diag_heap, i)
        G[k] = {}
        active[k] = False
        entries.append(pivot)
        order.append(k)

    radical = [i for i in range(d) if active[i]]
    P_out = [P[k] for k in order] + [P[i] for i in radical]
    return DiagForm.from_entries(ctx, entries, len(radical)), P_out


def _add_basis_vector(G, P, i, j):
    """u_i <- u_i + u_j applied to the working Gram matrix and basis."""
    gi, gj = G[i], G[j]
    new_ii = gi.get(i)
    for v in (gi.get(j), gi.get(j), gj.get(j)):
        if v is not None:
            new_ii = v if new_ii is None else new_ii + v
    new_row = {l: v for l, v in gi.items() if l != i}
    for l, v in gj.items():
        if l == i:
            continue
        w = new_row.get(l)
        new_row[l] = v if w is None else w + v
    new_row = {l: v for l, v in new_row.items() if v}
    if new_ii is not None and new_ii:
        new_row[i] = new_ii
    touched = (set(gi) | set(gj)) - {i}
    G[i] = new_row
    for l in touched:
        v = new_row.get(l)
        if v is None:
            G[l].pop(i, None)
        else:
            G[l][i] = v
    pi, pj = P[i], P[j]
    for c, x in pj.items():
        w = pi.get(c)
        w = x if w is None else w + x
        if w:
            pi[c] = w
        else:
            pi.pop(c, None)


def sparse_rows_to_matrix(rows, dim, zero):
    return [[r.get(j, zero) for j in range(dim)] for r in rows]


def determinant(phi) -> FieldElem:
    """Exact determinant of the Gram matrix (1 for the zero-dimensional form).

    Diagonalization only uses determinant-one moves and a final row
    permutation, so det G equals the product of the pivots.
    """
    if isinstance(phi, DiagForm):
        return phi.determinant()
    if phi.dim == 0:
        return phi.ctx.one
    return diagonalize(phi)[0].determinant()


def disc(phi) -> FieldElem:
    """Signed discriminant (-1)^(d(d-1)/2) det."""
    d = phi.dim
    det = determinant(phi)
    return -det if (d * (d - 1) // 2) % 2 else det


def hyperbolic_certificate(phi: QuadForm, pairing) -> bool:
    """True iff each pair spans a visibly split hyperbolic plane, orthogonal to everything else."""
    seen = set()
    for pair in pairing:
        if len(pair) != 2:
            raise BadPairing(f"{pair!r} is not a pair")
        for i in pair:
            if not 0 <= i < phi.dim or i in seen:
                raise BadPairing(f"index {i} out of range or repeated")
            seen.add(i)
        if pair[0] == pair[1]:
            raise BadPairing(f"degenerate pair {pair!r}")
    for i, j in pairing:
        if set(phi.rows[i]) != {j} or set(phi.rows[j]) != {i}:
            return False
    return True


# ---------------------------------------------------------------------------
# Witt classification over GF(p)


@dataclass(frozen=True, eq=False)
class WittClass:
    """Isometry invariants of a form over a prime field.

    ``rank`` is the rank of the nondegenerate part; the radical is counted
    separately in ``radical_dim``.
    """

    ctx: FieldCtx
    rank: int
    witt_index: int
    anisotropic: DiagForm
    disc_is_square: bool
    radical_dim: int = 0

    @property
    def is_hyperbolic(self) -> bool:
        return self.radical_dim == 0 and self.anisotropic.rank == 0

    @property
    def anisotropic_det_is_square(self) -> bool:
        return is_square(self.anisotropic.determinant())

    def key(self):
        return (
            self.radical_dim,
            self.rank,
            self.witt_index,
            self.anisotropic.rank,
            self.anisotropic_det_is_square,
            self.disc_is_square,
        )

    def __eq__(self, other):
        if not isinstance(other, WittClass):
            return NotImplemented
        return self.ctx == other.ctx and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def witt_equivalent(self, other: WittClass) -> bool:
        """Equal anisotropic parts, ignoring hyperbolic planes (and radicals)."""
        return (self.anisotropic.rank, self.anisotropic_det_is_square) == (
            other.anisotropic.rank,
            other.anisotropic_det_is_square,
        )

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "witt_index": self.witt_index,
            "anisotropic": [v.to_json() for v in self.anisotropic.entries],
            "disc_square": self.disc_is_square,
            "radical": self.radical_dim,
        }

    def pretty(self) -> str:
        parts = []
        if self.anisotropic.rank:
            parts.append("⟨" + ", ".join(str(v) for v in self.anisotropic.entries) + "⟩")
        parts.append(f"{self.witt_index}×H")
        if self.radical_dim:
            parts.append(f"{self.radical_dim}×⟨0⟩")
        return " ⊥ ".join(parts)


def _signed_power(count):
    return -1 if count % 2 else 1


def _find_isotropic(entries, p):
    """First isotropic vector of a diagonal form of dimension 2 or 3.

    Vectors (1, y, z) are scanned with y ascending, then (0, 1, z).
    """
    roots = square_roots_table(p)
    if len(entries) == 2:
        a0, a1 = entries
        t = -a0 * pow(a1, -1, p) % p
        if t in roots:
            return (1, roots[t])
        return None
    a0, a1, a2 = entries
    inv2 = pow(a2, -1, p)
    for y in range(p):
        t = -(a0 + a1 * y * y) * inv2 % p
        if t in roots:
            return (1, y, roots[t])
    t = -a1 * inv2 % p
    if t in roots:
        return (0, 1, roots[t])
    return None


def _is_anisotropic(entries, p):
    if len(entries) == 0:
        return True
    if len(entries) == 1:
        return entries[0] % p != 0
    if len(entries) == 2:
        a0, a1 = entries
        if a1 % p == 0:
            return False
        return all((a0 + a1 * y * y) % p for y in range(p))
    return False


def _split_enumerate(entries, p):
    """Split hyperbolic planes off a nondegenerate diagonal form by search.

    Takes the first (up to) three entries, finds an isotropic vector v,
    pairs it with a basis vector e_t having B(v, e_t) != 0, and replaces the
    three entries by the one-dimensional orthogonal complement of span(v, e_t).
    """
    work = [e % p for e in entries]
    planes = 0
    while len(work) >= 2:
        block = work[:3]
        v = _find_isotropic(block, p)
        if v is None:
            if len(block) == 3:
                raise PathDisagreement(f"no isotropic vector in ternary form {block} mod {p}")
            break
        planes += 1
        if len(block) == 2:
            work = work[2:]
            continue
        t = next(s for s in range(3) if v[s])
        s1, s2 = [s for s in range(3) if s != t]
        alpha, beta = block[s1] * v[s1] % p, block[s2] * v[s2] % p
        u = [0, 0, 0]
        if alpha or beta:
            u[s1], u[s2] = beta, -alpha % p
        else:
            u[s1] = 1
        c = sum(block[s] * u[s] * u[s] for s in range(3)) % p
        if not c:
            raise PathDisagreement(f"degenerate complement while splitting {block} mod {p}")
        work = [c] + work[3:]
    if not _is_anisotropic(work, p):
        raise PathDisagreement(f"residual form {work} mod {p} is isotropic")
    return planes, work


@lru_cache(maxsize=None)
def _four_copies_split(c, p):
    planes, rest = _split_enumerate([c] * 4, p)
    return planes == 2 and not rest


def _constructive_witt(groups, p):
    planes = 0
    explicit = []
    for value, count in groups:
        c = value.value
        if count >= 4 and _four_copies_split(c, p):
            planes += 2 * (count // 4)
            count %= 4
        explicit.extend([c] * count)
    more, rest = _split_enumerate(explicit, p)
    return planes + more, rest


def witt_decompose(phi) -> WittClass:
    """Witt index and anisotropic part over GF(p), computed two ways.

    (a) constructive: certified reduction of four equal entries to 2 x H, then
    isotropic-vector search and splitting (p <= 10^4 only);
    (b) classification by rank and discriminant.
    The two must agree.
    """
    ctx = phi.ctx
    if ctx.kind != GF:
        raise Unsupported("Witt classification is only available over GF(p)")
    p = ctx.p
    d = phi if isinstance(phi, DiagForm) else diagonalize(phi)[0]
    groups = d.grouped()
    r = d.rank
    det = d.regular_determinant()
    sign = _signed_power(r * (r - 1) // 2)
    disc_sq = is_square(det * sign)

    if r % 2:
        index = r // 2
        aniso_det = det * _signed_power(index)
        aniso = DiagForm.from_entries(ctx, [aniso_det])
    else:
        m = r // 2
        if is_square(det * _signed_power(m)):
            index = m
            aniso = DiagForm(ctx)
        else:
            index = m - 1
            aniso = DiagForm.from_entries(ctx, [ctx.one, det * _signed_power(m - 1)])

    if p <= ENUMERATION_LIMIT:
        planes, rest = _constructive_witt(groups, p)
        c_aniso = DiagForm.from_entries(ctx, rest)
        if planes != index or c_aniso.rank != aniso.rank or (
            aniso.rank and is_square(c_aniso.determinant()) != is_square(aniso.determinant())
        ):
            raise PathDisagreement(
                f"constructive ({planes}, {rest}) vs classification ({index}, {aniso.entries}) over GF({p})"
            )
        aniso = c_aniso
    return WittClass(ctx, r, index, aniso, disc_sq, d.radical_dim)


def is_isometric(phi, psi) -> bool:
    """Isometry over GF(p): equal dims, radicals, ranks and determinant classes."""
    _same_ctx(phi, psi)
    if phi.ctx.kind != GF:
        raise Unsupported("isometry testing is only available over GF(p)")
    if phi.dim != psi.dim:
        return False
    d1 = phi if isinstance(phi, DiagForm) else diagonalize(phi)[0]
    d2 = psi if isinstance(psi, DiagForm) else diagonalize(psi)[0]
    by_invariants = (
        d1.radical_dim == d2.radical_dim
        and d1.rank == d2.rank
        and is_square(d1.regular_determinant() * d2.regular_determinant())
    )
    by_witt = witt_decompose(d1) == witt_decompose(d2)
    if by_invariants != by_witt:
        raise PathDisagreement(f"isometry by invariants {by_invariants}, by Witt decomposition {by_witt}")
    return by_invariants


# ---------------------------------------------------------------------------
# abstract form descriptors


@dataclass(frozen=True)
class Entry:
    """A diagonal coefficient coef * a^a_exp * b^b_exp with an integer coef."""

    coef: int
    a_exp: int = 0
    b_exp: int = 0

    def evaluate(self, ctx, a=None, b=None):
        v = ctx(self.coef)
        if self.a_exp:
            v = v * ctx(a) ** self.a_exp
        if self.b_exp:
            v = v * ctx(b) ** self.b_exp
        return v

    def __str__(self):
        sym = ("a" * self.a_exp) + ("b" * self.b_exp)
        if not sym:
            return str(self.coef)
        if self.coef == 1:
            return sym
        if self.coef == -1:
            return "-" + sym
        return f"{self.coef}{sym}"


@dataclass(frozen=True)
class FormDescriptor:
    """``sum(mult x <entries>) + hyperbolic x H`` with symbolic entries."""

    blocks: tuple = ()
    hyperbolic: int = 0

    @property
    def dim(self) -> int:
        return sum(m * len(es) for m, es in self.blocks) + 2 * self.hyperbolic

    @property
    def explicit_dim(self) -> int:
        return sum(m * len(es) for m, es in self.blocks)

    def evaluate(self, ctx, a=None, b=None) -> DiagForm:
        terms = []
        for mult, entries in self.blocks:
            if not mult:
                continue
            values = [e.evaluate(ctx, a, b) for e in entries]
            if len(values) == 1:
                terms.append((values[0], mult))
            else:
                # mult copies of a multi-entry block, grouped by entry
                terms.extend((v, mult) for v in values)
        if self.hyperbolic:
            terms += [(ctx.one, self.hyperbolic), (ctx(-1), self.hyperbolic)]
        return DiagForm(ctx, terms)

    def pretty(self) -> str:
        parts = []
        for mult, entries in self.blocks:
            if not mult:
                continue
            body = "⟨" + ", ".join(str(e) for e in entries) + "⟩"
            parts.append(body if mult == 1 else f"{mult}×{body}")
        parts.append(f"{self.hyperbolic}×H")
        return " ⊥ ".join(parts)

    def to_json(self) -> dict:
        return {
            "blocks": [
                {"mult": m, "entries": [[e.coef, e.a_exp, e.b_exp] for e in es]} for m, es in self.blocks
            ],
            "hyperbolic": self.hyperbolic,
            "dim": self.dim,
            "pretty": self.pretty(),
        }


def binomial_count(r, s):
    return comb(r, s) if 0 <= s <= r else 0
