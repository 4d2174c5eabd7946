import itertools
import random

import pytest
import sympy

from symtrace.errors import BadPairing, ContextMismatch, Unsupported, ZeroScalar
from symtrace.fields import cyclo_create, gf_create, is_square
from symtrace.quadform import (
    DiagForm,
    QuadForm,
    determinant,
    diag,
    diagonalize,
    disc,
    hyperbolic,
    hyperbolic_certificate,
    is_isometric,
    orth_sum,
    scale,
    sparse_rows_to_matrix,
    tensor,
    witt_decompose,
)


def ints(phi):
    return [[int(v) for v in row] for row in phi.to_matrix()]


def sympy_det_mod(phi):
    p = phi.ctx.p
    if phi.dim == 0:
        return 1
    return int(sympy.Matrix(ints(phi)).det()) % p


def random_symmetric(ctx, m, rng, density=1.0):
    mat = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            if rng.random() < density:
                mat[i][j] = mat[j][i] = ctx.random_element(rng)
    return QuadForm.from_matrix(ctx, mat)


def brute_witt_index(entries, p):
    """Largest totally isotropic subspace of a diagonal form (dim <= 4) by enumeration."""
    m = len(entries)

    def B(u, v):
        return sum(a * x * y for a, x, y in zip(entries, u, v)) % p

    iso = [v for v in itertools.product(range(p), repeat=m) if any(v) and B(v, v) == 0]
    if not iso:
        return 0
    if m < 4:
        return 1
    best = 1
    for u, v in itertools.combinations(iso, 2):
        if B(u, v) == 0 and any((u[i] * v[j] - u[j] * v[i]) % p for i in range(m) for j in range(m)):
            best = 2
            break
    return best


# --- constructors


def test_diag_and_hyperbolic():
    ctx = gf_create(7)
    assert ints(diag(ctx, [1, -1])) == [[1, 0], [0, 6]]
    assert hyperbolic(ctx, 0).dim == 0
    c = cyclo_create(3)
    assert hyperbolic(c, 2).to_matrix() == diag(c, [1, -1, 1, -1]).to_matrix()


def test_symmetry_enforced():
    ctx = gf_create(7)
    with pytest.raises(ValueError):
        QuadForm.from_matrix(ctx, [[1, 2], [3, 1]])


def test_scale_tensor_sum():
    ctx = gf_create(7)
    assert scale(ctx(2), diag(ctx, [1, 3])) == diag(ctx, [2, 6])
    assert tensor(diag(ctx, [3]), diag(ctx, [5])) == diag(ctx, [15])
    assert orth_sum(diag(ctx, [1]), diag(ctx, [-1])) == diag(ctx, [1, -1])
    with pytest.raises(ZeroScalar):
        scale(ctx(0), diag(ctx, [1]))
    with pytest.raises(ContextMismatch):
        orth_sum(diag(ctx, [1]), diag(gf_create(13), [1]))


def test_tensor_kronecker_layout():
    ctx = gf_create(13)
    phi = QuadForm.from_matrix(ctx, [[1, 2], [2, 3]])
    psi = QuadForm.from_matrix(ctx, [[0, 1], [1, 5]])
    t = tensor(phi, psi)
    for i, j, k, l in itertools.product(range(2), repeat=4):
        assert t.entry(i * 2 + k, j * 2 + l) == phi.entry(i, j) * psi.entry(k, l)


# --- diagonalization


def test_diagonalize_off_diagonal_pivot():
    ctx = gf_create(13)
    c = ctx(5)
    d, P = diagonalize(QuadForm.from_matrix(ctx, [[0, c], [c, 0]]))
    assert d.entries[0] == 2 * c
    assert d.rank == 2
    assert is_square(d.determinant() / (-(c * c)))


def test_diagonalize_diagonal_input():
    ctx = gf_create(7)
    d, P = diagonalize(diag(ctx, [3, 5, 6]))
    assert [int(v) for v in d.entries] == [3, 5, 6]
    assert [[int(v) for v in row] for row in sparse_rows_to_matrix(P, 3, ctx.zero)] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_diagonalize_zero_matrix():
    ctx = gf_create(7)
    d, _ = diagonalize(QuadForm.from_matrix(ctx, [[0] * 3] * 3))
    assert d.radical_dim == 3 and d.rank == 0


@pytest.mark.parametrize("backend", ["gf", "cyclo"])
@pytest.mark.parametrize("seed", range(12))
def test_diagonalize_congruence(backend, seed):
    rng = random.Random(seed)
    ctx = gf_create(13) if backend == "gf" else cyclo_create(5)
    m = rng.randint(1, 8)
    phi = random_symmetric(ctx, m, rng, density=rng.choice([0.3, 0.7, 1.0]))
    d, P = diagonalize(phi)
    Pm = sparse_rows_to_matrix(P, m, ctx.zero)
    G = phi.to_matrix()
    D = [[sum((Pm[i][s] * G[s][t] * Pm[j][t] for s in range(m) for t in range(m)), ctx.zero) for j in range(m)] for i in range(m)]
    expect = d.entries + [ctx.zero] * d.radical_dim
    for i in range(m):
        for j in range(m):
            assert D[i][j] == (expect[i] if i == j else 0)
    if backend == "gf":
        assert int(sympy.Matrix([[int(v) for v in row] for row in Pm]).det()) % 13 != 0


# --- determinant


def test_determinant_examples():
    ctx = gf_create(13)
    assert determinant(hyperbolic(ctx, 1)) == -1
    assert disc(hyperbolic(ctx, 1)) == 1
    assert determinant(hyperbolic(ctx, 0)) == 1
    a, b = ctx(2), ctx(5)
    d = determinant(diag(ctx, [1, a, b, -a * b]))
    assert d == -(a * a * b * b)


@pytest.mark.parametrize("seed", range(20))
def test_determinant_matches_sympy(seed):
    rng = random.Random(seed)
    ctx = gf_create(rng.choice([5, 7, 13, 101]))
    phi = random_symmetric(ctx, rng.randint(1, 7), rng, density=0.6)
    assert int(determinant(phi)) == sympy_det_mod(phi)


@pytest.mark.parametrize("seed", range(10))
def test_determinant_multiplicative(seed):
    rng = random.Random(seed)
    ctx = gf_create(11)
    phi = random_symmetric(ctx, rng.randint(1, 4), rng)
    psi = random_symmetric(ctx, rng.randint(1, 4), rng)
    assert determinant(orth_sum(phi, psi)) == determinant(phi) * determinant(psi)
    c = ctx(rng.randrange(1, 11))
    assert determinant(scale(c, phi)) == c**phi.dim * determinant(phi)


# --- Witt classification


def test_witt_examples():
    w = witt_decompose(diag(gf_create(7), [1, 1]))
    assert w.witt_index == 0 and w.anisotropic.rank == 2
    w = witt_decompose(diag(gf_create(13), [1, 1]))
    assert w.witt_index == 1 and w.anisotropic.rank == 0
    for p in (3, 5, 7, 13, 10007):
        assert witt_decompose(hyperbolic(gf_create(p), 2)).witt_index == 2


def test_witt_unsupported_over_cyclo():
    with pytest.raises(Unsupported):
        witt_decompose(diag(cyclo_create(3), [1]))


@pytest.mark.parametrize("p", [5, 7, 13])
def test_witt_paths_exhaustive(p):
    # both internal paths run on every call; PathDisagreement would surface here
    ctx = gf_create(p)
    ns = next(u for u in range(2, p) if not is_square(ctx(u)))
    for m in range(1, 7):
        for mask in range(2**m):
            entries = [ns if mask >> i & 1 else 1 for i in range(m)]
            w = witt_decompose(diag(ctx, entries))
            assert w.rank == 2 * w.witt_index + w.anisotropic.rank
            assert w.anisotropic.rank <= 2


@pytest.mark.parametrize("p, max_dim", [(3, 4), (5, 4), (7, 3), (13, 3)])
def test_witt_index_against_enumeration(p, max_dim):
    ctx = gf_create(p)
    for m in range(1, max_dim + 1):
        for entries in itertools.product(range(1, p), repeat=m):
            if m == 4 and entries[0] != 1:
                continue  # scaling by entries[0] keeps the index; trims the search
            w = witt_decompose(diag(ctx, list(entries)))
            assert w.witt_index == brute_witt_index(list(entries), p), entries


def test_isometry_examples():
    assert is_isometric(diag(gf_create(13), [3, 1]), diag(gf_create(13), [1, 1]))
    assert not is_isometric(diag(gf_create(7), [3, 1]), diag(gf_create(7), [1, 1]))
    phi = diag(gf_create(7), [2, 3, 5])
    assert is_isometric(phi, phi)
    with pytest.raises(Unsupported):
        is_isometric(diag(cyclo_create(3), [1]), diag(cyclo_create(3), [1]))


@pytest.mark.parametrize("seed", range(25))
def test_isometry_invariances(seed):
    rng = random.Random(seed)
    p = rng.choice([5, 7, 13])
    ctx = gf_create(p)
    m = rng.randint(1, 5)
    phi = random_symmetric(ctx, m, rng)
    d, _ = diagonalize(phi)
    assert is_isometric(phi, d)
    # change of basis by a random invertible matrix
    while True:
        P = [[rng.randrange(p) for _ in range(m)] for _ in range(m)]
        if int(sympy.Matrix(P).det()) % p:
            break
    G = ints(phi)
    PG = [[sum(P[i][s] * G[s][t] * P[j][t] for s in range(m) for t in range(m)) % p for j in range(m)] for i in range(m)]
    assert is_isometric(phi, QuadForm.from_matrix(ctx, PG))
    # Witt cancellation, also on degenerate inputs
    psi = random_symmetric(ctx, m, rng)
    H = hyperbolic(ctx, 1)
    if not diagonalize(phi)[0].radical_dim and not diagonalize(psi)[0].radical_dim:
        assert is_isometric(orth_sum(phi, H), orth_sum(psi, H)) == is_isometric(phi, psi)


def test_isometry_is_equivalence():
    ctx = gf_create(7)
    forms = [diag(ctx, list(e)) for e in itertools.product([1, 3], repeat=3)]
    for f, g, h in itertools.product(forms, repeat=3):
        assert is_isometric(f, g) == is_isometric(g, f)
        if is_isometric(f, g) and is_isometric(g, h):
            assert is_isometric(f, h)


# --- hyperbolic certificate


def test_certificate():
    ctx = gf_create(13)
    assert hyperbolic_certificate(QuadForm.from_matrix(ctx, [[0, 4], [4, 0]]), [(0, 1)])
    assert not hyperbolic_certificate(diag(ctx, [1, 1]), [(0, 1)])
    with pytest.raises(BadPairing):
        hyperbolic_certificate(diag(ctx, [1, 1, 1]), [(0, 1), (1, 2)])
    with pytest.raises(BadPairing):
        hyperbolic_certificate(diag(ctx, [1, 1]), [(0, 5)])


# --- serialization


def test_json_roundtrip():
    ctx = gf_create(13, 3)
    phi = random_symmetric(ctx, 4, random.Random(1))
    assert QuadForm.from_json(phi.to_json()) == phi
    d, _ = diagonalize(phi)
    assert DiagForm.from_json(d.to_json()) == d
    c = cyclo_create(3)
    psi = diag(c, [1, c.gen])
    assert QuadForm.from_json(psi.to_json()) == psi
    big = hyperbolic(ctx, 250)
    assert "sparse" in big.to_json() and QuadForm.from_json(big.to_json()) == big
