"""Acceptance criteria, one test each.

Every test prints a ``criterion N PASS|FAIL`` line (also repeated in the
terminal summary) and asserts the criterion at its stated tolerance and time
limit.  All comparisons are exact.
"""

import io
import json
import random
from pathlib import Path

from symtrace.cli import run
from symtrace.errors import PathDisagreement
from symtrace.exterior import exterior_power_bruteforce
from symtrace.fields import cyclo_create, elem_from_json, gf_create
from symtrace.paperlab import primes_for, verify
from symtrace.quadform import QuadForm, diagonalize, hyperbolic_certificate, is_isometric, orth_sum, witt_decompose
from symtrace.symalg import SymbolAlgebra

GOLDEN = Path(__file__).parent / "golden" / "n3_gram.json"


def _summarize(rec, report, show=5):
    rec.note(f"{report.prop_id}: {report.passed} passed, {report.failed} failed")
    for inst in report.failures()[:show]:
        w = inst.witness or {}
        computed = w.get("computed", {}).get("pretty")
        predicted = w.get("predicted", {}).get("pretty")
        extra = f" computed {computed}, predicted {predicted}" if computed else ""
        rec.note(f"  counterexample {json.dumps(inst.params)}{extra}")
    if report.failed > show:
        rec.note(f"  ... {report.failed - show} more")
    return report.ok


def _golden_value(entry, ctx, a, b, w):
    if entry == "0":
        return ctx.zero
    coef, rest = ctx(int(entry[0])), entry[1:]
    if rest.startswith("w^2"):
        coef, rest = coef * w * w, rest[3:]
    elif rest.startswith("w"):
        coef, rest = coef * w, rest[1:]
    if "a" in rest:
        coef = coef * a
    if "b" in rest:
        coef = coef * b
    return coef


def test_criterion_01_golden_matrix(criterion):
    rec = criterion(1, "golden 9x9 Gram matrix over Q(zeta_3), paired basis order", limit=1)
    golden = json.loads(GOLDEN.read_text())
    ok = True
    for a, b in [("1", "1"), ("1/2", "7"), ("-3", "2/5")]:
        out = io.StringIO()
        code = run(["gram", "--field", "cyclo", "--n", "3", "--a", a, "--b", b, "--order", "paired"], out, io.StringIO())
        obj = json.loads(out.getvalue())
        ctx = cyclo_create(3)
        S = SymbolAlgebra(ctx, 3, ctx(elem_from_json(ctx, obj["algebra"]["a"])), elem_from_json(ctx, obj["algebra"]["b"]))
        gram = [[elem_from_json(ctx, v) for v in row] for row in obj["gram"]]
        match = obj["basis"] == golden["basis"] and all(
            gram[r][c] == _golden_value(golden["gram"][r][c], ctx, S.a, S.b, S.omega) for r in range(9) for c in range(9)
        )
        pairs = [tuple(p) for p in golden["hyperbolic_pairs"]]
        cert = hyperbolic_certificate(QuadForm.from_matrix(ctx, gram), pairs)
        rec.note(f"a={a}, b={b}: entries match {match}, certificate {cert}")
        ok = ok and code == 0 and match and cert
    assert rec.finish(ok)


def test_criterion_02_trace_form_sweep(criterion):
    rec = criterion(2, "trace form sweep n=2..6, 3 primes, 4 square-class + 20 random pairs, split consistency", limit=30)
    report = verify("P1", {"ns": [2, 3, 4, 5, 6], "trials": 20}, seed=0)
    gf = [i for i in report.instances if "p" in i.params]
    primes = {n: sorted({i.params["p"] for i in gf if i.params["n"] == n}) for n in range(2, 7)}
    coverage = all(len(ps) == 3 and ps == primes_for(n, 3) for n, ps in primes.items()) and len(gf) == 5 * 3 * 24
    rec.note(f"primes per degree {primes}; {len(gf)} finite-field instances")
    assert rec.finish(_summarize(rec, report) and coverage)


def test_criterion_03_gauss_sums(criterion):
    rec = criterion(3, "Gauss-sum products squared exactly, odd n <= 21 and primes <= 23, both backends", limit=10)
    report = verify("P2", {"n_max": 21, "prime_max": 23})
    ns = {i.params["n"] for i in report.instances if "n" in i.params}
    qs = {i.params["q"] for i in report.instances if "q" in i.params}
    coverage = ns == set(range(3, 22, 2)) and qs == {3, 5, 7, 11, 13, 17, 19, 23}
    assert rec.finish(_summarize(rec, report) and coverage)


def test_criterion_04_odd_degree_simplifications(criterion):
    rec = criterion(4, "odd n <= 15, 3 primes each: n<1> and the n^2-fold simplification at the Witt level")
    ok = True
    for prop in ("P3", "Corollary", "SplitRemark"):
        report = verify(prop, {"n_max": 15})
        ok = _summarize(rec, report) and ok
        counts = {}
        for i in report.instances:
            counts.setdefault(i.params["n"], set()).add(i.params["p"])
        ok = ok and set(counts) == set(range(3, 16, 2)) and all(len(v) == 3 for v in counts.values())
    assert rec.finish(ok)


def test_criterion_05_quaternion_subalgebra(criterion):
    rec = criterion(5, "quaternion generators for n in {2,6,10}; n=4 anticommutation fails with sign +1")
    report = verify("P4", {"ns": [2, 4, 6, 10]})
    seen = {(i.params["n"], i.params["field"]) for i in report.instances}
    coverage = seen == {(n, f) for n in (2, 4, 6, 10) for f in ("gf", "cyclo")}
    assert rec.finish(_summarize(rec, report) and coverage)


def test_criterion_06_division_verdicts(criterion):
    rec = criterion(6, "division verdict tables; the 'Division' verdict never fires on finite-field sweeps")
    ok = True
    for prop in ("P5", "P6"):
        ok = _summarize(rec, verify(prop, seed=0)) and ok
    assert rec.finish(ok)


def test_criterion_07_exterior_oracle(criterion):
    rec = criterion(7, "brute-force minors vs diagonal products, all square-class patterns dim <= 6, all k", limit=60)
    report = verify("P41", {"primes": [5, 7, 13], "max_dim": 6})
    expected = 3 * sum(2**m * (m + 1) for m in range(1, 7))
    rec.note(f"{len(report.instances)} instances (expected {expected})")
    assert rec.finish(_summarize(rec, report) and len(report.instances) == expected)


def test_criterion_08_sum_expansion_and_hyperbolic_powers(criterion):
    rec = criterion(8, "sum expansion dims <= 4; hyperbolic closed forms h <= 4 over GF(13) and GF(7)")
    ok = _summarize(rec, verify("P73", {"max_dim": 4, "primes": [7, 13]}, seed=0))
    p8 = verify("P8", {"primes": [13, 7], "h_max": 4})
    p9 = verify("P9", {"primes": [13, 7], "h_max": 4})
    ok = _summarize(rec, p8) and _summarize(rec, p9) and ok
    fourteen = [i for i in p9.instances if i.params.get("check") == "fourteen_planes"]
    rec.note(f"Lambda^2(4H) = 14H instances: {[(i.params['p'], i.ok) for i in fourteen]}")
    assert rec.finish(ok and len(fourteen) == 1 and fourteen[0].ok)


def test_criterion_09_exterior_trace_forms(criterion):
    rec = criterion(9, "exterior powers of trace forms vs case-matched predictions (n=2,3,4 all k; 6,8,12 selected k)", limit=120)
    ok = True
    # n = 3 is checked at p = 7 (where -1 is a nonsquare) and p = 13
    p10 = verify("P10", {"ns": [3]})
    ok = _summarize(rec, p10, show=8) and ok
    p11 = verify("P11", {"ns": [2, 4, 6, 8, 12]})
    ok = _summarize(rec, p11) and ok
    ok = _summarize(rec, verify("S53Example")) and ok
    remarks = verify("S53Remarks", {"ns": [2, 4, 6, 8, 12]})
    ok = _summarize(rec, remarks) and ok
    top = [i for i in remarks.instances if i.params["claim"] == "anisotropic"]
    sixteen = [i for i in remarks.instances if i.params["claim"] == "one_plus_hyp"]
    rec.note(f"top power anisotropic for n={[i.params['n'] for i in top if i.ok]}; n=12 k=16: {[i.ok for i in sixteen]}")
    if p10.failed:
        rec.note("odd-k failures at n=3, p=7 are the sign <(-1)^((n-1)/2)> that the uncorrected odd-k formula omits;")
        rec.note("the sign-corrected prediction passes every instance (see test_paperlab)")
    assert rec.finish(ok and len(top) == 5 and len(sixteen) == 1)


def test_criterion_10_binomial_identities(criterion):
    rec = criterion(10, "five binomial identities for 0 <= s <= r <= 100, exact", limit=5)
    report = verify("Binomials", {"r_max": 100})
    names = [i.params["identity"] for i in report.instances if "identity" in i.params]
    assert rec.finish(_summarize(rec, report) and len(names) == 5)


def test_criterion_11_property_suites(criterion):
    rec = criterion(11, "seeded randomized properties: associativity, inverses, Witt path agreement, cancellation, basis change")
    rng = random.Random(20261017)
    ok = True

    # associativity and inverses, 1000 cases per backend
    for label, make in [
        ("gf", lambda i: SymbolAlgebra(gf_create(primes_for(2 + i % 5, 1)[0] if i % 5 else 13, 2 + i % 5), 2 + i % 5, 2, 3)),
        ("cyclo", lambda i: SymbolAlgebra(cyclo_create(2 + i % 2), 2 + i % 2, 2, -3)),
    ]:
        algebras = {}
        bad = 0
        for i in range(1000):
            key = i % 5 if label == "gf" else i % 2
            S = algebras.setdefault(key, make(i))
            u, v, w = (S.random_element(rng) for _ in range(3))
            if (u * v) * w != u * (v * w):
                bad += 1
            c = S.ctx.random_element(rng, nonzero=True)
            if c * c.inverse() != S.ctx.one:
                bad += 1
        rec.note(f"{label}: 1000 associativity + 1000 inverse cases, {bad} failures")
        ok = ok and not bad

    # Witt decomposition: both internal paths run on every call
    disagreements = 0
    for i in range(1000):
        p = rng.choice([3, 5, 7, 13, 10007])
        ctx = gf_create(p)
        m = rng.randint(1, 12)
        entries = [rng.randrange(1, p) for _ in range(m)]
        try:
            witt_decompose(diagonalize(QuadForm.from_matrix(ctx, [[entries[r] if r == c else 0 for c in range(m)] for r in range(m)]))[0])
        except PathDisagreement:
            disagreements += 1
    rec.note(f"witt_decompose path agreement: 1000 forms, {disagreements} disagreements")
    ok = ok and not disagreements

    # Witt cancellation and basis-change invariance of exterior powers
    cancel_bad = basis_bad = 0
    for i in range(200):
        p = rng.choice([5, 7, 13])
        ctx = gf_create(p)
        phi, psi, chi = (_random_nondegenerate(ctx, rng.randint(1, 3), rng) for _ in range(3))
        if is_isometric(orth_sum(phi, chi), orth_sum(psi, chi)) != is_isometric(phi, psi):
            cancel_bad += 1
        m = rng.randint(2, 5)
        phi = _random_nondegenerate(ctx, m, rng)
        P = _random_invertible(p, m, rng)
        G = [[int(v) for v in row] for row in phi.to_matrix()]
        psi = QuadForm.from_matrix(
            ctx, [[sum(P[r][s] * G[s][t] * P[c][t] for s in range(m) for t in range(m)) % p for c in range(m)] for r in range(m)]
        )
        k = rng.randint(1, m)
        if witt_decompose(exterior_power_bruteforce(phi, k)) != witt_decompose(exterior_power_bruteforce(psi, k)):
            basis_bad += 1
    rec.note(f"Witt cancellation: 200 cases, {cancel_bad} failures; exterior basis change: 200 cases, {basis_bad} failures")
    ok = ok and not cancel_bad and not basis_bad
    assert rec.finish(ok)


def _random_nondegenerate(ctx, m, rng):
    while True:
        mat = [[0] * m for _ in range(m)]
        for r in range(m):
            for c in range(r, m):
                mat[r][c] = mat[c][r] = rng.randrange(ctx.p)
        phi = QuadForm.from_matrix(ctx, mat)
        if not diagonalize(phi)[0].radical_dim:
            return phi


def _random_invertible(p, m, rng):
    L = [[1 if r == c else (rng.randrange(p) if c < r else 0) for c in range(m)] for r in range(m)]
    U = [[rng.randrange(1, p) if r == c else (rng.randrange(p) if c > r else 0) for c in range(m)] for r in range(m)]
    return [[sum(L[r][t] * U[t][c] for t in range(m)) % p for c in range(m)] for r in range(m)]
