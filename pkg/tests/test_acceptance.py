"""Acceptance criteria, one test each, at the stated sizes and tolerances.

Each test also prints its own verdict line; the terminal summary lists all
of them together.
"""

import itertools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from bcpolar import bc, classic
from bcpolar.field import GF, QQ
from bcpolar.matrix import Mat, identity, random_matrix
from bcpolar.subspace import cor43_check, dual_polar_by_projectors, thm41_check
from bcpolar.suite import REJECTION_CAP, _mixed, _rank_deficient, generate_instance, worked_examples, polar_by_search

F7 = GF(7)
F2 = GF(2)
F2_MATS = [Mat(np.array(e).reshape(2, 2), F2) for e in itertools.product(range(2), repeat=4)]

# successful (b,c)-invertible instances from criteria 3 and 4, rechecked in 5
_SUCCESSES = {"exhaustive": [], "random": []}


def verdict(n, ok, detail=""):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


def rng_for(criterion, t, seed=1):
    return np.random.default_rng([seed, 100 + criterion, t])


def test_criterion_01_first_example_golden():
    a, b, c = worked_examples(QQ)["polar"][:3]
    bc.bc_inverse(a, b, c)  # warm caches
    times = []
    for _ in range(5):
        t0 = time.perf_counter()
        res = bc.bc_inverse(a, b, c)
        times.append(time.perf_counter() - t0)
    y, p, q = res.y, res.p, res.q
    relations = [
        y == b @ classic.inner_inverse(b) @ y,  # y in bR
        y == y @ classic.inner_inverse(c) @ c,  # y in Rc
        y @ a @ b == b,
        c @ a @ y == c,
        y @ a @ y == y,
    ]
    ok = (
        p == Mat([[1, 0], [0, 0]])
        and q == Mat([[0, 0], [0, 1]])
        and y == Mat([[0, 1], [0, 0]])
        and all(relations)
        and min(times) < 0.010
    )
    verdict(1, ok, f"y={y.tolist()} best={min(times) * 1e3:.2f}ms")


def test_criterion_02_second_example():
    a, b, c = worked_examples(QQ)["dual-only"][:3]
    dual = bc.dual_bc_polar(a, b, c)
    ok = (a @ b).is_zero() and not bc.bc_invertible(a, b, c) and dual is not None and dual.r == a and dual.s == a
    verdict(2, ok)


def test_criterion_03_exhaustive_equivalence():
    t0 = time.perf_counter()
    bad = 0
    count = 0
    for a, b, c in itertools.product(F2_MATS, repeat=3):
        count += 1
        inv = bc.bc_invertible(a, b, c)
        if inv != polar_by_search(a, b, c, F2_MATS):
            bad += 1
        if inv:
            _SUCCESSES["exhaustive"].append((a, b, c))
    elapsed = time.perf_counter() - t0
    verdict(3, count == 4096 and bad == 0 and elapsed < 120, f"{count} triples, {bad} discrepancies, {elapsed:.1f}s")


def test_criterion_04_inner_inverse_independence():
    instances = failures = 0
    t = 0
    while instances < 200:
        rng = rng_for(4, t)
        t += 1
        n = int(rng.integers(1, 6))
        a, b, c = _mixed(rng, F7, n)[:3]
        base = bc.bc_inverse(a, b, c)
        if base is None:
            continue
        instances += 1
        cab = c @ a @ b
        for X in (classic.alternative_inner_inverse(cab, rng), classic.transposed_inner_inverse(cab)):
            other = bc.bc_inverse(a, b, c, cab_inner=X)
            failures += (other.y, other.p, other.q) != (base.y, base.p, base.q)
        _SUCCESSES["random"].append((a, b, c))
    verdict(4, failures == 0, f"{instances} instances, {failures} failures")


def _formula_ok(a, b, c):
    res = bc.bc_inverse(a, b, c)
    n = a.rows
    I = identity(a.field, n)
    bi, ci = classic.inner_inverse(b), classic.inner_inverse(c)
    X = classic.inner_inverse(c @ a @ b)
    left = b @ bi + I - res.p
    right = ci @ c + I - res.q
    core = b @ X @ c
    return (
        left @ core == res.y
        and core @ right == res.y
        and left @ (I + res.p - b @ bi) == I
        and (I + res.q - ci @ c) @ right == I
    )


def test_criterion_05_one_sided_formulas():
    if not _SUCCESSES["exhaustive"]:
        test_criterion_03_exhaustive_equivalence()
    if not _SUCCESSES["random"]:
        test_criterion_04_inner_inverse_independence()
    pool = _SUCCESSES["exhaustive"] + _SUCCESSES["random"]
    failures = sum(not _formula_ok(*inst) for inst in pool)
    verdict(5, failures == 0 and len(pool) > 200, f"{len(pool)} instances, {failures} failures")


def test_criterion_06_duality():
    failures = 0
    for t in range(1000):
        rng = rng_for(6, t)
        a, b, c = _mixed(rng, F7, int(rng.integers(1, 5)))[:3]
        res = bc.bc_inverse(a, b, c)
        dual = bc.dual_bc_polar(a, c, b)
        if (res is None) != (dual is None) or dual_polar_by_projectors(a, c, b) != (res is not None):
            failures += 1
        elif res is not None and not (dual.r == a @ res.y and dual.s == res.y @ a):
            failures += 1
    verdict(6, failures == 0, f"1000 triples, {failures} failures")


def test_criterion_07_classic_consistency():
    failures = 0
    for t in range(500):
        rng = rng_for(7, t)
        n = int(rng.integers(1, 6))
        a = _rank_deficient(F7, rng, n) if rng.integers(2) else random_matrix(F7, rng, n)
        k = classic.drazin_index(a)
        along = bc.inverse_along(a, a**k)
        oracle = classic.drazin_by_linear_system(a, k)
        failures += along is None or oracle is None or along.y != oracle
    for t in range(100):
        rng = rng_for(7, 1000 + t)
        n = int(rng.integers(2, 6))
        a = _rank_deficient(QQ, rng, n)
        along = bc.inverse_along(a, a.T)
        if along is None:
            failures += 1
            continue
        x = along.y
        ax, xa = a @ x, x @ a
        failures += not (ax @ a == a and xa @ x == x and ax.T == ax and xa.T == xa)
    verdict(7, failures == 0, f"500 + 100 matrices, {failures} failures")


def _hypothesis_instances(criterion, accept, want=50):
    found, draws, t = [], 0, 0
    while len(found) < want:
        if draws >= REJECTION_CAP:
            return found, True
        rng = rng_for(criterion, t)
        t += 1
        draws += 1
        inst = generate_instance("commuting-polynomial", rng, F7, int(rng.integers(1, 5)))
        if accept(*inst[:3]):
            found.append(inst[:3])
    return found, False


def test_criterion_08_closed_forms():
    def accept(a, b, c):
        return bc.bc_invertible(a, b, c) and bc.bc_invertible(a, c, b)

    found, starved = _hypothesis_instances(8, accept)
    failures = 0
    for a, b, c in found:
        out = bc.thm37_formulas(a, b, c)
        res, dual = bc.bc_inverse(a, b, c), bc.dual_bc_polar(a, b, c)
        if out is None:
            failures += 1
            continue
        y_bc, y_cb = out
        forms = bc.group_inverse_forms(a, b, c)
        ok = (
            y_bc == res.y
            and y_cb == dual.y
            and all(v == (y_bc if k.startswith("bc:") else y_cb) for k, v in forms.items())
            and res.p == dual.r
            and res.q == dual.s
        )
        failures += not ok
    verdict(8, not starved and len(found) >= 50 and failures == 0, f"{len(found)} instances, {failures} failures")


def test_criterion_09_powers():
    found, starved = _hypothesis_instances(9, bc.bc_invertible)
    failures = 0
    for a, b, c in found:
        base = bc.bc_inverse(a, b, c)
        for k in (2, 3):
            rk = bc.bc_inverse(a**k, b**k, c**k)
            failures += rk is None or rk.p != base.p or rk.q != base.q
    verdict(9, not starved and len(found) >= 50 and failures == 0, f"{len(found)} instances, {failures} failures")


@pytest.mark.parametrize("seed", [1, 2])
def test_criterion_10_perturbation(seed):
    failures = 0
    for t in range(500):
        rng = rng_for(10, t, seed)
        a, b, c, d = generate_instance("perturbation", rng, F7, int(rng.integers(1, 5)))
        failures += len(set(bc.perturbation_equiv(a, d, b, c))) != 1
    verdict(10, failures == 0, f"seed {seed}: 500 instances, {failures} failures")


def _operator_ok(a, b, c):
    v = thm41_check(a, b, c)
    if not (v.invertible == v.polar == v.projectors_exist):
        return False
    if v.invertible:
        res = bc.bc_inverse(a, b, c)
        if v.P.matrix != res.p or v.Q.matrix != res.q:
            return False
    return len(set(cor43_check(a, b))) == 1


def test_criterion_11_operator_characterisation():
    failures = 0
    for t in range(1000):
        rng = rng_for(11, t)
        a, b, c = _mixed(rng, F7, int(rng.integers(1, 5)))[:3]
        failures += not _operator_ok(a, b, c)
    exhaustive = 0
    for a, b, c in itertools.product(F2_MATS, repeat=3):
        v = thm41_check(a, b, c)
        ok = v.invertible == v.polar == v.projectors_exist
        if ok and v.invertible:
            res = bc.bc_inverse(a, b, c)
            ok = v.P.matrix == res.p and v.Q.matrix == res.q
        exhaustive += not ok
    for a, b in itertools.product(F2_MATS, repeat=2):
        exhaustive += len(set(cor43_check(a, b))) != 1
    verdict(11, failures == 0 and exhaustive == 0, f"random {failures}, exhaustive {exhaustive} failures")


def test_criterion_12_determinism():
    cmd = [sys.executable, "-m", "bcpolar.cli", "suite", "--seed", "1", "--field", "Fp:7", "--max-dim", "3", "--trials", "10"]
    runs = [subprocess.run(cmd + ["--no-timing"], capture_output=True) for _ in range(2)]
    timed = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    bodies = [json.dumps(json.loads(r.stdout)["report"]) for r in timed]
    ok = (
        all(r.returncode == 0 for r in runs + timed)
        and runs[0].stdout == runs[1].stdout
        and len(runs[0].stdout) > 0
        and bodies[0] == bodies[1]
    )
    verdict(12, ok, f"{len(runs[0].stdout)} bytes")
