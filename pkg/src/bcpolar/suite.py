"""Seeded randomized and exhaustive checking of the equivalence theorems.

Every property is a function of one instance that returns ``True`` when all
of its claims hold.  A property that returns ``False`` or raises counts as a
failure, and the first failing instance is kept in serialized form so it can
be replayed.

Randomness comes from numpy's PCG64 generator.  Trial ``t`` of the property
at position ``i`` in :data:`PROPERTY_IDS` uses
``numpy.random.default_rng([seed, i, t])``, so every trial is reproducible
on its own and reports do not depend on evaluation order.
"""

import itertools
import time
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Optional

import numpy as np

from . import bc, classic
from .field import GF, parse_field
from .linmem import in_set
from .matrix import Mat, identity, kernel_basis, random_matrix, rank, two_sided_inverse, vec, zeros, hstack
from .subspace import (
    cor43_check,
    dual_polar_by_projectors,
    polar_by_projectors,
    thm41_check,
)

__all__ = [
    "PROPERTY_IDS",
    "FAMILIES",
    "REJECTION_CAP",
    "Instance",
    "PropertyRecord",
    "Report",
    "Starved",
    "generate_instance",
    "worked_examples",
    "polar_by_search",
    "run_property",
    "run_suite",
]

PROPERTY_IDS = (
    "THM25-EQUIV",
    "THM22-UNIQUE",
    "LEM24-REGULAR",
    "PROP23-REDUCE",
    "COR36-DUAL",
    "THM33-DUAL",
    "THM37-FORMS",
    "REMARK-GROUPFORMS",
    "PROP39-INVOLUTION",
    "PROP310-POWERS",
    "THM311-PERTURB",
    "THM41-OPERATOR",
    "COR43-ALONG",
    "CLASSIC-CONSISTENCY",
)

FAMILIES = ("uniform", "rank-deficient", "commuting-polynomial", "perturbation", "paper-examples")

REJECTION_CAP = 10_000


class Starved(Exception):
    """A constrained family found no valid instance within the draw cap."""


class Instance(NamedTuple):
    a: Mat
    b: Mat
    c: Mat
    d: Optional[Mat] = None

    def to_json(self):
        out = {"a": self.a.to_json(), "b": self.b.to_json(), "c": self.c.to_json()}
        if self.d is not None:
            out["d"] = self.d.to_json()
        return out


def worked_examples(field):
    """The two worked examples, as ``{"polar": Instance, "dual-only": Instance}``."""
    field = parse_field(field)
    return {
        "polar": Instance(
            Mat([[0, 0], [1, 0]], field),
            Mat([[1, -1], [0, 0]], field),
            Mat([[0, 1], [0, 1]], field),
        ),
        "dual-only": Instance(
            Mat([[1, 0], [0, 0]], field),
            Mat([[0, 0], [1, 0]], field),
            Mat([[0, 1], [0, 0]], field),
        ),
    }


def _invertible(field, rng, n):
    while True:
        S = random_matrix(field, rng, n)
        if rank(S) == n:
            return S


def _rank_deficient(field, rng, n):
    if n == 1 or rng.integers(2) == 0:
        r = int(rng.integers(0, n))
        if r == 0:
            return zeros(field, n)
        return random_matrix(field, rng, n, r) @ random_matrix(field, rng, r, n)
    # conjugated upper-triangular with a zero on the diagonal: gives larger indices
    T = random_matrix(field, rng, n).array.copy()
    T[np.tril_indices(n, -1)] = 0
    for i in range(n):
        if rng.integers(2) == 0:
            T[i, i] = 0
    T[int(rng.integers(n)), :] = 0
    T = Mat(T.tolist(), field)
    S = _invertible(field, rng, n)
    return S @ T @ two_sided_inverse(S)


def _poly(a, coeffs):
    n = a.rows
    out = zeros(a.field, n)
    power = identity(a.field, n)
    for cf in coeffs:
        out = out + power.scale(cf)
        power = power @ a
    return out


def _annihilating_poly(a, rng):
    """Random ``h(a)`` with ``h(a) a = 0`` (zero when none exists)."""
    n = a.rows
    field = a.field
    powers = [a**(i + 1) for i in range(n)]
    K = kernel_basis(hstack(field, [vec(P) for P in powers]))
    if not K.cols:
        return zeros(field, n)
    combo = K @ random_matrix(field, rng, K.cols, 1)
    # h(x) = sum_i combo[i] x^i, so h(a) a = sum_i combo[i] a^(i+1) = 0
    return _poly(a, list(combo.array[:, 0]))


def generate_instance(kind, rng, field=None, n=2, index=0):
    """One instance of a family.

    ``uniform`` and ``rank-deficient`` return ``(a, b, c)``;
    ``commuting-polynomial`` returns polynomials ``b = f(a)``, ``c = b + h(a)``
    with ``h(a) a = 0``, so ``ab = ba`` and ``ba = ca``;
    ``perturbation`` returns ``(a, b, c, d)`` with ``a`` (b,c)-invertible;
    ``paper-examples`` returns the worked example selected by ``index``.
    """
    field = GF(7) if field is None else parse_field(field)
    if kind == "uniform":
        return Instance(*(random_matrix(field, rng, n) for _ in range(3)))
    if kind == "rank-deficient":
        return Instance(*(_rank_deficient(field, rng, n) for _ in range(3)))
    if kind == "commuting-polynomial":
        a = _rank_deficient(field, rng, n) if rng.integers(4) else random_matrix(field, rng, n)
        b = _poly(a, random_matrix(field, rng, n, 1).array[:, 0])
        c = b + _annihilating_poly(a, rng)
        return Instance(a, b, c)
    if kind == "perturbation":
        for _ in range(REJECTION_CAP):
            mixed = rng.integers(3)
            gen = _rank_deficient if mixed else (lambda f, r, m: random_matrix(f, r, m))
            a, b, c = (gen(field, rng, n) for _ in range(3))
            res = bc.bc_inverse(a, b, c)
            if res is not None:
                break
        else:
            raise Starved("perturbation")
        I = identity(field, n)
        W = random_matrix(field, rng, n)
        mode = int(rng.integers(4))
        if mode == 0:
            E = (I - res.q) @ W @ (I - res.p)
        elif mode == 1:
            E = res.q @ W @ res.p
        elif mode == 2:
            E = res.q @ W @ (I - res.p)
        else:
            E = W
        return Instance(a, b, c, a + E)
    if kind == "paper-examples":
        exs = list(worked_examples(field).values())
        return exs[index % len(exs)]
    raise ValueError(f"unknown instance family {kind!r}; expected one of {FAMILIES}")


def _mixed(rng, field, n):
    kind = "uniform" if rng.integers(4) == 0 else "rank-deficient"
    return generate_instance(kind, rng, field, n)


def _draw(rng, field, n, make, accept):
    for _ in range(REJECTION_CAP):
        inst = make(rng, field, n)
        if accept(inst):
            return inst
    raise Starved()


def _bc_ok(inst):
    return bc.bc_invertible(inst.a, inst.b, inst.c)


def _all_matrices(field, n):
    p = field.p
    for entries in itertools.product(range(p), repeat=n * n):
        yield Mat(np.array(entries, dtype=np.int64).reshape(n, n), field)


def polar_by_search(a, b, c, candidates=None):
    """Brute-force search for (b,c)-spectral idempotents over a tiny field.

    The conditions on ``p`` and on ``q`` are independent, so each is searched
    separately over every matrix of the ring.
    """
    if candidates is None:
        candidates = list(_all_matrices(a.field, a.rows))
    ca, ab = c @ a, a @ b
    found_p = any(
        P @ P == P and P @ b == b and ca @ P == ca and in_set(P, b, ca) for P in candidates
    )
    if not found_p:
        return False
    return any(
        Q @ Q == Q and c @ Q == c and Q @ ab == ab and in_set(Q, ab, c) for Q in candidates
    )


# --- properties -----------------------------------------------------------


def _prop_thm25(inst, rng, search=None):
    a, b, c = inst.a, inst.b, inst.c
    invertible = bc.bc_invertible(a, b, c)
    polar = polar_by_projectors(a, b, c)
    if search is not None and polar != polar_by_search(a, b, c, search):
        return False
    if invertible != polar:
        return False
    if invertible:
        res = bc.bc_inverse(a, b, c)
        if not bc.verify_bc_polar(a, b, c, res.p, res.q):
            return False
        y_left, y_right = bc.paper_formula_inverse(a, b, c)
        return y_left == y_right == res.y
    return True


def _prop_thm22(inst, rng):
    a, b, c = inst.a, inst.b, inst.c
    base = bc.bc_inverse(a, b, c)
    cab = c @ a @ b
    alts = [classic.alternative_inner_inverse(cab, rng), classic.transposed_inner_inverse(cab)]
    for X in alts:
        other = bc.bc_inverse(a, b, c, cab_inner=X)
        if (other.y, other.p, other.q) != (base.y, base.p, base.q):
            return False
        # one-sided formulas with the alternative inner inverses throughout
        bc.paper_formula_inverse(
            a,
            b,
            c,
            b_inner=classic.alternative_inner_inverse(b, rng),
            c_inner=classic.alternative_inner_inverse(c, rng),
            cab_inner=X,
        )
    return True


def _prop_lem24(inst, rng):
    a, b, c = inst.a, inst.b, inst.c
    cab = c @ a @ b
    return all(classic.is_regular_with(x, classic.inner_inverse(x)) for x in (b, c, cab))


def _prop_prop23(inst, rng):
    a, b = inst.a, inst.b
    polar = polar_by_projectors(a, b, b)
    along = bc.inverse_along(a, b)
    if polar != (along is not None):
        return False
    if along is not None:
        res = bc.bc_inverse(a, b, b)
        return along.p == res.p and along.q == res.q
    return True


def _prop_cor36(inst, rng):
    a, b, c = inst.a, inst.b, inst.c
    res = bc.bc_inverse(a, b, c)
    dual = bc.dual_bc_polar(a, c, b)
    if (res is None) != (dual is None):
        return False
    if res is None:
        return True
    return dual.y == res.y and dual.r == res.q and dual.s == res.p


def _prop_thm33(inst, rng):
    a, b, c = inst.a, inst.b, inst.c
    dual = bc.dual_bc_polar(a, b, c)
    invertible_cb = bc.bc_invertible(a, c, b)
    if (dual is not None) != invertible_cb:
        return False
    if dual_polar_by_projectors(a, b, c) != invertible_cb:
        return False
    if dual is None:
        return True
    if not bc.verify_dual_bc_polar(a, b, c, dual.r, dual.s):
        return False
    # (c,b)-inverse from the one-sided formulas, with s and r in the roles of p and q
    y_left, y_right = bc.paper_formula_inverse(a, c, b)
    return y_left == y_right == dual.y


def _prop_thm37(inst, rng):
    out = bc.thm37_formulas(inst.a, inst.b, inst.c)
    if out is None:
        return False
    y_bc, y_cb = out
    res = bc.bc_inverse(inst.a, inst.b, inst.c)
    dual = bc.dual_bc_polar(inst.a, inst.b, inst.c)
    # left idempotent = dual right one, right idempotent = dual left one
    return y_bc == res.y and y_cb == dual.y and res.p == dual.r and res.q == dual.s


def _prop_groupforms(inst, rng):
    a, b, c = inst.a, inst.b, inst.c
    y_bc = bc.bc_inverse(a, b, c).y
    y_cb = bc.bc_inverse(a, c, b).y
    forms = bc.group_inverse_forms(a, b, c)
    return all(v == (y_bc if k.startswith("bc:") else y_cb) for k, v in forms.items())


def _prop_prop39(inst, rng):
    return bc.involution_dual(inst.a, inst.b, inst.c)


def _prop_prop310(inst, rng):
    a, b, c = inst.a, inst.b, inst.c
    base = bc.bc_inverse(a, b, c)
    for k in (2, 3):
        res_k = bc.power_polar(a, b, c, k)
        if res_k is None or res_k.p != base.p or res_k.q != base.q:
            return False
    return True


def _prop_thm311(inst, rng):
    verdicts = bc.perturbation_equiv(inst.a, inst.d, inst.b, inst.c)
    return len(set(verdicts)) == 1


def _prop_thm41(inst, rng):
    a, b, c = inst.a, inst.b, inst.c
    v = thm41_check(a, b, c)
    if not (v.invertible == v.polar == v.projectors_exist):
        return False
    if v.invertible:
        res = bc.bc_inverse(a, b, c)
        return v.P.matrix == res.p and v.Q.matrix == res.q
    return True


def _prop_cor43(inst, rng):
    return len(set(cor43_check(inst.a, inst.b))) == 1


def _prop_classic(inst, rng):
    a = inst.a
    g = classic.group_inverse(a)
    along_a = bc.inverse_along(a, a)
    if (g is None) != (along_a is None):
        return False
    if g is not None and along_a.y != g:
        return False
    dz = classic.drazin(a)
    if g is not None and dz.d_inverse != g:
        return False
    along_k = bc.inverse_along(a, a**dz.index)
    if along_k is None or along_k.y != dz.d_inverse:
        return False
    if classic.drazin_by_linear_system(a, dz.index) != dz.d_inverse:
        return False
    if not classic.verify_polar(a, dz.spectral_idempotent):
        return False
    if a.field.characteristic == 0:
        mp = classic.moore_penrose(a)
        along_t = bc.inverse_along(a, a.T)
        if along_t is None or along_t.y != mp:
            return False
    return True


def _fam_mixed(rng, field, n):
    return _mixed(rng, field, n)


def _fam_bc(rng, field, n):
    return _draw(rng, field, n, _mixed, _bc_ok)


def _fam_bb(rng, field, n):
    inst = _mixed(rng, field, n)
    return Instance(inst.a, inst.b, inst.b)


def _thm37_ok(inst):
    a, b, c = inst.a, inst.b, inst.c
    return bc.bc_invertible(a, b, c) and bc.bc_invertible(a, c, b)


def _independent_polys(rng, field, n):
    # with c = b + h(a) and h(a) a = 0, invertibility both ways forces b = c,
    # so half the draws take unrelated polynomials b = f(a) a^m, c = g(a) a^m
    a = _rank_deficient(field, rng, n) if rng.integers(4) else random_matrix(field, rng, n)
    shift = a ** int(rng.integers(0, n + 1))
    b = _poly(a, random_matrix(field, rng, n, 1).array[:, 0]) @ shift
    c = _poly(a, random_matrix(field, rng, n, 1).array[:, 0]) @ shift
    return Instance(a, b, c)


def _thm37_draw(rng, field, n):
    if rng.integers(2):
        return _independent_polys(rng, field, n)
    return generate_instance("commuting-polynomial", rng, field, n)


def _fam_thm37(rng, field, n):
    return _draw(rng, field, n, _thm37_draw, _thm37_ok)


def _fam_prop310(rng, field, n):
    return _draw(rng, field, n, lambda r, f, m: generate_instance("commuting-polynomial", r, f, m), _bc_ok)


def _fam_perturb(rng, field, n):
    return generate_instance("perturbation", rng, field, n)


def _fam_single(rng, field, n):
    inst = _mixed(rng, field, n)
    return inst


# property id -> (check, sampled-instance family)
_PROPERTIES = {
    "THM25-EQUIV": (_prop_thm25, _fam_mixed),
    "THM22-UNIQUE": (_prop_thm22, _fam_bc),
    "LEM24-REGULAR": (_prop_lem24, _fam_bc),
    "PROP23-REDUCE": (_prop_prop23, _fam_bb),
    "COR36-DUAL": (_prop_cor36, _fam_mixed),
    "THM33-DUAL": (_prop_thm33, _fam_mixed),
    "THM37-FORMS": (_prop_thm37, _fam_thm37),
    "REMARK-GROUPFORMS": (_prop_groupforms, _fam_thm37),
    "PROP39-INVOLUTION": (_prop_prop39, _fam_mixed),
    "PROP310-POWERS": (_prop_prop310, _fam_prop310),
    "THM311-PERTURB": (_prop_thm311, _fam_perturb),
    "THM41-OPERATOR": (_prop_thm41, _fam_mixed),
    "COR43-ALONG": (_prop_cor43, _fam_mixed),
    "CLASSIC-CONSISTENCY": (_prop_classic, _fam_single),
}

# properties whose first trials replay the worked examples
_EXAMPLES_FIRST = {"THM25-EQUIV", "COR36-DUAL", "THM33-DUAL", "PROP39-INVOLUTION", "THM41-OPERATOR"}


@dataclass
class PropertyRecord:
    id: str
    trials: int = 0
    passes: int = 0
    failures: int = 0
    starved: bool = False
    counterexample: Optional[dict] = None

    def to_json(self):
        return {
            "id": self.id,
            "trials": self.trials,
            "passes": self.passes,
            "failures": self.failures,
            "starved": self.starved,
            "counterexample": self.counterexample,
        }


@dataclass
class Report:
    seed: int
    field: object
    max_dim: int
    trials: int
    mode: str
    properties: list = dc_field(default_factory=list)
    wall_time: float = 0.0

    @property
    def failures(self):
        return sum(r.failures for r in self.properties)

    @property
    def starved(self):
        return [r.id for r in self.properties if r.starved]

    @property
    def ok(self):
        return self.failures == 0 and not self.starved

    def record(self, prop_id):
        for r in self.properties:
            if r.id == prop_id:
                return r
        raise KeyError(prop_id)

    def to_json(self):
        """Comparable body: identical for identical parameters."""
        return {
            "seed": self.seed,
            "field": self.field,
            "max_dim": self.max_dim,
            "trials": self.trials,
            "mode": self.mode,
            "total_failures": self.failures,
            "starved": self.starved,
            "properties": [r.to_json() for r in self.properties],
        }


def _evaluate(rec, check, inst, rng, **kw):
    rec.trials += 1
    try:
        ok = bool(check(inst, rng, **kw))
        err = None
    except Exception as exc:  # a crash is a failure with a reproducer
        ok = False
        err = f"{type(exc).__name__}: {exc}"
    if ok:
        rec.passes += 1
        return
    rec.failures += 1
    if rec.counterexample is None:
        rec.counterexample = {"instance": inst.to_json(), "error": err}


def run_property(prop_id, seed, field="Fp:7", max_dim=4, trials=100):
    """Sampled run of one property; returns its :class:`PropertyRecord`."""
    if prop_id not in _PROPERTIES:
        raise ValueError(f"unknown property {prop_id!r}")
    if max_dim < 1 or trials < 1:
        raise ValueError("max_dim and trials must be >= 1")
    field = parse_field(field)
    check, family = _PROPERTIES[prop_id]
    idx = PROPERTY_IDS.index(prop_id)
    rec = PropertyRecord(prop_id)
    for t in range(trials):
        rng = np.random.default_rng([seed, idx, t])
        if prop_id in _EXAMPLES_FIRST and t < 2:
            inst = generate_instance("paper-examples", rng, field, index=t)
        else:
            n = int(rng.integers(1, max_dim + 1))
            try:
                inst = family(rng, field, n)
            except Starved:
                rec.starved = True
                break
        _evaluate(rec, check, inst, rng)
    return rec


def _descriptor(field):
    d = field.descriptor()
    return d if isinstance(d, str) else f"Fp:{d['Fp']}"


def run_suite(seed, field="Fp:7", max_dim=4, trials=100, exhaustive=False):
    """Run every property; ``exhaustive=True`` enumerates all 2x2 GF(2) cases.

    In exhaustive mode ``field``, ``max_dim`` and ``trials`` are ignored.
    """
    start = time.perf_counter()
    if exhaustive:
        report = _run_exhaustive(seed)
    else:
        if max_dim < 1 or trials < 1:
            raise ValueError("max_dim and trials must be >= 1")
        field = parse_field(field)
        report = Report(seed, _descriptor(field), max_dim, trials, "sampled")
        for prop_id in PROPERTY_IDS:
            report.properties.append(run_property(prop_id, seed, field, max_dim, trials))
    report.wall_time = time.perf_counter() - start
    return report


def _run_exhaustive(seed):
    field = GF(2)
    mats = list(_all_matrices(field, 2))
    report = Report(seed, "Fp:2", 2, 0, "exhaustive-f2")
    recs = {pid: PropertyRecord(pid) for pid in PROPERTY_IDS}
    rng = np.random.default_rng([seed, len(PROPERTY_IDS)])

    for a in mats:
        _evaluate(recs["CLASSIC-CONSISTENCY"], _prop_classic, Instance(a, a, a), rng)
        for b in mats:
            pair = Instance(a, b, b)
            _evaluate(recs["PROP23-REDUCE"], _prop_prop23, pair, rng)
            _evaluate(recs["COR43-ALONG"], _prop_cor43, pair, rng)

    for a, b, c in itertools.product(mats, repeat=3):
        inst = Instance(a, b, c)
        _evaluate(recs["THM25-EQUIV"], _prop_thm25, inst, rng, search=mats)
        for pid, check in (
            ("COR36-DUAL", _prop_cor36),
            ("THM33-DUAL", _prop_thm33),
            ("PROP39-INVOLUTION", _prop_prop39),
            ("THM41-OPERATOR", _prop_thm41),
        ):
            _evaluate(recs[pid], check, inst, rng)
        if not bc.bc_invertible(a, b, c):
            continue
        _evaluate(recs["THM22-UNIQUE"], _prop_thm22, inst, rng)
        _evaluate(recs["LEM24-REGULAR"], _prop_lem24, inst, rng)
        aba, aca = a @ b @ a, a @ c @ a
        if bc.bc_invertible(a, c, b) and c @ aba == aba @ c and b @ aca == aca @ b:
            _evaluate(recs["THM37-FORMS"], _prop_thm37, inst, rng)
            _evaluate(recs["REMARK-GROUPFORMS"], _prop_groupforms, inst, rng)
        if a @ b == b @ a and a @ c == c @ a and b @ a == c @ a:
            _evaluate(recs["PROP310-POWERS"], _prop_prop310, inst, rng)
        for d in mats:
            _evaluate(recs["THM311-PERTURB"], _prop_thm311, Instance(a, b, c, d), rng)

    for pid in PROPERTY_IDS:
        rec = recs[pid]
        if rec.trials == 0:
            rec.starved = True
        report.properties.append(rec)
    return report
