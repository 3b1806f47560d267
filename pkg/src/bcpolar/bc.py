"""(b,c)-inverses, their spectral idempotents, and the polarity notions.

Everything lives in the ring ``M_n`` over an exact field.  For a triple
``(a, b, c)`` of ``n x n`` matrices:

* ``a`` is (b,c)-invertible iff ``b in R cab`` and ``c in cab R``; then the
  (b,c)-inverse is ``y = b (cab)^- c`` for any inner inverse of ``cab``.
* The left and right (b,c)-spectral idempotents are ``p = y a`` and
  ``q = a y``.  They are the unique idempotents with ``p in bRca``,
  ``q in abRc``, ``pb = b``, ``cq = c``, ``cap = ca`` and ``qab = ab``.
* Dual (b,c)-polarity mirrors this with ``r in acRb`` and ``s in cRba`` and is
  equivalent to (c,b)-invertibility, with ``r = a y'`` and ``s = y' a`` where
  ``y'`` is the (c,b)-inverse.

Constructors here are proof-carrying: a returned result has already been
checked against every identity it is supposed to satisfy, and a failed
check raises :class:`~bcpolar.matrix.ContractViolation` instead of returning
a wrong answer.
"""

from dataclasses import dataclass

from .classic import group_inverse, inner_inverse
from .field import FieldMismatchError
from .linmem import in_commutant, in_set
from .matrix import (
    ContractViolation,
    DimensionError,
    Mat,
    identity,
    solve_left,
    solve_right,
    two_sided_inverse,
)

__all__ = [
    "BcResult",
    "DualBcResult",
    "bc_invertible",
    "bc_inverse",
    "bc_inverse_checks",
    "bc_polar_conditions",
    "verify_bc_polar",
    "paper_formula_inverse",
    "dual_bc_polar",
    "dual_bc_polar_conditions",
    "verify_dual_bc_polar",
    "polar_along_conditions",
    "dual_polar_along_conditions",
    "inverse_along",
    "bott_duffin",
    "group_inverse_forms",
    "thm37_formulas",
    "power_polar",
    "perturbation_equiv",
    "involution_dual",
]


def _check_square(*mats):
    first = mats[0]
    for m in mats:
        if not m.is_square or m.shape != first.shape:
            raise DimensionError(
                "all ring elements must be square of one size, got "
                + ", ".join(str(x.shape) for x in mats)
            )
        if m.field != first.field:
            raise FieldMismatchError(f"{first.field!r} vs {m.field!r}")


def _all(checks):
    return all(ok for _, ok in checks)


@dataclass(frozen=True)
class BcResult:
    """The (b,c)-inverse ``y`` with ``p = y a`` and ``q = a y``."""

    y: Mat
    p: Mat
    q: Mat


@dataclass(frozen=True)
class DualBcResult:
    """The (c,b)-inverse ``y`` with dual idempotents ``r = a y`` and ``s = y a``."""

    y: Mat
    r: Mat
    s: Mat


def bc_invertible(a, b, c):
    _check_square(a, b, c)
    cab = c @ a @ b
    return solve_left(cab, b) is not None and solve_right(cab, c) is not None


def bc_polar_conditions(a, b, c, p, q):
    """Labelled verdicts of the four (b,c)-polarity conditions on ``(p, q)``."""
    _check_square(a, b, c, p, q)
    ca, ab = c @ a, a @ b
    return [
        ("p^2=p", p @ p == p),
        ("p in bRca", in_set(p, b, ca)),
        ("q^2=q", q @ q == q),
        ("q in abRc", in_set(q, ab, c)),
        ("pb=b", p @ b == b),
        ("cq=c", c @ q == c),
        ("cap=ca", ca @ p == ca),
        ("qab=ab", q @ ab == ab),
    ]


def verify_bc_polar(a, b, c, p, q):
    return _all(bc_polar_conditions(a, b, c, p, q))


def bc_inverse_checks(a, b, c, y, p, q):
    """Every identity a (b,c)-inverse bundle must satisfy, labelled."""
    checks = [
        ("y in bR", solve_right(b, y) is not None),
        ("y in Rc", solve_left(c, y) is not None),
        ("yab=b", y @ a @ b == b),
        ("cay=c", c @ a @ y == c),
        ("p=ya", p == y @ a),
        ("q=ay", q == a @ y),
    ]
    return checks + bc_polar_conditions(a, b, c, p, q)


def bc_inverse(a, b, c, cab_inner=None):
    """The (b,c)-inverse bundle, or ``None`` when ``a`` is not (b,c)-invertible.

    ``cab_inner`` overrides the inner inverse of ``cab`` used in
    ``y = b (cab)^- c``; the result must not depend on it.
    """
    if not bc_invertible(a, b, c):
        return None
    cab = c @ a @ b
    if cab_inner is None:
        cab_inner = inner_inverse(cab)
    elif cab @ cab_inner @ cab != cab:
        raise ValueError("cab_inner is not an inner inverse of cab")
    y = b @ cab_inner @ c
    p, q = y @ a, a @ y
    failed = [label for label, ok in bc_inverse_checks(a, b, c, y, p, q) if not ok]
    if failed:
        raise ContractViolation(f"(b,c)-inverse fails {failed}")
    return BcResult(y, p, q)


def paper_formula_inverse(a, b, c, b_inner=None, c_inner=None, cab_inner=None):
    """Both one-sided-inverse expressions for the (b,c)-inverse.

    Evaluates ``(b b^- + 1 - p) b (cab)^- c`` and
    ``b (cab)^- c (c^- c + 1 - q)``, where the outer factors are the explicit
    left inverse of ``1 + p - b b^-`` and right inverse of ``1 + q - c^- c``.
    Returns ``(y_left, y_right)``, or ``None`` when not (b,c)-invertible.
    """
    res = bc_inverse(a, b, c)
    if res is None:
        return None
    n = a.rows
    I = identity(a.field, n)
    b_inner = inner_inverse(b) if b_inner is None else b_inner
    c_inner = inner_inverse(c) if c_inner is None else c_inner
    cab = c @ a @ b
    cab_inner = inner_inverse(cab) if cab_inner is None else cab_inner
    bb, cc = b @ b_inner, c_inner @ c
    left_inv = bb + I - res.p
    right_inv = cc + I - res.q
    if left_inv @ (I + res.p - bb) != I:
        raise ContractViolation("(bb^- + 1 - p)(1 + p - bb^-) != 1")
    if (I + res.q - cc) @ right_inv != I:
        raise ContractViolation("(1 + q - c^-c)(c^-c + 1 - q) != 1")
    core = b @ cab_inner @ c
    y_left = left_inv @ core
    y_right = core @ right_inv
    if y_left != res.y or y_right != res.y:
        raise ContractViolation("one-sided formulas disagree with the (b,c)-inverse")
    return y_left, y_right


def dual_bc_polar_conditions(a, b, c, r, s):
    """Labelled verdicts of the dual (b,c)-polarity conditions on ``(r, s)``."""
    _check_square(a, b, c, r, s)
    ac, ba = a @ c, b @ a
    return [
        ("r^2=r", r @ r == r),
        ("r in acRb", in_set(r, ac, b)),
        ("s^2=s", s @ s == s),
        ("s in cRba", in_set(s, c, ba)),
        ("br=b", b @ r == b),
        ("sc=c", s @ c == c),
        ("rac=ac", r @ ac == ac),
        ("bas=ba", ba @ s == ba),
    ]


def verify_dual_bc_polar(a, b, c, r, s):
    return _all(dual_bc_polar_conditions(a, b, c, r, s))


def dual_bc_polar(a, b, c):
    """Dual (b,c)-spectral idempotents via the (c,b)-inverse, or ``None``."""
    res = bc_inverse(a, c, b)
    if res is None:
        return None
    y = res.y
    r, s = a @ y, y @ a
    failed = [label for label, ok in dual_bc_polar_conditions(a, b, c, r, s) if not ok]
    if failed:
        raise ContractViolation(f"dual (b,c)-polarity fails {failed}")
    return DualBcResult(y, r, s)


def polar_along_conditions(a, d, p):
    I = identity(a.field, a.rows)
    da = d @ a
    return [
        ("p^2=p", p @ p == p),
        ("p in comm(da)", in_commutant(p, da)),
        ("pd=d", p @ d == d),
        ("1+da-p invertible", two_sided_inverse(I + da - p) is not None),
    ]


def dual_polar_along_conditions(a, d, q):
    I = identity(a.field, a.rows)
    ad = a @ d
    return [
        ("q^2=q", q @ q == q),
        ("q in comm(ad)", in_commutant(q, ad)),
        ("dq=d", d @ q == d),
        ("1+ad-q invertible", two_sided_inverse(I + ad - q) is not None),
    ]


def inverse_along(a, d):
    """Inverse of ``a`` along ``d`` (the (d,d)-inverse), or ``None``.

    Also confirms that ``p = y a`` makes ``a`` polar along ``d`` and that
    ``q = a y`` makes it dually polar along ``d``.
    """
    res = bc_inverse(a, d, d)
    if res is None:
        return None
    failed = [lbl for lbl, ok in polar_along_conditions(a, d, res.p) if not ok]
    failed += [lbl for lbl, ok in dual_polar_along_conditions(a, d, res.q) if not ok]
    if failed:
        raise ContractViolation(f"inverse along d fails {failed}")
    return res


def bott_duffin(a, e, f):
    """The (e,f)-inverse for idempotents ``e`` and ``f``."""
    _check_square(a, e, f)
    if not e.is_idempotent():
        raise ValueError("e is not idempotent")
    if not f.is_idempotent():
        raise ValueError("f is not idempotent")
    return bc_inverse(a, e, f)


def _group(x):
    g = group_inverse(x)
    if g is None:
        raise ContractViolation("group inverse required by a closed form does not exist")
    return g


def group_inverse_forms(a, b, c):
    """The eight group-inverse expressions for the (b,c)- and (c,b)-inverses."""
    ab, ac, ba, ca = a @ b, a @ c, b @ a, c @ a
    abac, acab, baca, caba = ab @ ac, ac @ ab, ba @ ca, ca @ ba
    return {
        "bc:bac(abac)#": ba @ c @ _group(abac),
        "bc:ba(caba)#c": ba @ _group(caba) @ c,
        "bc:b(acab)#ac": b @ _group(acab) @ ac,
        "bc:(baca)#bac": _group(baca) @ ba @ c,
        "cb:cab(acab)#": ca @ b @ _group(acab),
        "cb:ca(baca)#b": ca @ _group(baca) @ b,
        "cb:c(abac)#ab": c @ _group(abac) @ ab,
        "cb:(caba)#cab": _group(caba) @ ca @ b,
    }


def thm37_formulas(a, b, c):
    """Closed forms for the (b,c)- and (c,b)-inverses under commutation.

    Requires ``a`` to be (b,c)- and (c,b)-invertible with ``aba`` commuting
    with ``c`` and ``aca`` commuting with ``b``; returns ``None`` otherwise.
    With ``x = aba`` and ``z = aca``, uses the shifted matrices
    ``S = c x + 1 - x^{c pi}`` and ``T = b z + 1 - z^{b pi}``:

        (b,c)-inverse = b a S^-1 c = T^-1 b a c
        (c,b)-inverse = S^-1 c a b = c a T^-1 b

    All eight group-inverse forms are checked against these, and the left
    and right (b,c)-spectral idempotents are checked against the dual ones.
    """
    _check_square(a, b, c)
    aba, aca = a @ b @ a, a @ c @ a
    if not (in_commutant(aba, c) and in_commutant(aca, b)):
        return None
    res = bc_inverse(a, b, c)
    dual = dual_bc_polar(a, b, c)
    if res is None or dual is None:
        return None
    I = identity(a.field, a.rows)
    along_c = inverse_along(aba, c)
    along_b = inverse_along(aca, b)
    if along_c is None or along_b is None:
        raise ContractViolation("aba not invertible along c or aca not invertible along b")
    S = c @ aba + I - along_c.p
    T = b @ aca + I - along_b.p
    S_inv, T_inv = two_sided_inverse(S), two_sided_inverse(T)
    if S_inv is None or T_inv is None:
        raise ContractViolation("shifted matrix is singular")
    if S_inv @ c != along_c.y or T_inv @ b != along_b.y:
        raise ContractViolation("shifted-inverse formula for the inverse along fails")
    ba = b @ a
    y_bc = ba @ S_inv @ c
    y_bc_alt = T_inv @ ba @ c
    y_cb = S_inv @ c @ a @ b
    y_cb_alt = c @ a @ T_inv @ b
    if not (y_bc == y_bc_alt == res.y):
        raise ContractViolation("closed forms for the (b,c)-inverse disagree")
    if not (y_cb == y_cb_alt == dual.y):
        raise ContractViolation("closed forms for the (c,b)-inverse disagree")
    for name, val in group_inverse_forms(a, b, c).items():
        want = y_bc if name.startswith("bc:") else y_cb
        if val != want:
            raise ContractViolation(f"group-inverse form {name} disagrees")
    if res.p != dual.r or res.q != dual.s:
        raise ContractViolation("(b,c)-spectral idempotents differ from the dual ones")
    return y_bc, y_cb


def power_polar(a, b, c, k):
    """(b^k, c^k)-inverse bundle of ``a^k`` under the commuting hypotheses.

    Needs ``a`` (b,c)-polar, ``a`` commuting with ``b`` and ``c``, and
    ``ba = ca``; returns ``None`` otherwise.  Checks that the spectral
    idempotents of the power equal those of ``a``, that ``a`` is polar along
    ``b`` with the same left idempotent and dually polar along ``c`` with the
    same right idempotent.
    """
    _check_square(a, b, c)
    if k < 1:
        raise ValueError("k must be >= 1")
    if not (in_commutant(a, b) and in_commutant(a, c) and b @ a == c @ a):
        return None
    res = bc_inverse(a, b, c)
    if res is None:
        return None
    along_b = inverse_along(a, b)
    along_c = inverse_along(a, c)
    if along_b is None or along_c is None:
        raise ContractViolation("a not invertible along b or along c")
    if along_b.p != res.p:
        raise ContractViolation("polar-along-b idempotent differs from p")
    if along_c.q != res.q:
        raise ContractViolation("dual polar-along-c idempotent differs from q")
    res_k = bc_inverse(a**k, b**k, c**k)
    if res_k is None:
        raise ContractViolation(f"a^{k} is not (b^{k},c^{k})-invertible")
    if res_k.p != res.p or res_k.q != res.q:
        raise ContractViolation("power changes the spectral idempotents")
    return res_k


def perturbation_equiv(a, d, b, c):
    """Four equivalent criteria for ``d`` to share ``a``'s spectral idempotents.

    Returns booleans for: (1) ``d`` is (b,c)-polar with the same ``p``, ``q``;
    (2) ``cdp = cd``, ``p in bRcd``, ``pb = b``, ``qdb = db``, ``q in dbRc``,
    ``cq = c``; (3) as (2) with ``p in bRcd & bRca`` and ``q in abRc & dbRc``;
    (4) ``d`` is (b,c)-polar with ``cdp = cd`` and ``qdb = db``.
    """
    _check_square(a, d, b, c)
    res = bc_inverse(a, b, c)
    if res is None:
        raise ValueError("a is not (b,c)-polar")
    p, q = res.p, res.q
    cd, db = c @ d, d @ b
    res_d = bc_inverse(d, b, c)

    one = res_d is not None and res_d.p == p and res_d.q == q

    cdp = cd @ p == cd
    pb = p @ b == b
    qdb = q @ db == db
    cq = c @ q == c
    p_bRcd = in_set(p, b, cd)
    q_dbRc = in_set(q, db, c)
    two = cdp and p_bRcd and pb and qdb and q_dbRc and cq

    three = (
        cdp
        and p_bRcd
        and in_set(p, b, c @ a)
        and pb
        and qdb
        and in_set(q, a @ b, c)
        and q_dbRc
        and cq
    )

    four = res_d is not None and cdp and qdb
    return one, two, three, four


def involution_dual(a, b, c):
    """Transpose duality between (b,c)-polarity and dual polarity.

    True iff ``a`` is (b,c)-polar exactly when ``a^T`` is dually
    (b^T, c^T)-polar, and in that case ``p^T = r'`` and ``q^T = s'``.
    """
    _check_square(a, b, c)
    res = bc_inverse(a, b, c)
    dual = dual_bc_polar(a.T, b.T, c.T)
    if (res is None) != (dual is None):
        return False
    if res is None:
        return True
    return res.p.T == dual.r and res.q.T == dual.s
