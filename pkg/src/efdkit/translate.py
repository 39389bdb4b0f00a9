"""Signature bridges: hoop-to-group star translation, the Phi_rad
decomposition of MV sentences, MV-to-hoop translation, and the MV
classification pipeline built from them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import (
    DeltaKT,
    FragmentError,
    classify_group_sentences,
    DEFAULT_FORM_CAP,
)
from .lattice import AEClass, boolean_p, meet as class_meet, trivial_p
from .models import TwoMV, eval_term
from .terms import (
    Diff,
    EFDSentence,
    Identity,
    Join,
    Meet,
    MVNeg,
    Neg,
    Plus,
    Power,
    Scalar,
    Signature,
    Term,
    Var,
    ZERO,
    Zero,
    is_boolean_marker,
    scalar,
    xvar,
    zvar,
)

__all__ = [
    "StarResult",
    "RadBasicSentence",
    "TwoCheck",
    "MVClassification",
    "star_term",
    "star_sentence",
    "check_in_two",
    "phi_rad_decompose",
    "mv_to_hoop",
    "simplify_hoop_term",
    "hoop_sentence_to_delta_kt",
    "classify_mv_sentences",
    "ABSURD_MV",
]

ABSURD_MV = "absurd"

_TWO_BOUND = 20  # exhaustive 2^(n+m) bound for check_in_two


@dataclass(frozen=True)
class StarResult:
    """Group image of a hoop sentence, with one z_j \\/ 0 = z_j conjunct per
    z-variable."""

    sentence: EFDSentence


@dataclass(frozen=True)
class RadBasicSentence:
    """A Phi_rad member produced by the decomposition, tagged with the
    generating sign vector."""

    sentence: EFDSentence
    sign_vector: tuple[int, ...]


@dataclass(frozen=True)
class TwoCheck:
    holds: bool
    table: dict | None  # e-bar -> unique e'-bar on success
    failing: tuple | None  # first e-bar without a unique solution


# ---------------------------------------------------------------------------
# Star translation (hoop -> group)


def star_term(t: Term) -> Term:
    """x_i maps to x_i \\/ -x_i, z_j to itself, monus to truncated group
    subtraction."""
    if isinstance(t, Var):
        if t.kind == "x":
            return Join(t, Neg(t))
        return t
    if isinstance(t, Zero):
        return t
    if isinstance(t, Plus):
        return Plus(star_term(t.left), star_term(t.right))
    if isinstance(t, Diff):
        return Join(Plus(star_term(t.left), Neg(star_term(t.right))), ZERO)
    if isinstance(t, Scalar):
        if t.k < 0:
            raise FragmentError("negative scalar in a hoop term")
        return Scalar(t.k, star_term(t.arg))
    raise FragmentError(f"{type(t).__name__} is not a hoop operation")


def star_sentence(phi: EFDSentence) -> StarResult:
    if phi.signature is not Signature.HOOP:
        raise FragmentError("star translation expects a hoop sentence")
    equations = [(star_term(a), star_term(b)) for a, b in phi.equations]
    for j in range(1, phi.m + 1):
        equations.append((Join(zvar(j), ZERO), zvar(j)))
    return StarResult(EFDSentence(Signature.GROUP, phi.n, phi.m, tuple(equations)))


# ---------------------------------------------------------------------------
# Exhaustive two-element check


def _bits(width: int):
    for mask in range(1 << width):
        yield tuple((mask >> i) & 1 for i in range(width))


def check_in_two(phi: EFDSentence) -> TwoCheck:
    """For every e-bar in {0,1}^n, find the unique e'-bar solving the
    equations in the two-element model."""
    if phi.signature is not Signature.MV:
        raise FragmentError("check_in_two expects an MV sentence")
    if phi.n + phi.m > _TWO_BOUND:
        raise FragmentError(f"exhaustive bound n + m <= {_TWO_BOUND} exceeded")
    two = TwoMV()
    table = {}
    for ebar in _bits(phi.n):
        env = {xvar(i): b for i, b in enumerate(ebar, start=1)}
        solutions = []
        for eprime in _bits(phi.m):
            env.update({zvar(j): b for j, b in enumerate(eprime, start=1)})
            if all(
                eval_term(two, lhs, env) == eval_term(two, rhs, env)
                for lhs, rhs in phi.equations
            ):
                solutions.append(eprime)
        if len(solutions) != 1:
            return TwoCheck(False, None, ebar)
        table[ebar] = solutions[0]
    return TwoCheck(True, table, None)


# ---------------------------------------------------------------------------
# Phi_rad decomposition


def _subst_signs(t: Term, esub: dict[Var, bool]) -> Term:
    """Negate the variables flagged in esub."""
    if isinstance(t, Var):
        return MVNeg(t) if esub.get(t) else t
    if isinstance(t, Zero):
        return t
    if isinstance(t, (Plus, Join, Meet, Diff)):
        return type(t)(_subst_signs(t.left, esub), _subst_signs(t.right, esub))
    if isinstance(t, MVNeg):
        return MVNeg(_subst_signs(t.arg, esub))
    return type(t)(t.k, _subst_signs(t.arg, esub))


def _dist(a: Term, b: Term) -> Term:
    """(a -. b) + (b -. a): zero exactly when a = b."""
    if b == ZERO:
        return a
    if a == ZERO:
        return b
    return Plus(Diff(a, b), Diff(b, a))


def _fold_plus(terms: list[Term]) -> Term:
    acc = terms[0]
    for t in terms[1:]:
        acc = Plus(acc, t)
    return acc


def phi_rad_decompose(phi: EFDSentence) -> list[RadBasicSentence]:
    """The 2^n sentences phi_e, each encoding

        (rho(x-bar) and alpha(x-bar^e, z-bar^e')) or (rho~(x-bar) and z-bar = 0)

    as a single equation via the meet-of-distance-sums encoding of
    disjunction, which is faithful on totally ordered algebras.
    """
    ct = check_in_two(phi)
    if not ct.holds:
        raise FragmentError(
            f"decomposition precondition failed in the two-element model at "
            f"e-bar = {ct.failing}"
        )
    out = []
    for ebar in _bits(phi.n):
        eprime = ct.table[ebar]
        esub: dict[Var, bool] = {xvar(i): bool(b) for i, b in enumerate(ebar, start=1)}
        esub.update({zvar(j): bool(b) for j, b in enumerate(eprime, start=1)})
        # radical disjunct: x_i^2 = 0 for each i, then the substituted alpha
        left_terms = [Power(2, xvar(i)) for i in range(1, phi.n + 1)]
        for lhs, rhs in phi.equations:
            left_terms.append(_dist(_subst_signs(lhs, esub), _subst_signs(rhs, esub)))
        u = _fold_plus(left_terms)
        if phi.n == 0:
            equation = (u, ZERO)
        else:
            # co-radical disjunct: (~x_1 /\ ... /\ ~x_n)^2 = 0 and each z_j = 0
            neg_meet: Term = MVNeg(xvar(1))
            for i in range(2, phi.n + 1):
                neg_meet = Meet(neg_meet, MVNeg(xvar(i)))
            right_terms: list[Term] = [Power(2, neg_meet)]
            right_terms.extend(zvar(j) for j in range(1, phi.m + 1))
            v = _fold_plus(right_terms)
            equation = (Meet(u, v), ZERO)
        sentence = EFDSentence(Signature.MV, phi.n, phi.m, (equation,))
        out.append(RadBasicSentence(sentence, ebar))
    return out


# ---------------------------------------------------------------------------
# MV -> hoop translation
#
# Terms are translated by a polarity-tagged evaluation: with all variables
# ranging over the radical of a totally ordered perfect algebra, every
# subterm is either radical ("rad", value h) or co-radical ("co", value
# neg h); both cases carry a hoop term h over the same variables.  The case
# rules are the Gamma arithmetic of perfect algebras read symbolically, so
# the translated term agrees with the original on all radical assignments.

_RAD = "rad"
_CO = "co"


def _hjoin(p: Term, q: Term) -> Term:
    # x \/ y = x + (y -. x) in hoops
    return Plus(p, Diff(q, p))


def _hmeet(p: Term, q: Term) -> Term:
    # x /\ y = x -. (x -. y) in hoops
    return Diff(p, Diff(p, q))


def _v_neg(v):
    tag, h = v
    return (_CO if tag == _RAD else _RAD, h)


def _v_plus(va, vb):
    (ta, a), (tb, b) = va, vb
    if ta == _RAD and tb == _RAD:
        return (_RAD, Plus(a, b))
    if ta == _CO and tb == _CO:
        return (_CO, ZERO)  # co-radical sums saturate at the unit
    if ta == _RAD:
        return (_CO, Diff(b, a))  # a + neg b = neg(b -. a)
    return (_CO, Diff(a, b))


def _v_diff(va, vb):
    # a -. b computed as a * neg b
    (ta, a), (tb, b) = va, vb
    if ta == _RAD and tb == _RAD:
        return (_RAD, Diff(a, b))
    if ta == _RAD and tb == _CO:
        return (_RAD, ZERO)  # radical * radical vanishes
    if ta == _CO and tb == _RAD:
        return (_CO, Plus(a, b))
    return (_RAD, Diff(b, a))  # neg a -. neg b = b -. a


def _v_join(va, vb):
    (ta, a), (tb, b) = va, vb
    if ta == tb:
        return (ta, _hjoin(a, b) if ta == _RAD else _hmeet(a, b))
    return va if ta == _CO else vb  # co-radical dominates radical


def _v_meet(va, vb):
    (ta, a), (tb, b) = va, vb
    if ta == tb:
        return (ta, _hmeet(a, b) if ta == _RAD else _hjoin(a, b))
    return va if ta == _RAD else vb


def _v_star(va, vb):
    return _v_neg(_v_plus(_v_neg(va), _v_neg(vb)))


def _v_scalar(k: int, v):
    if k == 0:
        return (_RAD, ZERO)
    tag, h = v
    if tag == _RAD:
        return (_RAD, scalar(k, h))
    return (_CO, h) if k == 1 else (_CO, ZERO)


def _polarity_value(t: Term):
    if isinstance(t, Var):
        return (_RAD, t)
    if isinstance(t, Zero):
        return (_RAD, ZERO)
    if isinstance(t, Plus):
        return _v_plus(_polarity_value(t.left), _polarity_value(t.right))
    if isinstance(t, MVNeg):
        return _v_neg(_polarity_value(t.arg))
    if isinstance(t, Join):
        return _v_join(_polarity_value(t.left), _polarity_value(t.right))
    if isinstance(t, Meet):
        return _v_meet(_polarity_value(t.left), _polarity_value(t.right))
    if isinstance(t, Diff):
        return _v_diff(_polarity_value(t.left), _polarity_value(t.right))
    if isinstance(t, Scalar):
        if t.k < 0:
            raise FragmentError("negative scalar in an MV term")
        return _v_scalar(t.k, _polarity_value(t.arg))
    if isinstance(t, Power):
        v = _polarity_value(t.arg)
        acc = v
        for _ in range(t.k - 1):
            acc = _v_star(acc, v)
        return acc
    raise FragmentError(f"{type(t).__name__} is not an MV operation")


def simplify_hoop_term(t: Term) -> Term:
    """Normalize with identities of cancellative hoops: unit laws for 0,
    x -. x = 0, (x + y) -. y = x."""
    if isinstance(t, (Var, Zero)):
        return t
    if isinstance(t, Plus):
        a = simplify_hoop_term(t.left)
        b = simplify_hoop_term(t.right)
        if a == ZERO:
            return b
        if b == ZERO:
            return a
        return Plus(a, b)
    if isinstance(t, Diff):
        a = simplify_hoop_term(t.left)
        b = simplify_hoop_term(t.right)
        if b == ZERO:
            return a
        if a == ZERO or a == b:
            return ZERO
        if isinstance(a, Plus):
            if a.left == b:
                return a.right
            if a.right == b:
                return a.left
        return Diff(a, b)
    if isinstance(t, Scalar):
        a = simplify_hoop_term(t.arg)
        if t.k == 0 or a == ZERO:
            return ZERO
        return scalar(t.k, a)
    raise FragmentError(f"{type(t).__name__} is not a hoop operation")


def mv_to_hoop(rb: RadBasicSentence) -> EFDSentence:
    """phi^H: each equation translated so that, on radical assignments,
    hoop satisfaction in rad A coincides with MV satisfaction in A."""
    phi = rb.sentence
    equations = []
    for lhs, rhs in phi.equations:
        (tl, hl) = _polarity_value(lhs)
        (tr, hr) = _polarity_value(rhs)
        if tl != tr:
            raise FragmentError(
                "equation forces a radical value against a co-radical one: "
                f"{lhs!r} = {rhs!r}"
            )
        equations.append((simplify_hoop_term(hl), simplify_hoop_term(hr)))
    return EFDSentence(Signature.HOOP, phi.n, phi.m, tuple(equations))


# ---------------------------------------------------------------------------
# Classification pipeline


def hoop_sentence_to_delta_kt(phi: EFDSentence) -> tuple[int, Term]:
    """Recognize the hoop image of a decomposition branch as delta_{k,t}:
    a single equation (k z1 -. t) + (t -. k z1) = 0 or k z1 = t with t over
    x-variables."""
    if phi.signature is not Signature.HOOP or phi.m != 1 or len(phi.equations) != 1:
        raise FragmentError("supported fragment: single-equation, single-z hoop sentence")
    lhs, rhs = phi.equations[0]
    if rhs == ZERO and isinstance(lhs, Plus):
        a, b = lhs.left, lhs.right
        if isinstance(a, Diff) and isinstance(b, Diff) and a.left == b.right and a.right == b.left:
            lhs, rhs = a.left, a.right
    for u, v in ((lhs, rhs), (rhs, lhs)):
        k = _kz1(u)
        if k is not None and not _mentions_z(v):
            return (k, v)
    raise FragmentError(f"not a delta_{{k,t}} shape: {phi.equations[0]!r}")


def _kz1(t: Term) -> int | None:
    """Multiplicity when t is z1, k z1, or a sum of such."""
    if isinstance(t, Var) and t.kind == "z" and t.index == 1:
        return 1
    if isinstance(t, Scalar) and t.k >= 1:
        inner = _kz1(t.arg)
        return t.k * inner if inner is not None else None
    if isinstance(t, Plus):
        left = _kz1(t.left)
        right = _kz1(t.right)
        if left is not None and right is not None:
            return left + right
    return None


def _mentions_z(t: Term) -> bool:
    if isinstance(t, Var):
        return t.kind == "z"
    if isinstance(t, Zero):
        return False
    if isinstance(t, (Plus, Join, Meet, Diff)):
        return _mentions_z(t.left) or _mentions_z(t.right)
    return _mentions_z(t.arg)


@dataclass(frozen=True)
class MVClassification:
    ae_class: AEClass
    notes: tuple[str, ...] = ()


def classify_mv_sentences(
    sentences, cap: int = DEFAULT_FORM_CAP
) -> MVClassification:
    """Classify MV sentences into the canonical AE-class of perfect
    algebras: check_in_two, Phi_rad decomposition, MV-to-hoop, star, then
    the group classifier; Boolean markers force the Boolean class and the
    ABSURD marker the Trivial class."""
    deltas: list[DeltaKT] = []
    boolean = False
    for item in sentences:
        if item == ABSURD_MV:
            return MVClassification(trivial_p(), ("absurd marker",))
        if isinstance(item, Identity):
            if is_boolean_marker(item):
                boolean = True
                continue
            raise FragmentError("the only supported identity is the Boolean marker")
        if not isinstance(item, EFDSentence) or item.signature is not Signature.MV:
            raise FragmentError(f"unsupported classification input {item!r}")
        ct = check_in_two(item)
        if not ct.holds:
            return MVClassification(
                trivial_p(),
                (f"per-paper-scope: no unique two-element solution at {ct.failing}",),
            )
        for rb in phi_rad_decompose(item):
            hoop = mv_to_hoop(rb)
            k, t_hoop = hoop_sentence_to_delta_kt(hoop)
            deltas.append(DeltaKT(k, star_term(t_hoop)))
    group_class = classify_group_sentences(deltas, cap=cap)
    result = AEClass("P", group_class.kind, group_class.primes)
    if boolean:
        result = class_meet(result, boolean_p())
    return MVClassification(result)
