"""Abstract syntax, parsing, printing, and macro expansion for terms and
EFD-sentences over the three signatures.

An EFD-sentence has the shape ``forall x1 .. xn exists! z1 .. zm : eq & ...``
with every equation between terms of a single signature:

* Group: ``{+, unary -, 0, \\/, /\\}`` plus integer scalars ``k t``.
* Hoop:  ``{+, -., 0}`` plus positive scalars.
* MV:    ``{+, ~, 0}`` plus the derived macros ``\\/ /\\ -. k t  t^k``.

All values are immutable; every function here is pure.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Union

__all__ = [
    "Signature",
    "Var",
    "Zero",
    "Plus",
    "Neg",
    "Join",
    "Meet",
    "Diff",
    "MVNeg",
    "Scalar",
    "Power",
    "Term",
    "EFDSentence",
    "Identity",
    "UniquenessRule",
    "ParseError",
    "SignatureError",
    "ZERO",
    "xvar",
    "zvar",
    "scalar",
    "power",
    "free_vars",
    "max_index",
    "validate_term",
    "expand_macros",
    "parse_term",
    "parse_sentence",
    "print_term",
    "print_sentence",
    "build_t_k",
    "build_delta_k",
    "build_epsilon_k",
    "boolean_marker",
    "is_boolean_marker",
    "uniqueness_quasiidentity",
    "term_to_json",
    "term_from_json",
    "sentence_to_json",
    "sentence_from_json",
]


class Signature(enum.Enum):
    GROUP = "group"
    HOOP = "hoop"
    MV = "mv"


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)
        self.pos = pos


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    kind: str  # "x" or "z"
    index: int  # 1-based


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Neg:
    arg: "Term"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Diff:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class MVNeg:
    arg: "Term"


@dataclass(frozen=True)
class Scalar:
    k: int
    arg: "Term"


@dataclass(frozen=True)
class Power:
    k: int
    arg: "Term"


Term = Union[Var, Zero, Plus, Neg, Join, Meet, Diff, MVNeg, Scalar, Power]

ZERO = Zero()


def xvar(i: int) -> Var:
    return Var("x", i)


def zvar(i: int) -> Var:
    return Var("z", i)


def scalar(k: int, t: Term) -> Term:
    """Scalar node, collapsing the k = 1 identity case."""
    return t if k == 1 else Scalar(k, t)


def power(k: int, t: Term) -> Term:
    """Power node, collapsing the k = 1 identity case."""
    return t if k == 1 else Power(k, t)


# operations admitted per signature; Scalar/Power constraints checked separately
_ALLOWED = {
    Signature.GROUP: (Var, Zero, Plus, Neg, Join, Meet, Scalar),
    Signature.HOOP: (Var, Zero, Plus, Diff, Scalar),
    Signature.MV: (Var, Zero, Plus, MVNeg, Join, Meet, Diff, Scalar, Power),
}


def validate_term(t: Term, sig: Signature) -> None:
    """Raise SignatureError unless every node of t is admitted by sig."""
    if not isinstance(t, _ALLOWED[sig]):
        raise SignatureError(f"{type(t).__name__} not admitted in {sig.value} terms")
    if isinstance(t, Scalar):
        if sig is not Signature.GROUP and t.k < 0:
            raise SignatureError(f"negative scalar {t.k} only admitted in group terms")
        validate_term(t.arg, sig)
    elif isinstance(t, Power):
        if t.k < 1:
            raise SignatureError("power exponent must be >= 1")
        validate_term(t.arg, sig)
    elif isinstance(t, (Plus, Join, Meet, Diff)):
        validate_term(t.left, sig)
        validate_term(t.right, sig)
    elif isinstance(t, (Neg, MVNeg)):
        validate_term(t.arg, sig)
    elif isinstance(t, Var):
        if t.kind not in ("x", "z") or t.index < 1:
            raise SignatureError(f"bad variable {t!r}")


def free_vars(t: Term) -> frozenset[Var]:
    if isinstance(t, Var):
        return frozenset((t,))
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, (Plus, Join, Meet, Diff)):
        return free_vars(t.left) | free_vars(t.right)
    return free_vars(t.arg)


def max_index(t: Term, kind: str) -> int:
    return max((v.index for v in free_vars(t) if v.kind == kind), default=0)


# ---------------------------------------------------------------------------
# Macro expansion


def _mv_star(a: Term, b: Term) -> Term:
    # x * y := ~(~x + ~y)
    return MVNeg(Plus(MVNeg(a), MVNeg(b)))


def expand_macros(t: Term, sig: Signature) -> Term:
    """Rewrite t using only the primitive operations of sig.

    Group: Scalar expands to (negated) repeated sums.
    Hoop: Scalar expands to repeated sums.
    MV: Join, Meet, Diff, Scalar, Power expand through the ~/+ definitions.
    """
    if isinstance(t, (Var, Zero)):
        return t
    if isinstance(t, Scalar):
        arg = expand_macros(t.arg, sig)
        k = t.k
        if k == 0:
            return ZERO
        if k < 0:
            if sig is not Signature.GROUP:
                raise SignatureError("negative scalar outside group signature")
            return Neg(_fold_sum(arg, -k))
        return _fold_sum(arg, k)
    if isinstance(t, Plus):
        return Plus(expand_macros(t.left, sig), expand_macros(t.right, sig))
    if isinstance(t, Neg):
        return Neg(expand_macros(t.arg, sig))
    if isinstance(t, MVNeg):
        return MVNeg(expand_macros(t.arg, sig))
    if sig is Signature.MV:
        if isinstance(t, Join):
            a = expand_macros(t.left, sig)
            b = expand_macros(t.right, sig)
            # x \/ y := ~(~x + y) + y
            return Plus(MVNeg(Plus(MVNeg(a), b)), b)
        if isinstance(t, Meet):
            a = expand_macros(t.left, sig)
            b = expand_macros(t.right, sig)
            # x /\ y := ~(~x \/ ~y)
            return MVNeg(expand_macros(Join(MVNeg(a), MVNeg(b)), sig))
        if isinstance(t, Diff):
            a = expand_macros(t.left, sig)
            b = expand_macros(t.right, sig)
            # x -. y := ~(~x + y)
            return MVNeg(Plus(MVNeg(a), b))
        if isinstance(t, Power):
            arg = expand_macros(t.arg, sig)
            acc = arg
            for _ in range(t.k - 1):
                acc = _mv_star(acc, arg)
            return acc
    if isinstance(t, (Join, Meet)):
        if sig is Signature.GROUP:
            ctor = type(t)
            return ctor(expand_macros(t.left, sig), expand_macros(t.right, sig))
        raise SignatureError(f"{type(t).__name__} not admitted in {sig.value} terms")
    if isinstance(t, Diff):
        if sig is Signature.HOOP:
            return Diff(expand_macros(t.left, sig), expand_macros(t.right, sig))
        raise SignatureError(f"Diff not admitted in {sig.value} terms")
    raise SignatureError(f"{type(t).__name__} not admitted in {sig.value} terms")


def _fold_sum(t: Term, k: int) -> Term:
    acc = t
    for _ in range(k - 1):
        acc = Plus(acc, t)
    return acc


# ---------------------------------------------------------------------------
# Sentences


@dataclass(frozen=True)
class EFDSentence:
    """forall x1..xn exists! z1..zm : conjunction of equations (m >= 1)."""

    signature: Signature
    n: int
    m: int
    equations: tuple[tuple[Term, Term], ...]

    def __post_init__(self):
        if self.m < 1:
            raise SignatureError("EFD-sentence requires m >= 1 (use Identity for m = 0)")
        if not self.equations:
            raise SignatureError("EFD-sentence requires at least one equation")
        for lhs, rhs in self.equations:
            for t in (lhs, rhs):
                validate_term(t, self.signature)
                for v in free_vars(t):
                    bound = self.n if v.kind == "x" else self.m
                    if v.index > bound:
                        raise SignatureError(f"variable {v.kind}{v.index} out of range")


@dataclass(frozen=True)
class Identity:
    """forall x1..xn : lhs = rhs (the m = 0 axiomatic case)."""

    signature: Signature
    n: int
    equation: tuple[Term, Term]

    def __post_init__(self):
        for t in self.equation:
            validate_term(t, self.signature)
            for v in free_vars(t):
                if v.kind != "x" or v.index > self.n:
                    raise SignatureError(f"variable {v.kind}{v.index} out of range")


@dataclass(frozen=True)
class UniquenessRule:
    """U(phi): premises use z1..zm and a duplicate block z(m+1)..z(2m);
    conclusions equate the two blocks."""

    signature: Signature
    n: int
    m: int
    premises: tuple[tuple[Term, Term], ...]
    conclusions: tuple[tuple[Term, Term], ...]


def _shift_z(t: Term, offset: int) -> Term:
    if isinstance(t, Var):
        return Var("z", t.index + offset) if t.kind == "z" else t
    if isinstance(t, Zero):
        return t
    if isinstance(t, (Plus, Join, Meet, Diff)):
        return type(t)(_shift_z(t.left, offset), _shift_z(t.right, offset))
    if isinstance(t, (Neg, MVNeg)):
        return type(t)(_shift_z(t.arg, offset))
    return type(t)(t.k, _shift_z(t.arg, offset))


def uniqueness_quasiidentity(phi: EFDSentence) -> UniquenessRule:
    """U(phi): if the equations hold for two z-blocks, the blocks coincide."""
    first = phi.equations
    second = tuple(
        (_shift_z(lhs, phi.m), _shift_z(rhs, phi.m)) for lhs, rhs in phi.equations
    )
    conclusions = tuple((zvar(j), zvar(phi.m + j)) for j in range(1, phi.m + 1))
    return UniquenessRule(phi.signature, phi.n, phi.m, first + second, conclusions)


# ---------------------------------------------------------------------------
# Builders


def build_t_k(k: int) -> Term:
    """t_k(z1) = (k z1 /\\ ~2 z1^2) \\/ z1^k in the MV signature."""
    if k < 1:
        raise ValueError("k must be >= 1")
    z = zvar(1)
    return Join(Meet(scalar(k, z), MVNeg(Scalar(2, Power(2, z)))), power(k, z))


def build_delta_k(k: int, sig: Signature = Signature.GROUP) -> EFDSentence:
    """delta_k: forall x exists! z with k z = x."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if sig is Signature.MV:
        raise SignatureError("delta_k lives in the group or hoop signature")
    return EFDSentence(sig, 1, 1, (((scalar(k, zvar(1))), xvar(1)),))


def build_epsilon_k(k: int) -> EFDSentence:
    """epsilon_k: forall x exists! z with t_k(z) = x."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return EFDSentence(Signature.MV, 1, 1, ((build_t_k(k), xvar(1)),))


def boolean_marker() -> Identity:
    """The identity forall x : 2x = x."""
    return Identity(Signature.MV, 1, (Scalar(2, xvar(1)), xvar(1)))


def is_boolean_marker(ident: Identity) -> bool:
    lhs, rhs = ident.equation
    return (
        isinstance(rhs, Var)
        and rhs.kind == "x"
        and (
            (isinstance(lhs, Scalar) and lhs.k == 2 and lhs.arg == rhs)
            or (isinstance(lhs, Plus) and lhs.left == rhs and lhs.right == rhs)
        )
    )


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"""\s*(?:
        (?P<forall>forall\b)
      | (?P<exists>exists!)
      | (?P<var>[xz]\d+)
      | (?P<int>\d+)
      | (?P<join>\\/)
      | (?P<meet>/\\)
      | (?P<monus>-\.)
      | (?P<op>[+\-~^()=&:])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.tokens = _tokenize(text)
        self.sig = sig
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def next(self):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1]!r}", tok[2])
        return tok

    def at_end(self) -> bool:
        return self.i >= len(self.tokens)

    # term ::= join ; precedence \/ < /\ < (+ - -.) < prefix < ^ < atom
    def term(self) -> Term:
        return self.join()

    def join(self) -> Term:
        t = self.meet()
        while self.peek()[0] == "join":
            self.next()
            t = Join(t, self.meet())
        return t

    def meet(self) -> Term:
        t = self.sum()
        while self.peek()[0] == "meet":
            self.next()
            t = Meet(t, self.sum())
        return t

    def sum(self) -> Term:
        t = self.prefix()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "+":
                self.next()
                t = Plus(t, self.prefix())
            elif kind == "op" and value == "-":
                if self.sig is not Signature.GROUP:
                    raise ParseError("binary - only admitted in group terms", pos)
                self.next()
                t = Plus(t, Neg(self.prefix()))
            elif kind == "monus":
                self.next()
                t = Diff(t, self.prefix())
            else:
                return t

    def prefix(self) -> Term:
        kind, value, pos = self.peek()
        if kind == "op" and value == "-":
            if self.sig is not Signature.GROUP:
                raise ParseError("unary - only admitted in group terms", pos)
            self.next()
            return Neg(self.prefix())
        if kind == "op" and value == "~":
            if self.sig is not Signature.MV:
                raise ParseError("~ only admitted in MV terms", pos)
            self.next()
            return MVNeg(self.prefix())
        if kind == "int" and value != "0":
            self.next()
            return Scalar(int(value), self.postfix())
        return self.postfix()

    def postfix(self) -> Term:
        t = self.atom()
        while self.peek()[0] == "op" and self.peek()[1] == "^":
            _, _, pos = self.next()
            if self.sig is not Signature.MV:
                raise ParseError("^ only admitted in MV terms", pos)
            ktok = self.expect("int")
            k = int(ktok[1])
            if k < 1:
                raise ParseError("power exponent must be >= 1", ktok[2])
            t = Power(k, t)
        return t

    def atom(self) -> Term:
        kind, value, pos = self.next()
        if kind == "int" and value == "0":
            return ZERO
        if kind == "var":
            return Var(value[0], int(value[1:]))
        if kind == "op" and value == "(":
            t = self.term()
            self.expect("op", ")")
            return t
        raise ParseError(f"unexpected token {value!r}", pos)

    def equation(self) -> tuple[Term, Term]:
        lhs = self.term()
        self.expect("op", "=")
        rhs = self.term()
        return (lhs, rhs)

    def var_block(self, kind: str) -> int:
        indices = []
        while self.peek()[0] == "var" and self.peek()[1][0] == kind:
            indices.append(int(self.next()[1][1:]))
        if indices != list(range(1, len(indices) + 1)):
            raise ParseError(f"{kind}-variables must be listed as {kind}1 {kind}2 ...")
        return len(indices)


def parse_term(text: str, sig: Signature) -> Term:
    p = _Parser(text, sig)
    t = p.term()
    if not p.at_end():
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    validate_term(t, sig)
    return t


def parse_sentence(text: str, sig: Signature) -> EFDSentence | Identity:
    """Parse ``forall x1 .. exists! z1 .. : eq & eq``.

    The forall block may be absent (n = 0); a sentence without an exists!
    block parses as an Identity.
    """
    p = _Parser(text, sig)
    n = 0
    if p.peek()[0] == "forall":
        p.next()
        n = p.var_block("x")
    m = 0
    if p.peek()[0] == "exists":
        p.next()
        m = p.var_block("z")
        if m == 0:
            raise ParseError("exists! block requires at least one z-variable")
    p.expect("op", ":")
    equations = [p.equation()]
    while p.peek()[0] == "op" and p.peek()[1] == "&":
        p.next()
        equations.append(p.equation())
    if not p.at_end():
        raise ParseError(f"trailing input {p.peek()[1]!r}", p.peek()[2])
    if m == 0:
        if len(equations) != 1:
            raise ParseError("an identity carries exactly one equation")
        return Identity(sig, n, equations[0])
    return EFDSentence(sig, n, m, tuple(equations))


# ---------------------------------------------------------------------------
# Printing

_JOIN_LVL, _MEET_LVL, _SUM_LVL, _PREFIX_LVL, _POWER_LVL, _ATOM_LVL = range(1, 7)


def _print(t: Term, min_level: int) -> str:
    if isinstance(t, Var):
        return f"{t.kind}{t.index}"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Join):
        s = f"{_print(t.left, _JOIN_LVL)} \\/ {_print(t.right, _MEET_LVL)}"
        level = _JOIN_LVL
    elif isinstance(t, Meet):
        s = f"{_print(t.left, _MEET_LVL)} /\\ {_print(t.right, _SUM_LVL)}"
        level = _MEET_LVL
    elif isinstance(t, Plus):
        s = f"{_print(t.left, _SUM_LVL)} + {_print(t.right, _PREFIX_LVL)}"
        level = _SUM_LVL
    elif isinstance(t, Diff):
        s = f"{_print(t.left, _SUM_LVL)} -. {_print(t.right, _PREFIX_LVL)}"
        level = _SUM_LVL
    elif isinstance(t, Neg):
        s = f"-{_print(t.arg, _PREFIX_LVL)}"
        level = _PREFIX_LVL
    elif isinstance(t, MVNeg):
        s = f"~{_print(t.arg, _PREFIX_LVL)}"
        level = _PREFIX_LVL
    elif isinstance(t, Scalar):
        if t.k < 0:
            # negative scalars have no literal syntax; print as negated positive
            s = f"-{_print(Scalar(-t.k, t.arg), _PREFIX_LVL)}"
        else:
            s = f"{t.k} {_print(t.arg, _POWER_LVL)}"
        level = _PREFIX_LVL
    elif isinstance(t, Power):
        s = f"{_print(t.arg, _ATOM_LVL)}^{t.k}"
        level = _POWER_LVL
    else:
        raise TypeError(f"not a term: {t!r}")
    return f"({s})" if level < min_level else s


def print_term(t: Term) -> str:
    return _print(t, _JOIN_LVL)


def print_sentence(phi: EFDSentence | Identity) -> str:
    parts = []
    if phi.n > 0:
        parts.append("forall " + " ".join(f"x{i}" for i in range(1, phi.n + 1)))
    if isinstance(phi, EFDSentence):
        parts.append("exists! " + " ".join(f"z{j}" for j in range(1, phi.m + 1)))
        eqs = phi.equations
    else:
        eqs = (phi.equation,)
    body = " & ".join(f"{print_term(a)} = {print_term(b)}" for a, b in eqs)
    return " ".join(parts) + " : " + body if parts else ": " + body


# ---------------------------------------------------------------------------
# JSON serialization (node-tagged objects)

_BINARY = {"plus": Plus, "join": Join, "meet": Meet, "diff": Diff}
_UNARY = {"neg": Neg, "mvneg": MVNeg}
_SCALED = {"scalar": Scalar, "power": Power}


def term_to_json(t: Term) -> dict:
    if isinstance(t, Var):
        return {"op": "var", "kind": t.kind, "index": t.index}
    if isinstance(t, Zero):
        return {"op": "zero"}
    for name, ctor in _BINARY.items():
        if isinstance(t, ctor):
            return {"op": name, "left": term_to_json(t.left), "right": term_to_json(t.right)}
    for name, ctor in _UNARY.items():
        if isinstance(t, ctor):
            return {"op": name, "arg": term_to_json(t.arg)}
    for name, ctor in _SCALED.items():
        if isinstance(t, ctor):
            return {"op": name, "k": t.k, "arg": term_to_json(t.arg)}
    raise TypeError(f"not a term: {t!r}")


def term_from_json(obj: dict) -> Term:
    op = obj["op"]
    if op == "var":
        return Var(obj["kind"], obj["index"])
    if op == "zero":
        return ZERO
    if op in _BINARY:
        return _BINARY[op](term_from_json(obj["left"]), term_from_json(obj["right"]))
    if op in _UNARY:
        return _UNARY[op](term_from_json(obj["arg"]))
    if op in _SCALED:
        return _SCALED[op](obj["k"], term_from_json(obj["arg"]))
    raise ParseError(f"unknown AST node tag {op!r}")


def sentence_to_json(phi: EFDSentence | Identity) -> dict:
    if isinstance(phi, Identity):
        lhs, rhs = phi.equation
        return {
            "kind": "identity",
            "signature": phi.signature.value,
            "n": phi.n,
            "equation": {"lhs": term_to_json(lhs), "rhs": term_to_json(rhs)},
        }
    return {
        "kind": "efd",
        "signature": phi.signature.value,
        "n": phi.n,
        "m": phi.m,
        "equations": [
            {"lhs": term_to_json(a), "rhs": term_to_json(b)} for a, b in phi.equations
        ],
    }


def sentence_from_json(obj: dict) -> EFDSentence | Identity:
    sig = Signature(obj["signature"])
    if obj["kind"] == "identity":
        eq = obj["equation"]
        return Identity(sig, obj["n"], (term_from_json(eq["lhs"]), term_from_json(eq["rhs"])))
    eqs = tuple(
        (term_from_json(e["lhs"]), term_from_json(e["rhs"])) for e in obj["equations"]
    )
    return EFDSentence(sig, obj["n"], obj["m"], eqs)
