"""Isomorphism-invariant algebra properties: a small expression language plus
a semantic layer of closure-type operators.

A property is a predicate on model algebras that depends only on the block
multiset and holds on the zero algebra (the latter is enforced centrally, so
negation re-adjoins the zero algebra automatically). The expression grammar:

    expr   := or ;  or := and ('|' and)* ;  and := unary ('&' unary)*
    unary  := '!' unary | primary
    primary:= '(' expr ')' | OP '(' expr ')' | atom
    OP     := G | dG | NG | dNG | R | GPi
    atom   := zero | all | comm | simple | one
            | dim<=INT | blockdim<=INT | blocks<=INT

Quantified operators are evaluated by direct enumeration of ideal index
subsets, memoized per (property, multiset); block counts are capped upstream
so the 2^b scans stay small.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError

OPS = ("G", "dG", "NG", "dNG", "R", "GPi")
PLAIN_ATOMS = ("zero", "all", "comm", "simple", "one")
BOUNDED_ATOMS = ("dim", "blockdim", "blocks")


@dataclass(frozen=True)
class Atom:
    name: str
    k: int | None = None


@dataclass(frozen=True)
class Not:
    child: object


@dataclass(frozen=True)
class BinOp:
    op: str  # '&' or '|'
    left: object
    right: object


@dataclass(frozen=True)
class OpCall:
    op: str
    child: object


# ---------------------------------------------------------------------------
# parsing


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.idx = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "()&|!":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            if ch.isalpha():
                j = i
                while j < len(text) and text[j].isalnum():
                    j += 1
                word = text[i:j]
                if word in BOUNDED_ATOMS:
                    if text[j : j + 2] != "<=":
                        raise ParseError(f"{word} needs a bound", j, ("<=",))
                    j += 2
                    k = j
                    while k < len(text) and text[k].isdigit():
                        k += 1
                    if k == j:
                        raise ParseError("missing bound", j, ("integer",))
                    self.tokens.append(("atom", Atom(word, int(text[j:k])), i))
                    i = k
                    continue
                self.tokens.append(("word", word, i))
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r}", i)
        self.tokens.append(("end", None, len(text)))

    def peek(self):
        return self.tokens[self.idx]

    def pop(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect(self, kind):
        tok = self.pop()
        if tok[0] != kind:
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], (kind,))
        return tok


def parse_property(text):
    """Parse an expression; pretty-print then re-parse is the identity."""
    lx = _Lexer(text)
    expr = _parse_or(lx)
    tok = lx.pop()
    if tok[0] != "end":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2], ("end of input",))
    return expr


def _parse_or(lx):
    node = _parse_and(lx)
    while lx.peek()[0] == "|":
        lx.pop()
        node = BinOp("|", node, _parse_and(lx))
    return node


def _parse_and(lx):
    node = _parse_unary(lx)
    while lx.peek()[0] == "&":
        lx.pop()
        node = BinOp("&", node, _parse_unary(lx))
    return node


def _parse_unary(lx):
    if lx.peek()[0] == "!":
        lx.pop()
        return Not(_parse_unary(lx))
    return _parse_primary(lx)


def _parse_primary(lx):
    kind, val, pos = lx.pop()
    if kind == "(":
        node = _parse_or(lx)
        lx.expect(")")
        return node
    if kind == "atom":
        return val
    if kind == "word":
        if val in OPS:
            lx.expect("(")
            node = _parse_or(lx)
            lx.expect(")")
            return OpCall(val, node)
        if val in PLAIN_ATOMS:
            return Atom(val)
        raise ParseError(f"unknown name {val!r}", pos, PLAIN_ATOMS + OPS)
    raise ParseError("expected an expression", pos, ("atom", "operator", "("))


def format_property(expr, _level=0):
    """Canonical text form; inverse of parse_property."""
    if isinstance(expr, Atom):
        return expr.name if expr.k is None else f"{expr.name}<={expr.k}"
    if isinstance(expr, OpCall):
        return f"{expr.op}({format_property(expr.child)})"
    if isinstance(expr, Not):
        return "!" + _wrap(expr.child, 2)
    if isinstance(expr, BinOp):
        level = 1 if expr.op == "&" else 0
        left = _wrap(expr.left, level)
        right = _wrap(expr.right, level + 1)
        return f"{left} {expr.op} {right}"
    raise TypeError(f"not a property expression: {expr!r}")


def _level(expr):
    if isinstance(expr, BinOp):
        return 1 if expr.op == "&" else 0
    if isinstance(expr, Not):
        return 2
    return 3


def _wrap(expr, need):
    text = format_property(expr)
    return text if _level(expr) >= need else f"({text})"


# ---------------------------------------------------------------------------
# semantics

_MEMO: dict = {}


class SemProp:
    """A memoized property predicate with a hashable identity key.

    True on the zero algebra by construction, so every property is reflexive
    for the subquotient relation it induces.
    """

    __slots__ = ("key", "_fn")

    def __init__(self, key, fn):
        self.key = key
        self._fn = fn

    def test(self, algebra) -> bool:
        blocks = algebra.blocks
        if not blocks:
            return True
        memo_key = (self.key, blocks)
        hit = _MEMO.get(memo_key)
        if hit is None:
            hit = bool(self._fn(algebra))
            _MEMO[memo_key] = hit
        return hit

    def __repr__(self):
        return f"SemProp({self.key!r})"


def _submasks(mask):
    """All sub-bitmasks of mask, ascending."""
    out = []
    sub = 0
    while True:
        out.append(sub)
        if sub == mask:
            return out
        sub = (sub - mask) & mask


def _has_nonzero_member_ideal(algebra, prop):
    full = (1 << algebra.num_blocks) - 1
    return any(prop.test(algebra.sub(t)) for t in _submasks(full) if t)


def op_G(prop):
    """Every nonzero quotient has a nonzero ideal with the property."""

    def fn(algebra):
        full = (1 << algebra.num_blocks) - 1
        for i in _submasks(full):
            if i == full:
                continue
            if not _has_nonzero_member_ideal(algebra.quotient(i), prop):
                return False
        return True

    return SemProp(("G", prop.key), fn)


def op_NG(prop):
    """No nonzero ideal with the property."""

    def fn(algebra):
        return not _has_nonzero_member_ideal(algebra, prop)

    return SemProp(("NG", prop.key), fn)


def op_dG(prop):
    """Every nonzero ideal has a nonzero quotient with the property."""

    def fn(algebra):
        full = (1 << algebra.num_blocks) - 1
        for j in _submasks(full):
            if not j:
                continue
            part = algebra.sub(j)
            if not any(
                prop.test(part.quotient(i))
                for i in _submasks((1 << part.num_blocks) - 1)
                if i != (1 << part.num_blocks) - 1
            ):
                return False
        return True

    return SemProp(("dG", prop.key), fn)


def op_dNG(prop):
    """No nonzero quotient with the property."""

    def fn(algebra):
        full = (1 << algebra.num_blocks) - 1
        return not any(prop.test(algebra.quotient(i)) for i in _submasks(full) if i != full)

    return SemProp(("dNG", prop.key), fn)


def op_R(prop):
    """Every irreducible image (block) has the property."""

    def fn(algebra):
        return all(prop.test(algebra.one_block(i)) for i in range(algebra.num_blocks))

    return SemProp(("R", prop.key), fn)


def op_GPi(prop):
    """Every irreducible image has a nonzero ideal with the property.

    On block models this coincides extensionally with the per-block operator:
    a single block's only nonzero ideal is itself. The suites assert the
    coincidence rather than assuming it.
    """

    def fn(algebra):
        return all(
            _has_nonzero_member_ideal(algebra.one_block(i), prop)
            for i in range(algebra.num_blocks)
        )

    return SemProp(("GPi", prop.key), fn)


def op_not(prop):
    def fn(algebra):
        return not prop.test(algebra)

    return SemProp(("!", prop.key), fn)


def op_and(left, right):
    def fn(algebra):
        return left.test(algebra) and right.test(algebra)

    return SemProp(("&", left.key, right.key), fn)


def op_or(left, right):
    def fn(algebra):
        return left.test(algebra) or right.test(algebra)

    return SemProp(("|", left.key, right.key), fn)


_OP_FN = {"G": op_G, "dG": op_dG, "NG": op_NG, "dNG": op_dNG, "R": op_R, "GPi": op_GPi}

_ATOM_FN = {
    "zero": lambda alg, k: False,  # the zero algebra short-circuits to True
    "all": lambda alg, k: True,
    "comm": lambda alg, k: all(b == 1 for b in alg.blocks),
    "simple": lambda alg, k: alg.num_blocks <= 1,
    "one": lambda alg, k: alg.blocks == (1,),
    "dim": lambda alg, k: alg.dim <= k,
    "blockdim": lambda alg, k: max(alg.blocks) <= k,
    "blocks": lambda alg, k: alg.num_blocks <= k,
}

_COMPILED: dict = {}


def compile_property(expr) -> SemProp:
    """Lower an expression to its semantic predicate (cached)."""
    if isinstance(expr, SemProp):
        return expr
    hit = _COMPILED.get(expr)
    if hit is not None:
        return hit
    if isinstance(expr, Atom):
        fn = _ATOM_FN[expr.name]
        k = expr.k
        out = SemProp(expr, lambda alg, fn=fn, k=k: fn(alg, k))
    elif isinstance(expr, Not):
        out = op_not(compile_property(expr.child))
    elif isinstance(expr, BinOp):
        combine = op_and if expr.op == "&" else op_or
        out = combine(compile_property(expr.left), compile_property(expr.right))
    elif isinstance(expr, OpCall):
        out = _OP_FN[expr.op](compile_property(expr.child))
    else:
        raise TypeError(f"not a property expression: {expr!r}")
    _COMPILED[expr] = out
    return out


def set_property(key, multisets) -> SemProp:
    """Extensional property given by an explicit set of block multisets."""
    table = frozenset(tuple(m) for m in multisets)
    return SemProp(("set", table), lambda alg: alg.blocks in table)


def same_over(prop_a, prop_b, universe):
    """Extensional comparison; returns (equal, first differing algebra)."""
    for algebra in universe:
        va, vb = prop_a.test(algebra), prop_b.test(algebra)
        if va != vb:
            return False, (algebra, va, vb)
    return True, None


def subset_over(prop_a, prop_b, universe):
    for algebra in universe:
        if prop_a.test(algebra) and not prop_b.test(algebra):
            return False, algebra
    return True, None
