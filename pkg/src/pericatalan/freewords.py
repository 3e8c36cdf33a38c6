"""Term-level model of free quasigroup words.

Words are binary trees: a leaf is a generator index (int, 1-based), a
node is a tuple (op, left, right) with op one of six operation symbols.
Basic trees use only {*, \\, /}; full trees admit the three opposites
{@, \\\\, //} as well.

The six symbols carry the right regular S3 structure: each op is tagged
with a permutation g, the denoted operation being the g-conjugate of
multiplication.  Left multiplication by sigma (swap of the first two
points) turns an operation into its opposite; left multiplication by
tau (swap of the last two) gives the partner operation whose
composition cancels:  x op2 (x op1 y) = y  whenever op2 is the cancel
partner of op1, up to nodal swaps of either node.

A word is reduced when no subtree matches one of the six cancelation
patterns

    A*(A\\B)   A\\(A*B)   (B/A)*A   (B*A)/A   A/(B\\A)   (A/B)\\A

with the repeated subterm A matched by structural equality.  is_reduced
checks these patterns directly (basic trees only); is_reduced_triality
derives the same answer from the cancel-partner relation plus nodal
swaps, and also accepts full trees.

Nodal equivalence: swapping the children of any node while replacing
its operation with the opposite leaves the denoted element fixed.  The
orbit of an n-leaf word has exactly 2^(n-1) members and contains one
basic word, recovered by normalize_full.
"""

from dataclasses import dataclass

from .enumeration import word_count_bound
from .errors import DomainError, ResourceGuardError, WordSyntaxError

MAX_ENUM_LENGTH = 8
ENUM_BUDGET = 10**8
MAX_CLASS_LENGTH = 16

_IDENTITY = (0, 1, 2)
_SIGMA = (1, 0, 2)
_TAU = (0, 2, 1)


def _compose(a, b):
    # apply b first, then a
    return (a[b[0]], a[b[1]], a[b[2]])


class OpSymbol:
    """One of the six operation symbols; module-level singletons.

    perm is the S3 tag; composition of symbols composes tags.  opposite
    and cancel hold the prewired sigma- and tau-translates.
    """

    __slots__ = ("perm", "name", "glyph", "is_basic", "opposite", "cancel")

    def __init__(self, perm, name, glyph):
        self.perm = perm
        self.name = name
        self.glyph = glyph
        self.is_basic = False
        self.opposite = None
        self.cancel = None

    def __mul__(self, other):
        if not isinstance(other, OpSymbol):
            return NotImplemented
        return _OP_BY_PERM[_compose(self.perm, other.perm)]

    def __repr__(self):
        return f"<op {self.name}>"


MUL = OpSymbol(_IDENTITY, "mul", "*")
LDIV = OpSymbol(_TAU, "ldiv", "\\")
RDIV = OpSymbol(_compose(_SIGMA, _compose(_TAU, _SIGMA)), "rdiv", "/")
OMUL = OpSymbol(_SIGMA, "omul", "@")
OLDIV = OpSymbol(_compose(_SIGMA, _TAU), "oldiv", "\\\\")
ORDIV = OpSymbol(_compose(_TAU, _SIGMA), "ordiv", "//")

BASIC_OPS = (MUL, LDIV, RDIV)
ALL_OPS = (MUL, LDIV, RDIV, OMUL, OLDIV, ORDIV)
_OP_BY_PERM = {op.perm: op for op in ALL_OPS}

for _op in ALL_OPS:
    _op.is_basic = _op in BASIC_OPS
    _op.opposite = _OP_BY_PERM[_compose(_SIGMA, _op.perm)]
    _op.cancel = _OP_BY_PERM[_compose(_TAU, _op.perm)]
del _op


@dataclass(frozen=True)
class OpAlgebra:
    opposite: OpSymbol
    cancel_partner: OpSymbol


def op_algebra(op: OpSymbol) -> OpAlgebra:
    """The sigma- and tau-translates of op."""
    return OpAlgebra(opposite=op.opposite, cancel_partner=op.cancel)


def leaf_count(w) -> int:
    if type(w) is int:
        return 1
    return leaf_count(w[1]) + leaf_count(w[2])


def is_basic_tree(w) -> bool:
    if type(w) is int:
        return True
    return w[0].is_basic and is_basic_tree(w[1]) and is_basic_tree(w[2])


def _guard_enum(s, n, max_length, budget):
    if s < 1 or n < 1:
        raise DomainError(f"enumeration needs s >= 1 and n >= 1, got s={s} n={n}")
    if n > max_length:
        raise ResourceGuardError(f"word length {n} exceeds limit {max_length}")
    cost = word_count_bound(s, n)
    if cost > budget:
        raise ResourceGuardError(f"enumeration of {cost} trees exceeds budget {budget}")


def _pools(s, up_to):
    # All basic trees of each leaf count 1..up_to, in the fixed stream
    # order: split point, then root op, then left subtree, then right.
    pools = {1: list(range(1, s + 1))}
    for m in range(2, up_to + 1):
        bucket = []
        for a in range(1, m):
            left, right = pools[a], pools[m - a]
            for op in BASIC_OPS:
                for x in left:
                    for y in right:
                        bucket.append((op, x, y))
        pools[m] = bucket
    return pools


def enumerate_basic_trees(s: int, n: int, max_length: int = MAX_ENUM_LENGTH, budget: int = ENUM_BUDGET):
    """Stream of every basic tree with n leaves on s generators.

    Deterministic order; total count 3^(n-1) * s^n * catalan(n).
    Budget and length guards fire before the first tree is produced.
    """
    _guard_enum(s, n, max_length, budget)
    return _tree_stream(s, n)


def _tree_stream(s, n):
    if n == 1:
        yield from range(1, s + 1)
        return
    pools = _pools(s, n - 1)
    for a in range(1, n):
        left, right = pools[a], pools[n - a]
        for op in BASIC_OPS:
            for x in left:
                for y in right:
                    yield (op, x, y)


def _basic_root_match(op, u, v):
    # Does (op, u, v) match one of the six patterns at its root?
    if op is MUL:
        if type(v) is tuple and v[0] is LDIV and v[1] == u:
            return True  # A*(A\B)
        if type(u) is tuple and u[0] is RDIV and u[2] == v:
            return True  # (B/A)*A
    elif op is LDIV:
        if type(v) is tuple and v[0] is MUL and v[1] == u:
            return True  # A\(A*B)
        if type(u) is tuple and u[0] is RDIV and u[1] == v:
            return True  # (A/B)\A
    else:
        if type(u) is tuple and u[0] is MUL and u[2] == v:
            return True  # (B*A)/A
        if type(v) is tuple and v[0] is LDIV and v[2] == u:
            return True  # A/(B\A)
    return False


def is_reduced(w) -> bool:
    """True iff no subtree of the basic tree w matches a cancelation
    pattern.  Assumes basic annotations; normalize full trees first."""
    if type(w) is int:
        return True
    op, u, v = w
    return is_reduced(u) and is_reduced(v) and not _basic_root_match(op, u, v)


def _nodally_equal(x, y):
    if x == y:
        return True
    return normalize_full(x) == normalize_full(y)


def _triality_root_match(op, u, v):
    # Cancelation at the root, found through the operation algebra: the
    # right child cancels when its op is the cancel partner of op and
    # its left child repeats u (or the nodally swapped reading of that),
    # and symmetrically for the left child under the opposite root.
    cancel = op.cancel
    if type(v) is tuple:
        h = v[0]
        if h is cancel and _nodally_equal(v[1], u):
            return True
        if h.opposite is cancel and _nodally_equal(v[2], u):
            return True
    cancel_opp = op.opposite.cancel
    if type(u) is tuple:
        h = u[0]
        if h is cancel_opp and _nodally_equal(u[1], v):
            return True
        if h.opposite is cancel_opp and _nodally_equal(u[2], v):
            return True
    return False


def is_reduced_triality(w) -> bool:
    """Reducedness derived from the S3 operation algebra; accepts both
    basic and full trees, with repeated subterms compared up to nodal
    equivalence.  Agrees with is_reduced on basic trees."""
    if type(w) is int:
        return True
    op, u, v = w
    if not (is_reduced_triality(u) and is_reduced_triality(v)):
        return False
    return not _triality_root_match(op, u, v)


def count_reduced(s: int, n: int, max_length: int = MAX_ENUM_LENGTH, budget: int = ENUM_BUDGET) -> int:
    """Brute-force reduced-word count: enumerate every basic tree and
    test each one.  Independent of the counting formulas."""
    _guard_enum(s, n, max_length, budget)
    if n == 1:
        return s
    pools = _pools(s, n - 1)
    red = is_reduced
    total = 0
    for a in range(1, n):
        left, right = pools[a], pools[n - a]
        for op in BASIC_OPS:
            for x in left:
                for y in right:
                    if red((op, x, y)):
                        total += 1
    return total


def count_reduced_rooted(
    s: int, a: int, b: int, root: OpSymbol, max_length: int = MAX_ENUM_LENGTH, budget: int = ENUM_BUDGET
) -> int:
    """Reduced trees joining an a-leaf and a b-leaf basic subtree under
    a fixed root operation, any of the six.  An opposite root is tested
    through its basic nodal representative."""
    if not isinstance(root, OpSymbol):
        raise DomainError(f"root must be an OpSymbol, got {root!r}")
    if s < 1 or a < 1 or b < 1:
        raise DomainError(f"count_reduced_rooted needs s, a, b >= 1, got s={s} a={a} b={b}")
    if a + b > max_length:
        raise ResourceGuardError(f"word length {a + b} exceeds limit {max_length}")
    pairs = word_count_bound(s, a) * word_count_bound(s, b)
    if pairs > budget:
        raise ResourceGuardError(f"{pairs} candidate pairs exceed budget {budget}")
    pools = _pools(s, max(a, b))
    basic = root.is_basic
    op = root if basic else root.opposite
    total = 0
    for x in pools[a]:
        for y in pools[b]:
            t = (op, x, y) if basic else (op, y, x)
            if is_reduced(t):
                total += 1
    return total


def _orbit(w):
    if type(w) is int:
        return {w}
    op, u, v = w
    out = set()
    opp = op.opposite
    for x in _orbit(u):
        for y in _orbit(v):
            out.add((op, x, y))
            out.add((opp, y, x))
    return out


def nodal_class(w, max_length: int = MAX_CLASS_LENGTH) -> set:
    """Orbit of w under all node swaps: exactly 2^(n-1) full trees."""
    n = leaf_count(w)
    if n > max_length:
        raise ResourceGuardError(f"nodal class of a length-{n} word has 2^{n - 1} members, over the {max_length}-leaf limit")
    return _orbit(w)


def normalize_full(f):
    """The unique basic tree nodally equivalent to f.  Swaps every node
    carrying an opposite operation; returns basic input unchanged."""
    if type(f) is int:
        return f
    op, u, v = f
    nu = normalize_full(u)
    nv = normalize_full(v)
    if op.is_basic:
        if nu is u and nv is v:
            return f
        return (op, nu, nv)
    return (op.opposite, nv, nu)


_PARSE_OPS = {"*": MUL, "\\": LDIV, "/": RDIV}


def format_word(w) -> str:
    """Canonical text: generators a..z (a<i> past 26), every compound
    fully parenthesized.  Full-tree glyphs @ \\\\ // are emitted but not
    part of the input grammar."""
    if type(w) is int:
        if w <= 26:
            return chr(96 + w)
        return f"a{w}"
    op, u, v = w
    return f"({format_word(u)}{op.glyph}{format_word(v)})"


def parse_word(text: str, s: int | None = None):
    """Parse canonical word text back into a basic tree.

    Grammar: word := generator | '(' word OP word ')' with OP one of
    * / \\; generators are letters a..z or a<index>.  If s is given,
    generator indices above s are rejected.
    """
    pos = 0
    size = len(text)

    def skip():
        nonlocal pos
        while pos < size and text[pos] == " ":
            pos += 1

    def fail(msg, at):
        raise WordSyntaxError(f"{msg} at position {at + 1}")

    def word():
        nonlocal pos
        skip()
        if pos >= size:
            fail("unexpected end of input", pos)
        c = text[pos]
        if c == "(":
            start = pos
            pos += 1
            left = word()
            skip()
            if pos >= size or text[pos] not in _PARSE_OPS:
                fail("expected operator * / \\", pos)
            op = _PARSE_OPS[text[pos]]
            pos += 1
            right = word()
            skip()
            if pos >= size or text[pos] != ")":
                fail(f"missing ')' for '(' opened at position {start + 1}", pos)
            pos += 1
            return (op, left, right)
        if "a" <= c <= "z":
            start = pos
            pos += 1
            while pos < size and text[pos].isdigit():
                pos += 1
            tok = text[start:pos]
            if len(tok) == 1:
                idx = ord(tok) - 96
            elif tok[0] == "a":
                idx = int(tok[1:])
            else:
                fail(f"unknown generator {tok!r}", start)
            if idx < 1 or (s is not None and idx > s):
                fail(f"unknown generator {tok!r}", start)
            return idx
        fail(f"unexpected character {c!r}", pos)

    w = word()
    skip()
    if pos != size:
        fail(f"trailing input {text[pos:]!r}", pos)
    return w
