"""Term algebra of the free magma on a single generator.

A term is a finite binary tree: every leaf is the generator ``1`` and every
internal node is an ordered, non-associative sum of its two children.  Terms
are immutable values; equality and hashing go through the canonical encoding,
a preorder Lukasiewicz word over ``{'1', '0'}`` (internal node = ``1``,
leaf = ``0``).  The encoding is prefix-free, so it decodes unambiguously and
gives a stable total order (by length, then lexicographically) that the
enumeration below relies on.

All operations are pure; the only shared state is the per-length
enumeration cache, whose entries are immutable tuples installed with a
single atomic dict write (concurrent first calls may duplicate work but
observe equal values).
"""

from __future__ import annotations

from typing import Iterator

from .errors import CapacityError, TermParseError

# Enumeration sizes are Catalan; length 16 already has ~9.7M terms and 18
# would have ~130M, so callers must opt in explicitly to go past this.
DEFAULT_ENUMERATION_CAP = 16

_LEAF_CODE = "0"


class Term:
    """An element of the free magma on one generator. Use :func:`leaf` and
    :func:`sum_terms` (or the ``+`` operator) to build instances."""

    __slots__ = ("left", "right", "length", "code")

    def __init__(self, left: Term | None, right: Term | None):
        if (left is None) != (right is None):
            raise ValueError("internal node needs both children")
        self.left = left
        self.right = right
        if left is None:
            self.length = 1
            self.code = _LEAF_CODE
        else:
            assert right is not None
            self.length = left.length + right.length
            self.code = "1" + left.code + right.code

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def __add__(self, other: Term) -> Term:
        if not isinstance(other, Term):
            return NotImplemented
        return sum_terms(self, other)

    def __mul__(self, other: Term) -> Term:
        if not isinstance(other, Term):
            return NotImplemented
        return product(self, other)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)

    def __lt__(self, other: Term) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return (self.length, self.code) < (other.length, other.code)

    def __repr__(self) -> str:
        return f"Term({format_term(self)})"


_LEAF = Term(None, None)


def leaf() -> Term:
    """The generator ``1``."""
    return _LEAF


def sum_terms(left: Term, right: Term) -> Term:
    """The ordered sum ``left + right`` (non-commutative, non-associative)."""
    return Term(left, right)


def length(t: Term) -> int:
    """Number of generator occurrences (leaves) in ``t``."""
    return t.length


def left_comb(n: int) -> Term:
    """The left comb of length ``n``: ``(..((1+1)+1)..)+1``."""
    if n < 1:
        raise ValueError(f"comb length must be >= 1, got {n}")
    t = _LEAF
    for _ in range(n - 1):
        t = sum_terms(t, _LEAF)
    return t


def right_comb(n: int) -> Term:
    """The right comb of length ``n``: ``1+(1+(..(1+1)..))``."""
    if n < 1:
        raise ValueError(f"comb length must be >= 1, got {n}")
    t = _LEAF
    for _ in range(n - 1):
        t = sum_terms(_LEAF, t)
    return t


def product(x: Term, y: Term) -> Term:
    """Substitute a copy of ``x`` for every leaf of ``y``.

    This is the monoid product: associative, with ``1`` as two-sided unit,
    and distributes over sums appearing in the right operand only.
    """
    if y.is_leaf:
        return x
    if x.is_leaf:
        return y
    # Iterative postorder rebuild; keeps recursion depth independent of y.
    out: list[Term] = []
    stack: list[tuple[Term, bool]] = [(y, False)]
    while stack:
        node, expanded = stack.pop()
        if node.is_leaf:
            out.append(x)
        elif expanded:
            r = out.pop()
            l = out.pop()
            out.append(sum_terms(l, r))
        else:
            stack.append((node, True))
            assert node.left is not None and node.right is not None
            stack.append((node.right, False))
            stack.append((node.left, False))
    return out[0]


def encode(t: Term) -> str:
    """Canonical preorder bitstring of ``t`` (internal = '1', leaf = '0')."""
    return t.code


def decode(bits: str) -> Term:
    """Inverse of :func:`encode`; rejects malformed input."""
    # Frames hold fully decoded left children of internal nodes still
    # waiting for their right child.
    frames: list[list[Term]] = []
    i = 0
    n = len(bits)
    while True:
        if i >= n:
            raise TermParseError(bits, i, "truncated encoding")
        ch = bits[i]
        if ch == "1":
            frames.append([])
            i += 1
            continue
        if ch != "0":
            raise TermParseError(bits, i, f"invalid character {ch!r}")
        i += 1
        cur = _LEAF
        while frames:
            top = frames[-1]
            top.append(cur)
            if len(top) == 1:
                break
            frames.pop()
            cur = sum_terms(top[0], top[1])
        else:
            if i != n:
                raise TermParseError(bits, i, "trailing input after complete term")
            return cur
        # cur consumed as a left child; continue scanning for the right one.


def format_term(t: Term) -> str:
    """Fully parenthesized additive text, e.g. ``(1+(1+1))``."""
    parts: list[str] = []
    stack: list[Term | str] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item.is_leaf:
            parts.append("1")
        else:
            assert item.left is not None and item.right is not None
            stack.extend((")", item.right, "+", item.left, "("))
    return "".join(parts)


def parse_term(text: str) -> Term:
    """Parse the fully parenthesized additive notation; inverse of
    :func:`format_term`."""
    n = len(text)
    i = 0

    def skip_ws(j: int) -> int:
        while j < n and text[j].isspace():
            j += 1
        return j

    # Frames: [] right after '(', [left] after 'left +'.
    frames: list[list[Term]] = []
    cur: Term | None = None
    while True:
        i = skip_ws(i)
        if i >= n:
            raise TermParseError(text, i, "unexpected end of input")
        ch = text[i]
        if ch == "1":
            cur = _LEAF
            i += 1
        elif ch == "(":
            frames.append([])
            i += 1
            continue
        else:
            raise TermParseError(text, i, f"expected '1' or '(', found {ch!r}")
        # Reduce: attach cur to pending frames until more input is needed.
        while True:
            i = skip_ws(i)
            if not frames:
                if i != n:
                    raise TermParseError(text, i, "trailing input after complete term")
                assert cur is not None
                return cur
            top = frames[-1]
            if not top:
                if i >= n or text[i] != "+":
                    raise TermParseError(text, i, "expected '+'")
                assert cur is not None
                top.append(cur)
                i += 1
                break  # parse the right operand
            if i >= n or text[i] != ")":
                raise TermParseError(text, i, "expected ')'")
            assert cur is not None
            cur = sum_terms(top[0], cur)
            frames.pop()
            i += 1


_level_cache: dict[int, tuple[Term, ...]] = {}


def enumerate_terms(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[Term, ...]:
    """All terms of length exactly ``n``, sorted by canonical encoding.

    The list has Catalan size C_{n-1}; lengths past ``cap`` are refused.
    Results are cached per length, so repeated calls share term objects.
    """
    if n < 1:
        raise ValueError(f"length must be >= 1, got {n}")
    if n > cap:
        raise CapacityError(
            f"enumeration of length {n} exceeds cap {cap}; pass a larger cap explicitly"
        )
    for k in range(1, n + 1):
        if k in _level_cache:
            continue
        if k == 1:
            _level_cache[1] = (_LEAF,)
            continue
        level = [
            sum_terms(x, y)
            for i in range(1, k)
            for x in _level_cache[i]
            for y in _level_cache[k - i]
        ]
        level.sort(key=lambda t: t.code)
        _level_cache[k] = tuple(level)
    return _level_cache[n]


def iter_terms_up_to(n_max: int, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Term]:
    """Terms of length 1..n_max in (length, encoding) order."""
    for k in range(1, n_max + 1):
        yield from enumerate_terms(k, cap=cap)
