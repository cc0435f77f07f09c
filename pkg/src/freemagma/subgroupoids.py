"""Subgroupoids of the free magma, described by generating data.

A subgroupoid is a subset closed under the binary sum.  Because a term
splits uniquely at its root, an element t belongs to the sum-set N+N iff
both root children of t belong to N; that single fact drives the closure,
membership and minimal-generating-set algorithms here.

Four kinds of generating data are supported: an explicit finite set of
terms, the shifted copy M+a of the whole magma, a longitudinal family (all
terms whose length lies in a numerical subsemigroup), and a raw
generator-counting sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Union

from .errors import CapacityError, UnsupportedVariantError
from .sequences import BigSeq, cat_transform, catalan_c, catalan_numbers, read_sequence_csv
from .terms import (
    DEFAULT_ENUMERATION_CAP,
    Term,
    enumerate_terms,
    format_term,
    leaf,
    parse_term,
    sum_terms,
)


@dataclass(frozen=True)
class FiniteSet:
    """Finitely many generator terms (possibly empty: the empty subgroupoid)."""

    terms: frozenset[Term]

    def __init__(self, terms: Iterable[Term]):
        tset = frozenset(terms)
        for t in tset:
            if not isinstance(t, Term):
                raise TypeError(f"generators must be Terms, got {type(t).__name__}")
        object.__setattr__(self, "terms", tset)


@dataclass(frozen=True)
class ShiftedFull:
    """The generating set M+a = {y+a : y in M}."""

    a: Term

    def __post_init__(self) -> None:
        if not isinstance(self.a, Term):
            raise TypeError("shift must be a Term")


@dataclass(frozen=True)
class Longitudinal:
    """All terms whose length lies in the numerical subsemigroup generated
    by ``lengths``."""

    lengths: frozenset[int]

    def __init__(self, lengths: Iterable[int]):
        lset = frozenset(int(v) for v in lengths)
        if not lset:
            raise ValueError("longitudinal family needs at least one length")
        if any(v < 1 for v in lset):
            raise ValueError("longitudinal lengths must be >= 1")
        object.__setattr__(self, "lengths", lset)


@dataclass(frozen=True)
class ExplicitSeq:
    """A user-supplied generator-counting sequence."""

    seq: BigSeq

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.seq):
            raise ValueError("generator counts must be >= 0")


GenFamily = Union[FiniteSet, ShiftedFull, Longitudinal, ExplicitSeq]


@dataclass(frozen=True)
class NumericalSemigroupInfo:
    gcd: int
    reduced_generators: frozenset[int]
    frobenius: int


# ---------------------------------------------------------------------------
# Closure and membership

Levels = tuple[frozenset[Term], ...]


def closure_up_to(
    gens: Iterable[Term], n_max: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Levels:
    """Per-length slices (N)_1 .. (N)_{n_max} of N = <gens>.

    Returns a tuple indexed 0..n_max whose entry k is the set of length-k
    members (entry 0 is empty).  Dynamic programming on length: a term of
    length k is in N iff it is a generator or both root children are in N.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if n_max > cap:
        raise CapacityError(f"closure horizon {n_max} exceeds cap {cap}")
    by_len: dict[int, set[Term]] = {}
    for g in gens:
        by_len.setdefault(g.length, set()).add(g)
    levels: list[frozenset[Term]] = [frozenset()]
    for k in range(1, n_max + 1):
        level = set(by_len.get(k, ()))
        for i in range(1, k):
            for x in levels[i]:
                for y in levels[k - i]:
                    level.add(sum_terms(x, y))
        levels.append(frozenset(level))
    return tuple(levels)


def _member(genset: frozenset[Term], t: Term, memo: dict[Term, bool]) -> bool:
    """Memoized membership recursion: t is in N iff t is a generator or both
    root children are in N."""
    stack = [t]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        if node.is_leaf:
            memo[node] = node in genset
            stack.pop()
            continue
        l, r = node.left, node.right
        assert l is not None and r is not None
        pending = [c for c in (l, r) if c not in memo]
        if pending:
            stack.extend(pending)
            continue
        memo[node] = node in genset or (memo[l] and memo[r])
        stack.pop()
    return memo[t]


def contains(gens: Iterable[Term], t: Term) -> bool:
    """Membership t in <gens>; terminates structurally, no horizon needed."""
    return _member(frozenset(gens), t, {})


def brute_count(
    gens: Iterable[Term], n_max: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> BigSeq:
    """Ground-truth counting oracle: enumerate every term of each length
    and count the members of <gens>.

    Deliberately independent of the transform-based counting path; shares
    one membership memo across the whole enumeration.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    genset = frozenset(gens)
    memo: dict[Term, bool] = {}
    counts = []
    for k in range(1, n_max + 1):
        cnt = 0
        for t in enumerate_terms(k, cap=cap):
            if t.is_leaf:
                m = t in genset
            else:
                m = t in genset or (memo[t.left] and memo[t.right])
            memo[t] = m
            cnt += m
        counts.append(cnt)
    return BigSeq(counts)


# ---------------------------------------------------------------------------
# Level sets per family and minimal generating sets

def family_levels(
    family: GenFamily, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Levels:
    """Per-length slices of the subgroupoid generated by ``family``.

    Only term-enumerable variants are supported (not ExplicitSeq).
    """
    if isinstance(family, FiniteSet):
        return closure_up_to(family.terms, n_max, cap=cap)
    if isinstance(family, ShiftedFull):
        if n_max > cap:
            raise CapacityError(f"horizon {n_max} exceeds cap {cap}")
        la = family.a.length
        levels: list[frozenset[Term]] = [frozenset()]
        for k in range(1, n_max + 1):
            level: set[Term] = set()
            if k > la:
                level.update(sum_terms(y, family.a) for y in enumerate_terms(k - la, cap=cap))
            for i in range(1, k):
                for x in levels[i]:
                    for y in levels[k - i]:
                        level.add(sum_terms(x, y))
            levels.append(frozenset(level))
        return tuple(levels)
    if isinstance(family, Longitudinal):
        if n_max > cap:
            raise CapacityError(f"horizon {n_max} exceeds cap {cap}")
        reachable = _reachable_lengths(family.lengths, n_max)
        empty: frozenset[Term] = frozenset()
        return tuple(
            frozenset(enumerate_terms(k, cap=cap)) if k >= 1 and reachable[k] else empty
            for k in range(n_max + 1)
        )
    raise UnsupportedVariantError(
        f"{type(family).__name__} has no term-level representation"
    )


def minimal_generators(gens: Iterable[Term]) -> frozenset[Term]:
    """The unique minimal generating set of <gens>; always a subset of gens.

    A generator is redundant iff both its root children are members, which
    the membership recursion decides on subterms alone; no closure
    enumeration (and hence no size cap) is involved.
    """
    genset = frozenset(gens)
    if not genset:
        return frozenset()
    memo: dict[Term, bool] = {}
    return frozenset(
        g
        for g in genset
        if g.is_leaf
        or not (_member(genset, g.left, memo) and _member(genset, g.right, memo))
    )


def minimal_generating_up_to(
    family: GenFamily, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> Levels:
    """Per-length slices of the minimal generating set G = N \\ (N+N),
    computed up to ``n_max``."""
    levels = family_levels(family, n_max, cap=cap)
    member: set[Term] = set()
    for lvl in levels:
        member.update(lvl)
    out: list[frozenset[Term]] = []
    for lvl in levels:
        out.append(
            frozenset(
                t
                for t in lvl
                if t.is_leaf or not (t.left in member and t.right in member)
            )
        )
    return tuple(out)


def rank_lambda(gens: Iterable[Term]) -> tuple[int, int]:
    """(rank, lambda) of <gens>: size of the minimal generating set and the
    minimum generator length."""
    minimal = minimal_generators(gens)
    if not minimal:
        raise ValueError("rank/lambda need a nonempty generating set")
    return len(minimal), min(t.length for t in minimal)


# ---------------------------------------------------------------------------
# Counting sequences

def generator_counting_sequence(family: GenFamily, n_max: int) -> BigSeq:
    """|G|_n for the minimal generating set G described by ``family``."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    if isinstance(family, FiniteSet):
        hist = [0] * n_max
        for g in minimal_generators(family.terms):
            if g.length <= n_max:
                hist[g.length - 1] += 1
        return BigSeq(hist)
    if isinstance(family, ShiftedFull):
        la = family.a.length
        entries = [0] * n_max
        if n_max > la:
            cats = catalan_numbers(n_max - la)
            for n in range(la + 1, n_max + 1):
                entries[n - 1] = cats[n - la - 1]
        return BigSeq(entries)
    if isinstance(family, ExplicitSeq):
        return family.seq.padded(n_max)
    raise UnsupportedVariantError(
        "longitudinal families have no finite generator histogram; "
        "use longitudinal_counting"
    )


def counting_sequence(family: GenFamily, n_max: int) -> BigSeq:
    """|N|_n for the subgroupoid N generated by ``family``."""
    if isinstance(family, Longitudinal):
        return longitudinal_counting(family.lengths, n_max)
    if isinstance(family, FiniteSet) and minimal_generators(family.terms) == frozenset({leaf()}):
        # <1> is the whole magma; skip the O(n^2) transform of (1,0,0,...).
        return catalan_c(n_max)
    return cat_transform(generator_counting_sequence(family, n_max))


def _reachable_lengths(lengths: frozenset[int], n_max: int) -> list[bool]:
    """reachable[n] iff n is a positive combination of the given lengths."""
    reach = [False] * (n_max + 1)
    reach[0] = True
    gens = sorted(lengths)
    for n in range(1, n_max + 1):
        reach[n] = any(n >= a and reach[n - a] for a in gens)
    reach[0] = False
    return reach


def longitudinal_counting(lengths: Iterable[int], n_max: int) -> BigSeq:
    """Counting sequence of the longitudinal subgroupoid: the full Catalan
    count at lengths inside the subsemigroup, zero elsewhere."""
    fam = Longitudinal(lengths)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    reach = _reachable_lengths(fam.lengths, n_max)
    cats = catalan_numbers(n_max)
    return BigSeq(cats[n - 1] if reach[n] else 0 for n in range(1, n_max + 1))


def semigroup_info(lengths: Iterable[int]) -> NumericalSemigroupInfo:
    """gcd, reduced generators and Frobenius number of the numerical
    subsemigroup generated by ``lengths``.

    The rank-2 case uses the closed formula ab - a - b; otherwise the
    representability scan runs until min(A') consecutive representable
    integers appear, after which everything larger is representable.
    """
    aset = sorted(frozenset(int(v) for v in lengths))
    if not aset:
        raise ValueError("need at least one generator")
    if any(v < 1 for v in aset):
        raise ValueError("generators must be >= 1")
    g = math.gcd(*aset)
    reduced = [v // g for v in aset]
    if 1 in reduced:
        return NumericalSemigroupInfo(g, frozenset(reduced), -1)
    if len(reduced) == 2:
        a, b = reduced
        return NumericalSemigroupInfo(g, frozenset(reduced), a * b - a - b)
    smallest = reduced[0]
    reach = [True]  # index 0
    run = 0
    frob = 0
    n = 0
    while run < smallest:
        n += 1
        if n >= len(reach):
            reach.append(False)
        ok = any(n >= a and reach[n - a] for a in reduced)
        reach[n] = ok
        if ok:
            run += 1
        else:
            run = 0
            frob = n
    return NumericalSemigroupInfo(g, frozenset(reduced), frob)


# ---------------------------------------------------------------------------
# Text syntax for generating families

def parse_family(text: str) -> GenFamily:
    """Parse the CLI family syntax.

    ``full`` | ``finite:[(1+1),(1+(1+1))]`` | ``shifted:(1+1)`` |
    ``longitudinal:[2,3]`` | ``seq:[0,1,1]`` | ``seqfile:path.csv``
    """
    text = text.strip()
    if text == "full":
        return FiniteSet({leaf()})
    kind, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"family spec needs 'kind:...', got {text!r}")
    kind = kind.strip()
    body = body.strip()
    if kind == "finite":
        items = _split_bracketed(body, text)
        return FiniteSet(parse_term(item) for item in items)
    if kind == "shifted":
        return ShiftedFull(parse_term(body))
    if kind == "longitudinal":
        items = _split_bracketed(body, text)
        if not items:
            raise ValueError(f"longitudinal family needs lengths: {text!r}")
        return Longitudinal(int(item) for item in items)
    if kind == "seq":
        items = _split_bracketed(body, text)
        return ExplicitSeq(BigSeq(int(item) for item in items))
    if kind == "seqfile":
        if not Path(body).is_file():
            raise ValueError(f"sequence file not found: {body!r}")
        return ExplicitSeq(read_sequence_csv(body))
    raise ValueError(f"unknown family kind {kind!r} in {text!r}")


def format_family(family: GenFamily) -> str:
    """Canonical text form; inverse of :func:`parse_family` (files become
    inline ``seq:[...]``)."""
    if isinstance(family, FiniteSet):
        inner = ",".join(format_term(t) for t in sorted(family.terms))
        return f"finite:[{inner}]"
    if isinstance(family, ShiftedFull):
        return f"shifted:{format_term(family.a)}"
    if isinstance(family, Longitudinal):
        return f"longitudinal:[{','.join(str(v) for v in sorted(family.lengths))}]"
    if isinstance(family, ExplicitSeq):
        return f"seq:[{','.join(str(v) for v in family.seq)}]"
    raise TypeError(f"not a GenFamily: {family!r}")


def _split_bracketed(body: str, full_text: str) -> list[str]:
    """Split ``[a,b,c]`` on top-level commas (parentheses may nest)."""
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"expected bracketed list in {full_text!r}")
    inner = body[1:-1].strip()
    if not inner:
        return []
    items = []
    depth = 0
    start = 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {full_text!r}")
        elif ch == "," and depth == 0:
            items.append(inner[start:i].strip())
            start = i + 1
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {full_text!r}")
    items.append(inner[start:].strip())
    return items
