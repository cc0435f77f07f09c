"""Exact big-integer sequence kernels.

Everything in this module is exact: Catalan and Motzkin numbers, the
quadratic transform that turns a generator-counting sequence into a
subgroupoid-counting sequence, the multinomial counting formula, truncated
power-series verification and the classic Catalan/Motzkin binomial
identities.  No floating point, no rounding; divisions assert exactness.

Sequences are 1-indexed (:class:`BigSeq`), matching the length grading of
the term algebra, so ``catalan_c(n)[k]`` is the number of terms of length
``k``, i.e. the (k-1)-th Catalan number.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from math import comb, factorial, prod
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

from .errors import ExactDivisionError
from .reporting import CheckReport

Rational = Union[int, Fraction]


class BigSeq:
    """Immutable 1-indexed sequence of exact integers."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[int]):
        vals = tuple(entries)
        for v in vals:
            if not isinstance(v, int) or isinstance(v, bool):
                raise TypeError(f"BigSeq entries must be int, got {type(v).__name__}")
        self._entries = vals

    @property
    def entries(self) -> tuple[int, ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= len(self._entries):
            raise IndexError(f"index {n} outside 1..{len(self._entries)}")
        return self._entries[n - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self._entries)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BigSeq):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._entries)

    def prefix(self, k: int) -> "BigSeq":
        return BigSeq(self._entries[:k])

    def padded(self, n_max: int) -> "BigSeq":
        """Zero-extend (or truncate) to horizon ``n_max``."""
        if len(self._entries) >= n_max:
            return BigSeq(self._entries[:n_max])
        return BigSeq(self._entries + (0,) * (n_max - len(self._entries)))

    def __repr__(self) -> str:
        shown = ", ".join(str(v) for v in self._entries[:8])
        more = ", ..." if len(self._entries) > 8 else ""
        return f"BigSeq([{shown}{more}], len={len(self._entries)})"


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ExactDivisionError(f"{num} not divisible by {den}")
    return q


def catalan_numbers(count: int) -> list[int]:
    """[C_0, C_1, ..., C_{count-1}] via the exact ratio recurrence."""
    if count <= 0:
        return []
    out = [1]
    for n in range(count - 1):
        out.append(_exact_div(out[-1] * 2 * (2 * n + 1), n + 2))
    return out


def catalan_c(n_max: int) -> BigSeq:
    """Counting sequence of the full magma: entry n is C_{n-1}."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return BigSeq(catalan_numbers(n_max))


def free_magma_counting(n_max: int, alphabet_size: int = 1) -> BigSeq:
    """Counting sequence of the free magma on ``alphabet_size`` generators:
    entry n is C_{n-1} * alphabet_size^n.

    Alphabets beyond one generator exist here only through this formula;
    their terms are never materialized.
    """
    if alphabet_size < 1:
        raise ValueError(f"alphabet size must be >= 1, got {alphabet_size}")
    cats = catalan_c(n_max)
    return BigSeq(cats[n] * alphabet_size**n for n in range(1, n_max + 1))


def cat_transform(a: BigSeq) -> BigSeq:
    """Quadratic transform b_1 = a_1, b_n = a_n + sum_{i+j=n, 0<i,j<n} b_i b_j.

    Turns the counting sequence of a minimal generating set into the
    counting sequence of the subgroupoid it generates.  Schoolbook O(n^2)
    convolution (halved by symmetry); exact integers throughout.
    """
    n_max = len(a)
    if n_max == 0:
        return BigSeq(())
    b = [0] * (n_max + 1)
    src = a.entries
    b[1] = src[0]
    for n in range(2, n_max + 1):
        s = 0
        for i in range(1, (n - 1) // 2 + 1):
            s += b[i] * b[n - i]
        s += s
        if n % 2 == 0:
            h = b[n // 2]
            s += h * h
        b[n] = src[n - 1] + s
    return BigSeq(b[1:])


def cat_transform_signed(a: Sequence[Rational]) -> list[Fraction]:
    """Same recurrence over exact rationals.

    Exists to exercise the scaling law Cat(alpha^n a_n) = alpha^n Cat(a_n)
    and its signed special case for alpha outside the integers.
    """
    n_max = len(a)
    b: list[Fraction] = [Fraction(0)] * (n_max + 1)
    if n_max >= 1:
        b[1] = Fraction(a[0])
    for n in range(2, n_max + 1):
        s = Fraction(0)
        for i in range(1, n):
            s += b[i] * b[n - i]
        b[n] = Fraction(a[n - 1]) + s
    return b[1:]


def motzkin_numbers(count: int) -> list[int]:
    """[M_0, M_1, ..., M_{count-1}] via M_{n+1} = M_n + sum M_k M_{n-1-k}."""
    if count <= 0:
        return []
    out = [1]
    for n in range(count - 1):
        s = out[n]
        for k in range(n):
            s += out[k] * out[n - 1 - k]
        out.append(s)
    return out


def motzkin(n_max: int) -> BigSeq:
    """Shifted Motzkin sequence: entry n is M_{n-1}."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return BigSeq(motzkin_numbers(n_max))


# The second binomial identity is printed in the literature with the Catalan
# index off by two; the exact-table scan below pins the offset that actually
# holds: C_{n+1} = sum_k binom(n, k) M_k.
MOTZKIN_TO_CATALAN_OFFSET = 1


def catalan_motzkin_offset_scan(n_max: int, offsets: Iterable[int] = (-1, 0, 1)) -> list[int]:
    """Offsets o for which C_{n+o} = sum_{k<=n} binom(n,k) M_k holds for all
    valid n <= n_max."""
    cats = catalan_numbers(n_max + 2)
    mots = motzkin_numbers(n_max + 1)
    good = []
    for o in offsets:
        ok = True
        for n in range(max(0, -o), n_max + 1):
            if sum(comb(n, k) * mots[k] for k in range(n + 1)) != cats[n + o]:
                ok = False
                break
        if ok:
            good.append(o)
    return good


def catalan_motzkin_identities(n_max: int) -> CheckReport:
    """Entry-wise check of both Catalan/Motzkin binomial identities.

    Identity 1: M_n = sum_{k<=n/2} binom(n,2k) C_k.
    Identity 2: C_{n+1} = sum_{k<=n} binom(n,k) M_k (verified offset).
    """
    cats = catalan_numbers(n_max + 2)
    mots = motzkin_numbers(n_max + 1)
    for n in range(n_max + 1):
        lhs = sum(comb(n, 2 * k) * cats[k] for k in range(n // 2 + 1))
        if lhs != mots[n]:
            return CheckReport(
                name="catalan-motzkin-identities",
                passed=False,
                details=f"M_n = sum binom(n,2k) C_k fails at n={n}",
                first_failure=n,
            )
        rhs = sum(comb(n, k) * mots[k] for k in range(n + 1))
        if rhs != cats[n + MOTZKIN_TO_CATALAN_OFFSET]:
            return CheckReport(
                name="catalan-motzkin-identities",
                passed=False,
                details=f"C_(n+{MOTZKIN_TO_CATALAN_OFFSET}) = sum binom(n,k) M_k fails at n={n}",
                first_failure=n,
            )
    return CheckReport(
        name="catalan-motzkin-identities",
        passed=True,
        details=f"both identities hold for 0 <= n <= {n_max} "
        f"(Catalan offset +{MOTZKIN_TO_CATALAN_OFFSET})",
    )


def multinomial_count(alphas: Sequence[int], n: int) -> int:
    """Number of length-n elements of the subgroupoid whose minimal
    generators have the given lengths (with multiplicity).

    Sums multinomial(q_1..q_r) * c_{q_1+..+q_r} over all nonnegative
    solutions of alpha_1 q_1 + ... + alpha_r q_r = n with some q_i > 0.
    Generators are grouped by length: h parallel generators of one length
    contribute a factor h^{s} for s leaves assigned to that length, which
    is an exact regrouping of the per-generator sum.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not alphas:
        return 0
    if any(a < 1 for a in alphas):
        raise ValueError("generator lengths must be >= 1")
    mult: dict[int, int] = {}
    for a in alphas:
        mult[a] = mult.get(a, 0) + 1
    lengths = sorted(mult)
    k_cap = n // min(lengths)
    cats = [0] + catalan_numbers(k_cap)  # cats[k] = c_k = C_{k-1}, c_0 = 0

    total = 0
    counts: list[int] = []

    def descend(idx: int, remaining: int) -> None:
        nonlocal total
        if idx == len(lengths):
            if remaining != 0:
                return
            k = sum(counts)
            if k == 0:
                return
            coeff = _exact_div(factorial(k), prod(factorial(s) for s in counts))
            weight = prod(mult[lengths[i]] ** counts[i] for i in range(len(counts)))
            total += coeff * weight * cats[k]
            return
        step = lengths[idx]
        for s in range(remaining // step + 1):
            counts.append(s)
            descend(idx + 1, remaining - s * step)
            counts.pop()

    descend(0, n)
    return total


def _series_mul(xs: Sequence[int], ys: Sequence[int], order: int) -> list[int]:
    """Truncated product of dense coefficient vectors (index = power)."""
    out = [0] * (order + 1)
    for i, xi in enumerate(xs[: order + 1]):
        if xi == 0:
            continue
        for j in range(min(len(ys), order + 1 - i)):
            yj = ys[j]
            if yj:
                out[i + j] += xi * yj
    return out


def series_identity_check(a: BigSeq, order: int = 64) -> CheckReport:
    """Verify Psi = Psi^2 + Phi coefficient-wise, where Phi is the ordinary
    generating function of ``a`` (constant term 0) and Psi that of its
    transform.

    The series square is an independent schoolbook product, so this
    cross-checks the transform's internal convolution.
    """
    eff = min(order, len(a))
    phi = [0] + list(a.entries[:eff])
    psi = [0] + list(cat_transform(a.prefix(eff)).entries)
    psi_sq = _series_mul(psi, psi, eff)
    for n in range(eff + 1):
        if psi[n] != psi_sq[n] + phi[n]:
            return CheckReport(
                name="series-identity",
                passed=False,
                details=f"Psi != Psi^2 + Phi at order {n}",
                first_failure=n,
            )
    return CheckReport(
        name="series-identity",
        passed=True,
        details=f"Psi = Psi^2 + Phi holds to order {eff}",
    )


# Rational enclosure of pi, 40 significant digits (truncation < true value).
PI_LOWER = Fraction(3141592653589793238462643383279502884197, 10**39)
PI_UPPER = PI_LOWER + Fraction(1, 10**39)


def catalan_bounds_check(n_max: int) -> CheckReport:
    """Exact verification of the Catalan bounds.

    Weak form (for 4 <= n <= n_max): 4^n / (n+1)^2 < C_n < 4^n, checked in
    integer arithmetic.  Sharp form (for 1 <= n <= n_max):

        4^n / ((n+1) sqrt(pi n 4n/(4n-1))) < C_n < 4^n / ((n+1) sqrt(pi n (4n+1)/(4n)))

    checked by squaring both sides over exact rationals, with pi replaced
    by a rational enclosure (lower bound proves the left inequality, upper
    bound the right one).
    """
    cats = catalan_numbers(n_max + 1)
    for n in range(4, n_max + 1):
        c = cats[n]
        p4 = 4**n
        if not (p4 < c * (n + 1) ** 2 and c < p4):
            return CheckReport(
                name="catalan-bounds",
                passed=False,
                details=f"weak bound fails at n={n}",
                first_failure=n,
            )
    for n in range(1, n_max + 1):
        c2 = Fraction(cats[n] ** 2 * (n + 1) ** 2)
        p16 = Fraction(4 ** (2 * n))
        lower_ok = p16 < c2 * PI_LOWER * n * Fraction(4 * n, 4 * n - 1)
        upper_ok = c2 * PI_UPPER * n * Fraction(4 * n + 1, 4 * n) < p16
        if not (lower_ok and upper_ok):
            return CheckReport(
                name="catalan-bounds",
                passed=False,
                details=f"sharp bound fails at n={n}",
                first_failure=n,
            )
    return CheckReport(
        name="catalan-bounds",
        passed=True,
        details=f"weak bounds (4..{n_max}) and sharp bounds (1..{n_max}) hold",
    )


def write_sequence_csv(path: str | Path, seq: BigSeq) -> None:
    """Write ``n,value`` rows; values are exact decimal strings."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "value"])
        for n, v in enumerate(seq, start=1):
            writer.writerow([n, str(v)])


def read_sequence_csv(path: str | Path) -> BigSeq:
    """Inverse of :func:`write_sequence_csv`; accepts ``n`` or ``index`` as
    the first header field and requires consecutive indices from 1."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2 or header[0].strip().lower() not in ("n", "index"):
            raise ValueError(f"{path}: expected header 'n,value'")
        values = []
        for row_no, row in enumerate(reader, start=1):
            if not row:
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: malformed row {row_no}")
            if int(row[0]) != len(values) + 1:
                raise ValueError(f"{path}: non-consecutive index at row {row_no}")
            values.append(int(row[1]))
    return BigSeq(values)
