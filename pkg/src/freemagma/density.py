"""Growth sequences, density ratio traces and their acceleration.

The density of a nested pair of subgroupoids is the limit of the ratio of
their growth (cumulative counting) sequences.  Ratios are exact big-integer
quotients converted to fixed-precision decimals only at the boundary;
Aitken's delta-squared process then extrapolates the slowly converging
trace.  Longitudinal families have no density: their ratio trace settles
into a periodic pattern, which the estimator detects and reports per
residue class together with the exact closed-form asymptotes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .reporting import CheckReport
from .sequences import BigSeq, catalan_numbers
from .subgroupoids import (
    GenFamily,
    closure_up_to,
    counting_sequence,
    format_family,
    longitudinal_counting,
    rank_lambda,
    semigroup_info,
)
from .terms import Term, product

DEFAULT_DECIMAL_DIGITS = 30


def growth(a: BigSeq) -> BigSeq:
    """Cumulative sums: entry n is a_1 + ... + a_n."""
    out = []
    acc = 0
    for v in a:
        acc += v
        out.append(acc)
    return BigSeq(out)


@dataclass(frozen=True)
class RatioTrace:
    """Growth-ratio samples (n, value) plus indices skipped for zero
    denominators."""

    samples: tuple[tuple[int, Decimal], ...]
    skipped: tuple[int, ...]
    precision: int

    def values(self) -> list[Decimal]:
        return [v for _, v in self.samples]


def ratio_trace(
    numer: BigSeq, denom: BigSeq, precision: int = DEFAULT_DECIMAL_DIGITS
) -> RatioTrace:
    """Ratios of growth sequences of two counting sequences.

    Each sample is the exact rational |N|_<=n / |M|_<=n rounded half-even
    to ``precision`` significant digits.  Indices where the denominator
    growth is still zero are skipped and flagged.
    """
    horizon = min(len(numer), len(denom))
    samples: list[tuple[int, Decimal]] = []
    skipped: list[int] = []
    gn = 0
    gm = 0
    with localcontext() as ctx:
        ctx.prec = precision
        ctx.rounding = ROUND_HALF_EVEN
        for n in range(1, horizon + 1):
            gn += numer[n]
            gm += denom[n]
            if gm == 0:
                skipped.append(n)
                continue
            samples.append((n, Decimal(gn) / Decimal(gm)))
    return RatioTrace(tuple(samples), tuple(skipped), precision)


def aitken(
    xs: Sequence[Decimal],
    precision: int = DEFAULT_DECIMAL_DIGITS,
    eps: Decimal | None = None,
) -> list[Decimal | None]:
    """Aitken delta-squared acceleration.

    y_n = (x_n x_{n+2} - x_{n+1}^2) / (x_n + x_{n+2} - 2 x_{n+1}); entries
    whose denominator is below ``eps`` in absolute value are emitted as
    None (skipped) rather than divided.
    """
    if eps is None:
        eps = Decimal(10) ** -(max(precision - 6, 2))
    out: list[Decimal | None] = []
    with localcontext() as ctx:
        ctx.prec = precision
        ctx.rounding = ROUND_HALF_EVEN
        for i in range(len(xs) - 2):
            x0, x1, x2 = xs[i], xs[i + 1], xs[i + 2]
            den = x0 + x2 - 2 * x1
            if abs(den) < eps:
                out.append(None)
                continue
            out.append((x0 * x2 - x1 * x1) / den)
    return out


class NullDensityVerdict(Enum):
    NULL_BY_THEOREM = "null-by-theorem"
    INCONCLUSIVE = "inconclusive"


def fg_null_density_test(gens: Iterable[Term]) -> NullDensityVerdict:
    """Nullity criterion for finitely generated subgroupoids.

    Null density is certified when rank < 4^(lambda - 1) for the minimal
    generating set; otherwise the test says nothing (it never certifies
    positive density).
    """
    rank, lam = rank_lambda(gens)
    if rank < 4 ** (lam - 1):
        return NullDensityVerdict.NULL_BY_THEOREM
    return NullDensityVerdict.INCONCLUSIVE


@dataclass(frozen=True)
class LongitudinalAsymptote:
    """Exact per-residue growth-ratio limits of a longitudinal family."""

    p: int
    per_residue: tuple[Fraction, ...]

    def mean(self) -> Fraction:
        return sum(self.per_residue, Fraction(0)) / len(self.per_residue)


def longitudinal_asymptote(lengths: Iterable[int]) -> LongitudinalAsymptote:
    """Closed-form ratio asymptotes: residue r of p = gcd(lengths) tends to
    3 / (4^(r+1) (1 - 4^-p))."""
    lset = sorted(set(int(v) for v in lengths))
    if not lset or any(v < 1 for v in lset):
        raise ValueError("lengths must be a nonempty set of positive integers")
    p = math.gcd(*lset)
    scale = 1 - Fraction(1, 4**p)
    residues = tuple(Fraction(3, 4 ** (r + 1)) / scale for r in range(p))
    return LongitudinalAsymptote(p, residues)


def longitudinal_convergence_check(
    lengths: Iterable[int], n_max: int, tolerance: float
) -> CheckReport:
    """Empirical ratio trace vs. the exact asymptote, per residue class.

    Also checks the supporting limit c_{kp} / (c_p + ... + c_{kp}) ->
    1 - 4^-p at the horizon.  All comparisons are exact rationals against
    the given tolerance.
    """
    lset = sorted(set(int(v) for v in lengths))
    asym = longitudinal_asymptote(lset)
    p = asym.p
    info = semigroup_info(lset)
    if n_max <= p * max(info.frobenius, 0):
        raise ValueError(
            f"n_max={n_max} too small: need n_max > {p * max(info.frobenius, 0)}"
        )
    counting = longitudinal_counting(lset, n_max)
    cats = catalan_numbers(n_max)
    tol = Fraction(str(tolerance))
    gl = 0
    gm = 0
    latest: dict[int, Fraction] = {}
    for n in range(1, n_max + 1):
        gl += counting[n]
        gm += cats[n - 1]
        latest[n % p] = Fraction(gl, gm)
    worst_err = Fraction(0)
    worst_residue = -1
    for r in range(p):
        err = abs(latest[r] - asym.per_residue[r])
        if err > worst_err:
            worst_err = err
            worst_residue = r
    # Supporting limit, evaluated at the largest multiple of p in range.
    k_top = n_max - (n_max % p)
    tail = Fraction(cats[k_top - 1], sum(cats[k - 1] for k in range(p, k_top + 1, p)))
    aux_err = abs(tail - (1 - Fraction(1, 4**p)))
    passed = worst_err <= tol and aux_err <= tol
    return CheckReport(
        name=f"longitudinal-convergence-p{p}",
        passed=passed,
        details=(
            f"worst residue {worst_residue}: |ratio - asymptote| = {float(worst_err):.2e}, "
            f"aux limit error {float(aux_err):.2e}, tolerance {tolerance}"
        ),
        data={
            "p": p,
            "n_max": n_max,
            "worst_error": float(worst_err),
            "aux_error": float(aux_err),
            "tolerance": tolerance,
        },
    )


@dataclass
class DensityEstimate:
    """Result of a density estimation run.

    ``value`` is the accelerated point estimate (None when the trace
    oscillates); ``status`` is one of ``converged``, ``inconclusive``,
    ``oscillating``.  ``per_residue`` carries residue-class estimates when
    an oscillation of that period was detected.
    """

    value: Decimal | None
    status: str
    n_max: int
    precision: int
    trace: RatioTrace
    accelerated: tuple[tuple[int, Decimal], ...]
    oscillation_period: int | None = None
    per_residue: tuple[Decimal, ...] | None = None
    last_step_delta: Decimal | None = None
    window_spread: Decimal | None = None
    diagnostics: dict = field(default_factory=dict)


def _detect_oscillation(
    samples: Sequence[tuple[int, Decimal]],
    precision: int,
    max_period: int = 8,
    window: int = 8,
) -> tuple[int, tuple[Decimal, ...]] | None:
    """Smallest period p <= max_period whose residue classes settle to
    clearly distinct values; None when no such period exists.

    Classes must be individually tight (tail spread) while separated by
    more than 10x the larger of the class spread and the requested
    precision.
    """
    noise = Decimal(10) ** -precision
    for p in range(2, max_period + 1):
        classes: dict[int, list[Decimal]] = {r: [] for r in range(p)}
        for n, v in samples:
            classes[n % p].append(v)
        if any(len(vals) < window for vals in classes.values()):
            continue
        tails = {r: vals[-window:] for r, vals in classes.items()}
        within = max(max(t) - min(t) for t in tails.values())
        centers = [sum(t) / len(t) for t in tails.values()]
        sep = max(centers) - min(centers)
        if sep > 10 * max(within, noise):
            return p, tuple(centers)
    return None


def estimate_density(
    family_n: GenFamily,
    family_m: GenFamily,
    n_max: int,
    precision: int = 8,
) -> DensityEstimate:
    """Estimate the density of <family_n> with respect to <family_m>.

    Builds both counting sequences to ``n_max``, forms the growth-ratio
    trace, accelerates it with Aitken's process, and gates the result on
    the spread of the last accelerated window against 10^-precision.
    Callers are responsible for actual nestedness of the two families;
    ratios outside [0, 1] therefore only flag the diagnostics.

    The point estimate is reported even when flagged ``inconclusive``;
    ``oscillating`` means no single limit exists and per-residue values
    are reported instead.
    """
    if n_max < 3:
        raise ValueError(f"n_max must be >= 3, got {n_max}")
    if precision < 1:
        raise ValueError(f"precision must be >= 1, got {precision}")
    digits = max(DEFAULT_DECIMAL_DIGITS, precision + 10)
    seq_n = counting_sequence(family_n, n_max)
    seq_m = counting_sequence(family_m, n_max)
    trace = ratio_trace(seq_n, seq_m, precision=digits)
    values = trace.values()
    accel_raw = aitken(values, precision=digits)
    accelerated = tuple(
        (trace.samples[i + 2][0], y) for i, y in enumerate(accel_raw) if y is not None
    )
    tol = Decimal(10) ** -precision

    osc = _detect_oscillation(trace.samples, precision)
    if osc is not None:
        period, centers = osc
        return DensityEstimate(
            value=None,
            status="oscillating",
            n_max=n_max,
            precision=precision,
            trace=trace,
            accelerated=accelerated,
            oscillation_period=period,
            per_residue=centers,
            diagnostics={"note": "per-residue limits reported; no single density"},
        )

    if accelerated:
        tail = [v for _, v in accelerated[-5:]]
        value = tail[-1]
        spread = max(tail) - min(tail)
        delta = abs(tail[-1] - tail[-2]) if len(tail) >= 2 else None
        status = "converged" if spread <= tol else "inconclusive"
    elif values:
        value = values[-1]
        spread = None
        delta = None
        status = "inconclusive"
    else:
        raise ValueError("denominator growth is identically zero; no trace")
    return DensityEstimate(
        value=value,
        status=status,
        n_max=n_max,
        precision=precision,
        trace=trace,
        accelerated=accelerated,
        last_step_delta=delta,
        window_spread=spread,
        diagnostics={"window": min(5, len(accelerated))},
    )


def density_report(
    estimate: DensityEstimate,
    family_n: GenFamily | str,
    family_m: GenFamily | str,
    trace_csv_path: str | None = None,
    accelerated_csv_path: str | None = None,
    runtime_seconds: float | None = None,
) -> dict:
    """JSON-ready report of a density run."""
    label_n = family_n if isinstance(family_n, str) else format_family(family_n)
    label_m = family_m if isinstance(family_m, str) else format_family(family_m)
    report: dict = {
        "family_n": label_n,
        "family_m": label_m,
        "n_max": estimate.n_max,
        "precision": estimate.precision,
        "status": estimate.status,
    }
    if estimate.status == "oscillating":
        report["value"] = "undefined-oscillating"
        report["oscillation_period"] = estimate.oscillation_period
        report["per_residue"] = [str(v) for v in estimate.per_residue or ()]
    else:
        report["value"] = str(estimate.value)
        if estimate.window_spread is not None:
            report["window_spread"] = str(estimate.window_spread)
        if estimate.last_step_delta is not None:
            report["last_step_delta"] = str(estimate.last_step_delta)
    report["trace_csv_path"] = trace_csv_path
    report["accelerated_csv_path"] = accelerated_csv_path
    report["runtime_seconds"] = runtime_seconds
    return report


def write_trace_csv(path: str | Path, samples: Iterable[tuple[int, Decimal]]) -> None:
    """Write (n, value) decimal samples as ``n,value`` rows."""
    lines = ["n,value"]
    lines.extend(f"{n},{v}" for n, v in samples)
    Path(path).write_text("\n".join(lines) + "\n")


def density_algebra_checks(
    translation_fixtures: Sequence[tuple[Term, frozenset[Term], int]] | None = None,
    nested_fixtures: Sequence[tuple[frozenset[Term], frozenset[Term], frozenset[Term], int]]
    | None = None,
) -> CheckReport:
    """Finite-horizon checks of the density algebra on closure enumerations.

    Translation: |aH|_{len(a) n} = |H|_n entry-wise, and |aH|_m = 0 away
    from multiples of len(a).  Multiplicativity: for nested N, N', N'' the
    growth-ratio product (N/N')(N'/N'') telescopes exactly to N/N'', and
    every ratio lies in [0, 1].
    """
    from .terms import leaf, right_comb

    two = leaf() + leaf()
    if translation_fixtures is None:
        translation_fixtures = [(two, frozenset({two, right_comb(3)}), 7)]
    if nested_fixtures is None:
        nested_fixtures = [
            (
                frozenset({two}),
                frozenset({two, right_comb(3)}),
                frozenset({leaf()}),
                10,
            )
        ]

    for a, gens, n_max in translation_fixtures:
        la = a.length
        base = closure_up_to(gens, n_max)
        shifted = closure_up_to(frozenset(product(a, g) for g in gens), la * n_max)
        for m in range(1, la * n_max + 1):
            expected = len(base[m // la]) if m % la == 0 else 0
            if len(shifted[m]) != expected:
                return CheckReport(
                    name="density-algebra",
                    passed=False,
                    details=f"translation identity fails at length {m}",
                    first_failure=m,
                )
    for inner, middle, outer, n_max in nested_fixtures:
        levels = [closure_up_to(g, n_max) for g in (inner, middle, outer)]
        sums = [0, 0, 0]
        for n in range(1, n_max + 1):
            for i in range(3):
                sums[i] += len(levels[i][n])
            if sums[2] == 0:
                continue
            r_outer = Fraction(sums[0], sums[2])
            if not (0 <= r_outer <= 1):
                return CheckReport(
                    name="density-algebra",
                    passed=False,
                    details=f"ratio outside [0,1] at n={n}",
                    first_failure=n,
                )
            if sums[1] == 0:
                continue
            lhs = Fraction(sums[0], sums[1]) * Fraction(sums[1], sums[2])
            if lhs != r_outer:
                return CheckReport(
                    name="density-algebra",
                    passed=False,
                    details=f"ratio product does not telescope at n={n}",
                    first_failure=n,
                )
    return CheckReport(
        name="density-algebra",
        passed=True,
        details=(
            f"translation identity and ratio multiplicativity hold on "
            f"{len(translation_fixtures)} + {len(nested_fixtures)} fixtures"
        ),
    )
