"""Motzkin paths under step-bigram avoidance and step colorings.

A Motzkin path of length n walks from (0,0) to (n,0) with steps U (up),
D (down) and F (flat), never dipping below height 0.  A path spec can
forbid ordered step bigrams (a step immediately following another) and
assign color multiplicities to steps; a path then counts with weight equal
to the product of its steps' multiplicities.  Bigram constraints apply to
step letters only; colors multiply afterwards.

These counts cross-validate subgroupoid counting sequences: for the
families treated here the number of length-n subgroupoid elements equals
the constrained path count at length n - 2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Union

from .errors import CapacityError
from .reporting import CheckReport
from .subgroupoids import GenFamily, counting_sequence, format_family

STEPS = ("U", "D", "F")
_DELTA = {"U": 1, "D": -1, "F": 0}

ENUMERATION_LENGTH_CAP = 20

BigramLike = Union[tuple[str, str], str]


@dataclass(frozen=True)
class PathSpec:
    """Constraint bundle: path length, forbidden step bigrams, and per-step
    color multiplicities (default 1)."""

    length: int
    forbidden_bigrams: frozenset[tuple[str, str]] = frozenset()
    color_multiplicity: tuple[tuple[str, int], ...] = ()

    def __init__(
        self,
        length: int,
        forbidden_bigrams: Iterable[BigramLike] = (),
        color_multiplicity: Mapping[str, int] | Iterable[tuple[str, int]] = (),
    ):
        if length < 0:
            raise ValueError(f"path length must be >= 0, got {length}")
        bigrams = set()
        for bg in forbidden_bigrams:
            pair = tuple(bg) if not isinstance(bg, str) else tuple(bg.strip())
            if len(pair) != 2 or any(s not in STEPS for s in pair):
                raise ValueError(f"bad bigram {bg!r}; expected a pair over U/D/F")
            bigrams.add((pair[0], pair[1]))
        if isinstance(color_multiplicity, Mapping):
            colors = color_multiplicity.items()
        else:
            colors = color_multiplicity
        norm = {}
        for step, mult in colors:
            if step not in STEPS:
                raise ValueError(f"unknown step {step!r}")
            if mult < 1:
                raise ValueError(f"multiplicity must be >= 1, got {mult}")
            norm[step] = int(mult)
        object.__setattr__(self, "length", int(length))
        object.__setattr__(self, "forbidden_bigrams", frozenset(bigrams))
        object.__setattr__(
            self, "color_multiplicity", tuple(sorted(norm.items()))
        )

    def multiplicity(self, step: str) -> int:
        for s, m in self.color_multiplicity:
            if s == step:
                return m
        return 1


def count_paths(spec: PathSpec) -> int:
    """Weighted number of paths satisfying the spec.

    Dynamic programming over (height, last step); forbidden bigrams prune
    transitions and color multiplicities scale weights.  With no
    constraints and unit colors this is the Motzkin number M_length.
    """
    n = spec.length
    if n == 0:
        return 1
    mult = {s: spec.multiplicity(s) for s in STEPS}
    # state: (height, last step) -> weighted count
    states: dict[tuple[int, str | None], int] = {(0, None): 1}
    for pos in range(n):
        remaining_after = n - pos - 1
        new_states: dict[tuple[int, str | None], int] = {}
        for (h, last), w in states.items():
            for step in STEPS:
                if last is not None and (last, step) in spec.forbidden_bigrams:
                    continue
                nh = h + _DELTA[step]
                if nh < 0 or nh > remaining_after:
                    continue
                key = (nh, step)
                new_states[key] = new_states.get(key, 0) + w * mult[step]
        states = new_states
    return sum(w for (h, _), w in states.items() if h == 0)


def enumerate_paths(spec: PathSpec, cap: int = ENUMERATION_LENGTH_CAP) -> list[str]:
    """Explicit listing of all (colored) paths of the spec.

    Steps with multiplicity m > 1 render with a color suffix digit, e.g.
    ``UF2DF1``; unit-multiplicity steps render bare.  The list length
    equals :func:`count_paths`.  Deterministic order: depth-first over
    steps U, D, F with ascending colors.
    """
    n = spec.length
    if n > cap:
        raise CapacityError(f"enumeration of length {n} exceeds cap {cap}")
    mult = {s: spec.multiplicity(s) for s in STEPS}
    out: list[str] = []
    track: list[str] = []

    def descend(pos: int, height: int, last: str | None) -> None:
        if pos == n:
            if height == 0:
                out.append("".join(track))
            return
        for step in STEPS:
            if last is not None and (last, step) in spec.forbidden_bigrams:
                continue
            nh = height + _DELTA[step]
            if nh < 0 or nh > n - pos - 1:
                continue
            m = mult[step]
            for color in range(1, m + 1):
                track.append(step if m == 1 else f"{step}{color}")
                descend(pos + 1, nh, step)
                track.pop()

    descend(0, 0, None)
    return out


def crosscheck_subgroupoid(
    spec: PathSpec, family: GenFamily, offset: int, n_max: int
) -> CheckReport:
    """Assert count_paths(length = n - offset) equals the counting sequence
    of the family at n, for 1 <= n <= n_max (negative lengths count 0)."""
    seq = counting_sequence(family, n_max)
    for n in range(1, n_max + 1):
        length = n - offset
        got = 0 if length < 0 else count_paths(replace(spec, length=length))
        if got != seq[n]:
            return CheckReport(
                name="motzkin-crosscheck",
                passed=False,
                details=(
                    f"{format_family(family)}: path count {got} != |N|_{n} = {seq[n]} "
                    f"(offset {offset})"
                ),
                first_failure=n,
            )
    return CheckReport(
        name="motzkin-crosscheck",
        passed=True,
        details=f"{format_family(family)} matches path counts for n <= {n_max} "
        f"(offset {offset})",
    )
