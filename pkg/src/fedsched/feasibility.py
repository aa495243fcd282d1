"""Demand-bound feasibility analysis for sequential items on one processor,
and the static subtask-per-processor partitioned test built on it.

An *item* is a sequential workload: ``work`` units due within ``deadline``
of each release, re-released at most every ``period`` (None = released
once, at time 0).  Preemptive earliest-deadline-first on one processor of
speed s meets all deadlines iff cumulative demand never outruns supply:

    for every t:  sum over items of dbf(item, t)  <=  s * t

and because each item's demand is a right-continuous step function, only
the finitely many step instants need checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

from .model import Platform, TaskSet


class Item(NamedTuple):
    """A sequential workload with a deadline and an optional period."""

    work: Fraction
    deadline: Fraction
    period: Fraction | None = None


def _as_item(spec: Item | Sequence) -> Item:
    """Accept an Item, a (work, deadline) pair, or a (work, deadline, period) triple."""
    if isinstance(spec, Item):
        return spec
    work, deadline, *rest = spec
    period = rest[0] if rest else None
    return Item(
        Fraction(work),
        Fraction(deadline),
        None if period is None else Fraction(period),
    )


def dbf(
    work: Fraction,
    deadline: Fraction,
    period: Fraction | None,
    t: Fraction,
) -> Fraction:
    """Maximum demand one item can place on the window [0, t].

    Counts the work of every job with both release and deadline inside
    the window, under the densest legal release pattern.  A one-shot item
    (period None) is a single step of height ``work`` at t = deadline; a
    recurring item steps every ``period`` from its deadline on:
    max(0, floor((t - deadline)/period) + 1) * work.
    """
    work, deadline, t = Fraction(work), Fraction(deadline), Fraction(t)
    if period is None:
        return work if t >= deadline else Fraction(0)
    jobs = (t - deadline) // Fraction(period) + 1
    if jobs <= 0:
        return Fraction(0)
    return jobs * work


def _rational_lcm(values: Iterable[Fraction]) -> Fraction:
    """Least positive rational that is an integer multiple of every input."""
    num, den = 1, 0
    for v in values:
        v = Fraction(v)
        num = math.lcm(num, v.numerator)
        den = math.gcd(den, v.denominator)
    return Fraction(num, den)


def default_horizon(items: Iterable[Item | Sequence]) -> Fraction:
    """How far a demand scan must look: the largest deadline, plus two
    hyperperiods when any item recurs.

    Beyond one hyperperiod past every deadline, the demand pattern repeats
    with a fixed increment per hyperperiod, so (given the utilization
    check in :func:`uniprocessor_edf_feasible`) no new violation can
    first appear there.  Two hyperperiods keep the margin obvious.
    """
    items = [_as_item(it) for it in items]
    if not items:
        return Fraction(0)
    horizon = max(it.deadline for it in items)
    periods = [it.period for it in items if it.period is not None]
    if periods:
        horizon += 2 * _rational_lcm(periods)
    return horizon


def demand_test_points(items: Iterable[Item | Sequence]) -> list[Fraction]:
    """Every instant up to the scan horizon where total demand can step."""
    items = [_as_item(it) for it in items]
    points: set[Fraction] = set()
    horizon = default_horizon(items)
    for it in items:
        if it.period is None:
            points.add(it.deadline)
        else:
            point = it.deadline
            while point <= horizon:
                points.add(point)
                point += it.period
    return sorted(points)


@dataclass(frozen=True)
class DemandProfile:
    """Total demand of an item set tabulated at each step instant.

    Breakpoints are (t, demand) pairs, strictly increasing in t with
    nondecreasing demand; demand before the first breakpoint is 0.
    """

    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "breakpoints",
            tuple((Fraction(t), Fraction(d)) for t, d in self.breakpoints),
        )


def demand_profile(items: Iterable[Item | Sequence]) -> DemandProfile:
    """Tabulate the summed dbf of ``items`` at every test point."""
    items = [_as_item(it) for it in items]
    breakpoints = []
    for t in demand_test_points(items):
        total = sum(
            (dbf(it.work, it.deadline, it.period, t) for it in items), Fraction(0)
        )
        breakpoints.append((t, total))
    return DemandProfile(breakpoints=tuple(breakpoints))


def uniprocessor_edf_feasible(
    items: Iterable[Item | Sequence], speed: Fraction
) -> bool:
    """Would preemptive EDF on one speed-``speed`` processor meet every
    deadline of ``items``?

    True iff demand never exceeds supply at any step instant.  For
    one-shot items this is exact (necessary and sufficient).  Recurring
    items must additionally keep total utilization (work/period) within
    ``speed``: long-run demand grows at that rate, and bounding it is
    what makes the finite scan horizon sufficient.
    """
    speed = Fraction(speed)
    if speed <= 0:
        raise ValueError(f"speed must be positive, got {speed}")
    items = [_as_item(it) for it in items]
    utilization = sum(
        (it.work / it.period for it in items if it.period is not None), Fraction(0)
    )
    if utilization > speed:
        return False
    return all(
        demand <= speed * t for t, demand in demand_profile(items).breakpoints
    )


@dataclass(frozen=True)
class PartitionedAssignment:
    """A static placement: (task id, subtask id) -> processor index (1-based)."""

    mapping: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        entries = {
            (int(t), int(s)): int(p) for (t, s), p in dict(self.mapping).items()
        }
        object.__setattr__(self, "mapping", MappingProxyType(entries))

    def processor_of(self, task_id: int, subtask_id: int) -> int:
        return self.mapping[(task_id, subtask_id)]


def partition_by_subtask_index(ts: TaskSet, processors: int) -> PartitionedAssignment:
    """Place the k-th smallest subtask id of every task on processor k.

    Requires every task to have exactly ``processors`` subtasks (the
    shape :func:`fedsched.generate.build_counterexample` produces, where
    the placement gives each processor one equal share of every task).
    """
    for task in ts:
        if len(task.subtasks) != processors:
            raise ValueError(
                f"task {task.id} has {len(task.subtasks)} subtasks, "
                f"expected exactly {processors}"
            )
    mapping: dict[tuple[int, int], int] = {}
    for task in ts:
        ordered = sorted(task.subtasks, key=lambda st: st.id)
        for k, st in enumerate(ordered, start=1):
            mapping[(task.id, st.id)] = k
    return PartitionedAssignment(mapping)


def processor_items(
    ts: TaskSet, pa: PartitionedAssignment
) -> dict[int, list[Item]]:
    """Group the assigned subtasks into per-processor item lists.

    Each subtask becomes one item carrying its own wcet and its task's
    deadline and period.  Raises if the assignment misses any subtask.
    """
    for task in ts:
        for st in task.subtasks:
            if (task.id, st.id) not in pa.mapping:
                raise ValueError(
                    f"assignment does not cover task {task.id} subtask {st.id}"
                )
    by_proc: dict[int, list[Item]] = {}
    for task in ts:
        for st in task.subtasks:
            proc = pa.mapping[(task.id, st.id)]
            by_proc.setdefault(proc, []).append(
                Item(st.wcet, task.deadline, task.period)
            )
    return by_proc


def partitioned_feasible(
    ts: TaskSet, pa: PartitionedAssignment, plat: Platform
) -> bool:
    """Does every processor pass the demand test for its assigned subtasks?

    Subtasks are treated as independent sequential items, which is only
    faithful when tasks have no precedence edges; tasks with edges are
    rejected rather than analyzed optimistically.
    """
    for task in ts:
        if task.edges:
            raise ValueError(
                f"task {task.id} has precedence edges; "
                "the partitioned test handles edge-free tasks only"
            )
    by_proc = processor_items(ts, pa)
    for proc in by_proc:
        if not 1 <= proc <= plat.processors:
            raise ValueError(
                f"assignment uses processor {proc}, "
                f"platform has 1..{plat.processors}"
            )
    return all(
        uniprocessor_edf_feasible(items, plat.speed) for items in by_proc.values()
    )
