"""Federated allocation of processors to DAG tasks.

A federated scheduler gives every *heavy* task (one that cannot finish
sequentially by its deadline) a cluster of processors for its exclusive
use, and runs each *light* task sequentially on a shared processor.  This
module provides the classification, the information-theoretic lower bounds
on how many processors heavy tasks force, the analytic speedup penalty of
the whole approach on the adversarial family, and a concrete allocator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .feasibility import Item, uniprocessor_edf_feasible
from .model import DagTask, Platform, TaskSet, span, work


class TaskClass(Enum):
    HEAVY = "heavy"
    LIGHT = "light"


def classify(task: DagTask, speed: Fraction) -> TaskClass:
    """Heavy iff the task cannot run sequentially: work > speed * deadline.

    The boundary work == speed * deadline is Light (it finishes exactly on
    time on one processor).  The strictness matters: several identities in
    this package sit exactly on it.
    """
    speed = Fraction(speed)
    if work(task) > speed * task.deadline:
        return TaskClass.HEAVY
    return TaskClass.LIGHT


def heavy_demand_lower_bound(task: DagTask, speed: Fraction) -> int:
    """Fewest processors that could possibly meet a heavy task's deadline.

    Within a window of length deadline, m speed-``speed`` processors supply
    at most m * speed * deadline execution, so m >= work/(deadline * speed);
    the bound is the exact ceiling of that ratio.  Light tasks are rejected:
    for them the ratio degenerates to 1 and says nothing.
    """
    speed = Fraction(speed)
    if classify(task, speed) is TaskClass.LIGHT:
        raise ValueError(
            f"task {task.id} is light at speed {speed}; "
            "the demand bound applies to heavy tasks only"
        )
    return math.ceil(work(task) / (task.deadline * speed))


def total_demand_lower_bound(ts: TaskSet, speed: Fraction) -> int:
    """Sum of per-task demand lower bounds over an all-heavy task set.

    Because clusters are exclusive, the per-task bounds add up.  Rejects
    task sets containing any light task (the summation is meaningless once
    a task could share a processor).
    """
    return sum(heavy_demand_lower_bound(task, speed) for task in ts)


def speedup_lower_bound(processors: int, n_tasks: int, ratio: Fraction) -> Fraction:
    """Speed below which *no* federated allocation of the adversarial
    family can fit on its platform: min((1 - 1/K)*M, N - (N-1)/K) for
    M = processors, N = n_tasks, K = ratio.

    Below (1 - 1/K)*M every task in the family is heavy, and the per-task
    demand bounds then sum past M; the second term caps the argument when
    there are few tasks.  Since the family is feasible on M unit-speed
    processors, this is a lower bound on the speedup any federated
    scheduler needs.
    """
    ratio = Fraction(ratio)
    if processors < 2 or n_tasks < 2 or ratio < 2:
        raise ValueError(
            "requires processors >= 2, n_tasks >= 2 and ratio >= 2, got "
            f"({processors}, {n_tasks}, {ratio})"
        )
    return min(
        (1 - Fraction(1) / ratio) * processors,
        n_tasks - Fraction(n_tasks - 1) / ratio,
    )


def heavy_processor_allocation(task: DagTask, speed: Fraction) -> int | None:
    """Cluster size granted to a heavy task: the smallest m whose greedy
    list-schedule guarantee meets the deadline.

    Greedy execution on m processors finishes within
    span + (work - span)/m time, so m = ceil((work - span)/(s*D - span))
    with s*D the deadline budget.  Returns None when the critical path
    alone overruns the budget (s*D <= span): no cluster size can help.
    Rejects light tasks; they are never granted clusters.
    """
    speed = Fraction(speed)
    if classify(task, speed) is TaskClass.LIGHT:
        raise ValueError(
            f"task {task.id} is light at speed {speed}; clusters are for heavy tasks"
        )
    total = work(task)
    path = span(task)
    budget = speed * task.deadline
    if budget <= path:
        return None
    return max(1, math.ceil((total - path) / (budget - path)))


@dataclass(frozen=True)
class FederatedAllocation:
    """A successful allocation.

    heavy_grants maps each heavy task id to its exclusive cluster size;
    light_partition maps each light task id to a shared processor index
    (1-based, numbered separately from the heavy clusters).
    total_processors_used is the cluster sizes summed plus the number of
    shared processors.
    """

    heavy_grants: Mapping[int, int]
    light_partition: Mapping[int, int]
    total_processors_used: int

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "heavy_grants", MappingProxyType(dict(self.heavy_grants))
        )
        object.__setattr__(
            self, "light_partition", MappingProxyType(dict(self.light_partition))
        )


@dataclass(frozen=True)
class Infeasible:
    """A negative allocation verdict and the certificate behind it.

    demand_lower_bound is the summed heavy-task demand bound (None when
    no task is heavy); processors_needed is how many processors the
    allocator would have required to continue (None when no finite count
    helps).
    """

    reason: str
    processors_needed: int | None = None
    demand_lower_bound: int | None = None


def shared_processor_items(
    ts: TaskSet, alloc: FederatedAllocation
) -> dict[int, list[Item]]:
    """Rebuild each shared processor's item list from an allocation, so the
    demand test can be re-run independently of the allocator."""
    by_id = {task.id: task for task in ts}
    by_proc: dict[int, list[Item]] = {}
    for tid, proc in sorted(alloc.light_partition.items()):
        task = by_id[tid]
        by_proc.setdefault(proc, []).append(
            Item(work(task), task.deadline, task.period)
        )
    return by_proc


def allocate_federated(
    ts: TaskSet, plat: Platform
) -> FederatedAllocation | Infeasible:
    """Allocate the platform: exclusive clusters for heavy tasks, then
    first-fit packing of light tasks onto shared processors.

    Light tasks are considered in order of nondecreasing deadline (ties by
    task id) and each runs sequentially as a single item, which is legal
    since any topological order of its subtasks respects the DAG.  A task
    is admitted to a shared processor only if the processor's item set,
    with the newcomer added, still passes the exact demand test at the
    platform speed.  Infeasible is a verdict, not an error.
    """
    speed = plat.speed
    heavy = [t for t in ts if classify(t, speed) is TaskClass.HEAVY]
    light = [t for t in ts if classify(t, speed) is TaskClass.LIGHT]
    demand = (
        sum(heavy_demand_lower_bound(t, speed) for t in heavy) if heavy else None
    )

    grants: dict[int, int] = {}
    for task in heavy:
        size = heavy_processor_allocation(task, speed)
        if size is None:
            return Infeasible(
                reason=(
                    f"task {task.id}: critical path {span(task)} needs more than "
                    f"the deadline budget {speed * task.deadline}; "
                    "no cluster size suffices"
                ),
                processors_needed=None,
                demand_lower_bound=demand,
            )
        grants[task.id] = size
    used = sum(grants.values())
    if used > plat.processors:
        return Infeasible(
            reason=(
                f"heavy clusters alone need {used} processors, "
                f"platform has {plat.processors}"
            ),
            processors_needed=used,
            demand_lower_bound=demand,
        )

    shared: list[list[Item]] = []
    placement: dict[int, int] = {}
    for task in sorted(light, key=lambda t: (t.deadline, t.id)):
        item = Item(work(task), task.deadline, task.period)
        placed = False
        for idx, items in enumerate(shared):
            if uniprocessor_edf_feasible(items + [item], speed):
                items.append(item)
                placement[task.id] = idx + 1
                placed = True
                break
        if not placed:
            if used + len(shared) + 1 > plat.processors:
                return Infeasible(
                    reason=(
                        f"light task {task.id} does not fit: {used} processors "
                        f"granted exclusively, {len(shared)} shared processors "
                        f"full, platform has {plat.processors}"
                    ),
                    processors_needed=used + len(shared) + 1,
                    demand_lower_bound=demand,
                )
            shared.append([item])
            placement[task.id] = len(shared)
    return FederatedAllocation(
        heavy_grants=grants,
        light_partition=placement,
        total_processors_used=used + len(shared),
    )
