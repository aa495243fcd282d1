"""Sporadic DAG task model: subtasks, tasks, task sets and platforms.

A task releases jobs separated by at least its period; each job is a DAG of
subtasks.  A ``None`` period marks a one-shot task (a single job, released
at time 0).  Construction is deliberately permissive: structural problems
are data, reported by :func:`validate_task_set`, not construction errors.
All quantities are exact rationals; all types are immutable values and all
operations are pure functions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction


@dataclass(frozen=True)
class Subtask:
    """One unit of sequential execution inside a task's job.

    Attributes:
        id: index of the subtask within its task.
        wcet: worst-case execution time at unit speed (must be positive
            for the task to validate).
    """

    id: int
    wcet: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "wcet", Fraction(self.wcet))


@dataclass(frozen=True)
class DagTask:
    """A sporadic task whose job decomposes into a DAG of subtasks.

    Attributes:
        id: 1-based index within the task set.
        wcet_total: declared total work; valid tasks have it equal to the
            sum of subtask wcets.
        deadline: relative deadline, > 0.
        period: minimum inter-arrival time (>= deadline for a valid
            constrained-deadline task), or None for a one-shot task.
        subtasks: the job's subtasks.
        edges: precedence pairs (predecessor subtask id, successor
            subtask id); must be acyclic for a valid task.
    """

    id: int
    wcet_total: Fraction
    deadline: Fraction
    period: Fraction | None
    subtasks: tuple[Subtask, ...]
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "wcet_total", Fraction(self.wcet_total))
        object.__setattr__(self, "deadline", Fraction(self.deadline))
        if self.period is not None:
            object.__setattr__(self, "period", Fraction(self.period))
        object.__setattr__(self, "subtasks", tuple(self.subtasks))
        object.__setattr__(
            self, "edges", tuple((int(a), int(b)) for a, b in self.edges)
        )


@dataclass(frozen=True)
class TaskSet:
    """An ordered collection of tasks with a text label."""

    name: str
    tasks: tuple[DagTask, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "tasks", tuple(self.tasks))

    def __iter__(self):
        return iter(self.tasks)

    def __len__(self) -> int:
        return len(self.tasks)


@dataclass(frozen=True)
class Platform:
    """An identical-multiprocessor platform: processor count and speed."""

    processors: int
    speed: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.processors, int) or self.processors < 1:
            raise ValueError(f"processors must be a positive integer, got {self.processors}")
        object.__setattr__(self, "speed", Fraction(self.speed))
        if self.speed <= 0:
            raise ValueError(f"speed must be positive, got {self.speed}")


def _topological_order(
    ids: list[int], edges: tuple[tuple[int, int], ...]
) -> list[int] | None:
    """Kahn's algorithm; returns None if the (known-id) edges contain a cycle."""
    known = set(ids)
    succ: dict[int, list[int]] = {i: [] for i in ids}
    indegree: dict[int, int] = {i: 0 for i in ids}
    for a, b in edges:
        if a in known and b in known:
            succ[a].append(b)
            indegree[b] += 1
    queue = deque(i for i in ids if indegree[i] == 0)
    order: list[int] = []
    while queue:
        node = queue.popleft()
        order.append(node)
        for nxt in succ[node]:
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                queue.append(nxt)
    if len(order) != len(ids):
        return None
    return order


def work(task: DagTask) -> Fraction:
    """Total work of a job: the sum of its subtask wcets."""
    return sum((st.wcet for st in task.subtasks), Fraction(0))


def span(task: DagTask) -> Fraction:
    """Length of the longest precedence path, by topological longest-path.

    This is the minimum completion time of the job on unboundedly many
    unit-speed processors.  Raises ValueError if the edges are cyclic.
    """
    ids = [st.id for st in task.subtasks]
    order = _topological_order(ids, task.edges)
    if order is None:
        raise ValueError(f"task {task.id}: dependency cycle among subtasks")
    wcet = {st.id: st.wcet for st in task.subtasks}
    known = set(ids)
    preds: dict[int, list[int]] = {i: [] for i in ids}
    for a, b in task.edges:
        if a in known and b in known:
            preds[b].append(a)
    longest: dict[int, Fraction] = {}
    best = Fraction(0)
    for sid in order:
        reach = max((longest[p] for p in preds[sid]), default=Fraction(0))
        longest[sid] = reach + wcet[sid]
        if longest[sid] > best:
            best = longest[sid]
    return best


def scale_to_unit_speed(ts: TaskSet, speed: Fraction) -> TaskSet:
    """Fold a platform speed into the task set.

    Running a task set on speed-``speed`` processors is equivalent to
    dividing every wcet by ``speed`` and running at unit speed.  Deadlines
    and periods are unchanged.
    """
    speed = Fraction(speed)
    if speed <= 0:
        raise ValueError(f"speed must be positive, got {speed}")
    tasks = tuple(
        replace(
            task,
            wcet_total=task.wcet_total / speed,
            subtasks=tuple(replace(st, wcet=st.wcet / speed) for st in task.subtasks),
        )
        for task in ts.tasks
    )
    return replace(ts, tasks=tasks)


def validate_task_set(ts: TaskSet) -> list[str]:
    """Check every structural invariant; return one message per violation.

    An empty list means the task set is valid.  Violations are data, not
    failures: building an invalid task set never raises.
    """
    violations: list[str] = []
    ids = [task.id for task in ts.tasks]
    if sorted(ids) != list(range(1, len(ids) + 1)):
        violations.append(
            f"task set {ts.name!r}: task ids not unique and contiguous from 1: {ids}"
        )
    for task in ts.tasks:
        violations.extend(_validate_task(task))
    return violations


def _validate_task(task: DagTask) -> list[str]:
    v: list[str] = []
    tag = f"task {task.id}"
    sids = [st.id for st in task.subtasks]
    if len(set(sids)) != len(sids):
        v.append(f"{tag}: duplicate subtask ids: {sids}")
    for st in task.subtasks:
        if st.wcet <= 0:
            v.append(f"{tag}: nonpositive wcet {st.wcet} on subtask {st.id}")
    total = sum((st.wcet for st in task.subtasks), Fraction(0))
    if total != task.wcet_total:
        v.append(
            f"{tag}: work mismatch: subtasks sum to {total}, "
            f"declared total is {task.wcet_total}"
        )
    if task.deadline <= 0:
        v.append(f"{tag}: nonpositive deadline {task.deadline}")
    if task.period is not None:
        if task.period <= 0:
            v.append(f"{tag}: nonpositive period {task.period}")
        elif task.deadline > task.period:
            v.append(f"{tag}: deadline {task.deadline} exceeds period {task.period}")
    known = set(sids)
    for a, b in task.edges:
        if a not in known or b not in known:
            v.append(f"{tag}: edge ({a}, {b}) references an unknown subtask")
    if _topological_order(sids, task.edges) is None:
        v.append(f"{tag}: dependency cycle among subtasks")
    return v
