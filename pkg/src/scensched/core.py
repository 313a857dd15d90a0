"""Instances, assignments and the two scenario objectives.

Jobs are numbered ``1..n``. A scenario is a nonempty tuple of distinct job
ids. An :class:`Assignment` fixes a machine (1 or 2) for every job; it is
chosen once and then evaluated on every scenario.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence, Union

M1 = 1
M2 = 2

INT64_MAX = 2**63 - 1


class SchedError(Exception):
    """Base class for errors raised by this package."""


class ParseError(SchedError, ValueError):
    """Malformed input text; ``lineno`` is 1-based (0 when not line specific)."""

    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        self.message = message
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


class PreconditionError(SchedError, ValueError):
    """An operation was called on an instance outside its domain."""


class CapExceeded(PreconditionError):
    """An exhaustive routine was asked to go beyond its configured size cap."""


@dataclass(frozen=True)
class Instance:
    proc: tuple[int, ...]
    scenarios: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "proc", tuple(int(p) for p in self.proc))
        object.__setattr__(
            self, "scenarios", tuple(tuple(int(j) for j in s) for s in self.scenarios)
        )
        n = len(self.proc)
        for p in self.proc:
            if p < 0:
                raise ValueError(f"negative processing time {p}")
        for i, s in enumerate(self.scenarios, 1):
            if not s:
                raise ValueError(f"scenario {i} is empty")
            if len(set(s)) != len(s):
                raise ValueError(f"scenario {i} repeats a job")
            for j in s:
                if not 1 <= j <= n:
                    raise ValueError(f"job id out of range: {j} (n={n})")
        if sum(self.proc) * max(len(self.scenarios), 1) > INT64_MAX:
            raise ValueError("total processing time times scenario count overflows 64 bits")

    @property
    def n(self) -> int:
        return len(self.proc)

    @property
    def k(self) -> int:
        return len(self.scenarios)

    @property
    def r(self) -> int:
        """Largest scenario size (0 without scenarios)."""
        return max((len(s) for s in self.scenarios), default=0)

    @property
    def jobs(self) -> range:
        return range(1, self.n + 1)

    def p(self, j: int) -> int:
        return self.proc[j - 1]

    def total(self, jobs: Iterable[int]) -> int:
        return sum(self.proc[j - 1] for j in jobs)


@dataclass(frozen=True)
class Assignment:
    """Machine label (``M1`` or ``M2``) per job, job 1 first."""

    side: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "side", tuple(int(x) for x in self.side))
        for x in self.side:
            if x not in (M1, M2):
                raise ValueError(f"machine label must be 1 or 2, got {x}")

    @classmethod
    def from_sets(cls, n: int, machine1: Iterable[int]) -> Assignment:
        on1 = set(machine1)
        return cls(tuple(M1 if j in on1 else M2 for j in range(1, n + 1)))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> Assignment:
        """Bit 0 means machine 1, bit 1 means machine 2."""
        return cls(tuple(M2 if b else M1 for b in bits))

    def __len__(self):
        return len(self.side)

    def machine(self, j: int) -> int:
        return self.side[j - 1]

    def jobs_on(self, machine: int) -> tuple[int, ...]:
        return tuple(j for j, m in enumerate(self.side, 1) if m == machine)

    def swapped(self) -> Assignment:
        return Assignment(tuple(M2 if m == M1 else M1 for m in self.side))

    def canonical(self) -> Assignment:
        """The machine-swap representative with job 1 on machine 1."""
        if self.side and self.side[0] == M2:
            return self.swapped()
        return self

    def label(self) -> str:
        return "".join(str(m) for m in self.side)


class LoadPair(NamedTuple):
    load1: int
    load2: int

    @property
    def makespan(self) -> int:
        return max(self.load1, self.load2)

    @property
    def least(self) -> int:
        return min(self.load1, self.load2)


def _check_total(a: Assignment, inst: Instance) -> None:
    if len(a) != inst.n:
        raise ValueError(f"assignment covers {len(a)} jobs, instance has {inst.n}")


def scenario_loads(a: Assignment, s: Sequence[int], inst: Instance) -> LoadPair:
    load1 = load2 = 0
    for j in s:
        if a.side[j - 1] == M1:
            load1 += inst.proc[j - 1]
        else:
            load2 += inst.proc[j - 1]
    return LoadPair(load1, load2)


def scenario_makespans(a: Assignment, inst: Instance) -> list[int]:
    _check_total(a, inst)
    return [scenario_loads(a, s, inst).makespan for s in inst.scenarios]


def eval_minmax(a: Assignment, inst: Instance) -> int:
    """Largest makespan over all scenarios; 0 when there are none."""
    return max(scenario_makespans(a, inst), default=0)


def eval_minsum(a: Assignment, inst: Instance) -> int:
    """Sum of the scenario makespans."""
    return sum(scenario_makespans(a, inst))


MINMAX = "minmax"
MINSUM = "minsum"
OBJECTIVES = (MINMAX, MINSUM)


def check_objective(objective: str) -> str:
    obj = str(objective).lower()
    if obj in ("mm2", "max"):
        obj = MINMAX
    if obj in ("sm2", "sum"):
        obj = MINSUM
    if obj not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    return obj


def evaluate(a: Assignment, inst: Instance, objective: str) -> int:
    if check_objective(objective) == MINMAX:
        return eval_minmax(a, inst)
    return eval_minsum(a, inst)


# -- text format -------------------------------------------------------------

def _ints(tokens: list[str], lineno: int, what: str) -> list[int]:
    out = []
    for t in tokens:
        try:
            out.append(int(t))
        except ValueError:
            raise ParseError(f"{what}: not an integer: {t!r}", lineno) from None
    return out


def parse_instance(text: Union[str, bytes]) -> Instance:
    """Parse the line-oriented instance format.

    ::

        jobs 3
        p 2 1 1
        scenarios 2
        S 1 2 3
        S 2 3
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None
    lines = [
        (i, line.split())
        for i, line in enumerate(text.splitlines(), 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    it = iter(lines)

    def expect(keyword: str) -> tuple[int, list[str]]:
        try:
            lineno, toks = next(it)
        except StopIteration:
            raise ParseError(f"malformed header: missing '{keyword}' line") from None
        if toks[0] != keyword:
            raise ParseError(f"malformed header: expected '{keyword}', got {toks[0]!r}", lineno)
        return lineno, toks[1:]

    lineno, rest = expect("jobs")
    if len(rest) != 1:
        raise ParseError("malformed header: 'jobs' takes one integer", lineno)
    (n,) = _ints(rest, lineno, "jobs")
    if n < 0:
        raise ParseError("malformed header: negative job count", lineno)

    lineno, rest = expect("p")
    proc = _ints(rest, lineno, "p")
    if len(proc) != n:
        raise ParseError(f"expected {n} processing times, got {len(proc)}", lineno)
    for p in proc:
        if p < 0:
            raise ParseError(f"negative time {p}", lineno)

    lineno, rest = expect("scenarios")
    if len(rest) != 1:
        raise ParseError("malformed header: 'scenarios' takes one integer", lineno)
    (k,) = _ints(rest, lineno, "scenarios")
    if k < 0:
        raise ParseError("malformed header: negative scenario count", lineno)

    scenarios = []
    for idx in range(1, k + 1):
        try:
            lineno, toks = next(it)
        except StopIteration:
            raise ParseError(f"expected {k} scenario lines, found {idx - 1}") from None
        if toks[0] != "S":
            raise ParseError(f"expected scenario line 'S ...', got {toks[0]!r}", lineno)
        ids = _ints(toks[1:], lineno, "S")
        if not ids:
            raise ParseError("empty scenario", lineno)
        for j in ids:
            if not 1 <= j <= n:
                raise ParseError(f"job id out of range: {j}", lineno)
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate job id within scenario", lineno)
        scenarios.append(tuple(ids))
    extra = next(it, None)
    if extra is not None:
        raise ParseError("trailing content after last scenario", extra[0])
    if sum(proc) * max(k, 1) > INT64_MAX:
        raise ParseError("total processing time times scenario count overflows 64 bits")
    return Instance(tuple(proc), tuple(scenarios))


def serialize_instance(inst: Instance) -> str:
    lines = [f"jobs {inst.n}", " ".join(["p", *map(str, inst.proc)]), f"scenarios {inst.k}"]
    lines += [" ".join(["S", *map(str, s)]) for s in inst.scenarios]
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    with open(path, "rb") as fh:
        return parse_instance(fh.read())


def serialize_assignment(a: Assignment, inst: Instance | None = None) -> str:
    """Solution file: machine lines, then both objective values if ``inst`` is given."""
    lines = [
        " ".join(["M1", *map(str, a.jobs_on(M1))]),
        " ".join(["M2", *map(str, a.jobs_on(M2))]),
    ]
    if inst is not None:
        lines.append(f"minmax {eval_minmax(a, inst)}")
        lines.append(f"minsum {eval_minsum(a, inst)}")
    return "\n".join(lines) + "\n"


def parse_assignment(text: str, n: int) -> Assignment:
    on = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = line.split()
        if not toks or toks[0].startswith("#"):
            continue
        if toks[0] in ("M1", "M2"):
            machine = M1 if toks[0] == "M1" else M2
            for j in _ints(toks[1:], lineno, toks[0]):
                if not 1 <= j <= n:
                    raise ParseError(f"job id out of range: {j}", lineno)
                if j in on:
                    raise ParseError(f"job {j} assigned twice", lineno)
                on[j] = machine
    missing = [j for j in range(1, n + 1) if j not in on]
    if missing:
        raise ParseError(f"jobs without a machine: {missing}")
    return Assignment(tuple(on[j] for j in range(1, n + 1)))
