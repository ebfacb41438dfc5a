"""Linear-time semantics over the naturals with a fixed valuation.

Truth sets are ultimately periodic subsets of the naturals, stored as a
finite prefix bit string plus a repeating loop bit string: position n is
a member when ``prefix[n]`` for n < len(prefix), else
``loop[(n - len(prefix)) % len(loop)]``. Construction canonicalizes, so
two PeriSets are equal as dataclasses exactly when they denote the same
subset: the loop is cut to its minimal period and trailing prefix bits
that merely repeat the loop are absorbed into it (rotating the loop).

"The future" includes the present: F, U, and W all quantify over m >= n.
U and W are evaluated by a lasso fixpoint: the standard one-step
recurrence is swept backwards twice around the loop (from an all-false
seed for U, all-true for W; any witness from a loop position exists
within one further period, so two rounds stabilize), then once through
the prefix right to left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ContextMismatchError, UnsupportedConnectiveError
from .formula import (
    App,
    Connective,
    Const,
    Formula,
    Signature,
    Var,
    count_connective,
    enumerate_formulas,
    formula_connectives,
    formula_variables,
)

TEMPORAL_CONNECTIVES = frozenset(
    {
        Connective.NEG,
        Connective.AND,
        Connective.OR,
        Connective.IMP,
        Connective.F,
        Connective.X,
        Connective.U,
        Connective.W,
    }
)


@dataclass(frozen=True)
class PeriSet:
    prefix: str
    loop: str

    def __post_init__(self):
        if not self.loop or set(self.prefix + self.loop) - {"0", "1"}:
            raise ValueError("prefix and loop must be nonempty '0'/'1' strings")
        prefix, loop = self.prefix, self.loop
        for d in range(1, len(loop) + 1):
            if len(loop) % d == 0 and all(loop[i] == loop[i % d] for i in range(len(loop))):
                loop = loop[:d]
                break
        while prefix and prefix[-1] == loop[-1]:
            prefix = prefix[:-1]
            loop = loop[-1] + loop[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "loop", loop)

    @classmethod
    def empty(cls) -> "PeriSet":
        return cls("", "0")

    @classmethod
    def full(cls) -> "PeriSet":
        return cls("", "1")

    @classmethod
    def finite(cls, positions: Iterable[int]) -> "PeriSet":
        positions = set(positions)
        if not positions:
            return cls.empty()
        top = max(positions)
        return cls("".join("1" if n in positions else "0" for n in range(top + 1)), "0")

    @classmethod
    def from_residues(cls, modulus: int, residues: Iterable[int]) -> "PeriSet":
        residues = {r % modulus for r in residues}
        return cls("", "".join("1" if r in residues else "0" for r in range(modulus)))

    def member(self, n: int) -> bool:
        if n < len(self.prefix):
            return self.prefix[n] == "1"
        return self.loop[(n - len(self.prefix)) % len(self.loop)] == "1"

    def bits(self, horizon: int) -> str:
        return "".join("1" if self.member(n) else "0" for n in range(horizon))

    def is_empty(self) -> bool:
        return self.loop == "0" and "1" not in self.prefix

    def is_finite(self) -> bool:
        return self.loop == "0"

    def key(self) -> str:
        return f"{self.prefix};{self.loop}"

    @classmethod
    def from_key(cls, key: str) -> "PeriSet":
        prefix, loop = key.split(";")
        return cls(prefix, loop)


def _align(sets: Iterable[PeriSet]) -> tuple[int, int, list[str]]:
    """Common prefix length, common loop length, and each set's bits over
    one prefix plus one loop."""
    sets = list(sets)
    length = max(len(s.prefix) for s in sets)
    period = math.lcm(*(len(s.loop) for s in sets))
    return length, period, [s.bits(length + period) for s in sets]


def complement(s: PeriSet) -> PeriSet:
    flip = str.maketrans("01", "10")
    return PeriSet(s.prefix.translate(flip), s.loop.translate(flip))


def peri_bool(conn: Connective, args: list[PeriSet]) -> PeriSet:
    """Pointwise classical connective on subsets of the naturals."""
    if conn is Connective.NEG:
        return complement(args[0])
    length, period, bits = _align(args)
    a, b = bits
    if conn is Connective.AND:
        out = [x if x == y else "0" for x, y in zip(a, b)]
    elif conn is Connective.OR:
        out = [x if x == y else "1" for x, y in zip(a, b)]
    elif conn is Connective.IMP:
        out = ["0" if x == "1" and y == "0" else "1" for x, y in zip(a, b)]
    else:
        raise UnsupportedConnectiveError(f"{conn.value} is not a pointwise connective")
    joined = "".join(out)
    return PeriSet(joined[:length], joined[length:])


def peri_X(s: PeriSet) -> PeriSet:
    """Left shift: n is a member iff n+1 was."""
    if s.prefix:
        return PeriSet(s.prefix[1:], s.loop)
    return PeriSet("", s.loop[1:] + s.loop[0])


def peri_F(s: PeriSet) -> PeriSet:
    """Eventually: everything if s is infinite, an initial segment up to
    the last member if s is finite and nonempty, empty otherwise."""
    if "1" in s.loop:
        return PeriSet.full()
    if "1" in s.prefix:
        return PeriSet("1" * (s.prefix.rindex("1") + 1), "0")
    return PeriSet.empty()


def _until_core(a: PeriSet, b: PeriSet, weak: bool) -> PeriSet:
    length, period, bits = _align([a, b])
    abits, bbits = bits
    aloop, bloop = abits[length:], bbits[length:]
    # Two backward rounds over the loop stabilize the recurrence
    # u[n] = b[n] or (a[n] and u[n+1]).
    after = weak
    ring = [False] * (2 * period)
    for j in range(2 * period - 1, -1, -1):
        after = bloop[j % period] == "1" or (aloop[j % period] == "1" and after)
        ring[j] = after
    out = ["1" if ring[i] else "0" for i in range(period)]
    carry = ring[0]
    head = [""] * length
    for n in range(length - 1, -1, -1):
        carry = bbits[n] == "1" or (abits[n] == "1" and carry)
        head[n] = "1" if carry else "0"
    return PeriSet("".join(head), "".join(out))


def peri_U(a: PeriSet, b: PeriSet) -> PeriSet:
    """Until: n is a member iff some m >= n is in b with [n, m) inside a."""
    return _until_core(a, b, weak=False)


def peri_W(a: PeriSet, b: PeriSet) -> PeriSet:
    """Weak until: as U, except membership also holds when a never fails
    from n on."""
    return _until_core(a, b, weak=True)


def first_difference(a: PeriSet, b: PeriSet) -> int | None:
    """Least position where the two sets disagree, None if equal."""
    if a == b:
        return None
    length, period, bits = _align([a, b])
    for n, (x, y) in enumerate(zip(*bits)):
        if x != y:
            return n
    raise AssertionError("unequal canonical forms must differ within one loop")


def temporal_truth_set(f: Formula, valuation: Mapping[str, PeriSet]) -> PeriSet:
    if isinstance(f, Var):
        if f.name not in valuation:
            raise ContextMismatchError(f"unknown variable {f.name!r}")
        return valuation[f.name]
    if isinstance(f, Const):
        if f.value == "true":
            return PeriSet.full()
        if f.value == "false":
            return PeriSet.empty()
        raise UnsupportedConnectiveError("constant 'unk' needs three-valued semantics")
    if isinstance(f, App):
        args = [temporal_truth_set(a, valuation) for a in f.args]
        if f.conn is Connective.F:
            return peri_F(args[0])
        if f.conn is Connective.X:
            return peri_X(args[0])
        if f.conn is Connective.U:
            return peri_U(args[0], args[1])
        if f.conn is Connective.W:
            return peri_W(args[0], args[1])
        return peri_bool(f.conn, args)
    raise TypeError(f"not a formula: {f!r}")


def valuation_to_json(valuation: Mapping[str, PeriSet]) -> dict:
    return {p: {"prefix": s.prefix, "loop": s.loop} for p, s in sorted(valuation.items())}


def valuation_from_json(data: Mapping[str, Mapping[str, str]]) -> dict[str, PeriSet]:
    return {p: PeriSet(entry["prefix"], entry["loop"]) for p, entry in data.items()}


# ---------------------------------------------------------------------------
# Graded families for the bounded-lookahead argument

@dataclass(frozen=True)
class GradedFamilyParams:
    """Window [t, T]: alpha holds the subsets of the window, beta their
    complements."""

    t: int
    T: int

    def __post_init__(self):
        if not 1 <= self.t <= self.T:
            raise ValueError("need 1 <= t <= T")


def _within_window(s: PeriSet, t: int, T: int) -> bool:
    return s.is_finite() and all(
        t <= n <= T for n, ch in enumerate(s.prefix) if ch == "1"
    )


def in_graded_family(s: PeriSet, params: GradedFamilyParams) -> str:
    """Return 'alpha', 'beta', or 'neither'."""
    if _within_window(s, params.t, params.T):
        return "alpha"
    if _within_window(complement(s), params.t, params.T):
        return "beta"
    return "neither"


@dataclass(frozen=True)
class GradedBoundReport:
    k: int
    T: int
    checked: int
    violations: tuple[tuple[Formula, str], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def single_point_valuation(T: int) -> dict[str, PeriSet]:
    return {"p": PeriSet.finite([T])}


def check_graded_bound(k: int, max_nodes: int) -> GradedBoundReport:
    """Check that with T = k+1 and the one-point valuation {T}, every
    formula over negation, disjunction, and next with c <= k next
    operators lands in alpha or beta at window [T-c, T]."""
    T = k + 1
    valuation = single_point_valuation(T)
    sig = Signature(("p",), frozenset({Connective.NEG, Connective.OR, Connective.X}))
    checked = 0
    violations = []
    for f in enumerate_formulas(sig, max_nodes):
        c = count_x(f)
        if c > k:
            continue
        verdict = in_graded_family(
            temporal_truth_set(f, valuation), GradedFamilyParams(T - c, T)
        )
        checked += 1
        if verdict == "neither":
            violations.append((f, verdict))
    return GradedBoundReport(k, T, checked, tuple(violations))


def count_x(f: Formula) -> int:
    return count_connective(f, Connective.X)


def refute_F_definition(candidate: Formula) -> int:
    """Least position where the candidate's truth set differs from that of
    eventually-p, under T = (number of X in candidate) + 1 and the
    one-point valuation {T}."""
    if formula_variables(candidate) - {"p"}:
        raise ValueError("candidate may only use variable p")
    extra = formula_connectives(candidate) - {Connective.NEG, Connective.OR, Connective.X}
    if extra:
        raise ValueError(f"candidate may only use ~, |, X (found {sorted(c.value for c in extra)})")
    T = count_x(candidate) + 1
    valuation = single_point_valuation(T)
    eventually_p = peri_F(valuation["p"])
    n = first_difference(temporal_truth_set(candidate, valuation), eventually_p)
    assert n is not None, "a bounded-lookahead candidate cannot match eventually-p"
    return n
