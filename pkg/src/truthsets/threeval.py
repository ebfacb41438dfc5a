"""Three-valued semantics with Kleene and Lukasiewicz implications.

Truth values are stored as integer halves: 0 = false, 1 = one half
("unknown"), 2 = true. This keeps every connective exact integer
arithmetic. A fuzzy truth set over n variables maps each of the 3^n
assignments (base-3 counter order, variable 0 most significant, digit
order 0 < half < 1) to a truth value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatchError, UnsupportedConnectiveError
from .formula import App, Connective, Const, Formula, Signature, Var

T_FALSE, T_HALF, T_TRUE = 0, 1, 2
TRIT_NAMES = {T_FALSE: "0", T_HALF: "1/2", T_TRUE: "1"}
# Canonical one-character serialization of each degree.
TRIT_CHARS = "0h1"

THREE_VALUED_CONNECTIVES = frozenset(
    {Connective.NEG, Connective.AND, Connective.OR, Connective.IMP_K, Connective.IMP_L}
)

_CONST_DEGREE = {"true": T_TRUE, "false": T_FALSE, "unk": T_HALF}


def trit_apply(conn: Connective, args: tuple[int, ...]) -> int:
    """Connective action on truth values: And = min, Or = max, Neg = 1-x,
    Kleene a->b = max(1-a, b), Lukasiewicz a->b = min(1, 1-a+b)."""
    if conn is Connective.NEG:
        return 2 - args[0]
    if conn is Connective.AND:
        return min(args)
    if conn is Connective.OR:
        return max(args)
    if conn is Connective.IMP_K:
        return max(2 - args[0], args[1])
    if conn is Connective.IMP_L:
        return min(2, 2 - args[0] + args[1])
    raise UnsupportedConnectiveError(f"{conn.value} is not a three-valued connective")


@dataclass(frozen=True)
class FuzzyTruthSet:
    signature: Signature
    degrees: tuple[int, ...]

    def degree(self, assignment: dict[str, int]) -> int:
        return self.degrees[assignment_index(self.signature, assignment)]

    def key(self) -> str:
        return "".join(TRIT_CHARS[d] for d in self.degrees)


def assignment_count(sig: Signature) -> int:
    return 3 ** len(sig.variables)


def assignment_from_index(sig: Signature, idx: int) -> dict[str, int]:
    n = len(sig.variables)
    return {v: idx // 3 ** (n - 1 - j) % 3 for j, v in enumerate(sig.variables)}


def assignment_index(sig: Signature, assignment: dict[str, int]) -> int:
    idx = 0
    for v in sig.variables:
        idx = idx * 3 + assignment[v]
    return idx


def var_fuzzy_set(sig: Signature, name: str) -> FuzzyTruthSet:
    if name not in sig.variables:
        raise ContextMismatchError(f"unknown variable {name!r}")
    j = sig.variables.index(name)
    n = len(sig.variables)
    degrees = tuple(idx // 3 ** (n - 1 - j) % 3 for idx in range(3**n))
    return FuzzyTruthSet(sig, degrees)


def fuzzy_apply(conn: Connective, args: list[FuzzyTruthSet]) -> FuzzyTruthSet:
    sig = args[0].signature
    if any(a.signature != sig for a in args[1:]):
        raise ContextMismatchError("fuzzy sets come from different signatures")
    degrees = tuple(
        trit_apply(conn, pointwise) for pointwise in zip(*(a.degrees for a in args))
    )
    return FuzzyTruthSet(sig, degrees)


def fuzzy_truth_set(f: Formula, sig: Signature) -> FuzzyTruthSet:
    if isinstance(f, Var):
        return var_fuzzy_set(sig, f.name)
    if isinstance(f, Const):
        size = assignment_count(sig)
        return FuzzyTruthSet(sig, (_CONST_DEGREE[f.value],) * size)
    if isinstance(f, App):
        return fuzzy_apply(f.conn, [fuzzy_truth_set(a, sig) for a in f.args])
    raise TypeError(f"not a formula: {f!r}")


def fuzzy_equivalent(
    f: Formula, g: Formula, sig: Signature
) -> tuple[bool, dict[str, int] | None]:
    """Fuzzy truth-set equality, with the least differing assignment on failure."""
    df = fuzzy_truth_set(f, sig).degrees
    dg = fuzzy_truth_set(g, sig).degrees
    for idx, (a, b) in enumerate(zip(df, dg)):
        if a != b:
            return False, assignment_from_index(sig, idx)
    return True, None
