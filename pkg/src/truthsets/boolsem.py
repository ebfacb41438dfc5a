"""Classical two-valued semantics: truth sets as sets of valuations.

A truth set over an n-variable signature is a bitset indexed by the 2^n
assignments in counter order: variables in signature order form the bits
of the counter, variable 0 most significant. Bit i of ``bits`` is
assignment index i.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatchError, UnsupportedConnectiveError
from .formula import App, Connective, Const, Formula, Signature, Var

BOOL_CONNECTIVES = frozenset(
    {Connective.NEG, Connective.AND, Connective.OR, Connective.IMP}
)


@dataclass(frozen=True)
class BoolTruthSet:
    signature: Signature
    bits: int

    def contains(self, assignment: dict[str, int]) -> bool:
        return bool(self.bits >> assignment_index(self.signature, assignment) & 1)

    def key(self) -> str:
        """Canonical serialization: one '0'/'1' per assignment index."""
        n = 1 << len(self.signature.variables)
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(n))


def full_mask(sig: Signature) -> int:
    return (1 << (1 << len(sig.variables))) - 1


def assignment_from_index(sig: Signature, idx: int) -> dict[str, int]:
    n = len(sig.variables)
    return {v: idx >> (n - 1 - j) & 1 for j, v in enumerate(sig.variables)}


def assignment_index(sig: Signature, assignment: dict[str, int]) -> int:
    idx = 0
    for v in sig.variables:
        idx = idx << 1 | assignment[v]
    return idx


def var_truth_set(sig: Signature, name: str) -> BoolTruthSet:
    if name not in sig.variables:
        raise ContextMismatchError(f"unknown variable {name!r}")
    j = sig.variables.index(name)
    n = len(sig.variables)
    bits = 0
    for idx in range(1 << n):
        if idx >> (n - 1 - j) & 1:
            bits |= 1 << idx
    return BoolTruthSet(sig, bits)


def bool_apply(conn: Connective, args: list[BoolTruthSet]) -> BoolTruthSet:
    """Pointwise connective action: Neg complement, And intersection,
    Or union, Imp(A, B) = complement(A) union B."""
    sig = args[0].signature
    if any(a.signature != sig for a in args[1:]):
        raise ContextMismatchError("truth sets come from different signatures")
    full = full_mask(sig)
    if conn is Connective.NEG:
        bits = args[0].bits ^ full
    elif conn is Connective.AND:
        bits = args[0].bits & args[1].bits
    elif conn is Connective.OR:
        bits = args[0].bits | args[1].bits
    elif conn is Connective.IMP:
        bits = (args[0].bits ^ full) | args[1].bits
    else:
        raise UnsupportedConnectiveError(
            f"{conn.value} is not a classical connective"
        )
    return BoolTruthSet(sig, bits)


def bool_truth_set(f: Formula, sig: Signature) -> BoolTruthSet:
    if isinstance(f, Var):
        return var_truth_set(sig, f.name)
    if isinstance(f, Const):
        if f.value == "true":
            return BoolTruthSet(sig, full_mask(sig))
        if f.value == "false":
            return BoolTruthSet(sig, 0)
        raise UnsupportedConnectiveError("constant 'unk' needs three-valued semantics")
    if isinstance(f, App):
        return bool_apply(f.conn, [bool_truth_set(a, sig) for a in f.args])
    raise TypeError(f"not a formula: {f!r}")


def bool_equivalent(
    f: Formula, g: Formula, sig: Signature
) -> tuple[bool, dict[str, int] | None]:
    """Truth-set equality, with the least distinguishing assignment on failure."""
    diff = bool_truth_set(f, sig).bits ^ bool_truth_set(g, sig).bits
    if diff == 0:
        return True, None
    least = (diff & -diff).bit_length() - 1
    return False, assignment_from_index(sig, least)
