"""Intuitionistic semantics over a fixed finite Kripke model.

Worlds are named; the order ``leq`` is a set of (lower, upper) pairs that
must be reflexive, transitive, and antisymmetric. Valuations and every
truth set produced here are upward closed (truth persists up the order).
World sets are bitmasks over the world list, bit i = world i in
declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ContextMismatchError, ModelError, UnsupportedConnectiveError
from .formula import App, Connective, Const, Formula, Var

KRIPKE_CONNECTIVES = frozenset(
    {Connective.NEG, Connective.AND, Connective.OR, Connective.IMP}
)


class KripkeModel:
    """Finite poset with a valuation. Construction does not validate;
    call :func:`validate_model` or use :func:`build_model`."""

    def __init__(
        self,
        worlds: Iterable[str],
        leq: Iterable[tuple[str, str]],
        valuation: Mapping[str, Iterable[str]],
    ):
        self.worlds = tuple(worlds)
        self.index = {w: i for i, w in enumerate(self.worlds)}
        if len(self.index) != len(self.worlds):
            raise ValueError("world names must be distinct")
        self.leq = frozenset((a, b) for a, b in leq)
        for a, b in self.leq:
            if a not in self.index or b not in self.index:
                raise ValueError(f"order relates unknown world in ({a!r}, {b!r})")
        self.valuation = {p: frozenset(ws) for p, ws in valuation.items()}
        for p, ws in self.valuation.items():
            for w in ws:
                if w not in self.index:
                    raise ValueError(f"valuation of {p!r} names unknown world {w!r}")
        # up_masks[i] = bitmask of worlds u with (w_i, u) in leq.
        self.up_masks = [0] * len(self.worlds)
        for a, b in self.leq:
            self.up_masks[self.index[a]] |= 1 << self.index[b]
        self.full = (1 << len(self.worlds)) - 1

    def var_mask(self, name: str) -> int:
        mask = 0
        for w in self.valuation[name]:
            mask |= 1 << self.index[w]
        return mask

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KripkeModel)
            and self.worlds == other.worlds
            and self.leq == other.leq
            and self.valuation == other.valuation
        )

    def __repr__(self) -> str:
        return f"KripkeModel(worlds={self.worlds!r})"


@dataclass(frozen=True)
class ModelViolation:
    axiom: str
    witness: tuple

    def __str__(self) -> str:
        return f"{self.axiom} violated at {self.witness}"


def validate_model(m: KripkeModel) -> ModelViolation | None:
    """Check the poset axioms and valuation persistence; None means ok."""
    for w in m.worlds:
        if (w, w) not in m.leq:
            return ModelViolation("reflexivity", (w,))
    for a, b in m.leq:
        for c in m.worlds:
            if (b, c) in m.leq and (a, c) not in m.leq:
                return ModelViolation("transitivity", (a, b, c))
    for a, b in m.leq:
        if a != b and (b, a) in m.leq:
            return ModelViolation("antisymmetry", (a, b))
    for p in sorted(m.valuation):
        mask = m.var_mask(p)
        for i, w in enumerate(m.worlds):
            if mask >> i & 1 and m.up_masks[i] & ~mask:
                above = (m.up_masks[i] & ~mask & -(m.up_masks[i] & ~mask)).bit_length() - 1
                return ModelViolation("persistence", (p, w, m.worlds[above]))
    return None


def reflexive_transitive_closure(
    worlds: Iterable[str], pairs: Iterable[tuple[str, str]]
) -> frozenset[tuple[str, str]]:
    worlds = tuple(worlds)
    rel = {(w, w) for w in worlds} | {(a, b) for a, b in pairs}
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for b2, c in list(rel):
                if b == b2 and (a, c) not in rel:
                    rel.add((a, c))
                    changed = True
    return frozenset(rel)


def build_model(
    worlds: Iterable[str],
    leq: Iterable[tuple[str, str]],
    valuation: Mapping[str, Iterable[str]],
    close: bool = False,
) -> KripkeModel:
    """Construct and validate; with ``close`` the reflexive-transitive
    closure of the given pairs is taken first."""
    worlds = tuple(worlds)
    if close:
        leq = reflexive_transitive_closure(worlds, leq)
    model = KripkeModel(worlds, leq, valuation)
    violation = validate_model(model)
    if violation is not None:
        raise ModelError(str(violation))
    return model


@dataclass(eq=False)
class WorldSet:
    model: KripkeModel
    mask: int

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(w for i, w in enumerate(self.model.worlds) if self.mask >> i & 1)

    def key(self) -> str:
        return "".join("1" if self.mask >> i & 1 else "0" for i in range(len(self.model.worlds)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WorldSet)
            and self.mask == other.mask
            and self.model.worlds == other.model.worlds
            and self.model.leq == other.model.leq
        )

    def __repr__(self) -> str:
        return f"WorldSet({{{', '.join(self.members)}}})"


def is_upward_closed(m: KripkeModel, mask: int) -> bool:
    for i in range(len(m.worlds)):
        if mask >> i & 1 and m.up_masks[i] & ~mask:
            return False
    return True


def upward_closed_masks(m: KripkeModel) -> list[int]:
    """All upward-closed world sets, ascending as bitmask integers."""
    return [mask for mask in range(m.full + 1) if is_upward_closed(m, mask)]


def heyting_apply(conn: Connective, args: list[WorldSet]) -> WorldSet:
    """Set-level connective action: And intersection, Or union,
    Neg(S) = worlds whose upset misses S, Imp(A, B) = worlds whose upset
    satisfies A only inside B."""
    m = args[0].model
    if any(a.model is not m and a.model != m for a in args[1:]):
        raise ContextMismatchError("world sets come from different models")
    if conn is Connective.AND:
        mask = args[0].mask & args[1].mask
    elif conn is Connective.OR:
        mask = args[0].mask | args[1].mask
    elif conn is Connective.NEG:
        mask = 0
        for i in range(len(m.worlds)):
            if m.up_masks[i] & args[0].mask == 0:
                mask |= 1 << i
    elif conn is Connective.IMP:
        mask = 0
        for i in range(len(m.worlds)):
            if m.up_masks[i] & args[0].mask & ~args[1].mask == 0:
                mask |= 1 << i
    else:
        raise UnsupportedConnectiveError(
            f"{conn.value} is not an intuitionistic connective"
        )
    result = WorldSet(m, mask)
    assert is_upward_closed(m, mask), f"persistence broken by {conn.value}"
    return result


def kripke_truth_set(f: Formula, m: KripkeModel) -> WorldSet:
    if isinstance(f, Var):
        if f.name not in m.valuation:
            raise ContextMismatchError(f"unknown variable {f.name!r}")
        return WorldSet(m, m.var_mask(f.name))
    if isinstance(f, Const):
        if f.value == "true":
            return WorldSet(m, m.full)
        if f.value == "false":
            return WorldSet(m, 0)
        raise UnsupportedConnectiveError("constant 'unk' needs three-valued semantics")
    if isinstance(f, App):
        return heyting_apply(f.conn, [kripke_truth_set(a, m) for a in f.args])
    raise TypeError(f"not a formula: {f!r}")


def cover_pairs(m: KripkeModel) -> list[tuple[str, str]]:
    """Hasse-diagram cover relations in world declaration order."""
    covers = []
    for a in m.worlds:
        for b in m.worlds:
            if a == b or (a, b) not in m.leq:
                continue
            if any(
                c != a and c != b and (a, c) in m.leq and (c, b) in m.leq
                for c in m.worlds
            ):
                continue
            covers.append((a, b))
    covers.sort(key=lambda p: (m.index[p[0]], m.index[p[1]]))
    return covers


def model_to_json(m: KripkeModel) -> dict:
    return {
        "worlds": list(m.worlds),
        "leq": [[a, b] for a, b in cover_pairs(m)],
        "valuation": {p: sorted(ws, key=m.index.get) for p, ws in sorted(m.valuation.items())},
    }


def model_from_json(data: dict) -> KripkeModel:
    return build_model(
        data["worlds"],
        [(a, b) for a, b in data.get("leq", [])],
        data.get("valuation", {}),
        close=True,
    )
