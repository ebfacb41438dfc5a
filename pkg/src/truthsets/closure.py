"""Semantics-generic saturation of truth-set families and undefinability
certificates.

The engine works through a :class:`SemanticsHandle` bundling a fixed
structure (signature, Kripke model, or temporal valuation) with the
structure's connective action on truth sets and an injective canonical
serialization. Saturation grows the least family containing the seeds'
truth sets and closed under the chosen connectives, recording complete
application tables; a target formula whose truth set is absent from the
family is thereby proved undefinable over that structure.

Discovery order is fixed so names and tables reproduce bit for bit:
members are processed in ordinal order; for each member, unary
connectives apply first and then binary connectives, each paired with
every earlier-or-equal partner, current member on the left before on the
right; connectives always iterate in canonical tag order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterator, Mapping, Sequence

from .errors import CapExceededError, ReferenceLabelingError
from .formula import (
    Connective,
    Formula,
    Signature,
    TAG_ORDER,
    enumerate_formulas,
    format_formula,
)

DEFAULT_CAP = 4096


@dataclass(frozen=True)
class SemanticsHandle:
    """One of the four truth-set semantics, fixed to a concrete structure."""

    kind: str
    context: Any
    supported: frozenset[Connective]
    truth_set: Callable[[Formula], Any]
    apply: Callable[[Connective, list], Any]
    canonical_key: Callable[[Any], Hashable]
    repr_ts: Callable[[Any], str]
    parse_repr: Callable[[str], Any]
    context_json: Any


def default_name(i: int) -> str:
    """A, B, ..., Z, AA, AB, ... in discovery order."""
    name = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        name = chr(ord("A") + r) + name
    return name


def name_sort_key(name: str) -> tuple[int, str]:
    return len(name), name


@dataclass
class Family:
    """Truth sets in discovery order with canonical-key lookup and labels."""

    members: list = field(default_factory=list)
    index: dict = field(default_factory=dict)
    names: list[str] = field(default_factory=list)
    seed_count: int = 0

    def __len__(self) -> int:
        return len(self.members)

    def ordinal_of(self, key: Hashable) -> int | None:
        return self.index.get(key)

    def name_of(self, ordinal: int) -> str:
        return self.names[ordinal]

    def renamed(self, names: Sequence[str]) -> "Family":
        if len(names) != len(self.members) or len(set(names)) != len(names):
            raise ValueError("names must be distinct and cover the family")
        return Family(list(self.members), dict(self.index), list(names), self.seed_count)


Tables = dict[Connective, Any]  # unary: list[int]; binary: list[list[int]]


def saturate(
    sem: SemanticsHandle,
    seeds: Sequence[Formula],
    conns: Sequence[Connective] | frozenset[Connective],
    cap: int = DEFAULT_CAP,
) -> tuple[Family, Tables]:
    """Least family containing the seeds' truth sets and closed under the
    connectives, plus complete application tables over the final family."""
    conns = sorted(set(conns), key=TAG_ORDER.get)
    unsupported = [c for c in conns if c not in sem.supported]
    if unsupported:
        raise ValueError(
            f"{sem.kind} semantics does not interpret "
            f"{', '.join(c.value for c in unsupported)}"
        )
    unary = [c for c in conns if c.arity == 1]
    binary = [c for c in conns if c.arity == 2]

    family = Family()
    cells: dict[Connective, dict] = {c: {} for c in conns}

    def intern(ts) -> int:
        key = sem.canonical_key(ts)
        ordinal = family.index.get(key)
        if ordinal is None:
            if len(family.members) >= cap:
                raise CapExceededError(cap)
            ordinal = len(family.members)
            family.members.append(ts)
            family.index[key] = ordinal
            family.names.append(default_name(ordinal))
        return ordinal

    for f in seeds:
        intern(sem.truth_set(f))
    family.seed_count = len(family.members)

    i = 0
    while i < len(family.members):
        for c in unary:
            cells[c][(i,)] = intern(sem.apply(c, [family.members[i]]))
        for c in binary:
            for j in range(i + 1):
                cells[c][(i, j)] = intern(sem.apply(c, [family.members[i], family.members[j]]))
                if j != i:
                    cells[c][(j, i)] = intern(sem.apply(c, [family.members[j], family.members[i]]))
        i += 1

    size = len(family.members)
    tables: Tables = {}
    for c in unary:
        tables[c] = [cells[c][(i,)] for i in range(size)]
    for c in binary:
        tables[c] = [[cells[c][(i, j)] for j in range(size)] for i in range(size)]
    return family, tables


@dataclass
class ClosureCertificate:
    """Saturated family, application tables, and the target verdict.

    ``verdict`` is the target's ordinal in the family, or None when the
    target's truth set is excluded (the undefinability case). A member
    verdict means the method is inconclusive for this structure.
    """

    semantics: str
    context_json: Any
    seeds: tuple[Formula, ...]
    connectives: tuple[Connective, ...]
    family: Family
    tables: Tables
    target: Formula | None
    verdict: int | None
    iterations: int

    @property
    def excluded(self) -> bool:
        return self.target is not None and self.verdict is None


def prove_undefinable(
    sem: SemanticsHandle,
    target: Formula,
    seeds: Sequence[Formula],
    conns: Sequence[Connective] | frozenset[Connective],
    cap: int = DEFAULT_CAP,
) -> ClosureCertificate:
    family, tables = saturate(sem, seeds, conns, cap)
    verdict = family.ordinal_of(sem.canonical_key(sem.truth_set(target)))
    return ClosureCertificate(
        semantics=sem.kind,
        context_json=sem.context_json,
        seeds=tuple(seeds),
        connectives=tuple(sorted(set(conns), key=TAG_ORDER.get)),
        family=family,
        tables=tables,
        target=target,
        verdict=verdict,
        iterations=len(family.members),
    )


def closure_certificate(
    sem: SemanticsHandle,
    seeds: Sequence[Formula],
    conns: Sequence[Connective] | frozenset[Connective],
    cap: int = DEFAULT_CAP,
) -> ClosureCertificate:
    """A certificate with no target: just the family and its tables."""
    family, tables = saturate(sem, seeds, conns, cap)
    return ClosureCertificate(
        semantics=sem.kind,
        context_json=sem.context_json,
        seeds=tuple(seeds),
        connectives=tuple(sorted(set(conns), key=TAG_ORDER.get)),
        family=family,
        tables=tables,
        target=None,
        verdict=None,
        iterations=len(family.members),
    )


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    mismatch: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: ClosureCertificate, sem: SemanticsHandle) -> VerificationResult:
    """Recompute every table cell and the target verdict independently."""
    fam = cert.family
    keys = [sem.canonical_key(ts) for ts in fam.members]
    lookup = {k: i for i, k in enumerate(keys)}
    if len(lookup) != len(keys):
        return VerificationResult(False, "duplicate members in family")
    for f in cert.seeds:
        if sem.canonical_key(sem.truth_set(f)) not in lookup:
            return VerificationResult(False, f"seed {format_formula(f)} not in family")
    for c in cert.connectives:
        table = cert.tables[c]
        if c.arity == 1:
            for i in range(len(fam)):
                got = sem.canonical_key(sem.apply(c, [fam.members[i]]))
                if got != keys[table[i]]:
                    return VerificationResult(
                        False, f"table {c.value} row {fam.names[i]}"
                    )
        else:
            for i in range(len(fam)):
                for j in range(len(fam)):
                    got = sem.canonical_key(sem.apply(c, [fam.members[i], fam.members[j]]))
                    if got != keys[table[i][j]]:
                        return VerificationResult(
                            False,
                            f"table {c.value} row {fam.names[i]} column {fam.names[j]}",
                        )
    if cert.target is not None:
        tkey = sem.canonical_key(sem.truth_set(cert.target))
        if lookup.get(tkey) != cert.verdict:
            return VerificationResult(False, "target verdict")
    return VerificationResult(True)


def search_definition(
    sem: SemanticsHandle,
    target: Formula,
    sig: Signature,
    max_nodes: int,
) -> Formula | None:
    """First enumerated formula over ``sig`` with the target's truth set."""
    if not sig.connectives <= sem.supported:
        extra = sig.connectives - sem.supported
        raise ValueError(
            f"{sem.kind} semantics does not interpret "
            f"{', '.join(sorted(c.value for c in extra))}"
        )
    goal = sem.canonical_key(sem.truth_set(target))
    for f in enumerate_formulas(sig, max_nodes):
        if sem.canonical_key(sem.truth_set(f)) == goal:
            return f
    return None


# ---------------------------------------------------------------------------
# Reference labelings

@dataclass(frozen=True)
class ReferenceTable:
    """A published labeling of a closure family: row/column labels plus the
    application table of one binary connective, rows as label strings."""

    connective: Connective
    labels: tuple[str, ...]
    rows: tuple[str, ...]

    def cell(self, row: str, col: str) -> str:
        return self.rows[self.labels.index(row)][self.labels.index(col)]


def anchor_naming(
    family: Family,
    tables: Tables,
    anchors: Mapping[str, Formula],
    sem: SemanticsHandle,
    reference: ReferenceTable | None = None,
) -> Family:
    """Relabel the family so anchor formulas carry their given labels.

    With a reference table, the remaining labels are reconstructed
    constructively: scanning the reference repeatedly, a cell whose row
    and column labels are already resolved binds its entry label to the
    actual truth set our table produced there. The full table is then
    checked cell for cell against the reference.
    """
    resolved: dict[str, int] = {}
    for label, f in anchors.items():
        ordinal = family.ordinal_of(sem.canonical_key(sem.truth_set(f)))
        if ordinal is None:
            raise ReferenceLabelingError(
                f"anchor {label} = {format_formula(f)} is not in the family"
            )
        resolved[label] = ordinal

    if reference is None:
        taken = set(resolved)
        fresh = (name for i in range(2 * len(family) + 1)
                 if (name := default_name(i)) not in taken)
        names = [""] * len(family)
        for label, ordinal in resolved.items():
            names[ordinal] = label
        return family.renamed([n or next(fresh) for n in names])

    if reference.connective not in tables:
        raise ReferenceLabelingError(
            f"family has no table for {reference.connective.value}"
        )
    if len(reference.labels) != len(family):
        raise ReferenceLabelingError(
            f"reference names {len(reference.labels)} sets, family has {len(family)}"
        )
    table = tables[reference.connective]
    progress = True
    while progress and len(resolved) < len(reference.labels):
        progress = False
        for r in reference.labels:
            for c in reference.labels:
                if r not in resolved or c not in resolved:
                    continue
                entry = reference.cell(r, c)
                ordinal = table[resolved[r]][resolved[c]]
                if entry in resolved:
                    if resolved[entry] != ordinal:
                        raise ReferenceLabelingError(
                            f"cell ({r}, {c}) contradicts label {entry}"
                        )
                else:
                    resolved[entry] = ordinal
                    progress = True
    if len(resolved) < len(reference.labels):
        missing = sorted(set(reference.labels) - set(resolved))
        raise ReferenceLabelingError(
            f"labels {', '.join(missing)} are unreachable from the anchors"
        )
    if len(set(resolved.values())) != len(family):
        raise ReferenceLabelingError("reference labeling is not a bijection")
    for r in reference.labels:
        for c in reference.labels:
            if table[resolved[r]][resolved[c]] != resolved[reference.cell(r, c)]:
                raise ReferenceLabelingError(
                    f"cell ({r}, {c}) disagrees with the reference table"
                )
    names = [""] * len(family)
    for label, ordinal in resolved.items():
        names[ordinal] = label
    return family.renamed(names)
