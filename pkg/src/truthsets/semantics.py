"""Handle factories binding each semantics to a fixed structure, plus
certificate JSON round-tripping."""

from __future__ import annotations

from typing import Any

from . import boolsem, kripke, temporal, threeval
from .closure import ClosureCertificate, Family, SemanticsHandle, Tables
from .formula import Connective, Formula, Signature, format_formula, parse
from .kripke import KripkeModel
from .temporal import PeriSet

_CONNECTIVE_BY_SYMBOL = {c.value: c for c in Connective}


def boolean_semantics(sig: Signature) -> SemanticsHandle:
    return SemanticsHandle(
        kind="boolean",
        context=sig,
        supported=boolsem.BOOL_CONNECTIVES,
        truth_set=lambda f: boolsem.bool_truth_set(f, sig),
        apply=boolsem.bool_apply,
        canonical_key=lambda ts: ts.key(),
        repr_ts=lambda ts: ts.key(),
        parse_repr=lambda s: boolsem.BoolTruthSet(
            sig, sum(1 << i for i, ch in enumerate(s) if ch == "1")
        ),
        context_json={"variables": list(sig.variables)},
    )


def three_valued_semantics(sig: Signature) -> SemanticsHandle:
    return SemanticsHandle(
        kind="three_valued",
        context=sig,
        supported=threeval.THREE_VALUED_CONNECTIVES,
        truth_set=lambda f: threeval.fuzzy_truth_set(f, sig),
        apply=threeval.fuzzy_apply,
        canonical_key=lambda ts: ts.key(),
        repr_ts=lambda ts: ts.key(),
        parse_repr=lambda s: threeval.FuzzyTruthSet(
            sig, tuple(threeval.TRIT_CHARS.index(ch) for ch in s)
        ),
        context_json={"variables": list(sig.variables)},
    )


def kripke_semantics(model: KripkeModel) -> SemanticsHandle:
    return SemanticsHandle(
        kind="kripke",
        context=model,
        supported=kripke.KRIPKE_CONNECTIVES,
        truth_set=lambda f: kripke.kripke_truth_set(f, model),
        apply=kripke.heyting_apply,
        canonical_key=lambda ts: ts.key(),
        repr_ts=lambda ts: ts.key(),
        parse_repr=lambda s: kripke.WorldSet(
            model, sum(1 << i for i, ch in enumerate(s) if ch == "1")
        ),
        context_json=kripke.model_to_json(model),
    )


def temporal_semantics(valuation: dict[str, PeriSet]) -> SemanticsHandle:
    return SemanticsHandle(
        kind="temporal",
        context=valuation,
        supported=temporal.TEMPORAL_CONNECTIVES,
        truth_set=lambda f: temporal.temporal_truth_set(f, valuation),
        apply=_temporal_apply,
        canonical_key=lambda ts: ts.key(),
        repr_ts=lambda ts: ts.key(),
        parse_repr=PeriSet.from_key,
        context_json=temporal.valuation_to_json(valuation),
    )


def _temporal_apply(conn: Connective, args: list[PeriSet]) -> PeriSet:
    if conn is Connective.F:
        return temporal.peri_F(args[0])
    if conn is Connective.X:
        return temporal.peri_X(args[0])
    if conn is Connective.U:
        return temporal.peri_U(args[0], args[1])
    if conn is Connective.W:
        return temporal.peri_W(args[0], args[1])
    return temporal.peri_bool(conn, args)


def semantics_from_json(kind: str, context: Any) -> SemanticsHandle:
    if kind == "boolean":
        return boolean_semantics(Signature(tuple(context["variables"]), frozenset()))
    if kind == "three_valued":
        return three_valued_semantics(Signature(tuple(context["variables"]), frozenset()))
    if kind == "kripke":
        return kripke_semantics(kripke.model_from_json(context))
    if kind == "temporal":
        return temporal_semantics(temporal.valuation_from_json(context))
    raise ValueError(f"unknown semantics kind {kind!r}")


# ---------------------------------------------------------------------------
# Certificate JSON

def certificate_to_json(cert: ClosureCertificate, sem: SemanticsHandle) -> dict:
    names = cert.family.names
    tables: dict[str, Any] = {}
    for conn, table in cert.tables.items():
        if conn.arity == 1:
            tables[conn.value] = [names[k] for k in table]
        else:
            tables[conn.value] = [[names[k] for k in row] for row in table]
    if cert.target is None:
        target = None
    elif cert.verdict is None:
        target = {"formula": format_formula(cert.target), "verdict": "excluded"}
    else:
        target = {
            "formula": format_formula(cert.target),
            "verdict": "member",
            "member": names[cert.verdict],
        }
    return {
        "semantics": cert.semantics,
        "context": cert.context_json,
        "seeds": [format_formula(f) for f in cert.seeds],
        "connectives": [c.value for c in cert.connectives],
        "members": [
            {"name": name, "repr": sem.repr_ts(ts)}
            for name, ts in zip(names, cert.family.members)
        ],
        "tables": tables,
        "target": target,
    }


def certificate_from_json(data: dict) -> tuple[ClosureCertificate, SemanticsHandle]:
    sem = semantics_from_json(data["semantics"], data["context"])
    members = [sem.parse_repr(entry["repr"]) for entry in data["members"]]
    names = [entry["name"] for entry in data["members"]]
    ordinal = {name: i for i, name in enumerate(names)}
    seeds = tuple(parse(text) for text in data["seeds"])
    family = Family(
        members=members,
        index={sem.canonical_key(ts): i for i, ts in enumerate(members)},
        names=names,
        seed_count=len({sem.canonical_key(sem.truth_set(f)) for f in seeds}),
    )
    tables: Tables = {}
    for symbol, table in data["tables"].items():
        conn = _CONNECTIVE_BY_SYMBOL[symbol]
        if conn.arity == 1:
            tables[conn] = [ordinal[name] for name in table]
        else:
            tables[conn] = [[ordinal[name] for name in row] for row in table]
    target_entry = data.get("target")
    if target_entry is None:
        target, verdict = None, None
    else:
        target = parse(target_entry["formula"])
        verdict = None
        if target_entry["verdict"] == "member":
            verdict = ordinal[target_entry["member"]]
    cert = ClosureCertificate(
        semantics=data["semantics"],
        context_json=data["context"],
        seeds=seeds,
        connectives=tuple(_CONNECTIVE_BY_SYMBOL[s] for s in data["connectives"]),
        family=family,
        tables=tables,
        target=target,
        verdict=verdict,
        iterations=len(members),
    )
    return cert, sem
