"""The bundled corpus of decomposition configurations and their known
realizations, with schema validation and verification."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .errors import InvalidInput, SchemaError
from .smallgroup import TameConfig, catalog_group, known_obstruction

SCHEMA = "tameconf-corpus/1"
STATUSES = ("realizable", "not_realizable", "unknown")


@dataclass(frozen=True)
class PrimeClaim:
    p: int
    e: int
    f: int
    pattern: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Realization:
    polynomial: tuple[int, ...]  # constant term first
    primes: tuple[PrimeClaim, ...]


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    group: str
    row: int
    pairs: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]  # (T words, Z words)
    status: str
    obstruction: Optional[str] = None
    realization: Optional[Realization] = None
    note: Optional[str] = None

    def config(self) -> TameConfig:
        G = catalog_group(self.group)
        Ts = tuple(G.subgroup([G.element(w) for w in T]) for T, _ in self.pairs)
        Zs = tuple(G.subgroup([G.element(w) for w in Z]) for _, Z in self.pairs)
        return TameConfig(G, Ts, Zs)


def _need(obj, key, kind, loc):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}", loc)
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise SchemaError(f"field {key!r} must be an integer", loc)
    if kind is not int and not isinstance(val, kind):
        raise SchemaError(f"field {key!r} has the wrong type", loc)
    return val


def _words(val, loc) -> tuple[str, ...]:
    if not isinstance(val, list) or not val or not all(isinstance(w, str) for w in val):
        raise SchemaError("expected a non-empty list of words", loc)
    return tuple(val)


def _parse_entry(raw, loc: str) -> CorpusEntry:
    eid = _need(raw, "id", str, loc)
    group = _need(raw, "group", str, loc)
    row = _need(raw, "row", int, loc)
    status = _need(raw, "status", str, loc)
    if status not in STATUSES:
        raise SchemaError(f"status must be one of {STATUSES}", loc)
    pairs_raw = _need(raw, "pairs", list, loc)
    if not pairs_raw:
        raise SchemaError("pairs must be non-empty", loc)
    pairs = []
    for i, pr in enumerate(pairs_raw):
        ploc = f"{loc}.pairs[{i}]"
        pairs.append((_words(_need(pr, "T", list, ploc), ploc + ".T"),
                      _words(_need(pr, "Z", list, ploc), ploc + ".Z")))
    real = None
    if raw.get("realization") is not None:
        rloc = f"{loc}.realization"
        rr = raw["realization"]
        poly = _need(rr, "polynomial", list, rloc)
        if len(poly) < 2 or not all(isinstance(c, int) and not isinstance(c, bool) for c in poly) or poly[-1] == 0:
            raise SchemaError("polynomial must list integer coefficients, constant first", rloc)
        claims = []
        for j, c in enumerate(_need(rr, "primes", list, rloc)):
            cloc = f"{rloc}.primes[{j}]"
            pat = _need(c, "pattern", list, cloc)
            if not pat or not all(isinstance(x, list) and len(x) == 2 and all(isinstance(y, int) for y in x) for x in pat):
                raise SchemaError("pattern must be a list of [e, f] pairs", cloc)
            claims.append(PrimeClaim(_need(c, "p", int, cloc), _need(c, "e", int, cloc), _need(c, "f", int, cloc),
                                     tuple((x[0], x[1]) for x in pat)))
        if not claims:
            raise SchemaError("a realization needs at least one prime", rloc)
        real = Realization(tuple(poly), tuple(claims))
    if status == "realizable" and real is None:
        raise SchemaError("realizable entries need a realization", loc)
    if status != "realizable" and real is not None:
        raise SchemaError("only realizable entries carry a realization", loc)
    obstruction = raw.get("obstruction")
    if status == "not_realizable" and not isinstance(obstruction, str):
        raise SchemaError("not_realizable entries name their obstruction", loc)
    note = raw.get("note")
    if note is not None and not isinstance(note, str):
        raise SchemaError("note must be a string", loc)
    return CorpusEntry(eid, group, row, tuple(pairs), status, obstruction, real, note)


def parse_corpus(doc) -> list[CorpusEntry]:
    if not isinstance(doc, dict):
        raise SchemaError("corpus must be a JSON object", "$")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"schema must be {SCHEMA!r}", "$.schema")
    raw = doc.get("entries")
    if not isinstance(raw, list) or not raw:
        raise SchemaError("entries must be a non-empty list", "$.entries")
    entries = [_parse_entry(r, f"$.entries[{i}]") for i, r in enumerate(raw)]
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise SchemaError("entry ids must be unique", "$.entries")
    return entries


def default_corpus_path() -> Path:
    return Path(str(resources.files("tameconf") / "data" / "corpus.json"))


def load_corpus(path=None) -> list[CorpusEntry]:
    path = Path(path) if path is not None else default_corpus_path()
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise SchemaError("empty corpus file", str(path))
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", str(path)) from exc
    return parse_corpus(doc)


def entry_to_json(e: CorpusEntry) -> dict:
    out = {
        "id": e.id,
        "group": e.group,
        "row": e.row,
        "pairs": [{"T": list(T), "Z": list(Z)} for T, Z in e.pairs],
        "status": e.status,
    }
    if e.obstruction is not None:
        out["obstruction"] = e.obstruction
    if e.realization is not None:
        out["realization"] = {
            "polynomial": list(e.realization.polynomial),
            "primes": [{"p": c.p, "e": c.e, "f": c.f, "pattern": [list(x) for x in c.pattern]}
                       for c in e.realization.primes],
        }
    if e.note is not None:
        out["note"] = e.note
    return out


def dump_corpus(entries: Sequence[CorpusEntry]) -> dict:
    return {"schema": SCHEMA, "entries": [entry_to_json(e) for e in entries]}


def find_entry(entries: Sequence[CorpusEntry], eid: str) -> CorpusEntry:
    for e in entries:
        if e.id == eid:
            return e
    raise InvalidInput(f"no corpus entry {eid!r}")


def verify_entry(entry: CorpusEntry) -> dict:
    """Status "pass", "fail", "unknown" or "index_obstruction" plus details.

    Realizable rows are checked by the polynomial verifier and against the
    (e, f) their configuration forces; not-realizable rows must be flagged
    by the named obstruction predicate.
    """
    from .polyfield import verify_table_entry

    details: list[str] = []
    try:
        cfg = entry.config()
    except InvalidInput as exc:
        return {"id": entry.id, "status": "fail", "details": [f"configuration: {exc}"]}
    verdict = known_obstruction(cfg)
    if entry.status == "unknown":
        return {"id": entry.id, "status": "unknown", "details": ["no realization is recorded"],
                "obstruction": verdict.reason}
    if entry.status == "not_realizable":
        if not verdict.obstructed:
            details.append("no obstruction predicate fires")
        elif verdict.reason != entry.obstruction:
            details.append(f"obstruction {verdict.reason!r} differs from recorded {entry.obstruction!r}")
        return {"id": entry.id, "status": "fail" if details else "pass", "details": details,
                "obstruction": verdict.reason}
    if verdict.obstructed:
        details.append(f"a realizable row is flagged by {verdict.reason}")
    claims = entry.realization.primes
    if len(claims) != cfg.s:
        details.append(f"{len(claims)} primes listed for {cfg.s} pairs")
    for c, T, Z in zip(claims, cfg.T, cfg.Z):
        if (c.e, c.f) != (T.order, Z.order // T.order):
            details.append(f"(e, f) at {c.p} is ({c.e}, {c.f}) but the configuration forces "
                           f"({T.order}, {Z.order // T.order})")
    rep = verify_table_entry(entry)
    status = rep.status if rep.status != "pass" else ("fail" if details else "pass")
    return {"id": entry.id, "status": status, "details": details + rep.details,
            "ramified": {str(p): pat for p, pat in rep.ramified.items()}}
