"""JSON encoding of L-systems and NU-systems."""

from __future__ import annotations

import json

from .model import Extract, LSystem, NUSystem

LSYS_KEYS = ("kind", "alphabet", "rules", "coding", "axiom", "level", "length")
EXT_KEYS = ("sym", "level", "from", "to")


class FormatError(ValueError):
    pass


def _token_to_json(tok):
    if isinstance(tok, Extract):
        return {"ext": {"sym": tok.sym, "level": tok.level, "from": tok.start, "to": tok.end}}
    return tok


def _token_from_json(obj):
    if isinstance(obj, str):
        if len(obj) != 1:
            raise FormatError(f"plain token {obj!r} must be one character")
        return obj
    if isinstance(obj, dict) and set(obj) == {"ext"} and isinstance(obj["ext"], dict):
        ext = obj["ext"]
        if set(ext) != set(EXT_KEYS):
            raise FormatError(f"extraction token needs exactly the fields {EXT_KEYS}, got {sorted(ext)}")
        for k in ("level", "from", "to"):
            if not isinstance(ext[k], int) or isinstance(ext[k], bool):
                raise FormatError(f"extraction field {k!r} must be an integer")
        return Extract(ext["sym"], ext["level"], ext["from"], ext["to"])
    raise FormatError(f"bad token {obj!r}")


def to_dict(system) -> dict:
    if isinstance(system, LSystem):
        kind, rules, axiom = "lsystem", dict(system.rules), system.axiom
    elif isinstance(system, NUSystem):
        kind = "nusystem"
        rules = {a: [_token_to_json(t) for t in r] for a, r in system.rules.items()}
        axiom = [_token_to_json(t) for t in system.axiom]
    else:
        raise TypeError(f"not a system: {system!r}")
    return {"kind": kind, "alphabet": list(system.alphabet), "rules": rules,
            "coding": dict(system.coding), "axiom": axiom,
            "level": system.level, "length": system.length}


def dumps(system) -> str:
    return json.dumps(to_dict(system), ensure_ascii=False, separators=(",", ":"))


def from_dict(obj: dict):
    if not isinstance(obj, dict):
        raise FormatError("system description must be a JSON object")
    unknown = set(obj) - set(LSYS_KEYS)
    if unknown:
        raise FormatError(f"unknown fields: {sorted(unknown)}")
    missing = set(LSYS_KEYS) - {"coding"} - set(obj)
    if missing:
        raise FormatError(f"missing fields: {sorted(missing)}")
    for k in ("level", "length"):
        if not isinstance(obj[k], int) or isinstance(obj[k], bool):
            raise FormatError(f"{k!r} must be an integer")
    if not isinstance(obj["alphabet"], list) or not isinstance(obj["rules"], dict):
        raise FormatError("alphabet must be a list and rules an object")
    coding = obj.get("coding")
    if coding is not None and not isinstance(coding, dict):
        raise FormatError("coding must be an object")
    kind = obj["kind"]
    if kind == "lsystem":
        if not isinstance(obj["axiom"], str) or not all(isinstance(r, str) for r in obj["rules"].values()):
            raise FormatError("lsystem rules and axiom must be strings")
        return LSystem(obj["alphabet"], obj["rules"], obj["axiom"], obj["level"],
                       obj["length"], coding)
    if kind == "nusystem":
        def seq(v):
            if isinstance(v, str):
                return tuple(v)
            if not isinstance(v, list):
                raise FormatError("nusystem rules and axiom must be token arrays")
            return tuple(_token_from_json(t) for t in v)
        rules = {a: seq(v) for a, v in obj["rules"].items()}
        return NUSystem(obj["alphabet"], rules, seq(obj["axiom"]), obj["level"],
                        obj["length"], coding)
    raise FormatError(f"unknown kind {kind!r}")


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"malformed JSON: {e}") from e
    return from_dict(obj)


def load(path):
    with open(path, encoding="utf-8") as f:
        return loads(f.read())
