"""Problem definition files.

A problem is a JSON object with either a semigroup and two ideals::

    {"semigroup": {"rays": [[1, 0], [0, 1]]},
     "ideals": {"I": [[1, 0], [0, 1]], "J": [[1, 0], [0, 1]]},
     "options": {"grid": [10, 10], "kcap": 12}}

or a reference to an externally computed Hilbert table::

    {"table": "elliptic.csv"}

Table paths are resolved relative to the problem file.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from math import gcd
from pathlib import Path
from typing import Optional

import jsonschema

from .analysis import Analysis, Options
from .errors import InputError
from .hilbert import HilbertTable, ingest_table
from .ideals import MonomialIdeal, NormalFiltration
from .lattice import Semigroup2

_point = {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2}

SCHEMA = {
    "type": "object",
    "properties": {
        "semigroup": {
            "type": "object",
            "properties": {
                "rays": {"type": "array", "items": _point, "minItems": 2, "maxItems": 2},
                "grading": _point,
            },
            "required": ["rays"],
            "additionalProperties": False,
        },
        "ideals": {
            "type": "object",
            "properties": {
                "I": {"type": "array", "items": _point, "minItems": 1},
                "J": {"type": "array", "items": _point, "minItems": 1},
            },
            "required": ["I", "J"],
            "additionalProperties": False,
        },
        "table": {"type": "string", "minLength": 1},
        "label": {"type": "string"},
        "options": {
            "type": "object",
            "properties": {
                "grid": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2, "maxItems": 2},
                "window": {"type": "integer", "minimum": 0},
                "kcap": {"type": "integer", "minimum": 2},
                "fit_base": {"type": "integer", "minimum": 0},
                "fit_window": {"type": "integer", "minimum": 2},
                "negative_slack": {"type": "integer", "minimum": 0},
            },
            "additionalProperties": False,
        },
    },
    "oneOf": [
        {"required": ["semigroup", "ideals"], "not": {"required": ["table"]}},
        {"required": ["table"], "not": {"anyOf": [{"required": ["semigroup"]}, {"required": ["ideals"]}]}},
    ],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class ProblemSpec:
    label: str
    options: Options
    semigroup: Optional[Semigroup2] = None
    I: Optional[MonomialIdeal] = None
    J: Optional[MonomialIdeal] = None
    table: Optional[HilbertTable] = None
    digest: str = ""  # content hash of everything that determines the results

    @property
    def ingested(self) -> bool:
        return self.table is not None

    def with_options(self, **changes) -> "ProblemSpec":
        return replace(self, options=replace(self.options, **changes))

    def analysis(self) -> Analysis:
        if self.ingested:
            return Analysis(table=self.table, options=self.options, label=self.label)
        return Analysis(NormalFiltration(self.I, self.J), options=self.options, label=self.label)

    def describe(self) -> dict:
        if self.ingested:
            return {"source": "ingested", "label": self.label, "grid": [self.table.rmax, self.table.smax]}
        return {
            "source": "computed",
            "label": self.label,
            "semigroup": self.semigroup.describe(),
            "I": [list(g) for g in self.I.gens],
            "J": [list(g) for g in self.J.gens],
        }


def _schema_errors(data) -> list[str]:
    v = jsonschema.Draft202012Validator(SCHEMA)
    out = []
    for err in sorted(v.iter_errors(data), key=lambda e: list(e.absolute_path)):
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        if err.validator == "oneOf":
            out.append(f"{where}: give either semigroup+ideals or table, not both or neither")
        else:
            out.append(f"{where}: {err.message}")
    return out


def _options(raw: dict) -> Options:
    o = Options()
    kw = {}
    if "grid" in raw:
        kw["rmax"], kw["smax"] = raw["grid"]
    for key, attr in (("window", "cert_window"), ("kcap", "kcap"), ("fit_base", "fit_base"),
                      ("fit_window", "fit_window"), ("negative_slack", "slack")):
        if key in raw:
            kw[attr] = raw[key]
    return replace(o, **kw)


def _semantic(data: dict) -> tuple[list[str], Optional[Semigroup2], dict]:
    errs: list[str] = []
    rays = data["semigroup"]["rays"]
    for i, r in enumerate(rays):
        if r == [0, 0]:
            errs.append(f"semigroup/rays/{i}: ray must be nonzero")
        elif gcd(*r) != 1:
            errs.append(f"semigroup/rays/{i}: ray not primitive: {r}")
    S = None
    if not errs:
        try:
            S = Semigroup2(tuple(rays[0]), tuple(rays[1]), tuple(data["semigroup"]["grading"]) if "grading" in data["semigroup"] else None)
        except InputError as exc:
            errs.append(f"semigroup: {exc}")
    ideals = {}
    if S is not None:
        for name in ("I", "J"):
            gens = data["ideals"][name]
            bad = [g for g in gens if not S.contains(tuple(g))]
            if bad:
                errs.append(f"ideals/{name}: generator(s) outside the cone: {bad}")
                continue
            K = MonomialIdeal.from_generators(S, gens)
            if K.is_unit():
                errs.append(f"ideals/{name}: the unit ideal is not m-primary in the required sense")
            elif not K.is_m_primary:
                errs.append(f"ideals/{name}: not m-primary (no generator on one of the rays)")
            ideals[name] = K
    return errs, S, ideals


def _digest(data: dict, table: Optional[HilbertTable]) -> str:
    payload = dict(data)
    payload.pop("label", None)
    if table is not None:
        payload["table"] = sorted([r, s, v] for (r, s), v in table.values.items())
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def load_problem(data, base: Path = Path("."), label: str = "") -> ProblemSpec:
    """Validate an already-decoded problem object; every violation is reported at once."""
    errs = _schema_errors(data)
    if errs:
        raise InputError("invalid problem:\n  " + "\n  ".join(errs))
    options = _options(data.get("options", {}))
    label = data.get("label", label)
    if "table" in data:
        table = ingest_table(base / data["table"])
        return ProblemSpec(label, options, table=table, digest=_digest(data, table))
    errs, S, ideals = _semantic(data)
    if errs:
        raise InputError("invalid problem:\n  " + "\n  ".join(errs))
    return ProblemSpec(label, options, S, ideals["I"], ideals["J"], digest=_digest(data, None))


def parse_problem(path) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from None
    return load_problem(data, path.parent, label=path.stem)
