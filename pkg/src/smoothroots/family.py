"""On-disk description of a curve family: the input format of the CLI.

A FamilySpec is one JSON document with exactly one `kind`:

* poly-jet: a polynomial curve by coefficient jets (exact input);
* poly-sampled: per-sample coefficient rows on a time grid;
* hermitian-jet: a matrix curve by entry jets;
* hermitian-sampled: per-sample numeric hermitian matrices;
* corpus:<name>: a named generator plus its parameters.

Serialization is canonical (sorted keys, fixed indentation, trailing
newline) so that emitted files re-ingest byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InputError

KINDS = ("poly-jet", "poly-sampled", "hermitian-jet", "hermitian-sampled")


def _check_grid(ts) -> None:
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise InputError("sample grid must be strictly increasing")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    payload: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS and not self.kind.startswith("corpus:"):
            raise InputError(f"unknown family kind {self.kind!r}")
        if self.kind == "poly-jet":
            degree = len(self.payload.get("coeffs", ()))
            order = self.options.get("order")
            if order is not None and order < degree:
                raise InputError(
                    f"order {order} below degree {degree}")
        for ts in (self.payload.get("ts"), self.options.get("grid")):
            if ts is not None:
                _check_grid(ts)

    def to_json(self) -> dict:
        return {"schema": 1, "kind": self.kind,
                "payload": self.payload, "options": self.options}

    @classmethod
    def from_json(cls, obj: dict) -> "FamilySpec":
        if not isinstance(obj, dict) or "kind" not in obj:
            raise InputError("family JSON needs a 'kind' field")
        return cls(kind=obj["kind"], payload=obj.get("payload", {}),
                   options=obj.get("options", {}))

    def canonical(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.canonical())

    @classmethod
    def load(cls, path) -> "FamilySpec":
        with open(path, encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as exc:
                raise InputError(f"not valid JSON: {exc}") from exc
        return cls.from_json(obj)
