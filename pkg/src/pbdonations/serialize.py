"""Reading and writing the JSON instance document format.

A document is a single JSON object with exactly these fields: ``budget``,
``num_types``, ``projects`` (array of ``{name, cost, types}`` where ``types``
lists type indices), ``voters`` (array of ``{name, sat, donation}``), and the
``lower``/``upper`` bound arrays.  Names are the external identity of
projects and voters, so they must be unique.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from typing import Any

from .model import Instance, PBError, Project, Voter


class ParseError(PBError):
    """The document is not well-formed JSON."""


class ValidationError(PBError):
    """The document is JSON but violates the instance schema."""


_TOP_FIELDS = {"budget", "num_types", "projects", "voters", "lower", "upper"}
_PROJECT_FIELDS = {"name", "cost", "types"}
_VOTER_FIELDS = {"name", "sat", "donation"}


def _require_int(value: Any, where: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}: expected an integer, got {value!r}")
    if value < minimum:
        raise ValidationError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _require_int_array(value: Any, where: str, length: int | None = None) -> list[int]:
    if not isinstance(value, list):
        raise ValidationError(f"{where}: expected an array")
    if length is not None and len(value) != length:
        raise ValidationError(f"{where}: expected {length} entries, got {len(value)}")
    return [_require_int(x, f"{where}[{i}]") for i, x in enumerate(value)]


def _check_fields(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationError(f"{where}: unknown fields {sorted(unknown)}")
    missing = allowed - set(obj)
    if missing:
        raise ValidationError(f"{where}: missing fields {sorted(missing)}")


def parse_instance(text: str) -> Instance:
    """Parse and validate a document, expanding type index lists to bit vectors."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("top level: expected an object")
    _check_fields(doc, _TOP_FIELDS, "top level")
    budget = _require_int(doc["budget"], "budget")
    t = _require_int(doc["num_types"], "num_types")
    if not isinstance(doc["projects"], list) or not doc["projects"]:
        raise ValidationError("projects: expected a non-empty array")
    if not isinstance(doc["voters"], list) or not doc["voters"]:
        raise ValidationError("voters: expected a non-empty array")
    m = len(doc["projects"])

    projects = []
    for j, entry in enumerate(doc["projects"]):
        where = f"projects[{j}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where}: expected an object")
        _check_fields(entry, _PROJECT_FIELDS, where)
        name = entry["name"]
        if not isinstance(name, str) or not name:
            raise ValidationError(f"{where}.name: expected a non-empty string")
        cost = _require_int(entry["cost"], f"{where}.cost")
        indices = _require_int_array(entry["types"], f"{where}.types")
        bits = [0] * t
        for idx in indices:
            if idx >= t:
                raise ValidationError(f"{where}.types: index {idx} >= num_types {t}")
            if bits[idx]:
                raise ValidationError(f"{where}.types: duplicate index {idx}")
            bits[idx] = 1
        projects.append(Project(j, name, cost, tuple(bits)))
    names = [p.name for p in projects]
    if len(set(names)) != len(names):
        raise ValidationError("projects: names must be unique")

    voters = []
    for i, entry in enumerate(doc["voters"]):
        where = f"voters[{i}]"
        if not isinstance(entry, dict):
            raise ValidationError(f"{where}: expected an object")
        _check_fields(entry, _VOTER_FIELDS, where)
        name = entry["name"]
        if not isinstance(name, str) or not name:
            raise ValidationError(f"{where}.name: expected a non-empty string")
        sat = _require_int_array(entry["sat"], f"{where}.sat", m)
        donation = _require_int_array(entry["donation"], f"{where}.donation", m)
        voters.append(Voter(i, name, tuple(sat), tuple(donation)))
    vnames = [v.name for v in voters]
    if len(set(vnames)) != len(vnames):
        raise ValidationError("voters: names must be unique")

    lower = _require_int_array(doc["lower"], "lower", t)
    upper = _require_int_array(doc["upper"], "upper", t)
    for z in range(t):
        if lower[z] > upper[z]:
            raise ValidationError(f"lower[{z}] > upper[{z}] ({lower[z]} > {upper[z]})")
    try:
        return Instance(t, tuple(projects), tuple(voters), budget, tuple(lower), tuple(upper))
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def instance_to_document(instance: Instance) -> dict:
    """Plain-dict form of an instance, inverse of :func:`parse_instance`."""
    return {
        "budget": instance.budget,
        "num_types": instance.num_types,
        "projects": [
            {
                "name": p.name,
                "cost": p.cost,
                "types": [z for z, bit in enumerate(p.types) if bit],
            }
            for p in instance.projects
        ],
        "voters": [
            {"name": v.name, "sat": list(v.sat), "donation": list(v.donation)}
            for v in instance.voters
        ],
        "lower": list(instance.lower),
        "upper": list(instance.upper),
    }


def serialize_instance(instance: Instance) -> str:
    """Stable textual form: sorted keys, two-space indentation."""
    return json.dumps(instance_to_document(instance), indent=2, sort_keys=True) + "\n"
