"""A small validator for the subset of JSON Schema the shipped schemas use:
type, enum, pattern, minimum, properties, required, additionalProperties,
patternProperties, items, minItems, and maxItems, all inlined (no $ref)."""

from __future__ import annotations

import re

_TYPE_CHECKS = {
    "object": lambda v: isinstance(v, dict),
    "array": lambda v: isinstance(v, list),
    "string": lambda v: isinstance(v, str),
    "integer": lambda v: isinstance(v, int) and not isinstance(v, bool),
    "number": lambda v: isinstance(v, (int, float)) and not isinstance(v, bool),
    "boolean": lambda v: isinstance(v, bool),
    "null": lambda v: v is None,
}


def validate(instance, schema, path: str = "$") -> list[str]:
    """All conformance problems of ``instance`` against ``schema``.

    >>> validate(3, {"type": "integer", "minimum": 1})
    []
    >>> validate({"a": "x"}, {"type": "object", "additionalProperties": False})
    ["$: unexpected key 'a'"]
    """
    declared = schema.get("type")
    if declared is not None and not _TYPE_CHECKS[declared](instance):
        return [f"{path}: expected {declared}, got {type(instance).__name__}"]
    problems: list[str] = []
    if "enum" in schema and instance not in schema["enum"]:
        problems.append(f"{path}: {instance!r} not one of {schema['enum']}")
    if isinstance(instance, str) and "pattern" in schema:
        if not re.search(schema["pattern"], instance):
            problems.append(f"{path}: {instance!r} does not match {schema['pattern']!r}")
    if isinstance(instance, (int, float)) and not isinstance(instance, bool):
        if "minimum" in schema and instance < schema["minimum"]:
            problems.append(f"{path}: {instance} is below the minimum {schema['minimum']}")
    if isinstance(instance, dict):
        for key in schema.get("required", ()):
            if key not in instance:
                problems.append(f"{path}: missing required key {key!r}")
        props = schema.get("properties", {})
        patterns = schema.get("patternProperties", {})
        extra = schema.get("additionalProperties", True)
        for key, value in instance.items():
            sub = props.get(key)
            if sub is None:
                for pattern, pattern_schema in patterns.items():
                    if re.search(pattern, key):
                        sub = pattern_schema
                        break
            if sub is None:
                if extra is False:
                    problems.append(f"{path}: unexpected key {key!r}")
                    continue
                sub = extra if isinstance(extra, dict) else None
            if sub is not None:
                problems.extend(validate(value, sub, f"{path}.{key}"))
    if isinstance(instance, list):
        if "minItems" in schema and len(instance) < schema["minItems"]:
            problems.append(f"{path}: fewer than {schema['minItems']} items")
        if "maxItems" in schema and len(instance) > schema["maxItems"]:
            problems.append(f"{path}: more than {schema['maxItems']} items")
        item_schema = schema.get("items")
        if item_schema is not None:
            for index, value in enumerate(instance):
                problems.extend(validate(value, item_schema, f"{path}[{index}]"))
    return problems
