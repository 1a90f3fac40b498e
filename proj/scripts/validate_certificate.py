#!/usr/bin/env python3
"""Validate a certificate / hyperbolicity report / construction JSON file.

The schema is selected by the document's top-level "format" field.  Exit
codes: 0 = valid, 1 = invalid, 2 = usage or I/O error.
"""

import argparse
import json
import sys
from pathlib import Path

SCHEMAS = {
    "blender-certificate": "certificate-v1.schema.json",
    "blender-hyperbolicity": "hyperbolicity-report-v1.schema.json",
    "blender-construction": "construction-v1.schema.json",
}

# Referenced (by $ref) from the certificate and report schemas.
CONSTRUCTION_SCHEMA = "construction-v1.schema.json"


def load_json(path: Path):
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


def validate(document, schema, construction_schema):
    import jsonschema

    try:
        # jsonschema >= 4.18: resolve $refs through a referencing.Registry.
        from referencing import Registry, Resource
        from referencing.jsonschema import DRAFT7

        registry = Registry().with_resource(
            CONSTRUCTION_SCHEMA,
            Resource.from_contents(construction_schema, default_specification=DRAFT7),
        )
        validator = jsonschema.Draft7Validator(schema, registry=registry)
    except ImportError:
        # Older jsonschema: the deprecated RefResolver API.
        resolver = jsonschema.RefResolver(
            base_uri="",
            referrer=schema,
            store={CONSTRUCTION_SCHEMA: construction_schema},
        )
        validator = jsonschema.Draft7Validator(schema, resolver=resolver)

    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
    for err in errors[:20]:
        where = "/".join(str(p) for p in err.path) or "<root>"
        print(f"invalid at {where}: {err.message}", file=sys.stderr)
    return not errors


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("document", type=Path, help="JSON file to validate")
    parser.add_argument(
        "--schema-dir",
        type=Path,
        default=Path(__file__).resolve().parent.parent / "schema",
        help="directory containing the *.schema.json files",
    )
    args = parser.parse_args()

    try:
        document = load_json(args.document)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot load `{args.document}`: {exc}", file=sys.stderr)
        return 2

    fmt = document.get("format") if isinstance(document, dict) else None
    if fmt not in SCHEMAS:
        print(
            f"error: unknown or missing `format` field ({fmt!r}); "
            f"expected one of {sorted(SCHEMAS)}",
            file=sys.stderr,
        )
        return 1

    try:
        schema = load_json(args.schema_dir / SCHEMAS[fmt])
        construction_schema = load_json(args.schema_dir / CONSTRUCTION_SCHEMA)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot load schema: {exc}", file=sys.stderr)
        return 2

    if validate(document, schema, construction_schema):
        print(f"{args.document}: valid {fmt} document")
        return 0
    return 1


if __name__ == "__main__":
    sys.exit(main())
