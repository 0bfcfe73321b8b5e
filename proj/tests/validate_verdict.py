"""Validate a counterexample verdict against the published JSON schema."""

import json
import sys

import jsonschema


def main(schema_path: str, verdict_path: str) -> int:
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    with open(verdict_path, encoding="utf-8") as f:
        verdict = json.load(f)
    try:
        jsonschema.validate(verdict, schema)
    except jsonschema.ValidationError as exc:
        print(f"schema violation: {exc.message} at {list(exc.absolute_path)}")
        return 1
    print(f"verdict {verdict['verdict']} conforms to {schema_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1], sys.argv[2]))
