"""Recompute the digest of an expectations file after a deliberate edit.

    python3 scripts/sign_expectations.py [src/rees_kit/expectations.json]
"""

import json
import sys

from rees_kit.cli import expectations_digest


def main(path: str) -> None:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    data["sha256"] = expectations_digest(data["cases"])
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(data["sha256"])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/rees_kit/expectations.json")
