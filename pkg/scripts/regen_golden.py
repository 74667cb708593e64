"""Rewrite the CLI golden files under tests/golden from tests/golden/cases.json."""

import io
import json
import sys
from pathlib import Path

from uqwhittaker.cli import main

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    if code != 0:
        raise SystemExit(f"{argv} exited {code}: {err.getvalue()}")
    return out.getvalue()


def regen(check=False):
    cases = json.loads((GOLDEN / "cases.json").read_text())
    stale = []
    for name, argv in sorted(cases.items()):
        text = run(argv)
        path = GOLDEN / name
        if check:
            if not path.exists() or path.read_text() != text:
                stale.append(name)
        else:
            path.write_text(text)
            print(f"wrote {path.name} ({len(text)} bytes)")
    return stale


if __name__ == "__main__":
    stale = regen(check="--check" in sys.argv)
    if stale:
        print("stale:", ", ".join(stale))
        sys.exit(1)
