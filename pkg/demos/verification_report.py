#!/usr/bin/env python3
"""Running the verification harness and replaying its report.

Runs a small deterministic configuration, prints the text rendering, writes
the canonical JSON, and demonstrates that replaying the stored configuration
reproduces the report byte for byte.  The same flow is available on the
command line as `orbitkit verify` and `orbitkit replay`.
"""

import json
import tempfile
from pathlib import Path

from orbitkit import harness


def main():
    config = harness.RunConfig(suites=("symplectic", "vgit"), ns=(2, 3),
                               samples=5, seed=2026)
    report = harness.run(config)

    print("== text rendering (with timings) ==")
    print(report.to_text(include_timings=True))

    payload = report.to_json()
    path = Path(tempfile.mkdtemp()) / "report.json"
    path.write_text(payload, encoding="utf-8")
    print(f"== canonical JSON written to {path} ({len(payload)} bytes) ==")

    fresh, identical = harness.replay(json.loads(payload))
    print(f"replay reproduced the report byte for byte: {identical}")
    print(f"all claims registered: {len(harness.claim_ids())} claim ids, "
          f"{len(harness.check_names())} checks")


if __name__ == "__main__":
    main()
