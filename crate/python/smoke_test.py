#!/usr/bin/env python3
"""Smoke test for the itegory_py extension module.

Builds nothing itself: it locates the compiled cdylib under target/
(release preferred), exposes it under the importable name, and exercises
the main surfaces end to end. Build first with

    cargo build -p itegory-py --release
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def locate_module():
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libitegory_py.so", "libitegory_py.dylib", "itegory_py.dll")
    ]
    for built in candidates:
        if built.exists():
            staging = Path(tempfile.mkdtemp(prefix="itegory-py-"))
            suffix = ".pyd" if built.suffix == ".dll" else ".so"
            shutil.copy2(built, staging / f"itegory_py{suffix}")
            sys.path.insert(0, str(staging))
            return built
    sys.exit(
        "itegory_py is not built; run `cargo build -p itegory-py --release` first"
    )


def main():
    built = locate_module()
    import itegory_py as it

    checks = 0

    def check(cond, label):
        nonlocal checks
        checks += 1
        if not cond:
            sys.exit(f"FAIL: {label}")

    # the three-state loop: iterate f until g applies
    f = it.Map.from_table(3, 3, [1, 2, None])
    g = it.Map.from_table(3, 1, [None, None, 0])
    w = it.kleene_wand(f, g)
    check(w.table() == [0, 0, 0], "kleene_wand walks the chain")
    check(
        [it.step_simulate(f, g, x) for x in range(3)] == [0, 0, 0],
        "oracle agrees with the operator",
    )

    # a cycle stays undefined
    cyc = it.Map.from_table(3, 3, [1, 0, None])
    w2 = it.kleene_wand(cyc, g)
    check(w2.table() == [None, None, 0], "cycles are undefined")

    # star, restriction, complement
    check(it.upper_star(f).table() == [2, 2, 2], "star reaches the last point")
    r = f.restriction()
    check(r.is_rest_idem(), "restriction is an idempotent")
    check(it.complement(r).table() == [None, None, 2], "complement flips the subset")

    # disjointness is checked, and violations raise
    check(it.perp(f, g), "partitioned maps are disjoint")
    try:
        it.kleene_wand(f, it.Map.from_table(3, 1, [0, None, None]))
        sys.exit("FAIL: overlapping maps must be rejected")
    except ValueError as e:
        check("element 0" in str(e), "the clash names its element")

    # JSON round trip
    again = it.Map.from_json(w.to_json())
    check(again == w, "JSON round trip")

    # law harness
    check("⩚.oracle" in it.law_ids(), "registry lists the oracle law")
    report = json.loads(it.run_law("wand.1", seed=7, cases=100))
    check(report["status"] == "pass", "fixed-point law passes")
    report2 = json.loads(it.run_law("Yanking", seed=7, cases=50))
    check(report2["status"] == "pass", "yanking passes")

    # the flowchart language
    program = """
set X { s0 s1 s2 }
set A { done }
map f : X -> X { s0->s1 s1->s2 }
map g : X -> A { s2->done }
let loop = until g do f
eval loop at s0
"""
    check(it.run_program(program) == ["done"], "flowchart loop runs to done")
    check("until g do f" in it.pretty_program(program), "pretty printer")

    # matrix trace through JSON
    matrix = {
        "dom": [2, 1],
        "cod": [2, 1],
        "entries": [
            [
                {"dom": 2, "cod": 2, "table": [1, None]},
                {"dom": 2, "cod": 1, "table": [None, 0]},
            ],
            [
                {"dom": 1, "cod": 2, "table": [0]},
                {"dom": 1, "cod": 1, "table": [None]},
            ],
        ],
    }
    traced = json.loads(it.trace_json(json.dumps(matrix), 1))
    check(traced["entries"][0][0]["table"] == [0], "feedback trace")

    print(f"smoke test passed ({checks} checks) using {built}")


if __name__ == "__main__":
    main()
