#!/usr/bin/env python3
"""Runs the ternary CLI and checks its documents against the JSON schema."""

import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

N1 = "gram:12,15,135,5,0,0"
M1 = "1,20,80,0,0,0"

failures = []


def fail(msg):
    failures.append(msg)
    print("FAIL:", msg)


def run(binary, env, *args):
    return subprocess.run([binary, *args], capture_output=True, text=True, env=env, timeout=600)


def main():
    binary, schema_dir = sys.argv[1], Path(sys.argv[2])
    schema = json.loads((schema_dir / "output.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as cache:
        env = dict(os.environ, TERNARY_CACHE_DIR=cache)

        def doc(args, rc=0):
            r = run(binary, env, "--format", "json", *args)
            if r.returncode != rc:
                fail(f"{args}: exit {r.returncode}, wanted {rc}: {r.stderr.strip()}")
                return None
            d = json.loads(r.stdout)
            errs = sorted(validator.iter_errors(d), key=lambda e: list(e.path))
            for e in errs:
                fail(f"{args}: {'/'.join(map(str, e.path))}: {e.message}")
            return d

        ok_runs = [
            ["reduce", "20,1,80,0,0,0"],
            ["isom", M1, "20,1,80,0,0,0"],
            ["isom", "1,1,16,0,0,0", "1,2,8,0,0,0"],
            ["aut", M1],
            ["disc", M1],
            ["genus-enum", M1],
            ["spinor", N1],
            ["watson-lambda", "1,1,16,0,0,0", "2"],
            ["watson-gamma", "1,1,80,0,0,0", "5"],
            ["watson-graph", "1,1,16,0,0,0", "5", "1"],
            ["corr-pairs", N1, M1, "15"],
            ["corr-graph", N1, M1, "15"],
            ["corr-split", N1, M1, "15"],
            ["corr-analyze", N1, M1, "15"],
            ["corr-match", N1, M1, "15"],
            ["represents", "--primitive", "1,1,16,0,0,0", "17"],
            ["exceptional", "1,1,80,0,0,0", "1,1,16,0,0,0", "5", "1"],
        ]
        docs = {}
        for args in ok_runs:
            d = doc(args)
            if d is not None:
                docs[args[0]] = d
                if "payload" not in d:
                    fail(f"{args}: no payload")

        if "disc" in docs and docs["disc"]["payload"]["d"] != "1600":
            fail("disc of <1,20,80> is not 1600")
        if "spinor" in docs:
            p = docs["spinor"]["payload"]
            if len(p["classes"]) != 12 or sorted(map(len, p["spinor_parts"])) != [6, 6]:
                fail("spinor of N1: wanted 12 classes in two parts of 6")
        if "corr-analyze" in docs and docs["corr-analyze"]["payload"]["respects"] is not False:
            fail("corr-analyze N1 M1 15 should not respect spinor genus")
        if "exceptional" in docs and docs["exceptional"]["payload"]["nS"] != [5]:
            fail("exceptional transfer of {1} by 5 should be {5}")

        # errors are documents too, with exit code 1
        for args in [
            ["reduce", "1,1,0,0,0,0"],
            ["watson-lambda", M1, "4"],
            ["watson-gamma", "1,1,1,0,0,0", "3"],
            ["corr-analyze", N1, M1, "12"],
            ["corr-analyze", N1, M1, "5"],
        ]:
            d = doc(args, rc=1)
            if d is not None and "error" not in d:
                fail(f"{args}: no error object")

        # usage errors exit 2
        for args in [
            ["reduce"],
            ["disc", M1, M1],
            ["--format", "dot", "disc", M1],
            ["--convention", "dX", "disc", M1],
            ["no-such-command"],
        ]:
            r = run(binary, env, *args)
            if r.returncode != 2:
                fail(f"{args}: exit {r.returncode}, wanted 2")

        r = run(binary, env, "--format", "dot", "corr-graph", N1, M1, "15")
        if r.returncode != 0 or not r.stdout.startswith("graph "):
            fail("dot output for corr-graph")

        # repeated runs, cached and uncached, give the same bytes
        for args in [["spinor", N1], ["corr-analyze", N1, M1, "15"], ["watson-graph", "1,1,16,0,0,0", "5", "1"]]:
            outs = {run(binary, env, "--format", "json", *args).stdout for _ in range(2)}
            outs.add(run(binary, env, "--format", "json", "--no-cache", *args).stdout)
            if len(outs) != 1:
                fail(f"{args}: output differs between runs")

        r = run(binary, env, "--format", "json", "--timing", "disc", M1)
        d = json.loads(r.stdout)
        if "timing" not in d or list(validator.iter_errors(d)):
            fail("--timing document")

    print(f"{len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
