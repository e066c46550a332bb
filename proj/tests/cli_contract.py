#!/usr/bin/env python3
"""Exit codes, file layout and JSON schemas of the phrmt command-line tool."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

BIN, SCHEMAS = sys.argv[1], sys.argv[2]
failures = []


def load_schema(name):
    with open(os.path.join(SCHEMAS, name)) as fh:
        return json.load(fh)


GOF = load_schema("gof_report.schema.json")
MANIFEST = load_schema("run_manifest.schema.json")


def run(args):
    return subprocess.run([BIN] + args, capture_output=True, text=True).returncode


def check(name, ok):
    print(("ok   " if ok else "FAIL ") + name)
    if not ok:
        failures.append(name)


def validate(path, schema):
    with open(path) as fh:
        jsonschema.validate(json.load(fh), schema)


with tempfile.TemporaryDirectory() as tmp:
    def out(name):
        return os.path.join(tmp, name)

    check("F1 run exits 0", run(["spacing2x2", "--count", "100000", "--seed", "7", "--out", out("f1"), "--assert"]) == 0)
    check("F1 files", sorted(os.listdir(out("f1"))) ==
          ["gof_report.json", "manifest.json", "spacing2x2_F1.csv", "spacing2x2_F1_cc_sector.csv"])
    validate(out("f1/gof_report.json"), GOF)
    validate(out("f1/manifest.json"), MANIFEST)

    check("F4 run exits 0 under --assert", run(["spacing2x2", "--family", "F4", "--count", "5000", "--out", out("f4"), "--assert"]) == 0)
    validate(out("f4/gof_report.json"), GOF)
    with open(out("f4/spacing2x2_F4.csv")) as fh:
        check("F4 has no analytic column", fh.readline().strip() == "bin_center,empirical_density")

    check("unknown family exits 2", run(["spacing2x2", "--family", "F7", "--out", out("bad")]) == 2)
    check("unknown flag exits 2", run(["spacing2x2", "--colour", "red"]) == 2)
    check("missing subcommand exits 2", run([]) == 2)
    check("generic at N=3 exits 2", run(["spacing_cyclic", "-N", "3", "--class", "generic", "--out", out("g3")]) == 2)
    check("no partial files on usage error", not os.path.exists(out("g3")) or os.listdir(out("g3")) == [])

    check("unwritable output exits 3", run(["spacing2x2", "--count", "100", "--out", "/proc/phrmt_out"]) == 3)
    blocked = out("blocked")
    os.makedirs(os.path.join(blocked, "manifest.json"))
    check("blocked output exits 3", run(["spacing2x2", "--count", "100", "--out", blocked]) == 3)
    check("no partial files on I/O error", os.listdir(blocked) == ["manifest.json"])

    check("KS hard-fail under --assert exits 4",
          run(["spacing_cyclic", "-N", "5", "--count", "200", "--class", "cc", "--out", out("small"), "--assert"]) == 4)
    check("same run without --assert exits 0",
          run(["spacing_cyclic", "-N", "5", "--count", "200", "--class", "cc", "--out", out("small2")]) == 0)
    validate(out("small/gof_report.json"), GOF)

    check("ising run exits 0", run(["spacing_cyclic", "-N", "6", "--count", "200", "--blocks", "ising", "--out", out("ising")]) == 0)
    validate(out("ising/gof_report.json"), GOF)

    cfg = out("bad.cfg")
    with open(cfg, "w") as fh:
        fh.write("sites = 4\nrow = 1:0.5 2:0.4\n")
    proc = subprocess.run([BIN, "walk", "--config", cfg, "--out", out("w")], capture_output=True, text=True)
    check("invalid row exits 2 naming the invariant", proc.returncode == 2 and "sum a_k = 1" in proc.stderr)

    cfg = out("ring22.cfg")
    with open(cfg, "w") as fh:
        fh.write("sites = 22\nrow = 1:0.2 2:0.24 22:0.56\nstart = 1\n")
    check("walk exits 0", run(["walk", "--config", cfg, "--t-max", "300", "--out", out("walk")]) == 0)
    validate(out("walk/manifest.json"), MANIFEST)
    check("flags override the file", run(["walk", "--config", cfg, "--w", "0", "--p", "0.5", "--t-max", "5", "--out", out("flat")]) == 0)
    with open(out("flat/walk.csv")) as fh:
        rows = [line.split(",") for line in fh.read().split("\n")[1:] if line]
    check("w=0 entropy stays flat", all(abs(float(r[1])) < 1e-12 for r in rows))

    check("rmt_decay exits 0", run(["rmt_decay", "--t-max", "200", "--out", out("decay")]) == 0)
    validate(out("decay/manifest.json"), MANIFEST)
    check("rmt_decay t_max=0 exits 2", run(["rmt_decay", "--t-max", "0", "--out", out("d0")]) == 2)

    check("replay exits 0", run(["replay", out("walk/manifest.json"), "--out", out("walk_again")]) == 0)
    with open(out("walk/walk.csv"), "rb") as a, open(out("walk_again/walk.csv"), "rb") as b:
        check("replay is byte-identical", a.read() == b.read())
    check("replay of missing manifest exits 2 or 3", run(["replay", out("nope.json")]) in (2, 3))

if failures:
    print(f"{len(failures)} check(s) failed")
    sys.exit(1)
print("all CLI contract checks passed")
