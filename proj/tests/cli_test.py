"""End-to-end checks of the command line tool: exit codes, output shapes,
config files, and byte-level determinism of report files."""

import json
import os
import subprocess
import sys
import tempfile

BIN = None
PASSED = 0


def run(*args, expect=0):
    r = subprocess.run([BIN, *args], capture_output=True, text=True)
    if r.returncode != expect:
        raise AssertionError(
            f"{args}: rc={r.returncode} wanted {expect}\n"
            f"stdout:\n{r.stdout}\nstderr:\n{r.stderr}"
        )
    return r


def kv(line):
    return dict(tok.split("=", 1) for tok in line.split())


def check(name, cond, detail=""):
    global PASSED
    if not cond:
        raise AssertionError(f"{name}: {detail}")
    PASSED += 1
    print(f"ok {name}")


def body_lines(path):
    with open(path) as f:
        return [ln for ln in f.read().splitlines() if not ln.startswith("#")]


def main(tmp):
    c1 = os.path.join(tmp, "c1.json")

    # exit code contract: 1 usage/domain errors, 2 verification failures
    run(expect=1)
    r = run("--help")
    check("help", "Usage" in r.stdout or "SUBCOMMAND" in r.stdout)
    run("no-such-subcommand", expect=1)
    run("gen-laakso", "--k", "2", "--q", "1", "--eps", "1.5", expect=1)
    run("gen-laakso", "--k", "2", "--q", "4", "--eps", "0.25",
        "--rel-tol", "1e-18", expect=2)

    r = run("gen-laakso", "--k", "2", "--q", "4", "--eps", "0.25",
            "--out", c1)
    d = kv(r.stdout.splitlines()[0])
    check("gen-laakso kv",
          d["n"] == "30" and d["copies"] == "7" and d["verify"] == "pass",
          r.stdout)
    cloud = json.load(open(c1))
    check("cloud schema", cloud["schema"] == "cloud/1"
          and len(cloud["labels"]) == 30
          and len(cloud["points"]) == 30, str(cloud.keys()))

    r = run("gen-diamond", "--k", "2", "--p", "2.5", "--eps", "0.1", "--b", "3")
    d = kv(r.stdout.splitlines()[0])
    check("gen-diamond kv", d["n"] == "23" and d["verify"] == "pass", r.stdout)

    # flat key=value config file reproduces the flag run exactly
    cfg = os.path.join(tmp, "gen.cfg")
    with open(cfg, "w") as f:
        f.write("k=2\nq=4\neps=0.25\n")
    r2 = run("gen-laakso", "--config", cfg)
    r3 = run("gen-laakso", "--k", "2", "--q", "4", "--eps", "0.25")
    check("config file", r2.stdout == r3.stdout, r2.stdout + r3.stdout)

    # byte identical regenerated artifacts
    c2 = os.path.join(tmp, "c2.json")
    run("gen-laakso", "--k", "2", "--q", "4", "--eps", "0.25", "--out", c2)
    check("gen determinism",
          open(c1, "rb").read() == open(c2, "rb").read())

    s1, s2 = os.path.join(tmp, "s1.csv"), os.path.join(tmp, "s2.csv")
    for p in (s1, s2):
        run("sweep", "--k-list", "1,2", "--q-list", "2,4",
            "--eps-list", "0.1", "--out", p)
    check("sweep determinism",
          open(s1, "rb").read() == open(s2, "rb").read())
    rows = body_lines(s1)
    check("sweep rows", rows[0].startswith("k,q,eps,") and len(rows) == 5
          and all(ln.endswith(",pass") for ln in rows[1:]), "\n".join(rows))

    # distortion: csv report, json summary, map round trip
    dcsv = os.path.join(tmp, "dist.csv")
    dj1, dj2 = os.path.join(tmp, "d1.json"), os.path.join(tmp, "d2.json")
    mp = os.path.join(tmp, "map.json")
    r = run("distortion", "--cloud", c1, "--map", "randproj:2:9",
            "--out", dcsv, "--json", dj1, "--map-out", mp)
    run("distortion", "--cloud", c1, "--map", "randproj:2:9", "--json", dj2)
    check("distortion determinism",
          open(dj1, "rb").read() == open(dj2, "rb").read())
    rows = body_lines(dcsv)
    check("distortion csv", rows[0] == "level,copy,pair,ratio,margin"
          and len(rows) == 1 + 7, "\n".join(rows[:3]))
    summary = json.load(open(dj1))
    check("distortion json",
          set(summary) == {"lip", "colip", "distortion", "D_j", "pairs"}
          and len(summary["D_j"]) == 2, str(summary))

    r = run("contract", "--cloud", c1, "--family", "uc", "--map", mp)
    d = kv(r.stdout.splitlines()[0])
    check("contract map file", d["failures"] == "0" and d["copies"] == "7",
          r.stdout)
    run("contract", "--cloud", c1, "--family", "uc", "--model", "power",
        "--c", "1.25", "--power", "2", expect=2)
    r = run("contract", "--cloud", c1, "--family", "uc", "--model", "power",
            "--c", "1.25", "--power", "2", "--allow-failures")
    d = kv(r.stdout.splitlines()[0])
    check("contract allow-failures", d["failures"] == "7", r.stdout)

    r = run("doubling", "--cloud", c1)
    d = kv(r.stdout.splitlines()[0])
    check("doubling kv", d["upper"] == "8" and d["lower"] == "3", r.stdout)

    r = run("midpoints", "--cloud", c1, "--x", "L0:s", "--y", "L0:t",
            "--eta", "0.05")
    d = kv(r.stdout.splitlines()[0])
    check("midpoints kv", d["size"] == "2" and d["diameter"] == "0.5",
          r.stdout)

    r = run("roundness", "--mode", "fourpoint", "--gauss", "48:8:3",
            "--p", "2", "--samples", "2000", "--seed", "5")
    d = kv(r.stdout.splitlines()[0])
    check("roundness kv", d["violated"] == "no" and d["lemma_range"] == "yes",
          r.stdout)

    r = run("gen-graph", "--base", "laakso", "--k", "2")
    d = kv(r.stdout.splitlines()[0])
    check("gen-graph kv", d["vertices"] == "30" and d["edges"] == "36"
          and d["dst"] == "16", r.stdout)

    r = run("bound", "--family", "uc", "--k", "2", "--k-max", "5",
            "--p", "2", "--q", "4", "--c", "0.125")
    check("bound fit", "slope=0.2499" in r.stdout
          and "expected_slope=0.25" in r.stdout, r.stdout)

    print(f"cli_test: {PASSED} checks passed")


if __name__ == "__main__":
    BIN = sys.argv[1]
    with tempfile.TemporaryDirectory() as tmp:
        main(tmp)
