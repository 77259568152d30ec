#!/usr/bin/env python3
"""Fetch the small Netlib LP instances used as test fixtures.

AFIRO and ADLITTLE are taken verbatim (MPS) from the HiGHS source tree
bundled in the `highs-sys` crate. SC50A, SC50B, BLEND and SHARE2B are
rebuilt as MPS from the dense `.npz` conversions shipped in the SciPy
source distribution (benchmarks/linprog_benchmark_files), because the
original Netlib files are distributed in a compressed EMPS encoding.

Usage:
    scripts/fetch_netlib.py [--out data/netlib] [--cache /tmp/netlib-cache]

Writes one `<name>.mps` per instance plus `manifest.json` with row,
column and nonzero counts computed from the source arrays / files.
"""

import argparse
import io
import json
import os
import tarfile
import urllib.request

import numpy as np

HIGHS_CRATE = "https://static.crates.io/crates/highs-sys/highs-sys-1.6.2.crate"
SCIPY_SDIST = (
    "https://files.pythonhosted.org/packages/6e/1f/"
    "91144ba78dccea567a6466262922786ffc97be1e9b06ed9574ef0edc11e1/"
    "scipy-1.11.4.tar.gz"
)

FROM_HIGHS = ["afiro", "adlittle"]
FROM_SCIPY = ["SC50A", "SC50B", "BLEND", "SHARE2B"]

# Optimal values printed in the Netlib readme.
NETLIB_OPTIMA = {
    "AFIRO": -4.6475314286e02,
    "ADLITTLE": 2.2549496316e05,
    "SC50A": -6.4575077059e01,
    "SC50B": -7.0000000000e01,
    "BLEND": -3.0812149846e01,
    "SHARE2B": -4.1573224074e02,
}


def download(url, cache):
    os.makedirs(cache, exist_ok=True)
    path = os.path.join(cache, url.rsplit("/", 1)[-1])
    if not os.path.exists(path):
        with urllib.request.urlopen(url) as resp, open(path, "wb") as out:
            out.write(resp.read())
    return path


def fmt(v):
    s = repr(float(v))
    if s.endswith(".0"):
        s = s[:-2]
    return s


def npz_to_mps(name, data):
    c = data["c"]
    a_ub, b_ub = data["A_ub"], data["b_ub"]
    a_eq, b_eq = data["A_eq"], data["b_eq"]
    if data["bounds"].size:
        raise SystemExit(f"{name}: explicit bounds are not handled by this converter")
    n = c.shape[0]
    rows = [("L", f"R{i + 1:04d}", a_ub[i], b_ub[i]) for i in range(a_ub.shape[0])]
    rows += [
        ("E", f"R{a_ub.shape[0] + i + 1:04d}", a_eq[i], b_eq[i])
        for i in range(a_eq.shape[0])
    ]
    out = io.StringIO()
    out.write(f"NAME          {name}\n")
    out.write("ROWS\n N  COST\n")
    for kind, rname, _, _ in rows:
        out.write(f" {kind}  {rname}\n")
    out.write("COLUMNS\n")
    nnz = 0
    for j in range(n):
        cname = f"C{j + 1:04d}"
        if c[j] != 0:
            out.write(f"    {cname:<8}  COST      {fmt(c[j])}\n")
        for _, rname, coeffs, _ in rows:
            if coeffs[j] != 0:
                nnz += 1
                out.write(f"    {cname:<8}  {rname:<8}  {fmt(coeffs[j])}\n")
    out.write("RHS\n")
    for _, rname, _, rhs in rows:
        if rhs != 0:
            out.write(f"    RHS       {rname:<8}  {fmt(rhs)}\n")
    out.write("ENDATA\n")
    return out.getvalue(), len(rows), n, nnz


def mps_counts(text):
    """Independent count of constraint rows, columns and constraint nonzeros."""
    section = None
    rows, obj, cols = set(), None, []
    nnz = 0
    for line in text.splitlines():
        if not line.strip() or line.startswith("*"):
            continue
        if not line[0].isspace():
            section = line.split()[0]
            continue
        tok = line.split()
        if section == "ROWS":
            if tok[0] == "N" and obj is None:
                obj = tok[1]
            elif tok[0] != "N":
                rows.add(tok[1])
        elif section == "COLUMNS":
            if not cols or cols[-1] != tok[0]:
                cols.append(tok[0])
            for r, v in zip(tok[1::2], tok[2::2]):
                if r in rows and float(v) != 0.0:
                    nnz += 1
    return len(rows), len(cols), nnz


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/netlib")
    ap.add_argument("--cache", default="/tmp/netlib-cache")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    manifest = []

    crate = download(HIGHS_CRATE, args.cache)
    with tarfile.open(crate) as tf:
        for name in FROM_HIGHS:
            member = f"highs-sys-1.6.2/HiGHS/check/instances/{name}.mps"
            text = tf.extractfile(member).read().decode()
            with open(os.path.join(args.out, f"{name.upper()}.mps"), "w") as f:
                f.write(text)
            r, c, nz = mps_counts(text)
            manifest.append(dict(name=name.upper(), source="highs", rows=r, cols=c, nnz=nz))

    sdist = download(SCIPY_SDIST, args.cache)
    with tarfile.open(sdist) as tf:
        for name in FROM_SCIPY:
            member = (
                "scipy-1.11.4/benchmarks/benchmarks/linprog_benchmark_files/"
                f"{name}.npz"
            )
            data = np.load(io.BytesIO(tf.extractfile(member).read()), allow_pickle=True)
            text, r, c, nz = npz_to_mps(name, data)
            with open(os.path.join(args.out, f"{name}.mps"), "w") as f:
                f.write(text)
            manifest.append(dict(name=name, source="scipy-npz", rows=r, cols=c, nnz=nz))

    for entry in manifest:
        entry["netlib_optimum"] = NETLIB_OPTIMA[entry["name"]]
    with open(os.path.join(args.out, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
