#!/usr/bin/env python3
"""Install a c_theta / x_theta table for addrep.

Takes the published constants from a local file or from a URL you supply,
normalises them to the TSV format addrep reads (q<TAB>c_theta<TAB>x_theta),
validates the result with `addrep table-validate` and writes it out.

No URL is built in. Point --url (or a path) at your copy of the published
tables; pass --sha256 to pin the exact bytes you audited.

Input rows may be separated by tabs, commas or spaces; lines starting with
'#' or that do not start with an integer modulus (headers) are skipped.

    tools/fetch_theta_table.py path/to/tables.txt --addrep build/tools/addrep
    export ADDREP_THETA_TABLE=$PWD/data/theta_table.tsv

The output is labelled "# status: unverified" unless --published is given.
Only label it published after checking the rows against the source.
"""
import argparse
import hashlib
import re
import subprocess
import sys
import urllib.request
from decimal import Decimal, InvalidOperation
from pathlib import Path

ROW = re.compile(r"[,\s]+")


def read_source(src, url):
    if url:
        with urllib.request.urlopen(url, timeout=60) as r:
            return r.read()
    return Path(src).read_bytes()


def to_int(text):
    # x_theta is sometimes printed as 4.81e9 or 4.81*10^9
    t = text.replace("*10^", "e").replace("·10^", "e")
    v = Decimal(t)
    if v != v.to_integral_value():
        raise ValueError(f"x_theta not an integer: {text}")
    return int(v)


def convert(raw, status, note):
    out = [f"# status: {status}", f"# {note}", "# q\tc_theta\tx_theta"]
    seen = set()
    for lineno, line in enumerate(raw.decode("utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f for f in ROW.split(line) if f]
        if not fields[0].isdigit():
            continue
        if len(fields) < 3:
            sys.exit(f"line {lineno}: expected q, c_theta, x_theta: {line!r}")
        try:
            q, c, x = int(fields[0]), Decimal(fields[1]), to_int(fields[2])
        except (ValueError, InvalidOperation) as e:
            sys.exit(f"line {lineno}: {e}")
        if q in seen:
            sys.exit(f"line {lineno}: duplicate modulus {q}")
        seen.add(q)
        out.append(f"{q}\t{c}\t{x}")
    if not seen:
        sys.exit("no rows found")
    return "\n".join(out) + "\n", len(seen)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("source", nargs="?", help="local file with the published constants")
    ap.add_argument("--url", help="fetch the constants from this URL instead")
    ap.add_argument("--sha256", help="refuse the input unless its sha256 matches")
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "theta_table.tsv"))
    ap.add_argument("--published", action="store_true", help="label the table as the published constants")
    ap.add_argument("--addrep", help="addrep executable used to validate the result")
    args = ap.parse_args()
    if bool(args.source) == bool(args.url):
        ap.error("give exactly one of SOURCE or --url")

    raw = read_source(args.source, args.url)
    digest = hashlib.sha256(raw).hexdigest()
    if args.sha256 and digest != args.sha256.lower():
        sys.exit(f"sha256 mismatch: got {digest}")

    text, rows = convert(raw, "published" if args.published else "unverified",
                         f"from {args.url or Path(args.source).name}, sha256 {digest}")
    out = Path(args.out)
    tmp = out.with_suffix(".tmp")
    tmp.write_text(text)
    if args.addrep:
        p = subprocess.run([args.addrep, "table-validate", "--table", str(tmp)], capture_output=True, text=True)
        sys.stdout.write(p.stdout)
        if p.returncode != 0:
            sys.stderr.write(p.stderr)
            sys.exit(f"validation failed; left {tmp} for inspection")
    tmp.replace(out)
    print(f"wrote {rows} rows to {out}")
    print(f"export ADDREP_THETA_TABLE={out}")


if __name__ == "__main__":
    main()
