"""Write the golden P tables for N <= 4 at the canonical angles.

Each table is produced by the ``krawx table`` command (Aomoto route, serial)
and written only after every entry has been checked against the
matrix-exponential oracle.  Run from the repository root:

    python3 scripts/freeze_golden.py [--out tests/data]
"""
import argparse
import csv
import io
import pathlib
from contextlib import redirect_stdout

from krawx import cli
from krawx.bikraw import p_matexp

CHECK_TOL = 1e-9


def table_text(N: int) -> str:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(["table", "--N", str(N), "--route", "aomoto", "--serial"])
    if code != 0:
        raise SystemExit(f"table N={N} exited {code}")
    return buf.getvalue()


def check(text: str, N: int) -> float:
    worst = 0.0
    for row in csv.DictReader(io.StringIO(text)):
        r, s, i, k = (int(row[c]) for c in "rsik")
        ref = p_matexp(r, s, i, k, N, cli.CANONICAL_ANGLES)
        worst = max(worst, abs(float(row["value"]) - ref) / max(1.0, abs(ref)))
    return worst


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="tests/data")
    ap.add_argument("--n-max", type=int, default=4)
    ns = ap.parse_args()
    out = pathlib.Path(ns.out)
    out.mkdir(parents=True, exist_ok=True)
    for N in range(ns.n_max + 1):
        text = table_text(N)
        dev = check(text, N)
        if dev > CHECK_TOL:
            raise SystemExit(f"N={N}: deviation {dev:.3g} from the oracle, not freezing")
        path = out / f"golden_p_N{N}.csv"
        path.write_text(text)
        print(f"{path}: {text.count(chr(10)) - 1} rows, max oracle deviation {dev:.2e}")


if __name__ == "__main__":
    main()
