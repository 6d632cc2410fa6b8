"""A tour of the package on small arrangements, ending with Example 2.

    python3 demos/walkthrough.py [--out DIR] [--skip-example2]

Figures are written to DIR (default: the current directory).
"""

import argparse
import random
import time
from importlib import resources
from pathlib import Path

from logbundle.arrangement import arrangement_from_strings, load_arrangement, random_arrangement
from logbundle.cubicrec import diagonal_kernel_vector, hermite_verify, reconstruct_cubic
from logbundle.exactalg import QQ, PrimeField
from logbundle.instability import brute_force_oracle, is_unstable, porteous_count, unstable_lines
from logbundle.logpres import chern_and_classify, log_resolution
from logbundle.planegeom import pair_invariant, pole
from logbundle.svg import emit_svg


def section(title: str):
    print()
    print(title)
    print("-" * len(title))


def line_and_conic(out: Path):
    section("one line and one conic")
    arr = arrangement_from_strings(QQ, ["x0 - 2*x2", "x0^2 + x1^2 - 9*x2^2"])
    pres = log_resolution(arr)
    print("resolution:", pres.omega_resolution.shape_string())
    print("chern:", chern_and_classify(pres).label)
    L, C = arr.components
    P = pole(L, C)
    print("pole of the line:", [str(v) for v in P])
    (out / "line_conic.svg").write_text(emit_svg(arr, {"points": [P]}), encoding="utf-8")


def two_lines_and_conic(out: Path):
    section("two lines and one conic")
    arr = arrangement_from_strings(QQ, ["x0", "x1", "x0^2 + x1^2 - 4*x2^2 + x0*x2"])
    ch = chern_and_classify(log_resolution(arr))
    print("chern:", (ch.c1, ch.c2), "normalized", ch.label)
    inv = pair_invariant(*arr.components)
    print("jumping line:", [str(v) for v in inv.jumping_line])
    print("conic on it:", inv.binary_form, " discriminant", inv.discriminant())
    (out / "two_lines_conic.svg").write_text(emit_svg(arr, {"lines": [inv.jumping_line]}), encoding="utf-8")


def fermat_cubic():
    section("three lines and a conic: the cubic")
    arr = arrangement_from_strings(QQ, ["x0", "x1", "x2", "x0^2 + x1^2 + x2^2"])
    print("chern:", chern_and_classify(log_resolution(arr)).label)
    f4 = arr.components[3]
    rec = reconstruct_cubic(f4, diagonal_kernel_vector(QQ))
    report = hermite_verify(rec.g, f4)
    print("g =", rec.g, " partials in the net:", report.in_span, " smooth:", report.smooth)


def small_field_oracle():
    section("three conics over F_7: exhaustive check")
    arr = random_arrangement(PrimeField(7), [2, 2, 2], random.Random(4))
    for f in arr.components:
        print("  ", f)
    pres = log_resolution(arr)
    print("components unstable:", [is_unstable(pres, f) for f in arr.components])
    brute = brute_force_oracle(arr, pres=pres)
    symbolic = unstable_lines(arr, pres=pres, strict=False).rational_lines
    print(f"F_7-rational unstable lines: {len(brute)} by search, {len(symbolic)} from the minors ideal")
    print("same set:", sorted(brute) == symbolic)


def example2(out: Path):
    section("Example 2: three conics over Q")
    print("expected count:", porteous_count("lines"))
    arr = load_arrangement(resources.files("logbundle") / "data" / "example2.json")
    start = time.perf_counter()
    rep = unstable_lines(arr)
    print(f"solved in {time.perf_counter() - start:.1f}s")
    for ci in rep.charts:
        print(f"  chart {ci.chart}: dim {ci.dim}, degree {ci.degree}")
    print(f"unstable lines: {rep.degree}, real: {rep.real_count}")
    for s in rep.real_lines():
        print("  ", s.to_json(8)["line"])
    path = out / "example2_real_lines.svg"
    path.write_text(emit_svg(arr, {"lines": [s.line for s in rep.real_lines()]}), encoding="utf-8")
    print("figure:", path)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=".", help="directory for SVG figures")
    ap.add_argument("--skip-example2", action="store_true")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    line_and_conic(out)
    two_lines_and_conic(out)
    fermat_cubic()
    small_field_oracle()
    if not args.skip_example2:
        example2(out)


if __name__ == "__main__":
    main()
