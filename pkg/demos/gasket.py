"""Grow the integral gasket with curvatures (-1, 2, 2, 3) level by level.

Prints the circle counts next to 2(3^m + 1), the smallest curvatures with
their multiplicities, and writes a labelled SVG drawing.

    python3 demos/gasket.py [out.svg]
"""
import sys

from apollonian import W_D0, PackingKind, generate
from apollonian.packing import check_disjoint_interiors, curvature_spectrum
from apollonian.render import RenderSpec, render_svg


def main(out="gasket.svg", depth=5):
    for m in range(depth + 1):
        p = generate(W_D0, PackingKind.APOLLONIAN, m)
        print("depth {}: {:5d} circles (2(3^m+1) = {})".format(m, len(p), 2 * (3 ** m + 1)))

    spectrum = curvature_spectrum(p)
    print("all curvatures integral:", spectrum.integral)
    print("smallest curvatures:", ", ".join("{}x{}".format(k, n) for k, n in spectrum.counts[:8]))

    rep = check_disjoint_interiors(p)
    print("disjoint interiors over {} pairs: {}".format(rep.checked, rep.ok))

    with open(out, "w") as fh:
        fh.write(render_svg(p, RenderSpec(labels=True)))
    print("wrote", out)


if __name__ == "__main__":
    main(*sys.argv[1:2])
