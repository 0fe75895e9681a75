"""The strip packing, its dual and the super-Apollonian packing.

The seed is two parallel lines y = +-1 with unit circles at (+-1, 0).  The
dual group inverts in the configuration's own circles; the super group uses
both.  None of these packings has two circles that cross.

    python3 demos/super_packing.py [out_prefix]
"""
import sys

from apollonian import W0, PackingKind, generate
from apollonian.group import enumerate_normal_forms, normal_form_count
from apollonian.packing import check_no_crossing, strong_integrality_propagation
from apollonian.render import RenderSpec, render_svg


def main(prefix="strip", depth=3):
    for n in range(1, 5):
        print("normal-form words of length {}: {} (9*5^(n-1)-1 = {})".format(
            n, len(enumerate_normal_forms(n)), normal_form_count(n)))

    view = RenderSpec(viewport=(-4, -1.2, 4, 1.2))
    for kind in PackingKind:
        p = generate(W0, kind, depth)
        rep = check_no_crossing(p)
        print("{:>10}: {:4d} circles, no crossing: {}".format(kind.value, len(p), rep.ok))
        out = "{}_{}.svg".format(prefix, kind.value)
        with open(out, "w") as fh:
            fh.write(render_svg(p, view))

    rep = strong_integrality_propagation(W0, 4)
    print("super orbit to depth 4: {} configurations, all integer matrices: {}".format(rep.checked, rep.ok))


if __name__ == "__main__":
    main(*sys.argv[1:2])
