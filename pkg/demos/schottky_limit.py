"""The residual set as the limit set of a two-generator Schottky group.

Checks the trace identities and relations of the parabolic pair P1, P2,
matches the four inversions s_i with circles of the dual configuration,
then pushes the parabolic fixed points through all reduced words of
length 6 and tests every image against the depth-8 packing.

    python3 demos/schottky_limit.py [points.csv]
"""
import sys

from apollonian import W_D0, PackingKind, generate
from apollonian.packing import residual_membership_many
from apollonian.schottky import (check_relations, limit_sample_to_csv, sample_limit_set,
                                 verify_inversion_geometry)


def main(out="limit.csv"):
    for name, ok in check_relations().items():
        print("{:<22} {}".format(name, "holds" if ok else "fails"))

    rep = verify_inversion_geometry()
    print("s_i is inversion in dual circle:", rep.mapping, "ok" if rep.ok else rep.failures)

    sample = sample_limit_set(6)
    p = generate(W_D0, PackingKind.APOLLONIAN, 8)
    frac = residual_membership_many(sample.points, p).mean()
    print("{} limit points, {:.2%} outside every circle of the depth-8 packing".format(
        len(sample.points), frac))

    with open(out, "w") as fh:
        fh.write(limit_sample_to_csv(sample))
    print("wrote", out)


if __name__ == "__main__":
    main(*sys.argv[1:2])
