"""Counting circles by curvature and the residual-set dimension.

N(T), the number of circles with curvature at most T, grows like T^delta
where delta ~ 1.3057 is the Hausdorff dimension of the residual set.  A
depth-9 orbit alone only counts every circle up to curvature ~83, so the
estimator continues the word tree below the last level until all circles
up to T = 1e5 are present.

    python3 demos/dimension.py
"""
import numpy as np

from apollonian import W_D0, PackingKind, generate
from apollonian.packing import complete_curvatures, estimate_residual_dimension


def main():
    p = generate(W_D0, PackingKind.APOLLONIAN, 9)
    curv = complete_curvatures(p, 1e5)
    print("stored circles: {}, circles with curvature <= 1e5: {}".format(len(p), len(curv)))
    for T in (1e2, 1e3, 1e4, 1e5):
        print("  N({:g}) = {}".format(T, np.searchsorted(curv, T, side="right")))
    print("dimension estimate over [1e3, 1e5]: {:.4f}".format(estimate_residual_dimension(p)))


if __name__ == "__main__":
    main()
