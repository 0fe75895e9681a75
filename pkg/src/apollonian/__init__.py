"""Apollonian circle packings through exact linear algebra.

Descartes configurations are 4x4 matrices of augmented curvature-center
coordinates; the Apollonian, dual and super-Apollonian groups act on the
left by integer matrices, Möbius maps act on the right.
"""
from .config import (W0, W_D0, W_D0_DUAL, NotDescartesError, dual_configuration,
                     lift_ccm_to_acc, validate_acc)
from .forms import Q_D, Q_L, Q_W
from .group import enumerate_normal_forms, normal_form, parse_word, word_to_matrix
from .moebius import MoebiusElement, apply_moebius, moebius_to_autqw
from .packing import (PackingKind, check_disjoint_interiors, estimate_residual_dimension,
                      generate, residual_membership)

__version__ = "0.1.0"
