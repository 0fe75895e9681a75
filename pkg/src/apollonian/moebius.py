"""Möbius transformations acting on ACC matrices from the right.

A Möbius map g sends an ordered, oriented configuration with matrix W to
one with matrix W @ R_g, where R_g = V_g^{-1} and g -> V_g is a group
isomorphism onto Aut(Q_W).  The generator functions below return the
right-action matrices R; :func:`moebius_to_autqw` returns V.  Because the
action is on the right, R_{g o h} = R_h @ R_g.

Maps with Gaussian-rational coefficients give exact Fraction matrices.
Anything else is evaluated in floating point.
"""
from dataclasses import dataclass
from fractions import Fraction
import cmath
import math

import numpy as np

from .config import NotDescartesError, total_orientation, validate_acc
from .forms import Q_L, Q_W, Z_INT, exact, identity
from .gaussian import GaussRat, as_number, exact_sqrt

__all__ = [
    "MoebiusElement", "NumericInstabilityError", "translation_matrix",
    "dilation_matrix", "conjugation_matrix", "inversion_matrix",
    "right_action_matrix", "moebius_to_autqw", "autqw_inverse",
    "apply_moebius", "wilker_lorentz_map", "verify_conjugacy_chain",
    "circle_inversion", "circle_inversion_matrix", "is_exact_matrix",
    "random_moebius", "INF", "Z_WILKER",
]

INF = complex("inf")


class NumericInstabilityError(ArithmeticError):
    pass


def _re(z):
    return z.re if isinstance(z, GaussRat) else z.real


def _im(z):
    return z.im if isinstance(z, GaussRat) else z.imag


def _conj(z):
    return z.conj() if isinstance(z, GaussRat) else z.conjugate()


def _abs2(z):
    return z.abs2() if isinstance(z, GaussRat) else abs(z) ** 2


def _matrix(rows):
    """Fraction matrix when every entry is exact, otherwise float."""
    flat = [x for row in rows for x in row]
    if all(isinstance(x, (int, Fraction)) for x in flat):
        return exact(rows)
    return np.array(rows, dtype=float)


def is_exact_matrix(M):
    return np.asarray(M).dtype == object


def translation_matrix(z0):
    """Right-action matrix of z -> z + z0."""
    z0 = as_number(z0)
    x, y = _re(z0), _im(z0)
    return _matrix([[1, 0, 0, 0],
                    [x * x + y * y, 1, x, y],
                    [2 * x, 0, 1, 0],
                    [2 * y, 0, 0, 1]])


def dilation_matrix(lam):
    """Right-action matrix of z -> lam * z.

    Exact when lam is Gaussian rational with rational modulus.
    """
    lam = as_number(lam)
    if lam == 0:
        raise ValueError("dilation by zero")
    r = exact_sqrt(lam.abs2()) if isinstance(lam, GaussRat) else None
    if r is None:
        r = math.sqrt(_abs2(lam))
        c, s = float(_re(lam)) / r, float(_im(lam)) / r
    else:
        c, s = lam.re / r, lam.im / r
    return _matrix([[r, 0, 0, 0],
                    [0, 1 / r, 0, 0],
                    [0, 0, c, s],
                    [0, 0, -s, c]])


def conjugation_matrix():
    """Right-action matrix of z -> conj(z); an involution."""
    return exact([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])


def inversion_matrix():
    """Right-action matrix of inversion in the unit circle, z -> 1/conj(z)."""
    return exact([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


@dataclass(frozen=True)
class MoebiusElement:
    """z -> (a w + b) / (c w + d) with w = z or conj(z), times a sign.

    Coefficients need not be normalised: only ad - bc != 0 is required and
    scaling all four leaves the map unchanged.  ``sign = -1`` marks the
    extra central element -I, which reverses the orientation of every
    configuration and is not a map of the plane.
    """
    a: object = 1
    b: object = 0
    c: object = 0
    d: object = 1
    conjugate: bool = False
    sign: int = 1

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, as_number(getattr(self, k)))
        if self.det == 0:
            raise ValueError("singular Möbius matrix")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def is_exact(self):
        return all(isinstance(getattr(self, k), GaussRat) for k in "abcd")

    def __call__(self, z):
        if z == INF:
            return INF if self.c == 0 else complex(self.a) / complex(self.c)
        z = complex(z)
        if self.conjugate:
            z = z.conjugate()
        num = complex(self.a) * z + complex(self.b)
        den = complex(self.c) * z + complex(self.d)
        return INF if den == 0 else num / den

    def __mul__(self, other):
        """Composition self o other."""
        a, b, c, d = other.a, other.b, other.c, other.d
        if self.conjugate:
            a, b, c, d = _conj(a), _conj(b), _conj(c), _conj(d)
        return MoebiusElement(self.a * a + self.b * c, self.a * b + self.b * d,
                              self.c * a + self.d * c, self.c * b + self.d * d,
                              self.conjugate != other.conjugate, self.sign * other.sign)

    def inverse(self):
        a, b, c, d = self.d, -self.b, -self.c, self.a
        if self.conjugate:
            a, b, c, d = _conj(a), _conj(b), _conj(c), _conj(d)
        return MoebiusElement(a, b, c, d, self.conjugate, self.sign)

    def normalized(self):
        """Float coefficients scaled to determinant 1 (holomorphic part)."""
        s = cmath.sqrt(complex(self.det))
        return tuple(complex(getattr(self, k)) / s for k in "abcd")

    @classmethod
    def translation(cls, z0):
        return cls(1, z0, 0, 1)

    @classmethod
    def dilation(cls, lam):
        return cls(lam, 0, 0, 1)

    @classmethod
    def conjugation(cls):
        return cls(conjugate=True)

    @classmethod
    def unit_inversion(cls):
        return cls(0, 1, 1, 0, conjugate=True)

    @classmethod
    def minus_identity(cls):
        return cls(sign=-1)


def circle_inversion(row):
    """Inversion (or reflection) in the circle or line with ACC row ``row``."""
    bbar, b, w1, w2 = row
    if all(isinstance(v, (int, Fraction)) for v in row):
        nu = GaussRat(w1, w2)
    else:
        bbar, b, nu = float(bbar), float(b), complex(float(w1), float(w2))
    if b != 0:
        # z0 + r^2 / (conj(z) - conj(z0))
        z0, r2 = nu / b, 1 / (b * b)
        return MoebiusElement(z0, r2 - _abs2(z0), 1, -_conj(z0), conjugate=True)
    # line n . p = m with unit normal n: z -> -n^2 conj(z) + 2 m n
    return MoebiusElement(-nu * nu, bbar * nu, 0, 1, conjugate=True)


def _mm(*ms):
    if not all(is_exact_matrix(m) for m in ms):
        ms = [np.asarray(m, dtype=float) for m in ms]
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def _holomorphic_right(a, b, c, d, det):
    if c == 0:
        # t_{b/d} o d_{a/d}
        return _mm(dilation_matrix(a / d), translation_matrix(b / d))
    # t_{a/c} o d_{-det/c^2} o (z -> 1/z) o t_{d/c}, and z -> 1/z = j o conj
    recip = _mm(conjugation_matrix(), inversion_matrix())
    return _mm(translation_matrix(d / c), recip,
               dilation_matrix(-det / (c * c)), translation_matrix(a / c))


def _on_circle_residual(row, z):
    bbar, b, w1, w2 = (float(v) for v in row)
    return b * abs(z) ** 2 - 2 * (w1 * z.real + w2 * z.imag) + bbar


def _self_check(g, R, tol=1e-7):
    # a generic circle and its image row must agree with g on sampled points
    center, radius = complex(1 / 3, 1 / 5), 1 / 7
    row = [(abs(center) ** 2 - radius ** 2) / radius, 1 / radius,
           center.real / radius, center.imag / radius]
    image = np.asarray(row, dtype=float) @ np.asarray(R, dtype=float) * g.sign
    scale = max(1.0, float(np.max(np.abs(image))))
    for k in range(5):
        z = center + radius * cmath.exp(2j * math.pi * (k + 0.3) / 5)
        w = g(z)
        if w == INF or abs(w) > 1e8:
            continue
        if abs(_on_circle_residual(image, w)) > tol * scale * max(1.0, abs(w) ** 2):
            raise NumericInstabilityError("decomposition does not reproduce g")


def right_action_matrix(g, check=True):
    """R_g with W_{g(D)} = W_D @ R_g."""
    R = _holomorphic_right(g.a, g.b, g.c, g.d, g.det)
    if g.conjugate:
        # g = h o conj acts first by conj
        R = _mm(conjugation_matrix(), R)
    if check:
        _self_check(MoebiusElement(g.a, g.b, g.c, g.d, g.conjugate), R)
    return -R if g.sign < 0 else R


def autqw_inverse(V):
    """Inverse of an automorph of Q_W, using V^{-1} = Q_W^{-1} V^T Q_W."""
    if is_exact_matrix(V):
        Qi = exact([[0, Fraction(-1, 4), 0, 0], [Fraction(-1, 4), 0, 0, 0],
                    [0, 0, Fraction(1, 2), 0], [0, 0, 0, Fraction(1, 2)]])
        return Qi @ V.T @ Q_W
    Qf = Q_W.astype(float)
    return np.linalg.inv(Qf) @ V.T @ Qf


def moebius_to_autqw(g):
    """The isomorphism pi: g -> V_g in Aut(Q_W); pi(g h) = pi(g) pi(h)."""
    return autqw_inverse(right_action_matrix(g))


def _float_valid(W, tol):
    W = np.asarray(W, dtype=float)
    Qd = np.eye(4) - 0.5
    err = np.max(np.abs(W.T @ Qd @ W - Q_W.astype(float)))
    return err <= tol * max(1.0, float(np.max(np.abs(W))) ** 2)


def apply_moebius(g, W, tol=1e-9):
    """W_{g(D)} = W_D @ V_g^{-1}; result re-validated."""
    R = right_action_matrix(g)
    W = np.asarray(W)
    out = W @ R
    if is_exact_matrix(W) and is_exact_matrix(R):
        try:
            validate_acc(out)
        except NotDescartesError as e:
            raise NumericInstabilityError(str(e))
        return out
    out = np.asarray(out, dtype=float)
    if not _float_valid(out, tol):
        raise NumericInstabilityError("configuration lost validity beyond tolerance")
    return out


def circle_inversion_matrix(row):
    """Right-action matrix of inversion in the circle with ACC row ``row``."""
    return right_action_matrix(circle_inversion(row))


def wilker_lorentz_map(g):
    """Explicit PSL(2, C) -> proper orthochronous Lorentz map.

    Lorentz form diag(-1, 1, 1, 1); the coefficients are normalised to
    determinant 1 first, so the overall sign choice does not matter.
    """
    if g.conjugate:
        raise ValueError("Wilker's map is defined for holomorphic elements only")
    a, b, c, d = g.normalized()
    ac, bd = a * c.conjugate(), b * d.conjugate()
    ab, cd = a * b.conjugate(), c * d.conjugate()
    ad, bc = a * d.conjugate(), b * c.conjugate()
    A, B, C, D = abs(a) ** 2, abs(b) ** 2, abs(c) ** 2, abs(d) ** 2
    return np.array([
        [(A + B + C + D) / 2, (ac + bd).imag, (A + B - C - D) / 2, (ac + bd).real],
        [(-ab - cd).imag, (ad - bc).real, (-ab + cd).imag, (-ad + bc).imag],
        [(A - B + C - D) / 2, (ac - bd).imag, (A - B - C + D) / 2, (ac - bd).real],
        [(ab + cd).real, (ad + bc).imag, (ab - cd).real, (ad + bc).real],
    ])


def random_moebius(rng, scale=2.0, conjugate=False):
    """A random element with float coefficients, determinant normalised to 1."""
    z = rng.normal(size=8) * scale
    a, b, c = complex(z[0], z[1]), complex(z[2], z[3]), complex(z[4], z[5])
    d = complex(z[6], z[7])
    det = a * d - b * c
    s = cmath.sqrt(det)
    return MoebiusElement(a / s, b / s, c / s, d / s, conjugate=conjugate)


# Intertwiner that carries the right-action matrices onto Wilker's display:
# the integer Z matrix followed by a fixed rotation of the Lorentz frame.
Z_WILKER = exact([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]) @ Z_INT


def verify_conjugacy_chain(elements, tol=1e-9):
    """Check the Aut(Q_W) -> O(3,1) leg of the isomorphism chain.

    For each holomorphic g: Z V_g Z^{-1} must preserve Q_L, and
    Z' R_g Z'^{-1} must equal Wilker's matrix up to sign, with R_g = V_g^{-1}
    and Z' = Z_WILKER.  Wilker's display is an anti-homomorphism, which is
    why it pairs with the right-action matrices.  The sqrt(2) in Z cancels,
    so only integer matrices are used.  Returns the failing elements.
    """
    QL = Q_L.astype(float)
    Z, Zw = Z_INT.astype(float), Z_WILKER.astype(float)
    Zi, Zwi = np.linalg.inv(Z), np.linalg.inv(Zw)
    failures = []
    for g in elements:
        V = np.asarray(moebius_to_autqw(g), dtype=float)
        L = Z @ V @ Zi
        Wm = wilker_lorentz_map(g)
        scale = max(1.0, float(np.max(np.abs(Wm))))
        in_group = np.allclose(L.T @ QL @ L, QL, atol=tol * scale ** 2)
        M = Zw @ autqw_inverse(V) @ Zwi
        agree = np.allclose(M, Wm, atol=tol * scale) or np.allclose(M, -Wm, atol=tol * scale)
        if not (in_group and agree):
            failures.append(g)
    return failures
