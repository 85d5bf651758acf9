"""
Shear (unitriangular) decompositions of rotations in double precision.

paeth2 writes a plane rotation as three shears; toffoli_quick3 writes a 3D
rotation given by Euler angles as upper * lower * upper.
"""

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import NearSingular


@dataclass(frozen=True)
class EulerAngles:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if not np.all(np.isfinite([self.alpha, self.beta, self.gamma])):
            raise ValueError("Euler angles must be finite")

    def half_sum_cosine(self):
        return float(np.cos((self.alpha + self.gamma) / 2))

    def half_beta_cosine(self):
        return float(np.cos(self.beta / 2))

    def is_singular(self, tol=None):
        tol = config.SHEAR_TOLERANCE if tol is None else tol
        return abs(self.half_sum_cosine()) <= tol or abs(self.half_beta_cosine()) <= tol


@dataclass
class ShearDecomposition:
    factors: list
    sides: tuple
    target: np.ndarray
    max_abs_error: float

    def product(self):
        result = np.eye(self.target.shape[0])
        for f in self.factors:
            result = result @ f
        return result

    def pattern(self):
        return " ".join(self.sides)

    def to_json(self):
        return {
            "pattern": self.pattern(),
            "factors": [f.tolist() for f in self.factors],
            "target": self.target.tolist(),
            "max_abs_error": self.max_abs_error,
        }


def _decomposition(factors, sides, target):
    result = ShearDecomposition(factors, sides, target, 0.0)
    result.max_abs_error = float(np.max(np.abs(result.product() - target)))
    return result


def rotation2(phi):
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [-s, c]])


def paeth2(phi, tol=None):
    """[[cos, sin], [-sin, cos]] = X(tan(phi/2)) Y(-sin phi) X(tan(phi/2))."""
    tol = config.SHEAR_TOLERANCE if tol is None else tol
    if abs(np.cos(phi / 2)) <= tol:
        raise NearSingular(f"cos(phi/2) vanishes at phi={phi}")
    t = np.tan(phi / 2)
    outer = np.array([[1.0, t], [0.0, 1.0]])
    middle = np.array([[1.0, 0.0], [-np.sin(phi), 1.0]])
    return _decomposition([outer, middle, outer.copy()], ("U", "L", "U"), rotation2(phi))


def euler3(e):
    ca, sa = np.cos(e.alpha), np.sin(e.alpha)
    cb, sb = np.cos(e.beta), np.sin(e.beta)
    cg, sg = np.cos(e.gamma), np.sin(e.gamma)
    return np.array([
        [ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb],
        [sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb],
        [-sb * cg, sb * sg, cb],
    ])


def toffoli_quick3(e, tol=None):
    """Euler rotation as upper * lower * upper shears."""
    tol = config.SHEAR_TOLERANCE if tol is None else tol
    half_sum = e.half_sum_cosine()
    if abs(half_sum) <= tol:
        raise NearSingular("cos((alpha+gamma)/2) vanishes")
    if abs(e.half_beta_cosine()) <= tol:
        raise NearSingular("cos(beta/2) vanishes")

    a, b, g = e.alpha, e.beta, e.gamma
    tb = np.tan(b / 2)
    ts = np.tan((a + g) / 2)
    first = np.array([
        [1.0, -ts, np.cos(a) * tb],
        [0.0, 1.0, np.sin(a) * tb],
        [0.0, 0.0, 1.0],
    ])
    middle = np.array([
        [1.0, 0.0, 0.0],
        [np.sin(a + g), 1.0, 0.0],
        [-np.cos(g) * np.sin(b), -np.sin((a - g) / 2) / half_sum * np.sin(b), 1.0],
    ])
    last = np.array([
        [1.0, -ts, np.cos((a - g) / 2) / half_sum * tb],
        [0.0, 1.0, -np.sin(g) * tb],
        [0.0, 0.0, 1.0],
    ])
    return _decomposition([first, middle, last], ("U", "L", "U"), euler3(e))
