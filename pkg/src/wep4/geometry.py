"""Pointwise differential geometry of the immersed surfaces.

Tangent vectors come straight from the 1-form (X_u = Re phi, X_v = -Im phi),
never from finite differences, so the first fundamental form and the frames
carry no discretization error.  Finite differences appear in exactly two
places where no closed form is available: the log-metric Laplacian behind
the Gauss curvature, and the harmonicity residual used as a minimality
detector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .henneberg import FamilyParams, MinimalCurve
from .weierstrass import PhiForm, conformal_energy, conformal_factor, regularity_threshold

__all__ = [
    "SurfaceJet",
    "FrameScalars",
    "NormalFrame",
    "DegenerateFrameError",
    "FormulaDegenerateError",
    "UndefinedCurvatureError",
    "immersion_point",
    "surface_jet",
    "perp_vectors",
    "frame_scalars",
    "normal_frame",
    "closed_form_normals",
    "gauss_curvature",
    "gauss_curvature_batch",
    "harmonicity_residual",
    "curvature_denominator_check",
]


class DegenerateFrameError(ValueError):
    """The four frame candidate vectors do not span R4 at this point."""


class FormulaDegenerateError(ValueError):
    """The closed-form normal expressions divide by a vanishing scalar here."""


class UndefinedCurvatureError(ValueError):
    """Gauss curvature requested at a non-regular (branch) point."""


@dataclass(frozen=True)
class SurfaceJet:
    """First-order data of the immersion at one parameter point."""

    position: np.ndarray
    xu: np.ndarray
    xv: np.ndarray
    E: float
    F: float
    G: float
    reg_weight: float
    regular: bool


@dataclass(frozen=True)
class FrameScalars:
    """Closed-form frame scalars for the m = n = 1, real-lam member.

    p = (quartic+1)(cross_minus+1)(cross_plus+1) * inv_r8 equals the squared
    norm of each tangent vector; q, with (1 - cross_minus) in place of
    (cross_minus + 1), equals the pairing of a tangent vector with the perp
    partner of the other one.
    """

    p: float
    q: float
    quartic: float
    cross_minus: float
    cross_plus: float
    inv_r8: float


@dataclass(frozen=True)
class NormalFrame:
    """Orthonormal tangent pair (e1, e2) and normal pair (n1, n2)."""

    e1: np.ndarray
    e2: np.ndarray
    n1: np.ndarray
    n2: np.ndarray


def _dot(a: np.ndarray, b: np.ndarray) -> float:
    # fsum keeps the signed-permutation cancellations exact.
    return math.fsum(float(x) * float(y) for x, y in zip(a, b))


def immersion_point(curve: MinimalCurve, w: complex) -> np.ndarray:
    """Real part of the C4 curve: the immersion point in R4."""
    return np.array([comp(w).real for comp in curve.parts])


def surface_jet(phi: PhiForm, curve: MinimalCurve, w: complex) -> SurfaceJet:
    """Position, analytic tangents, first fundamental form, regularity flag."""
    position = immersion_point(curve, w)
    vals = [comp(w) for comp in phi.parts]
    xu = np.array([v.real for v in vals])
    xv = np.array([-v.imag for v in vals])
    _, reg = conformal_factor(phi, w)
    return SurfaceJet(
        position=position,
        xu=xu,
        xv=xv,
        E=_dot(xu, xu),
        F=_dot(xu, xv),
        G=_dot(xv, xv),
        reg_weight=reg,
        regular=reg > regularity_threshold(phi, w),
    )


def perp_vectors(jet: SurfaceJet) -> tuple[np.ndarray, np.ndarray]:
    """Signed-permutation partners of the tangents.

    perp1 = (-xu2, xu1, -xu4, xu3) is orthogonal to xu and perp2, built the
    same way from xv, is orthogonal to xv; both exactly, term against term.
    """

    def flip(a: np.ndarray) -> np.ndarray:
        return np.array([-a[1], a[0], -a[3], a[2]])

    return flip(jet.xu), flip(jet.xv)


def frame_scalars(params: FamilyParams, w: complex) -> FrameScalars:
    """Closed-form p, q and their factor scalars at w (m = n = 1, real lam)."""
    if params.m != 1 or params.n != 1:
        raise ValueError("closed-form frame scalars exist only for m = n = 1")
    if not params.lam_is_real:
        raise ValueError("closed-form frame scalars require real lam")
    if w == 0:
        raise ValueError("frame scalars undefined at the puncture")
    lam = params.lam.real
    u, v = w.real, w.imag
    g1, g2, h1, h2 = u, v, u, v
    r2 = u * u + v * v
    quartic = r2**4 - 2.0 * r2**2 + 16.0 * u * u * v * v
    cross_minus = (-g1 + lam * h2) ** 2 + (g2 + lam * h1) ** 2
    cross_plus = (g1 + lam * h2) ** 2 + (-g2 + lam * h1) ** 2
    inv_r8 = r2**-4
    p = (quartic + 1.0) * (cross_minus + 1.0) * (cross_plus + 1.0) * inv_r8
    q = (quartic + 1.0) * (1.0 - cross_minus) * (cross_plus + 1.0) * inv_r8
    return FrameScalars(p, q, quartic, cross_minus, cross_plus, inv_r8)


def _orthogonalize(vec: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    out = vec.astype(float)
    for _ in range(2):  # one re-orthogonalization pass tightens the Gram matrix
        for b in basis:
            out = out - _dot(out, b) * b
    return out


def normal_frame(jet: SurfaceJet) -> NormalFrame:
    """Gram-Schmidt frame from (xu, xv, perp1, perp2).

    e1, e2 span the tangent plane, n1, n2 the normal plane.  Raises
    DegenerateFrameError when the four candidates are numerically rank
    deficient (the residual check is the rank test).
    """
    if not jet.regular:
        raise DegenerateFrameError("no frame at a non-regular point")
    perp1, perp2 = perp_vectors(jet)
    basis: list[np.ndarray] = []
    for vec in (jet.xu, jet.xv, perp1, perp2):
        resid = _orthogonalize(vec, basis)
        norm = math.sqrt(_dot(resid, resid))
        if norm <= 1e-10 * max(1.0, math.sqrt(_dot(vec, vec))):
            raise DegenerateFrameError("frame candidates are rank deficient")
        basis.append(resid / norm)
    return NormalFrame(*basis)


def closed_form_normals(jet: SurfaceJet, scalars: FrameScalars) -> tuple[np.ndarray, np.ndarray]:
    """Unit normals straight from the closed-form scalar expressions.

    n1 is the weighted combination of xv and perp1, n2 of xu and perp2.
    Requires cross_minus bounded away from 0 (the formulas divide by it).
    """
    b = scalars.cross_minus
    if b <= 1e-12:
        raise FormulaDegenerateError("cross_minus ~ 0: closed-form normals undefined")
    perp1, perp2 = perp_vectors(jet)
    factor = math.sqrt(
        (b + 1.0)
        / (4.0 * (scalars.quartic + 1.0) * b * (scalars.cross_plus + 1.0) * scalars.inv_r8)
    )
    n1 = factor * ((1.0 - b) / (b + 1.0) * jet.xv + perp1)
    n2 = factor * ((b - 1.0) / (b + 1.0) * jet.xu + perp2)
    return n1, n2


def gauss_curvature_batch(phi: PhiForm, ws: np.ndarray) -> np.ndarray:
    """Vectorized K = -Laplacian(ln E) / (2 E) with Richardson refinement.

    Central five-point Laplacians at steps h and h/2 (h = 1e-4 max(1, |w|))
    are combined as (4 L_{h/2} - L_h) / 3.  Caller is responsible for
    masking non-regular points.
    """
    ws = np.asarray(ws, dtype=complex)
    h = 1e-4 * np.maximum(1.0, np.abs(ws))
    log_e0 = np.log(conformal_energy(phi, ws))

    def laplacian(step):
        total = -4.0 * log_e0
        for d in (step, -step, 1j * step, -1j * step):
            total = total + np.log(conformal_energy(phi, ws + d))
        return total / step**2

    refined = (4.0 * laplacian(h / 2.0) - laplacian(h)) / 3.0
    return -refined / (2.0 * np.exp(log_e0))


def gauss_curvature(phi: PhiForm, w: complex) -> float:
    """Gauss curvature of the conformal metric E (du^2 + dv^2) at w.

    Same stencil as the batch version, but the five-point sums are exactly
    rounded so that a constant metric yields exactly zero.
    """
    energy, reg = conformal_factor(phi, w)
    if reg <= regularity_threshold(phi, w) or energy <= 0.0:
        raise UndefinedCurvatureError("curvature undefined at a non-regular point")
    h = 1e-4 * max(1.0, abs(w))

    def log_energy(z: complex) -> float:
        return math.log(conformal_factor(phi, z)[0])

    center = log_energy(w)

    def laplacian(step: float) -> float:
        values = [log_energy(w + d) for d in (step, -step, 1j * step, -1j * step)]
        return math.fsum(values + [-4.0 * center]) / step**2

    refined = (4.0 * laplacian(h / 2.0) - laplacian(h)) / 3.0
    return -refined / (2.0 * energy)


def harmonicity_residual(curve: MinimalCurve, w: complex, h: float) -> float:
    """Max over coordinates of the five-point Laplacian of Re X_k.

    Coordinates of a minimal immersion are harmonic, so the residual is pure
    O(h^2) truncation; a corrupted curve shows up orders of magnitude above
    that.  The stencil disc must stay clear of the puncture.
    """
    if abs(w) <= 2.0 * h:
        raise ValueError("stencil disc reaches the puncture")
    worst = 0.0
    for comp in curve.parts:
        center = comp(w).real
        total = math.fsum(
            comp(w + d).real for d in (h, -h, 1j * h, -1j * h)
        ) - 4.0 * center
        worst = max(worst, abs(total) / h**2)
    return worst


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict[tuple[int, int], int] = {}
    for (i, j), ca in a.items():
        for (k, l), cb in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v != 0}


def curvature_denominator_check() -> tuple[bool, str]:
    """Verify the octic identity inside the curvature denominator.

    Expands ((u^2+v^2)^2 - 1)^2 + (4uv)^2 with exact integer arithmetic,
    compares it coefficient by coefficient against the reference octic, and
    samples the full denominator for strict positivity away from the branch
    points (where the middle factor legitimately vanishes), for both stated
    exponents of the trailing factor.
    """
    r2 = {(2, 0): 1, (0, 2): 1}  # u^2 + v^2
    middle = _poly_add(
        _poly_mul(_poly_add(_poly_mul(r2, r2), {(0, 0): -1}),
                  _poly_add(_poly_mul(r2, r2), {(0, 0): -1})),
        _poly_mul({(1, 1): 4}, {(1, 1): 4}),
    )
    octic = {
        (8, 0): 1, (6, 2): 4, (4, 4): 6, (2, 6): 4, (0, 8): 1,
        (4, 0): -2, (0, 4): -2, (2, 2): 12, (0, 0): 1,
    }
    identity_ok = middle == octic

    def denom(u: float, v: float, k: int) -> float:
        r = u * u + v * v
        mid = (r * r - 1.0) ** 2 + (4.0 * u * v) ** 2
        return (r + 1.0) * mid * (2.0 * r + 1.0) ** k

    positive_ok = True
    branch = {(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)}
    grid = [x / 4.0 for x in range(-8, 9)]
    for k in (1, 2):
        for u in grid:
            for v in grid:
                if (u, v) == (0.0, 0.0):
                    continue
                val = denom(u, v, k)
                if (u, v) in branch:
                    positive_ok &= val == 0.0
                else:
                    positive_ok &= val > 0.0
    factored = "(u^2+v^2+1) * (((u^2+v^2)^2-1)^2 + (4uv)^2) * (2(u^2+v^2)+1)^k, k in {1, 2}"
    return identity_ok and positive_ok, factored
