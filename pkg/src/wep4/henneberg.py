"""Closed forms for a higher-order Henneberg-type minimal surface family in R4.

The family member picked by odd integers (m, n) and a complex weight lam is
generated by the Weierstrass data

    f = 2 w**(-m-n-2) (w**(2m+2n) - 1),    g = w**m,    h = lam w**n,

on the punctured plane.  Every integrand the data produce is a Laurent
polynomial with no exponent -1 term, so the null curve integrates termwise
to Laurent polynomials: the whole family exists in closed form.  lam = 0
collapses the fourth coordinate and reproduces (twice) the classical R3
Henneberg surface; m = n with real lam pins the fourth coordinate to a
multiple of the third.

A single two-term seed function Phi reproduces the g = w, h = lam w curves
with no integration step: f = Phi''' and the curve components are algebraic
combinations of Phi, Phi', Phi''.  The seed can be recovered pointwise from
the curve, giving a round-trippable integral-free representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .laurent import IDENTITY, ZERO, LaurentPoly
from .weierstrass import PhiForm, WeierstrassTriple, phi_from_triple

__all__ = [
    "FamilyParams",
    "MinimalCurve",
    "DegenerateParameterError",
    "family_triple",
    "family_phi",
    "family_curve",
    "fixed_gh_curve",
    "classic_henneberg_phi",
    "classic_henneberg_curve",
    "seed_phi",
    "integral_free_point",
    "recover_seed",
]


class DegenerateParameterError(ValueError):
    """lam**2 + 1 vanished where the inversion formulas divide by it."""


@dataclass(frozen=True)
class FamilyParams:
    """Family member selector: odd positive orders m, n and complex weight lam."""

    m: int
    n: int
    lam: complex

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1 or v % 2 == 0:
                raise ValueError(f"{name} must be a positive odd integer, got {v!r}")
        lam = complex(self.lam)
        if not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
            raise ValueError("lam must be finite")
        object.__setattr__(self, "lam", lam)
        m, n = self.m, self.n
        denominators = (
            m + n - 1, 3 * m + n - 1, m + 3 * n - 1, m + n + 1,
            m - n - 1, n - m - 1, 2 * m + n - 1, n + 1, m + 2 * n - 1, m + 1,
        )
        if any(d == 0 for d in denominators):
            raise ValueError(f"degenerate closed-form denominator for (m, n) = {m, n}")

    @property
    def lam_is_real(self) -> bool:
        return abs(self.lam.imag) <= 1e-12


@dataclass(frozen=True)
class MinimalCurve:
    """The C4-valued curve whose real part is the immersion."""

    parts: tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.parts[k]


def family_triple(p: FamilyParams) -> WeierstrassTriple:
    """Weierstrass data of the (m, n, lam) member, with f in expanded form."""
    f = LaurentPoly.monomial(-p.m - p.n - 2, 2.0) * LaurentPoly(
        {2 * p.m + 2 * p.n: 1.0, 0: -1.0}
    )
    g = LaurentPoly.monomial(p.m)
    h = LaurentPoly.monomial(p.n, p.lam)
    return WeierstrassTriple(f, g, h)


def family_phi(p: FamilyParams) -> PhiForm:
    return phi_from_triple(family_triple(p))


def _integrate_phi(phi: PhiForm) -> MinimalCurve:
    # No integrand of this family carries exponent -1 (parity argument for
    # the first two components, positivity for the last two); assert it so a
    # violation cannot silently produce a wrong surface.
    for comp in phi.parts:
        assert all(k != -1 for k, _ in comp), "integrand with exponent -1"
    return MinimalCurve(tuple(comp.antiderivative() for comp in phi.parts))


def family_curve(p: FamilyParams) -> MinimalCurve:
    """Termwise antiderivative of the family 1-form (integration constants 0)."""
    return _integrate_phi(family_phi(p))


def fixed_gh_curve(p: FamilyParams) -> MinimalCurve:
    """Curve for the same f but with the low-order data g = w, h = lam w.

    Coincides with family_curve at m = n = 1.  The third component comes out
    as (2/(m+n)) (w**(m+n) + w**(-(m+n))): both terms positive, whatever the
    printed reference form suggests.
    """
    f = family_triple(p).f
    g = IDENTITY
    h = LaurentPoly.monomial(1, p.lam)
    return _integrate_phi(phi_from_triple(WeierstrassTriple(f, g, h)))


def classic_henneberg_phi() -> PhiForm:
    """Null form of the classical R3 Henneberg surface, embedded in R4.

    Data g = w and 1-form factor (1 - w**-4); the fourth component is zero.
    The (m, n) = (1, 1), lam = 0 family member equals exactly twice this
    form because the family's f carries an extra factor 2.
    """
    w_form = LaurentPoly({0: 1.0, -4: -1.0})
    return phi_from_triple(WeierstrassTriple(w_form, IDENTITY, ZERO))


def classic_henneberg_curve() -> MinimalCurve:
    return _integrate_phi(classic_henneberg_phi())


def seed_phi(m: int, n: int) -> LaurentPoly:
    """Two-term seed whose third derivative is the family f.

    Phi = 2 / ((m+n-1)(m+n)(m+n+1)) * (w**(m+n+1) + w**(-(m+n)+1)).
    """
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise ValueError("m and n must be positive odd integers")
    N = m + n
    c = 2.0 / ((N - 1) * N * (N + 1))
    return LaurentPoly({N + 1: c, -(N - 1): c})


def integral_free_point(seed: LaurentPoly, lam: complex, w: complex):
    """Evaluate the curve directly from the seed function, no integration.

    Returns the complex 4-vector (k1, k2, k3, k4); the immersion point is
    its componentwise real part.  Corresponds to the data
    f = seed''', g = w, h = lam w.
    """
    lam = complex(lam)
    d1 = seed.derivative()
    d2 = d1.derivative()
    p0, p1, p2 = seed(w), d1(w), d2(w)
    a = 1.0 + lam * lam
    radial = w * p1 - p0
    k3 = w * p2 - p1
    return (
        0.5 * (1.0 - a * w * w) * p2 + a * radial,
        0.5j * (1.0 + a * w * w) * p2 - 1j * a * radial,
        k3,
        lam * k3,
    )


def recover_seed(k, lam: complex, w: complex) -> complex:
    """Invert integral_free_point: recover the seed value from the curve.

    Requires lam**2 + 1 bounded away from 0 (lam near +-i is rejected).
    """
    lam = complex(lam)
    a = 1.0 + lam * lam
    if abs(a) < 1e-9:
        raise DegenerateParameterError("lam**2 + 1 ~ 0: inversion undefined")
    k1, k2, k3, k4 = (complex(v) for v in k)
    return (
        (a * w * w - 1.0) / (2.0 * a) * k1
        - 1j * (a * w * w + 1.0) / (2.0 * a) * k2
        - w / a * (k3 + lam * k4)
    )
