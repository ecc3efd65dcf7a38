"""Seeded verification suites over one family member.

Each suite checks one structural property of the pipeline (nullity,
conformality, harmonic coordinates, the exactness of back-differentiation,
quadrature consistency, frame identities, the integral-free round trip,
and the degenerate-parameter reductions) and reports a pass/fail verdict
with a worst-case error.  The command line `verify` subcommand runs every
suite applicable to the requested member; the test suite drives the same
functions over a grid of members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    closed_form_normals,
    frame_scalars,
    normal_frame,
    perp_vectors,
    surface_jet,
)
from .henneberg import (
    FamilyParams,
    classic_henneberg_curve,
    family_curve,
    family_phi,
    family_triple,
    integral_free_point,
    recover_seed,
    seed_phi,
)
from .laurent import LaurentPoly
from .weierstrass import (
    WeierstrassTriple,
    conformal_factor,
    nullity_defect,
    nullity_residual,
    phi_from_triple,
    regularity_threshold,
)

__all__ = [
    "SuiteResult",
    "sample_annulus",
    "sample_regular",
    "quadrature_targets",
    "check_nullity",
    "check_back_differentiation",
    "check_quadrature",
    "check_conformality",
    "check_harmonicity",
    "check_frames",
    "check_integral_free",
    "check_reductions",
    "run_verify",
]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checks: int
    detail: str
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"{self.name}: {status} ({self.checks} checks) {self.detail}"


# -- sampling ------------------------------------------------------------------

def sample_annulus(rng: np.random.Generator, count: int,
                   r_lo: float = 0.4, r_hi: float = 1.8) -> np.ndarray:
    r = rng.uniform(r_lo, r_hi, count)
    t = rng.uniform(0.0, 2.0 * math.pi, count)
    return r * np.exp(1j * t)


def sample_regular(rng: np.random.Generator, count: int, phi,
                   r_lo: float = 0.4, r_hi: float = 1.8) -> np.ndarray:
    """Annulus samples kept only where the regularity weight is healthy."""
    out: list[complex] = []
    while len(out) < count:
        for w in sample_annulus(rng, count, r_lo, r_hi):
            w = complex(w)
            _, reg = conformal_factor(phi, w)
            if reg > 1e3 * regularity_threshold(phi, w):
                out.append(w)
                if len(out) == count:
                    break
    return np.array(out)


def _segment_origin_distance(z: complex) -> float:
    # distance from 0 to the segment [1, z]
    a, b = 1 + 0j, z
    d = b - a
    denom = abs(d) ** 2
    if denom == 0.0:
        return abs(a)
    t = max(0.0, min(1.0, (-(a.conjugate() * d).real) / denom))
    return abs(a + t * d)


def quadrature_targets(rng: np.random.Generator, count: int) -> list[complex]:
    """Targets whose segment from the base point 1 stays clear of the puncture."""
    out: list[complex] = []
    while len(out) < count:
        w = complex(rng.uniform(0.6, 1.6) * np.exp(1j * rng.uniform(-1.5, 1.5)))
        if _segment_origin_distance(w) >= 0.45 and abs(w - 1.0) >= 0.3:
            out.append(w)
    return out


# -- suites --------------------------------------------------------------------

def check_nullity(params: FamilyParams, samples: int, rng: np.random.Generator) -> SuiteResult:
    phi = family_phi(params)
    defect = nullity_defect(phi.parts)
    structural = defect.is_zero
    worst = 0.0
    for w in sample_annulus(rng, samples):
        worst = max(worst, nullity_residual(phi, complex(w)))
    ok = structural and worst <= 1e-12
    return SuiteResult(
        "nullity", ok, samples + 1,
        f"structural_zero={structural} max_residual={worst:.3e}",
    )


def _max_coeff_ulp(a: LaurentPoly, b: LaurentPoly) -> float:
    """Worst componentwise distance between coefficients, in ulps."""
    worst = 0.0
    for k in set(dict(iter(a))) | set(dict(iter(b))):
        ca = a.terms.get(k, 0j)
        cb = b.terms.get(k, 0j)
        for x, y in ((ca.real, cb.real), (ca.imag, cb.imag)):
            if x == y:
                continue
            worst = max(worst, abs(x - y) / (math.ulp(max(abs(x), abs(y))) or 1.0))
    return worst


def check_back_differentiation(params: FamilyParams) -> SuiteResult:
    phi = family_phi(params)
    curve = family_curve(params)
    exact = all(x.derivative() == p for x, p in zip(curve.parts, phi.parts))
    worst = max(
        _max_coeff_ulp(x.derivative(), p) for x, p in zip(curve.parts, phi.parts)
    )
    # Exact on the verification grids; <= 1 ulp is the attainable bound for
    # arbitrary coefficient/divisor pairs in doubles.
    return SuiteResult(
        "back_differentiation", worst <= 1.0, 4,
        f"exact={exact} max_ulp={worst:g}",
    )


def check_quadrature(params: FamilyParams, rng: np.random.Generator,
                     targets: int = 20, nodes: int = 64) -> SuiteResult:
    phi = family_phi(params)
    curve = family_curve(params)
    xs, wts = np.polynomial.legendre.leggauss(nodes)
    base = 1 + 0j
    worst = 0.0
    for z in quadrature_targets(rng, targets):
        t = (xs + 1.0) / 2.0
        zs = base + t * (z - base)
        integral = np.array(
            [(z - base) / 2.0 * np.sum(wts * comp(zs)) for comp in phi.parts]
        )
        diff = np.array([comp(z) - comp(base) for comp in curve.parts])
        err = np.linalg.norm(integral - diff) / max(np.linalg.norm(diff), 1e-30)
        worst = max(worst, float(err))
    return SuiteResult("quadrature", worst <= 1e-9, targets, f"max_rel_err={worst:.3e}")


def check_conformality(params: FamilyParams, samples: int, rng: np.random.Generator) -> SuiteResult:
    phi = family_phi(params)
    curve = family_curve(params)
    worst = 0.0
    for w in sample_regular(rng, samples, phi):
        jet = surface_jet(phi, curve, complex(w))
        worst = max(worst, abs(jet.E - jet.G) / jet.E, abs(jet.F) / jet.E)
    return SuiteResult("conformality", worst <= 1e-12, 2 * samples, f"max_rel={worst:.3e}")


def check_harmonicity(params: FamilyParams, points: int, rng: np.random.Generator,
                      h: float = 1e-3) -> SuiteResult:
    """Five-point Laplacian of each coordinate converges at order ~2.

    The order is only measurable where the truncation term clears the FD
    roundoff noise (~eps * scale / h^2); coordinates whose residual sits at
    that floor are already harmonic to working precision and are skipped.
    """
    curve = family_curve(params)
    lo, hi = 1.8, 2.2
    checked = 0
    worst_order = 2.0
    ok = True
    for w in sample_annulus(rng, points, r_lo=0.75, r_hi=1.6):
        w = complex(w)
        scale = max(abs(c.real) for comp in curve.parts for c in (comp(w),))
        floor = 1e-7 * (1.0 + scale)
        for comp in curve.parts:
            res_h = _coordinate_residual(comp, w, h)
            res_h2 = _coordinate_residual(comp, w, h / 2.0)
            if res_h < floor or res_h2 < floor:
                continue
            order = math.log2(res_h / res_h2)
            checked += 1
            if not (lo <= order <= hi):
                ok = False
                worst_order = order
    ok = ok and checked > 0
    detail = (f"{checked} measurable orders within [{lo}, {hi}]"
              if ok else f"order {worst_order:.3f} out of range")
    return SuiteResult("harmonicity", ok, checked, detail)


def _coordinate_residual(comp: LaurentPoly, w: complex, h: float) -> float:
    center = comp(w).real
    total = math.fsum(comp(w + d).real for d in (h, -h, 1j * h, -1j * h)) - 4.0 * center
    return abs(total) / h**2


def check_frames(params: FamilyParams, points: int, rng: np.random.Generator) -> SuiteResult:
    """Closed-form p, q and normals against direct inner products and
    Gram-Schmidt, for the m = n = 1 real-lam member."""
    if params.m != 1 or params.n != 1 or not params.lam_is_real:
        return SuiteResult("frames", True, 0, "not applicable here", skipped=True)
    phi = family_phi(params)
    curve = family_curve(params)
    worst_pq = 0.0
    worst_gram = 0.0
    worst_span = 0.0
    for w in sample_regular(rng, points, phi):
        w = complex(w)
        jet = surface_jet(phi, curve, w)
        perp1, perp2 = perp_vectors(jet)
        s = frame_scalars(params, w)
        q_direct = float(np.dot(jet.xu, perp2))
        q_mirror = -float(np.dot(jet.xv, perp1))
        worst_pq = max(
            worst_pq,
            abs(s.p - jet.E) / s.p,
            abs(s.q - q_direct) / s.p,
            abs(s.q - q_mirror) / s.p,
        )
        frame = normal_frame(jet)
        basis = np.stack([frame.e1, frame.e2, frame.n1, frame.n2])
        worst_gram = max(worst_gram, float(np.max(np.abs(basis @ basis.T - np.eye(4)))))
        if s.cross_minus > 1e-6:
            for n in closed_form_normals(jet, s):
                resid = n - np.dot(n, frame.n1) * frame.n1 - np.dot(n, frame.n2) * frame.n2
                worst_span = max(worst_span, float(np.linalg.norm(resid)))
    ok = worst_pq <= 1e-10 and worst_gram <= 1e-10 and worst_span <= 1e-8
    return SuiteResult(
        "frames", ok, 6 * points,
        f"pq={worst_pq:.2e} gram={worst_gram:.2e} span={worst_span:.2e}",
    )


def check_integral_free(params: FamilyParams, rng: np.random.Generator,
                        points: int = 25) -> SuiteResult:
    """Seed consistency and the pointwise inversion round trip.

    The seed route fixes g = w, h = lam w, so the curve comparison is run
    against the matching low-order data (family_curve itself at m = n = 1).
    """
    from .henneberg import fixed_gh_curve

    seed = seed_phi(params.m, params.n)
    f_expected = family_triple(params).f
    d3 = seed.derivative().derivative().derivative()
    seed_ulp = _max_coeff_ulp(d3, f_expected)

    target = fixed_gh_curve(params)
    phi_low = phi_from_triple(
        WeierstrassTriple(f_expected, LaurentPoly.monomial(1), LaurentPoly.monomial(1, params.lam))
    )
    worst_point = 0.0
    worst_fd = 0.0
    worst_rt = 0.0
    can_invert = abs(1.0 + params.lam * params.lam) > 1e-3
    for w in sample_annulus(rng, points, r_lo=0.6, r_hi=1.5):
        w = complex(w)
        k = integral_free_point(seed, params.lam, w)
        ref = [comp(w) for comp in target.parts]
        scale = max(1.0, max(abs(v) for v in ref))
        worst_point = max(worst_point, max(abs(a - b) for a, b in zip(k, ref)) / scale)
        # d/dw of the pointwise curve must reproduce the 1-form
        h = 1e-6
        kp = integral_free_point(seed, params.lam, w + h)
        km = integral_free_point(seed, params.lam, w - h)
        fd = [(a - b) / (2.0 * h) for a, b in zip(kp, km)]
        phiv = [comp(w) for comp in phi_low.parts]
        fd_scale = max(1.0, max(abs(v) for v in phiv))
        worst_fd = max(worst_fd, max(abs(a - b) for a, b in zip(fd, phiv)) / fd_scale)
        if can_invert:
            rt = recover_seed(k, params.lam, w)
            worst_rt = max(worst_rt, abs(rt - seed(w)) / max(1.0, abs(seed(w))))
    ok = seed_ulp <= 1.0 and worst_point <= 1e-12 and worst_fd <= 1e-9 and (
        not can_invert or worst_rt <= 1e-12
    )
    return SuiteResult(
        "integral_free", ok, 3 * points + 1,
        f"seed_ulp={seed_ulp:g} point={worst_point:.2e} fd={worst_fd:.2e} roundtrip={worst_rt:.2e}",
    )


def check_reductions(params: FamilyParams) -> SuiteResult:
    """Degenerate-parameter geometry: lam = 0 planarity, m = n proportionality."""
    curve = family_curve(params)
    checks = 0
    ok = True
    notes = []
    if params.lam == 0:
        checks += 1
        ok &= curve.parts[3].is_zero
        notes.append(f"w_component_zero={curve.parts[3].is_zero}")
        if (params.m, params.n) == (1, 1):
            classic = classic_henneberg_curve()
            doubled = tuple(2.0 * comp for comp in classic.parts[:3])
            match = doubled == curve.parts[:3]
            checks += 1
            ok &= match
            notes.append(f"double_classic={match}")
    if params.m == params.n and params.lam_is_real:
        scaled = curve.parts[2] * params.lam
        worst = _max_coeff_ulp(curve.parts[3], scaled)
        checks += 1
        ok &= worst <= 1.0
        notes.append(f"w_eq_lam_z_ulp={worst:g}")
    if checks == 0:
        return SuiteResult("reductions", True, 0, "not applicable here", skipped=True)
    return SuiteResult("reductions", ok, checks, " ".join(notes))


def run_verify(params: FamilyParams, samples: int, seed: int) -> list[SuiteResult]:
    """Every suite applicable to this member, with one seeded RNG stream."""
    rng = np.random.default_rng(seed)
    results = [
        check_nullity(params, samples, rng),
        check_back_differentiation(params),
        check_quadrature(params, rng),
        check_conformality(params, min(samples, 1000), rng),
        check_harmonicity(params, 50, rng),
        check_frames(params, 100, rng),
        check_integral_free(params, rng),
        check_reductions(params),
    ]
    return results
