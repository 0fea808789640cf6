"""Numeric roots of real binary forms and their conjugate pairing.

Roots are found by the Aberth-Ehrlich simultaneous iteration started on a
deterministic circle (radius from a Fujiwara-type magnitude bound, fixed phase
offset), then polished root-by-root with Newton steps.  Estimates closer than
the clustering radius are merged to their mean, which recovers accuracy for
multiple roots.  Forms with a numerically real root are rejected loudly: the
downstream center-of-mass formulas divide by the imaginary parts.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConvergenceFailure, RealRootDetected, UnpairedRoot
from .forms import RealQuadraticFactor, expand_quadratic_factors
from .hyperbolic import PointH2

log = logging.getLogger(__name__)

REALNESS_THRESHOLD = 1e-8
_CLUSTER_RADIUS = 1e-7


@dataclass(frozen=True)
class RootSet:
    """Upper half-plane representatives of the conjugate root pairs of a real form."""

    pairs: tuple
    residual: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))

    def __len__(self):
        return len(self.pairs)


def _horner(coeffs, x):
    acc = 0j
    for c in coeffs:
        acc = acc * x + c
    return acc


def _root_magnitude_bound(coeffs):
    """Fujiwara-style bound: every root has modulus <= 2 max_k |c_k/c_0|^(1/k)."""
    c0 = abs(coeffs[0])
    best = 0.0
    for k, c in enumerate(coeffs[1:], start=1):
        if c:
            best = max(best, (abs(c) / c0) ** (1.0 / k))
    return 2.0 * best if best > 0 else 1.0


def _aberth(coeffs, max_iter):
    n = len(coeffs) - 1
    deriv = [coeffs[i] * (n - i) for i in range(n)]
    radius = _root_magnitude_bound(coeffs)
    # fixed phase offset so the start is never conjugation-symmetric
    xs = [radius * cmath.exp(1j * (2 * math.pi * (k + 0.5) / n + 0.4)) for k in range(n)]
    for it in range(max_iter):
        moved = 0.0
        for i in range(n):
            xi = xs[i]
            p = _horner(coeffs, xi)
            dp = _horner(deriv, xi)
            if dp == 0:
                xs[i] = xi + (1e-8 + 1e-8j) * (1.0 + abs(xi))
                moved = math.inf
                continue
            newton = p / dp
            s = 0j
            for j in range(n):
                if j != i:
                    diff = xi - xs[j]
                    if diff == 0:
                        diff = (1e-12 + 1e-12j) * (1.0 + abs(xi))
                    s += 1.0 / diff
            denom = 1.0 - newton * s
            step = newton if denom == 0 else newton / denom
            xs[i] = xi - step
            moved = max(moved, abs(step) / (1.0 + abs(xs[i])))
        if moved <= 1e-14:
            log.debug("aberth converged in %d iterations", it + 1)
            break
    return xs


def _newton_polish(coeffs, deriv, x, rounds=24):
    best, best_p = x, abs(_horner(coeffs, x))
    for _ in range(rounds):
        dp = _horner(deriv, x)
        if dp == 0:
            break
        x = x - _horner(coeffs, x) / dp
        p = abs(_horner(coeffs, x))
        if p < best_p:
            best, best_p = x, p
        if abs(best - x) <= 1e-15 * (1.0 + abs(x)) and p >= best_p:
            break
    return best


def _cluster(roots):
    """Merge estimates within the clustering radius into (mean, multiplicity) groups."""
    remaining = list(roots)
    out = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        changed = True
        while changed:
            changed = False
            for r in remaining[:]:
                if any(abs(r - m) <= _CLUSTER_RADIUS * (1.0 + abs(m)) for m in members):
                    members.append(r)
                    remaining.remove(r)
                    changed = True
        out.append((sum(members) / len(members), len(members)))
    return out


def _multiple_root_polish(coeffs, deriv, x, multiplicity, rounds=12):
    """Modified Newton x -= m p/p'; quadratic at a root of the given multiplicity.

    Iterates are kept only while |p| improves, so a mistaken multiplicity cannot
    push a good estimate away.
    """
    best, best_p = x, abs(_horner(coeffs, x))
    for _ in range(rounds):
        dp = _horner(deriv, x)
        if dp == 0:
            break
        x = x - multiplicity * _horner(coeffs, x) / dp
        p = abs(_horner(coeffs, x))
        if p >= best_p:
            break
        best, best_p = x, p
    return best


def _horner_exact(coeffs, re, im):
    """Horner evaluation at re + i*im in exact rational arithmetic."""
    pr, pi = Fraction(0), Fraction(0)
    for c in coeffs:
        pr, pi = pr * re - pi * im + c, pr * im + pi * re
    return pr, pi


def _exact_newton_polish(F, x, multiplicity=1, rounds=3):
    """Newton steps with the polynomial evaluated exactly at the float iterate.

    Float Horner on large integer coefficients loses enough accuracy to spoil
    conjugate pairing; evaluating p and p' in exact rational arithmetic leaves
    only the float representation of the iterate itself.
    """
    n = F.degree
    dcoeffs = [c * (n - i) for i, c in enumerate(F.coeffs[:-1])]
    for _ in range(rounds):
        re, im = Fraction(x.real), Fraction(x.imag)
        pr, pi = _horner_exact(F.coeffs, re, im)
        dr, di = _horner_exact(dcoeffs, re, im)
        dp = complex(dr, di)
        if dp == 0:
            break
        step = multiplicity * complex(pr, pi) / dp
        x = x - step
        if abs(step) <= 1e-16 * (1.0 + abs(x)):
            break
    return x


def _refine(F, coeffs, deriv, estimates):
    """Cluster raw estimates, then polish each cluster to full accuracy."""
    out = []
    for value, mult in _cluster(estimates):
        if mult > 1:
            value = _multiple_root_polish(coeffs, deriv, value, mult)
        value = _exact_newton_polish(F, value, multiplicity=mult)
        out.extend([value] * mult)
    return out


def _exact_residual(F, r):
    """|F(r, 1)| / (height * (1 + |r|)^n), with the numerator evaluated exactly."""
    pr, pi = _horner_exact(F.coeffs, Fraction(r.real), Fraction(r.imag))
    h = float(max(abs(c) for c in F.coeffs))
    return abs(complex(pr, pi)) / (h * (1.0 + abs(r)) ** F.degree)


def _conjugate_defect(roots):
    """How far the multiset is from being closed under conjugation."""
    upper = sorted((r for r in roots if r.imag > 0), key=lambda r: (r.real, r.imag))
    lower = sorted((r.conjugate() for r in roots if r.imag < 0),
                   key=lambda r: (r.real, r.imag))
    if len(upper) != len(lower):
        return math.inf
    if not upper:
        return 0.0
    return max(abs(u - v) for u, v in zip(upper, lower))


def _power_sum_defect(F, roots):
    """Mismatch of the first two power sums against the exact coefficient values.

    Newton's identities give sum(r) = -c1/c0 and sum(r^2) = (c1^2 - 2 c0 c2)/c0^2;
    a wrong multiset (a doubled root hiding a missed one) shows up here even when
    every reported root has a tiny residual.
    """
    c0, c1, c2 = F.coeffs[0], F.coeffs[1], F.coeffs[2]
    s1_true = complex(float(-c1 / c0))
    s2_true = complex(float((c1 * c1 - 2 * c0 * c2) / (c0 * c0)))
    s1 = sum(roots)
    s2 = sum(r * r for r in roots)
    scale1 = 1.0 + sum(abs(r) for r in roots)
    scale2 = 1.0 + sum(abs(r) ** 2 for r in roots)
    return max(abs(s1 - s1_true) / scale1, abs(s2 - s2_true) / scale2)


def _coarse_groups(roots, radius=0.02):
    """Group estimates lying within `radius` (relative) of each other."""
    remaining = list(roots)
    groups = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        changed = True
        while changed:
            changed = False
            for r in remaining[:]:
                if any(abs(r - m) <= radius * (1.0 + abs(m)) for m in members):
                    members.append(r)
                    remaining.remove(r)
                    changed = True
        groups.append(members)
    return groups


def _taylor_shift_scaled(F, x0, s):
    """Exact coefficients (descending) of F(x0 + s*w, 1) as a polynomial in w."""
    work = list(F.coeffs)
    taylor = []
    for _ in range(F.degree + 1):
        acc = Fraction(0)
        quotient = []
        for c in work:
            acc = acc * x0 + c
            quotient.append(acc)
        taylor.append(quotient.pop())
        work = quotient
    return [taylor[k] * s**k for k in range(len(taylor))][::-1]


def _zoom_solve(F, coeffs, deriv, cluster, max_iter):
    """Re-solve after recentering on a tight root cluster.

    A Moebius substitution can contract roots into clusters whose diameter is
    far below the double-precision resolution of the original coefficients.
    Shifting exactly to a dyadic center near the cluster and rescaling by a
    dyadic power makes the cluster well conditioned; the whole root set is
    re-solved in the new coordinates and refined back in the original ones.
    """
    center = sum(cluster) / len(cluster)
    diam = max(abs(r - center) for r in cluster)
    if diam == 0:
        return None
    n = F.degree
    x0 = Fraction(round(center.real * 2**24), 2**24)
    s = Fraction(2) ** math.frexp(2.0 * diam)[1]
    if s > 1:
        return None
    shifted = _taylor_shift_scaled(F, x0, s)
    top = max(abs(c) for c in shifted)
    if top == 0:
        return None
    local = [float(c / top) for c in shifted]
    local_deriv = [local[i] * (n - i) for i in range(n)]
    ws = _aberth(local, max_iter)
    ws = [_newton_polish(local, local_deriv, w) for w in ws]
    x0f, sf = float(x0), float(s)
    back = [x0f + sf * w for w in ws]
    log.debug("zoom re-solve at %s with scale %s", x0f, sf)
    return _refine(F, coeffs, deriv, back)


def complex_roots(F, tol=1e-10, max_iter=200):
    """All n roots of F(X, 1), multiplicities included, deterministically ordered.

    Residual contract: |F(r, 1)| / (height * (1 + |r|)^n) <= tol for every root,
    with the polynomial value computed in exact arithmetic; the first two power
    sums must also match their exact coefficient values.
    """
    n = F.degree
    coeffs = [float(c) for c in F.coeffs]
    deriv = [coeffs[i] * (n - i) for i in range(n)]
    xs = _aberth(coeffs, max_iter)
    xs = [_newton_polish(coeffs, deriv, x) for x in xs]
    xs = _refine(F, coeffs, deriv, xs)
    # clusters of nearby roots are exactly where double precision runs out;
    # zoom into each and keep the result when the integrity certificates improve
    quality = max(_conjugate_defect(xs), _power_sum_defect(F, xs))
    for group in _coarse_groups(xs):
        if len(group) < 2 or quality <= 1e-12:
            continue
        zoomed = _zoom_solve(F, coeffs, deriv, group, max_iter)
        if zoomed is None:
            continue
        new_quality = max(_conjugate_defect(zoomed), _power_sum_defect(F, zoomed))
        if new_quality < quality:
            xs, quality = zoomed, new_quality
    if _power_sum_defect(F, xs) > 1e-8:
        raise ConvergenceFailure(
            f"root multiset fails the power-sum certificate ({_power_sum_defect(F, xs):.3e})")
    for r in xs:
        rel = _exact_residual(F, r)
        if not rel <= tol:
            raise ConvergenceFailure(f"root residual {rel:.3e} exceeds tolerance {tol:.1e}")
    xs.sort(key=lambda r: (r.real, r.imag))
    return xs


def pair_conjugates(roots, tol=1e-8, form=None):
    """Match roots into conjugate pairs; representatives get positive imaginary part.

    Raises RealRootDetected when some root is within the realness threshold of
    the real axis, and UnpairedRoot when matching fails.  The result does not
    depend on the input order.
    """
    roots = list(roots)
    for r in roots:
        if abs(r.imag) <= REALNESS_THRESHOLD * (1.0 + abs(r)):
            raise RealRootDetected(f"root {r} is (numerically) real")
    upper = sorted((r for r in roots if r.imag > 0), key=lambda r: (r.real, r.imag))
    lower = sorted((r for r in roots if r.imag < 0), key=lambda r: (r.real, -r.imag))
    if len(upper) != len(lower):
        raise UnpairedRoot(f"{len(upper)} upper vs {len(lower)} lower roots")
    pairs = []
    pool = list(lower)
    for r in upper:
        match = min(pool, key=lambda m: abs(r - m.conjugate()))
        gap = abs(r - match.conjugate())
        if gap > tol * (1.0 + abs(r)):
            raise UnpairedRoot(f"no conjugate partner for {r} (closest at distance {gap:.3e})")
        pool.remove(match)
        rep = (r + match.conjugate()) / 2
        pairs.append(PointH2(rep.real, rep.imag))
    pairs.sort(key=lambda p: (p.x, p.y))
    residual = 0.0
    if form is not None:
        coeffs = [float(c) for c in form.coeffs]
        residual = max(abs(_horner(coeffs, r)) for r in roots)
    return RootSet(tuple(pairs), residual)


def root_set(F, tol=1e-10):
    """Roots of F paired into the upper half-plane (raises on real roots)."""
    return pair_conjugates(complex_roots(F, tol=tol), form=F)


def _rationalize(F, factors, max_denominator=10**6):
    """Round float factors to nearby rationals; keep them only if the product
    reproduces F exactly."""
    candidates = []
    for f in factors:
        try:
            candidates.append(RealQuadraticFactor(
                Fraction(f.a).limit_denominator(max_denominator),
                Fraction(f.b).limit_denominator(max_denominator),
            ))
        except (RealRootDetected, ValueError):
            return None
    product = expand_quadratic_factors(candidates)
    c0 = F.coeffs[0]
    if all(c0 * p == c for p, c in zip(product, F.coeffs)):
        return candidates
    return None


def real_quadratic_factors(F, tol=1e-10, rootset=None):
    """Factor F/a0 over the reals into monic quadratics X^2 + a_j XZ + b_j Z^2.

    Each conjugate pair x + iy contributes (a_j, b_j) = (-2x, x^2 + y^2).  When
    rounding the numeric factors to small rationals reproduces F exactly, the
    exact factors are returned (enabling the exact centroid path downstream).
    """
    rs = rootset if rootset is not None else root_set(F, tol=tol)
    floats = [RealQuadraticFactor(-2.0 * p.x, p.x * p.x + p.y * p.y) for p in rs.pairs]
    exact = _rationalize(F, floats)
    if exact is not None:
        log.debug("recovered exact quadratic factors for %s", F)
        return exact
    return floats
