"""Closed plane curves: Fourier representation, normalized area, constrained
curve generation, the exact symplectomorphism of the half plane, and
equal-area Hamiltonian isotopies between curves.

Normalized area follows the plane convention of :mod:`exotori.spaces`: a
counterclockwise circle of radius r encloses area r^2.
"""

from __future__ import annotations

import dataclasses
import functools

import numpy as np

from .numkernel import Jet, PeriodicGrid, bisect, jet_exp, winding_number

__all__ = [
    "CurveError",
    "PreconditionError",
    "ConstructionError",
    "PlaneCurve",
    "circle",
    "from_samples",
    "from_function",
    "enclosed_area",
    "make_gamma",
    "rounded_halfdisc_curve",
    "exact_symplecto_f",
    "exact_symplecto_f_jet",
    "f_pullback_residual",
    "CurveIsotopy",
    "curve_isotopy",
    "curve_set_distance",
    "write_curve_csv",
]

TWO_PI = 2.0 * np.pi


class CurveError(Exception):
    """Base class for curve failures."""


class PreconditionError(CurveError):
    pass


class ConstructionError(CurveError):
    pass


# ---------------------------------------------------------------------------
# PlaneCurve: truncated Fourier series z(s) = sum_k c_k e^{iks}
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class PlaneCurve:
    """Smooth closed curve as a truncated Fourier series.

    ``coeffs`` are in numpy FFT order; ``freqs`` are the matching integer
    frequencies.  Closedness is automatic; embeddedness is checked on samples
    where constructions require it.
    """

    coeffs: np.ndarray

    @property
    def n(self):
        return len(self.coeffs)

    @functools.cached_property
    def freqs(self):
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(int)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        phases = np.exp(1j * np.multiply.outer(s, self.freqs))
        return phases @ self.coeffs

    def derivative(self, s):
        s = np.asarray(s, dtype=float)
        phases = np.exp(1j * np.multiply.outer(s, self.freqs))
        return phases @ (1j * self.freqs * self.coeffs)

    def jet(self, s):
        """Evaluate on a real jet parameter (chain rule through the series)."""
        if isinstance(s, Jet):
            return Jet(self(s.val), self.derivative(s.val) * s.d)
        return self(s)

    # -- linear curve operations (exact on coefficients) --------------------

    @property
    def centroid(self):
        return complex(self.coeffs[0])

    def translated(self, w):
        c = self.coeffs.copy()
        c[0] += w
        return PlaneCurve(c)

    def scaled_about(self, sigma, center=None):
        center = self.centroid if center is None else center
        c = sigma * self.coeffs
        c[0] = center + sigma * (self.coeffs[0] - center)
        return PlaneCurve(c)

    def multiplied(self, w):
        return PlaneCurve(w * self.coeffs)

    def shifted_parameter(self, a):
        """Reparametrization s -> s + a (same point set)."""
        return PlaneCurve(self.coeffs * np.exp(1j * self.freqs * a))

    def samples(self, n):
        return self(TWO_PI * np.arange(n) / n)

    def closure_gap(self):
        return float(abs(self(TWO_PI) - self(0.0)))

    def min_modulus(self, n=512):
        return float(np.min(np.abs(self.samples(n))))

    def is_embedded(self, n=512):
        """Sampling-level embeddedness: no crossing among n chord segments."""
        pts = self.samples(n)
        return not _polyline_self_intersects(pts)

    def winding_about(self, w=0.0, n=512):
        return winding_number(lambda t: self(t) - w, PeriodicGrid(n))


def _polyline_self_intersects(pts):
    """Segment-intersection test over the closed polyline through pts."""
    n = len(pts)
    a = pts
    b = np.roll(pts, -1)
    # test all non-adjacent segment pairs, vectorized over j for each i
    ax, ay = a.real, a.imag
    bx, by = b.real, b.imag
    for i in range(n - 2):
        js = np.arange(i + 2, n if i > 0 else n - 1)
        d1x, d1y = bx[i] - ax[i], by[i] - ay[i]
        d2x, d2y = bx[js] - ax[js], by[js] - ay[js]
        ex, ey = ax[js] - ax[i], ay[js] - ay[i]
        denom = d1x * d2y - d1y * d2x
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (ex * d2y - ey * d2x) / denom
            u = (ex * d1y - ey * d1x) / denom
        hit = (np.abs(denom) > 1e-15) & (t > 0) & (t < 1) & (u > 0) & (u < 1)
        if np.any(hit):
            return True
    return False


def circle(center=0.0, radius=1.0, n=8):
    """Counterclockwise circle; encloses normalized area radius^2."""
    coeffs = np.zeros(n, dtype=complex)
    coeffs[0] = center
    coeffs[1] = radius
    return PlaneCurve(coeffs)


def from_samples(pts):
    """Fit a Fourier curve through equispaced samples (exact interpolation)."""
    return PlaneCurve(np.fft.fft(np.asarray(pts, dtype=complex)) / len(pts))


def from_function(fn, n=256):
    s = TWO_PI * np.arange(n) / n
    return from_samples(np.array([fn(t) for t in s]))


# ---------------------------------------------------------------------------
# Normalized area
# ---------------------------------------------------------------------------


def enclosed_area(c, n=None):
    """Signed normalized area (1/(2*pi)) * loop-integral of Im(conj(z) dz).

    Green's-theorem form of the Liouville integral; exact for the Fourier
    representation once n exceeds twice the top frequency.  Positive on
    counterclockwise curves; a counterclockwise circle of radius r gives r^2.
    """
    if not isinstance(c, PlaneCurve):
        raise PreconditionError("enclosed_area expects a PlaneCurve (closed by construction)")
    if n is None:
        n = max(2 * c.n + 1, 64)
    s = TWO_PI * np.arange(n) / n
    z = c(s)
    dz = c.derivative(s)
    return float(np.imag(np.conj(z) * dz).sum() / n / 2.0)


def _area_parseval(c):
    # cross-check form: area = sum_k k |c_k|^2
    return float(np.sum(c.freqs * np.abs(c.coeffs) ** 2))


# ---------------------------------------------------------------------------
# The area-constrained curve in the half disc
# ---------------------------------------------------------------------------


def _rounded_halfdisc_reference(inset, radius, corner, n=512, modes=48):
    """Smoothed boundary of {Re z > inset, |z| < radius} with rounded corners.

    Pieces (counterclockwise): outer arc, upper corner arc, flat segment on
    Re z = inset, lower corner arc; sampled by arclength and low-passed with
    an exponential spectral filter.
    """
    rin = radius - corner
    xin = inset + corner
    if rin <= 0 or xin >= rin:
        raise ConstructionError("incompatible half-disc rounding parameters")
    yc = np.sqrt(rin * rin - xin * xin)
    beta = np.arctan2(yc, xin)

    def outer_arc(t):  # t in [0,1], from -beta to +beta
        a = -beta + 2.0 * beta * t
        return radius * np.exp(1j * a)

    def corner_up(t):  # angle beta -> pi about (xin, yc)
        a = beta + (np.pi - beta) * t
        return (xin + 1j * yc) + corner * np.exp(1j * a)

    def flat(t):  # down the segment Re = inset
        return inset + 1j * (yc - 2.0 * yc * t)

    def corner_dn(t):  # angle pi -> 2 pi - beta about (xin, -yc)
        a = np.pi + (np.pi - beta) * t
        return (xin - 1j * yc) + corner * np.exp(1j * a)

    lengths = np.array(
        [2.0 * beta * radius, (np.pi - beta) * corner, 2.0 * yc, (np.pi - beta) * corner]
    )
    counts = np.maximum((n * lengths / lengths.sum()).astype(int), 8)
    counts[-1] += n - counts.sum()
    pts = np.concatenate(
        [
            fn(np.arange(m) / m)
            for fn, m in zip([outer_arc, corner_up, flat, corner_dn], counts)
        ]
    )
    coeffs = np.fft.fft(pts) / len(pts)
    freqs = np.fft.fftfreq(len(pts), d=1.0 / len(pts))
    filt = np.exp(-36.0 * (np.abs(freqs) / modes) ** 8)
    curve = PlaneCurve(coeffs * filt)
    # re-sample to a compact, fully smooth representation
    return from_samples(curve.samples(4 * modes))


def rounded_halfdisc_curve(
    target_area, inset=0.08, radius=0.92, corner=0.10, margin=0.02, modes=48
):
    """Smooth embedded curve of prescribed normalized area in the half disc.

    The fixed reference shape is scaled about its centroid, with the scale
    solved by bisection on the re-evaluated area functional.  Postconditions:
    area within 1e-10, min Re > margin, max |z| < 1 - margin, embedded on
    512 samples.
    """
    if not 0.0 < target_area < 0.5:
        raise PreconditionError(f"target area {target_area!r} outside (0, 1/2)")
    ref = _rounded_halfdisc_reference(inset, radius, corner, modes=modes)
    a_ref = enclosed_area(ref)

    def gap(sigma):
        return enclosed_area(ref.scaled_about(sigma)) - target_area

    hi = 1.25
    if gap(0.01) > 0.0 or gap(hi) < 0.0:
        raise ConstructionError(f"target area {target_area} not reachable from reference {a_ref:.4f}")
    sigma = bisect(gap, 0.01, hi, tol=1e-15)
    out = ref.scaled_about(sigma)
    pts = out.samples(512)
    if pts.real.min() <= margin or np.abs(pts).max() >= 1.0 - margin:
        raise ConstructionError(
            f"area {target_area} violates the half-disc margins "
            f"(min Re {pts.real.min():.4f}, max |z| {np.abs(pts).max():.4f})"
        )
    if not out.is_embedded():
        raise ConstructionError("constructed curve self-intersects on samples")
    if abs(enclosed_area(out) - target_area) > 1e-10:
        raise ConstructionError("area solve did not converge")
    return out


def make_gamma(target_area, mode="cp2", margin=0.02):
    """The distinguished curve: boundary of a domain of the given area inside
    the unit half disc of positive real part.

    ``mode`` records the intended ambient setting ("cp2" uses area 1/3,
    "s2xs2" uses 1/4); the geometric constraints are identical.
    """
    if mode not in ("cp2", "s2xs2"):
        raise PreconditionError(f"unknown mode {mode!r}")
    return rounded_halfdisc_curve(target_area, margin=margin)


# ---------------------------------------------------------------------------
# The exact symplectomorphism of T*R onto the right half plane
# ---------------------------------------------------------------------------


def exact_symplecto_f(x, y):
    """(x, y) -> e^x + i e^{-x} y, an exact symplectomorphism onto {Re > 0}."""
    return np.exp(x) + 1j * np.exp(-x) * y


def exact_symplecto_f_jet(x, y):
    """Jet version of the half-plane map."""
    return jet_exp(x) + 1j * jet_exp(-x) * y


def f_pullback_residual(x, y):
    """Residual of the Liouville identity: pullback of p dq minus y dx.

    q = Re f, p = Im f; the pullback is p * (dq/dx, dq/dy) and must equal
    (y, 0) exactly.
    """
    xj = Jet(float(x), np.array([1.0, 0.0]))
    yj = Jet(float(y), np.array([0.0, 1.0]))
    w = exact_symplecto_f_jet(xj, yj)
    q, p = w.real, w.imag
    pull = p.val * q.d
    return float(max(abs(pull[0] - y), abs(pull[1])))


# ---------------------------------------------------------------------------
# Equal-area curve isotopies
# ---------------------------------------------------------------------------


def _arclength_aligned(c, n):
    """Reparametrize by arclength with basepoint at maximal real part."""
    fine = 4096
    s = TWO_PI * np.arange(fine) / fine
    speed = np.abs(c.derivative(s))
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (speed[1:] + speed[:-1]) * np.diff(s))])
    total = cum[-1] + 0.5 * (speed[-1] + speed[0]) * (TWO_PI - s[-1])
    base = int(np.argmax(c(s).real))
    targets = (cum[base] + total * np.arange(n) / n) % total
    params = np.interp(targets, cum, s[: len(cum)])
    return from_samples(c(params))


def curve_set_distance(a, b, n=512, refine_steps=3):
    """Symmetric Hausdorff-type distance between curve point sets.

    Max over samples of one curve of the distance to the other curve, with the
    parameter of the nearest point polished by Newton steps; insensitive to
    reparametrization.
    """

    def directed(c1, c2):
        p = c1.samples(n)
        fine = 4096
        s2 = TWO_PI * np.arange(fine) / fine
        q = c2(s2)
        idx = np.argmin(np.abs(p[:, None] - q[None, :]), axis=1)
        s = s2[idx]
        for _ in range(refine_steps):
            z = c2(s)
            dz = c2.derivative(s)
            d2z = PlaneCurve(c2.coeffs * (1j * c2.freqs) ** 2 if False else c2.coeffs)(s)  # unused
            g = np.real(np.conj(z - p) * dz)
            gp = np.abs(dz) ** 2 + np.real(np.conj(z - p) * c2.derivative(s + 1e-7) - np.conj(z - p) * dz) / 1e-7
            step = np.where(np.abs(gp) > 1e-12, g / np.where(np.abs(gp) > 1e-12, gp, 1.0), 0.0)
            s = s - np.clip(step, -0.01, 0.01)
        return float(np.max(np.abs(c2(s) - p)))

    return max(directed(a, b), directed(b, a))


@dataclasses.dataclass(frozen=True)
class CurveIsotopy:
    """Equal-area path of curves t in [0,1] -> PlaneCurve.

    Construction: arclength-aligned endpoints interpolated linearly, then a
    per-time rescaling about the centroid (solved by bisection) restores the
    area exactly -- a discrete Moser correction.  Enclosed area is constant
    along the path by construction.
    """

    start: PlaneCurve
    end: PlaneCurve
    area: float

    def _raw(self, t):
        return PlaneCurve((1.0 - t) * self.start.coeffs + t * self.end.coeffs)

    def at(self, t):
        raw = self._raw(t)
        a_raw = enclosed_area(raw)
        if a_raw <= 1e-12:
            raise ConstructionError(f"degenerate interpolant at t={t}: area {a_raw:.3e}")
        guess = np.sqrt(self.area / a_raw)
        sigma = bisect(
            lambda sg: enclosed_area(raw.scaled_about(sg)) - self.area,
            0.5 * guess,
            1.7 * guess,
            tol=1e-15,
        )
        return raw.scaled_about(sigma)

    def velocity(self, t, s, h=1e-5):
        """Time derivative by central differences of the smooth construction."""
        return (self.at(t + h)(s) - self.at(t - h)(s)) / (2.0 * h)

    def jet(self, t, s_jet, t_index, h=1e-5):
        """Jet of c_t(s) with the time partial injected at ``t_index``."""
        cur = self.at(t)
        out = cur.jet(s_jet)
        d = np.array(out.d, copy=True)
        d[t_index] = d[t_index] + self.velocity(t, s_jet.val if isinstance(s_jet, Jet) else s_jet, h)
        return Jet(out.val, d)

    def area_drift(self, nt=33):
        ts = np.linspace(0.0, 1.0, nt)
        return float(max(abs(enclosed_area(self.at(t)) - self.area) for t in ts))

    def min_origin_distance(self, nt=33, ns=256):
        ts = np.linspace(0.0, 1.0, nt)
        return float(min(self.at(t).min_modulus(ns) for t in ts))

    def min_real_part(self, nt=33, ns=256):
        ts = np.linspace(0.0, 1.0, nt)
        return float(min(self.at(t).samples(ns).real.min() for t in ts))

    def max_modulus(self, nt=33, ns=256):
        ts = np.linspace(0.0, 1.0, nt)
        return float(max(np.abs(self.at(t).samples(ns)).max() for t in ts))


def curve_isotopy(c0, c1, avoid_origin=False, n=256):
    """Equal-area isotopy between closed curves; see CurveIsotopy.

    Preconditions: areas agree to 1e-9 (same orientation); with
    ``avoid_origin``, neither enclosed domain contains the origin and the
    constructed path stays away from it (reported lower bound).
    """
    a0 = enclosed_area(c0)
    a1 = enclosed_area(c1)
    if abs(a0 - a1) > 1e-9:
        raise PreconditionError(f"area mismatch: {a0!r} vs {a1!r}")
    if avoid_origin:
        for c in (c0, c1):
            if c.min_modulus() < 1e-9:
                raise PreconditionError("curve passes through the origin")
            if c.winding_about(0.0) != 0:
                raise PreconditionError("enclosed domain contains the origin")
    iso = CurveIsotopy(_arclength_aligned(c0, n), _arclength_aligned(c1, n), a0)
    if avoid_origin:
        bound = iso.min_origin_distance()
        if bound <= 1e-9:
            raise ConstructionError(
                f"isotopy crosses the origin (min |c_t| = {bound:.3e}); translate or re-seed"
            )
    return iso


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------


def write_curve_csv(path, c, n=256):
    """Rows (s, Re, Im) for plotting."""
    s = TWO_PI * np.arange(n) / n
    z = c(s)
    with open(path, "w") as fh:
        fh.write("s,re,im\n")
        for si, zi in zip(s, z):
            fh.write(f"{si:.12g},{zi.real:.12g},{zi.imag:.12g}\n")
