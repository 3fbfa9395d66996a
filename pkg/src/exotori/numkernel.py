"""Numerical kernel: dual-number jets, periodic quadrature, winding numbers, bisection.

Everything here is pure and reentrant.  Jets carry exact first derivatives
through chart formulas (product/chain rule semantics), so Lagrangian and
pullback residuals downstream are limited only by round-off, not by finite
differencing.
"""

from __future__ import annotations

import dataclasses

import numpy as np

__all__ = [
    "KernelError",
    "EvaluationError",
    "GridTooCoarseError",
    "BracketError",
    "Jet",
    "variable",
    "jet_exp",
    "jet_sqrt",
    "jet_sin",
    "jet_cos",
    "cis",
    "PeriodicGrid",
    "integrate_periodic",
    "integrate_to_convergence",
    "winding_number",
    "winding_fraction",
    "bisect",
    "gauss_legendre",
]

TWO_PI = 2.0 * np.pi


class KernelError(Exception):
    """Base class for kernel failures."""


class EvaluationError(KernelError):
    """An integrand or chart produced a non-finite or invalid value."""


class GridTooCoarseError(KernelError):
    """Sampling too coarse to resolve the quantity (phase jumps >= pi)."""


class BracketError(KernelError):
    """Root bracketing precondition violated."""


# ---------------------------------------------------------------------------
# First-order jets (dual numbers with a fixed list of partials)
# ---------------------------------------------------------------------------


class Jet:
    """Value plus a fixed stack of first partial derivatives.

    ``val`` is a scalar or ndarray; ``d`` stacks the partials along axis 0
    and broadcasts against ``val``.  Parameters are always real, so
    conjugation acts componentwise on the partials.
    """

    __slots__ = ("val", "d")

    def __init__(self, val, d):
        self.val = np.asarray(val)
        self.d = np.asarray(d)

    @property
    def npartials(self):
        return self.d.shape[0]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.d + other.d)
        return Jet(self.val + other, self.d)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.val, -self.d)

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val - other.val, self.d - other.d)
        return Jet(self.val - other, self.d)

    def __rsub__(self, other):
        return Jet(other - self.val, -self.d)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return Jet(self.val * other.val, self.d * other.val + self.val * other.d)
        return Jet(self.val * other, self.d * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            inv = 1.0 / other.val
            return Jet(self.val * inv, (self.d * other.val - self.val * other.d) * inv * inv)
        return Jet(self.val / other, self.d / other)

    def __rtruediv__(self, other):
        inv = 1.0 / self.val
        return Jet(other * inv, -other * self.d * inv * inv)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("jets support non-negative integer powers only")
        if n == 0:
            return Jet(np.ones_like(self.val), np.zeros_like(self.d))
        return Jet(self.val**n, n * self.val ** (n - 1) * self.d)

    # -- structure ---------------------------------------------------------

    def conj(self):
        return Jet(np.conj(self.val), np.conj(self.d))

    @property
    def real(self):
        return Jet(self.val.real, self.d.real)

    @property
    def imag(self):
        return Jet(self.val.imag, self.d.imag)

    def abs2(self):
        """|z|^2 as a real-valued jet."""
        return Jet((self.val * np.conj(self.val)).real, 2.0 * (np.conj(self.val) * self.d).real)

    def __repr__(self):
        return f"Jet(val={self.val!r}, d={self.d!r})"


def variable(val, index, npartials):
    """Seed a jet for the ``index``-th of ``npartials`` parameters."""
    val = np.asarray(val, dtype=float)
    d = np.zeros((npartials,) + val.shape)
    d[index] = 1.0
    return Jet(val, d)


def _lift(x, fn, dfn):
    if isinstance(x, Jet):
        v = fn(x.val)
        return Jet(v, dfn(x.val, v) * x.d)
    return fn(x)


def jet_exp(x):
    return _lift(x, np.exp, lambda v, f: f)


def jet_sqrt(x):
    return _lift(x, np.sqrt, lambda v, f: 0.5 / f)


def jet_sin(x):
    return _lift(x, np.sin, lambda v, f: np.cos(v))


def jet_cos(x):
    return _lift(x, np.cos, lambda v, f: -np.sin(v))


def cis(x):
    """e^{i x} for a real jet or array."""
    return jet_cos(x) + 1j * jet_sin(x)


# ---------------------------------------------------------------------------
# Periodic quadrature
# ---------------------------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class PeriodicGrid:
    """Equispaced parameters 2*pi*k/n, k = 0..n-1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("grid needs at least one node")

    @property
    def nodes(self):
        return TWO_PI * np.arange(self.n) / self.n

    def refine(self, factor=2):
        return PeriodicGrid(self.n * factor)


def integrate_periodic(f, grid):
    """Trapezoid rule on the periodic grid: (2*pi/n) * sum f(node).

    Spectrally accurate for smooth integrands; exact for trigonometric
    polynomials of degree < n/2.
    """
    vals = np.empty(grid.n)
    for k, t in enumerate(grid.nodes):
        v = f(t)
        if not np.isfinite(v):
            raise EvaluationError(f"non-finite integrand value {v!r} at node t={t!r}")
        vals[k] = v
    return (TWO_PI / grid.n) * float(vals.sum())


def integrate_to_convergence(f, tol=1e-12, n0=256, max_doublings=8):
    """Double the grid until two successive resolutions agree to ``tol``."""
    grid = PeriodicGrid(n0)
    prev = integrate_periodic(f, grid)
    for _ in range(max_doublings):
        grid = grid.refine()
        cur = integrate_periodic(f, grid)
        if abs(cur - prev) <= tol:
            return cur
        prev = cur
    raise EvaluationError(f"quadrature did not converge to {tol} within n={grid.n}")


# ---------------------------------------------------------------------------
# Winding numbers
# ---------------------------------------------------------------------------


def _winding_total(vals, min_modulus):
    mods = np.abs(vals)
    if mods.min() < min_modulus:
        k = int(np.argmin(mods))
        raise EvaluationError(
            f"winding undefined: |z| = {mods.min():.3e} < {min_modulus:.1e} at node index {k}"
        )
    ratios = np.roll(vals, -1) / vals
    jumps = np.angle(ratios)
    if np.abs(jumps).max() >= np.pi - 1e-6:
        raise GridTooCoarseError(
            f"grid too coarse: adjacent-node phase jump {np.abs(jumps).max():.6f} >= pi"
        )
    return float(jumps.sum() / TWO_PI)


def winding_fraction(z, grid, min_modulus=1e-9):
    """Accumulated argument / 2*pi before rounding (diagnostic form)."""
    vals = np.asarray([complex(z(t)) for t in grid.nodes])
    return _winding_total(vals, min_modulus)


def winding_number(z, grid, min_modulus=1e-9, residual_tol=1e-6):
    """Integer winding of the closed loop t -> z(t) about the origin."""
    total = winding_fraction(z, grid, min_modulus)
    k = int(np.rint(total))
    if abs(total - k) > residual_tol:
        raise GridTooCoarseError(
            f"winding rounding residual {abs(total - k):.3e} exceeds {residual_tol:.1e}"
        )
    return k


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


def bisect(f, lo, hi, tol=1e-12, max_iter=200):
    """Bisection on [lo, hi]; requires a sign change (f(lo)*f(hi) <= 0)."""
    if not lo < hi:
        raise BracketError(f"invalid bracket [{lo}, {hi}]")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: f={flo:.3e}, {fhi:.3e}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol or (hi - lo) <= tol:
            return mid
        if flo * fm <= 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def gauss_legendre(n, a=0.0, b=1.0):
    """Gauss-Legendre nodes and weights on [a, b]."""
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w
