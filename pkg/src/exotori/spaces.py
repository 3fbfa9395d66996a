"""Ambient symplectic spaces: normalized forms, Liouville primitive, embeddings, hypersurfaces.

Normalizations (calibrated once, frozen as exact rationals of pi):

* plane / C^2:  omega(u, v) = (1/pi) * sum_j Im(conj(u_j) v_j), with Liouville
  primitive lambda_p(u) = (1/(2*pi)) * sum_j Im(conj(p_j) u_j); a counter-
  clockwise circle of radius r encloses normalized area r^2.
* CP^2: Fubini-Study form scaled so every projective line has area 2.
* CP^1 factors of S^2 x S^2: scaled so each factor has area 1; each factor is
  realized as the radius-1/2 sphere in R^3 with omega = (2/pi) x . (u x v).

Orientation is fixed so all of the above are positive, and the Hamiltonian
convention is iota_X omega = -dH (the choice validating the standard rotation
Hamiltonians; see ``tori.HAMILTONIAN_SIGN``).
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .numkernel import Jet, jet_sqrt

__all__ = [
    "C2",
    "CP2",
    "CP1",
    "S2XS2",
    "SPHERE_HALF",
    "SpaceError",
    "DomainError",
    "AmbientPoint",
    "normalize_homogeneous",
    "omega",
    "omega_c2",
    "omega_plane",
    "omega_fs",
    "omega_sphere_pair",
    "omega_sphere_half",
    "liouville_c2",
    "e2_chart",
    "e2_tilde_chart",
    "e11_chart",
    "e1_chart",
    "embed_E2",
    "embed_E2_tilde",
    "embed_E11",
    "embed_E1",
    "cp1_to_sphere",
    "quadric_residual",
    "rp2_residual",
    "diagonal_residual",
    "antidiagonal_residual",
    "antidiagonal_residual_cp1",
    "hypersurface_residuals",
    "fs_distance",
    "point_distance",
    "line_area_cp2",
    "factor_area_cp1",
]

C2 = "c2"
CP2 = "cp2"
CP1 = "cp1"
S2XS2 = "s2xs2"
SPHERE_HALF = "sphere-half"

# Fubini-Study scale constants: line area 2 in CP^2, factor area 1 in CP^1.
FS_SCALE_CP2 = 2.0 / np.pi
FS_SCALE_CP1 = 1.0 / np.pi
# radius-1/2 sphere with total area 1 under (2/pi) x.(u x v)
SPHERE_SCALE = 2.0 / np.pi


class SpaceError(Exception):
    """Space tag mismatch or malformed point data."""


class DomainError(Exception):
    """Embedding argument outside its domain."""


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


def normalize_homogeneous(z, tol=1e-13):
    """Unit-norm representative with first non-negligible coordinate real > 0.

    Idempotent and invariant under nonzero complex rescaling.
    """
    z = np.asarray(z, dtype=complex)
    norm = np.linalg.norm(z)
    if norm < tol:
        raise SpaceError("cannot normalize the zero vector")
    z = z / norm
    for zj in z:
        if abs(zj) > 1e-8:
            z = z * (np.conj(zj) / abs(zj))
            break
    return z


@dataclasses.dataclass(frozen=True)
class AmbientPoint:
    """Tagged point of one of the ambient spaces.

    data layout: C2 -> (2,) complex; CP2 -> (3,) complex unit norm; CP1 ->
    (2,) complex unit norm; S2XS2 -> (2, 3) real with rows of norm 1/2;
    SPHERE_HALF -> (3,) real of norm 1/2.
    """

    space: str
    data: np.ndarray

    @staticmethod
    def c2(z0, z1):
        return AmbientPoint(C2, np.array([z0, z1], dtype=complex))

    @staticmethod
    def cp2(z):
        return AmbientPoint(CP2, normalize_homogeneous(z))

    @staticmethod
    def cp1(z):
        return AmbientPoint(CP1, normalize_homogeneous(z))

    @staticmethod
    def sphere(x):
        x = np.asarray(x, dtype=float)
        if abs(np.linalg.norm(x) - 0.5) > 1e-12:
            raise SpaceError(f"sphere point has norm {np.linalg.norm(x)!r}, expected 1/2")
        return AmbientPoint(SPHERE_HALF, x)

    @staticmethod
    def sphere_pair(x, y):
        p = np.vstack([x, y]).astype(float)
        for row in p:
            if abs(np.linalg.norm(row) - 0.5) > 1e-12:
                raise SpaceError("sphere-pair rows must have norm 1/2")
        return AmbientPoint(S2XS2, p)


def _as_data(p):
    return p.data if isinstance(p, AmbientPoint) else np.asarray(p)


# ---------------------------------------------------------------------------
# Symplectic form evaluation (vectorized over trailing axes)
# ---------------------------------------------------------------------------


def omega_plane(u, v):
    """(1/pi) Im(conj(u) v) for single complex-plane factors."""
    return np.imag(np.conj(u) * v) / np.pi


def omega_c2(u, v):
    """Normalized form of C^2 on complex tangent pairs, axis 0 = coordinate."""
    u = np.asarray(u)
    v = np.asarray(v)
    return np.imag(np.conj(u) * v).sum(axis=0) / np.pi


def liouville_c2(p, u):
    """Liouville primitive lambda_p(u) = (1/(2*pi)) sum Im(conj(p) u); d(lambda) = omega."""
    p = np.asarray(p)
    u = np.asarray(u)
    return np.imag(np.conj(p) * u).sum(axis=0) / (2.0 * np.pi)


def omega_fs(z, u, v, scale):
    """Fubini-Study form on arbitrary homogeneous representatives.

    ``z, u, v`` have the homogeneous coordinate on axis 0; ``u, v`` are
    derivatives of representative curves (vertical and radial parts are
    projected out by the formula itself).
    """
    z = np.asarray(z)
    u = np.asarray(u)
    v = np.asarray(v)
    n2 = np.real(np.conj(z) * z).sum(axis=0)
    huv = (np.conj(u) * v).sum(axis=0)
    hzu = (np.conj(z) * u).sum(axis=0)
    hzv = (np.conj(z) * v).sum(axis=0)
    return scale * np.imag(huv * n2 - np.conj(hzu) * hzv) / (n2 * n2)


def _cross(a, b):
    return np.cross(a, b, axisa=0, axisb=0, axisc=0)


def omega_sphere_half(x, u, v):
    """Area form of the radius-1/2 sphere scaled to total area 1."""
    x = np.asarray(x)
    return SPHERE_SCALE * (x * _cross(u, v)).sum(axis=0)


def omega_sphere_pair(p, u, v):
    """Product form on pairs of radius-1/2 spheres; axis 0 has length 6 (X then Y)."""
    p = np.asarray(p)
    u = np.asarray(u)
    v = np.asarray(v)
    return omega_sphere_half(p[:3], u[:3], v[:3]) + omega_sphere_half(p[3:], u[3:], v[3:])


def omega(space, p, u, v):
    """Evaluate the normalized symplectic form of ``space`` at ``p`` on (u, v)."""
    p = _as_data(p)
    u = np.asarray(u)
    v = np.asarray(v)
    if space == C2:
        return float(omega_c2(u, v))
    if space == CP2:
        return float(omega_fs(p, u, v, FS_SCALE_CP2))
    if space == CP1:
        return float(omega_fs(p, u, v, FS_SCALE_CP1))
    if space == SPHERE_HALF:
        return float(omega_sphere_half(p, u, v))
    if space == S2XS2:
        pf = p.reshape(6) if p.shape == (2, 3) else p
        uf = u.reshape(6) if u.shape == (2, 3) else u
        vf = v.reshape(6) if v.shape == (2, 3) else v
        return float(omega_sphere_pair(pf, uf, vf))
    raise SpaceError(f"unknown space tag {space!r}")


# ---------------------------------------------------------------------------
# Embeddings (jet-friendly chart forms + validated point forms)
# ---------------------------------------------------------------------------


def e2_chart(z0, z1):
    """Ball B(2) -> CP^2 representative (z0, z1, sqrt(2 - |z|^2)). Jet-safe."""
    w = jet_sqrt(2.0 - _a2(z0) - _a2(z1))
    return z0, z1, w


def e2_tilde_chart(z0, z1):
    """Modified ball embedding with third coordinate i*sqrt(2 - |z|^2)."""
    w = jet_sqrt(2.0 - _a2(z0) - _a2(z1))
    return z0, z1, 1j * w


def e11_chart(z0, z1):
    """B(1) x B(1) -> CP^1 x CP^1 representatives ((z0, w0), (z1, w1))."""
    w0 = jet_sqrt(1.0 - _a2(z0))
    w1 = jet_sqrt(1.0 - _a2(z1))
    return (z0, w0), (z1, w1)


def e1_chart(z):
    """B(1) -> radius-1/2 sphere: (sqrt(1-|z|^2) a, sqrt(1-|z|^2) b, 1/2 - |z|^2)."""
    a2 = _a2(z)
    root = jet_sqrt(1.0 - a2)
    if isinstance(z, Jet):
        return root * z.real, root * z.imag, 0.5 - a2
    return root * np.real(z), root * np.imag(z), 0.5 - a2


def _a2(z):
    if isinstance(z, Jet):
        return z.abs2()
    return np.real(z * np.conj(z))


def embed_E2(z0, z1):
    """Canonical symplectic embedding of the open ball B(2) into CP^2."""
    if abs(z0) ** 2 + abs(z1) ** 2 >= 2.0:
        raise DomainError(f"({z0!r}, {z1!r}) outside the open ball B(2)")
    return AmbientPoint.cp2(np.array(e2_chart(complex(z0), complex(z1))))


def embed_E2_tilde(z0, z1):
    """Modified ball embedding (imaginary third coordinate)."""
    if abs(z0) ** 2 + abs(z1) ** 2 >= 2.0:
        raise DomainError(f"({z0!r}, {z1!r}) outside the open ball B(2)")
    return AmbientPoint.cp2(np.array(e2_tilde_chart(complex(z0), complex(z1))))


def embed_E11(z0, z1):
    """Product-ball embedding into CP^1 x CP^1 (pair of normalized CP^1 points)."""
    if abs(z0) >= 1.0 or abs(z1) >= 1.0:
        raise DomainError(f"({z0!r}, {z1!r}) outside B(1) x B(1)")
    (a0, b0), (a1, b1) = e11_chart(complex(z0), complex(z1))
    return AmbientPoint.cp1([a0, b0]), AmbientPoint.cp1([a1, b1])


def embed_E1(z):
    """Symplectic embedding of B(1) into the radius-1/2 sphere."""
    if abs(z) >= 1.0:
        raise DomainError(f"{z!r} outside B(1)")
    return AmbientPoint.sphere(np.array(e1_chart(complex(z)), dtype=float))


def cp1_to_sphere(z):
    """Identify CP^1 with the radius-1/2 sphere, extending the ball embedding.

    [z : w] -> (Re(conj(w) z), Im(conj(w) z), (|w|^2 - |z|^2)/2) / |[z:w]|^2,
    so that cp1_to_sphere([z : sqrt(1-|z|^2)]) = embed_E1(z) exactly, and the
    rotation [z : w] -> [e^{i a} z : w] acts as the rotation about the x3-axis.
    """
    z = _as_data(z).astype(complex)
    n2 = float(np.real(z[0] * np.conj(z[0]) + z[1] * np.conj(z[1])))
    c = np.conj(z[1]) * z[0]
    return np.array([c.real, c.imag, 0.5 * (abs(z[1]) ** 2 - abs(z[0]) ** 2)]) / n2


# ---------------------------------------------------------------------------
# Hypersurface residuals
# ---------------------------------------------------------------------------


def quadric_residual(p):
    """|z0^2 + z1^2 + z2^2| on the unit-norm representative."""
    z = normalize_homogeneous(_as_data(p))
    return float(abs((z * z).sum()))


def rp2_residual(p):
    """Distance-like residual of a CP^2 point from the real locus.

    min over phases e^{i t} of |e^{i t} z - conj(e^{i t} z)| on the unit
    representative, computed as twice the square root of the smallest
    eigenvalue of the 2x2 Gram matrix of (Im z_j, Re z_j) rows.
    """
    z = normalize_homogeneous(_as_data(p))
    rows = np.stack([z.imag, z.real], axis=1)
    m = rows.T @ rows
    lam = np.linalg.eigvalsh(m)[0]
    return float(2.0 * np.sqrt(max(lam, 0.0)))


def diagonal_residual(p):
    """|X - Y| for a sphere-pair point (zero exactly on the diagonal)."""
    d = _as_data(p)
    return float(np.linalg.norm(d[0] - d[1]))


def antidiagonal_residual(p):
    """|X + Y| for a sphere-pair point (zero exactly on the antidiagonal)."""
    d = _as_data(p)
    return float(np.linalg.norm(d[0] + d[1]))


def antidiagonal_residual_cp1(p, q):
    """|z0 conj(z1) + w0 conj(w1)| on unit representatives of a CP^1 pair."""
    a = normalize_homogeneous(_as_data(p))
    b = normalize_homogeneous(_as_data(q))
    return float(abs(a[0] * np.conj(b[0]) + a[1] * np.conj(b[1])))


def hypersurface_residuals(p):
    """Named residual map for the distinguished hypersurfaces of p's space."""
    if not isinstance(p, AmbientPoint):
        raise SpaceError("hypersurface_residuals needs a tagged AmbientPoint")
    if p.space == CP2:
        return {"quadric": quadric_residual(p), "rp2": rp2_residual(p)}
    if p.space == S2XS2:
        return {"diagonal": diagonal_residual(p), "antidiagonal": antidiagonal_residual(p)}
    raise SpaceError(f"no distinguished hypersurfaces for space {p.space!r}")


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------


def fs_distance(z, w):
    """Fubini-Study distance between projective points.

    Computed as arcsin of the norm of the component of one unit representative
    orthogonal to the other, which stays well conditioned near zero distance
    (the arccos |<z, w>| form bottoms out near sqrt(eps)).
    """
    a = normalize_homogeneous(_as_data(z))
    b = normalize_homogeneous(_as_data(w))
    resid = a - np.vdot(b, a) * b
    return float(np.arcsin(np.clip(np.linalg.norm(resid), 0.0, 1.0)))


def point_distance(space, p, q):
    """Ambient metric used for endpoint matching."""
    p = _as_data(p)
    q = _as_data(q)
    if space == C2:
        return float(np.linalg.norm(p - q))
    if space in (CP2, CP1):
        return fs_distance(p, q)
    if space in (S2XS2, SPHERE_HALF):
        return float(np.linalg.norm(np.ravel(p) - np.ravel(q)))
    raise SpaceError(f"unknown space tag {space!r}")


# ---------------------------------------------------------------------------
# Normalization calibration integrals
# ---------------------------------------------------------------------------


def _projective_line_area(scale, nu=64, nphi=128):
    """Area of [cos(u) : sin(u) e^{i phi}] under the scaled FS form."""
    from .numkernel import gauss_legendre, variable, jet_cos, jet_sin, cis

    u_nodes, u_w = gauss_legendre(nu, 0.0, 0.5 * np.pi)
    phi_nodes = 2.0 * np.pi * np.arange(nphi) / nphi
    uu, pp = np.meshgrid(u_nodes, phi_nodes, indexing="ij")
    uj = Jet(uu, np.stack([np.ones_like(uu), np.zeros_like(uu)]))
    pj = Jet(pp, np.stack([np.zeros_like(pp), np.ones_like(pp)]))
    z0 = jet_cos(uj) + 0.0j
    z1 = jet_sin(uj) * cis(pj)
    z = np.stack([z0.val, z1.val])
    du = np.stack([z0.d[0], z1.d[0]])
    dphi = np.stack([z0.d[1], z1.d[1]])
    integrand = omega_fs(z, du, dphi, scale)
    return float((integrand * u_w[:, None]).sum() * (2.0 * np.pi / nphi))


def line_area_cp2(nu=64, nphi=128):
    """Numerically integrated area of the line {z2 = 0} in CP^2 (target: 2)."""
    return _projective_line_area(FS_SCALE_CP2, nu, nphi)


def factor_area_cp1(nu=64, nphi=128):
    """Numerically integrated area of one CP^1 factor (target: 1)."""
    return _projective_line_area(FS_SCALE_CP1, nu, nphi)
