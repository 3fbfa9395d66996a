"""Spaces tests: normalizations, embeddings, pullbacks, hypersurface residuals."""

import numpy as np
import pytest

from exotori import spaces
from exotori.numkernel import Jet
from exotori.spaces import (
    C2,
    CP1,
    CP2,
    S2XS2,
    AmbientPoint,
    DomainError,
    SpaceError,
    antidiagonal_residual,
    antidiagonal_residual_cp1,
    cp1_to_sphere,
    diagonal_residual,
    e1_chart,
    e2_chart,
    e2_tilde_chart,
    e11_chart,
    embed_E1,
    embed_E2,
    embed_E2_tilde,
    embed_E11,
    factor_area_cp1,
    fs_distance,
    hypersurface_residuals,
    line_area_cp2,
    liouville_c2,
    normalize_homogeneous,
    omega,
    omega_c2,
    omega_fs,
    omega_plane,
    omega_sphere_half,
    quadric_residual,
    rp2_residual,
)


def _dir_jet(val, u, v):
    """Jet of a complex coordinate with two directional partials."""
    return Jet(complex(val), np.array([u, v], dtype=complex))


def _random_ball2(rng, n):
    pts = []
    while len(pts) < n:
        z = rng.normal(size=4) * 0.6
        if z[0] ** 2 + z[1] ** 2 + z[2] ** 2 + z[3] ** 2 < 1.8:
            pts.append((z[0] + 1j * z[1], z[2] + 1j * z[3]))
    return pts


# -- form normalization -------------------------------------------------------


def test_omega_c2_unit_pair():
    val = omega(C2, AmbientPoint.c2(0.3 + 0.1j, -0.2j), [1.0, 0.0], [1j, 0.0])
    assert val == pytest.approx(1.0 / np.pi, abs=1e-15)


def test_omega_antisymmetry():
    rng = np.random.default_rng(3)
    for _ in range(50):
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert omega_c2(u, v) == pytest.approx(-omega_c2(v, u), abs=1e-12)
    z = normalize_homogeneous(rng.normal(size=3) + 1j * rng.normal(size=3))
    for _ in range(20):
        u = rng.normal(size=3) + 1j * rng.normal(size=3)
        v = rng.normal(size=3) + 1j * rng.normal(size=3)
        a = omega_fs(z, u, v, spaces.FS_SCALE_CP2)
        assert a == pytest.approx(-omega_fs(z, v, u, spaces.FS_SCALE_CP2), abs=1e-12)


def test_line_area_cp2_is_two():
    assert line_area_cp2() == pytest.approx(2.0, abs=1e-8)


def test_factor_area_cp1_is_one():
    assert factor_area_cp1() == pytest.approx(1.0, abs=1e-8)


def test_liouville_primitive_differential_is_omega():
    # dl(X, Y) = X[l(Y)] - Y[l(X)] for constant fields, via jets in the point
    rng = np.random.default_rng(4)
    for _ in range(30):
        p = rng.normal(size=2) + 1j * rng.normal(size=2)
        X = rng.normal(size=2) + 1j * rng.normal(size=2)
        Y = rng.normal(size=2) + 1j * rng.normal(size=2)

        def lam_along(direction, covector):
            pj = [Jet(p[k], np.array([direction[k]])) for k in range(2)]
            tot = sum((pj[k].conj() * covector[k]).imag for k in range(2))
            return tot.d[0] / (2.0 * np.pi)

        dlam = lam_along(X, Y) - lam_along(Y, X)
        assert dlam == pytest.approx(omega_c2(X, Y), abs=1e-12)
    assert liouville_c2([1.0, 0.0], [1j, 0.0]) == pytest.approx(1.0 / (2 * np.pi))


# -- ball embedding into CP^2 -------------------------------------------------


def test_e2_center():
    p = embed_E2(0.0, 0.0)
    assert fs_distance(p, [0.0, 0.0, 1.0]) < 1e-15


def test_e2_pullback_residual():
    rng = np.random.default_rng(5)
    worst = 0.0
    for z0, z1 in _random_ball2(rng, 100):
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        jz = e2_chart(_dir_jet(z0, u[0], v[0]), _dir_jet(z1, u[1], v[1]))
        zval = np.array([c.val for c in jz])
        du = np.array([c.d[0] for c in jz])
        dv = np.array([c.d[1] for c in jz])
        pulled = omega_fs(zval, du, dv, spaces.FS_SCALE_CP2)
        worst = max(worst, abs(pulled - omega_c2(u, v)))
    assert worst < 1e-9


def test_e2_clifford_point_moduli():
    r = np.sqrt(2.0 / 3.0)
    p = embed_E2(r * np.exp(0.4j), r * np.exp(-1.1j))
    assert np.allclose(np.abs(p.data), 1.0 / np.sqrt(3.0), atol=1e-12)


def test_e2_domain_error():
    with pytest.raises(DomainError):
        embed_E2(1.2, 1.0)


def test_e2_tilde_center_and_equator():
    p = embed_E2_tilde(0.0, 0.0)
    assert fs_distance(p, [0.0, 0.0, 1j]) < 1e-15
    for th in np.linspace(0.0, 2 * np.pi, 9):
        q = embed_E2_tilde(np.cos(th), np.sin(th))
        assert fs_distance(q, [np.cos(th), np.sin(th), 1j]) < 1e-12


def test_e2_tilde_pullback_residual():
    rng = np.random.default_rng(6)
    worst = 0.0
    for z0, z1 in _random_ball2(rng, 100):
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        jz = e2_tilde_chart(_dir_jet(z0, u[0], v[0]), _dir_jet(z1, u[1], v[1]))
        zval = np.array([c.val for c in jz])
        du = np.array([c.d[0] for c in jz])
        dv = np.array([c.d[1] for c in jz])
        pulled = omega_fs(zval, du, dv, spaces.FS_SCALE_CP2)
        worst = max(worst, abs(pulled - omega_c2(u, v)))
    assert worst < 1e-9


# -- product-ball embedding ----------------------------------------------------


def test_e11_center_and_boundary_limit():
    p, q = embed_E11(0.0, 0.0)
    assert fs_distance(p, [0.0, 1.0]) < 1e-15 and fs_distance(q, [0.0, 1.0]) < 1e-15
    near = embed_E11(0.999999, 0.0)[0]
    assert fs_distance(near, [1.0, 0.0]) < 2e-3


def test_e11_pullback_residual_factorwise():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(100):
        z = (rng.normal() + 1j * rng.normal()) * 0.4
        u, v = rng.normal() + 1j * rng.normal(), rng.normal() + 1j * rng.normal()
        (a, b), _ = e11_chart(_dir_jet(z, u, v), _dir_jet(0.0, 0.0, 0.0))
        zval = np.array([a.val, b.val])
        du = np.array([a.d[0], b.d[0]])
        dv = np.array([a.d[1], b.d[1]])
        pulled = omega_fs(zval, du, dv, spaces.FS_SCALE_CP1)
        worst = max(worst, abs(pulled - omega_plane(u, v)))
    assert worst < 1e-9


def test_e11_domain_error():
    with pytest.raises(DomainError):
        embed_E11(1.0, 0.0)


# -- disc-to-sphere embedding ---------------------------------------------------


def _random_disc(rng, radius=0.95):
    return radius * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())


def test_e1_pole_and_norm():
    assert np.allclose(embed_E1(0.0).data, [0.0, 0.0, 0.5])
    rng = np.random.default_rng(8)
    for _ in range(100):
        x = embed_E1(_random_disc(rng)).data
        assert abs(np.linalg.norm(x) - 0.5) < 1e-12


def test_e1_pullback_residual():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(100):
        z = (rng.normal() + 1j * rng.normal()) * 0.45
        u, v = rng.normal() + 1j * rng.normal(), rng.normal() + 1j * rng.normal()
        jx = e1_chart(_dir_jet(z, u, v))
        x = np.array([c.val for c in jx]).real
        du = np.array([c.d[0] for c in jx]).real
        dv = np.array([c.d[1] for c in jx]).real
        pulled = omega_sphere_half(x, du, dv)
        worst = max(worst, abs(pulled - omega_plane(u, v)))
    assert worst < 1e-9


def test_cp1_to_sphere_extends_e1():
    rng = np.random.default_rng(10)
    for _ in range(50):
        z = _random_disc(rng)
        hom, _ = embed_E11(z, 0.0)
        assert np.allclose(cp1_to_sphere(hom), embed_E1(z).data, atol=1e-12)
    # rotation acts as rotation about the x3 axis
    z = 0.3 + 0.2j
    a = cp1_to_sphere([z * np.exp(0.7j), np.sqrt(1 - abs(z) ** 2)])
    b = cp1_to_sphere([z, np.sqrt(1 - abs(z) ** 2)])
    c, s = np.cos(0.7), np.sin(0.7)
    rot = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1.0]])
    assert np.allclose(a, rot @ b, atol=1e-14)


# -- normalization -------------------------------------------------------------


def test_normalize_idempotent_and_scale_invariant():
    rng = np.random.default_rng(11)
    for _ in range(50):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        n = normalize_homogeneous(z)
        assert np.allclose(normalize_homogeneous(n), n, atol=1e-14)
        c = rng.normal() + 1j * rng.normal()
        if abs(c) > 1e-3:
            assert np.allclose(normalize_homogeneous(c * z), n, atol=1e-12)
    assert abs(np.linalg.norm(normalize_homogeneous([3.0, 4.0j, 0.0])) - 1.0) < 1e-14


# -- hypersurface residuals -----------------------------------------------------


def test_quadric_points_at_infinity():
    assert quadric_residual([1.0, 1j, 0.0]) < 1e-15
    assert quadric_residual([1.0, -1j, 0.0]) < 1e-15
    assert quadric_residual([1.0, 0.0, 0.0]) == pytest.approx(1.0)


def test_diagonal_and_antidiagonal():
    x = np.array([0.3, 0.0, 0.4])
    p = AmbientPoint.sphere_pair(x, x)
    assert diagonal_residual(p) == 0.0
    q = AmbientPoint.sphere_pair(x, -x)
    assert antidiagonal_residual(q) == 0.0
    assert antidiagonal_residual_cp1([1.0, 0.0], [0.0, 1.0]) == pytest.approx(0.0, abs=1e-15)
    assert antidiagonal_residual_cp1([1.0, 0.0], [1.0, 0.0]) == pytest.approx(1.0)


def test_rp2_residual():
    assert rp2_residual([1.0, 0.5, -0.2]) < 1e-15
    # equator points of the quadric stay far from the real locus
    for th in np.linspace(0, 2 * np.pi, 7):
        assert rp2_residual([np.cos(th), np.sin(th), 1j]) == pytest.approx(np.sqrt(2), abs=1e-12)


def test_hypersurface_residual_dispatch():
    p = embed_E2(0.1, 0.2)
    r = hypersurface_residuals(p)
    assert set(r) == {"quadric", "rp2"}
    with pytest.raises(SpaceError):
        hypersurface_residuals(AmbientPoint.c2(0.0, 0.0))


def test_pullback_residual_bulk_property():
    # embeddings are symplectic: 10^3 random samples below 1e-8
    rng = np.random.default_rng(12)
    worst = 0.0
    for z0, z1 in _random_ball2(rng, 1000):
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        jz = e2_chart(_dir_jet(z0, u[0], v[0]), _dir_jet(z1, u[1], v[1]))
        zval = np.array([c.val for c in jz])
        du = np.array([c.d[0] for c in jz])
        dv = np.array([c.d[1] for c in jz])
        worst = max(worst, abs(omega_fs(zval, du, dv, spaces.FS_SCALE_CP2) - omega_c2(u, v)))
    assert worst < 1e-8
