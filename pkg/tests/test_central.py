"""Focal sheets: closed forms vs. the direct oracle, sheet derivatives,
and the divergence identity."""
import numpy as np
import pytest

from focalnet.central import (base_coframe_matrix, canal_threshold,
                              central_ii_oracle, central_pfaffian,
                              central_point, check_canal,
                              divergence_closed_form, divergence_scale,
                              focal_coframe_matrix, isothermic_divergence,
                              w_jacobian)
from focalnet.checks import sample_frame_points
from focalnet.errors import CanalDegenerate
from focalnet.frames import frame_point


def test_paraboloid_apex_is_canal_both_sheets(prog, tol):
    """At the apex both curvatures are critical (symmetry), so both focal
    sheets are degenerate there."""
    fp = frame_point(prog("graph_quad"), 0.0, 0.0, tol)
    for sheet in (1, 2):
        with pytest.raises(CanalDegenerate):
            central_point(fp, sheet=sheet, tol=tol)


def test_focal_point_position_jet_free(prog, tol):
    """y_i = x + e3/k_i checked against a frame built purely from finite
    differences of the position map (no jet arithmetic on that path)."""
    from focalnet.fdoracle import fd_surface_jet
    from focalnet.frames import frame_point_from_pd
    from focalnet.geometry import principal_data
    program = prog("graph_quad")
    u, v = 0.31, -0.44
    fp = frame_point(program, u, v, tol)
    fq = frame_point_from_pd(
        principal_data(fd_surface_jet(program, u, v, 0.01), tol), tol)
    x = np.array(program.position(u, v))
    for sheet, fqk in ((1, fq.k1), (2, fq.k2)):
        cp = central_point(fp, sheet=sheet, tol=tol)
        n = np.array([c.value for c in fq.pd.e3])
        y_fd = x + n / fqk
        assert cp.y == pytest.approx(y_fd, rel=1e-7, abs=1e-8)


def test_connection_coefficients_structure(prog, tol, rng):
    """Per sheet one connection coefficient vanishes identically and the
    other equals k1 k2/(k1 - k2) — in the closed form AND the oracle."""
    program = prog("graph_generic")
    for fp in sample_frame_points(program, 6, rng, tol, sheets=(1, 2),
                                  healthy=10.0, min_k=0.05, min_gap=0.02):
        qq = fp.k1 * fp.k2 / (fp.k1 - fp.k2)
        cp1 = central_point(fp, sheet=1, tol=tol)
        cp2 = central_point(fp, sheet=2, tol=tol)
        assert cp1.q2 == 0.0 and cp2.q1 == 0.0
        assert cp1.q1 == pytest.approx(qq, rel=1e-12)
        assert cp2.q2 == pytest.approx(qq, rel=1e-12)
        for sheet, expect in ((1, (qq, 0.0)), (2, (0.0, qq))):
            cf = central_ii_oracle(program, fp.u, fp.v, sheet, tol)
            scale = abs(qq) + 1e-9
            assert abs(cf.q1 - expect[0]) / scale < 1e-7
            assert abs(cf.q2 - expect[1]) / scale < 1e-7


def test_closed_form_matches_oracle(prog, tol, rng):
    for name in ("graph_generic", "dini", "scherk"):
        program = prog(name)
        pts = sample_frame_points(program, 25, rng, tol, sheets=(1, 2),
                                  healthy=10.0, min_k=0.05, min_gap=0.02)
        for fp in pts:
            for sheet in (1, 2):
                cp = central_point(fp, sheet=sheet, tol=tol)
                cf = central_ii_oracle(program, fp.u, fp.v, sheet, tol)
                closed = (cp.a, cp.b, cp.c, cp.q1, cp.q2)
                oracle = (cf.a, cf.b, cf.c, cf.q1, cf.q2)
                scale = max(abs(x) for x in closed + oracle) + 1e-30
                assert max(abs(x - y) for x, y in zip(closed, oracle)) \
                    / scale < 1e-7
                assert cf.y == pytest.approx(cp.y, rel=1e-10, abs=1e-12)


def test_coframe_projection_agreement(prog, tol, rng):
    """The closed-form coframe over (du, dv) equals the projection of dy
    onto the sheet frame vectors."""
    program = prog("monkey_saddle")
    for fp in sample_frame_points(program, 8, rng, tol, sheets=(1, 2),
                                  healthy=10.0, min_k=0.05):
        for sheet in (1, 2):
            cf = central_ii_oracle(program, fp.u, fp.v, sheet, tol)
            scale = np.abs(cf.coframe_uv).max() + 1e-30
            assert np.abs(cf.coframe_uv - cf.coframe_uv_projected).max() \
                / scale < 1e-10


def test_central_pfaffian_df_consistency(prog, tol, rng):
    """(D1'f, D2'f) composed with the sheet coframe over (du, dv) must
    reproduce the raw parameter-space differential (f_u, f_v)."""
    program = prog("graph_generic")
    for fp in sample_frame_points(program, 8, rng, tol, sheets=(1, 2),
                                  healthy=10.0):
        base = base_coframe_matrix(fp.pd)
        field = fp.k2_jet * fp.k1_jet + fp.pd.sj.x    # arbitrary scalar jet
        grad = fp.gradient(field)
        f_uv = np.array([field.extract(1, 0), field.extract(0, 1)])
        for sheet in (1, 2):
            p_uv = focal_coframe_matrix(fp, sheet) @ base
            d_sheet = np.array(central_pfaffian(fp, grad, sheet, tol))
            back = d_sheet @ p_uv
            scale = np.abs(f_uv).sum() + 1e-30
            assert np.abs(back - f_uv).max() / scale < 1e-10


def test_divergence_identity_both_sheets(prog, tol, rng):
    program = prog("graph_generic")
    for fp in sample_frame_points(program, 20, rng, tol, sheets=(1, 2),
                                  healthy=10.0):
        for sheet in (1, 2):
            div = isothermic_divergence(fp, sheet, tol)
            closed = divergence_closed_form(fp, sheet, tol)
            scale = divergence_scale(fp, sheet, tol) + 1e-30
            assert abs(div - closed) / scale < 1e-9


def test_divergence_vanishes_with_jacobian(prog, tol, rng):
    """Functional dependence of (k1, k2) kills the divergence pointwise:
    on minimal and constant-K members both are noise-level."""
    for name in ("helicoid", "enneper", "dini"):
        program = prog(name)
        for fp in sample_frame_points(program, 15, rng, tol, sheets=(1, 2),
                                      healthy=10.0):
            scale1 = divergence_scale(fp, 1, tol) + 1e-30
            scale2 = divergence_scale(fp, 2, tol) + 1e-30
            assert abs(isothermic_divergence(fp, 1, tol)) / scale1 < 1e-10
            assert abs(isothermic_divergence(fp, 2, tol)) / scale2 < 1e-10
            gscale = (np.hypot(*fp.grad_k1) * np.hypot(*fp.grad_k2) + 1e-30)
            assert abs(w_jacobian(fp)) / gscale < 1e-12


def test_cubic_curvature_power_is_forced(prog, tol, rng):
    """div / (k_i^2 J / ((k1-k2)^3 D_i k_i)) reproduces k_i exactly: the
    quadratic-power variant is off by one curvature factor."""
    program = prog("graph_generic")
    for fp in sample_frame_points(program, 10, rng, tol, sheets=(1, 2),
                                  healthy=10.0, min_k=0.05, min_gap=0.02):
        jac = w_jacobian(fp)
        gap = fp.k1 - fp.k2
        for sheet, k, dk in ((1, fp.k1, fp.grad_k1[0]),
                             (2, fp.k2, fp.grad_k2[1])):
            div = isothermic_divergence(fp, sheet, tol)
            quad_variant = k ** 2 * jac / (gap ** 3 * dk)
            if abs(quad_variant) < 1e-9:
                continue
            assert div / quad_variant == pytest.approx(k, rel=1e-6)


def test_canal_detection_torus(prog, tol):
    """Tube sheet of the torus: curvature constant along its own line."""
    fp = frame_point(prog("torus"), 0.5, 1.1, tol)
    with pytest.raises(CanalDegenerate) as ei:
        check_canal(fp, 2, tol)
    assert ei.value.sheet == 2
    assert ei.value.status == "canal2"
    with pytest.raises(CanalDegenerate):
        central_point(fp, sheet=2, tol=tol)
    with pytest.raises(CanalDegenerate):
        central_ii_oracle(prog("torus"), 0.5, 1.1, sheet=2, tol=tol)
    with pytest.raises(CanalDegenerate):
        isothermic_divergence(fp, 2, tol)


def test_canal_threshold_scales_with_curvature(prog, tol):
    fp = frame_point(prog("graph_generic"), 0.4, 0.3, tol)
    t = canal_threshold(fp, tol)
    assert t > 0
    k = max(abs(fp.k1), abs(fp.k2))
    assert t == pytest.approx(tol.canal * (k ** 3 + tol.curvature_floor),
                              rel=1e-15)


def test_sheet_argument_validated(prog, tol):
    fp = frame_point(prog("graph_generic"), 0.4, 0.3, tol)
    with pytest.raises(ValueError):
        central_point(fp, sheet=3, tol=tol)
