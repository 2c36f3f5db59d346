"""Curvature-line frame data: connection coefficients, Pfaffian derivatives,
and the pointwise structure-equation residuals.

`pfaffian` differentiates a scalar jet field along the principal directions:
nabla_i f = xi_i df/du + eta_i df/dv.  Because the direction components are
jets themselves, iterating it captures the rotation of the frame, so the
commutator identity [nabla_1, nabla_2] f = -(q1 nabla_1 f + q2 nabla_2 f)
holds exactly (validated against the finite-difference oracle; see tests).

The connection coefficients q1, q2 come from differentiating the frame
vectors directly (q_i = <D_{e_i} e1, e2>), which keeps the compatibility
checks below independent of the curvature gradients they constrain.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import jet as jt
from .geometry import (PrincipalData, SurfaceJet, eval_surface,
                       principal_data, vdot)
from .tolerances import DEFAULT_TOLERANCES, ToleranceSet

__all__ = [
    "FramePoint", "frame_point", "frame_point_from_pd", "pfaffian",
    "pfaffian_values", "check_codazzi", "codazzi_scale", "check_gauss",
    "gauss_scale", "commutator_residual",
]


def pfaffian(field: jt.Jet4, pd: PrincipalData) -> Tuple[jt.Jet4, jt.Jet4]:
    """(nabla_1 f, nabla_2 f) as jets, one order below `field`."""
    fu, fv = field.du(), field.dv()
    return (pd.xi1 * fu + pd.eta1 * fv, pd.xi2 * fu + pd.eta2 * fv)


def pfaffian_values(field: jt.Jet4, pd: PrincipalData) -> Tuple[float, float]:
    d1, d2 = pfaffian(field, pd)
    return (d1.value, d2.value)


@dataclass
class FramePoint:
    """Everything the focal-sheet and net layers need at one surface point.

    hess_k1[a, b] holds nabla_{a+1}(nabla_{b+1} k1) (0-indexed); the mixed
    entries differ because the Pfaffian derivatives do not commute.
    """
    u: float
    v: float
    pd: PrincipalData
    k1: float
    k2: float
    q1: float
    q2: float
    grad_k1: Tuple[float, float]
    grad_k2: Tuple[float, float]
    k1_jet: jt.Jet4
    k2_jet: jt.Jet4
    q1_jet: jt.Jet4
    q2_jet: jt.Jet4
    d_k1_jets: Tuple[jt.Jet4, jt.Jet4]
    d_k2_jets: Tuple[jt.Jet4, jt.Jet4]
    hess_k1: np.ndarray
    hess_k2: np.ndarray
    d2_q1: float
    d1_q2: float

    @property
    def point(self) -> Tuple[float, float]:
        return (self.u, self.v)

    @property
    def e1_flipped(self) -> bool:
        return self.pd.e1_flipped

    def gradient(self, field: jt.Jet4) -> Tuple[float, float]:
        return pfaffian_values(field, self.pd)


def frame_point_from_pd(pd: PrincipalData,
                        tol: ToleranceSet = DEFAULT_TOLERANCES) -> FramePoint:
    k1_jet, k2_jet = pd.k1, pd.k2

    # q_i = <D_{e_i} e1, e2>: differentiate the ambient frame field.
    e1u = (pd.e1[0].du(), pd.e1[1].du(), pd.e1[2].du())
    e1v = (pd.e1[0].dv(), pd.e1[1].dv(), pd.e1[2].dv())
    d1_e1 = tuple(pd.xi1 * a + pd.eta1 * b for a, b in zip(e1u, e1v))
    d2_e1 = tuple(pd.xi2 * a + pd.eta2 * b for a, b in zip(e1u, e1v))
    q1_jet = vdot(d1_e1, pd.e2)
    q2_jet = vdot(d2_e1, pd.e2)

    d1_k1, d2_k1 = pfaffian(k1_jet, pd)
    d1_k2, d2_k2 = pfaffian(k2_jet, pd)

    hess_k1 = np.array([pfaffian_values(d1_k1, pd),
                        pfaffian_values(d2_k1, pd)]).T
    hess_k2 = np.array([pfaffian_values(d1_k2, pd),
                        pfaffian_values(d2_k2, pd)]).T

    d2_q1 = pfaffian_values(q1_jet, pd)[1]
    d1_q2 = pfaffian_values(q2_jet, pd)[0]

    sj = pd.sj
    return FramePoint(
        u=sj.u, v=sj.v, pd=pd,
        k1=k1_jet.value, k2=k2_jet.value,
        q1=q1_jet.value, q2=q2_jet.value,
        grad_k1=(d1_k1.value, d2_k1.value),
        grad_k2=(d1_k2.value, d2_k2.value),
        k1_jet=k1_jet, k2_jet=k2_jet, q1_jet=q1_jet, q2_jet=q2_jet,
        d_k1_jets=(d1_k1, d2_k1), d_k2_jets=(d1_k2, d2_k2),
        hess_k1=hess_k1, hess_k2=hess_k2, d2_q1=d2_q1, d1_q2=d1_q2)


def frame_point(prog, u: float, v: float,
                tol: ToleranceSet = DEFAULT_TOLERANCES) -> FramePoint:
    sj = eval_surface(prog, u, v)
    return frame_point_from_pd(principal_data(sj, tol), tol)


def check_codazzi(fp: FramePoint) -> Tuple[float, float]:
    """Raw residuals of the compatibility identities
    nabla_2 k1 = q1 (k1 - k2) and nabla_1 k2 = q2 (k1 - k2).
    Divide by `codazzi_scale` for a relative figure."""
    gap = fp.k1 - fp.k2
    return (fp.grad_k1[1] - fp.q1 * gap, fp.grad_k2[0] - fp.q2 * gap)


def codazzi_scale(fp: FramePoint) -> float:
    return (abs(fp.k1 - fp.k2) * (abs(fp.q1) + abs(fp.q2))
            + abs(fp.grad_k1[1]) + abs(fp.grad_k2[0]) + 1e-12)


def check_gauss(fp: FramePoint) -> float:
    """Raw residual of nabla_2 q1 - nabla_1 q2 = q1^2 + q2^2 + k1 k2."""
    return (fp.d2_q1 - fp.d1_q2
            - (fp.q1 ** 2 + fp.q2 ** 2 + fp.k1 * fp.k2))


def gauss_scale(fp: FramePoint) -> float:
    return (abs(fp.d2_q1) + abs(fp.d1_q2) + fp.q1 ** 2 + fp.q2 ** 2
            + abs(fp.k1 * fp.k2) + 1e-12)


def commutator_residual(fp: FramePoint, field: jt.Jet4) -> float:
    """Scale-relative residual of
    nabla_1 nabla_2 f - nabla_2 nabla_1 f = -(q1 nabla_1 f + q2 nabla_2 f)."""
    d1f, d2f = pfaffian(field, fp.pd)
    d12 = pfaffian_values(d2f, fp.pd)[0]
    d21 = pfaffian_values(d1f, fp.pd)[1]
    lhs = d12 - d21
    rhs = -(fp.q1 * d1f.value + fp.q2 * d2f.value)
    scale = abs(d12) + abs(d21) + abs(rhs) + 1e-12
    return (lhs - rhs) / scale
