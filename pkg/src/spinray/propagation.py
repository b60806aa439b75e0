"""Transport of colored, spinning rays through smooth media.

In a medium of index n(x) a circularly polarized ray no longer follows the
geodesics of the optical metric: its momentum picks up a spin correction,

    phat = n (p u + s g x u),        g = grad(1/n),

and the closed 2-form built from phat and the direction twist has a
one-dimensional kernel that foliates the state space into the actual light
paths.  Each model below evaluates that kernel direction (dx, du) at a
state, normalized to unit Euclidean speed |dx| = 1 with <dx, u> > 0:

* spinless_fermat: s = 0, plain optical geodesics, dx = u.
* full_spin: the exact kernel of the spinning form.  The step direction
  acquires a second-derivative term, dx ~ a u + (v s^2/p^2) dg u, with
  a = 1 + (s^2/p^2)|g|^2 - (v s^2/p^2) div g, and the direction equation
  du = (n/s) u x (p dx - s g x dx) follows from the kernel conditions.
* linearized_omn: the weak-gradient model dphat = -n <phat, dx> g,
  dx ~ phat - (s/p) g x phat, first order in the inhomogeneity.
* general_metric: the covariant form of the same kernel on the optical
  metric, driven by the curvature operator R(Omega); equal to full_spin
  after converting back to Euclidean variables.

kernel_residual certifies a direction by evaluating the 2-form against a
basis of test variations; integrate advances states with classical RK4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature import christoffel, einstein_uu, r_omega
from .errors import (
    DegenerateKernelError,
    OutOfDomainError,
    SpinCurvatureSingularityError,
)
from .fields import IndexField, VelocityData, velocity_data
from .orbits import OrbitInvariants
from .vectors import orthonormal_complement, unit, vec3

MODEL_SPINLESS = "spinless_fermat"
MODEL_FULL = "full_spin"
MODEL_LINEARIZED = "linearized_omn"
MODEL_GENERAL = "general_metric"

_MODEL_ALIASES = {
    "spinless": MODEL_SPINLESS,
    "full": MODEL_FULL,
    "linearized": MODEL_LINEARIZED,
    "general": MODEL_GENERAL,
    MODEL_SPINLESS: MODEL_SPINLESS,
    MODEL_FULL: MODEL_FULL,
    MODEL_LINEARIZED: MODEL_LINEARIZED,
    MODEL_GENERAL: MODEL_GENERAL,
}

# Kernel direction below this norm counts as degenerate.
_KERNEL_EPS = 1e-12


@dataclass(frozen=True)
class PhotonState:
    """Instantaneous ray state: position x and unit direction u."""

    x: np.ndarray
    u: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "x", vec3(self.x))
        object.__setattr__(self, "u", unit(self.u))


@dataclass(frozen=True)
class MetricState:
    """State in optical-metric variables: position X and g-unit velocity U."""

    X: np.ndarray
    U: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "X", vec3(self.X))
        object.__setattr__(self, "U", vec3(self.U))

    @classmethod
    def from_photon(cls, state: PhotonState, field: IndexField) -> "MetricState":
        n = field.value(state.x)
        return cls(X=state.x, U=state.u / n)


@dataclass(frozen=True)
class KernelDirection:
    """Unit-speed kernel direction (dx, du) with its producing model tag."""

    dx: np.ndarray
    du: np.ndarray
    model: str


@dataclass(frozen=True)
class Trajectory:
    """Sampled path: arc parameter t, positions, directions, momenta phat.

    reason is one of "interface" (the stop predicate changed sign;
    endpoint bisected onto the surface), "boundary" (the field ran out of
    domain) or "max-steps" (the arc budget was used up).
    """

    t: np.ndarray
    x: np.ndarray
    u: np.ndarray
    p_hat: np.ndarray
    reason: str
    model: str

    def __len__(self) -> int:
        return len(self.t)

    def state(self, i: int) -> PhotonState:
        return PhotonState(x=self.x[i], u=self.u[i])

    @property
    def arc_length(self) -> float:
        return float(self.t[-1])


def canonical_model(model: str) -> str:
    try:
        return _MODEL_ALIASES[model]
    except KeyError:
        raise ValueError(f"unknown transport model {model!r}") from None


def momentum_hat(state: PhotonState, inv: OrbitInvariants, field: IndexField) -> np.ndarray:
    """Spin-corrected momentum phat = n (p u + s g x u) at the state."""
    vd = velocity_data(field, state.x)
    return vd.n * (inv.p * state.u + inv.s * np.cross(vd.g, state.u))


def _oriented_unit(raw: np.ndarray, u: np.ndarray, what: str) -> tuple[np.ndarray, float]:
    norm = float(np.linalg.norm(raw))
    if norm < _KERNEL_EPS:
        raise DegenerateKernelError(
            f"{what}: kernel direction collapsed (|dx| = {norm:.3e}); the medium is too "
            "strongly inhomogeneous for this color and spin"
        )
    scale = 1.0 / norm
    if float(raw @ u) < 0.0:
        scale = -scale
    return raw * scale, scale


def direction_spinless(state: PhotonState, field: IndexField) -> KernelDirection:
    """Optical geodesic direction: dx = u, du = (grad n - u <u, grad n>) / n.

    Independent of color and spin; the unit-speed form of the eikonal
    equation d(n u)/dt = grad n.
    """
    vd = velocity_data(field, state.x)
    u = state.u
    du = (vd.grad_n - u * float(u @ vd.grad_n)) / vd.n
    return KernelDirection(dx=u.copy(), du=du, model=MODEL_SPINLESS)


def direction_full_spin(
    state: PhotonState, inv: OrbitInvariants, field: IndexField
) -> KernelDirection:
    """Exact kernel direction of the spinning transport form.

    For s = 0 this delegates to the spinless formula.  Raises
    DegenerateKernelError when the computed dx norm falls below 1e-12,
    which happens when a = 1 + (s^2/p^2)|g|^2 - (v s^2/p^2) div g
    conspires with the Hessian term (inhomogeneity scale comparable to
    1/p).
    """
    if inv.s == 0.0:
        base = direction_spinless(state, field)
        return KernelDirection(dx=base.dx, du=base.du, model=MODEL_FULL)
    vd = velocity_data(field, state.x)
    u = state.u
    s_over_p2 = inv.s**2 / inv.p**2
    a = 1.0 + s_over_p2 * float(vd.g @ vd.g) - vd.v * s_over_p2 * vd.div_g
    raw = a * u + vd.v * s_over_p2 * (vd.dg @ u)
    dx, _ = _oriented_unit(raw, u, MODEL_FULL)
    du = (vd.n / inv.s) * np.cross(u, inv.p * dx - inv.s * np.cross(vd.g, dx))
    du = du - u * float(u @ du)
    return KernelDirection(dx=dx, du=du, model=MODEL_FULL)


def direction_linearized(
    state: PhotonState, inv: OrbitInvariants, field: IndexField
) -> KernelDirection:
    """Weak-gradient transport: dphat = -n <phat, dx> g along
    dx ~ phat - (s/p) g x phat, converted back to (dx, du).

    First order in the velocity gradient; exactly the spinless model at
    s = 0.  The direction component solves the linear system
    n p (1 + j(sg/p)) du = dphat - <grad n, dx> phat / n - n s (dg dx) x u
    through the closed-form inverse of 1 + j(z).
    """
    vd = velocity_data(field, state.x)
    u, p, s = state.u, inv.p, inv.s
    phat = vd.n * (p * u + s * np.cross(vd.g, u))
    raw = phat - (s / p) * np.cross(vd.g, phat)
    dx, scale = _oriented_unit(raw, u, MODEL_LINEARIZED)
    dphat = -vd.n * float(phat @ dx) * vd.g
    rhs = dphat - float(vd.grad_n @ dx) * phat / vd.n - vd.n * s * np.cross(vd.dg @ dx, u)
    z = (s / p) * vd.g
    zz = float(z @ z)
    inv_op = (np.eye(3) - _cross_mat(z) + np.outer(z, z)) / (1.0 + zz)
    du = inv_op @ rhs / (vd.n * p)
    du = du - u * float(u @ du)
    return KernelDirection(dx=dx, du=du, model=MODEL_LINEARIZED)


def _cross_mat(v: np.ndarray) -> np.ndarray:
    x, y, z = v
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def direction_general_metric(
    mstate: MetricState, inv: OrbitInvariants, field: IndexField
) -> KernelDirection:
    """Kernel direction from the covariant form on the optical metric.

    The step is dX ~ U + s^2 Omega R(Omega) U / (2 (p^2 + s^2 Ein(U, U)))
    with the covariant direction change D U = -(s / 2p) R(Omega) dX; both
    are converted to Euclidean (dx, du) via u = n U and the Christoffel
    correction.  Raises SpinCurvatureSingularityError when the coupling
    denominator |p^2 + s^2 Ein(U, U)| drops below 1e-9 p^2.
    """
    x, U = mstate.X, mstate.U
    n = field.value(x)
    grad_n = field.gradient(x)
    curv = christoffel(field, x)
    rom = r_omega(field, x, U)
    ein = einstein_uu(field, x, U)
    denom = inv.p**2 + inv.s**2 * ein
    if abs(denom) < 1e-9 * inv.p**2:
        raise SpinCurvatureSingularityError(
            f"curvature coupling denominator p^2 + s^2 Ein(U,U) = {denom:.3e} is singular"
        )
    dX = U + inv.s**2 * (n * np.cross(U, rom @ U)) / (2.0 * denom)
    dU_cov = -(inv.s / (2.0 * inv.p)) * (rom @ dX)
    # Euclidean conversion of the pair (dX, DU): u = n U, du from the
    # product rule with the connection term removed from DU.
    du_raw = float(grad_n @ dX) * U + n * (dU_cov - curv.christoffel_apply(dX, U))
    u = n * U
    dx, scale = _oriented_unit(dX, u, MODEL_GENERAL)
    du = du_raw * scale
    du = du - u * float(u @ du)
    return KernelDirection(dx=dx, du=du, model=MODEL_GENERAL)


def kernel_residual(
    state: PhotonState,
    direction: KernelDirection,
    inv: OrbitInvariants,
    field: IndexField,
) -> float:
    """Certify a kernel direction against the transport 2-form.

    Evaluates sigma(d, e) = <dphat(d), e.dx> - <dphat(e), d.dx>
    - s <u, d.du x e.du> for five independent test variations e (three
    pure position shifts, two pure direction tilts orthogonal to u), with
    dphat the analytic differential of phat = n (p u + s g x u).  Returns
    the largest magnitude; a true kernel direction gives 0 up to rounding
    (compare against 1e-10 p n).
    """
    vd = velocity_data(field, state.x)
    u, p, s = state.u, inv.p, inv.s
    phat_over_n = p * u + s * np.cross(vd.g, u)

    def dphat(dx: np.ndarray, du: np.ndarray) -> np.ndarray:
        return float(vd.grad_n @ dx) * phat_over_n + vd.n * (
            p * du + s * np.cross(vd.dg @ dx, u) + s * np.cross(vd.g, du)
        )

    d_dx, d_du = direction.dx, direction.du
    d_dphat = dphat(d_dx, d_du)
    f1, f2 = orthonormal_complement(u)
    tests = [
        (np.eye(3)[i], np.zeros(3)) for i in range(3)
    ] + [(np.zeros(3), f1), (np.zeros(3), f2)]
    worst = 0.0
    for e_dx, e_du in tests:
        sigma = (
            float(d_dphat @ e_dx)
            - float(dphat(e_dx, e_du) @ d_dx)
            - s * float(u @ np.cross(d_du, e_du))
        )
        worst = max(worst, abs(sigma))
    return worst


def _direction_fn(model: str, inv: OrbitInvariants, field: IndexField):
    model = canonical_model(model)
    if model == MODEL_SPINLESS:
        return lambda st: direction_spinless(st, field)
    if model == MODEL_FULL:
        return lambda st: direction_full_spin(st, inv, field)
    if model == MODEL_LINEARIZED:
        return lambda st: direction_linearized(st, inv, field)
    return lambda st: direction_general_metric(MetricState.from_photon(st, field), inv, field)


def integrate(
    start: PhotonState,
    inv: OrbitInvariants,
    field: IndexField,
    model: str = MODEL_FULL,
    step: float = 0.01,
    max_len: float = 10.0,
    stop=None,
) -> Trajectory:
    """March a state along the kernel direction with classical RK4.

    The arc parameter is Euclidean path length (unit-speed gauge); u is
    renormalized after every step.  `stop`, if given, maps a position to a
    signed distance: integration ends when its sign differs from the sign
    at the start, and the crossing step is bisected to 1e-10 of the step
    so the final sample sits on the surface.  Running out of field domain
    ends the trajectory at the last good sample with reason "boundary".
    Kernel errors propagate with the offending arc parameter attached.
    """
    if step <= 0.0 or max_len <= 0.0:
        raise ValueError("step and max_len must be positive")
    model = canonical_model(model)
    fn = _direction_fn(model, inv, field)

    def derivative(y: np.ndarray) -> np.ndarray:
        st = PhotonState(x=y[:3], u=y[3:])
        d = fn(st)
        return np.concatenate([d.dx, d.du])

    def rk4(y: np.ndarray, h: float) -> np.ndarray:
        k1 = derivative(y)
        k2 = derivative(y + 0.5 * h * k1)
        k3 = derivative(y + 0.5 * h * k2)
        k4 = derivative(y + h * k3)
        out = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[3:] /= np.linalg.norm(out[3:])
        return out

    y = np.concatenate([start.x, start.u])
    ts = [0.0]
    samples = [y.copy()]
    phats = [momentum_hat(start, inv, field)]
    stop_sign = 0.0
    if stop is not None:
        stop_sign = math.copysign(1.0, stop(y[:3])) if stop(y[:3]) != 0.0 else 0.0
    reason = "max-steps"
    t = 0.0
    while t < max_len - 1e-15:
        h = min(step, max_len - t)
        try:
            y_next = rk4(y, h)
        except OutOfDomainError:
            reason = "boundary"
            break
        except (DegenerateKernelError, SpinCurvatureSingularityError) as exc:
            exc.arc_parameter = t
            exc.args = (f"{exc.args[0]} (at arc parameter t = {t:.6g})",)
            raise
        if stop is not None:
            val = stop(y_next[:3])
            sign = math.copysign(1.0, val) if val != 0.0 else 0.0
            if stop_sign == 0.0:
                stop_sign = sign
            elif sign != 0.0 and sign != stop_sign:
                lo, hi = 0.0, 1.0
                while hi - lo > 1e-10:
                    mid = 0.5 * (lo + hi)
                    y_mid = rk4(y, h * mid)
                    v_mid = stop(y_mid[:3])
                    s_mid = math.copysign(1.0, v_mid) if v_mid != 0.0 else 0.0
                    if s_mid == stop_sign:
                        lo = mid
                    else:
                        hi = mid
                frac = 0.5 * (lo + hi)
                y_hit = rk4(y, h * frac)
                t += h * frac
                y = y_hit
                ts.append(t)
                samples.append(y.copy())
                phats.append(momentum_hat(PhotonState(x=y[:3], u=y[3:]), inv, field))
                reason = "interface"
                break
        t += h
        y = y_next
        ts.append(t)
        samples.append(y.copy())
        try:
            phats.append(momentum_hat(PhotonState(x=y[:3], u=y[3:]), inv, field))
        except OutOfDomainError:
            ts.pop()
            samples.pop()
            reason = "boundary"
            break
    arr = np.array(samples)
    return Trajectory(
        t=np.array(ts),
        x=arr[:, :3],
        u=arr[:, 3:],
        p_hat=np.array(phats),
        reason=reason,
        model=model,
    )
