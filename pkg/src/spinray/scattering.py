"""Scattering of spinning rays at a planar interface.

Crossing a plane between homogeneous media of indices n1 and n2 multiplies
the color by the index, so the two sides carry different orbit invariants:
C_i = (p n_i)^2 and C'_i = s_i p n_i.  Requiring the crossing map to

* preserve the symplectic structure of the ray manifolds,
* commute with the Euclidean motions fixing the plane (rotations about
  the normal, translations along the plane), and
* be the identity when n2 = n1,

forces a unique two-branch map of the form

    q2 = q1 + mu p1 + nu n + rho (n x p1),      p2 = p1 + lambda n,

with lambda a root of lambda^2 + 2 alpha lambda + C1 - C2 = 0 where
alpha = <n, p1> > 0.  Refraction keeps the spin (s2 = s1) and takes the
root continuous with the identity, lambda = -alpha + sign(n2) sqrt(...);
reflection is the mirror branch lambda = -2 alpha with the spin flipped
(s2 = -s1).  Equivariance pins

    mu = (C1/C2 - 1) z / alpha,         nu = (C1/C2) lambda z / alpha,
    rho = ((C'2/C2 - C'1/C1) alpha + lambda C'2/C2) / |n x p1|^2,

with z = <n, q1> in interface-anchored coordinates.  The rho term is the
transverse displacement of the refracted ray out of the incidence plane,
the optical Hall shift: opposite for the two helicities, vanishing at
normal incidence, on reflection, and between perfectly impedance-matched
left-handed media (n2 = -n1).  The momentum components in the plane and
the angular momentum about the normal are conserved exactly, which is the
spinning form of the Snell-Descartes laws.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotIncomingError, TotalReflectionRequiredError
from .orbits import OrbitInvariants, Ray, make_ray, orbit_tangent, translate_ray
from .vectors import rotation_about, unit, vec3

MODE_REFRACTION = "refraction"
MODE_REFLECTION = "reflection"
MODE_TOTAL_REFLECTION = "total_reflection"

# |n x p1|^2 below this fraction of C1 counts as normal incidence.
_NORMAL_INCIDENCE_EPS = 1e-12


@dataclass(frozen=True)
class Interface:
    """Planar interface: unit normal pointing from side 1 into side 2,
    an anchor point on the plane, and the two index constants.

    Left-handed media are allowed: n1 or n2 may be negative, just not
    smaller than 1e-9 in magnitude.
    """

    normal: np.ndarray
    anchor: np.ndarray
    n1: float
    n2: float

    def __post_init__(self):
        object.__setattr__(self, "normal", unit(self.normal))
        object.__setattr__(self, "anchor", vec3(self.anchor))
        for label, val in (("n1", self.n1), ("n2", self.n2)):
            if not math.isfinite(val) or abs(val) < 1e-9:
                raise ValueError(f"interface {label} must be finite with |{label}| >= 1e-9")

    def signed_distance(self, x) -> float:
        return float(self.normal @ (vec3(x) - self.anchor))


@dataclass(frozen=True)
class ScatterCoefficients:
    """Coefficients of the crossing map in anchored coordinates."""

    alpha: float
    lam: float
    mu: float
    nu: float
    rho: float
    z: float
    C1: float
    C2: float
    C1p: float
    C2p: float
    mode: str
    s2: float


@dataclass(frozen=True)
class ScatterOutcome:
    """Outgoing ray (lab coordinates), spin, momentum and the Hall shift."""

    ray2: Ray
    s2: float
    pvec2: np.ndarray
    mode: str
    shift: np.ndarray


@dataclass(frozen=True)
class ConservationResiduals:
    """Residuals of the two conserved interface quantities.

    angular is |L1 - L2| for L = <n, q x pvec + s u>, tangential is
    |n x (p1 - p2)|; both should sit at rounding level, below 1e-10 times
    the scale field.
    """

    angular: float
    tangential: float
    scale: float

    def within(self, tol: float = 1e-10) -> bool:
        bound = tol * self.scale
        return self.angular < bound and self.tangential < bound


def casimirs(p: float, n_side: float, s_side: float) -> tuple[float, float]:
    """Orbit invariants (C, C') = ((p n)^2, s p n) on one side."""
    return (p * n_side) ** 2, s_side * p * n_side


def scatter_coefficients(
    ray1: Ray,
    s1: float,
    iface: Interface,
    inv: OrbitInvariants,
    mode: str = "refract",
    zero_rho: bool = False,
) -> ScatterCoefficients:
    """Solve the crossing-map coefficients for one branch.

    mode "refract" keeps the spin and raises TotalReflectionRequiredError
    past the critical angle (C1 > C2 and alpha^2 + C2 - C1 < 0); mode
    "reflect" is the mirror branch with the spin flipped.  Raises
    NotIncomingError unless <n, p1> > 0.  zero_rho forces the Hall term
    to zero (a deliberately broken map for negative controls; it violates
    angular momentum conservation and symplecticity at oblique incidence).
    """
    local = translate_ray(ray1, -iface.anchor)
    n = iface.normal
    p1 = inv.p * iface.n1 * local.u
    alpha = float(n @ p1)
    if alpha <= 0.0:
        raise NotIncomingError(
            f"<n, p1> = {alpha:.6g} must be positive: the momentum does not cross "
            "from side 1 toward side 2"
        )
    z = float(n @ local.q)
    C1, C1p = casimirs(inv.p, iface.n1, s1)
    if mode == "refract":
        s2 = s1
        C2, C2p = casimirs(inv.p, iface.n2, s2)
        disc = alpha**2 + C2 - C1
        if disc < 0.0:
            raise TotalReflectionRequiredError(
                f"refraction impossible: alpha^2 + C2 - C1 = {disc:.6g} < 0 "
                "(incidence beyond the critical angle)"
            )
        # C2 == C1 has the exact roots 0 and -2 alpha; taking |alpha|
        # directly keeps the map exactly the identity at n2 = n1 and
        # exactly the point reflection at n2 = -n1
        root = math.sqrt(disc) if C2 != C1 else abs(alpha)
        lam = -alpha + math.copysign(root, iface.n2)
        tag = MODE_REFRACTION
    elif mode == "reflect":
        s2 = -s1
        C2 = C1
        C2p = inv.p * iface.n1 * s2
        lam = -2.0 * alpha
        tag = MODE_REFLECTION
    else:
        raise ValueError(f"mode must be 'refract' or 'reflect', got {mode!r}")
    mu = (C1 / C2 - 1.0) * z / alpha
    nu = (C1 / C2) * lam * z / alpha
    sin2 = C1 - alpha**2
    if zero_rho or sin2 < _NORMAL_INCIDENCE_EPS * C1:
        rho = 0.0
    else:
        rho = ((C2p / C2 - C1p / C1) * alpha + lam * C2p / C2) / sin2
    return ScatterCoefficients(
        alpha=alpha, lam=lam, mu=mu, nu=nu, rho=rho, z=z,
        C1=C1, C2=C2, C1p=C1p, C2p=C2p, mode=tag, s2=s2,
    )


def scatter(
    ray1: Ray,
    s1: float,
    iface: Interface,
    inv: OrbitInvariants,
    mode: str = "auto",
    zero_rho: bool = False,
) -> ScatterOutcome:
    """Apply the crossing map to an incoming ray.

    mode "auto" refracts where possible and falls back to the mirror
    branch past the critical angle (tagged "total_reflection"); "refract"
    and "reflect" force a branch.  The outgoing direction is
    u2 = p2 / (p n_out) with the signed out-side index, so through a
    negative-index side the ray bends to the same side of the normal
    (negative refraction) while the momentum folds back.
    """
    if mode == "auto":
        try:
            co = scatter_coefficients(ray1, s1, iface, inv, "refract", zero_rho)
            tag = MODE_REFRACTION
        except TotalReflectionRequiredError:
            co = scatter_coefficients(ray1, s1, iface, inv, "reflect", zero_rho)
            tag = MODE_TOTAL_REFLECTION
    elif mode in ("refract", "reflect"):
        co = scatter_coefficients(ray1, s1, iface, inv, mode, zero_rho)
        tag = co.mode
    else:
        raise ValueError(f"mode must be 'auto', 'refract' or 'reflect', got {mode!r}")
    local = translate_ray(ray1, -iface.anchor)
    n = iface.normal
    p1 = inv.p * iface.n1 * local.u
    p2 = p1 + co.lam * n
    n_out = iface.n2 if tag == MODE_REFRACTION else iface.n1
    u2 = p2 / (inv.p * n_out)
    q2 = local.q + co.mu * p1 + co.nu * n + co.rho * np.cross(n, p1)
    ray2 = translate_ray(make_ray(q2, u2), iface.anchor)
    shift = co.rho * np.cross(n, p1)
    return ScatterOutcome(ray2=ray2, s2=co.s2, pvec2=p2, mode=tag, shift=shift)


def transverse_shift(ray1: Ray, s1: float, iface: Interface, inv: OrbitInvariants) -> np.ndarray:
    """Hall displacement rho (n x p1) of the outgoing ray (auto branch).

    Perpendicular to both the normal and the incidence plane; zero at
    normal incidence, on (total) reflection up to rounding, and exactly
    zero through n2 = -n1.  Scales like 1/p at fixed geometry and is odd
    in the spin.
    """
    try:
        co = scatter_coefficients(ray1, s1, iface, inv, "refract")
    except TotalReflectionRequiredError:
        co = scatter_coefficients(ray1, s1, iface, inv, "reflect")
    p1 = inv.p * iface.n1 * ray1.u
    return co.rho * np.cross(iface.normal, p1)


def snell_angles(theta1: float, n1: float, n2: float, mode: str = "refract") -> float:
    """Outgoing angle for a given incidence angle (radians).

    Angles are measured in the incidence plane with the sign of the
    tangential direction of the incoming ray, so a negative-index side
    returns a negative angle (negative refraction).  Reflection returns
    pi - theta1.  Raises TotalReflectionRequiredError past the critical
    angle.
    """
    if not 0.0 <= theta1 < math.pi / 2:
        raise ValueError(f"incidence angle must lie in [0, pi/2), got {theta1}")
    if mode == "reflect":
        return math.pi - theta1
    if mode != "refract":
        raise ValueError(f"mode must be 'refract' or 'reflect', got {mode!r}")
    ratio = n1 * math.sin(theta1) / n2
    if abs(ratio) > 1.0:
        raise TotalReflectionRequiredError(
            f"n1 sin(theta1) / n2 = {ratio:.6g} exceeds 1: no refracted branch"
        )
    return math.asin(ratio)


def conservation_check(
    ray1: Ray,
    s1: float,
    outcome: ScatterOutcome,
    iface: Interface,
    inv: OrbitInvariants,
) -> ConservationResiduals:
    """Residuals of <n, ell> and n x pvec across an interface event.

    Works on the outcome as given (lab coordinates, origin wherever the
    caller put it), so doctored outcomes show up as nonzero residuals.
    """
    n = iface.normal
    p1 = inv.p * iface.n1 * ray1.u
    p2 = vec3(outcome.pvec2)
    l1 = float(n @ (np.cross(ray1.q, p1) + s1 * ray1.u))
    l2 = float(n @ (np.cross(outcome.ray2.q, p2) + outcome.s2 * outcome.ray2.u))
    angular = abs(l1 - l2)
    tangential = float(np.linalg.norm(np.cross(n, p1 - p2)))
    scale = inv.p * max(abs(iface.n1), abs(iface.n2)) * (
        1.0 + float(np.linalg.norm(ray1.q))
    ) + abs(s1)
    return ConservationResiduals(angular=angular, tangential=tangential, scale=scale)


def _orbit_form(p_signed: float, s: float, u, a_du, a_dq, b_du, b_dq) -> float:
    straight = float(a_du @ b_dq) - float(b_du @ a_dq)
    return p_signed * straight - s * float(u @ np.cross(a_du, b_du))


def symplecto_check(
    ray1: Ray,
    s1: float,
    iface: Interface,
    inv: OrbitInvariants,
    samples: int = 16,
    step: float | None = None,
    rng: np.random.Generator | None = None,
    zero_rho: bool = False,
) -> float:
    """Largest deviation |omega_in(a, b) - omega_out(Sa, Sb)| over random
    tangent pairs, with the pushforward taken by central differences.

    The branch active at the base point is held fixed for the perturbed
    rays, so keep the state away from the critical angle by more than the
    finite-difference step.  For the true map the deviation sits at
    finite-difference noise (far below 1e-5); with zero_rho=True the
    broken map fails at oblique incidence by order |s|.
    """
    rng = rng or np.random.default_rng(0)
    h = step if step is not None else 1e-6 * (1.0 + float(np.linalg.norm(ray1.q)))
    base = scatter(ray1, s1, iface, inv, mode="auto", zero_rho=zero_rho)
    forced = "refract" if base.mode == MODE_REFRACTION else "reflect"
    p_in = inv.p * iface.n1
    p_out = inv.p * (iface.n2 if base.mode == MODE_REFRACTION else iface.n1)

    def push(tan) -> tuple[np.ndarray, np.ndarray]:
        plus = _perturb_ray(ray1, tan, h)
        minus = _perturb_ray(ray1, tan, -h)
        out_p = scatter(plus, s1, iface, inv, mode=forced, zero_rho=zero_rho)
        out_m = scatter(minus, s1, iface, inv, mode=forced, zero_rho=zero_rho)
        dq = (out_p.ray2.q - out_m.ray2.q) / (2.0 * h)
        du = (out_p.ray2.u - out_m.ray2.u) / (2.0 * h)
        return dq, du

    worst = 0.0
    for _ in range(samples):
        a = orbit_tangent(ray1, rng.normal(size=3), rng.normal(size=3), project=True)
        b = orbit_tangent(ray1, rng.normal(size=3), rng.normal(size=3), project=True)
        w_in = _orbit_form(p_in, s1, ray1.u, a.du, a.dq, b.du, b.dq)
        a_dq, a_du = push(a)
        b_dq, b_du = push(b)
        w_out = _orbit_form(p_out, base.s2, base.ray2.u, a_du, a_dq, b_du, b_dq)
        worst = max(worst, abs(w_in - w_out))
    return worst


def _perturb_ray(ray: Ray, tan, h: float) -> Ray:
    """Ray displaced along a tangent; exact first-order tangency."""
    u = unit(ray.u + h * tan.du)
    q = ray.q + h * tan.dq
    return Ray(q=q - u * float(u @ q), u=u)


def h_action(angle: float, c, ray: Ray, normal) -> Ray:
    """Euclidean motion fixing a plane of the given normal: rotation by
    `angle` about the normal axis through the origin, then translation by
    c, which must be parallel to the plane."""
    n = unit(normal)
    c = vec3(c)
    if abs(float(n @ c)) > 1e-9 * (1.0 + float(np.linalg.norm(c))):
        raise ValueError("translation part must be orthogonal to the normal")
    rot = rotation_about(n, angle)
    u2 = rot @ ray.u
    q2 = rot @ ray.q + c - u2 * float(u2 @ c)
    return make_ray(q2, u2)


def inverse_scatter(
    outcome: ScatterOutcome, iface: Interface, inv: OrbitInvariants
) -> tuple[Ray, float]:
    """Reconstruct the incoming (ray1, s1) from a scatter outcome.

    Uses the inverse coefficient set (lambda, mu, nu, rho all negated in
    the appropriate sense) on the same interface.  Composing with scatter
    returns the original ray to rounding; the mirror branch is its own
    inverse up to the spin flip.
    """
    n = iface.normal
    local = translate_ray(outcome.ray2, -iface.anchor)
    p2 = vec3(outcome.pvec2)
    alpha2 = float(n @ p2)
    z2 = float(n @ local.q)
    if outcome.mode == MODE_REFRACTION:
        s1 = outcome.s2
        C1, C1p = casimirs(inv.p, iface.n1, s1)
        C2, C2p = casimirs(inv.p, iface.n2, outcome.s2)
        disc = max(alpha2**2 + C1 - C2, 0.0)
        root = math.sqrt(disc) if C1 != C2 else abs(alpha2)
        lam2 = -alpha2 + math.copysign(root, iface.n1)
        if abs(alpha2) < 1e-15:
            raise NotIncomingError("outgoing momentum is tangent to the interface")
        mu2 = (C2 / C1 - 1.0) * z2 / alpha2
        nu2 = (C2 / C1) * lam2 * z2 / alpha2
        sin2 = C2 - alpha2**2
        if sin2 < _NORMAL_INCIDENCE_EPS * C2:
            rho2 = 0.0
        else:
            rho2 = ((C1p / C1 - C2p / C2) * alpha2 + lam2 * C1p / C1) / sin2
    elif outcome.mode in (MODE_REFLECTION, MODE_TOTAL_REFLECTION):
        s1 = -outcome.s2
        lam2 = -2.0 * alpha2
        mu2 = 0.0
        nu2 = -2.0 * z2
        rho2 = 0.0
    else:
        raise ValueError(f"unknown outcome mode {outcome.mode!r}")
    q1 = local.q + mu2 * p2 + nu2 * n + rho2 * np.cross(n, p2)
    p1 = p2 + lam2 * n
    u1 = p1 / (inv.p * iface.n1)
    ray1 = translate_ray(make_ray(q1, u1), iface.anchor)
    return ray1, s1
