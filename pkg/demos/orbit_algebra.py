"""Tour of the ray phase space: momentum map, Casimirs, noncommutativity.

A ray of colored spinning light is a point on a coadjoint orbit of the
Euclidean group: an oriented line (q, u) decorated with a color p and a
spin s.  This script evaluates the conserved momentum map, confirms the
two Casimir invariants that pin down the orbit, and measures the bracket
of two wave-plane coordinates, which famously fails to vanish for s != 0.
"""

import numpy as np

from spinray import (
    OrbitInvariants,
    make_ray,
    momentum_map,
    orbit_tangent,
    symplectic_form,
    wave_plane_bracket,
)
from spinray.vectors import orthonormal_complement

rng = np.random.default_rng(42)


def main():
    inv = OrbitInvariants(p=2.0, s=1.0)
    ray = make_ray(q=[0.3, -0.2, 0.0], u=[0.0, 0.6, 0.8])

    print("ray foot point q =", ray.q, " direction u =", ray.u)
    print("invariants: color p =", inv.p, " spin s =", inv.s)
    print()

    mom = momentum_map(ray.q, ray.u, inv)
    print("momentum map at q:")
    print("  linear   p =", mom.pvec)
    print("  angular  l =", mom.ell)

    elsewhere = ray.q + 1.7 * ray.u
    mom2 = momentum_map(elsewhere, ray.u, inv)
    print("evaluated further along the same line:")
    print("  angular  l =", mom2.ell, " (unchanged, the line is the state)")
    print()

    c = float(mom.pvec @ mom.pvec)
    cp = float(mom.ell @ mom.pvec)
    print(f"Casimir <p,p>   = {c:.15f}  expected p^2  = {inv.casimir:.15f}")
    print(f"Casimir <l,p>   = {cp:.15f}  expected s*p  = {inv.casimir_prime:.15f}")
    print()

    # two small motions of the line and the symplectic area between them
    a = orbit_tangent(ray, dq=[0.1, 0.0, 0.0], du=[0.0, 0.0, 0.0], project=True)
    b = orbit_tangent(ray, dq=[0.0, 0.0, 0.0], du=[0.8, 0.0, -0.6], project=True)
    print("symplectic form on a position shift and a tilt:",
          f"{symplectic_form(ray, a, b, inv):+.6f}")

    v1, v2 = orthonormal_complement(ray.u)
    bracket = wave_plane_bracket(ray, v1, v2, inv)
    print(f"wave-plane bracket {{q1, q2}} = {bracket:.12f}")
    print(f"predicted s / p^2            = {inv.s / inv.p**2:.12f}")
    print()
    print("the two transverse coordinates of a spinning ray do not commute;")
    print("their bracket s/p^2 is the Hall-effect scale of the whole theory")

    print()
    print("sampling 5 random orbits:")
    for _ in range(5):
        p = rng.uniform(0.5, 4.0)
        s = float(rng.choice([-1.0, 1.0]))
        inv = OrbitInvariants(p=p, s=s)
        ray = make_ray(rng.normal(size=3), rng.normal(size=3))
        v1, v2 = orthonormal_complement(ray.u)
        got = wave_plane_bracket(ray, v1, v2, inv)
        print(f"  p={p:5.3f} s={s:+.0f}  bracket={got:+.6e}  s/p^2={s / p**2:+.6e}")


if __name__ == "__main__":
    main()
