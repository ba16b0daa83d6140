"""Cyclic p-isogenies from a rational kernel point: explicit rational maps,
the dual isogeny, and Neron model scalings at finite places.

The forward isogeny is built from the kernel polynomial (Velu); the dual is
recovered by pushing the p-division polynomial through the forward x-map
with a resultant, taking the radical, and matching the resulting codomain
back to the source curve by an isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ellcurve import Curve, Point
from .polyring import Poly, gcd, interpolate, resultant
from .qfield import FieldElement, PrimeIdeal, sqrt_element
from .tate import LocalData


@dataclass
class Isogeny:
    """A p-isogeny given by x-map Nx/Dx; iso is an optional post-composed
    isomorphism (u,r,s,t) from the Velu codomain to the stated codomain."""

    domain: Curve
    codomain: Curve
    p: int
    kernel_poly: Poly
    Nx: Poly
    Dx: Poly
    velu_codomain: Curve
    iso: tuple | None = None

    @property
    def z_squared(self) -> FieldElement:
        """z^2 for the differential scaling psi* w' = z w."""
        z2 = self.Dx.lc() / self.Nx.lc()
        if self.iso is not None:
            z2 = z2 * self.iso[0] ** 2
        return z2

    def x_map(self, x: FieldElement) -> FieldElement:
        return self.Nx(x) / self.Dx(x)

    def __call__(self, P: Point) -> Point:
        E2 = self.velu_codomain
        if P.is_zero() or not self.Dx(P.x):
            return self.codomain.zero()
        x, y = P.x, P.y
        N, D = self.Nx, self.Dx
        X = N(x) / D(x)
        Xp = (N.derivative()(x) * D(x) - N(x) * D.derivative()(x)) / (D(x) * D(x))
        E = self.domain
        Y = (Xp * (2 * y + E.a1 * x + E.a3) - E2.a1 * X - E2.a3) / 2
        Q = E2.point(X, Y)
        if self.iso is not None:
            Q = E2.map_point(Q, *self.iso)
            assert Q.curve == self.codomain
        return Q


def velu(E: Curve, h: Poly, p: int) -> Isogeny:
    """Normalized quotient isogeny with kernel polynomial h (monic, degree
    (p-1)/2)."""
    K = E.field
    assert h.degree == (p - 1) // 2 and h.lc() == K.one()
    x = Poly.x(K)
    t_poly = 6 * x * x + E.b2 * x + Poly(K, [E.b4])
    u_poly = Poly(K, [E.b6, 2 * E.b4, E.b2, 4])
    hp = h.derivative()
    # sum f(x_i)/(x - x_i) = (f * h' mod h)/h for f of any degree
    A = (t_poly * hp) % h
    B = (u_poly * hp) % h
    # scalar sums: t = sum t(x_i), w = sum u(x_i) + x_i t(x_i)
    t_sum = _symmetric_sum(t_poly, h)
    w_sum = _symmetric_sum(u_poly + x * t_poly, h)
    E2 = Curve(K, E.a1, E.a2, E.a3, E.a4 - 5 * t_sum, E.a6 - E.b2 * t_sum - 7 * w_sum)
    # X(x) = x + A/h - (B/h)'
    Nx = x * h * h + A * h - B.derivative() * h + B * hp
    Dx = h * h
    return Isogeny(E, E2, p, h, Nx, Dx, E2)


def _symmetric_sum(f: Poly, h: Poly) -> FieldElement:
    """sum of f over the roots of h (monic), via Newton power sums."""
    d = h.degree
    K = h.field
    e = [h[d - i] for i in range(d + 1)]  # e[0] = 1, signed elementary syms
    # power sums p_k from Newton's identities: p_k = -k e_k - sum e_i p_{k-i}
    ps = [K(d)]
    for k in range(1, f.degree + 1):
        acc = K.zero()
        for i in range(1, min(k - 1, d) + 1):
            acc = acc + e[i] * ps[k - i]
        ek = e[k] if k <= d else K.zero()
        ps.append(-k * ek - acc)
    out = K.zero()
    for i, c in enumerate(f.coeffs):
        out = out + c * ps[i]
    return out


def isogeny_from_kernel_point(E: Curve, P: Point, p: int) -> Isogeny:
    h = E.kernel_polynomial(P, p)
    return velu(E, h, p)


def find_isomorphism(E1: Curve, E2: Curve) -> tuple:
    """(u, r, s, t) with E1.transform(u, r, s, t) == E2."""
    K = E1.field
    assert E1.c4 and E1.c6, "j = 0, 1728 not handled"
    u2 = (E1.c6 / E2.c6) / (E1.c4 / E2.c4)
    u0 = sqrt_element(u2)
    assert u0 is not None, "curves are not isomorphic over the base field"
    for u in (u0, -u0):
        s = (u * E2.a1 - E1.a1) / 2
        r = (u * u * E2.a2 - E1.a2 + s * E1.a1 + s * s) / 3
        t = (u ** 3 * E2.a3 - E1.a3 - r * E1.a1) / 2
        if E1.transform(u, r, s, t) == E2:
            return (u, r, s, t)
    raise RuntimeError("isomorphism search failed")


def dual_isogeny(phi: Isogeny) -> Isogeny:
    """The dual of phi, as an isogeny codomain -> domain with
    dual(phi(Q)) = p * Q."""
    E, E2, p = phi.domain, phi.codomain, phi.p
    K = E.field
    psi_p = E.division_poly(p)
    g, rem = divmod(psi_p, phi.kernel_poly)
    assert rem.is_zero()
    # R(x) = Res_t(g(t), Nx(t) - x Dx(t)) = c * h_dual(x)^p
    deg = g.degree
    pts = []
    xv = 0
    while len(pts) < deg + 1:
        val = resultant(g, phi.Nx - K(xv) * phi.Dx)
        pts.append((K(xv), val))
        xv += 1
    R = interpolate(K, pts)
    Rsq = gcd(R, R.derivative())
    hdual = (R // Rsq).monic()
    assert hdual.degree == (p - 1) // 2, hdual.degree
    psi = velu(E2, hdual, p)
    iso = find_isomorphism(psi.codomain, E)
    return Isogeny(E2, E, p, hdual, psi.Nx, psi.Dx, psi.codomain, iso)


def isogeny_pair(E: Curve, P: Point, p: int) -> tuple[Isogeny, Isogeny]:
    phi = isogeny_from_kernel_point(E, P, p)
    phihat = dual_isogeny(phi)
    z2 = phi.z_squared * phihat.z_squared
    assert z2 == K_p_squared(E, p), f"z_phi^2 z_dual^2 = {z2}"
    return phi, phihat


def K_p_squared(E: Curve, p: int):
    return E.field(p * p)


# -- Neron scalings and place classification -------------------------------


def neron_scaling(psi: Isogeny, ld_dom: LocalData, ld_cod: LocalData) -> Fraction:
    """a_v(psi) = v(z) + v(u_dom) - v(u_cod) at the place of the data."""
    v = ld_dom.prime.val
    vz2 = v(psi.z_squared)
    assert vz2 % 2 == 0
    return Fraction(vz2, 2) + ld_dom.vu - ld_cod.vu


@dataclass
class PlaceClassification:
    prime: PrimeIdeal
    ld_E: LocalData
    ld_E2: LocalData
    a_phi: Fraction
    a_dual: Fraction
    direction: str  # "forward" | "backward" | "good"

    @property
    def in_S1(self) -> bool:
        return (self.direction == "forward" and self.ld_E.is_multiplicative
                and bool(self.ld_E.split))

    @property
    def in_S2(self) -> bool:
        return self.direction == "backward"


def classify_place(E: Curve, E2: Curve, phi: Isogeny, phihat: Isogeny,
                   pr: PrimeIdeal, p: int) -> PlaceClassification:
    ld = tate(E, pr)
    ld2 = tate(E2, pr)
    a_phi = neron_scaling(phi, ld, ld2)
    a_dual = neron_scaling(phihat, ld2, ld)
    vp = pr.val(E.field(p))
    assert a_phi + a_dual == vp, (a_phi, a_dual, vp)
    assert a_phi >= 0 and a_dual >= 0
    if ld.is_multiplicative:
        assert ld2.is_multiplicative and ld.split == ld2.split
        if ld2.n == p * ld.n:
            direction = "forward"
        elif ld.n == p * ld2.n:
            direction = "backward"
        else:
            raise RuntimeError(f"multiplicative indices {ld.n}, {ld2.n} not p-related")
    elif vp > 0:
        if a_phi > 0 and a_dual > 0:
            direction = "mixed"  # additive-scaling place; hypothesis failure
        elif a_dual == 0:
            direction = "forward"
        else:
            direction = "backward"
    elif ld.is_good:
        direction = "good"
    else:
        # additive reduction away from p: phi induces an isomorphism on
        # components; treat as neither forward nor backward
        direction = "good"
    return PlaceClassification(pr, ld, ld2, a_phi, a_dual, direction)


_TATE_CACHE: dict = {}


def tate(E: Curve, pr: PrimeIdeal) -> LocalData:
    from .tate import tate_local_data

    key = (E, pr)
    if key not in _TATE_CACHE:
        _TATE_CACHE[key] = tate_local_data(E, pr)
    return _TATE_CACHE[key]
