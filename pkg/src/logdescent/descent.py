"""Descent via a degree-p isogeny phi: E -> E' whose kernel is mu_p.

The context is built from the curve E' together with a rational p-torsion
point P generating ker(phihat). The phi-Selmer group is cut out inside
H^1(U_1, mu_p) = {x in K^*/p : div(x) = 0 mod p outside S_1} by the local
conditions at S_2; the class-invariant homomorphism psi factors as
psi_sel o kummer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .ellcurve import Curve, Point, curve_from_rational
from .ideals import (FieldSelmerBasis, class_group, field_selmer_basis,
                     s_class_group)
from .isogeny import (PlaceClassification, classify_place, dual_isogeny,
                      isogeny_from_kernel_point, tate)
from .linalg import fp_kernel, fp_rank, fp_solve
from .localfield import LocalUnitGroup
from .logpic import LogDivisor, LogPicTorsion
from .pairing import log_pairing
from .qfield import (FieldElement, PrimeIdeal, QuadField, ResidueField,
                     make_field, prime_divisors, primes_above)


class HypothesisError(Exception):
    """A named hypothesis fails for the given context."""


class DescentContext:
    """phi: E -> E' of degree p with ker(phihat) = <P>, P in E'(K)[p]."""

    def __init__(self, Eprime: Curve, P: Point, p: int):
        if p == 2 or not sympy.isprime(p):
            raise ValueError("p must be an odd prime")
        assert P.curve == Eprime and not P.is_zero()
        assert (p * P).is_zero() and not P.is_zero()
        self.field: QuadField = Eprime.field
        self.Eprime = Eprime
        self.P = P
        self.p = p
        self.phihat = isogeny_from_kernel_point(Eprime, P, p)
        self.E = self.phihat.codomain
        self.phi = dual_isogeny(self.phihat)
        self.classifications = self._classify()
        self.S1 = [c.prime for c in self.classifications if c.in_S1]
        self.S2 = [c.prime for c in self.classifications if c.in_S2]
        self.failures = self._check_hypotheses()

    def _classify(self) -> list[PlaceClassification]:
        K = self.field
        supp: dict = {}
        for x in (self.E.disc, self.Eprime.disc, K(self.p)):
            for pr in prime_divisors(K, x):
                supp[pr] = True
        out = []
        for pr in sorted(supp, key=lambda q: q.sort_key()):
            out.append(classify_place(self.E, self.Eprime, self.phi,
                                      self.phihat, pr, self.p))
        return out

    def _check_hypotheses(self) -> list[str]:
        fails = []
        p = self.p
        for c in self.classifications:
            for ld in (c.ld_E, c.ld_E2):
                if p == 3 and ld.kodaira in ("IV", "IV*"):
                    fails.append(f"Hyp 4: fibre of type {ld.kodaira} at {c.prime}")
                if not ld.is_good and not ld.is_multiplicative and ld.c % p == 0:
                    fails.append(f"Hyp 4: Tamagawa number divisible by {p} at {c.prime}")
            if c.direction == "mixed":
                fails.append(f"Hyp 5: place {c.prime} above {p} neither forward nor backward")
            if c.direction == "backward" and c.prime.val(self.field(p)) > 0 \
                    and local_mu_p_dim(c.prime, p):
                fails.append(f"Hyp 5: backward place {c.prime} above {p} with mu_p in K_v")
        return fails

    def require_hypotheses(self):
        if self.failures:
            raise HypothesisError("; ".join(self.failures))

    def torsion(self) -> LogPicTorsion:
        if not hasattr(self, "_torsion"):
            self._torsion = LogPicTorsion(self.field, self.S1, self.p)
        return self._torsion



def local_mu_p_dim(pr: PrimeIdeal, p: int) -> int:
    """dim of mu_p(K_v) over F_p: 1 iff [K_v(mu_p):K_v] = 1."""
    vp = pr.val(pr.field(p))
    if vp == 0:
        q = pr.ell ** pr.f
        return 1 if (q - 1) % p == 0 else 0
    # v | p: Q_p(mu_p)/Q_p is totally ramified of degree p-1
    return 1 if pr.e % (p - 1) == 0 else 0


# -- coordinates on H^1(U_1, mu_p) ----------------------------------------


class H1Coordinates:
    """F_p coordinates on the span of a field Selmer basis, computed through
    evaluation characters at auxiliary places w with #k_w = 1 mod p."""

    EXTRA = 8
    CAP = 4000

    def __init__(self, basis: FieldSelmerBasis):
        self.basis = basis
        self.field = basis.field
        self.p = basis.p
        self.gens = basis.gens
        self.rows: list[list[int]] = []
        self.places: list[PrimeIdeal] = []
        self._build()

    def _build(self):
        p = self.p
        extra = 0
        for w in self._candidates():
            if any(w.val(g) != 0 for g in self.gens):
                continue
            self.places.append(w)
            self.rows.append([self._char(w, g) for g in self.gens])
            if self.gens and fp_rank(self.rows, p) == len(self.gens):
                extra += 1
                if extra > self.EXTRA:
                    return
            if not self.gens and len(self.rows) > self.EXTRA:
                return
        raise RuntimeError("ran out of auxiliary evaluation places")

    def _candidates(self):
        K = self.field
        for ell in range(2, self.CAP):
            if (ell - 1) % self.p or not sympy.isprime(ell):
                continue
            for w in primes_above(K, ell):
                if (ell ** w.f - 1) % self.p == 0:
                    yield w

    def _char(self, w: PrimeIdeal, x: FieldElement) -> int:
        p = self.p
        k = ResidueField(w)
        z = k.pow(k.reduce(x), (k.q - 1) // p)
        zeta = self._zeta(w, k)
        acc = k.one()
        for j in range(p):
            if acc == z:
                return j
            acc = k.mul(acc, zeta)
        raise RuntimeError("value not in mu_p of the residue field")

    def _zeta(self, w, k):
        if not hasattr(self, "_zetas"):
            self._zetas = {}
        if w not in self._zetas:
            for g in k.elements():
                if k.is_zero(g):
                    continue
                z = k.pow(g, (k.q - 1) // self.p)
                if z != k.one():
                    self._zetas[w] = z
                    break
        return self._zetas[w]

    def coords(self, x: FieldElement) -> list[int]:
        """Solve x = prod gens^e mod p-th powers; error if x not in the span."""
        rows = []
        vals = []
        for w, row in zip(self.places, self.rows):
            if w.val(x) != 0:
                continue
            rows.append(row)
            vals.append(self._char(w, x))
        if self.gens and fp_rank(rows, self.p) < len(self.gens):
            raise RuntimeError("too few usable characters for this element")
        sol = fp_solve(rows, vals, self.p)
        if sol is None:
            raise ValueError("element is not in the span of the basis")
        return sol


# -- the Selmer group ------------------------------------------------------


@dataclass
class SelmerGroup:
    ctx: DescentContext
    h1: FieldSelmerBasis
    local_groups: list
    matrix: list[list[int]]        # one row per h1 generator
    kernel: list[list[int]]        # exponent vectors cutting out Sel^phi

    @property
    def dim(self) -> int:
        return len(self.kernel)

    @property
    def h1_dim(self) -> int:
        return self.h1.dim

    def basis_elements(self) -> list[FieldElement]:
        out = []
        for vec in self.kernel:
            x = self.ctx.field(1)
            for e, g in zip(vec, self.h1.gens):
                x = x * g ** e
            out.append(x)
        return out


def local_unit_coords(lug: LocalUnitGroup, x: FieldElement) -> tuple[int, ...]:
    """Coordinates of the class of x in O_v^*/p for v(x) = 0 mod p."""
    v = lug.pr.val(x)
    assert v % lug.p == 0, "element is ramified at a place where it must not be"
    if v:
        x = x * lug.pr.uniformizer() ** (-v)
    return lug.coords(x)


def selmer_phi(ctx: DescentContext) -> SelmerGroup:
    """Sel^phi = ker(H^1(U_1, mu_p) -> sum over S_2 of O_v^*/p)."""
    ctx.require_hypotheses()
    p = ctx.p
    h1 = field_selmer_basis(ctx.field, ctx.S1, p)
    lugs = [LocalUnitGroup(pr, p) for pr in ctx.S2]
    rows = []
    for g in h1.gens:
        row: list[int] = []
        for lug in lugs:
            row.extend(local_unit_coords(lug, g))
        rows.append(row)
    if not rows or not rows[0]:
        kernel = [[int(i == j) for j in range(h1.dim)] for i in range(h1.dim)]
    else:
        # kernel of the transposed action: combinations of generators that
        # vanish in every local group
        ncol = len(rows[0])
        mat = [[rows[i][j] for i in range(len(rows))] for j in range(ncol)]
        kernel = fp_kernel(mat, p, ncols=len(rows))
    return SelmerGroup(ctx, h1, lugs, rows, kernel)


def selmer_phihat_dim(ctx: DescentContext, sel: SelmerGroup) -> int:
    """Global duality: dim Sel^phi - dim Sel^phihat =
    #S_1 + #{v | infinity} - sum over S_2 of n_v + dim mu_p(K) - 1."""
    p = ctx.p
    nv_sum = 0
    for pr in ctx.S2:
        nv_sum += pr.e * pr.f if pr.val(ctx.field(p)) > 0 else 1
    diff = (len(ctx.S1) + ctx.field.infinite_places() - nv_sum
            + ctx.field.mu_p_dim(p) - 1)
    d = sel.dim - diff
    if d < 0:
        raise RuntimeError("duality gives a negative dual Selmer dimension")
    if not ctx.S2:
        cg = class_group(ctx.field)
        assert d == s_class_group(cg, ctx.S1).mod_p_dim(p)
    return d


def sel_p_dim_if_applicable(ctx: DescentContext, sel: SelmerGroup) -> int | None:
    """dim Sel^p(E/K) when S_2 is empty, S_1 is not, and the S_1-class
    group has at most one p-dimension."""
    if ctx.S2 or not ctx.S1:
        return None
    cg = class_group(ctx.field)
    hs = s_class_group(cg, ctx.S1).mod_p_dim(ctx.p)
    if hs > 1:
        return None
    return 2 * hs + len(ctx.S1) + ctx.field.infinite_places() - 2


# -- the Kummer map via Miller functions -----------------------------------


def _line(V: Point, W: Point, X: Point) -> FieldElement:
    """The line through V and W (tangent if V = W), evaluated at X; the
    vertical through V if V + W = O."""
    E = V.curve
    if (V + W).is_zero():
        return X.x - V.x
    if V == W:
        lam = (3 * V.x * V.x + 2 * E.a2 * V.x + E.a4 - E.a1 * V.y) \
            / (2 * V.y + E.a1 * V.x + E.a3)
    else:
        lam = (W.y - V.y) / (W.x - V.x)
    return X.y - V.y - lam * (X.x - V.x)


def miller(P: Point, p: int, X: Point) -> FieldElement:
    """Value at X of the function with divisor p(P) - p(O), built by the
    additive chain f_{m+1} = f_m * line(V, P) / vertical(V + P)."""
    assert (p * P).is_zero
    f = P.curve.field(1)
    V = P
    for _ in range(p - 1):
        num = _line(V, P, X)
        if not num:
            raise ZeroDivisionError("X hits the support of a line")
        f = f * num
        V = V + P
        if not V.is_zero():
            den = X.x - V.x
            if not den:
                raise ZeroDivisionError("X hits the support of a vertical")
            f = f / den
    assert V.is_zero()
    return f


def _in_kernel_span(ctx: DescentContext, Q: Point) -> bool:
    V = ctx.Eprime.zero()
    for _ in range(ctx.p):
        if Q == V:
            return True
        V = V + ctx.P
    return False


class KummerMap:
    """kappa: E'(K)/phi(E(K)) -> Sel^phi subset K^*/p, through the function
    f with divisor p(P) - p(O): kappa(Q) = f(Q) / gamma where the constant
    gamma = f(A) f(B) / f(A+B) removes the normalization ambiguity of f."""

    def __init__(self, ctx: DescentContext):
        ctx.require_hypotheses()
        self.ctx = ctx
        self.h1 = field_selmer_basis(ctx.field, ctx.S1, ctx.p)
        self.coords_solver = H1Coordinates(self.h1)
        self._gamma_parts: tuple | None = None   # (A-value, B-value, AB-value)

    def _f(self, X: Point) -> FieldElement:
        return miller(self.ctx.P, self.ctx.p, X)

    def _gamma_from(self, Q: Point):
        # gamma = f(A) f(B) / f(A+B) is independent of the admissible pair
        if self._gamma_parts is not None:
            return
        A = Q
        for _ in range(2 * self.ctx.p):
            B = A + Q
            if _in_kernel_span(self.ctx, B) or _in_kernel_span(self.ctx, A + B):
                A = B
                continue
            self._gamma_parts = (self._f(A), self._f(B), self._f(A + B))
            return
        raise RuntimeError("no admissible normalization pair found")

    def representative(self, Q: Point) -> FieldElement:
        """A K^* representative of kappa(Q) for Q outside <P>."""
        if _in_kernel_span(self.ctx, Q):
            raise ValueError("direct evaluation needs Q outside the kernel span")
        self._gamma_from(Q)
        fa, fb, fab = self._gamma_parts
        # inverted so that the identification of ker(phi) with mu_p matches
        # the orientation of the pairing: rho(kappa(Q)) = psi(Q)
        return (fa * fb) / (self._f(Q) * fab)

    def coords(self, Q: Point, aux: Point | None = None) -> list[int]:
        """Coordinates of kappa(Q) on the H^1(U_1, mu_p) basis."""
        p = self.ctx.p
        if Q.is_zero():
            return [0] * self.h1.dim
        if _in_kernel_span(self.ctx, Q):
            if aux is None or _in_kernel_span(self.ctx, aux):
                raise ValueError("kappa on a kernel multiple needs an auxiliary point")
            a = self.coords(Q + aux)
            b = self.coords(aux)
            return [(x - y) % p for x, y in zip(a, b)]
        # the representative has a huge norm; membership in H^1(U_1, mu_p) is
        # not re-verified by factoring, the overdetermined character solve
        # rejects elements outside the span instead
        return self.coords_solver.coords(self.representative(Q))

    def element(self, coords) -> FieldElement:
        x = self.ctx.field(1)
        for e, g in zip(coords, self.h1.gens):
            x = x * g ** e
        return x


# -- psi and its factorization ---------------------------------------------


def psi(ctx: DescentContext, Q: Point) -> LogDivisor:
    """The class-invariant homomorphism: psi(Q) = <P, Q>^log."""
    return log_pairing(ctx.Eprime, ctx.P, Q)


def psi_sel(ctx: DescentContext, x: FieldElement) -> LogDivisor:
    """rho: H^1(U_1, mu_p) -> logPic(X, S_1)[p], x -> (1/p) div(x)."""
    D = LogDivisor.of_element(x)
    for pr, e in D.coeffs.items():
        if pr not in ctx.S1:
            assert e.denominator == 1 and e % ctx.p == 0, \
                "divisor is not p-divisible outside S_1"
    return Fraction(1, ctx.p) * D


def psi_vector(ctx: DescentContext, Q: Point) -> list[int]:
    """psi(Q) in the F_p coordinates of logPic(X, S_1)[p]."""
    return ctx.torsion().vector(psi(ctx, Q))


# -- reports ----------------------------------------------------------------


@dataclass
class ShaBound:
    lower: int
    upper: int


@dataclass
class DescentReport:
    ctx: DescentContext
    sel: SelmerGroup
    sel_phihat_dim: int
    sel_p_dim: int | None
    logpic_dim: int
    psi_values: list[LogDivisor]
    psi_rank: int
    kappa_rank: int
    ker_psi_dim: int
    ker_psi_sel_dim: int
    coker_psi_sel_dim: int
    sha_phi: ShaBound


def descent_report(ctx: DescentContext, points: list[Point],
                   aux: Point | None = None) -> DescentReport:
    """Descent data assuming the given points, together with P, generate
    E'(K)/phi(E(K))."""
    ctx.require_hypotheses()
    p = ctx.p
    sel = selmer_phi(ctx)
    T = ctx.torsion()
    pts = [ctx.P] + [Q for Q in points if not Q.is_zero()]
    psi_vals = [psi(ctx, Q) for Q in pts]
    psi_rows = [T.vector(D) for D in psi_vals]
    psi_rank = fp_rank(psi_rows, p) if psi_rows and T.dim else 0
    km = KummerMap(ctx)
    kappa_rows = []
    for Q in pts:
        a = aux
        if a is None:
            others = [R for R in points if not _in_kernel_span(ctx, R)]
            a = others[0] if others else None
        if _in_kernel_span(ctx, Q) and a is None:
            # kappa(P) is not directly evaluable without a second point;
            # psi(P) != 0 already certifies kappa(P) != 0 (Lemma: S_1 != {})
            if any(c % p for c in T.vector(psi(ctx, Q))):
                kappa_rows.append(None)  # nonzero but unknown coordinates
            continue
        kappa_rows.append(km.coords(Q, aux=a))
    known = [r for r in kappa_rows if r is not None]
    kappa_rank = fp_rank(known, p) if known and known[0] else 0
    # a row marked None is nonzero with unknown coordinates; it can only
    # increase the rank when psi separates it, which psi_rank accounts for
    kappa_rank = max(kappa_rank, psi_rank)
    sel_rows = [T.vector(psi_sel(ctx, x)) for x in sel.basis_elements()]
    sel_rank = fp_rank(sel_rows, p) if sel_rows and T.dim else 0
    report = DescentReport(
        ctx=ctx,
        sel=sel,
        sel_phihat_dim=selmer_phihat_dim(ctx, sel),
        sel_p_dim=sel_p_dim_if_applicable(ctx, sel),
        logpic_dim=T.dim,
        psi_values=psi_vals,
        psi_rank=psi_rank,
        kappa_rank=kappa_rank,
        ker_psi_dim=kappa_rank - psi_rank,
        ker_psi_sel_dim=sel.dim - sel_rank,
        coker_psi_sel_dim=T.dim - sel_rank,
        sha_phi=ShaBound(lower=max(0, sel.dim - sel_rank - (kappa_rank - psi_rank)),
                         upper=sel.dim - kappa_rank),
    )
    return report


# -- the quadratic point search ---------------------------------------------


def _squarefree_split(r: Fraction) -> tuple[int, Fraction]:
    """r = d * s^2 with d a squarefree integer."""
    d, s2 = 1, Fraction(1)
    for ell, e in sympy.factorint(r.numerator).items():
        if ell == -1:
            d = -d
            continue
        if e % 2:
            d *= ell
        s2 *= Fraction(ell) ** (e - e % 2)
    for ell, e in sympy.factorint(r.denominator).items():
        if e % 2:
            d *= ell
            s2 /= Fraction(ell) ** (e + 1)
        else:
            s2 /= Fraction(ell) ** e
    return d, s2


def quadratic_point_search(Eprime, P, p: int, xbound: int):
    """Points of infinite order on E' over quadratic fields with bounded
    x-coordinate and the resulting psi values.

    E' and P are over Q; yields (field, point, psi divisor)."""
    assert Eprime.field.is_rational
    seen = set()
    results = []
    ctx_cache: dict[int, tuple] = {}
    for den in range(1, xbound + 1):
        for num in range(-xbound, xbound + 1):
            fr = Fraction(num, den)
            if fr in seen:
                continue
            seen.add(fr)
            x = Eprime.field(fr)
            rhs = 4 * (x ** 3 + Eprime.a2 * x * x + Eprime.a4 * x + Eprime.a6)
            delta = (Eprime.a1 * x + Eprime.a3) ** 2 + rhs
            if not delta:
                continue
            d, s2 = _squarefree_split(delta.a)
            if d == 1:
                continue  # rational point, not a quadratic one
            if d not in ctx_cache:
                K = make_field(d)
                EK = Eprime.base_change(K)
                PK = EK.point(K(P.x.a), K(P.y.a))
                ctx_cache[d] = (K, DescentContext(EK, PK, p))
            K, ctx = ctx_cache[d]
            sq = _sqrt_in(K, d, s2)
            y = (sq - K(Eprime.a1.a) * K(fr) - K(Eprime.a3.a)) / 2
            Q = ctx.Eprime.point(K(fr), y)
            if _is_torsion(Q, 12 * p):
                continue
            results.append((K, Q, psi(ctx, Q)))
    return results


def _sqrt_in(K: QuadField, d: int, s2: Fraction) -> FieldElement:
    """sqrt(d * s2) inside K = Q(sqrt(d)), for s2 a rational square."""
    from math import isqrt

    s = Fraction(isqrt(s2.numerator), isqrt(s2.denominator))
    assert s * s == s2
    root_d = K(0, 1)
    assert root_d * root_d == K(d)
    return s * root_d


def _is_torsion(Q: Point, bound: int) -> bool:
    V = Q
    for _ in range(bound):
        if V.is_zero():
            return True
        V = V + Q
    return False
