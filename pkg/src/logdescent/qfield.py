"""Exact arithmetic in Q and quadratic fields Q(sqrt(D)).

Elements are pairs of rationals a + b*sqrt(m) with m the squarefree radicand.
Primes are represented explicitly with their splitting data; valuations and
residue maps are computed exactly (split primes via Hensel-lifted roots).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

INF = 10 ** 9  # valuation of zero


def _squarefree_part(n: int) -> tuple[int, int]:
    """n = s^2 * m with m squarefree; returns (m, s)."""
    from sympy import factorint

    m, s = 1, 1
    sign = -1 if n < 0 else 1
    for q, e in factorint(abs(n)).items():
        if e % 2:
            m *= q
        s *= q ** (e // 2)
    return sign * m, s


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if n < 0:
        return (-1 if a < 0 else 1) * kronecker(a, -n)
    t = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            t = -t
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


class QuadField:
    """Q or a quadratic field, determined by a fundamental discriminant."""

    def __init__(self, disc: int | None):
        if disc is None:
            # the rational field
            self.disc = 1
            self.radicand = 1
            self.degree = 1
            self.omega_trace = 0
            self.omega_norm = 0
            return
        self.degree = 2
        self.disc = disc
        self.radicand = disc if disc % 4 == 1 else disc // 4
        if self.disc % 4 == 1:
            self.omega_trace = 1
            self.omega_norm = (1 - self.radicand) // 4
        else:
            self.omega_trace = 0
            self.omega_norm = -self.radicand

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def is_real(self) -> bool:
        return self.disc > 0

    @property
    def is_imaginary(self) -> bool:
        return self.degree == 2 and self.disc < 0

    def __call__(self, a, b=0) -> "FieldElement":
        return FieldElement(self, Fraction(a), Fraction(b))

    def sqrt_gen(self) -> "FieldElement":
        return FieldElement(self, Fraction(0), Fraction(1))

    def omega(self) -> "FieldElement":
        if self.disc % 4 == 1:
            return FieldElement(self, Fraction(1, 2), Fraction(1, 2))
        return self.sqrt_gen()

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def torsion_units(self) -> int:
        if self.disc == -4:
            return 4
        if self.disc == -3:
            return 6
        return 2

    def infinite_places(self) -> int:
        if self.is_rational:
            return 1
        return 2 if self.disc > 0 else 1

    def mu_p_dim(self, p: int) -> int:
        """dim_Fp of the p-th roots of unity inside K, p odd."""
        return 1 if (p == 3 and self.disc == -3) else 0

    def __eq__(self, other):
        return isinstance(other, QuadField) and self.disc == other.disc

    def __hash__(self):
        return hash(("QuadField", self.disc))

    def __repr__(self):
        if self.is_rational:
            return "Q"
        return f"Q(sqrt({self.radicand}))"


def make_field(D: int | None) -> QuadField:
    """Build Q (D=None) or Q(sqrt(D)); D may be a squarefree radicand or a
    fundamental discriminant."""
    if D is None:
        return QuadField(None)
    if D in (0, 1):
        raise ValueError(f"invalid field radicand {D}")
    m, s = _squarefree_part(D)
    if s == 1:
        disc = D if D % 4 == 1 else 4 * D
        return QuadField(disc)
    if s == 2 and D % 4 == 0 and m % 4 in (2, 3):
        return QuadField(D)  # already a fundamental discriminant
    raise ValueError(f"{D} is neither squarefree nor a fundamental discriminant")


class FieldElement:
    """a + b*sqrt(m), exact."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: QuadField, a: Fraction, b: Fraction = Fraction(0)):
        if field.is_rational and b != 0:
            raise ValueError("rational field has no irrational part")
        self.field = field
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("element of a different field")
            return other
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return FieldElement(self.field, Fraction(other))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        m = self.field.radicand
        return FieldElement(
            self.field,
            self.a * o.a + self.b * o.b * m,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        return FieldElement(self.field, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.field.radicand

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "FieldElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero element")
        return FieldElement(self.field, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        r = FieldElement(self.field, Fraction(1))
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except ValueError:
            return NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.field.disc, self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def omega_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates over the integral basis (1, omega)."""
        if self.field.is_rational:
            return self.a, Fraction(0)
        if self.field.disc % 4 == 1:
            return self.a - self.b, 2 * self.b
        return self.a, self.b

    def integer_coords(self) -> tuple[int, int, int]:
        """(A, B, den) with self = (A + B*omega)/den, gcd(A, B, den) = 1."""
        ca, cb = self.omega_coords()
        den = math.lcm(ca.denominator, cb.denominator)
        A, B = int(ca * den), int(cb * den)
        g = math.gcd(math.gcd(abs(A), abs(B)), den)
        return A // g, B // g, den // g

    def is_integral(self) -> bool:
        return self.integer_coords()[2] == 1

    def __repr__(self):
        return format_element(self)


def _fraction_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def sqrt_element(x: FieldElement) -> FieldElement | None:
    """An exact square root of x in its own field, or None."""
    K = x.field
    m = K.radicand
    if x.b == 0:
        r = _fraction_sqrt(x.a)
        if r is not None:
            return K(r)
        if not K.is_rational:
            r = _fraction_sqrt(x.a / m)
            if r is not None:
                return K(0, r)
        return None
    # (a + b sqrt(m))^2 = x: a^2 + m b^2 = x.a, 2ab = x.b
    d = _fraction_sqrt(x.a * x.a - m * x.b * x.b)
    if d is None:
        return None
    for sign in (1, -1):
        a2 = (x.a + sign * d) / 2
        a = _fraction_sqrt(a2)
        if a and a != 0:
            b = x.b / (2 * a)
            cand = K(a, b)
            if cand * cand == x:
                return cand
    return None


def format_element(x: FieldElement) -> str:
    def frac(q: Fraction) -> str:
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

    if x.b == 0:
        return frac(x.a)
    m = x.field.radicand
    if x.b == 1:
        s = f"sqrt({m})"
    elif x.b == -1:
        s = f"-sqrt({m})"
    else:
        s = f"{frac(x.b)}*sqrt({m})"
    if x.a == 0:
        return s
    sign = "+" if x.b > 0 else ""
    return f"{frac(x.a)}{sign}{s}"


_ELT_RE = re.compile(
    r"^\s*(?P<a>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?P<bpart>(?P<b>[+-](?:\d+(?:/\d+)?)?|(?:\d+(?:/\d+)?)?)\*?sqrt\((?P<m>-?\d+)\))?\s*$"
)


def parse_element(field: QuadField, s: str) -> FieldElement:
    """Parse 'a', 'a+b*sqrt(m)', 'b*sqrt(m)' with rational a, b."""
    t = s.replace(" ", "")
    mobj = _ELT_RE.match(t)
    if not mobj or (mobj.group("a") is None and mobj.group("bpart") is None):
        raise ValueError(f"cannot parse field element {s!r}")
    a = Fraction(mobj.group("a")) if mobj.group("a") else Fraction(0)
    b = Fraction(0)
    if mobj.group("bpart"):
        m = int(mobj.group("m"))
        if field.is_rational or m != field.radicand:
            raise ValueError(f"radicand mismatch in {s!r} for {field!r}")
        braw = mobj.group("b")
        if braw in ("", "+"):
            b = Fraction(1)
        elif braw == "-":
            b = Fraction(-1)
        else:
            b = Fraction(braw)
    return FieldElement(field, a, b)


@dataclass(frozen=True)
class PrimeIdeal:
    """A maximal ideal of O_K (or a rational prime for K = Q).

    kind: 'rational' | 'split' | 'inert' | 'ramified'; wbar is the image of
    omega in the residue field for f = 1 kinds (split primes carry one root
    each, distinguishing the conjugate pair).
    """

    field: QuadField
    ell: int
    kind: str
    wbar: int  # root of the omega minimal polynomial mod ell (f=1); 0 for inert

    @property
    def e(self) -> int:
        return 2 if self.kind == "ramified" else 1

    @property
    def f(self) -> int:
        return 2 if self.kind == "inert" else 1

    def norm(self) -> int:
        return self.ell ** self.f

    def residue_size(self) -> int:
        return self.norm()

    def above(self) -> int:
        return self.ell

    def second_gen(self) -> FieldElement:
        K = self.field
        if self.kind == "rational":
            return K(self.ell)
        if self.kind == "inert":
            return K(self.ell)
        return K.omega() - self.wbar

    def conjugate(self) -> "PrimeIdeal":
        if self.kind != "split":
            return self
        # the other root of x^2 - tr*x + nm mod ell
        other = (self.field.omega_trace - self.wbar) % self.ell
        return PrimeIdeal(self.field, self.ell, "split", other)

    def uniformizer(self) -> FieldElement:
        K = self.field
        if self.kind in ("rational", "inert"):
            return K(self.ell)
        if self.kind == "ramified":
            m = K.radicand
            if self.ell == 2 and m % 4 == 3:
                return K(1, 1)  # 1 + sqrt(m)
            return K.sqrt_gen()  # sqrt(m), valuation 1 since m squarefree
        g = self.second_gen()
        if self.val(g) == 1:
            return g
        return g + self.ell

    # -- valuations ------------------------------------------------------

    def omega_root_mod(self, N: int) -> int:
        """Root of the minimal polynomial of omega mod ell^N lifting wbar
        (split primes only)."""
        assert self.kind == "split"
        tr, nm = self.field.omega_trace, self.field.omega_norm
        ell = self.ell
        W, prec = self.wbar, 1
        while prec < N:
            prec = min(2 * prec, N)
            mod = ell ** prec
            fW = (W * W - tr * W + nm) % mod
            dW = (2 * W - tr) % mod
            W = (W - fW * pow(dW, -1, mod)) % mod
        return W % ell ** N

    def val(self, x) -> int:
        """The normalized valuation of x (INF for x = 0)."""
        if isinstance(x, FieldElement):
            if not x:
                return INF
            if x.field != self.field and self.kind == "rational":
                raise ValueError("field mismatch")
        else:
            x = Fraction(x)
            if x == 0:
                return INF
            num = _int_val(x.numerator, self.ell)
            den = _int_val(x.denominator, self.ell)
            return (num - den) * self.e
        A, B, den = x.integer_coords()
        vden = _int_val(den, self.ell) * self.e
        if self.kind == "rational":
            return _int_val(A, self.ell) - vden
        tr, nm = self.field.omega_trace, self.field.omega_norm
        normv = _int_val(A * A + A * B * tr + B * B * nm, self.ell)
        if self.kind == "inert":
            assert normv % 2 == 0
            return normv // 2 - vden
        if self.kind == "ramified":
            return normv - vden
        # split: embed via a lifted root with enough precision
        if normv == 0:
            return -vden
        W = self.omega_root_mod(normv + 1)
        c = (A + B * W) % self.ell ** (normv + 1)
        v = normv if c == 0 else min(_int_val(c, self.ell), normv)
        return v - vden

    def label(self) -> str:
        if self.kind in ("rational", "inert"):
            return f"({self.ell})"
        return f"({self.ell},{format_element(self.second_gen())})"

    def sort_key(self):
        return (self.ell, {"rational": 0, "inert": 0, "ramified": 1, "split": 2}[self.kind], self.wbar)

    def __repr__(self):
        return self.label()


def _int_val(n: int, ell: int) -> int:
    if n == 0:
        return INF
    v = 0
    n = abs(n)
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def primes_above(field: QuadField, ell: int) -> list[PrimeIdeal]:
    """The primes of K above the rational prime ell, deterministic order."""
    from sympy import isprime

    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if field.is_rational:
        return [PrimeIdeal(field, ell, "rational", 0)]
    sym = kronecker(field.disc, ell)
    tr, nm = field.omega_trace, field.omega_norm
    if sym == -1:
        return [PrimeIdeal(field, ell, "inert", 0)]
    if ell == 2:
        roots = sorted(r for r in range(2) if (r * r - tr * r + nm) % 2 == 0)
    else:
        from sympy.ntheory import sqrt_mod

        s = int(sqrt_mod((tr * tr - 4 * nm) % ell, ell))
        inv2 = pow(2, -1, ell)
        roots = sorted({int((tr + s) * inv2 % ell), int((tr - s) * inv2 % ell)})
    if sym == 0:
        return [PrimeIdeal(field, ell, "ramified", roots[0])]
    assert len(roots) == 2
    return [PrimeIdeal(field, ell, "split", r) for r in roots]


def prime_divisors(field: QuadField, x: FieldElement) -> dict[PrimeIdeal, int]:
    """Factor the principal fractional ideal (x) into primes."""
    from sympy import factorint

    if not x:
        raise ValueError("cannot factor the zero ideal")
    n = x.norm()
    out: dict[PrimeIdeal, int] = {}
    for ell in sorted(set(factorint(abs(n.numerator)).keys()) | set(factorint(n.denominator).keys())):
        for pr in primes_above(field, ell):
            v = pr.val(x)
            if v:
                out[pr] = v
    return out


# -- residue fields ------------------------------------------------------


class ResidueField:
    """The residue field at a prime; elements are ints (f=1) or pairs (f=2)
    in the basis (1, omega-bar)."""

    def __init__(self, prime: PrimeIdeal):
        self.prime = prime
        self.ell = prime.ell
        self.f = prime.f
        self.q = prime.norm()
        K = prime.field
        self.tr = K.omega_trace % self.ell if not K.is_rational else 0
        self.nm = K.omega_norm % self.ell if not K.is_rational else 0

    # elements: int in [0, ell) if f == 1 else tuple (a, b)

    def zero(self):
        return 0 if self.f == 1 else (0, 0)

    def one(self):
        return 1 if self.f == 1 else (1, 0)

    def from_int(self, n: int):
        return n % self.ell if self.f == 1 else (n % self.ell, 0)

    def is_zero(self, x) -> bool:
        return x == self.zero()

    def add(self, x, y):
        if self.f == 1:
            return (x + y) % self.ell
        return ((x[0] + y[0]) % self.ell, (x[1] + y[1]) % self.ell)

    def neg(self, x):
        if self.f == 1:
            return (-x) % self.ell
        return ((-x[0]) % self.ell, (-x[1]) % self.ell)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        if self.f == 1:
            return (x * y) % self.ell
        # (a+bw)(c+dw) with w^2 = tr*w - nm
        a, b = x
        c, d = y
        bd = b * d
        return ((a * c - bd * self.nm) % self.ell, (a * d + b * c + bd * self.tr) % self.ell)

    def pow(self, x, n: int):
        if self.f == 1:
            return pow(x, n, self.ell) if n >= 0 else pow(self.inv(x), -n, self.ell)
        if n < 0:
            return self.pow(self.inv(x), -n)
        r = self.one()
        base = x
        while n:
            if n & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            n >>= 1
        return r

    def inv(self, x):
        if self.is_zero(x):
            raise ZeroDivisionError
        if self.f == 1:
            return pow(x, -1, self.ell)
        a, b = x
        # norm to F_ell: (a+bw)(a + b(tr - w)) = a^2 + ab*tr + b^2*nm... careful:
        # conj(w) = tr - w, N = a^2 + a b tr + b^2 nm
        n = (a * a + a * b * self.tr + b * b * self.nm) % self.ell
        ninv = pow(n, -1, self.ell)
        return (((a + b * self.tr) * ninv) % self.ell, ((-b) * ninv) % self.ell)

    def elements(self):
        if self.f == 1:
            return list(range(self.ell))
        return [(a, b) for a in range(self.ell) for b in range(self.ell)]

    def reduce(self, x: FieldElement):
        """Reduction of x (with val >= 0) to the residue field."""
        pr = self.prime
        if pr.val(x) < 0:
            raise ValueError(f"element not integral at {pr}")
        A, B, den = x.integer_coords()
        k = _int_val(den, self.ell)
        den_unit = den // self.ell ** k
        if pr.kind == "split":
            N = k + 1
            mod = self.ell ** N
            W = pr.omega_root_mod(N)
            c = (A + B * W) % mod
            c //= self.ell ** k
            return (c * pow(den_unit, -1, self.ell)) % self.ell
        if k:
            # ell^k divides A + B*omega in O_K for non-split kinds
            assert A % self.ell ** k == 0 and B % self.ell ** k == 0
            A //= self.ell ** k
            B //= self.ell ** k
        dinv = pow(den_unit, -1, self.ell)
        A, B = (A * dinv) % self.ell, (B * dinv) % self.ell
        if self.f == 2:
            return (A, B)
        return (A + B * self.prime.wbar) % self.ell

    def lift(self, xbar) -> FieldElement:
        """Any integral element reducing to xbar."""
        K = self.prime.field
        if self.f == 1:
            if self.prime.kind == "split" or self.prime.kind == "ramified":
                # xbar = A + B*wbar with B = 0 works
                return K(xbar)
            return K(xbar)
        return K(xbar[0]) + K(xbar[1]) * K.omega()

    # -- polynomial roots over the residue field -------------------------

    def roots(self, coeffs: list) -> list:
        """All roots in the residue field of the poly with the given
        coefficients (constant first, elements of this field)."""
        cs = list(coeffs)
        while cs and self.is_zero(cs[-1]):
            cs.pop()
        if len(cs) <= 1:
            return []
        if self.q <= 4096:
            return [x for x in self.elements()
                    if self.is_zero(self._eval(cs, x))]
        # split off the linear factors via gcd(x^q - x, f), then root-find
        return self._roots_large(cs)

    def _eval(self, cs, x):
        acc = self.zero()
        for c in reversed(cs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def _roots_large(self, cs) -> list:
        import random

        lead_inv = self.inv(cs[-1])
        f = [self.mul(c, lead_inv) for c in cs]
        # x^q mod f
        xq = self._poly_powmod([self.zero(), self.one()], self.q, f)
        g = self._poly_gcd(self._poly_sub(xq, [self.zero(), self.one()]), f)
        rng = random.Random(self.q)
        out = []
        stack = [g]
        while stack:
            h = stack.pop()
            h = self._poly_monic(h)
            if len(h) <= 1:
                continue
            if len(h) == 2:
                out.append(self.neg(h[0]))
                continue
            while True:
                a = self.from_int(rng.randrange(self.q)) if self.f == 1 else (
                    rng.randrange(self.ell), rng.randrange(self.ell))
                t = self._poly_powmod([a, self.one()], (self.q - 1) // 2, h)
                t = self._poly_sub(t, [self.one()])
                d = self._poly_gcd(t, h)
                if 1 < len(d) < len(h):
                    stack.append(d)
                    stack.append(self._poly_divexact(h, d))
                    break
        return sorted(out, key=lambda r: r if self.f == 1 else r)

    def _poly_sub(self, u, v):
        n = max(len(u), len(v))
        u = u + [self.zero()] * (n - len(u))
        v = v + [self.zero()] * (n - len(v))
        w = [self.sub(a, b) for a, b in zip(u, v)]
        while w and self.is_zero(w[-1]):
            w.pop()
        return w

    def _poly_monic(self, u):
        if not u:
            return u
        inv = self.inv(u[-1])
        return [self.mul(c, inv) for c in u]

    def _poly_mod(self, u, v):
        v = self._poly_monic(v)
        u = list(u)
        while len(u) >= len(v):
            top = u.pop()
            if self.is_zero(top):
                continue
            off = len(u) - (len(v) - 1)
            for i in range(len(v) - 1):
                u[off + i] = self.sub(u[off + i], self.mul(top, v[i]))
        while u and self.is_zero(u[-1]):
            u.pop()
        return u

    def _poly_gcd(self, u, v):
        while v:
            u, v = v, self._poly_mod(u, v)
        return u

    def _poly_divexact(self, u, v):
        v = self._poly_monic(v)
        u = list(u)
        q = [self.zero()] * (len(u) - len(v) + 1)
        while len(u) >= len(v):
            top = u.pop()
            if self.is_zero(top):
                continue
            off = len(u) - (len(v) - 1)
            q[off] = top
            for i in range(len(v) - 1):
                u[off + i] = self.sub(u[off + i], self.mul(top, v[i]))
        return q

    def _poly_powmod(self, base, n, f):
        r = [self.one()]
        b = self._poly_mod(base, f)
        while n:
            if n & 1:
                r = self._poly_mod(self._mul_plain(r, b), f)
            b = self._poly_mod(self._mul_plain(b, b), f)
            n >>= 1
        return r

    def _mul_plain(self, u, v):
        if not u or not v:
            return []
        prod = [self.zero()] * (len(u) + len(v) - 1)
        for i, ui in enumerate(u):
            if self.is_zero(ui):
                continue
            for j, vj in enumerate(v):
                prod[i + j] = self.add(prod[i + j], self.mul(ui, vj))
        return prod

    def sqrt(self, x):
        """A square root of x, or None."""
        rs = self.roots([self.neg(x), self.zero(), self.one()])
        return rs[0] if rs else None


# -- exact Hensel lifting against a prime --------------------------------


def reduce_mod(x: FieldElement, prime: PrimeIdeal, N: int) -> FieldElement:
    """A small representative of x modulo prime^N (x integral at prime).

    Reduces integral-basis coordinates mod ell^N, which refines prime^N.
    """
    A, B, den = x.integer_coords()
    if _int_val(den, prime.ell):
        raise ValueError("denominator not invertible for coefficient reduction")
    mod = prime.ell ** N
    dinv = pow(den % mod, -1, mod)
    A, B = (A * dinv) % mod, (B * dinv) % mod
    K = prime.field
    if K.is_rational:
        return K(A)
    return K(A) + K(B) * K.omega()


def invert_mod(x: FieldElement, prime: PrimeIdeal, N: int) -> FieldElement:
    """Inverse of a unit x modulo prime^N, by Newton from the residue field."""
    kv = ResidueField(prime)
    y = kv.lift(kv.inv(kv.reduce(x)))
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        y = y * (2 - x * y)
        coefN = (prec + prime.e - 1) // prime.e + 1
        y = reduce_mod(y, prime, coefN)
    return y


def hensel_root(coeffs: list[FieldElement], prime: PrimeIdeal, root0: FieldElement, N: int) -> FieldElement:
    """Lift a simple residue root root0 of the polynomial (coefficients
    constant-first, integral at prime) to a root modulo prime^N."""

    def ev(x):
        acc = x.field.zero()
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]

    def dev(x):
        acc = x.field.zero()
        for c in reversed(dcoeffs):
            acc = acc * x + c
        return acc

    x = root0
    assert prime.val(ev(x)) >= 1 and prime.val(dev(x)) == 0
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        inv = invert_mod(dev(x), prime, prec)
        x = x - ev(x) * inv
        coefN = (prec + prime.e - 1) // prime.e + 1
        x = reduce_mod(x, prime, coefN)
    assert prime.val(ev(x)) >= N
    return x
