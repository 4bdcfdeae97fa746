"""Kummer-side model of the torsion field and the recognition branch.

Eliminating x from the torsion relations leaves a curve in two functions
v, y with

    y^(q-1) = h(v) = -(g v^2 + a v + b/g) / (v^q - v),      g = gamma,

one such curve for every nonzero gamma.  verify_prop31 replays that
elimination inside the degree-(q^2-1) quotient ring and hands back the
residual, which must be zero.

The other direction starts from a curve y^(q-1) = lambda * u(v)^r and
recovers a quadratic modulus whose curve is the same field in disguise;
kummer_normalize supplies the monomial change of generator z = y^s u^r0
that exhibits the match, and roundtrip_certificate chains every step and
checks each identity by arithmetic rather than by trust.
"""

from dataclasses import dataclass
from math import gcd

from . import gf
from .carlitz import Modulus, torsion_minpoly
from .errors import (
    CtxMismatch,
    DivisionByZero,
    NotCoprime,
    ReducibleModulus,
    ReducibleResult,
    ZeroElement,
)
from .polyalg import (
    INFINITY,
    Poly,
    RatFunc,
    invert_mod,
    is_irreducible,
    roots_in,
)


class KummerAlgebra:
    """Quotient GF(q)(v)[Y] / (Y^n - H) for a nonzero scalar H."""

    def __init__(self, ctx, n, H):
        if n < 1:
            raise ValueError("relation degree must be positive")
        if isinstance(H, Poly):
            H = RatFunc.from_poly(H)
        if H.is_zero():
            raise ZeroElement("defining scalar H must be nonzero")
        self.ctx = ctx
        self.n = n
        self.H = H
        self._zero = RatFunc.zero(ctx)
        self._one = RatFunc.one(ctx)

    def zero(self):
        return FFElem(self, (self._zero,) * self.n)

    def one(self):
        return self.scalar(self._one)

    def scalar(self, r):
        if isinstance(r, Poly):
            r = RatFunc.from_poly(r)
        elif isinstance(r, (int, gf.FieldElem)):
            r = RatFunc.constant(self.ctx.elem(r) if isinstance(r, int) else r)
        vec = [self._zero] * self.n
        vec[0] = r
        return FFElem(self, tuple(vec))

    def y(self):
        if self.n == 1:
            # Y = H is a scalar in the degenerate rank-1 algebra
            return self.scalar(self.H)
        vec = [self._zero] * self.n
        vec[1] = self._one
        return FFElem(self, tuple(vec))

    def from_coords(self, coords):
        coords = list(coords)
        assert len(coords) == self.n
        return FFElem(self, tuple(coords))

    def __repr__(self):
        return f"<algebra Y^{self.n} = {self.H} over {self.ctx.name}(v)>"


class KummerCurve(KummerAlgebra):
    """The curve y^(q-1) = h(v) attached to a modulus and a twist gamma."""

    def __init__(self, a, b, gamma):
        modulus = Modulus(a, b)
        ctx = modulus.ctx
        if gamma.is_zero():
            raise ZeroElement("gamma must be a nonzero scalar")
        q = ctx.order
        v = Poly.gen(ctx)
        binv_g = b * gamma.inverse()
        num = -(Poly.constant(gamma) * v * v + Poly.constant(a) * v
                + Poly.constant(binv_g))
        den = v.frob_power(ctx.n) - v
        h = RatFunc(num, den)
        super().__init__(ctx, q - 1, h)
        self.modulus = modulus
        self.a = a
        self.b = b
        self.gamma = gamma
        self.q = q
        self.h = h
        self.ram_numerator = -num  # g v^2 + a v + b/g, monic up to gamma
        self._check_ramification_profile()

    def _check_ramification_profile(self):
        """Valuations of h: -1 at each rational v, q-2 at infinity, +1 at
        the two conjugate roots of the numerator; each coprime to q-1."""
        q, ctx = self.q, self.ctx
        assert gcd(q - 2, q - 1) == 1
        for alpha in ctx.iter_elements():
            assert self.h.valuation(alpha) == -1
        assert self.h.valuation(INFINITY) == q - 2
        ext = gf.create_field(ctx.p, 2 * ctx.n)
        quad_roots = roots_in(self.ram_numerator, ext)
        assert len(quad_roots) == 2 and quad_roots[0] != quad_roots[1]
        for rt in quad_roots:
            assert self.h.valuation(rt) == 1

    def __repr__(self):
        return (f"<curve y^{self.q - 1} = {self.h} "
                f"(modulus {self.modulus}, gamma={self.gamma})>")


class FFElem:
    """Element sum coords_i y^i of a Kummer algebra; y^n folds to H."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg, coords):
        assert len(coords) == alg.n
        self.alg = alg
        self.coords = tuple(coords)

    def is_zero(self):
        return all(not c for c in self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.alg is other.alg and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.alg), self.coords))

    def _chk(self, other):
        if not isinstance(other, FFElem):
            raise CtxMismatch("expected a Kummer-algebra element")
        if other.alg is not self.alg:
            raise CtxMismatch("elements of different algebras")
        return other

    def __add__(self, other):
        other = self._chk(other)
        return FFElem(self.alg,
                      tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        other = self._chk(other)
        return FFElem(self.alg,
                      tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return FFElem(self.alg, tuple(-a for a in self.coords))

    def scale(self, r):
        if isinstance(r, Poly):
            r = RatFunc.from_poly(r)
        elif isinstance(r, (int, gf.FieldElem)):
            r = RatFunc.constant(self.alg.ctx.elem(r) if isinstance(r, int)
                                 else r)
        return FFElem(self.alg, tuple(a * r for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (RatFunc, Poly, gf.FieldElem, int)):
            return self.scale(other)
        other = self._chk(other)
        n = self.alg.n
        out = [self.alg._zero] * n
        H = self.alg.H
        for i, ai in enumerate(self.coords):
            if not ai:
                continue
            for j, bj in enumerate(other.coords):
                if not bj:
                    continue
                e = i + j
                t = ai * bj
                if e >= n:
                    e -= n
                    t = t * H
                out[e] = out[e] + t
        return FFElem(self.alg, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        alg = self.alg
        mod = [-alg.H] + [alg._zero] * (alg.n - 1) + [alg._one]
        out = invert_mod(list(self.coords), mod, alg.ctx)
        out += [alg._zero] * (alg.n - len(out))
        return FFElem(alg, tuple(out))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.alg.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __truediv__(self, other):
        if isinstance(other, FFElem):
            return self * other.inverse()
        return NotImplemented

    def __str__(self):
        parts = []
        for i in range(len(self.coords) - 1, -1, -1):
            c = self.coords[i]
            if not c:
                continue
            yp = "1" if i == 0 else ("y" if i == 1 else f"y^{i}")
            parts.append(yp if (c.is_one() and i) else
                         (str(c) if i == 0 else f"({c})*{yp}"))
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self}>"


def ff_arith(u, w, op):
    """Kummer-algebra arithmetic: op in {"add", "mul", "inv"}.

    For "inv" the first operand is ignored (pass None) and w is inverted.
    """
    if op == "add":
        return u + w
    if op == "mul":
        return u * w
    if op == "inv":
        if w.is_zero():
            raise DivisionByZero("inverse of zero")
        return w.inverse()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EliminationCertificate:
    """Outcome of replaying the x-elimination in the quotient ring."""

    ok: bool
    residual: object  # CycElem; zero exactly when ok


def _coerce_scalar(ctx, value):
    if isinstance(value, gf.FieldElem):
        if value.ctx is not ctx:
            raise CtxMismatch("scalar from a different field")
        return value
    return ctx.elem(value)


def verify_prop31(q, a, b, gamma):
    """Certify y^(q-1) = -(g v^2 + a v + b/g)/(v^q - v) with v = (x + y^(q-1))/g.

    Works inside GF(q)(x)[y]/(P): substitutes the definition of v and
    reduces g y^(q-1) (v^q - v) + (g v)^2 + a g v + b against P.  The
    curve relation holds exactly when the residual is zero.
    """
    ctx = gf.field_from_order(q)
    a = _coerce_scalar(ctx, a)
    b = _coerce_scalar(ctx, b)
    gamma = _coerce_scalar(ctx, gamma)
    if gamma.is_zero():
        raise ZeroElement("gamma must be a nonzero scalar")
    modulus = Modulus(a, b)  # ReducibleModulus for a bad pair
    model = torsion_minpoly(modulus)
    yq1 = model.from_pairs([(q - 1, RatFunc.one(ctx))])
    x_scalar = model.scalar(Poly.gen(ctx))
    v = (x_scalar + yq1).scale(gamma.inverse())
    gv = v.scale(gamma)
    residual = ((yq1 * (v.qpow() - v)).scale(gamma)
                + gv * gv + gv.scale(a) + model.scalar(b))
    return EliminationCertificate(ok=residual.is_zero(), residual=residual)


@dataclass(frozen=True)
class PowerSubstitution:
    """z = y^s u^r with r n + s k = 1; then y^n = u^k forces z^n = u."""

    r: int
    s: int
    symbol: str = "u"

    def __str__(self):
        return f"z = y^{self.s} * {self.symbol}^{self.r}"


def kummer_normalize(n, k, u="u"):
    """Bezout data for replacing y by a generator z with z^n = u."""
    if n < 1 or k < 1:
        raise ValueError("exponents must be positive")
    if gcd(n, k) != 1:
        raise NotCoprime(f"gcd({n}, {k}) != 1")
    r = pow(n, -1, k)
    s = (1 - r * n) // k
    return PowerSubstitution(r=r, s=s, symbol=u)


def recognize_cyclotomic(q, lam, r, a, b):
    """Modulus of the torsion field matching y^(q-1) = lam * u(v)^r.

    Here u = (v^2 + a v + b)/(v^q - v).  The recovered modulus is
    T^2 - c a T + c^2 b with c = lam^(1/r), the (q-1)-th-power-free root
    taken via the inverse of r mod q-1.
    """
    ctx = gf.field_from_order(q)
    lam = _coerce_scalar(ctx, lam)
    a = _coerce_scalar(ctx, a)
    b = _coerce_scalar(ctx, b)
    if gcd(r, q - 1) != 1:
        raise NotCoprime(f"twist exponent {r} shares a factor with {q - 1}")
    if lam.is_zero():
        raise ZeroElement("lambda must be a nonzero scalar")
    if not is_irreducible(Poly(ctx, (b, a, ctx.one))):
        raise ReducibleResult("input pair (a, b) gives a reducible quadratic")
    c = lam ** pow(r, -1, q - 1)
    try:
        return Modulus(-(c * a), c * c * b)
    except ReducibleModulus as exc:
        # unreachable for honest inputs: T -> -cS rescales one quadratic
        # into the other, so irreducibility transfers
        raise ReducibleResult(str(exc)) from exc


@dataclass(frozen=True)
class RoundTrip:
    """recognize -> construct -> substitute, every identity re-checked."""

    modulus: Modulus
    gamma: gf.FieldElem
    substitution: PowerSubstitution
    elimination_ok: bool
    curve_matches: bool
    z_relation_ok: bool
    y_recovered_ok: bool

    @property
    def ok(self):
        return (self.elimination_ok and self.curve_matches
                and self.z_relation_ok and self.y_recovered_ok)


def roundtrip_certificate(q, lam, r, a, b):
    """Close the loop for an input curve y^(q-1) = lam * u^r.

    Checks, by exact arithmetic in the input algebra:
      1. the recognized modulus passes the forward elimination;
      2. the forward curve with gamma = -lam^(1/r) has h = lam^(1/r) u;
      3. z = y^s u^r0 from kummer_normalize satisfies z^(q-1) = lam^(1/r) u;
      4. y = lam^r0 z^r, so the new generator generates.
    """
    ctx = gf.field_from_order(q)
    lam = _coerce_scalar(ctx, lam)
    a = _coerce_scalar(ctx, a)
    b = _coerce_scalar(ctx, b)
    modulus = recognize_cyclotomic(q, lam, r, a, b)
    c = lam ** pow(r, -1, q - 1)
    gamma = -c

    cert = verify_prop31(q, modulus.a, modulus.b, gamma)

    v = Poly.gen(ctx)
    u = RatFunc(v * v + Poly.constant(a) * v + Poly.constant(b),
                v.frob_power(ctx.n) - v)
    forward = KummerCurve(modulus.a, modulus.b, gamma)
    curve_matches = forward.h == u * RatFunc.constant(c)

    sub = kummer_normalize(q - 1, r)
    alg = KummerAlgebra(ctx, q - 1, u ** r * RatFunc.constant(lam))
    z = (alg.y() ** sub.s).scale(u ** sub.r)
    z_relation_ok = z ** (q - 1) == alg.scalar(u * RatFunc.constant(c))
    y_recovered_ok = (z ** r).scale(lam ** sub.r) == alg.y()

    return RoundTrip(modulus=modulus, gamma=gamma, substitution=sub,
                     elimination_ok=cert.ok, curve_matches=curve_matches,
                     z_relation_ok=z_relation_ok,
                     y_recovered_ok=y_recovered_ok)
