"""Carlitz module arithmetic and the cyclotomic function field model.

The Carlitz action sends a polynomial f in GF(q)[x] to the additive
polynomial C_f with C_x(z) = z^q + x z.  A CarlitzPoly stores only the
q-power coefficients, so composition stays sparse.

For an irreducible quadratic modulus M = T^2 + aT + b the torsion field is
GF(q)(x)[y]/(P) with

    P(y) = y^(q^2-1) + (x^q + x + a) y^(q-1) + (x^2 + a x + b),

and y * P(y) = C_M(y).  Quotient elements are dense coefficient vectors of
RatFunc in the basis 1, y, ..., y^(q^2-2).  Products and q-th powers reduce
exponent overflow one step at a time with

    y^e = -(x^q+x+a) y^(e-(q^2-1)+(q-1)) - (x^2+ax+b) y^(e-(q^2-1)),

and q-th powers cost almost nothing in characteristic p because they just
move coefficients: (sum r_i y^i)^q = sum r_i^q y^(iq).

The unit group of GF(q)[x]/(M) is cyclic of order q^2 - 1 and acts on the
model by y |-> C_u(y); galois_map materializes that action and proves it
well defined on the spot by checking C_M(C_u(y)) = 0 with C_u(y) != 0,
which forces P(C_u(y)) = 0 in the field.
"""

from dataclasses import dataclass

from . import gf
from .errors import (
    CtxMismatch,
    DivisionByZero,
    NotAUnit,
    ReducibleModulus,
    ZeroPolynomial,
)
from .polyalg import Poly, RatFunc, format_poly, invert_mod, is_irreducible


class CarlitzPoly:
    """Additive polynomial sum c_j z^(q^j), coefficients in GF(q)[x]."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        i = len(coeffs)
        while i and coeffs[i - 1].is_zero():
            i -= 1
        self.ctx = ctx
        self.coeffs = tuple(coeffs[:i])

    @property
    def tau_degree(self):
        """Largest j with a z^(q^j) term; the z-degree is q**tau_degree."""
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if not isinstance(other, CarlitzPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __add__(self, other):
        if not isinstance(other, CarlitzPoly):
            return NotImplemented
        if other.ctx is not self.ctx:
            raise CtxMismatch("additive polynomials over different fields")
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] = out[j] + c
        return CarlitzPoly(self.ctx, out)

    def compose(self, other):
        """self after other; q-power exponents collect as c_{i+j} += a_i b_j^(q^i)."""
        if other.ctx is not self.ctx:
            raise CtxMismatch("additive polynomials over different fields")
        n = self.ctx.n
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                term = a * b.frob_power(n * i)
                out[i + j] = term if out[i + j] is None else out[i + j] + term
        zero = Poly.zero(self.ctx)
        return CarlitzPoly(self.ctx, [c if c is not None else zero for c in out])

    def act(self, w):
        """Apply to a quotient element: sum c_j(x) * w^(q^j)."""
        acc = w.model.zero()
        power = w
        for j, c in enumerate(self.coeffs):
            if not c.is_zero():
                acc = acc + power.scale(RatFunc.from_poly(c))
            if j + 1 < len(self.coeffs):
                power = power.qpow()
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        q = self.ctx.order
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c.is_zero():
                continue
            zp = "z" if j == 0 else f"z^{q ** j}"
            cs = format_poly(c, var="x")
            parts.append(zp if cs == "1" else f"({cs})*{zp}")
        return "+".join(parts)

    def __repr__(self):
        return f"<{self} over {self.ctx.name}>"


def carlitz_of(f):
    """C_f, by Horner in the twisted ring: C_{x g + c} = C_x after C_g, plus c."""
    if f.is_zero():
        raise ZeroPolynomial("the Carlitz action needs a nonzero multiplier")
    ctx = f.ctx
    n = ctx.n
    m = f.degree
    acc = [Poly.constant(f.coeff(m))]
    for i in range(m - 1, -1, -1):
        # left-compose with z^q + x z: new_j = x*acc_j + acc_{j-1}^q
        x = Poly.gen(ctx)
        nxt = []
        for j in range(len(acc) + 1):
            t = Poly.zero(ctx)
            if j < len(acc):
                t = x * acc[j]
            if j > 0:
                t = t + acc[j - 1].frob_power(n)
            nxt.append(t)
        nxt[0] = nxt[0] + Poly.constant(f.coeff(i))
        acc = nxt
    return CarlitzPoly(ctx, acc)


@dataclass(frozen=True)
class Modulus:
    """Monic irreducible quadratic T^2 + aT + b over GF(q)."""

    a: gf.FieldElem
    b: gf.FieldElem

    def __post_init__(self):
        if self.a.ctx is not self.b.ctx:
            raise CtxMismatch("modulus coefficients from different fields")
        if not is_irreducible(self.as_poly()):
            raise ReducibleModulus(
                f"T^2+({self.a})T+({self.b}) factors over {self.ctx.name}")

    @property
    def ctx(self):
        return self.a.ctx

    @property
    def q(self):
        return self.ctx.order

    def as_poly(self):
        return Poly(self.ctx, (self.b, self.a, self.ctx.one))

    # -- the unit group of GF(q)[x]/(M) ------------------------------------

    def unit(self, f):
        if isinstance(f, UnitClass):
            return f
        if isinstance(f, int):
            f = Poly.constant(self.ctx.elem(f))
        rep = f % self.as_poly()
        if rep.is_zero():
            raise NotAUnit("zero residue class")
        return UnitClass(rep)

    def unit_mul(self, u, w):
        return self.unit(u.rep * w.rep)

    def unit_pow(self, u, e):
        e %= self.q ** 2 - 1
        acc = self.unit(1)
        base = u
        while e:
            if e & 1:
                acc = self.unit_mul(acc, base)
            base = self.unit_mul(base, base)
            e >>= 1
        return acc

    def unit_order(self, u):
        n = self.q ** 2 - 1
        order = n
        for p in gf.factorize(n):
            while order % p == 0 and self.unit_pow(u, order // p).rep.is_one():
                order //= p
        return order

    def iter_units(self):
        """All q^2 - 1 residue classes, lex on (constant, linear) coefficients."""
        for c0 in self.ctx.iter_elements():
            for c1 in self.ctx.iter_elements():
                if c0.is_zero() and c1.is_zero():
                    continue
                yield UnitClass(Poly(self.ctx, (c0, c1)))

    def unit_group_generator(self):
        full = self.q ** 2 - 1
        for u in self.iter_units():
            if self.unit_order(u) == full:
                return u
        raise NotAUnit("no generator found; modulus arithmetic is broken")

    def __str__(self):
        return format_poly(self.as_poly())


def iter_irreducible_moduli(ctx):
    """All monic irreducible quadratics over ctx, lex on (a, b)."""
    for a in ctx.iter_elements():
        for b in ctx.iter_elements():
            try:
                yield Modulus(a, b)
            except ReducibleModulus:
                continue


@dataclass(frozen=True)
class UnitClass:
    """Canonical unit of GF(q)[x]/(M): nonzero representative of degree <= 1."""

    rep: Poly

    def __post_init__(self):
        if self.rep.is_zero():
            raise NotAUnit("zero residue class")
        if self.rep.degree > 1:
            raise NotAUnit("representative not reduced")

    @property
    def ctx(self):
        return self.rep.ctx

    def __str__(self):
        return format_poly(self.rep, var="x")


class CycModel:
    """The torsion field GF(q)(x)[y]/(P) for a quadratic modulus."""

    def __init__(self, modulus):
        ctx = modulus.ctx
        q = ctx.order
        self.modulus = modulus
        self.ctx = ctx
        self.q = q
        self.dim = q * q - 1
        self.carlitz_m = carlitz_of(modulus.as_poly())
        c0, c1, lead = self.carlitz_m.coeffs
        # frozen shape of C_M for a monic quadratic
        x = Poly.gen(ctx)
        assert lead.is_one()
        assert c1 == x.frob_power(ctx.n) + x + Poly.constant(modulus.a)
        assert c0 == x * x + Poly.constant(modulus.a) * x + Poly.constant(modulus.b)
        self.c0 = c0
        self.c1 = c1
        # separability: d/dz of an additive polynomial is its z-coefficient
        assert not c0.is_zero()
        minpoly = [Poly.zero(ctx)] * (self.dim + 1)
        minpoly[0] = c0
        minpoly[q - 1] = c1
        minpoly[self.dim] = Poly.one(ctx)
        self.minpoly = tuple(minpoly)
        # y * P(y) = C_M(y), checked structurally: shifting P by one slot
        # must land the three C_M coefficients at z-degrees 1, q, q^2
        assert [self.minpoly[i] for i in (0, q - 1, self.dim)] == [c0, c1, lead]
        self._rf_zero = RatFunc.zero(ctx)
        self._rf_one = RatFunc.one(ctx)
        self._neg_c1 = RatFunc.from_poly(-c1)
        self._neg_c0 = RatFunc.from_poly(-c0)

    # -- element constructors ----------------------------------------------

    def zero(self):
        return CycElem(self, (self._rf_zero,) * self.dim)

    def one(self):
        return self.scalar(self._rf_one)

    def scalar(self, r):
        if isinstance(r, Poly):
            r = RatFunc.from_poly(r)
        elif isinstance(r, (int, gf.FieldElem)):
            r = RatFunc.constant(self.ctx.elem(r) if isinstance(r, int) else r)
        vec = [self._rf_zero] * self.dim
        vec[0] = r
        return CycElem(self, tuple(vec))

    def y(self):
        vec = [self._rf_zero] * self.dim
        vec[1] = self._rf_one
        return CycElem(self, tuple(vec))

    def from_pairs(self, pairs):
        """Element from (exponent, RatFunc) pairs; exponents may overflow."""
        return CycElem(self, self._fold(list(pairs)))

    def _fold(self, pairs):
        """Scatter (exp, coeff) into a reduced dense vector."""
        top = max((e for e, _ in pairs), default=0)
        buf = [None] * (max(top + 1, self.dim))
        for e, c in pairs:
            buf[e] = c if buf[e] is None else buf[e] + c
        q = self.q
        for e in range(len(buf) - 1, self.dim - 1, -1):
            c = buf[e]
            if c is None or c.is_zero():
                continue
            buf[e] = None
            lo, hi = e - self.dim, e - self.dim + q - 1
            t = self._neg_c1 * c
            buf[hi] = t if buf[hi] is None else buf[hi] + t
            t = self._neg_c0 * c
            buf[lo] = t if buf[lo] is None else buf[lo] + t
        return tuple(c if c is not None else self._rf_zero
                     for c in buf[:self.dim])

    def __repr__(self):
        return f"<torsion field for {self.modulus} over {self.ctx.name}>"


def torsion_minpoly(modulus):
    """Model whose defining polynomial is C_M(z)/z for the given modulus."""
    return CycModel(modulus)


class CycElem:
    """Dense vector of RatFunc in the basis 1, y, ..., y^(q^2-2)."""

    __slots__ = ("model", "vec")

    def __init__(self, model, vec):
        assert len(vec) == model.dim
        self.model = model
        self.vec = tuple(vec)

    def is_zero(self):
        return all(not c for c in self.vec)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.model is other.model and self.vec == other.vec

    def __hash__(self):
        return hash((id(self.model), self.vec))

    def _chk(self, other):
        if not isinstance(other, CycElem):
            raise CtxMismatch("expected a torsion-field element")
        if other.model is not self.model:
            raise CtxMismatch("elements of different torsion fields")
        return other

    def __add__(self, other):
        other = self._chk(other)
        return CycElem(self.model,
                       tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other):
        other = self._chk(other)
        return CycElem(self.model,
                       tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __neg__(self):
        return CycElem(self.model, tuple(-a for a in self.vec))

    def scale(self, r):
        """Multiply by a scalar from GF(q)(x)."""
        if not isinstance(r, RatFunc):
            r = RatFunc.from_poly(r) if isinstance(r, Poly) else \
                RatFunc.constant(self.model.ctx.elem(r) if isinstance(r, int)
                                 else r)
        return CycElem(self.model, tuple(a * r for a in self.vec))

    def __mul__(self, other):
        if isinstance(other, (RatFunc, Poly, gf.FieldElem, int)):
            return self.scale(other)
        other = self._chk(other)
        pairs = []
        for i, a in enumerate(self.vec):
            if not a:
                continue
            for j, b in enumerate(other.vec):
                if b:
                    pairs.append((i + j, a * b))
        return self.model.from_pairs(pairs)

    __rmul__ = __mul__

    def qpow(self):
        """q-th power: coefficients move to q-times-higher basis slots."""
        n = self.model.ctx.n
        q = self.model.q
        pairs = [(i * q, c.frob_power(n))
                 for i, c in enumerate(self.vec) if c]
        return self.model.from_pairs(pairs)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("quotient powers take non-negative ints")
        acc = self.model.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self):
        """Extended Euclid against the defining polynomial, over GF(q)(x)."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in the torsion field")
        model = self.model
        p_vec = [RatFunc.from_poly(c) for c in model.minpoly]
        out = invert_mod(list(self.vec), p_vec, model.ctx)
        out += [model._rf_zero] * (model.dim - len(out))
        return CycElem(model, tuple(out))

    def __str__(self):
        parts = []
        for i in range(len(self.vec) - 1, -1, -1):
            c = self.vec[i]
            if not c:
                continue
            yp = "1" if i == 0 else ("y" if i == 1 else f"y^{i}")
            parts.append(yp if (c.is_one() and i) else
                         (str(c) if i == 0 else f"({c})*{yp}"))
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"<{self}>"


def cyc_arith(u, w, op):
    """Quotient-ring arithmetic: op in {"add", "mul", "inv"}.

    For "inv" the first operand is ignored (pass None) and w is inverted.
    """
    if op == "add":
        return u + w
    if op == "mul":
        return u * w
    if op == "inv":
        return w.inverse()
    raise ValueError(f"unknown op {op!r}")


def galois_map(u, model):
    """Image of y under the automorphism attached to the unit u.

    The map y |-> C_u(y) extends to a field automorphism exactly when
    C_u(y) is a root of the defining polynomial P.  Since z P(z) = C_M(z),
    it is enough that C_M(C_u(y)) = 0 with C_u(y) != 0: the model is a
    field, so the cofactor P(C_u(y)) must vanish.  Both facts are checked
    here, not assumed.
    """
    u = model.modulus.unit(u)
    w = carlitz_of(u.rep).act(model.y())
    if w.is_zero():
        raise NotAUnit("unit maps the generator to zero")
    assert model.carlitz_m.act(w).is_zero(), "image is not a torsion root"
    return w


def act_on_torsion(u, w):
    """sigma_u applied to a torsion point w = C_f(y).

    Automorphisms fix GF(q)(x) and commute with every C_f, so
    sigma_u(C_f(y)) = C_f(C_u(y)) = C_u(C_f(y)); on such elements applying
    C_u to the vector is the Galois action.  Not valid on arbitrary field
    elements.
    """
    cp = u if isinstance(u, CarlitzPoly) else carlitz_of(u.rep)
    return cp.act(w)
