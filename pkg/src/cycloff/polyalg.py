"""Univariate polynomials and rational functions over a field context.

Polynomials are coefficient tuples, constant term first, with no trailing
zeros; the zero polynomial is the empty tuple and reports degree -inf.
Rational functions are stored fully reduced with monic denominator, so
structural equality is semantic equality.

Everything here is exact.  The irreducibility test uses root search up to
degree 3 and the T^(q^d) = T criterion with gcd refinements above that;
root finding in extensions is an exhaustive scan, which is all the desk
scale here ever needs.
"""

from . import gf
from .errors import (
    BothZero,
    ConstantPolynomial,
    CtxMismatch,
    DivisionByZero,
    ParseError,
    ZeroPolynomial,
    ZeroValuation,
)

NEG_INF = float("-inf")

#: sentinel for the place at infinity of the projective line
INFINITY = "infinity"


class Poly:
    """Polynomial over a FieldCtx; immutable."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        i = len(coeffs)
        while i and coeffs[i - 1].is_zero():
            i -= 1
        self.ctx = ctx
        self.coeffs = tuple(coeffs[:i])

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.elem(c) for c in ints])

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (ctx.one,))

    @classmethod
    def constant(cls, e):
        return cls(e.ctx, (e,))

    @classmethod
    def gen(cls, ctx):
        """The variable itself."""
        return cls(ctx, (ctx.zero, ctx.one))

    # -- structure ----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.ctx.one

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.ctx.zero

    def monic(self):
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        if self.lc == self.ctx.one:
            return self
        inv = self.lc.inverse()
        return Poly(self.ctx, [c * inv for c in self.coeffs])

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx is not self.ctx:
                raise CtxMismatch("polynomials over different fields")
            return other
        if isinstance(other, gf.FieldElem):
            if other.ctx is not self.ctx:
                raise CtxMismatch("coefficient from a different field")
            return Poly.constant(other)
        if isinstance(other, int):
            return Poly.constant(self.ctx.elem(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.ctx)
        zero = self.ctx.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x.is_zero():
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        zero = self.ctx.zero
        rem = list(self.coeffs)
        dg = other.degree
        inv_lc = other.lc.inverse()
        q = [zero] * max(0, len(rem) - dg)
        while len(rem) - 1 >= dg and rem:
            while rem and rem[-1].is_zero():
                rem.pop()
            if len(rem) - 1 < dg:
                break
            d = len(rem) - 1 - dg
            c = rem[-1] * inv_lc
            q[d] = c
            for j, y in enumerate(other.coeffs):
                rem[d + j] = rem[d + j] - c * y
            rem.pop()
        return Poly(self.ctx, q), Poly(self.ctx, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers take non-negative ints")
        result = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return other.ctx is self.ctx and other.coeffs == self.coeffs
        if isinstance(other, (int, gf.FieldElem)):
            co = self._coerce(other)
            return co is not None and co.coeffs == self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    # -- evaluation and maps ------------------------------------------------

    def __call__(self, point):
        """Evaluate; the point may live in an extension of the base field."""
        if isinstance(point, int):
            point = self.ctx.elem(point)
        tgt = point.ctx
        acc = tgt.zero
        for c in reversed(self.coeffs):
            acc = acc * point + gf.embed(c, tgt)
        return acc

    def map_coeffs(self, fn, tgt_ctx):
        return Poly(tgt_ctx, [fn(c) for c in self.coeffs])

    def embed_into(self, tgt_ctx):
        return self.map_coeffs(lambda c: gf.embed(c, tgt_ctx), tgt_ctx)

    def derivative(self):
        return Poly(self.ctx,
                    [self.coeffs[i] * i for i in range(1, len(self.coeffs))])

    def compose(self, inner):
        """self(inner) for a polynomial inner."""
        acc = Poly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def frob_power(self, j):
        """The p^j-th power, using (sum c_i X^i)^(p^j) = sum c_i^(p^j) X^(i p^j)."""
        p = self.ctx.p
        step = p ** j
        zero = self.ctx.zero
        if self.is_zero():
            return self
        out = [zero] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                out[i * step] = c ** step
        return Poly(self.ctx, out)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)} over {self.ctx.name}>"


# ---------------------------------------------------------------------------
# gcd machinery

def xgcd(f, g):
    """Extended Euclid: (d, u, w) with u*f + w*g = d and d monic."""
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    ctx = f.ctx
    r0, r1 = f, g
    u0, u1 = Poly.one(ctx), Poly.zero(ctx)
    w0, w1 = Poly.zero(ctx), Poly.one(ctx)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        w0, w1 = w1, w0 - q * w1
    inv = r0.lc.inverse()
    return r0 * inv, u0 * inv, w0 * inv


def poly_gcd(f, g):
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def is_irreducible(f):
    """Irreducibility over the coefficient field GF(q).

    Degree 2 and 3 short-circuit through root search; higher degrees use
    T^(q^d) = T mod f together with gcd(T^(q^(d/r)) - T, f) = 1 for the
    prime divisors r of d.
    """
    d = f.degree
    if d is NEG_INF or d < 1:
        raise ConstantPolynomial("irreducibility needs degree >= 1")
    if d == 1:
        return True
    ctx = f.ctx
    if not f.coeff(0):
        return False  # divisible by T
    if d <= 3:
        return all(f(e) for e in ctx.iter_elements())
    x = Poly.gen(ctx)
    if _xq_power(f, d) != x % f:
        return False
    for r in gf.factorize(d):
        t = _xq_power(f, d // r)
        if poly_gcd(f, t - x) != Poly.one(ctx):
            return False
    return True


def _xq_power(f, j):
    """T^(q^j) mod f by iterated q-th powering."""
    q = f.ctx.order
    t = Poly.gen(f.ctx) % f
    for _ in range(j):
        t = _powmod(t, q, f)
    return t


def _powmod(base, e, mod):
    result = Poly.one(mod.ctx) % mod
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


def roots_in(f, ext):
    """All roots of f in the extension context, with multiplicity, lex order."""
    if f.is_zero():
        raise ZeroPolynomial("every point is a root of 0")
    fe = f.embed_into(ext) if ext is not f.ctx else f
    roots = []
    for e in ext.iter_elements():
        m = root_multiplicity(fe, e)
        roots.extend([e] * m)
    return roots


def root_multiplicity(f, c):
    """Multiplicity of c as a root of f; c may live in an extension."""
    ext = c.ctx
    fe = f.embed_into(ext) if ext is not f.ctx else f
    lin = Poly(ext, (-c, ext.one))
    m = 0
    while not fe.is_zero():
        q, r = divmod(fe, lin)
        if not r.is_zero():
            break
        m += 1
        fe = q
    return m


# ---------------------------------------------------------------------------


class RatFunc:
    """Reduced rational function num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, _reduced=False):
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.ctx is not den.ctx:
            raise CtxMismatch("numerator and denominator over different fields")
        if not _reduced:
            if num.is_zero():
                den = Poly.one(num.ctx)
            else:
                g = poly_gcd(num, den)
                if not g.is_one():
                    num, den = num // g, den // g
                if den.lc != den.ctx.one:
                    inv = den.lc.inverse()
                    num, den = num * inv, den * inv
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_poly(cls, f):
        return cls(f, Poly.one(f.ctx), _reduced=True)

    @classmethod
    def constant(cls, e):
        return cls.from_poly(Poly.constant(e))

    @classmethod
    def zero(cls, ctx):
        return cls.from_poly(Poly.zero(ctx))

    @classmethod
    def one(cls, ctx):
        return cls.from_poly(Poly.one(ctx))

    @classmethod
    def gen(cls, ctx):
        return cls.from_poly(Poly.gen(ctx))

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.ctx is not self.ctx:
                raise CtxMismatch("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            if other.ctx is not self.ctx:
                raise CtxMismatch("operand over a different field")
            return RatFunc.from_poly(other)
        if isinstance(other, gf.FieldElem):
            if other.ctx is not self.ctx:
                raise CtxMismatch("operand from a different field")
            return RatFunc.constant(other)
        if isinstance(other, int):
            return RatFunc.constant(self.ctx.elem(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc.from_poly(self.num + other.num)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RatFunc.from_poly(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        num, den = self.num ** e, self.den ** e
        # gcd-free and den monic already; powers preserve both
        return RatFunc(num, den, _reduced=True)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, Poly, gf.FieldElem, int)):
            co = self._coerce(other)
            return (co is not None and co.num == self.num
                    and co.den == self.den)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.num.coeffs, self.den.coeffs))

    # -- evaluation, valuation, substitution --------------------------------

    def __call__(self, point):
        d = self.den(point)
        if d.is_zero():
            raise DivisionByZero("pole at the evaluation point")
        return self.num(point) * d.inverse()

    def valuation(self, at):
        """Order of vanishing at a finite point (any extension) or INFINITY."""
        if self.is_zero():
            raise ZeroValuation("the zero function has no valuation")
        if at is INFINITY:
            return self.den.degree - self.num.degree
        return root_multiplicity(self.num, at) - root_multiplicity(self.den, at)

    def embed_into(self, tgt_ctx):
        return RatFunc(self.num.embed_into(tgt_ctx),
                       self.den.embed_into(tgt_ctx), _reduced=True)

    def frob_power(self, j):
        """p^j-th power; Frobenius keeps reducedness and monic denominators."""
        return RatFunc(self.num.frob_power(j), self.den.frob_power(j),
                       _reduced=True)

    def compose_fractional(self, np_, dp_):
        """Substitute the variable by np_/dp_ (polynomials), exactly."""
        d = max(len(self.num.coeffs), len(self.den.coeffs)) - 1
        if d < 0:
            return self
        num = _homogenized(self.num, np_, dp_, d)
        den = _homogenized(self.den, np_, dp_, d)
        return RatFunc(num, den)

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self):
        return f"<{self} over {self.ctx.name}>"


def _homogenized(f, np_, dp_, d):
    """sum f_i * np_^i * dp_^(d-i); shared degree d clears denominators."""
    ctx = np_.ctx
    acc = Poly.zero(ctx)
    npow = Poly.one(ctx)
    dpows = [Poly.one(ctx)]
    for _ in range(d):
        dpows.append(dpows[-1] * dp_)
    for i in range(d + 1):
        c = f.coeff(i) if i < len(f.coeffs) else ctx.zero
        if not c.is_zero():
            acc = acc + Poly.constant(c) * npow * dpows[d - i]
        if i < d:
            npow = npow * np_
    return acc


# ---------------------------------------------------------------------------
# Dense polynomials in a second variable Y with RatFunc coefficients,
# as plain lists (constant term first).  Only what quotient-algebra
# inversion needs; everything else in those algebras is sparse folding.

def yp_deg(v):
    for i in range(len(v) - 1, -1, -1):
        if v[i]:
            return i
    return -1


def _yp_sub(a, b, zero):
    n = max(len(a), len(b))
    a = a + [zero] * (n - len(a))
    b = b + [zero] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _yp_mul(a, b, zero):
    da, db = yp_deg(a), yp_deg(b)
    if da < 0 or db < 0:
        return [zero]
    out = [zero] * (da + db + 1)
    for i in range(da + 1):
        if a[i]:
            for j in range(db + 1):
                if b[j]:
                    out[i + j] = out[i + j] + a[i] * b[j]
    return out


def _yp_divmod(a, b, zero):
    db = yp_deg(b)
    rem = list(a)
    quo = [zero] * max(1, len(rem) - db)
    inv = b[db].inverse()
    while yp_deg(rem) >= db:
        d = yp_deg(rem)
        c = rem[d] * inv
        quo[d - db] = c
        for j in range(db + 1):
            rem[d - db + j] = rem[d - db + j] - c * b[j]
        rem = rem[:d]
        while rem and not rem[-1]:
            rem.pop()
    return quo, rem if rem else [zero]


def invert_mod(vec, mod, ctx):
    """Inverse of vec in GF(q)(T)[Y]/(mod) by extended Euclid.

    Both arguments are RatFunc coefficient lists, constant term first.
    Raises DivisionByZero when vec is zero or shares a factor with mod
    (only possible when the quotient is not a field).
    """
    zero, one = RatFunc.zero(ctx), RatFunc.one(ctx)
    r0, r1 = list(mod), list(vec)
    s0, s1 = [zero], [one]
    if yp_deg(r1) < 0:
        raise DivisionByZero("inverse of zero in a quotient algebra")
    while yp_deg(r1) > 0:
        q, r = _yp_divmod(r0, r1, zero)
        r0, r1 = r1, r
        s0, s1 = s1, _yp_sub(s0, _yp_mul(q, s1, zero), zero)
    if yp_deg(r1) < 0:
        raise DivisionByZero("element shares a factor with the modulus")
    inv = r1[0].inverse()
    out = [c * inv for c in s1]
    assert yp_deg(out) < yp_deg(list(mod))  # cofactor stays below deg mod
    return out


# ---------------------------------------------------------------------------
# Literal syntax for polynomials: "T^2+g*T+1", "(g+1)*T^2+2"

def format_poly(f, var="T"):
    if f.is_zero():
        return "0"
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c.is_zero():
            continue
        cs = gf.format_element(c)
        if i == 0:
            terms.append(cs)
            continue
        v = var if i == 1 else f"{var}^{i}"
        if cs == "1":
            terms.append(v)
        elif "+" in cs or "-" in cs:
            terms.append(f"({cs})*{v}")
        else:
            terms.append(f"{cs}*{v}")
    return "+".join(terms)


def parse_poly(ctx, s, var="T"):
    """Parse the literal syntax above into a Poly over ctx."""
    text = s.replace(" ", "")
    if not text:
        raise ParseError("empty polynomial literal")
    terms = _split_terms(text, s)
    out = {}
    for sgn, term in terms:
        coef, exp = _parse_poly_term(ctx, term, var, s)
        cur = out.get(exp, ctx.zero)
        out[exp] = cur + coef if sgn == 1 else cur - coef
    deg = max(out) if out else 0
    coeffs = [out.get(i, ctx.zero) for i in range(deg + 1)]
    return Poly(ctx, coeffs)


def _split_terms(text, original):
    terms = []
    depth = 0
    sign = 1
    i = 0
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    start = i
    while i <= len(text):
        if i == len(text):
            if i == start:
                raise ParseError(f"malformed literal {original!r}")
            terms.append((sign, text[start:i]))
            break
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parens in {original!r}")
        elif ch in "+-" and depth == 0:
            if i == start:
                raise ParseError(f"malformed literal {original!r}")
            terms.append((sign, text[start:i]))
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    if depth:
        raise ParseError(f"unbalanced parens in {original!r}")
    return terms


def _parse_poly_term(ctx, term, var, original):
    if var not in term:
        return _parse_coef(ctx, term, original), 0
    head, _, tail = term.partition(var)
    if head:
        if not head.endswith("*"):
            raise ParseError(f"missing '*' before {var} in {term!r}")
        coef = _parse_coef(ctx, head[:-1], original)
    else:
        coef = ctx.one
    if tail:
        if not tail.startswith("^") or not tail[1:].isdigit():
            raise ParseError(f"bad exponent in {term!r}")
        exp = int(tail[1:])
    else:
        exp = 1
    return coef, exp


def _parse_coef(ctx, text, original):
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    try:
        return gf.parse_element(ctx, text)
    except ParseError as exc:
        raise ParseError(f"bad coefficient {text!r} in {original!r}") from exc
