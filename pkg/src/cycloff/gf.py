"""Exact arithmetic in small finite fields GF(p^n).

Construction is fully deterministic.  The defining modulus of GF(p^n) is the
lexicographically least monic irreducible polynomial of degree n over GF(p),
where coefficient vectors (c_0, ..., c_{n-1}) are compared as integer tuples,
constant term first.  The distinguished generator is the least element (same
ordering) of multiplicative order p^n - 1.  For n = 1 the modulus is T itself.

Elements are coefficient tuples over GF(p) in the power basis of the residue
class of T.  Contexts are cached singletons, so ``create_field(3, 2) is
create_field(3, 2)`` and context identity doubles as field identity; mixing
elements of different contexts raises CtxMismatch rather than coercing.
"""

import functools
from math import isqrt

from .errors import (
    CtxMismatch,
    DivisionByZero,
    NoEmbedding,
    NotPrime,
    ParseError,
    TooLarge,
    ZeroElement,
)

ORDER_CAP = 1 << 20          # public desk-scale cap for create_field
_INTERNAL_ORDER_CAP = 1 << 22  # counting lane may go this far


def is_prime(m):
    if m < 2:
        return False
    for d in range(2, isqrt(m) + 1):
        if m % d == 0:
            return False
    return True


def factorize(m):
    """Prime factorization {prime: exponent} by trial division."""
    fs = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            fs[d] = fs.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        fs[m] = fs.get(m, 0) + 1
    return fs


# ---------------------------------------------------------------------------
# Polynomial arithmetic over the prime field, on plain int tuples.
# Used to bootstrap modulus selection and element inversion; kept free of
# FieldCtx so the selection of GF(p^n)'s modulus needs nothing but p.

def _pftrim(c):
    i = len(c)
    while i and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _pfadd(p, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, x in enumerate(g):
        out[i] = (out[i] + x) % p
    return _pftrim(out)


def _pfsub(p, f, g):
    out = list(f) + [0] * max(0, len(g) - len(f))
    for i, x in enumerate(g):
        out[i] = (out[i] - x) % p
    return _pftrim(out)


def _pfmul(p, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return _pftrim([c % p for c in out])


def _pfdivmod(p, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    inv_lc = pow(g[-1], -1, p)
    q = [0] * max(0, len(f) - dg)
    while len(_pftrim(f)) - 1 >= dg:
        f = list(_pftrim(f))
        d = len(f) - 1 - dg
        c = (f[-1] * inv_lc) % p
        q[d] = c
        for j, y in enumerate(g):
            f[d + j] = (f[d + j] - c * y) % p
    return _pftrim(q), _pftrim(f)


def _pfmod(p, f, g):
    return _pfdivmod(p, f, g)[1]


def _pfgcd(p, f, g):
    while g:
        f, g = g, _pfmod(p, f, g)
    if f:
        inv_lc = pow(f[-1], -1, p)
        f = tuple((c * inv_lc) % p for c in f)
    return f


def _pfxgcd(p, f, g):
    """Extended Euclid: returns (d, u, w) with u*f + w*g = d, d monic or ()."""
    r0, r1 = f, g
    u0, u1 = (1,), ()
    w0, w1 = (), (1,)
    while r1:
        q, r = _pfdivmod(p, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _pfsub(p, u0, _pfmul(p, q, u1))
        w0, w1 = w1, _pfsub(p, w0, _pfmul(p, q, w1))
    if r0:
        inv_lc = pow(r0[-1], -1, p)
        scale = (inv_lc,)
        r0 = _pfmul(p, r0, scale)
        u0 = _pfmul(p, u0, scale)
        w0 = _pfmul(p, w0, scale)
    return r0, u0, w0


def _pfpowmod(p, base, e, mod):
    result = (1,)
    base = _pfmod(p, base, mod)
    while e:
        if e & 1:
            result = _pfmod(p, _pfmul(p, result, base), mod)
        base = _pfmod(p, _pfmul(p, base, base), mod)
        e >>= 1
    return result


def _pf_xq_power(p, j, mod):
    """T^(p^j) mod ``mod`` via j rounds of p-th powering."""
    t = _pfmod(p, (0, 1), mod)
    for _ in range(j):
        t = _pfpowmod(p, t, p, mod)
    return t


def _pf_is_irreducible(p, f):
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if d <= 3:
        # cubic or quadratic: irreducible iff it has no root
        return all(_pfeval(p, f, c) for c in range(p))
    for c in range(p):
        # a rational root settles it without the Frobenius ladder
        if _pfeval(p, f, c) == 0:
            return False
    t = _pf_xq_power(p, d, f)
    if t != _pfmod(p, (0, 1), f):
        return False
    for r in factorize(d):
        tr = _pf_xq_power(p, d // r, f)
        if _pfgcd(p, f, _pfsub(p, tr, (0, 1))) != (1,):
            return False
    return True


def _pfeval(p, f, c):
    acc = 0
    for coef in reversed(f):
        acc = (acc * c + coef) % p
    return acc


def _least_irreducible(p, n):
    """Lex-least monic irreducible of degree n over GF(p); T itself for n=1."""
    if n == 1:
        return (0, 1)
    tail = [0] * n
    while True:
        # zero constant term means divisible by T; skip the full test
        if tail[0] and _pf_is_irreducible(p, tuple(tail) + (1,)):
            return tuple(tail) + (1,)
        # increment the (c_0, ..., c_{n-1}) tuple in integer-tuple order
        i = n - 1
        while i >= 0 and tail[i] == p - 1:
            tail[i] = 0
            i -= 1
        if i < 0:
            raise RuntimeError("no irreducible found; unreachable for prime p")
        tail[i] += 1


# ---------------------------------------------------------------------------


class FieldElem:
    """Element of a FieldCtx; immutable coefficient tuple in the power basis."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx is not self.ctx:
                raise CtxMismatch(
                    f"cannot combine {self.ctx.name} with {other.ctx.name}")
            return other
        if isinstance(other, int):
            return self.ctx.elem(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._sub(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._sub(other.coeffs, self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx._neg(self.coeffs))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.ctx, self.ctx._pow(self.coeffs, e))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx._inv(self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return other.ctx is self.ctx and other.coeffs == self.coeffs
        if isinstance(other, int):
            return self.coeffs == self.ctx.elem(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.n, self.coeffs))

    def order(self):
        """Multiplicative order; ZeroElement for 0."""
        if self.is_zero():
            raise ZeroElement("0 has no multiplicative order")
        o = self.ctx.order - 1
        for r in self.ctx.group_factors():
            while o % r == 0 and self ** (o // r) == self.ctx.one:
                o //= r
        return o

    def frob(self, j=1):
        """p^j-power Frobenius."""
        return self ** (self.ctx.p ** j)

    def to_int(self):
        """Pack as an integer in base p, constant digit first (least weight)."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.ctx.p + c
        return v

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"<{format_element(self)} in {self.ctx.name}>"


class FieldCtx:
    """GF(p^n) with deterministic modulus and generator; cached singleton."""

    __slots__ = ("p", "n", "order", "modulus", "_red", "_zero", "_one",
                 "_gen", "_factors", "_baby", "__weakref__")

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.order = p ** n
        self.modulus = modulus
        # reduction rows: T^(n+j) mod modulus for j = 0..n-2
        red = []
        base = _pfmod(p, (0,) * n + (1,), modulus)
        row = base
        for _ in range(max(0, n - 1)):
            red.append(tuple(row) + (0,) * (n - len(row)))
            row = _pfmod(p, _pfmul(p, row, (0, 1)), modulus)
        self._red = tuple(red)
        self._zero = FieldElem(self, (0,) * n)
        self._one = FieldElem(self, (1,) + (0,) * (n - 1))
        self._gen = None
        self._factors = None
        self._baby = None

    # -- context identity ---------------------------------------------------

    @property
    def name(self):
        return f"GF({self.p})" if self.n == 1 else f"GF({self.p}^{self.n})"

    def __repr__(self):
        return self.name

    # -- element constructors ----------------------------------------------

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def elem(self, value):
        """Element from an int (constant) or a coefficient sequence."""
        if isinstance(value, FieldElem):
            if value.ctx is not self:
                raise CtxMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.n - 1))
        t = tuple(int(c) % self.p for c in value)
        if len(t) > self.n:
            raise ValueError(f"coefficient vector longer than degree {self.n}")
        return FieldElem(self, t + (0,) * (self.n - len(t)))

    def from_int(self, v):
        """Inverse of FieldElem.to_int: base-p digits, least weight first."""
        coeffs = []
        for _ in range(self.n):
            coeffs.append(v % self.p)
            v //= self.p
        return FieldElem(self, tuple(coeffs))

    @property
    def t_class(self):
        """Residue class of T (zero when n = 1, where the modulus is T)."""
        if self.n == 1:
            return self._zero
        return FieldElem(self, (0, 1) + (0,) * (self.n - 2))

    def iter_elements(self):
        """All field elements in lex order of coefficient vectors."""
        for v in range(self.order):
            yield self.from_int(_lex_to_packed(self, v))

    # -- tuple-level arithmetic ---------------------------------------------

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, n = self.p, self.n
        if n == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = conv[:n]
        for j in range(n - 1):
            c = conv[n + j]
            if c:
                row = self._red[j]
                for i in range(n):
                    out[i] += c * row[i]
        return tuple(c % p for c in out)

    def _inv(self, a):
        if not any(a):
            raise DivisionByZero(f"division by zero in {self.name}")
        p = self.p
        if self.n == 1:
            return (pow(a[0], -1, p),)
        d, u, _ = _pfxgcd(p, _pftrim(a), self.modulus)
        if d != (1,):
            raise DivisionByZero("element not invertible; modulus not irreducible?")
        u = _pfmod(p, u, self.modulus)
        return tuple(u) + (0,) * (self.n - len(u))

    def _pow(self, a, e):
        result = self._one.coeffs
        base = a
        while e:
            if e & 1:
                result = self._mul(result, base)
            base = self._mul(base, base)
            e >>= 1
        return result

    # -- deterministic generator -------------------------------------------

    def group_factors(self):
        if self._factors is None:
            self._factors = tuple(sorted(factorize(self.order - 1)))
        return self._factors

    @property
    def generator(self):
        """Least element of full multiplicative order; computed lazily."""
        if self._gen is None:
            target = self.order - 1
            for e in self.iter_elements():
                if e.is_zero():
                    continue
                if e.order() == target:
                    self._gen = e
                    break
        return self._gen

    # -- discrete logs (baby-step giant-step on the fixed generator) --------

    def dlog(self, w):
        """Discrete log of w base ``generator``; ZeroElement for 0."""
        if w.is_zero():
            raise ZeroElement("0 has no discrete log")
        order = self.order - 1
        if self._baby is None:
            m = isqrt(order - 1) + 1 if order > 1 else 1
            baby = {}
            acc = self.one
            for j in range(m):
                baby.setdefault(acc.coeffs, j)
                acc = acc * self.generator
            self._baby = (m, baby, self.generator ** (-m))
        m, baby, giant = self._baby
        acc = w
        for i in range(m + 1):
            j = baby.get(acc.coeffs)
            if j is not None:
                return (i * m + j) % order
            acc = acc * giant
        raise ArithmeticError("dlog failed; generator not primitive?")

    def nth_roots(self, w, k):
        """All y with y^k = w, sorted in lex order of coefficient vectors."""
        if w.is_zero():
            return [self.zero]
        order = self.order - 1
        from math import gcd
        d = gcd(k, order)
        ell = self.dlog(w)
        if ell % d:
            return []
        step = order // d
        x0 = (ell // d) * pow(k // d, -1, step) % step
        roots = [self.generator ** (x0 + t * step) for t in range(d)]
        return sorted(roots, key=lambda e: e.coeffs)


def _lex_to_packed(ctx, v):
    """Map a lex rank (c_0 most significant) to the packed base-p integer."""
    digits = []
    for _ in range(ctx.n):
        digits.append(v % ctx.p)
        v //= ctx.p
    # digits are (c_{n-1}, ..., c_0); packed wants c_0 at least weight
    packed = 0
    for c in digits:
        packed = packed * ctx.p + c
    return packed


@functools.lru_cache(maxsize=None)
def _field_ctx(p, n, cap):
    if not isinstance(p, int) or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** n > cap:
        raise TooLarge(f"GF({p}^{n}) exceeds the size cap {cap}")
    return FieldCtx(p, n, _least_irreducible(p, n))


def create_field(p, n=1):
    """GF(p^n) context; deterministic and cached.  Caps at p^n <= 2^20."""
    return _field_ctx(p, n, ORDER_CAP)


def _big_field(p, n):
    """Internal constructor for the counting lane; cap 2^22."""
    return _field_ctx(p, n, _INTERNAL_ORDER_CAP)


def field_from_order(q):
    """GF(q) for a prime power q, factoring q as p^n."""
    fs = factorize(q)
    if len(fs) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, n),) = fs.items()
    return create_field(p, n)


# ---------------------------------------------------------------------------
# Embeddings

@functools.lru_cache(maxsize=None)
def _embed_powers(src, tgt):
    if tgt.p != src.p:
        raise NoEmbedding(f"different characteristic: {src.name} vs {tgt.name}")
    if tgt.n % src.n:
        raise NoEmbedding(f"{src.n} does not divide {tgt.n}")
    # least root of the source modulus in the target, lex order
    root = None
    for e in tgt.iter_elements():
        acc = tgt.zero
        for coef in reversed(src.modulus):
            acc = acc * e + tgt.elem(coef)
        if acc.is_zero():
            root = e
            break
    if root is None:
        raise NoEmbedding("source modulus has no root in target; impossible "
                          "for compatible degrees")
    powers = [tgt.one]
    for _ in range(src.n - 1):
        powers.append(powers[-1] * root)
    return tuple(powers)


def embed(e, tgt):
    """Canonical embedding GF(p^m) -> GF(p^n) for m | n (identity if same)."""
    src = e.ctx
    if src is tgt:
        return e
    powers = _embed_powers(src, tgt)
    acc = tgt.zero
    for c, w in zip(e.coeffs, powers):
        if c:
            acc = acc + tgt.elem(c) * w
    return acc


def primitive_element(ctx):
    """The context's fixed generator (least element of full order)."""
    return ctx.generator


# ---------------------------------------------------------------------------
# Literal syntax: "2", "g", "g+2", "2*g^3+1"

def format_element(e, symbol="g"):
    if e.ctx.n == 1:
        return str(e.coeffs[0])
    terms = []
    for i in range(e.ctx.n - 1, -1, -1):
        c = e.coeffs[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            var = symbol if i == 1 else f"{symbol}^{i}"
            terms.append(var if c == 1 else f"{c}*{var}")
    return "+".join(terms) if terms else "0"


def parse_element(ctx, s, symbol="g"):
    """Parse the literal syntax; inverse of format_element."""
    text = s.replace(" ", "")
    if not text:
        raise ParseError("empty element literal")
    # normalize leading sign and split into signed terms
    terms = []
    i = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    start = i
    while i <= len(text):
        if i == len(text) or text[i] in "+-":
            if i == start:
                raise ParseError(f"malformed element literal {s!r}")
            terms.append((sign, text[start:i]))
            if i < len(text):
                sign = -1 if text[i] == "-" else 1
            start = i + 1
        i += 1
    coeffs = [0] * ctx.n
    for sgn, term in terms:
        coef, exp = _parse_term(ctx, term, symbol, s)
        if exp >= ctx.n:
            raise ParseError(f"exponent {exp} too large for {ctx.name}")
        coeffs[exp] = (coeffs[exp] + sgn * coef) % ctx.p
    return ctx.elem(coeffs)


def _parse_term(ctx, term, symbol, original):
    if symbol not in term:
        if not term.isdigit():
            raise ParseError(f"bad term {term!r} in {original!r}")
        return int(term), 0
    head, _, tail = term.partition(symbol)
    if head:
        if not head.endswith("*") or not head[:-1].isdigit():
            raise ParseError(f"bad coefficient in term {term!r}")
        coef = int(head[:-1])
    else:
        coef = 1
    if tail:
        if not tail.startswith("^") or not tail[1:].isdigit():
            raise ParseError(f"bad exponent in term {term!r}")
        exp = int(tail[1:])
    else:
        exp = 1
    return coef, exp
