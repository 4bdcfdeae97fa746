"""Automorphisms of the Kummer model and their group structure.

A map is stored as

    v -> (alpha v + beta)/(gamma' v + delta),      y -> f(v) * y^k

with every coefficient in the quadratic extension of the constant field;
each element built here fits in that extension, and comparing the
canonical data then decides equality structurally.  Construction checks
the defining relation

    f^(q-1) * h^k = h o mobius

exactly, so an Aut that exists at all really is an automorphism of the
function field.  make_rho does not guess its matrix: it pushes the
generator of the residue units through x = gamma v - y^(q-1) inside the
curve algebra and reads the fractional-linear shape off the result;
TransportFailure fires if that shape ever fails to emerge.

compose(a, b) applies b first, then a.  Tables produced by closure are
immutable, as are Auts, so orbit and stabilizer queries are safe to run
concurrently once a table exists.
"""

from functools import lru_cache
from math import gcd

from . import gf
from .errors import (
    ClosureOverflow,
    CtxMismatch,
    GenericPlaceUnsupported,
    NonCentralInvolution,
    TransportFailure,
    WrongCharacteristic,
    WrongOrder,
    WrongQ,
)
from .kummer import KummerCurve
from .places import (
    Generic,
    RamFinite,
    RamInfinity,
    RamQuadratic,
    _place_key,
    _validate_place,
    ramified_places,
)
from .polyalg import INFINITY, Poly, RatFunc, format_poly

CLOSURE_CAP = 10000


@lru_cache(maxsize=None)
def _ext_ctx(ctx):
    """The quadratic extension all Aut coefficients are stored in."""
    return gf.create_field(ctx.p, 2 * ctx.n)


@lru_cache(maxsize=None)
def _ext_h(curve):
    return curve.h.embed_into(_ext_ctx(curve.h.ctx))


def _to_ext(value, ext):
    if isinstance(value, int):
        return ext.elem(value)
    if isinstance(value, gf.FieldElem):
        return value if value.ctx is ext else gf.embed(value, ext)
    raise CtxMismatch("matrix entries must be field elements or ints")


def _rf_to_ext(value, ext):
    if isinstance(value, (int, gf.FieldElem)):
        return RatFunc.constant(_to_ext(value, ext))
    if isinstance(value, Poly):
        value = RatFunc.from_poly(value)
    if not isinstance(value, RatFunc):
        raise CtxMismatch("y-multiplier must be a rational function")
    return value if value.ctx is ext else value.embed_into(ext)


def _vstr(num, den):
    top = format_poly(num, var="v")
    if den.is_one():
        return top
    return f"({top})/({format_poly(den, var='v')})"


class Aut:
    """One automorphism in canonical form; immutable and hashable."""

    __slots__ = ("curve", "mobius", "k", "f", "_key")

    def __init__(self, curve, mobius, k, f):
        ext = _ext_ctx(curve.h.ctx)
        q = curve.q
        if not isinstance(k, int) or not 1 <= k <= q - 2:
            raise ValueError(f"exponent k={k} outside 1..{q - 2}")
        if gcd(k, q - 1) != 1:
            raise ValueError(f"exponent k={k} shares a factor with {q - 1}")
        entries = tuple(_to_ext(x, ext) for x in mobius)
        if len(entries) != 4:
            raise ValueError("mobius part needs four entries")
        a_, b_, c_, d_ = entries
        if (a_ * d_ - b_ * c_).is_zero():
            raise ValueError("mobius part is singular")
        lead = next(x for x in entries if not x.is_zero())
        inv = lead.inverse()
        entries = tuple(x * inv for x in entries)
        fe = _rf_to_ext(f, ext)
        if fe.is_zero():
            raise ValueError("y-multiplier must be nonzero")
        self.curve = curve
        self.mobius = entries
        self.k = k
        self.f = fe
        self._key = (tuple(x.to_int() for x in entries), k,
                     tuple(c.to_int() for c in fe.num.coeffs),
                     tuple(c.to_int() for c in fe.den.coeffs))
        if not self._satisfies_law(curve):
            raise ValueError("map violates f^(q-1) * h^k = h o mobius")

    def _satisfies_law(self, curve):
        ext = _ext_ctx(curve.h.ctx)
        if self.f.ctx is not ext or self.mobius[0].ctx is not ext:
            return False
        he = _ext_h(curve)
        a_, b_, c_, d_ = self.mobius
        rhs = he.compose_fractional(Poly(ext, (b_, a_)), Poly(ext, (d_, c_)))
        return self.f ** (curve.q - 1) * he ** self.k == rhs

    @property
    def is_identity(self):
        a_, b_, c_, d_ = self.mobius
        one = a_.ctx.one
        return (a_ == one and b_.is_zero() and c_.is_zero() and d_ == one
                and self.k == 1 and self.f.is_one())

    def __eq__(self, other):
        if not isinstance(other, Aut):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        ext = self.mobius[0].ctx
        a_, b_, c_, d_ = self.mobius
        vpart = _vstr(Poly(ext, (b_, a_)), Poly(ext, (d_, c_)))
        fpart = _vstr(self.f.num, self.f.den)
        if self.f.is_one():
            ystr = "y" if self.k == 1 else f"y^{self.k}"
        else:
            ystr = f"({fpart})*y" + ("" if self.k == 1 else f"^{self.k}")
        return f"v -> {vpart}; y -> {ystr}"

    def __repr__(self):
        return f"<aut {self}>"


def identity(curve):
    return Aut(curve, (1, 0, 0, 1), 1, 1)


def is_automorphism(candidate, curve):
    """Does the candidate satisfy the defining relation for this curve?"""
    return candidate._satisfies_law(curve)


def compose(a, b):
    """a o b: apply b, then a."""
    if a.curve is not b.curve:
        raise CtxMismatch("automorphisms of different curves")
    curve = a.curve
    n = curve.q - 1
    aa, ab, ac, ad = a.mobius
    ba, bb, bc, bd = b.mobius
    # field maps compose contravariantly on the matrix side
    mob = (ba * aa + bb * ac, ba * ab + bb * ad,
           bc * aa + bd * ac, bc * ab + bd * ad)
    kc = (a.k * b.k - 1) % n + 1
    s = (a.k * b.k - kc) // n
    ext = _ext_ctx(curve.h.ctx)
    fc = b.f.compose_fractional(Poly(ext, (ab, aa)), Poly(ext, (ad, ac)))
    fc = fc * a.f ** b.k
    if s:
        fc = fc * _ext_h(curve) ** s
    return Aut(curve, mob, kc, fc)


def invert(a):
    curve = a.curve
    n = curve.q - 1
    aa, ab, ac, ad = a.mobius
    kinv = pow(a.k, -1, n)
    s = (a.k * kinv - 1) // n
    ext = _ext_ctx(curve.h.ctx)
    np_, dp_ = Poly(ext, (-ab, ad)), Poly(ext, (aa, -ac))
    fv = a.f.compose_fractional(np_, dp_) ** (-kinv)
    if s:
        fv = fv * _ext_h(curve).compose_fractional(np_, dp_) ** (-s)
    out = Aut(curve, (ad, -ab, -ac, aa), kinv, fv)
    assert compose(a, out).is_identity and compose(out, a).is_identity
    return out


def _order_of(a, cap=CLOSURE_CAP):
    acc = a
    n = 1
    while not acc.is_identity:
        acc = compose(a, acc)
        n += 1
        if n > cap:
            raise ClosureOverflow(f"no identity power within {cap} steps")
    return n


# -- the concrete generators ------------------------------------------------


def make_rho(curve, model):
    """Transport the unit-group generator to an Aut on (v, y)."""
    if not isinstance(curve, KummerCurve):
        raise CtxMismatch("rho lives on a Kummer curve")
    mod = model.modulus
    if mod.a != curve.a or mod.b != curve.b:
        raise CtxMismatch("curve and torsion model disagree on (a, b)")
    q, ctx = curve.q, curve.ctx
    u = mod.unit_group_generator()
    c0, c1 = u.rep.coeff(0), u.rep.coeff(1)
    v = Poly.gen(ctx)
    # x = gamma v - y^(q-1) inside the curve algebra
    x_sc = curve.scalar(Poly.constant(curve.gamma) * v) - curve.y() ** (q - 1)
    sy = (curve.y() ** q).scale(c1) + (x_sc.scale(c1)
                                       + curve.scalar(c0)) * curve.y()
    if any(sy.coords[i] for i in range(q - 1) if i != 1):
        raise TransportFailure("image of y is not an f(v) multiple of y")
    f = sy.coords[1]
    if not f:
        raise TransportFailure("image of y collapsed to zero")
    sv = (x_sc + sy ** (q - 1)).scale(curve.gamma.inverse())
    if any(sv.coords[i] for i in range(1, q - 1)):
        raise TransportFailure("image of v leaves the rational subfield")
    w = sv.coords[0]
    if w.num.degree > 1 or w.den.degree > 1:
        raise TransportFailure("image of v is not fractional-linear")
    rho = Aut(curve, (w.num.coeff(1), w.num.coeff(0),
                      w.den.coeff(1), w.den.coeff(0)), 1, f)
    assert _order_of(rho) == q * q - 1
    for pl in ramified_places(curve):
        if isinstance(pl, RamQuadratic):
            assert act_on_place(rho, pl) == pl
    return rho


def make_mu(curve):
    """The odd-characteristic involution-like flip v -> -v - a/gamma."""
    if curve.ctx.p == 2:
        raise WrongCharacteristic("mu needs odd characteristic")
    q = curve.q
    ext = _ext_ctx(curve.h.ctx)
    lam = ext.generator ** ((q + 1) // 2)
    assert lam ** (q - 1) == -ext.one
    shift = curve.a * curve.gamma.inverse()
    mu = Aut(curve, (-ext.one, -gf.embed(shift, ext), ext.zero, ext.one),
             1, lam)
    # mu^2 fixes v and rescales y by a generator of the scaling subgroup
    sq = compose(mu, mu)
    assert sq.k == 1 and sq.f.is_constant()
    assert sq.f.num.coeff(0).order() == q - 1
    return mu


def make_omega(curve):
    """The characteristic-two shift v -> v + a/gamma."""
    if curve.ctx.p != 2:
        raise WrongCharacteristic("omega needs characteristic two")
    ext = _ext_ctx(curve.h.ctx)
    shift = curve.a * curve.gamma.inverse()
    w = Aut(curve, (ext.one, gf.embed(shift, ext), ext.zero, ext.one), 1, 1)
    assert compose(w, w).is_identity
    return w


def make_epsilon(curve):
    """The extra order-3 map of the q=3 model y^2 = (v^2+1)/(v^3-v)."""
    if curve.q != 3:
        raise WrongQ("epsilon exists for q = 3 only")
    ctx = curve.ctx
    if not (curve.a.is_zero() and curve.b == ctx.one
            and curve.gamma == ctx.elem(2)):
        raise ValueError("epsilon needs the model y^2 = (v^2+1)/(v^3-v)")
    ext = _ext_ctx(curve.h.ctx)
    i = min((e for e in ext.iter_elements() if e * e == -ext.one),
            key=lambda e: e.to_int())
    c = i * (ext.one - i)
    num = Poly(ext, (-c, ext.zero, c))
    den = Poly(ext, (i, ext.one))
    eps = Aut(curve, (-ext.one, -i, ext.one, -i), 1, RatFunc(num, den))
    assert _order_of(eps) == 3
    return eps


# -- closure and tables -----------------------------------------------------


class GroupTable:
    """Closed set of Auts with its generators; immutable once built."""

    __slots__ = ("elements", "generators", "curve", "_members")

    def __init__(self, elements, generators):
        assert elements, "a table holds at least the identity"
        self.elements = tuple(sorted(elements, key=lambda z: z._key))
        self.generators = tuple(generators)
        self.curve = self.elements[0].curve
        self._members = frozenset(self.elements)
        assert any(z.is_identity for z in self.elements)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return a in self._members

    def multiply(self, a, b):
        z = compose(a, b)
        assert z in self._members, "table is not closed"
        return z

    def __repr__(self):
        return f"<table of {self.order} automorphisms>"


def closure(gens):
    """Breadth-first closure of the generators, capped at CLOSURE_CAP."""
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    curve = gens[0].curve
    for g in gens:
        if g.curve is not curve:
            raise CtxMismatch("generators live on different curves")
    ident = identity(curve)
    elems = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                z = compose(g, x)
                if z not in elems:
                    if len(elems) >= CLOSURE_CAP:
                        raise ClosureOverflow(
                            f"closure exceeded {CLOSURE_CAP} elements")
                    elems[z] = None
                    nxt.append(z)
        frontier = nxt
    # words in the generators; finiteness plus cancellation forces a group
    for z in elems:
        assert is_automorphism(z, curve)
    return GroupTable(tuple(elems), gens)


# -- action on the ramified places ------------------------------------------


def act_on_place(a, place):
    curve = a.curve
    _validate_place(curve, place)
    if isinstance(place, Generic):
        raise GenericPlaceUnsupported(
            "the group action is computed on the ramified places only")
    ext = _ext_ctx(curve.h.ctx)
    aa, ab, ac, ad = a.mobius
    # the inverse matrix moves the coordinate of the place
    ai, bi, ci, di = ad, -ab, -ac, aa
    if isinstance(place, RamInfinity):
        img = INFINITY if ci.is_zero() else ai * ci.inverse()
    else:
        al = place.alpha if isinstance(place, RamFinite) else place.root
        ale = gf.embed(al, ext)
        den = ci * ale + di
        img = INFINITY if den.is_zero() else (ai * ale + bi) * den.inverse()
    if img is INFINITY:
        out = RamInfinity(curve.q)
    elif img.frob(curve.ctx.n) == img:
        base = next(c for c in curve.ctx.iter_elements()
                    if gf.embed(c, ext) == img)
        out = RamFinite(base)
    else:
        out = RamQuadratic(img)
    _validate_place(curve, out)
    return out


def orbits(table):
    """Partition of the ramified places under the table's group."""
    out = []
    seen = set()
    for start in ramified_places(table.curve):
        if start in seen:
            continue
        orb = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for pl in frontier:
                for g in table.generators:
                    img = act_on_place(g, pl)
                    if img not in orb:
                        orb.add(img)
                        nxt.append(img)
            frontier = nxt
        seen |= orb
        out.append(tuple(sorted(orb, key=_place_key)))
    return tuple(out)


def stabilizer(table, place):
    kept = tuple(s for s in table.elements if act_on_place(s, place) == place)
    return GroupTable(kept, kept)


# -- the q = 3 exceptional quotient -----------------------------------------


def quotient_is_pgl23(table):
    """Is table/center the symmetric group on its four 3-Sylows?"""
    if table.curve.q != 3:
        raise WrongQ("the exceptional quotient is a q = 3 statement")
    if table.order != 48:
        raise WrongOrder(f"expected 48 elements, table has {table.order}")
    elems = table.elements
    ident = next(z for z in elems if z.is_identity)
    central = [z for z in elems
               if not z.is_identity and compose(z, z).is_identity
               and all(compose(z, x) == compose(x, z) for x in elems)]
    if len(central) != 1:
        raise NonCentralInvolution(
            f"found {len(central)} central involutions, expected one")
    iota = central[0]

    rep = {}
    for z in elems:
        w = compose(z, iota)
        rep[z] = z if z._key <= w._key else w
    classes = tuple(dict.fromkeys(rep.values()))
    assert len(classes) == 24
    id_rep = rep[ident]

    def qmul(x, y):
        return rep[compose(x, y)]

    def qorder(x):
        acc, m = x, 1
        while acc != id_rep:
            acc = qmul(x, acc)
            m += 1
        return m

    third = [x for x in classes if qorder(x) == 3]
    if len(third) != 8:
        return False
    sylows = {frozenset((id_rep, x, qmul(x, x))) for x in third}
    if len(sylows) != 4:
        return False
    ordered = sorted(sylows, key=lambda sub: sorted(z._key for z in sub))
    perms = set()
    for g in classes:
        gi = invert(g)
        images = []
        for sub in ordered:
            img = frozenset(rep[compose(compose(g, z), gi)] for z in sub)
            if img not in sylows:
                return False
            images.append(ordered.index(img))
        perms.add(tuple(images))
    # conjugation must be faithful: 24 distinct permutations of 4 letters
    return len(perms) == 24


def group_report(curve, model):
    """JSON-ready summary of the computed group and its place action."""
    rho = make_rho(curve, model)
    gens = [rho]
    if curve.ctx.p == 2:
        gens.append(make_omega(curve))
    else:
        gens.append(make_mu(curve))
    if curve.q == 3:
        try:
            gens.append(make_epsilon(curve))
        except ValueError:
            pass  # only the normalized model carries epsilon
    table = closure(gens)
    orbs = orbits(table)
    stabs = {str(pl): stabilizer(table, pl).order
             for pl in ramified_places(curve)}
    q3 = None
    if curve.q == 3 and table.order == 48:
        q3 = quotient_is_pgl23(table)
    return {
        "generators": [str(g) for g in gens],
        "order": table.order,
        "orbit_sizes": [len(o) for o in orbs],
        "stabilizer_orders": stabs,
        "q3_pgl23": q3,
    }
