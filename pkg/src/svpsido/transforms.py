"""The non-local transform between momentum symbols and space symbols,
its inverse, the loop-parameter shift, and the generator factory.

Conventions fixed here once:

* Momentum symbols (var XI) may carry half-integer orders; the transform
  doubles orders, so images land on the integer grid of space symbols
  (var R) and vice versa.
* A mixed monomial is kept normal-ordered with all momentum powers to the
  left of derivative powers; the transform maps xi^k and d_xi^kappa
  separately and composes in that fixed order.
* The deformed generator image is xi -> 1/2 r d_r^-1 + nu d_r^-2.  At
  nu = 0 every monomial image is a finite composition, hence exact; the
  deformed inverse-power images are genuine series and demand a floor.
* The loop shift substitutes xi -> xi + (i/2M) t.  On inverse powers it
  produces the ascending series in xi cut at x-degree `depth` inclusive;
  downstream floors account for the cut via the order-doubling rule
  (a missing xi^m at order kappa could contribute from space order
  2*kappa - m downward, never higher).

The composite theta_t (shift, then transform) therefore accepts floored
inputs: a missing momentum order kappa' only pollutes space orders
<= 2*kappa' - 1, because after the shift all momentum coefficients are
polynomial.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .halfint import EXACT, HalfInt, h, hmax
from .psido import R, XI, Symbol, binom_half, cap_order, sym_add, sym_mul, sym_scale
from .ring import (
    CoeffFn,
    GR_ZERO,
    GaussRat,
    I_HALF_OVER_M,
    I_M,
    MINUS_2I_M,
    Scalar,
)
from .svalgebra import SvElement

__all__ = [
    "ThetaImageCache",
    "theta",
    "theta_inv",
    "time_shift",
    "time_shift_inverse",
    "time_shift_symbol",
    "theta_t",
    "x_generator",
    "schrodinger_invariance_defect",
    "j_map",
    "default_depth",
]


def default_depth(req_floor) -> int:
    """Shift-series depth that saturates a truncation floor."""
    if req_floor is EXACT or req_floor is None:
        return 8
    return abs(h(req_floor).twice) + 4


# ---------------------------------------------------------------- image cache


class ThetaImageCache:
    """Memoized images of xi^k (k in Z) under one fixed deformation.

    Entries keep the deepest floor computed so far; a shallower request is
    served from the stored symbol directly (extra low-order terms are
    sound, the floor annotation guarantees more than asked).  Fills are
    serialized by a lock so suites can share one instance across workers.
    """

    def __init__(self, nu: GaussRat = GR_ZERO):
        self.nu = nu
        self._memo: dict = {}
        self._lock = threading.Lock()
        self._pos_base = Symbol(
            R,
            {
                h(-1): CoeffFn.x_pow(1, Fraction(1, 2)),
                h(-2): CoeffFn.const(Scalar.of(nu)),
            },
        )

    def _neg_base(self, req_floor):
        """Image of xi^-1: 2 d_r o (sum over the deformation tail) o r^-1."""
        if self.nu.is_zero():
            d = Symbol.monomial(R, h(1), CoeffFn.const(2))
            return sym_mul(d, Symbol.function(R, CoeffFn.x_pow(-1)))
        if req_floor is EXACT:
            raise ValueError("deformed inverse image is a series; give a floor")
        rinv_dinv = sym_mul(
            Symbol.function(R, CoeffFn.x_pow(-1)),
            Symbol.monomial(R, h(-1), CoeffFn.one()),
            req_floor - 1,
        )
        total = Symbol.function(R, CoeffFn.one())
        power = total
        factor = Scalar.of(GaussRat(-2) * self.nu)
        k = 1
        while True:
            power = sym_mul(power, rinv_dinv, req_floor - 1)
            scaled = sym_scale(power, factor ** k)
            if scaled.is_zero() or (
                scaled.top() is not None and scaled.top() < req_floor - 1
            ):
                break
            total = sym_add(total, scaled)
            k += 1
        d = Symbol.monomial(R, h(1), CoeffFn.const(2))
        out = sym_mul(d, sym_mul(total, Symbol.function(R, CoeffFn.x_pow(-1)), req_floor - 1), req_floor)
        return out

    def image(self, k: int, req_floor=EXACT) -> Symbol:
        """Image of xi^k, trusted at least down to req_floor."""
        want = h(req_floor) if req_floor is not EXACT else EXACT
        with self._lock:
            entry = self._memo.get(k)
            if entry is not None:
                floor, sym = entry
                if floor is EXACT or (want is not EXACT and floor <= want):
                    return sym
            sym = self._compute(k, want)
            self._memo[k] = (sym.floor, sym)
            return sym

    def _compute(self, k: int, want) -> Symbol:
        if k == 0:
            return Symbol.function(R, CoeffFn.one())
        if k > 0:
            prev = self._inner(k - 1, want)
            return sym_mul(prev, self._pos_base)
        # negative powers: deepen the request so that left-composition with
        # the order-(+1) inverse base cannot expose untrusted orders
        need = want if want is EXACT else want - 1
        if not self.nu.is_zero() and want is EXACT:
            raise ValueError("deformed inverse image is a series; give a floor")
        base = self._neg_base(want)
        prev = self._inner(k + 1, need)
        out = sym_mul(prev, base, want)
        return out

    def _inner(self, k: int, want):
        entry = self._memo.get(k)
        if entry is not None:
            floor, sym = entry
            if floor is EXACT or (want is not EXACT and floor <= want):
                return sym
        sym = self._compute(k, want)
        self._memo[k] = (sym.floor, sym)
        return sym


_forward_caches: dict = {}
_forward_lock = threading.Lock()


def _forward_cache(nu: GaussRat) -> ThetaImageCache:
    key = (nu.re, nu.im)
    with _forward_lock:
        cache = _forward_caches.get(key)
        if cache is None:
            cache = ThetaImageCache(nu)
            _forward_caches[key] = cache
        return cache


# ---------------------------------------------------------------- forward map


def _at_requested_floor(D: Symbol, req) -> Symbol:
    """Cut a floored result back to the requested window.

    Cached generator images may be deeper than asked; answers must not
    depend on what earlier calls warmed, so the extra depth is dropped.
    """
    if req is EXACT or D.floor is EXACT or D.floor >= req:
        return D
    return Symbol(D.var, {k: c for k, c in D.terms.items() if k >= req}, req)


def _shift_orders(D: Symbol, delta: HalfInt) -> Symbol:
    """Right-compose with a pure derivative power: orders translate."""
    floor = D.floor if D.floor is EXACT else D.floor + delta
    return Symbol(D.var, {k + delta: c for k, c in D.terms.items()}, floor)


def theta(D: Symbol, req_floor=None, nu: GaussRat = GR_ZERO, cache=None) -> Symbol:
    """Map a momentum symbol to a space symbol, generator by generator.

    The input must be exact: a truncated momentum symbol with unknown
    Laurent tails would map onto unboundedly high space orders (inverse
    momentum powers climb), so no honest output floor would exist.  Use
    theta_t for the shifted pipeline, which restores polynomiality first.
    """
    if D.var != XI:
        raise ValueError("theta expects a momentum symbol")
    if D.floor is not EXACT:
        raise ValueError("theta needs an exact input; truncated tails are unsound here")
    req = h(req_floor) if req_floor is not None else EXACT
    if cache is None:
        cache = _forward_cache(nu)
    total = Symbol.zero(R)
    for kappa, c in D.terms.items():
        delta = kappa + kappa  # order doubling, stays on the integer grid
        for (p, q), s in c.terms.items():
            img = cache.image(q, req if req is not EXACT else EXACT)
            if img.floor is not EXACT and req is EXACT:
                raise ValueError("deformed inverse image is a series; give a floor")
            term = _shift_orders(img, delta)
            piece = sym_scale(term, CoeffFn.t_pow(p, s))
            total = sym_add(total, piece)
    return _at_requested_floor(total, req)


# ---------------------------------------------------------------- inverse map

_inv_cache_lock = threading.Lock()
_inv_memo: dict = {}


def _inv_image(n: int, want) -> Symbol:
    """Image of r^n under the inverse map, trusted down to want."""
    with _inv_cache_lock:
        return _inv_image_locked(n, want)


def _inv_image_locked(n: int, want) -> Symbol:
    entry = _inv_memo.get(n)
    if entry is not None:
        floor, sym = entry
        if floor is EXACT or (want is not EXACT and floor <= want):
            return sym
    if n == 0:
        sym = Symbol.function(XI, CoeffFn.one())
    elif n > 0:
        base = Symbol.monomial(XI, h("1/2"), CoeffFn.x_pow(1, 2))  # 2 xi d^(1/2)
        prev = _inv_image_locked(n - 1, want)
        sym = sym_mul(prev, base, want)
    else:
        if want is EXACT:
            raise ValueError("inverse image of r^-1 is a series; give a floor")
        base = sym_mul(
            Symbol.monomial(XI, h("-1/2"), CoeffFn.const(Fraction(1, 2))),
            Symbol.function(XI, CoeffFn.x_pow(-1)),
            want - h("1/2"),
        )
        prev = _inv_image_locked(n + 1, want - h("1/2"))
        sym = sym_mul(prev, base, want)
    _inv_memo[n] = (sym.floor, sym)
    return sym


def theta_inv(D: Symbol, req_floor=None) -> Symbol:
    """Inverse transform: d_r -> d_xi^(1/2), r -> 2 xi d_xi^(1/2)."""
    if D.var != R:
        raise ValueError("theta_inv expects a space symbol")
    if D.floor is not EXACT:
        raise ValueError("theta_inv needs an exact input")
    req = h(req_floor) if req_floor is not None else EXACT
    total = Symbol.zero(XI)
    for k, c in D.terms.items():
        delta = HalfInt(k.twice // 2) if k.twice % 2 == 0 else None
        if delta is None:
            raise ValueError("space symbols live on the integer grid")
        for (p, q), s in c.terms.items():
            img = _inv_image(q, req)
            term = _shift_orders(img, delta)
            piece = sym_scale(term, CoeffFn.t_pow(p, s))
            total = sym_add(total, piece)
    return _at_requested_floor(total, req)


# ---------------------------------------------------------------- loop shift


def time_shift(f: CoeffFn, depth: int) -> CoeffFn:
    """Substitute xi -> xi + (i/2M) t into a momentum-only Laurent value.

    Nonnegative powers expand exactly; xi^-k becomes the ascending series
    cut after x-degree `depth` (inclusive).
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if not f.is_x_only():
        raise ValueError("the loop shift applies to momentum-only values")
    out = CoeffFn.zero()
    for (_, q), s in f.terms.items():
        if q >= 0:
            top = q
        else:
            top = depth
        acc = CoeffFn.zero()
        a = HalfInt.of(q)
        for m in range(top + 1):
            cf = binom_half(a, m)
            if cf.is_zero():
                break
            # (i t / 2M)^(q - m) xi^m
            shift_pow = q - m
            coeff = CoeffFn.t_pow(shift_pow, (I_HALF_OVER_M ** shift_pow) * Scalar.of(cf))
            acc = acc + coeff * CoeffFn.x_pow(m)
        out = out + acc.scale(s)
    return out


def time_shift_inverse(g: CoeffFn) -> CoeffFn:
    """Left inverse of the loop shift: take the xi^0 slice at t -> -2iM xi."""
    return g.x_slice(0).t_to_x(MINUS_2I_M)


def time_shift_symbol(D: Symbol, depth: int) -> Symbol:
    """Apply the loop shift to every coefficient of a momentum symbol."""
    if D.var != XI:
        raise ValueError("the loop shift applies to momentum symbols")
    return Symbol(XI, {k: time_shift(c, depth) for k, c in D.terms.items()}, D.floor)


# ---------------------------------------------------------------- composite


def theta_t(E: Symbol, req_floor, nu: GaussRat = GR_ZERO, depth: int | None = None) -> Symbol:
    """Loop shift followed by the transform, with honest floor tracking.

    Accepts floored inputs: after the shift all coefficients are
    polynomial in the momentum variable, so a missing order kappa' can
    only contribute to space orders <= 2*kappa' - 1.  Each coefficient
    whose inverse-power series was cut at `depth` likewise pollutes only
    orders <= 2*kappa - depth - 1.
    """
    if E.var != XI:
        raise ValueError("theta_t expects a momentum symbol")
    req = h(req_floor) if req_floor is not None else EXACT
    if depth is None:
        depth = default_depth(req)
    floor = req
    total = Symbol.zero(R)
    cache = _forward_cache(nu)
    for kappa, c in E.terms.items():
        if not c.is_x_only():
            raise ValueError("loop dependence must enter through the momentum substitution")
        shifted = time_shift(c, depth)
        if (c.min_x_degree() or 0) < 0:
            floor = hmax(floor, kappa + kappa - depth)
        piece = theta(Symbol(XI, {kappa: shifted}), req, nu=nu, cache=cache)
        total = sym_add(total, piece)
    if E.floor is not EXACT:
        floor = hmax(floor, E.floor + E.floor)
    if floor is not EXACT or E.floor is not EXACT:
        cut_happened = any((c.min_x_degree() or 0) < 0 for c in E.terms.values())
        if E.floor is not EXACT or cut_happened:
            total = Symbol(R, total.terms, hmax(total.floor, floor))
    return total


def x_generator(f: CoeffFn, j, req_floor, nu: GaussRat = GR_ZERO, depth: int | None = None) -> Symbol:
    """Generator symbol: transform of the shifted -f(-2iM xi) d_xi^j."""
    if not f.is_t_only():
        raise ValueError("the generator datum is a loop function")
    coeff = -f.t_to_x(MINUS_2I_M)
    E = Symbol(XI, {h(j): coeff})
    return theta_t(E, req_floor, nu=nu, depth=depth)


def schrodinger_invariance_defect(f: CoeffFn, j, req_floor) -> Symbol:
    """Commutator defect of a shifted generator against the free evolution.

    For S = (shifted f(-2iM xi)) d_xi^j the defect coefficient is
    -2iM * dS/dt - dS/dxi, which vanishes identically on full shift
    images.  When f has inverse powers the series is cut at x-degree
    `depth`; exactly the top retained slot is then incomplete, so degrees
    >= depth are masked out before returning.
    """
    if not f.is_t_only():
        raise ValueError("the generator datum is a loop function")
    depth = default_depth(h(req_floor) if req_floor is not None else EXACT)
    c = time_shift(f.t_to_x(MINUS_2I_M), depth)
    defect = c.deriv("T").scale(MINUS_2I_M) - c.deriv("X")
    if (f.t_to_x(MINUS_2I_M).min_x_degree() or 0) < 0:
        defect = defect.drop_x_from(depth)
    return Symbol(XI, {h(j): defect})


# ---------------------------------------------------------------- momentum embed

_MINUS_I_HALF_OVER_M = Scalar.m_pow(-1, GaussRat(0, Fraction(-1, 2)))


def j_map(X: SvElement) -> Symbol:
    """Embed a symmetry element as an exact momentum symbol.

    time part f  ->  -(i/2M) f(-2iM xi) d_xi
    shift part g ->  -g(-2iM xi) d_xi^(1/2)
    phase part h ->  iM h(-2iM xi)
    """
    terms: dict = {}
    if not X.f.is_zero():
        terms[h(1)] = X.f.t_to_x(MINUS_2I_M).scale(_MINUS_I_HALF_OVER_M)
    if not X.g.is_zero():
        terms[h("1/2")] = -X.g.t_to_x(MINUS_2I_M)
    if not X.h.is_zero():
        terms[h(0)] = X.h.t_to_x(MINUS_2I_M).scale(I_M)
    return Symbol(XI, terms)
