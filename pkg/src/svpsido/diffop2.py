"""Honest differential operators in the two variables (t, r).

No truncation here: powers of d_t and d_r are nonnegative integers, so
every composition is a finite double Leibniz sum.  This module is the
independent home of the first-order representation of the symmetry
algebra on wave functions and of the free evolution operator; the
verification suites bracket these against each other without going
through the symbol machinery.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .halfint import h
from .ring import CoeffFn, GaussRat, I_M, MINUS_2I_M, Scalar, _as_scalar
from .svalgebra import SvElement

__all__ = [
    "DiffOp2",
    "dop_mul",
    "dop_bracket",
    "d_pi",
    "free_evolution_op",
    "dop_from_r_symbol",
]


class DiffOp2:
    """Operator sum of c(t, r) * d_t^i * d_r^j terms.

    ``terms`` maps (i, j) with i, j >= 0 to a nonzero CoeffFn.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        clean = {}
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError("derivative powers must be nonnegative")
            if not isinstance(c, CoeffFn):
                c = CoeffFn.const(_as_scalar(c))
            if not c.is_zero():
                clean[(i, j)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp2 is immutable")

    # ---- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "DiffOp2":
        return DiffOp2({})

    @staticmethod
    def function(c) -> "DiffOp2":
        return DiffOp2({(0, 0): c})

    @staticmethod
    def monomial(i: int, j: int, c=1) -> "DiffOp2":
        return DiffOp2({(i, j): c})

    @staticmethod
    def d_t() -> "DiffOp2":
        return DiffOp2({(1, 0): CoeffFn.one()})

    @staticmethod
    def d_r() -> "DiffOp2":
        return DiffOp2({(0, 1): CoeffFn.one()})

    # ---- predicates and access ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int) -> CoeffFn:
        return self.terms.get((i, j), CoeffFn.zero())

    # ---- linear structure -----------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return DiffOp2(out)

    def __neg__(self):
        return DiffOp2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "DiffOp2":
        return DiffOp2({k: c.scale(s) for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOp2):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"DiffOp2({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            from .textio import coeff_str

            ctxt = coeff_str(c, "r")
            ds = []
            if i:
                ds.append("d_t" if i == 1 else f"d_t^{i}")
            if j:
                ds.append("d_r" if j == 1 else f"d_r^{j}")
            if not ds:
                parts.append(ctxt)
            elif ctxt == "1":
                parts.append("*".join(ds))
            elif ctxt == "-1":
                parts.append("-" + "*".join(ds))
            else:
                body = f"({ctxt})" if " " in ctxt else ctxt
                parts.append(body + "*" + "*".join(ds))
        return " + ".join(parts).replace("+ -", "- ")


def dop_mul(A: DiffOp2, B: DiffOp2) -> DiffOp2:
    """Compose A o B by the double Leibniz rule; always exact."""
    out: dict = {}
    for (i, j), c in A.terms.items():
        for (k, l), d in B.terms.items():
            # move d_t^i d_r^j across d: pick how many of each act on it
            for p in range(i + 1):
                dp = d
                for _ in range(p):
                    dp = dp.deriv("T")
                if dp.is_zero():
                    break
                for q in range(j + 1):
                    dq = dp
                    for _ in range(q):
                        dq = dq.deriv("X")
                    if dq.is_zero():
                        break
                    coeff = comb(i, p) * comb(j, q)
                    term = c * dq
                    if coeff != 1:
                        term = term.scale(Scalar.of(coeff))
                    key = (i + k - p, j + l - q)
                    s = out.get(key)
                    s = term if s is None else s + term
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
    return DiffOp2(out)


def dop_bracket(A: DiffOp2, B: DiffOp2) -> DiffOp2:
    return dop_mul(A, B) - dop_mul(B, A)


def free_evolution_op() -> DiffOp2:
    """-2iM*d_t - d_r^2, the operator whose kernel the symmetries preserve."""
    return DiffOp2(
        {(1, 0): CoeffFn.const(MINUS_2I_M), (0, 2): CoeffFn.const(GaussRat(-1))}
    )


def d_pi(mu, X: SvElement) -> DiffOp2:
    """First-order realization of a symmetry element on wave functions.

    From the time part f:   -f d_t - 1/2 f' r d_r + (iM/4) f'' r^2 - mu f'
    From the shift part g:  -g d_r + iM g' r
    From the phase part h:  iM h
    """
    mu = _as_scalar(mu)
    if mu is None:
        raise TypeError("mu must be a scalar")
    f, g, hh = X.f, X.g, X.h
    out = DiffOp2.zero()
    if not f.is_zero():
        df = f.deriv("T")
        ddf = df.deriv("T")
        r2 = CoeffFn.x_pow(2)
        out = out + DiffOp2(
            {
                (1, 0): -f,
                (0, 1): -(df * CoeffFn.x_pow(1)).scale(_HALF),
                (0, 0): (ddf * r2).scale(_QUART_I_M) - df.scale(mu),
            }
        )
    if not g.is_zero():
        dg = g.deriv("T")
        out = out + DiffOp2(
            {(0, 1): -g, (0, 0): (dg * CoeffFn.x_pow(1)).scale(I_M)}
        )
    if not hh.is_zero():
        out = out + DiffOp2({(0, 0): hh.scale(I_M)})
    return out


def dop_from_r_symbol(D) -> DiffOp2:
    """Embed a space-symbol with integer orders >= 0 as a (t, r) operator."""
    out: dict = {}
    for k, c in D.terms.items():
        if not k.is_integer or k < h(0):
            raise ValueError("only differential-part symbols embed")
        out[(0, k.as_int())] = c
    return DiffOp2(out)


_HALF = Scalar.of(Fraction(1, 2))
_QUART_I_M = Scalar.m_pow(1, GaussRat(0, Fraction(1, 4)))  # iM/4
