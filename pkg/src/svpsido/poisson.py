"""Local functionals on the dual slice and their Poisson structure.

A functional is a finite sum of monomials; every monomial is a Laurent
coefficient in (t, r) times a product of jet variables.  Three classes
are supported, matching the three kinds of displayed brackets:

  * pair class: jets of the two symbol slots, integrated over t and r,
  * loop class: jets of the dt^2 coordinate v, integrated over t only,
  * central class: jets of the central coordinate a, integrated over t.

A single monomial may not mix classes; a functional may sum monomials
of different classes, and every bilinear operation dispatches pairwise.
Integration is the double (or single) residue, so functionals that
differ by a total derivative evaluate identically at every point.

Sign conventions.  The generator functionals are the momentum pairings
F_X(mu) = <mu, embedded X>, and the Hamiltonian field is normalized so
that hamiltonian_vector(F_X) reproduces the coadjoint action rows; the
normalization is frozen against the central generator family.
"""

from __future__ import annotations

from fractions import Fraction

from .halfint import h
from .kacmoody import GDual
from .psido import R, Symbol
from .ring import CoeffFn, GaussRat, Scalar
from .svalgebra import SvElement
from .textio import coeff_str

__all__ = [
    "JetVar",
    "LocalFunctional",
    "jet",
    "total_derivative",
    "variational_derivative",
    "substitute",
    "evaluate",
    "lemma71_functional",
    "poisson_bracket",
    "hamiltonian_vector",
    "n_preservation_check",
]

FIELD_VM2 = "V-2"
FIELD_V0 = "V0"
FIELD_V = "v"
FIELD_A = "a"

_PAIR_FIELDS = (FIELD_VM2, FIELD_V0)
_LOOP_FIELDS = (FIELD_V, FIELD_A)
_ALL_FIELDS = _PAIR_FIELDS + _LOOP_FIELDS


class JetVar:
    """One derivative coordinate dt^i dr^j of a field."""

    __slots__ = ("field", "i", "j")

    def __init__(self, field: str, i: int = 0, j: int = 0):
        if field not in _ALL_FIELDS:
            raise ValueError(f"unknown field {field!r}")
        if i < 0 or j < 0:
            raise ValueError("jet orders are nonnegative")
        if j and field in _LOOP_FIELDS:
            raise ValueError(f"{field} is a loop function, it has no r-jets")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "i", i)
        object.__setattr__(self, "j", j)

    def __setattr__(self, *_):
        raise AttributeError("JetVar is immutable")

    def key(self):
        return (self.field, self.i, self.j)

    def __eq__(self, other):
        return isinstance(other, JetVar) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        out = self.field
        if self.j:
            out = f"dr^{self.j}({out})" if self.j > 1 else f"dr({out})"
        if self.i:
            out = f"dt^{self.i}({out})" if self.i > 1 else f"dt({out})"
        return out

    __repr__ = __str__


def jet(field: str, i: int = 0, j: int = 0) -> JetVar:
    return JetVar(field, i, j)


def _monomial_class(jets) -> str:
    fields = {J.field for J in jets}
    if fields <= set(_PAIR_FIELDS):
        return "pair"
    if fields == {FIELD_V}:
        return "v"
    if fields == {FIELD_A}:
        return "a"
    raise ValueError("a monomial may not mix the loop coordinates with "
                     "the symbol slots or with each other")


def _as_coeff(c) -> CoeffFn:
    if isinstance(c, CoeffFn):
        return c
    return CoeffFn.one().scale(Scalar.of(c))


class LocalFunctional:
    """Finite sum of coefficient-times-jet-product monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict = {}
        if isinstance(terms, dict):
            terms = terms.items()
        for jets, coeff in terms:
            jets = tuple(sorted(jets, key=JetVar.key))
            coeff = _as_coeff(coeff)
            if coeff.is_zero():
                continue
            cls = _monomial_class(jets)
            if cls in ("v", "a") and not coeff.is_t_only():
                raise ValueError("loop-class monomials sit under a single "
                                 "time integral, their coefficient must be "
                                 "space-free")
            acc = merged.get(jets)
            merged[jets] = coeff if acc is None else acc + coeff
        object.__setattr__(self, "terms",
                           {k: v for k, v in merged.items() if not v.is_zero()})

    def __setattr__(self, *_):
        raise AttributeError("LocalFunctional is immutable")

    @staticmethod
    def zero() -> "LocalFunctional":
        return LocalFunctional()

    @staticmethod
    def monomial(coeff, *jets) -> "LocalFunctional":
        return LocalFunctional([(jets, coeff)])

    def is_zero(self) -> bool:
        return not self.terms

    def classes(self) -> set:
        return {_monomial_class(jets) for jets in self.terms}

    def part(self, cls: str) -> "LocalFunctional":
        """The sub-sum of monomials of one class tag."""
        return LocalFunctional([(jets, c) for jets, c in self.terms.items()
                                if _monomial_class(jets) == cls])

    def add(self, other: "LocalFunctional") -> "LocalFunctional":
        out = list(self.terms.items()) + list(other.terms.items())
        return LocalFunctional(out)

    def neg(self) -> "LocalFunctional":
        return LocalFunctional([(jets, -c) for jets, c in self.terms.items()])

    def sub(self, other: "LocalFunctional") -> "LocalFunctional":
        return self.add(other.neg())

    def scale(self, s) -> "LocalFunctional":
        s = s if isinstance(s, Scalar) else Scalar.of(s)
        return LocalFunctional([(jets, c.scale(s))
                                for jets, c in self.terms.items()])

    def __eq__(self, other):
        if not isinstance(other, LocalFunctional):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for jets in sorted(self.terms, key=lambda js: tuple(J.key() for J in js)):
            coeff = self.terms[jets]
            sign = "int int" if _monomial_class(jets) == "pair" else "int"
            body = " * ".join(str(J) for J in jets)
            piece = f"{sign} ({coeff_str(coeff, 'r')})"
            if body:
                piece += f" * {body}"
            parts.append(piece)
        return "  +  ".join(parts)

    __repr__ = __str__


def total_derivative(F: LocalFunctional, var: str) -> LocalFunctional:
    """Total t- or r-derivative; var is "T" or "X" as in CoeffFn.deriv.

    Jets of the loop coordinates are space-free data, so their total
    r-derivative is zero by definition.
    """
    if var not in ("T", "X"):
        raise ValueError("var must be 'T' or 'X'")
    out = []
    for jets, coeff in F.terms.items():
        out.append((jets, coeff.deriv(var)))
        for k, J in enumerate(jets):
            if var == "X":
                if J.field in _LOOP_FIELDS:
                    continue
                bumped = JetVar(J.field, J.i, J.j + 1)
            else:
                bumped = JetVar(J.field, J.i + 1, J.j)
            out.append((jets[:k] + (bumped,) + jets[k + 1:], coeff))
    return LocalFunctional(out)


def _partial(F: LocalFunctional, J: JetVar) -> LocalFunctional:
    """Plain polynomial derivative with respect to one jet variable."""
    out = []
    for jets, coeff in F.terms.items():
        m = jets.count(J)
        if not m:
            continue
        k = jets.index(J)
        out.append((jets[:k] + jets[k + 1:], coeff.scale(Scalar.of(m))))
    return LocalFunctional(out)


def variational_derivative(F: LocalFunctional, field: str) -> LocalFunctional:
    """Euler-Lagrange derivative: sum of (-1)^(i+j) D_t^i D_r^j dF/dJet."""
    if field not in _ALL_FIELDS:
        raise ValueError(f"unknown field {field!r}")
    seen = {J for jets in F.terms for J in jets if J.field == field}
    out = LocalFunctional.zero()
    for J in seen:
        term = _partial(F, J)
        for _ in range(J.i):
            term = total_derivative(term, "T")
        for _ in range(J.j):
            term = total_derivative(term, "X")
        if (J.i + J.j) % 2:
            term = term.neg()
        out = out.add(term)
    return out


def _slot_data(mu: GDual, field: str) -> CoeffFn:
    if field == FIELD_VM2:
        return mu.V.coeff(h(-2))
    if field == FIELD_V0:
        return mu.V.coeff(h(0))
    if field == FIELD_V:
        return mu.v
    return mu.a


def substitute(F: LocalFunctional, mu: GDual) -> CoeffFn:
    """Plug the point's slot data into every jet; no integration."""
    total = CoeffFn.zero()
    for jets, coeff in F.terms.items():
        value = coeff
        for J in jets:
            data = _slot_data(mu, J.field)
            for _ in range(J.i):
                data = data.deriv("T")
            for _ in range(J.j):
                data = data.deriv("X")
            value = value * data
        total = total + value
    return total


def _t_residue(c: CoeffFn) -> Scalar:
    res = c.residue("T")
    return res.terms.get((0, 0), Scalar.zero())


def _double_residue(c: CoeffFn) -> Scalar:
    return _t_residue(c.residue("X"))


def evaluate(F: LocalFunctional, mu: GDual) -> Scalar:
    """Integrate the substituted monomials: double residue for the pair
    class, single time residue for the loop classes.  Jet-free monomials
    count as pair class."""
    total = Scalar.zero()
    for jets, coeff in F.terms.items():
        piece = substitute(LocalFunctional([(jets, coeff)]), mu)
        if _monomial_class(jets) == "pair":
            total = total + _double_residue(piece)
        else:
            total = total + _t_residue(piece)
    return total


# ------------------------------------------------------------- generators

_I_M_QUARTER = Scalar.m_pow(1, GaussRat(0, Fraction(1, 4)))
_M2_TWELFTH = Scalar.m_pow(2, Fraction(1, 12))
_M2_HALF = Scalar.m_pow(2, Fraction(1, 2))
_M2 = Scalar.m_pow(2, 1)
_R = CoeffFn.mono(0, 1)
_R3 = CoeffFn.mono(0, 3)


def lemma71_functional(X: SvElement) -> LocalFunctional:
    """Momentum functional of a symmetry generator: F_X = <mu, I(X)>.

    Written out per component (the time family also feeds the loop
    coordinate, the other two live purely on the symbol slots):

      time f:   -int f v  -  1/2 int int r f' V-2
                -  int int (iM/4 r f'' - M^2/12 r^3 f''') V0
      shift g:  -int int g V-2  +  M^2/2 int int g'' r^2 V0
      phase u:   M^2 int int r u' V0
    """
    out = []
    f, g, u = X.f, X.g, X.h
    if not f.is_zero():
        fd = f.deriv("T")
        fdd = fd.deriv("T")
        fddd = fdd.deriv("T")
        out.append(((jet(FIELD_V),), -f))
        out.append(((jet(FIELD_VM2),), -(_R * fd).scale(Scalar.of(Fraction(1, 2)))))
        out.append(((jet(FIELD_V0),),
                    -((_R * fdd).scale(_I_M_QUARTER) - (_R3 * fddd).scale(_M2_TWELFTH))))
    if not g.is_zero():
        gdd = g.deriv("T").deriv("T")
        out.append(((jet(FIELD_VM2),), -g))
        out.append(((jet(FIELD_V0),), (CoeffFn.mono(0, 2) * gdd).scale(_M2_HALF)))
    if not u.is_zero():
        out.append(((jet(FIELD_V0),), (_R * u.deriv("T")).scale(_M2)))
    return LocalFunctional(out)


# ------------------------------------------------------- bracket and field

def _pair_data(F: LocalFunctional, mu: GDual):
    """Substituted variational derivatives (P, Q) of the pair part."""
    P = substitute(variational_derivative(F, FIELD_VM2), mu)
    Q = substitute(variational_derivative(F, FIELD_V0), mu)
    return P, Q


def _central_scalar(c) -> Scalar:
    return c if isinstance(c, Scalar) else Scalar.of(c)


def poisson_bracket(F: LocalFunctional, G: LocalFunctional,
                    mu: GDual, c) -> Scalar:
    """Evaluate the displayed bracket formulas at the point mu.

    Dispatch is bilinear over the class decomposition; the two loop
    classes do not couple to the pair class except through the loop
    coordinate v, and the central class couples to v alone.
    """
    cs = _central_scalar(c)
    vm2 = mu.V.coeff(h(-2))
    v0 = mu.V.coeff(h(0))
    total = Scalar.zero()

    Fp, Fv, Fa = F.part("pair"), F.part("v"), F.part("a")
    Gp, Gv, Ga = G.part("pair"), G.part("v"), G.part("a")

    if not Fp.is_zero() and not Gp.is_zero():
        Pf, Qf = _pair_data(Fp, mu)
        Pg, Qg = _pair_data(Gp, mu)
        integrand = (vm2 * (Pg.deriv("X") * Pf - Pf.deriv("X") * Pg)
                     + v0 * (Qg * Pf - Pg * Qf).deriv("X")
                     + (mu.a * (Qf.deriv("X") * Pg + Pf.deriv("X") * Qg)).scale(cs))
        total = total + _double_residue(integrand)

    if not Fv.is_zero() and not Gv.is_zero():
        pf = substitute(variational_derivative(Fv, FIELD_V), mu)
        pg = substitute(variational_derivative(Gv, FIELD_V), mu)
        total = total + _t_residue(mu.v * (pf * pg.deriv("T") - pg * pf.deriv("T")))

    for A, B, sign in ((Fv, Gp, 1), (Gv, Fp, -1)):
        if A.is_zero() or B.is_zero():
            continue
        phi = substitute(variational_derivative(A, FIELD_V), mu)
        Pb, Qb = _pair_data(B, mu)
        piece = _double_residue(phi * (vm2 * Pb.deriv("T") + v0 * Qb.deriv("T")))
        total = total + (piece if sign > 0 else -piece)

    for A, B, sign in ((Fv, Ga, 1), (Gv, Fa, -1)):
        if A.is_zero() or B.is_zero():
            continue
        phi = substitute(variational_derivative(A, FIELD_V), mu)
        psi = substitute(variational_derivative(B, FIELD_A), mu)
        piece = _t_residue(mu.a * phi * psi.deriv("T"))
        total = total + (piece if sign > 0 else -piece)

    return total


def hamiltonian_vector(F: LocalFunctional, mu: GDual, c) -> GDual:
    """The point derivative matching the bracket: dG(H_F) = {G, F}."""
    cs = _central_scalar(c)
    vm2 = mu.V.coeff(h(-2))
    v0 = mu.V.coeff(h(0))
    out_v = CoeffFn.zero()
    out_vm2 = CoeffFn.zero()
    out_v0 = CoeffFn.zero()
    out_a = CoeffFn.zero()

    Fp, Fv, Fa = F.part("pair"), F.part("v"), F.part("a")

    if not Fp.is_zero():
        P, Q = _pair_data(Fp, mu)
        out_v = out_v + (vm2 * P.deriv("T") + v0 * Q.deriv("T")).residue("X")
        out_vm2 = out_vm2 + ((vm2 * P.deriv("X")).scale(Scalar.of(2))
                             + vm2.deriv("X") * P
                             - (mu.a * Q.deriv("X")).scale(cs)
                             - v0.deriv("X") * Q)
        out_v0 = out_v0 + (v0.deriv("X") * P - (mu.a * P.deriv("X")).scale(cs))

    if not Fv.is_zero():
        phi = substitute(variational_derivative(Fv, FIELD_V), mu)
        out_v = out_v + (mu.v * phi.deriv("T")).scale(Scalar.of(2)) + mu.v.deriv("T") * phi
        out_vm2 = out_vm2 + (vm2 * phi).deriv("T")
        out_v0 = out_v0 + (v0 * phi).deriv("T")
        out_a = out_a + (mu.a * phi).deriv("T")

    if not Fa.is_zero():
        psi = substitute(variational_derivative(Fa, FIELD_A), mu)
        out_v = out_v + mu.a * psi.deriv("T")

    terms = {}
    if not out_vm2.is_zero():
        terms[h(-2)] = out_vm2
    if not out_v0.is_zero():
        terms[h(0)] = out_v0
    return GDual(v=out_v, V=Symbol(R, terms), a=out_a)


# ----------------------------------------------------- structural criterion

def n_preservation_check(F: LocalFunctional) -> bool:
    """Does the Hamiltonian field of F stay tangent to the invariant
    slice?  Structural form: affine in the deep-slot jets, coefficient
    space powers bounded by one past the jet's r-order, closed in the
    shallow slot; corroborated by probing that the shallow row of the
    field carries no space dependence at slice points."""
    if not F.classes() <= {"pair"}:
        raise ValueError("the criterion applies to pair-class functionals")
    for jets, coeff in F.terms.items():
        deep = [J for J in jets if J.field == FIELD_VM2]
        if not deep:
            continue
        if len(deep) > 1:
            return False
        J = deep[0]
        for (_, xpow) in coeff.terms:
            if xpow < 0 or xpow > J.j + 1:
                return False
        if any(K.field == FIELD_V0 and (K.i or K.j) for K in jets):
            return False

    probes = []
    for vm2 in (CoeffFn.mono(0, 2), CoeffFn.mono(1, 1), CoeffFn.mono(2, 0),
                CoeffFn.mono(0, -1)):
        for v0 in (CoeffFn.one(), CoeffFn.t_pow(1)):
            probes.append(GDual(v=None,
                                V=Symbol(R, {h(-2): vm2, h(0): v0}),
                                a=CoeffFn.one()))
    for mu in probes:
        row = hamiltonian_vector(F, mu, GaussRat(2)).V.coeff(h(0))
        if not row.deriv("X").is_zero():
            return False
    return True
