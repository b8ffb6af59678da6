"""
The non-local transform between the two calculi
===============================================

The engine carries two symbol algebras: a half-order calculus in xi
and a space-side calculus in r.  A non-local algebra morphism maps the
first onto the second, doubling every order on the way (its image of
d_xi is d_r^2).  This script walks its images, the round trips, the
Euler-grading intertwining, and the trace pullback factor.
"""

from svpsido.halfint import h
from svpsido.psido import XI, Symbol, adler_trace, eq_trusted, sym_mul
from svpsido.ring import CoeffFn
from svpsido.textio import coeff_str, symbol_str
from svpsido.transforms import theta, theta_inv

xi = Symbol.function(XI, CoeffFn.x_pow(1))
dxi = Symbol.monomial(XI, h(1), CoeffFn.one())

# Images of the generators.  The position variable picks up a d^-1,
# which is what makes the transform non-local.
print("theta(xi)    =", symbol_str(theta(xi)))
print("theta(d_xi)  =", symbol_str(theta(dxi)))

# The Euler field xi d_xi maps to half the space-side Euler field,
# consistent with the doubling of orders.
euler = sym_mul(xi, dxi)
print("theta(xi d)  =", symbol_str(theta(euler)))
print()

# Multiplicativity on a terminating pair, checked exactly.
lhs = theta(sym_mul(euler, xi))
rhs = sym_mul(theta(euler), theta(xi))
assert lhs == rhs
print("theta(E xi) == theta(E) theta(xi):", lhs == rhs)

# Images of monomials are finite, but a product of two images can
# still grow an infinite Leibniz tail.  The identity then holds on a
# floored window; orders double under the map, so take the floor twice
# as deep as the source working floor.
F = h(-2)
B = Symbol.monomial(XI, h("1/2"), CoeffFn.x_pow(-2))
lhs = theta(sym_mul(xi, B))  # the source product is a single monomial
rhs = sym_mul(theta(xi), theta(B), h(F.twice))
assert eq_trusted(lhs, rhs)
print("image product, floored window:", symbol_str(rhs))
print()

# Round trips restore the original symbol exactly.
D = Symbol.monomial(XI, h(-1), CoeffFn.x_pow(3))
back = theta_inv(theta(D))
print("round trip of", symbol_str(D), "->", symbol_str(back))
assert back == D

# Trace pullback: the trace of an image is twice the source residue,
# and only the order -1 slot of the source contributes.
a = CoeffFn.x_pow(-1)
img = theta(Symbol.monomial(XI, h(-1), a), h(-4))
print("Tr(theta(xi^-1 d^-1)) =", coeff_str(adler_trace(img)), " (source residue 1)")
