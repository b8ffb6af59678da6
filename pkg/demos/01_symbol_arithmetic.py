"""
Exact arithmetic with truncated symbols
=======================================

A symbol is a finite Laurent sum  sum_k c_k(t, x) d^k  with half-integer
orders k and exact Gaussian-rational coefficients.  Products follow the
generalized Leibniz rule.  When the expansion terminates the result is
tagged exact; when it does not, the result carries an explicit validity
floor and every later computation propagates that trust window.
"""

from svpsido.halfint import h
from svpsido.psido import R, XI, Symbol, adler_trace, sym_bracket, sym_mul
from svpsido.ring import CoeffFn
from svpsido.textio import coeff_str, symbol_str

# Two symbols on the space side: A = r^2 d, B = r^-1 d^-1.
A = Symbol.monomial(R, h(1), CoeffFn.x_pow(2))
B = Symbol.monomial(R, h(-1), CoeffFn.x_pow(-1))
print("A      =", symbol_str(A))
print("B      =", symbol_str(B))

# Both Leibniz tails terminate here, so everything below stays exact.
print("A B    =", symbol_str(sym_mul(A, B)))
print("B A    =", symbol_str(sym_mul(B, A)))
print("[A, B] =", symbol_str(sym_bracket(A, B)))
print()

# The trace reads the space residue of the order -1 coefficient.  It is
# 1 on B (residue of r^-1) and vanishes on any commutator.
print("Tr(B)      =", coeff_str(adler_trace(B)))
d = Symbol.monomial(R, h(1), CoeffFn.one())
print("Tr([d, B]) =", coeff_str(adler_trace(sym_bracket(d, B))))
assert adler_trace(sym_bracket(d, B)).is_zero()
print()

# Half-integer orders open the door to genuinely infinite expansions.
# d^(1/2) against xi^-1 never terminates; requesting the product at
# floor -3 keeps the four orders above the floor and tags the window.
half = Symbol.monomial(XI, h("1/2"), CoeffFn.one())
f = Symbol.function(XI, CoeffFn.x_pow(-1))
prod = sym_mul(half, f, h(-3))
print("d^(1/2) xi^-1 =", symbol_str(prod))
assert prod.floor == h(-3)

# Tightening the floor is cheap; the coefficients never change, only
# how far down the expansion is carried.
print("same, floor -1:", symbol_str(sym_mul(half, f, h(-1))))
