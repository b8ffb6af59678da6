"""
Central terms on the order-capped quotient
==========================================

Six bilinear functionals live on the quotient of symbols by orders
below -1; each is antisymmetric and satisfies the 2-cocycle identity,
so each one defines a central extension of the bracket.  Values are
time-dependent functions, making the extensions loop-algebra-like
rather than plain scalars.
"""

import itertools

from svpsido.cocycles import CocycleId, cocycle_identity_defect, eval_cocycle
from svpsido.halfint import h
from svpsido.psido import R, Symbol
from svpsido.ring import CoeffFn
from svpsido.textio import coeff_str, symbol_str


def capped(up=None, mid=None, down=None):
    """A symbol with only the three visible slots populated."""
    terms = {}
    for order, c in ((h(1), up), (h(0), mid), (h(-1), down)):
        if c is not None:
            terms[order] = c
    return Symbol(R, terms)


A = capped(up=CoeffFn.mono(1, 3), mid=CoeffFn.mono(0, 2), down=CoeffFn.x_pow(1))
B = capped(up=CoeffFn.x_pow(-1), mid=CoeffFn.x_pow(-2), down=CoeffFn.x_pow(-2))
C = capped(mid=CoeffFn.mono(1, 1))

print("A =", symbol_str(A))
print("B =", symbol_str(B))
print("C =", symbol_str(C))
print()

# Values of all six functionals on the pair (A, B).  Each functional
# reads its own pair of slots; the first pairs a third derivative
# against the top slot, Virasoro-style.
for cid in CocycleId:
    print(f"{cid.name}(A, B) =", coeff_str(eval_cocycle(cid, A, B)))
print()

# Antisymmetry and the cocycle identity, spot-checked here and covered
# exhaustively by the verification suite.
for cid in CocycleId:
    swap = eval_cocycle(cid, B, A)
    assert (eval_cocycle(cid, A, B) + swap).is_zero()
    for X, Y, Z in itertools.permutations((A, B, C), 3):
        assert cocycle_identity_defect(cid, X, Y, Z).is_zero()
print("antisymmetry and the 2-cocycle identity hold on A, B, C")
