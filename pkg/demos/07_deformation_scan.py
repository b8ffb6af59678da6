"""
Scanning the transform deformation against the module weights
=============================================================

The non-local transform admits a one-parameter deformation nu.  Each
deformed lift of a time generator moves dual points slightly
differently, and the question is which module weight mu that motion
realizes.  The scan answers it by measurement: it reads the moved
rows through duality pairings alone, solves for mu from a single
curvature coefficient, then demands that every other measured row
match the weight-mu module action exactly.  A grid value either fits
some mu or is reported NO-FIT; nothing is assumed about the map.
"""

from fractions import Fraction

from svpsido.ring import GaussRat
from svpsido.suites import VerifyConfig, nu_scan, report_text

cfg = VerifyConfig()
report = nu_scan(cfg)
print(report_text([report]))

# The measured law on this grid is mu(nu) = nu, and the fit at nu = 0
# is exactly zero, anchoring the undeformed picture.
assert report.ok
assert "  0 -> 0" in report.notes

# The grid is configurable; a requested deformation joins the scan.
extra = nu_scan(VerifyConfig(nu=GaussRat(Fraction(5, 2))))
print("with a requested extra point:")
for line in extra.notes:
    print(" ", line)
