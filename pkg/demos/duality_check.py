"""Spectral check of the gauge-theory / spin-chain duality.

Builds the Z2-gauged Kitaev ring on L = 4 matter sites (4^L-dimensional
Hilbert space of fermions + links), projects onto the physical Gauss-law
sector, and compares the resulting spectrum with the two
boundary-condition sectors of the dual mixed-field Ising chain. The match
is exact up to roundoff for any couplings; the flux/fermion-parity
bookkeeping is printed alongside.
"""

from scarchain.gauge import gauss_projector, gauss_sector_basis, validate_duality
from scarchain.hamiltonian import ModelParams

L = 4

B = gauss_sector_basis(L)
P = gauss_projector(L)
print(f"L = {L}: full gauge Hilbert space 4^L = {4 ** L}, "
      f"Gauss sector dim = {B.shape[1]} (= 2^L)")
print(f"projector trace = {P.trace():.1f}\n")

for t, h in ((0.3, 0.7), (1.0, 0.2), (0.05, 0.05)):
    report = validate_duality(ModelParams(t=t, h=h), L, tol=1e-10)
    status = "MATCH" if report.matched else "MISMATCH"
    print(f"(t, h) = ({t:4}, {h:4}):  {status}   "
          f"max gap mismatch {report.max_gap_mismatch:.2e}")
    print(f"    {report.sector_bookkeeping}")
