"""Coarse (t, h) map of spectral statistics, scar outliers, and confinement.

Scans a 10 x 10 grid at L = 10, classifying each point by the mean gap
ratio (chaotic vs regular) and the relative entanglement of the lowest-
entropy mid-spectrum eigenstate (scar outlier present or not), plus a
confinement label from the staggered structure factor of the ground
state. Prints an ASCII map -- QMBS candidates ('S') should only appear on
the deconfined side, which is the consistency property the full-resolution
scan asserts.
"""

from scarchain.scan import default_values, scan_grid

L = 10
values = default_values(step=0.1)
points = scan_grid(values, values, L=L)

glyph = {"QMBS-possible": "S", "chaotic-no-scars": ".",
         "nonergodic-high-S": "r", "mixed": "m"}

rows = {}
for p in points:
    rows.setdefault(p.h, {})[p.t] = p

print(f"L = {L}; S=QMBS-possible  .=chaotic-no-scars  r=regular  m=mixed")
print("confined (CC) points shown uppercase ('#' for confined chaotic)\n")
print("  h\\t " + " ".join(f"{t:4.1f}" for t in values))
for h in sorted(rows, reverse=True):
    cells = []
    for t in values:
        p = rows[h][t]
        c = glyph[p.label]
        cells.append((c.upper() if c.isalpha() else "#") if p.confinement == "CC" else c)
    print(f"{h:5.2f}  " + "    ".join(cells))

bad = [(p.t, p.h) for p in points
       if p.label == "QMBS-possible" and p.confinement == "CC"]
print(f"\nQMBS-possible points inside the confined region: {bad or 'none'}")
