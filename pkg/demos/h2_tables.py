"""Build h_2 from the two type-D fixtures and look at its homology.

    python3 demos/h2_tables.py
"""
from branchedarc import tables
from branchedarc.arc import arc_algebra
from branchedarc.branched import build_hn, check_iso_H2, homology_table

B = build_hn(2)          # validates every reference table on the way
E = B.E

print("h_2: End of the two type-D structures, dim", len(E.basis))
for (i, j), fs in sorted(E.blocks().items()):
    print(f"  Mor({i + 1},{j + 1}):", " ".join(B.names[f] for f in fs))

print("\nnonzero differentials")
for f in E.basis:
    if E.d(f):
        print(f"  d {B.names[f]} = {B.name_of(E.d(f))}")

print("\nhomology per block:", B.homology_dims)
print("Mor(1,2) classes:", [c for c in B.retract.classes if "f12" in c])

# the product on homology, in the pinned class basis
hom = homology_table(B)
w = max(len(c) for c in tables.CLASSES)
print("\nm_2 on H_* h_2 (row . column), zero entries left blank")
print(" " * w + " |", " ".join(c[:5].ljust(5) for c in tables.CLASSES))
for r in tables.CLASSES:
    cells = []
    for c in tables.CLASSES:
        v = hom[r].get(c)
        cells.append(("+".join(v) if v else "")[:5].ljust(5))
    print(r.ljust(w), "|", " ".join(cells))

# same table on the arc-algebra side, through the row-order bijection
H = arc_algebra(2)
print("\nH_2 has", len(H.basis), "basis elements; the bijection pairs")
for c, h in tables.PSI.items():
    print(f"  [{c}] <-> {h}")
print("\ncomparison:", check_iso_H2(B))
