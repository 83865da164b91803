"""The cube filtration on the Hochschild complex of C_Kh(one crossing).

    python3 demos/spectral_sequence.py      (about 10 s)
"""
from branchedarc.hh import ss_check

r = ss_check("x(1)", (-6, 6))
for p in r.pages:
    print(f"E_{p.r}: total {p.total()}, rank of d_{p.r} = {p.d_rank}")
print("\nE_2 by (filtration, degree):", r.E2)
print("HH of the associated graded, computed on its own:", r.direct)
print("E_inf:", r.Einf)
print("gr of HH:", r.gr_total)
print("\nE_2 = HH(gr), E_inf = gr HH:", r.ok)
