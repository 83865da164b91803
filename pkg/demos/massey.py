"""Higher products on H_* h_2 and what they do and do not depend on.

    python3 demos/massey.py
"""
from branchedarc import tables
from branchedarc.branched import build_hn
from branchedarc.gf2 import sdr_retract
from branchedarc.transfer import Transfer, massey_cycle, transferred_all, verify_ainf

B = build_hn(2)
R = B.retract
A = tables.A

print("pinned retract: h(f12_2) = f12_3, h(f12_5) = f12_6")
ops = transferred_all(B.E, R, 5)
for n in (3, 4, 5):
    print(f"  m_{n}: {len(ops.nonzero(n))} nonzero entries")
print("\nthe m_3 table")
for args, v in ops.nonzero(3).items():
    print("  m_3(" + ", ".join(f"[{a}]" for a in args) + f") = [{'+'.join(sorted(v))}]")
print("\nA-infinity relations through arity 5:", verify_ainf(ops, 5))

tr = Transfer(B.E, R)
print("\nthe family that never stops")
for k in range(1, 7):
    args = ("f21_1",) + ("f11_3",) * k + (A,)
    print(f"  k={k}: m_{2 + k} = {sorted(tr.m_vec(args))}, q_{1 + k} = {B.name_of(tr.q_vec(args[1:]))}")

seq = ("f21_1", "f11_3", A)
print("\nMassey cycle of", seq, "=", B.name_of(massey_cycle(B.E, R, seq)))

# now let elimination pick the retract
R2 = sdr_retract(B.E.complex())
print("\nmachine retract h:", {B.names[k]: B.name_of(v) for k, v in R2.h.items() if v})
tr2 = Transfer(B.E, R2)
args = [R2.P(R.iota[c]) for c in seq]
print("m_3 of the same cycles:", sorted(tr2.m_vec(args)) or "0")
prod = R.P(B.E.mulv(R.iota["f21_1"], R.iota[A]))
print("but [f21_1][f12_1+f12_3] =", sorted(prod),
      "- so the two answers differ by an element of [f21_1] H + H [f12_1+f12_3]")
