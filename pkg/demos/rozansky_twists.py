"""Hochschild homology of tangle bimodules against Khovanov homology of twisted closures.

    python3 demos/rozansky_twists.py
"""
from branchedarc.arc import identity_word, kh_link, parse_word
from branchedarc.cli import grid
from branchedarc.hh import compare_twist, fulltwist_kh, rozansky

print("Kh of a few closed words")
for w in ["cup(1) cap(1)", "x(1) x(1)", "x(1) x(1) x(1)"]:
    print(f"\n{w}\n{grid(kh_link(w))}")

print("\nHH of H_1 as a bimodule over itself, degrees -6..0")
print(grid(rozansky(identity_word(1), -6, 0)))

for word in ["", "x(1)"]:
    T = parse_word(word, width=2) if word else identity_word(1)
    for k in (1, 2, 3, 4):
        r = compare_twist(T, k, -8, 2)
        print(f"tangle {word or 'id'}, k={k}: a(k)={r['a']}, agree on {r['range']}: {r['agree']}")

print("\nbelow a(k) they part ways; k=2 for the identity:")
ft = fulltwist_kh(identity_word(1), 2)["dims"]
print(grid({key: n for key, n in ft.items() if key[0] >= -4}))
