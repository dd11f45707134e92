"""Tour of the field layer: construction, quadratic character, C_ij classes.

Run:  python3 demos/01_field_tour.py
"""

from nhsbox import build_field

# A prime field.  Element codes are just residues mod p.
f7 = build_field(7)
print("F_7:", f7)
print("  squares:", [x for x in range(1, 7) if f7.eta(x) == 1])
print("  eta(-1) =", f7.eta(f7.neg(1)), "(always -1 when q = 3 mod 4)")
print("  sqrt(2) =", f7.sqrt(2), " sqrt(3) =", f7.sqrt(3), "(non-square -> None)")

# An extension field.  The modulus is the lexicographically smallest monic
# irreducible (constant coefficient compared first), so runs reproduce.
f27 = build_field(3, 3)
print("\nF_27:", f27)
print("  generator code:", f27.generator)
g = f27.generator
orders = {g: 26}
print("  g^13 =", f27.pow(g, 13), "(not 1: g has full order)")

# The C_ij partition classifies x by the character pair (eta(x), eta(x+1)).
for field in (f7, f27):
    part = field.cij_partition()
    print(f"\nC_ij counts for q={field.q}:", part.counts)
    print("  closed forms: (q-3)/4 =", (field.q - 3) // 4, " (q+1)/4 =", (field.q + 1) // 4)

# Everything downstream is representation-invariant: a different modulus
# gives the same counts (and the same spectra).
alt = build_field(3, 3, modulus=(2, 2, 0, 1))
print("\nF_27 with modulus", alt.modulus, "->", alt.cij_partition().counts)
