"""Reduced forms, class numbers and Hilbert class polynomials for a few D.

Run: python demos/class_polynomials.py
"""
from cartan_sieve.classpoly import class_polynomial, r_d
from cartan_sieve.intpoly import resultant
from cartan_sieve.quadforms import class_number, discriminant_table, reduced_forms

for d in (-23, -47, -87):
    forms = [(f.a, f.b, f.c) for f in reduced_forms(d)]
    print(f"D = {d}: h = {class_number(d)}, forms {forms}")

table = discriminant_table(4)
print("fundamental discriminants by class number:",
      {h: len(ds) for h, ds in table.items()})

H = class_polynomial(-23)
print("H_-23 (low degree first):", H.poly.coeffs, f"[{H.precision_used} bits]")

# H_D and H_{c^2 D} share no root, so their resultant is a nonzero integer
res = resultant(class_polynomial(-7).poly, class_polynomial(-28).poly)
print("Res(H_-7, H_-28) =", res)

# the gcd over c = 2..7 is what the sieve factors
for d in (-3, -4, -7, -23):
    print(f"r_D for D = {d}: {r_d(d)}")
