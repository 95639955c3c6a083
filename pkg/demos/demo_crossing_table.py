"""Closed-form crossing values: where a node sits exactly at the origin.

For the split linear potential every pair of half-line levels (i, j) picks
out a shear value nu_ij at which the full-line eigenfunction has a node at
x = 0.  This script rebuilds that table from internally computed Airy
zeros, then shows the two structural facts it encodes: near-degeneracy of
the energies within a fixed node count, and the large-index limit where
the energy depends on i and j only through their sum.
"""
from sheared_spectra.analytic import linear_crossings, semiclassical_energy, table_rows

print("crossing table (energies in (hbar^2 kappa^2/m)^(1/3))")
print(f"{'i+j':>4} {'i':>3} {'j':>3} {'nu_ij':>14} {'E_ij':>14}")
for ev in table_rows(11):
    print(f"{ev.i + ev.j:>4} {ev.i:>3} {ev.j:>3} {ev.nu_float:>14.10f} {ev.energy:>14.10f}")

print("\nenergy spread within a family of fixed node count n = i+j-1:")
for total in range(4, 12):
    energies = [linear_crossings(i, total - i).energy for i in range(1, total // 2 + 1)]
    spread = max(energies) - min(energies)
    rel = spread / min(energies)
    print(f"  i+j={total:>2} (n={total - 1:>2}):  spread={spread:.3e}  relative={rel:.3e}")

print("\nlarge-index law (6 pi)^(2/3)/8 (2i+2j-1)^(2/3) versus exact:")
for i, j in [(1, 1), (2, 3), (5, 5), (5, 6)]:
    exact = linear_crossings(i, j).energy
    approx = semiclassical_energy(i, j)
    print(
        f"  (i,j)=({i},{j}): exact={exact:.9f} asymptotic={approx:.9f} "
        f"rel dev={abs(approx - exact) / exact:.2e}"
    )
