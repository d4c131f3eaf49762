#!/usr/bin/env python3
"""The constructive side: quasi-independent sets beating the mesh bound.

Any Sidon set meets a k-generator unit mesh in at most C k log(1+k)
points.  The construction below shows this is sharp up to the constant:
level-nu sign matrices are contracted onto the integers through a rapidly
dissociated base, and block nu lands N_nu = 2^{nu-1}(2+nu) elements inside
a mesh with 2^nu generators, beating (1/4) k log2 k for every k.
"""

from rieszprod import (
    IntVectorSet,
    Mesh,
    build_dissociated_base,
    build_lambda,
    build_qi_matrix,
    mesh_intersection,
    qi_check_bruteforce,
    qi_check_mitm,
    sidon_lower_estimate,
    sidon_union_bound,
    verify_mesh_bound,
)

print("=" * 64)
print("checkers: exhaustive scan vs meet-in-the-middle")
print("=" * 64)
for values in ([1, 2, 3], [3, 4, 5], [3, 4, 5, 12], [2 ** j for j in range(9)]):
    vset = IntVectorSet.from_integers(values)
    brute = qi_check_bruteforce(vset)
    mitm = qi_check_mitm(vset)
    assert brute.quasi_independent == mitm.quasi_independent
    tag = "quasi-independent" if brute.quasi_independent else \
        f"relation {brute.witness.signs(len(vset))}"
    print(f"  {str(values):32s} -> {tag}")

print()
print("level matrices (columns live in {-1,0,1}^(2^nu) and are q.i.):")
for nu in (1, 2, 3):
    m = build_qi_matrix(nu)
    print(f"  level {nu}: {2 ** nu} x {m.column_count} "
          f"(closed form 2^{nu - 1}(2+{nu}) = {m.column_count})")
print("  level 1 matrix rows:", build_qi_matrix(1).rows)

print()
print("dissociated base (greedy growth, exact integers):")
base = build_dissociated_base(4)
print("  first eight values:", base.beta[:8])
print(f"  value at index 31 needs {base.value(31).bit_length()} bits")

print()
print("contraction to the integers (3 levels):")
lam = build_lambda(3)
print(f"  {len(lam)} elements; block sizes "
      f"{[len(lam.block_values(nu)) for nu in (1, 2, 3)]}")
print(f"  block 1 values: {lam.block_values(1)}")
prefix = IntVectorSet.from_integers(lam.prefix(2))
print(f"  11-element prefix exhaustively quasi-independent: "
      f"{qi_check_bruteforce(prefix).quasi_independent}")

print()
print("=" * 64)
print("mesh intersection counts vs (1/4) k log2 k")
print("=" * 64)
print("  nu   k     count   (1/4) k log2 k")
for nu in (2, 3, 4):
    report = verify_mesh_bound(nu)
    for record in report.records[:: max(1, len(report.records) // 3)]:
        print(f"  {nu:2d}  {record.k:3d}   {record.count:5d}   "
              f"{record.quarter_bound:8.2f}   {'ok' if record.passed else 'FAIL'}")
    assert report.all_passed

print()
print("a block mesh in detail (level 2: generators are the 4 base values):")
mesh = Mesh.unit_box(build_dissociated_base(2).block(2))
lam2 = build_lambda(2)
result = mesh_intersection(lam2, mesh)
print(f"  count = {result.count} (= N_2), members = block 2 exactly: "
      f"{sorted(result.members) == sorted(lam2.block_values(2))}")

print()
print("=" * 64)
print("Sidon constants")
print("=" * 64)
print("  union bound 3 sqrt(3) k sqrt(2k-1):")
for k in (1, 2, 3):
    print(f"    k={k}: {sidon_union_bound(k):.4f}")
print(f"  (k=1 is about 5.196; the sharper known constant is 4.27)")
print()
print("  certified lower estimates (seeded search, grid-certified):")
for values in ([5], [1, 4, 16, 64], [3, 4, 5]):
    est = sidon_lower_estimate(values, trials=40, seed=7)
    print(f"    {str(values):20s} observed {est.grid_ratio:.4f}  "
          f"certified {est.lower_bound:.4f}  (factor {est.factor:.4f})")
print("  every certified value sits below the k=1 union bound, as it must")
