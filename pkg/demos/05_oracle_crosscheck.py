"""Cross-checking the series against a brute-force count.

The super-Molien average and an explicit monomial-basis computation are
two independent routes to the same invariant dimensions.  The brute-force
route builds the induced action on each (exterior degree a) x (polynomial
degree b) piece and computes the joint fixed subspace by exact kernels;
it is only feasible in low dimension and degree, which is exactly what
makes it a trustworthy referee for the fast route.
"""

from twistloop import (CartanType, TwistSpec, WeylPermutationGroup,
                       brute_force_invariant_dims, build_root_system, compute,
                       make_automorphism)
from twistloop.weyl import (fixed_space_stabilizer_perms,
                            restricted_fixed_space_group)

for family, rank, tag in [("A", 2, "identity"), ("A", 3, "flip"),
                          ("D", 4, "triality")]:
    report = compute(TwistSpec(CartanType(family, rank), tag))
    rs = build_root_system(CartanType(family, rank))
    weyl = WeylPermutationGroup(rs)
    if tag == "identity":
        group = weyl.to_matrix_group()
    else:
        aut = make_automorphism(rs, tag)
        stab = fixed_space_stabilizer_perms(weyl, aut.simple_perm)
        group = restricted_fixed_space_group(weyl, aut.simple_perm, stab)
    dims = brute_force_invariant_dims(group, 12)
    agree = all(report.bigraded[key] == value
                for key, value in dims.coefficients.items())
    print(f"{family}{rank} {tag}: group of order {len(group)} in dimension "
          f"{group.dim}; brute-force table matches the series: {agree}")
    row = [(key, value) for key, value in sorted(dims.coefficients.items())][:8]
    print(f"  first invariant dimensions {row}")
