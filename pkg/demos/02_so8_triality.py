"""Triality: twisting SO(8) by its order-three diagram symmetry.

The D4 diagram has a three-fold symmetry.  Twisting the loop group by it
collapses the 24 roots into 12 orbits; on the positive side, three
singletons and three 3-cycles.  The fixed subspace is a plane, the folded
system is G2, and the resulting series is that of the untwisted G2 loop
group: generators in degrees 3, 11 and 4, 12.
"""

from twistloop import CartanType, TwistSpec, compute

for tag in ("triality", "triality2"):
    report = compute(TwistSpec(CartanType("D", 4), tag))
    print(f"--- {tag} ---")
    print(f"folded type: {report.folded_type}")
    print(f"positive-root orbit sizes: {report.positive_orbit_sizes}")
    print(f"orbit criterion: {report.orbit_criterion.orbit_count} orbits vs "
          f"{report.orbit_criterion.folded_root_count} folded roots "
          f"(holds: {report.orbit_criterion.holds})")
    print(f"stabilizer restricted to the plane has order {report.restricted_order}")
    print(f"generators: {report.closed_form.x_degrees} / {report.closed_form.y_degrees}")
    print(f"excluded characteristics: {report.excluded_characteristics}")
    print(f"series: {report.series[:20]} ...")
    print()

a = compute(TwistSpec(CartanType("D", 4), "triality"))
b = compute(TwistSpec(CartanType("D", 4), "triality2"))
print("both order-three twists give the same series:", a.series == b.series)
