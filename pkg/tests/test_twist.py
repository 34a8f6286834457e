from fractions import Fraction

import pytest

from twistloop.exact import mat_vec, rank, vec_add, vec_scale, vector
from twistloop.rootsys import CartanType, build_root_system
from twistloop.twist import (fixed_group_info, fixed_subspace,
                             folded_root_system, make_automorphism,
                             orbit_count_criterion, orbits_on_roots,
                             positive_orbit_sizes, project_roots,
                             wsigma_preserves_folded)
from twistloop.weyl import (WeylPermutationGroup, fixed_space_stabilizer_perms,
                            restricted_fixed_space_group)


def ambient_projection_set(aut):
    """Independent computation of the projected roots as ambient vectors:
    average each root over the automorphism's matrix powers."""
    out = set()
    for v in aut.base.roots:
        total = v
        w = v
        for _ in range(aut.order - 1):
            w = mat_vec(aut.matrix, w)
            total = vec_add(total, w)
        out.add(vec_scale(Fraction(1, aut.order), total))
    return out


class TestMakeAutomorphism:
    def test_identity_any_type(self):
        for fam, rk in [("A", 3), ("B", 2), ("G", 2)]:
            aut = make_automorphism(build_root_system(CartanType(fam, rk)), "identity")
            assert aut.order == 1

    def test_flip_on_a_series(self):
        rs = build_root_system(CartanType("A", 3))
        aut = make_automorphism(rs, "flip")
        assert aut.order == 2
        # paper coordinates: e_i - e_j maps to e_{n+1-j} - e_{n+1-i}
        for v in rs.roots:
            i = v.index(1)
            j = v.index(-1)
            expected = [0] * 4
            expected[3 - j], expected[3 - i] = 1, -1
            assert mat_vec(aut.matrix, v) == tuple(expected)

    def test_triality_has_order_three(self):
        rs = build_root_system(CartanType("D", 4))
        s = make_automorphism(rs, "triality")
        s2 = make_automorphism(rs, "triality2")
        assert s.order == 3 and s2.order == 3
        assert s.simple_perm != s2.simple_perm
        # composing the permutations gives the inverse pair
        comp = tuple(s.simple_perm[i] for i in s2.simple_perm)
        assert comp == (0, 1, 2, 3)

    @pytest.mark.parametrize("family,rank,tag", [("A", 1, "flip"), ("B", 3, "flip"),
                                                 ("C", 4, "flip"), ("F", 4, "flip"),
                                                 ("G", 2, "flip"), ("D", 5, "triality"),
                                                 ("E", 7, "flip"), ("E", 8, "flip")])
    def test_unsupported_specs_rejected(self, family, rank, tag):
        rs = build_root_system(CartanType(family, rank))
        with pytest.raises(ValueError):
            make_automorphism(rs, tag)

    def test_explicit_permutation_validated(self):
        rs = build_root_system(CartanType("A", 4))
        aut = make_automorphism(rs, (3, 2, 1, 0))
        assert aut.tag == "flip"
        with pytest.raises(ValueError):
            make_automorphism(rs, (1, 0, 2, 3))  # breaks the Cartan matrix

    def test_positive_system_preserved(self):
        for fam, rk, tag in [("A", 4, "flip"), ("D", 5, "flip"),
                             ("D", 4, "triality"), ("E", 6, "flip")]:
            rs = build_root_system(CartanType(fam, rk))
            aut = make_automorphism(rs, tag)
            for i, pos in enumerate(rs.positive_mask):
                if pos:
                    assert rs.positive_mask[aut.root_perm[i]]


class TestOrbits:
    def test_identity_singletons(self):
        rs = build_root_system(CartanType("A", 2))
        aut = make_automorphism(rs, "identity")
        assert len(orbits_on_roots(aut)) == 6
        assert all(len(o) == 1 for o in orbits_on_roots(aut))

    def test_triality_positive_orbits(self):
        rs = build_root_system(CartanType("D", 4))
        aut = make_automorphism(rs, "triality")
        assert positive_orbit_sizes(aut) == (1, 1, 1, 3, 3, 3)

    def test_e6_flip_positive_orbits(self):
        rs = build_root_system(CartanType("E", 6))
        aut = make_automorphism(rs, "flip")
        assert len(positive_orbit_sizes(aut)) == 24

    def test_sizes_divide_order_and_cover(self):
        for fam, rk, tag in [("A", 5, "flip"), ("D", 4, "triality"), ("E", 6, "flip")]:
            rs = build_root_system(CartanType(fam, rk))
            aut = make_automorphism(rs, tag)
            orbits = orbits_on_roots(aut)
            assert sum(len(o) for o in orbits) == len(rs.roots)
            assert all(aut.order % len(o) == 0 for o in orbits)


class TestFixedSubspace:
    def test_flip_on_a3_is_the_e_plane(self):
        rs = build_root_system(CartanType("A", 3))
        aut = make_automorphism(rs, "flip")
        basis = fixed_subspace(aut)
        assert basis.dim == 2
        h = Fraction(1, 2)
        e1 = vector([h, 0, 0, -h])
        e2 = vector([0, h, -h, 0])
        # same span as (E1, E2)
        assert rank(basis.basis_vectors + (e1, e2)) == 2

    def test_triality_plane(self):
        rs = build_root_system(CartanType("D", 4))
        aut = make_automorphism(rs, "triality")
        assert fixed_subspace(aut).dim == 2

    def test_identity_spans_roots_only(self):
        # type A: the fixed space of the identity is the sum-zero hyperplane
        rs = build_root_system(CartanType("A", 2))
        aut = make_automorphism(rs, "identity")
        basis = fixed_subspace(aut)
        assert basis.dim == 2
        assert all(sum(v) == 0 for v in basis.basis_vectors)

    def test_vectors_are_fixed(self):
        for fam, rk, tag in [("A", 4, "flip"), ("D", 5, "flip"), ("E", 6, "flip")]:
            rs = build_root_system(CartanType(fam, rk))
            aut = make_automorphism(rs, tag)
            for v in fixed_subspace(aut).basis_vectors:
                assert mat_vec(aut.matrix, v) == v


class TestProjection:
    def test_a3_flip_projects_onto_c2(self):
        rs = build_root_system(CartanType("A", 3))
        aut = make_automorphism(rs, "flip")
        h = Fraction(1, 2)
        e1 = vector([h, 0, 0, -h])
        e2 = vector([0, h, -h, 0])
        expected = set()
        for s1 in (1, -1):
            for s2 in (1, -1):
                expected.add(vec_add(vec_scale(s1, e1), vec_scale(s2, e2)))
            expected.add(vec_scale(2 * s1, e1))
            expected.add(vec_scale(2 * s1, e2))
        assert ambient_projection_set(aut) == expected

    def test_a4_flip_has_nonreduced_pattern(self):
        rs = build_root_system(CartanType("A", 4))
        aut = make_automorphism(rs, "flip")
        proj = ambient_projection_set(aut)
        doubled = sum(1 for v in proj if vec_scale(Fraction(1, 2), v) in proj)
        assert doubled == 4  # +-2E_1, +-2E_2 alongside +-E_1, +-E_2

    def test_identity_projects_to_roots(self):
        rs = build_root_system(CartanType("B", 2))
        aut = make_automorphism(rs, "identity")
        coords = project_roots(aut)
        assert sum(mult for _, mult in coords) == len(rs.roots)
        assert all(mult == 1 for _, mult in coords)

    def test_multiplicities_account_for_all_roots(self):
        rs = build_root_system(CartanType("E", 6))
        aut = make_automorphism(rs, "flip")
        coords = project_roots(aut)
        assert sum(mult for _, mult in coords) == 72
        assert len(coords) == 48


class TestFolding:
    @pytest.mark.parametrize("n", range(2, 7))
    def test_d_flip_folds_to_odd_orthogonal(self, n):
        rs = build_root_system(CartanType("D", n))
        fold = folded_root_system(make_automorphism(rs, "flip"))
        assert fold.folded_type == CartanType("B", n - 1)
        assert len(fold.folded.roots) == 2 * (n - 1) ** 2

    def test_triality_folds_to_g2(self):
        rs = build_root_system(CartanType("D", 4))
        fold = folded_root_system(make_automorphism(rs, "triality"))
        assert fold.folded_type == CartanType("G", 2)
        assert len(fold.folded.roots) == 12

    def test_e6_folds_to_f4(self):
        rs = build_root_system(CartanType("E", 6))
        fold = folded_root_system(make_automorphism(rs, "flip"))
        assert fold.folded_type == CartanType("F", 4)
        assert len(fold.folded.roots) == 48

    @pytest.mark.parametrize("rank,expected", [(2, ("B", 1)), (3, ("C", 2)),
                                               (4, ("B", 2)), (5, ("C", 3)),
                                               (6, ("B", 3))])
    def test_a_flip_alternates(self, rank, expected):
        rs = build_root_system(CartanType("A", rank))
        fold = folded_root_system(make_automorphism(rs, "flip"))
        assert fold.folded_type == CartanType(*expected)

    def test_rank_matches_fixed_dimension(self):
        for fam, rk, tag in [("A", 5, "flip"), ("D", 5, "flip"),
                             ("D", 4, "triality"), ("E", 6, "flip")]:
            rs = build_root_system(CartanType(fam, rk))
            aut = make_automorphism(rs, tag)
            fold = folded_root_system(aut)
            assert fold.folded_type.rank == fold.fixed_basis.dim

    def test_folded_roots_inside_projections(self):
        for fam, rk, tag in [("A", 4, "flip"), ("D", 4, "triality"), ("E", 6, "flip")]:
            rs = build_root_system(CartanType(fam, rk))
            fold = folded_root_system(make_automorphism(rs, tag))
            proj = {v for v, _ in fold.projected_roots}
            assert set(fold.folded.roots) <= proj


class TestCriteria:
    def test_triality_orbit_criterion(self):
        rs = build_root_system(CartanType("D", 4))
        crit = orbit_count_criterion(make_automorphism(rs, "triality"))
        assert crit.orbit_count == 12 and crit.folded_root_count == 12
        assert crit.holds

    def test_e6_orbit_criterion(self):
        rs = build_root_system(CartanType("E", 6))
        crit = orbit_count_criterion(make_automorphism(rs, "flip"))
        assert crit.orbit_count == 48 and crit.holds

    def test_a4_criterion_inconclusive(self):
        rs = build_root_system(CartanType("A", 4))
        crit = orbit_count_criterion(make_automorphism(rs, "flip"))
        assert crit.orbit_count == 12 and crit.folded_root_count == 8
        assert not crit.holds

    def test_wsigma_preserves_folded_small_cases(self):
        for fam, rk, tag in [("A", 3, "flip"), ("D", 4, "triality")]:
            rs = build_root_system(CartanType(fam, rk))
            aut = make_automorphism(rs, tag)
            fold = folded_root_system(aut)
            w = WeylPermutationGroup(rs)
            stab = fixed_space_stabilizer_perms(w, aut.simple_perm)
            restricted = restricted_fixed_space_group(w, aut.simple_perm, stab)
            assert wsigma_preserves_folded(aut, restricted, fold)

    def test_identity_weyl_permutes_own_roots(self):
        rs = build_root_system(CartanType("A", 2))
        aut = make_automorphism(rs, "identity")
        fold = folded_root_system(aut)
        w = WeylPermutationGroup(rs)
        assert wsigma_preserves_folded(aut, w.to_matrix_group(), fold)


class TestProjectionEquivariance:
    @pytest.mark.parametrize("family,rank,tag", [("A", 3, "flip"), ("A", 4, "flip"),
                                                 ("D", 4, "triality"), ("D", 5, "flip")])
    def test_projection_commutes_with_stabilizer(self, family, rank, tag):
        rs = build_root_system(CartanType(family, rank))
        aut = make_automorphism(rs, tag)
        w = WeylPermutationGroup(rs)
        stab = fixed_space_stabilizer_perms(w, aut.simple_perm)
        reps = [o[0] for o in aut.simple_orbits]

        def projected(idx):
            avg = [Fraction(0)] * rs.cartan_type.rank
            j = idx
            for _ in range(aut.order):
                for i, c in enumerate(rs.lattice_coords[j]):
                    avg[i] += c
                j = aut.root_perm[j]
            return vector(Fraction(avg[rep], aut.order) for rep in reps)

        projections = [projected(idx) for idx in range(len(rs.roots))]
        for elem in stab:
            m = restricted_fixed_space_group(w, aut.simple_perm, [elem]).elements[0]
            for idx in range(len(rs.roots)):
                assert mat_vec(m, projections[idx]) == projections[elem[idx]]


def test_fixed_group_info_component_counts():
    a = build_root_system(CartanType("A", 3))
    assert fixed_group_info(a, "flip").component_counts == (1, 2)
    d = build_root_system(CartanType("D", 5))
    assert fixed_group_info(d, "flip").component_counts == (2, 2)
    d4 = build_root_system(CartanType("D", 4))
    assert fixed_group_info(d4, "triality").component_counts == (1,)
    e = build_root_system(CartanType("E", 6))
    assert fixed_group_info(e, "flip").component_counts == (1,)
    assert fixed_group_info(a, "identity").component_counts == (1,)
