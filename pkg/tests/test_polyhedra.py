import random
from fractions import Fraction as F
from itertools import product

import pytest

from toricgit.cones import Cone
from toricgit.linalg import Matrix, dot, in_cone_hull
from toricgit.polyhedra import (Fan, LatticePolyhedron, affine_slice,
                                check_semigroup_generation, cone_over,
                                linear_image, minkowski_sum, normal_fan)

SIGMA2_DUAL = Cone(3, [(1, 0, 0), (1, -1, 0), (0, 0, 1), (0, 1, 1)])


def cube(d):
    return LatticePolyhedron(d, list(product((0, 1), repeat=d))).canonicalize()


def L_matrix(n):
    rows = []
    for j in range(n):
        rows.append([-1 if jj == j else 0 for i in range(n) for jj in range(n)])
    for m in range(1, n + 2):
        rows.append([1 if m >= i + 2 else 0 for i in range(n) for jj in range(n)])
    return Matrix(rows)


def brute_vertices(points, rays=()):
    """Brute-force hull oracle: a point is a vertex iff it is not in the hull
    of the others plus the recession cone (LP membership)."""
    pts = list(dict.fromkeys(tuple(map(F, p)) for p in points))
    return sorted(p for p in pts
                  if not in_cone_hull(p, [q for q in pts if q != p], rays))


def test_canonicalize_midpoint():
    p = LatticePolyhedron(2, [(0, 0), (1, 0), (F(1, 2), 0)]).canonicalize()
    assert p.vertex_candidates == ((F(0), F(0)), (F(1), F(0)))


def test_canonicalize_resolution_polyhedron():
    iota = LatticePolyhedron(3, [(0, 0, 0), (0, 1, 0)])
    p = minkowski_sum(iota, LatticePolyhedron(3, [(0, 0, 0)], SIGMA2_DUAL))
    assert set(p.vertex_candidates) == {(F(0),) * 3, (F(0), F(1), F(0))}


def test_canonicalize_cube_image_against_oracle():
    L2 = L_matrix(2)
    imgs = [tuple(L2 @ v) for v in product((0, 1), repeat=4)]
    got = linear_image(L2, cube(4))
    oracle = brute_vertices(imgs)
    assert sorted(got.vertex_candidates) == oracle
    # the paper formula gives 15 distinct images and 14 true vertices
    assert len(set(imgs)) == 15 and len(oracle) == 14
    assert all(v in set(imgs) for v in got.vertex_candidates)


def test_canonicalize_empty():
    p = LatticePolyhedron(3).canonicalize()
    assert p.is_empty()
    assert not p.contains((0, 0, 0))


def test_minkowski_identity_and_square():
    seg1 = LatticePolyhedron(2, [(0, 0), (1, 0)])
    seg2 = LatticePolyhedron(2, [(0, 0), (0, 1)])
    zero = LatticePolyhedron(2, [(0, 0)])
    assert minkowski_sum(seg1, zero) == seg1.canonicalize()
    sq = minkowski_sum(seg1, seg2)
    assert set(sq.vertex_candidates) == {(F(a), F(b)) for a in (0, 1) for b in (0, 1)}
    with pytest.raises(ValueError):
        minkowski_sum(seg1, LatticePolyhedron(3, [(0, 0, 0)]))


def test_linear_image_identity():
    p = cube(3)
    assert linear_image(Matrix.identity(3), p) == p


def test_affine_slice_examples():
    sq = cube(2)
    r1 = affine_slice(sq, Matrix([[1, 1]]), [F(2, 3)])
    assert set(r1.vertex_candidates) == {(F(2, 3), F(0)), (F(0), F(2, 3))}
    r2 = affine_slice(sq, Matrix([[1, 1]]), [F(4, 3)])
    assert set(r2.vertex_candidates) == {(F(1), F(1, 3)), (F(1, 3), F(1))}
    assert affine_slice(sq, Matrix([[1, 1]]), [5]).is_empty()


def test_affine_slice_vertices_on_low_faces():
    # every slice vertex lies on a face of dimension <= number of slice equations
    rng = random.Random(5)
    for _ in range(10):
        d = rng.randint(2, 4)
        pts = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(d + 3)]
        p = LatticePolyhedron(d, pts).canonicalize()
        if p.is_empty():
            continue
        a = [rng.randint(-2, 2) for _ in range(d)]
        if all(x == 0 for x in a):
            a[0] = 1
        interior = tuple(F(sum(c[i] for c in p.vertex_candidates), len(p.vertex_candidates))
                         for i in range(d))
        t = dot(a, interior)
        sl = affine_slice(p, Matrix([a]), [t])
        for v in sl.vertex_candidates:
            active = [n for n, o in p.facet_rep if dot(n, v) == o]
            face_dim = d - Matrix(active + [list(e[0]) for e in p.hull_equations]).rank() \
                if active else d
            assert face_dim <= 1


def test_normal_fan_segment():
    seg = LatticePolyhedron(1, [(0,), (1,)]).canonicalize()
    nf = normal_fan(seg)
    assert sorted(c.rays[0] for c in nf.maximal_cones) == [(-1,), (1,)]


def test_normal_fan_permutohedron_orbit():
    from toricgit.degeneration import build_symmetric, permutation_matrices, \
        weight_reflections
    sym = build_symmetric(3)
    nf = normal_fan(sym.permutohedron)
    assert len(nf.maximal_cones) == 6
    mats = permutation_matrices(3, weight_reflections(3))
    chamber = Cone(2, [(1, 0), (1, 1)])
    orbit = {Cone(2, [m @ g for g in chamber.generators]).canonical_form()
             for m in mats.values()}
    assert set(nf.maximal_cones) == orbit


def test_normal_fan_resolution_polyhedron():
    from toricgit.degeneration import build_symmetric
    sym = build_symmetric(2)
    nf = normal_fan(sym.resolution_polyhedron)
    assert nf == sym.fan
    assert len(nf.maximal_cones) == 2


def test_cone_over():
    pt = LatticePolyhedron(2, [(0, 0)])
    assert cone_over(pt).rays == ((0, 0, 1),)
    seg = LatticePolyhedron(1, [(0,), (1,)])
    assert set(cone_over(seg).rays) == {(0, 1), (1, 1)}


def test_cone_over_slice_back():
    iota = LatticePolyhedron(3, [(0, 0, 0), (0, 1, 0)])
    p = minkowski_sum(iota, LatticePolyhedron(3, [(0, 0, 0)], SIGMA2_DUAL))
    c = cone_over(p)
    hp = LatticePolyhedron(4, [(0, 0, 0, 0)], c)
    sl = affine_slice(hp, Matrix([[0, 0, 0, 1]]), [1])
    back = LatticePolyhedron(3, [v[:3] for v in sl.vertex_candidates],
                             Cone(3, [r[:3] for r in sl.recession.rays]))
    assert back == p
    # recession = height-0 slice of the cone over p
    zero_slice = [r[:3] for r in c.rays if r[3] == 0]
    assert set(zero_slice) == set(p.recession.rays)


def test_hull_idempotence():
    rng = random.Random(9)
    for _ in range(15):
        d = rng.randint(1, 4)
        pts = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(6)]
        rays = [tuple(rng.randint(0, 2) for _ in range(d)) for _ in range(2)]
        rays = [r for r in rays if any(r)]
        p = LatticePolyhedron(d, pts, Cone(d, rays))
        q = p.canonicalize()
        assert q.canonicalize() == q
        assert q == p


def test_vh_consistency_random():
    rng = random.Random(13)
    for _ in range(10):
        d = rng.randint(2, 3)
        pts = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(5)]
        rays = [r for r in [tuple(rng.randint(0, 2) for _ in range(d))] if any(r)]
        p = LatticePolyhedron(d, pts, Cone(d, rays)).canonicalize()
        for _ in range(12):
            x = tuple(F(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(d))
            by_h = p.contains(x)
            by_lp = in_cone_hull(x, p.vertex_candidates, p.recession.rays)
            assert by_h == by_lp


def test_normal_fan_of_sum_is_common_refinement():
    rng = random.Random(21)
    for _ in range(6):
        d = rng.randint(2, 3)
        pts1 = [tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(4)]
        pts2 = [tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(4)]
        p = LatticePolyhedron(d, pts1).canonicalize()
        q = LatticePolyhedron(d, pts2).canonicalize()
        s = minkowski_sum(p, q)
        nf_s = {c.key() for c in normal_fan(s).maximal_cones}
        refinement = set()
        for c1 in normal_fan(p).maximal_cones:
            for c2 in normal_fan(q).maximal_cones:
                inter = c1.intersection(c2)
                if inter.dim() == d:
                    refinement.add(inter.key())
        assert nf_s == refinement


def test_fan_validity_small():
    from toricgit.degeneration import build_symmetric
    for n in (2, 3, 4):
        sym = build_symmetric(n)
        assert sym.fan.validate_pairwise_faces() is None
        assert sym.fan.validate_support_cover() is None
        sigma = sym.product_cone
        for r in sym.fan.rays():
            assert sigma.contains(r)
            assert not sigma.relint_contains(r)


def test_semigroup_generation_family():
    from toricgit.degeneration import build_bundle
    b = build_bundle(1)
    verdicts = check_semigroup_generation(b.family_polyhedron, b.family_monomials, 6)
    assert verdicts and all(verdicts)


def test_semigroup_generation_nonsaturated():
    c = Cone(2, [(1, 0), (1, 2)])
    p = LatticePolyhedron(2, [(0, 0)], c).canonicalize()
    verdicts = check_semigroup_generation(p, [(0, 0), (1, 0), (1, 2)], 2)
    assert verdicts == [False]  # (1, 1) is not reachable


def test_semigroup_generation_product():
    from toricgit.degeneration import build_bundle, embedding_monomials, \
        product_rec_dual_columns
    b = build_bundle(2)
    cube_pts = [b.cube_map @ v for v in product((0, 1), repeat=4)]
    mono = embedding_monomials(product_rec_dual_columns(2), cube_pts)
    verdicts = check_semigroup_generation(b.product_polyhedron, mono, 4)
    assert verdicts and all(verdicts)
