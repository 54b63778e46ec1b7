import random
from fractions import Fraction

import pytest

from koszulkit.algebra import build_graded_algebra
from koszulkit.fields import GF, QQ
from koszulkit.homology import BimoduleHomology, higher_calculus, koszul_homology
from koszulkit.koszul import (Cochain, DegreeError, KoszulCalculus, MODULE_A,
                              MODULE_K, ModuleError, NotClosedError)
from koszulkit.linalg import echelonize
from koszulkit.presets import Preset, preset_graph
from koszulkit.quiver import (Graph, PreprojectiveSpec, paths_of_weight,
                              preprojective_presentation)


@pytest.fixture(scope="module")
def a3():
    pr = Preset("A3", QQ)
    kd = KoszulCalculus(pr.algebra, 3)
    return pr, kd


@pytest.fixture(scope="module")
def a3_spaces(a3):
    pr, kd = a3
    coh = koszul_homology(kd, MODULE_A, "coh")
    hom = koszul_homology(kd, MODULE_A, "hom")
    return coh, hom


def test_w_dims_a3(a3):
    _pr, kd = a3
    assert kd.w_dims() == [3, 4, 3, 0, 0]


def test_w3_vanishes_by_direct_intersection(a3):
    """The defining intersection inside the weight-3 path space is zero."""
    pr, _kd = a3
    q = pr.quiver
    field = pr.field
    paths3 = paths_of_weight(q, 3)
    index = {p.arrows: k for k, p in enumerate(paths3)}
    left_rows = []
    right_rows = []
    for rel in pr.presentation.relations:
        for a in range(q.n_arrows):
            vr = {}
            vl = {}
            for c, (u, v) in rel:
                if q.source[a] == q.target[u]:       # a (x) relation
                    vl[index[(a, u, v)]] = c
                if q.target[a] == q.source[v]:       # relation (x) a
                    vr[index[(u, v, a)]] = c
            if vl:
                left_rows.append(vl)
            if vr:
                right_rows.append(vr)
    from koszulkit.linalg import intersect
    u_sub = echelonize(right_rows, len(paths3), field)
    v_sub = echelonize(left_rows, len(paths3), field)
    assert intersect(u_sub, v_sub).dim == 0


def test_a2_w_spaces_have_dimension_two():
    pr = Preset("A2", QQ)
    kd = KoszulCalculus(pr.algebra, 8)
    for p in range(2, 9):
        assert kd.w(p).dim == 2


def test_e6_w2_dimension():
    pr = Preset("E6", QQ)
    kd = KoszulCalculus(pr.algebra, 3)
    assert kd.w(2).dim == 6


def test_cochain_differential_matches_worked_example(a3):
    """Degree-0 and degree-1 differentials of the three-vertex chain."""
    pr, kd = a3
    alg = pr.algebra
    ai = pr.quiver.arrow_index
    field = pr.field
    # b(sum u_i e_i) sends a_i to (u_{i+1} - u_i) a_i
    u = [Fraction(5), Fraction(2), Fraction(7)]
    f = kd.cochain_on_vertices({i: alg.elem_scale(alg.vertex_elem(i), u[i])
                                for i in range(3)})
    bf = kd.apply_bK(f)
    for i in (0, 1):
        a = ai[f"a{i}"]
        expected = alg.elem_scale(alg.arrow_elem(a), u[i + 1] - u[i])
        got = bf.values.get(kd.arrow_flat[a], {})
        assert alg.elem_equal(got, expected)
        astar = ai[f"a{i}*"]
        expected = alg.elem_scale(alg.arrow_elem(astar), u[i] - u[i + 1])
        got = bf.values.get(kd.arrow_flat[astar], {})
        assert alg.elem_equal(got, expected)
    # b of a weight-1 arrow-diagonal cochain is supported on the middle
    # relation with the balanced coefficient sum
    lam = {"a0": 3, "a1": 5, "a0*": 7, "a1*": 11}
    g = kd.cochain_on_arrows({ai[k]: alg.elem_scale(alg.arrow_elem(ai[k]),
                                                    Fraction(v))
                              for k, v in lam.items()})
    bg = kd.apply_bK(g)
    ws2 = kd.w(2)
    coeff = Fraction(lam["a0"] + lam["a0*"] - lam["a1"] - lam["a1*"])
    z1 = alg.multiply(alg.arrow_elem(ai["a1*"]), alg.arrow_elem(ai["a1"]))
    for flat in range(ws2.dim):
        val = bg.values.get(flat, {})
        j, i, k = ws2.flat[flat]
        if (j, i) == (1, 1):
            # the basis vector is scale * sigma_1, so the value picks up scale
            rel_coord = ws2.relation_coords[flat]
            scale = rel_coord[list(rel_coord)[0]]
            assert alg.elem_equal(val, alg.elem_scale(z1, field.mul(coeff, scale)))
        else:
            assert not val


def test_differentials_square_to_zero():
    for name, field in [("A3", QQ), ("D4", GF(2)), ("A4", GF(3))]:
        pr = Preset(name, field)
        kd = KoszulCalculus(pr.algebra, 3)
        rng = random.Random(4)
        alg = pr.algebra
        for p in (0, 1):
            ws = kd.w(p)
            values = {}
            for flat in range(ws.dim):
                j, i = ws.block_of(flat)
                val = {}
                for m in range(alg.max_weight + 1):
                    for pos in alg.block_positions(m, j, i):
                        c = field.from_int(rng.randint(-2, 2))
                        if not field.is_zero(c):
                            val[(m, pos)] = c
                if val:
                    values[flat] = val
            f = Cochain(kd, p, MODULE_A, values)
            assert kd.apply_bK(kd.apply_bK(f)).is_zero()


def test_chain_cycles_from_worked_example(a3):
    pr, kd = a3
    alg = pr.algebra
    ai = pr.quiver.arrow_index
    from koszulkit.duality import omega0
    w0 = omega0(kd)
    assert kd.apply_bK_chain(w0).is_zero()
    # a0 (x) a0* + a1 (x) a1* is a 1-cycle
    ws1 = kd.w(1)
    values = {}
    for nm, coeffname in [("a0*", "a0"), ("a1*", "a1")]:
        flat = kd.arrow_flat[ai[nm]]
        values[flat] = alg.arrow_elem(ai[coeffname])
    from koszulkit.koszul import Chain
    z = Chain(kd, 1, MODULE_A, values)
    assert kd.apply_bK_chain(z).is_zero()
    # degree-1 chain differential is the commutator pairing
    m = alg.arrow_elem(ai["a0"])
    z2 = Chain(kd, 1, MODULE_A, {kd.arrow_flat[ai["a0*"]]: m})
    bz = kd.apply_bK_chain(z2)
    w0s = kd.w(0)
    got0 = bz.values.get(w0s.flat_of_block[(0, 0)][0], {})
    got1 = bz.values.get(w0s.flat_of_block[(1, 1)][0], {})
    prod_right = alg.multiply(m, alg.arrow_elem(ai["a0*"]))
    prod_left = alg.multiply(alg.arrow_elem(ai["a0*"]), m)
    assert alg.elem_equal(got1, prod_right)
    assert alg.elem_equal(got0, alg.elem_scale(prod_left, Fraction(-1)))


def test_hk_dims_a3(a3_spaces):
    coh, hom = a3_spaces
    assert coh.dims()[:3] == [2, 1, 3]
    assert hom.dims()[:3] == [3, 1, 2]


def test_scalar_coefficients_closed_form(a3):
    _pr, kd = a3
    cohk = koszul_homology(kd, MODULE_K, "coh")
    homk = koszul_homology(kd, MODULE_K, "hom")
    diag = [sum(len(idx) for (j, i), idx in kd.w(p).flat_of_block.items() if j == i)
            for p in range(4)]
    assert cohk.dims() == diag
    assert homk.dims() == diag
    assert diag == [3, 0, 3, 0]


def test_cup_unit_and_fundamental_square(a3, a3_spaces):
    pr, kd = a3
    coh, _hom = a3_spaces
    unit_vals = {i: pr.algebra.vertex_elem(i) for i in range(3)}
    one = kd.cochain_on_vertices(unit_vals)
    eA = kd.fundamental_cocycle()
    assert kd.cup(one, eA).equals(eA)
    assert kd.cup(eA, one).equals(eA)
    assert kd.cup(eA, eA).is_zero()


def test_cup_module_rules(a3):
    _pr, kd = a3
    f = kd.fundamental_cocycle()
    k_cochain = Cochain(kd, 0, MODULE_K, {0: kd.field.one})
    mixed = kd.cup(f, k_cochain)
    assert mixed.module == MODULE_K
    with pytest.raises(ModuleError):
        kd.cup(k_cochain, k_cochain)


def test_class_extraction_examples(a3, a3_spaces):
    pr, kd = a3
    coh, _hom = a3_spaces
    alg = pr.algebra
    ai = pr.quiver.arrow_index
    # any coboundary has zero class
    g = kd.cochain_on_vertices({0: alg.vertex_elem(0)})
    assert all(c == 0 for c in coh.class_of(kd.apply_bK(g)))
    # the central-multiple cochain cup the vertex-one relation cochain is a
    # coboundary: its class vanishes
    z1 = alg.multiply(alg.arrow_elem(ai["a1*"]), alg.arrow_elem(ai["a1"]))
    z1c = kd.cochain_on_vertices({1: z1})
    h1 = kd.cochain_on_relations({pr.relation_of_vertex(1): alg.vertex_elem(1)})
    prod = kd.cup(z1c, h1)
    assert not prod.is_zero()
    assert all(c == 0 for c in coh.class_of(prod))
    # the fundamental class doubles the arrow-family class
    eA = kd.fundamental_cocycle()
    zeta0 = kd.cochain_on_arrows({ai["a0"]: alg.arrow_elem(ai["a0"]),
                                  ai["a1"]: alg.arrow_elem(ai["a1"])})
    assert coh.class_of(eA) == [2 * c for c in coh.class_of(zeta0)]
    with pytest.raises(NotClosedError):
        coh.class_of(kd.cochain_on_vertices({0: alg.arrow_elem(0)}))


def test_cap_examples(a3, a3_spaces):
    pr, kd = a3
    coh, hom = a3_spaces
    alg = pr.algebra
    ai = pr.quiver.arrow_index
    from koszulkit.duality import omega0
    w0 = omega0(kd)
    # unit 0-cochain acts as the identity on chains
    one = kd.cochain_on_vertices({i: alg.vertex_elem(i) for i in range(3)})
    assert kd.cap(one, w0, "left").equals(w0)
    assert kd.cap(one, w0, "right").equals(w0)
    # capping the fundamental cycle with the fundamental cocycle gives the
    # signed arrow pairing
    eA = kd.fundamental_cocycle()
    got = kd.cap(eA, w0, "right")
    spec = pr.spec
    expected_values = {}
    for a in range(pr.quiver.n_arrows):
        star = spec.star[a]
        flat = kd.arrow_flat[star]
        expected_values[flat] = alg.elem_scale(alg.arrow_elem(a),
                                               Fraction(spec.eps[a]))
    from koszulkit.koszul import Chain
    assert got.equals(Chain(kd, 1, MODULE_A, expected_values))
    # degenerate equal-degree cap lands in degree zero
    h1 = kd.cochain_on_relations({pr.relation_of_vertex(1): alg.vertex_elem(1)})
    deg0 = kd.cap(h1, w0, "left")
    assert deg0.q == 0 and not deg0.is_zero()
    with pytest.raises(DegreeError):
        kd.cap(h1, deg0, "left")


def test_higher_calculus_a3_and_a4():
    for name, field, exp_coh, exp_hom in [
        ("A3", QQ, [1, 0, 3, 0], [3, 0, 1, 0]),
        ("A4", QQ, [0, 0, 4, 0], [4, 0, 0, 0]),
        ("A3", GF(2), [2, 1, 3, 0], [3, 1, 2, 0]),
    ]:
        pr = Preset(name, field)
        kd = KoszulCalculus(pr.algebra, 3)
        coh = koszul_homology(kd, MODULE_A, "coh")
        hom = koszul_homology(kd, MODULE_A, "hom")
        eA = kd.fundamental_cocycle()
        assert higher_calculus(coh, eA).dims() == exp_coh
        assert higher_calculus(hom, eA).dims() == exp_hom


def test_higher_degree0_weight0_is_the_ground_ring():
    # the weight-0 piece of the degree-0 higher homology is the vertex ring
    for name in ["A3", "D4", "A~2"]:
        pr = Preset(name, QQ, cutoff=6 if "~" in name else None)
        kd = KoszulCalculus(pr.algebra, 3)
        hom = koszul_homology(kd, MODULE_A, "hom")
        eA = kd.fundamental_cocycle()
        hih = higher_calculus(hom, eA)
        assert hih.blocks[(0, 0)].dim == pr.quiver.n_vertices


def test_fundamental_coboundary_potential():
    # single-orientation chain quiver: the potential exists
    q_simple = Graph(["0", "1", "2"], [("0", "1"), ("1", "2")])
    pres = preprojective_presentation(PreprojectiveSpec(q_simple), QQ)
    alg = build_graded_algebra(pres, 6)
    kd = KoszulCalculus(alg, 3)
    # the doubled quiver has two-cycles, so no rational potential
    assert kd.fundamental_coboundary_potential() is None
    # over GF(2) the tree is two-colourable and the potential exists
    pres2 = preprojective_presentation(PreprojectiveSpec(q_simple), GF(2))
    alg2 = build_graded_algebra(pres2, 6)
    kd2 = KoszulCalculus(alg2, 3)
    lam = kd2.fundamental_coboundary_potential()
    assert lam is not None
    g = kd2.cochain_on_vertices({i: alg2.elem_scale(alg2.vertex_elem(i), c)
                                 for i, c in lam.items()
                                 if not kd2.field.is_zero(c)})
    assert kd2.apply_bK(g).equals(kd2.fundamental_cocycle())
    # one-directional simple quiver without cycles
    from koszulkit.quiver import QuadraticPresentation, Quiver
    q3 = Quiver(["0", "1", "2"], [("x", "0", "1"), ("y", "1", "2")])
    pres3 = QuadraticPresentation(
        q3, [[(QQ.one, (q3.arrow_index["y"], q3.arrow_index["x"]))]], QQ)
    alg3 = build_graded_algebra(pres3, 5)
    kd3 = KoszulCalculus(alg3, 3)
    lam3 = kd3.fundamental_coboundary_potential()
    assert lam3 is not None
    g3 = kd3.cochain_on_vertices({i: alg3.elem_scale(alg3.vertex_elem(i), c)
                                  for i, c in lam3.items()
                                  if not kd3.field.is_zero(c)})
    assert kd3.apply_bK(g3).equals(kd3.fundamental_cocycle())


def test_fundamental_class_nonzero_for_preprojective_char0():
    # no loops and characteristic not two: the fundamental class survives
    for name in ["A3", "D4", "A~2"]:
        pr = Preset(name, QQ, cutoff=6 if "~" in name else None)
        kd = KoszulCalculus(pr.algebra, 3)
        coh = koszul_homology(kd, MODULE_A, "coh")
        cls = coh.class_of(kd.fundamental_cocycle())
        assert any(c != 0 for c in cls)


def test_bimodule_homology_a3(a3):
    _pr, kd = a3
    bh = BimoduleHomology(kd, 3)
    table = bh.homology_table()
    assert {n: d for n, d in table[0].items()} == {0: 3, 1: 4, 2: 3}
    assert table[1] == {}
    assert sum(table[2].values()) > 0
    assert not bh.koszul_up_to_cutoff()


def test_bimodule_homology_non_dynkin_koszul():
    pr = Preset("A~2", QQ, cutoff=8)
    kd = KoszulCalculus(pr.algebra, 3)
    bh = BimoduleHomology(kd, 3, weight_cutoff=8)
    table = bh.homology_table()
    assert table[1] == {} and table[2] == {} and table[3] == {}
    assert bh.koszul_up_to_cutoff()
    # degree zero reproduces the algebra's graded dimensions
    for n, d in table[0].items():
        assert d == len(pr.algebra.monomials[n])
