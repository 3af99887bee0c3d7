import random

import pytest

from conftest import conjugate
from toroidal.classify import (
    block_diag,
    classify,
    cyclic_permutation_matrix,
    cyclotomic_companion_matrix,
    sign_matrix,
)
from toroidal.cohomology import quotient_cohomology
from toroidal.lattice import LatticeType
from toroidal.oracle import (
    CellPoset,
    ComplexTooLarge,
    EquivariantModel,
    SimplicialAction,
    SimplicialComplex,
    barycentric_subdivide,
    build_equivariant_torus,
    exterior_power_matrix,
    fixed_subcomplex,
    hexagonal_torus_complex,
    is_regular,
    quotient_complex,
    rational_alpha_oracle,
    regularize,
    run_oracle_case,
    verify_fixed_point_structure,
)
from toroidal.snf import AbelianGroupStructure, IntMatrix

RP2 = SimplicialComplex(
    6,
    [
        (0, 1, 2),
        (0, 1, 3),
        (0, 2, 4),
        (0, 3, 5),
        (0, 4, 5),
        (1, 2, 5),
        (1, 3, 4),
        (1, 4, 5),
        (2, 3, 4),
        (2, 3, 5),
    ],
)

CIRCLE4 = SimplicialComplex(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def groups(K, **kw):
    return [str(g) for g in K.integral_cohomology(**kw)]


def test_circle_cohomology():
    assert groups(CIRCLE4) == ["Z", "Z"]


def test_rp2_cohomology():
    assert groups(RP2) == ["Z", "0", "Z/2"]
    assert RP2.euler_characteristic() == 1
    assert RP2.betti_numbers(0) == [1, 0, 0]
    assert RP2.betti_numbers(2) == [1, 1, 1]
    assert RP2.betti_numbers(3) == [1, 0, 0]


def test_torus_from_poset_product():
    from toroidal.oracle import product_poset

    poset, tokens, _ = product_poset([CellPoset.cycle(3), CellPoset.cycle(3)])
    assert len(tokens) == 36
    torus = poset.order_complex()
    assert torus.euler_characteristic() == 0
    assert torus.betti_numbers(0) == [1, 2, 1]
    assert groups(torus) == ["Z", "Z^2", "Z"]


def test_subdivision_counts():
    sub = barycentric_subdivide(CIRCLE4)
    assert sub.vertex_count == 8
    assert len(sub.facets) == 8
    triangle = SimplicialComplex(3, [(0, 1, 2)])
    sub = barycentric_subdivide(triangle)
    assert len(sub.facets) == 6
    assert sub.vertex_count == 7


def test_subdivision_invariance():
    for K in (CIRCLE4, RP2):
        once = barycentric_subdivide(K)
        assert groups(once) == groups(K)
        assert once.betti_numbers(0) == K.betti_numbers(0)


def test_is_regular_reflection_true():
    action = SimplicialAction(2, (0, 3, 2, 1))
    assert is_regular(CIRCLE4, action)


def test_is_regular_trivial_true():
    action = SimplicialAction(2, (0, 1, 2, 3))
    assert is_regular(CIRCLE4, action)


def test_is_regular_rejects_antipodal_identification():
    # the antipodal rotation fixes nothing setwise, yet the orbit complex
    # would collapse two edge orbits onto one vertex-orbit pair; the check
    # must refuse it (one subdivision then suffices)
    antipodal = SimplicialAction(2, (2, 3, 0, 1))
    assert not is_regular(CIRCLE4, antipodal)
    K, act, rounds = regularize(CIRCLE4, antipodal)
    assert rounds == 1
    q = quotient_complex(K, act)
    assert groups(q) == ["Z", "Z"]  # the quotient of a free involution on S^1


def test_quotient_circle_by_reflection_is_interval():
    q = quotient_complex(CIRCLE4, SimplicialAction(2, (0, 3, 2, 1)))
    assert q.vertex_count == 3
    assert q.facets == ((0, 1), (1, 2))
    assert groups(q) == ["Z", "0"]


def test_quotient_point():
    point = SimplicialComplex(1, [(0,)])
    q = quotient_complex(point, SimplicialAction(3, (0,)))
    assert q.vertex_count == 1
    assert groups(q) == ["Z"]


def test_quotient_torus_by_swap_is_moebius():
    model = build_equivariant_torus(case="cyclic", p=2, n=1)
    assert model.complex.betti_numbers(0) == [1, 2, 1]  # honest 2-torus
    K, act, rounds = regularize(model.complex, model.action)
    assert rounds == 0
    q = quotient_complex(K, act)
    assert q.euler_characteristic() == 0
    assert groups(q) == ["Z", "Z", "0"]


def test_sign_model_r1():
    model = build_equivariant_torus(case="sign", r=1)
    K = model.complex
    assert K.betti_numbers(0) == [1, 1]  # a circle
    fixed = fixed_subcomplex(K, model.action)
    assert fixed is not None and fixed.vertex_count == 2
    assert len(fixed.components()) == 2
    assert model.lattice_type == LatticeType(2, 1, 0, 0)


def test_hexagonal_model():
    K, vm = hexagonal_torus_complex(3)
    assert K.euler_characteristic() == 0
    assert K.betti_numbers(0) == [1, 2, 1]
    action = SimplicialAction(3, vm)
    action.validate_on(K)
    model = build_equivariant_torus(case="hexagonal")
    assert not is_regular(model.complex, model.action)
    report = run_oracle_case(model, "integral")
    assert report.passed and report.subdivisions == 1
    assert [r.actual for r in report.rows] == ["Z", "0", "Z"]
    assert verify_fixed_point_structure(model)


def test_hexagonal_grid_validation():
    with pytest.raises(ValueError):
        hexagonal_torus_complex(4)
    K, vm = hexagonal_torus_complex(6)
    assert K.euler_characteristic() == 0
    SimplicialAction(3, vm).validate_on(K)


def test_fixed_point_structures():
    for kw in (
        dict(case="sign", r=2),
        dict(case="cyclic", p=2, n=1),
        dict(case="sign", r=1, t=1),
    ):
        model = build_equivariant_torus(**kw)
        assert verify_fixed_point_structure(model), kw


def test_sign_with_trivial_factor():
    model = build_equivariant_torus(case="sign", r=1, t=1)
    assert model.lattice_type == LatticeType(2, 1, 0, 1)
    report = run_oracle_case(model, "integral")
    assert report.passed
    assert [r.actual for r in report.rows] == ["Z", "Z", "0"]


def test_field_mode_report():
    model = build_equivariant_torus(case="sign", r=2)
    report = run_oracle_case(model, "field")
    assert report.passed
    assert len(report.rows) == 6  # degrees 0..2 over Q and over F_2


def test_mixed_sign_and_swap_model():
    # the one family that always needs a subdivision: a reflection-fixed
    # vertex lies under both edges of an edge orbit while the swap side
    # stays asymmetric
    model = build_equivariant_torus(case="mixed", r=1, n=1)
    assert model.lattice_type == LatticeType(2, 1, 1, 0)
    assert not is_regular(model.complex, model.action)
    report = run_oracle_case(model, "field")
    assert report.passed and report.subdivisions == 1
    assert verify_fixed_point_structure(model)
    with pytest.raises(ValueError):
        build_equivariant_torus(case="mixed", r=0, n=1)
    with pytest.raises(ValueError):
        build_equivariant_torus(case="mixed", p=3)


def test_mixed_models_with_trivial_factors():
    # product posets subdivide their factors, so the hexagonal piece that is
    # irregular on its own becomes regular inside the product
    model = build_equivariant_torus(case="hexagonal", t=1)
    assert model.lattice_type == LatticeType(3, 1, 0, 1)
    report = run_oracle_case(model, "field")
    assert report.passed and report.subdivisions == 0
    model = build_equivariant_torus(case="cyclic", p=2, n=1, t=1)
    report = run_oracle_case(model, "integral")
    assert report.passed
    assert [r.actual for r in report.rows] == ["Z", "Z^2", "Z", "0"]
    assert verify_fixed_point_structure(model)


def test_unsupported_case():
    with pytest.raises(ValueError):
        build_equivariant_torus(case="projective")
    with pytest.raises(ValueError):
        build_equivariant_torus(case="sign", p=3)
    with pytest.raises(ValueError):
        build_equivariant_torus(case="cyclic")


def test_size_gate():
    with pytest.raises(ComplexTooLarge):
        RP2.integral_cohomology(max_simplices=5)
    model = build_equivariant_torus(case="sign", r=2)
    with pytest.raises(ComplexTooLarge):
        run_oracle_case(model, "integral", max_simplices=10)


def test_action_validation():
    with pytest.raises(ValueError):
        SimplicialAction(2, (0, 0, 1, 2))
    rotation = SimplicialAction(4, (1, 2, 3, 0))
    rotation.validate_on(CIRCLE4)  # order 4 on the square is fine
    with pytest.raises(ValueError):
        SimplicialAction(3, (1, 2, 3, 0)).validate_on(CIRCLE4)
    # transposing two adjacent vertices of the square sends the edge (1,2)
    # to the non-face (0,2)
    with pytest.raises(ValueError):
        SimplicialAction(2, (1, 0, 2, 3)).validate_on(CIRCLE4)


def test_complex_text_round_trip():
    text = RP2.to_text()
    assert SimplicialComplex.from_text(text) == RP2
    action = SimplicialAction(2, (0, 3, 2, 1))
    assert SimplicialAction.from_text(action.to_text()) == action
    with pytest.raises(ValueError):
        SimplicialComplex.from_text("bogus\n")


def test_components():
    two = SimplicialComplex(5, [(0, 1), (1, 2), (3, 4)])
    pieces = two.components()
    assert len(pieces) == 2
    assert pieces[0].vertex_count == 3
    assert pieces[1].vertex_count == 2


def test_cell_poset_cycle_order_complex():
    circle = CellPoset.cycle(3).order_complex()
    assert circle.vertex_count == 6
    assert circle.betti_numbers(0) == [1, 1]


def test_exterior_power_examples():
    w = exterior_power_matrix(sign_matrix(2), 2)
    assert w == IntMatrix.from_rows([[1]])
    assert rational_alpha_oracle(sign_matrix(2), 1) == 0
    assert rational_alpha_oracle(sign_matrix(2), 2) == 1
    assert rational_alpha_oracle(cyclic_permutation_matrix(3), 1) == 1


def test_rational_oracle_against_tables():
    rng = random.Random(31)
    cases = [
        (sign_matrix(3), 2),
        (cyclic_permutation_matrix(2), 2),
        (cyclic_permutation_matrix(3), 3),
        (cyclotomic_companion_matrix(3), 3),
        (block_diag(sign_matrix(1), cyclic_permutation_matrix(2)), 2),
    ]
    for a, p in cases:
        a = conjugate(a, rng)
        table = quotient_cohomology(classify(a, p), a.rows)
        for k in range(a.rows + 1):
            assert rational_alpha_oracle(a, k) == table[k][0]


def test_rational_oracle_dense_grid():
    # every block sum of the basic summands up to rank 6, for p in {2, 3}
    rng = random.Random(47)
    summands = {
        2: [sign_matrix(1), cyclic_permutation_matrix(2), IntMatrix.identity(1)],
        3: [
            cyclotomic_companion_matrix(3),
            cyclic_permutation_matrix(3),
            IntMatrix.identity(1),
        ],
    }
    for p, parts in summands.items():
        for counts in (
            (i, j, k)
            for i in range(3)
            for j in range(2)
            for k in range(3)
            if 0 < i * parts[0].rows + j * parts[1].rows + k <= 6
        ):
            blocks = []
            for part, count in zip(parts, counts):
                blocks.extend([part] * count)
            a = block_diag(*blocks)
            if rng.random() < 0.5:
                a = conjugate(a, rng)
            table = quotient_cohomology(classify(a, p), a.rows)
            for k in range(a.rows + 1):
                assert rational_alpha_oracle(a, k) == table[k][0], (p, counts, k)


def test_oracle_report_shape():
    model = build_equivariant_torus(case="sign", r=1)
    report = run_oracle_case(model)
    assert report.passed
    assert report.mode == "integral"
    assert report.lattice_type == LatticeType(2, 1, 0, 0)
    assert [r.label for r in report.rows] == ["H^0", "H^1"]


def test_integral_cohomology_of_quotients_matches_tables_small_grid():
    for kw in (
        dict(case="sign", r=1),
        dict(case="sign", r=2),
        dict(case="cyclic", p=2, n=1),
        dict(case="hexagonal",),
    ):
        model = build_equivariant_torus(**kw)
        L = model.lattice_type
        K, act, _ = regularize(model.complex, model.action)
        q = quotient_complex(K, act)
        table = quotient_cohomology(L, L.rank)
        actual = q.integral_cohomology()
        actual += [AbelianGroupStructure(0)] * (L.rank + 1 - len(actual))
        for k in range(L.rank + 1):
            a, b = table[k]
            assert actual[k].free_rank == a
            assert actual[k].torsion == (L.p,) * b
