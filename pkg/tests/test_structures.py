import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from postlie import reference as ref
from postlie.derivcoh import derivations
from postlie.exact import Matrix, unit_vec
from postlie.liealg import (PairOnSameSpace, catalog_entries, heisenberg, is_derivation, r2, r3_jordan,
                            sl2, sl2_ltimes_V)
from postlie.structures import (BilinearProduct, ProductError, all_left_nilpotent, image_in_radical,
                                invariants, is_nilpotent_matrix, left_ops, phi_to_product, sample_vectors,
                                sampled_left_nilpotent, verify_commutative, verify_pair)

M = Matrix.from_rows


def _all_structures():
    yield r2(), ref.structures_r2()
    yield r3_jordan(), ref.structures_r3_jordan()
    yield heisenberg(), {**ref.structures_heisenberg(), **{f"C2({m})": ref.C2(m) for m in (0, 1, -2)}}


def test_zero_product_passes_on_every_catalog_algebra():
    for g in catalog_entries():
        if g.dim > 6:
            continue
        assert verify_pair(PairOnSameSpace(g, g), BilinearProduct.zero(g.dim)).passed


def test_opposite_bracket_pair_on_sl2():
    n = sl2()
    g = n.negated()
    prod = BilinearProduct(3, {(i, j): g.bracket(unit_vec(3, i), unit_vec(3, j))
                               for i in range(3) for j in range(3)})
    assert verify_pair(PairOnSameSpace(g, n), prod).passed


def test_reference_structures_pass():
    for g, structs in _all_structures():
        for name, p in structs.items():
            assert verify_commutative(g, p).passed, name


def test_h1_plus_C_example_passes_and_is_not_nilpotent():
    g, p = ref.h1_plus_C_algebra(), ref.h1_plus_C_product()
    assert verify_commutative(g, p).passed
    flag, witness = all_left_nilpotent(p)
    assert flag is False and tuple(witness) == (1, 0, 0, 0)
    L = p.left(witness)
    assert L.trace() == 1


def test_failing_product_reports_residuals():
    p = BilinearProduct.from_entries(2, {(1, 1): {2: 1}})
    report = verify_commutative(r2(), p)
    assert not report.passed
    data = report.to_json()
    assert data["axioms"]["6"]


def test_left_ops_examples():
    assert all(m.is_zero() for m in BilinearProduct.zero(3).left_ops())
    A3 = ref.structures_r2()["A3"]
    assert A3.left_ops() == [M([[0, -1], [0, 0]]), M([[-1, 0], [0, 0]])]
    B4 = ref.structures_r3_jordan()["B4"]
    assert B4.left_ops() == [M([[0, 0, 0], [0, 1, 1], [0, 0, 1]]), M([[0, 0, 0], [1, 0, 0], [0, 0, 0]]),
                             M([[0, 0, 0], [1, 0, 0], [1, 0, 0]])]
    assert B4 == ref.B(0, 0, 1)


def test_left_ops_are_derivations_and_homomorphism():
    for g, structs in _all_structures():
        pair = PairOnSameSpace(g, g)
        for p in structs.values():
            info = left_ops(pair, p)
            assert all(info["in_der"]) and info["homomorphism"]


def test_derived_identities_on_commuting_pairs():
    # x.(z.y) = z.(x.y) whenever [x, z] = 0
    for g, structs in _all_structures():
        n = g.dim
        for p in structs.values():
            for i in range(n):
                for k in range(n):
                    if any(g.c[i][k]):
                        continue
                    for j in range(n):
                        ei, ej, ek = unit_vec(n, i), unit_vec(n, j), unit_vec(n, k)
                        assert p.mul(ei, p.mul(ek, ej)) == p.mul(ek, p.mul(ei, ej))


def test_phi_to_product_examples():
    pair = PairOnSameSpace(sl2(), sl2())
    p, conds = phi_to_product(Matrix.zeros(3, 3), pair)
    assert p.is_zero() and conds["both"]
    pair = PairOnSameSpace(sl2().negated(), sl2())
    p, conds = phi_to_product(Matrix.identity(3).scale(-1), pair)
    assert conds["both"] and verify_pair(pair, p).passed


def test_sl3_example_with_reconstructed_basis():
    pair = PairOnSameSpace(ref.sl3_example_algebra(), ref.sl3_target())
    p = ref.sl3_example_product()
    assert verify_pair(pair, p).passed
    prod, conds = phi_to_product(ref.sl3_example_phi(), pair)
    assert conds["both"] and prod == p


def test_phi_to_product_needs_semisimple_n():
    with pytest.raises(ProductError):
        phi_to_product(Matrix.zeros(3, 3), PairOnSameSpace(heisenberg(), heisenberg()))


def test_nilpotency_examples():
    for p in ref.structures_heisenberg().values():
        assert all_left_nilpotent(p)[0]
    assert all_left_nilpotent(ref.C2(3))[0]
    assert all_left_nilpotent(BilinearProduct.zero(4)) == (True, None)


def test_symbolic_and_sampled_nilpotency_agree():
    products = [p for _, s in _all_structures() for p in s.values()] + [ref.h1_plus_C_product()]
    for p in products:
        assert all_left_nilpotent(p)[0] == sampled_left_nilpotent(p, 50, 0)
    assert sample_vectors(3, 5, 0) == sample_vectors(3, 5, 0)


def test_image_in_radical_examples():
    for g, structs in _all_structures():
        for p in structs.values():
            assert image_in_radical(g, p)
    assert image_in_radical(sl2(), BilinearProduct.zero(3))


def test_invariant_examples():
    s = ref.structures_r2()
    g = r2()
    assert invariants(g, s["A1"])["dim_product_span"] == 0
    assert invariants(g, s["A2"])["dim_product_span"] == 1
    a2, a3 = invariants(g, s["A2"]), invariants(g, s["A3"])
    assert a2["all_left_nilpotent"] is True and a3["all_left_nilpotent"] is False


def test_json_round_trip_and_errors():
    p = ref.structures_r3_jordan()["B4"]
    assert BilinearProduct.from_json(json.loads(p.dumps())) == p
    with pytest.raises(ProductError):
        BilinearProduct.from_json({"dim": 2, "products": [{"i": 3, "j": 1, "coeffs": {}}]})
    with pytest.raises(ProductError):
        BilinearProduct.from_json({"products": []})


q = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@settings(max_examples=40, deadline=None)
@given(q)
def test_C2_family_verifies(mu):
    p = ref.C2(mu)
    assert verify_commutative(heisenberg(), p).passed
    assert all_left_nilpotent(p)[0]


@settings(max_examples=40, deadline=None)
@given(q, q, q.filter(lambda c: 2 * c != 1))
def test_B_family_on_its_variety(a, b, c):
    p = ref.B(a, b, c)
    assert verify_commutative(r3_jordan(), p).passed == (c * (c - 1) == 0)


@settings(max_examples=30, deadline=None)
@given(st.lists(q, min_size=4, max_size=4).filter(lambda v: v[0] * v[3] != v[1] * v[2]))
def test_transport_preserves_axioms(entries):
    # an automorphism of h1 moves a structure to another structure
    a, b, c, d = entries
    phi = M([[a, b, 0], [c, d, 0], [1, -1, a * d - b * c]])
    p = ref.C2(2).transformed(phi)
    assert verify_commutative(heisenberg(), p).passed
    assert invariants(heisenberg(), p) == invariants(heisenberg(), ref.C2(2))


def test_is_nilpotent_matrix():
    assert is_nilpotent_matrix(M([[0, 1], [0, 0]]))
    assert not is_nilpotent_matrix(Matrix.identity(2))
