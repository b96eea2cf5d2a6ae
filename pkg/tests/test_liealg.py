import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from postlie.exact import Matrix, Subspace, unit_vec
from postlie.liealg import (CATALOG_NAMES, AlgebraError, LieAlgebra, Representation, abelian, catalog,
                            catalog_entries, direct_sum, f23, heisenberg, is_ideal, jacobi_defect,
                            killing_radical, predicates, quotient, r2, r3_diag, semidirect, series, sl2,
                            sl2_irrep, sl2_ltimes_V)


def test_jacobi_examples():
    assert jacobi_defect(heisenberg().c) == []
    assert jacobi_defect(abelian(3).c) == []
    broken = LieAlgebra(3, {(0, 1): (1, 0, 0), (0, 2): (0, 1, 0)}, check=False)
    assert jacobi_defect(broken.c)
    with pytest.raises(AlgebraError):
        LieAlgebra(3, {(0, 1): (1, 0, 0), (0, 2): (0, 1, 0)})


def test_series_examples():
    assert [s.dim for s in series(f23())] == [5, 3, 2, 0]
    assert [s.dim for s in series(sl2(), "derived")] == [3]
    assert [s.dim for s in series(abelian(3))] == [3, 0]


def test_predicates_examples():
    assert predicates(r2())["is_unimodular"] is False
    assert r2().ad(1).trace() == -1
    for lam in (1, -1, 2, Fraction(1, 2), 0):
        assert predicates(r3_diag(lam))["is_unimodular"] == (lam == -1)
    p = predicates(sl2_ltimes_V(2))
    assert p["is_perfect"] and not p["is_semisimple"]
    assert predicates(sl2())["is_semisimple"]


def test_killing_radical_examples():
    assert killing_radical(sl2()).dim == 0
    for g in (r2(), heisenberg(), f23(), r3_diag(3)):
        assert killing_radical(g).dim == g.dim
    assert killing_radical(sl2_ltimes_V(2)) == Subspace(5, [unit_vec(5, 3), unit_vec(5, 4)])


def test_catalog_brackets():
    g = catalog("r3_jordan")
    assert g.bracket(unit_vec(3, 0), unit_vec(3, 1)) == (0, 1, 0)
    assert g.bracket(unit_vec(3, 0), unit_vec(3, 2)) == (0, 1, 1)
    h = catalog("heisenberg")
    assert h.bracket(unit_vec(3, 0), unit_vec(3, 1)) == (0, 0, 1)
    r = catalog("r3_diag", Fraction(2, 3))
    assert r.bracket(unit_vec(3, 0), unit_vec(3, 2)) == (0, 0, Fraction(2, 3))
    assert catalog("r3_diag(2/3)") == r


def test_catalog_errors():
    with pytest.raises(AlgebraError):
        catalog("nonsense")
    with pytest.raises(AlgebraError):
        catalog("r3_diag")
    with pytest.raises(AlgebraError):
        catalog("sl2", 1)


def test_every_catalog_algebra_satisfies_jacobi_and_round_trips():
    for g in catalog_entries():
        assert jacobi_defect(g.c) == []
        again = LieAlgebra.from_json(json.loads(g.dumps()))
        assert again.c == g.c


def test_radical_is_solvable_ideal_with_semisimple_quotient():
    for g in catalog_entries():
        rad = killing_radical(g)
        assert is_ideal(g, rad)
        if rad.dim < g.dim:
            q = quotient(g, rad)
            assert predicates(q)["is_semisimple"]


def test_semidirect_matches_catalog_sl2_ltimes_V2():
    sd = semidirect(abelian(2), sl2(), sl2_irrep(2))
    order = list(range(2, 5)) + [0, 1]
    assert sd.algebra.permuted(order).c == sl2_ltimes_V(2).c


def test_semidirect_trivial_cases():
    g = direct_sum(abelian(2), abelian(1))
    assert g.is_abelian()
    s = direct_sum(abelian(1), sl2())
    assert predicates(s)["center_dim"] == 1 and s.dim == 4


def test_semidirect_restrictions():
    sd = semidirect(abelian(3), sl2(), sl2_irrep(3))
    g = sd.algebra
    for i in sd.r_indices:
        for j in sd.r_indices:
            assert not any(g.c[i][j])
    # projection to s is a homomorphism: s-coordinates of [x,y] only depend on s-parts
    for i in sd.s_indices:
        for j in sd.s_indices:
            assert list(g.c[i][j][3:]) == list(sl2().c[i - 3][j - 3])
        for j in sd.r_indices:
            assert not any(g.c[i][j][3:])


@pytest.mark.parametrize("m", [2, 3, 4])
def test_sl2_ltimes_V_perfect(m):
    assert predicates(sl2_ltimes_V(m))["is_perfect"]


def test_representation_rejects_non_homomorphism():
    with pytest.raises(AlgebraError):
        Representation(sl2(), [Matrix.identity(2)] * 3)


def test_malformed_json():
    with pytest.raises(AlgebraError):
        LieAlgebra.from_json({"dim": 2, "brackets": [{"i": 2, "j": 1, "coeffs": {"1": 1}}]})
    with pytest.raises(AlgebraError):
        LieAlgebra.from_json({"brackets": []})


def test_catalog_names_complete():
    for name in CATALOG_NAMES:
        assert name in {"abelian", "r2", "r3_diag", "r3_jordan", "heisenberg", "n3", "f23", "sl2",
                        "sl3_chevalley", "sl2_ltimes_V", "h1_plus_C"}


@settings(max_examples=30, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=4))
def test_r3_diag_trace(lam):
    assert r3_diag(lam).ad(0).trace() == 1 + lam
