import itertools
from fractions import Fraction

import pytest
import sympy

from postlie import reference as ref
from postlie import solver as sv
from postlie.exact import Matrix, solve_affine, unit_vec
from postlie.liealg import (PairOnSameSpace, abelian, f23, heisenberg, r2, r3_diag, r3_jordan, sl2)
from postlie.poly import Budget, Ideal, Polynomial, groebner, ideal_equal, var
from postlie.structures import BilinearProduct, image_in_radical, verify_commutative, verify_pair

M = Matrix.from_rows


def test_zero_is_a_point_of_every_general_system():
    for g in (r2(), heisenberg(), sl2()):
        s = sv.setup_general(PairOnSameSpace(g, g))
        assert all(p.evaluate({u: 0 for u in s.params}) == 0 for p in s.reduced)


def test_general_system_on_heisenberg_sl2_is_empty():
    r = sv.solve(sv.setup_general(PairOnSameSpace(heisenberg(), sl2())))
    assert r.status == "empty" and r.certificate["contains_one"]
    assert sv.verify_certificate(r.certificate)


def test_general_system_on_sl2_sl2_is_trivial_only():
    r = sv.solve(sv.setup_general(PairOnSameSpace(sl2(), sl2())))
    assert r.status == "families" and len(r.families) == 1
    assert r.families[0].is_point() and r.families[0].at({}).is_zero()


def test_phi_system_fixed_identification_on_sl2():
    r = sv.solve(sv.setup_phi(PairOnSameSpace(sl2(), sl2())))
    assert [f.is_point() for f in r.families] == [True]
    assert r.witness.is_zero()
    r = sv.solve(sv.setup_phi(PairOnSameSpace(sl2().negated(), sl2())))
    assert len(r.families) == 1
    assert sv.phi_matrix(r.witness_point, 3) == Matrix.identity(3).scale(-1)


def test_phi_system_requires_semisimple_target():
    with pytest.raises(sv.SolverError):
        sv.setup_phi(PairOnSameSpace(heisenberg(), heisenberg()))


def test_phi_system_on_abelian_sl2_contains_one():
    r = sv.solve(sv.setup_phi(PairOnSameSpace(abelian(3), sl2())))
    assert r.status == "empty" and sv.verify_certificate(r.certificate)


def test_scaled_phi_system_has_two_points():
    r = sv.solve(sv.setup_phi_scaled(sl2(), "t"))
    ts = sorted(f.raw_point({})["t"] for f in r.families)
    assert ts == [-1, 1] and all(f.is_point() for f in r.families)


def test_commutative_sl2_is_trivial():
    r = sv.solve(sv.setup_commutative(sl2()))
    assert r.status == "families" and len(r.families) == 1
    fam = r.families[0]
    assert fam.is_point() and fam.at({}).is_zero()


def test_h1_reduced_system_matches_conditions():
    s = sv.setup_commutative(heisenberg(), ref.heisenberg_family())
    assert ideal_equal(Ideal(s.reduced, s.params), Ideal(ref.heisenberg_conditions(), s.params))
    assert sv.check_parametrization(s) == [True] * len(s.cuts)


def test_r3_jordan_family_condition():
    s = sv.setup_commutative(r3_jordan(), ref.r3_jordan_family())
    g, t = var("gamma"), var("tau")
    assert ideal_equal(Ideal(s.reduced, s.params), Ideal([g * (g - 1), t * (2 * g - 1) - g], s.params))
    assert all(sv.check_parametrization(s))


def test_parametrization_outside_kernel_rejected():
    z, one = Polynomial(), Polynomial.const(1)
    a = var("a")
    bad = [[[a, z, z], [z, z, z], [z, z, z]], [[z, z, z]] * 3, [[z, z, z]] * 3]
    with pytest.raises(sv.SolverError):
        sv.setup_commutative(heisenberg(), (("a",), bad))


def test_abelian2_families_are_commutative_associative():
    r = sv.solve(sv.setup_commutative(abelian(2)))
    assert r.status == "families"
    basis = [unit_vec(2, i) for i in range(2)]
    count = 0
    for fam in r.families:
        for s in fam.samples:
            p = fam.at(s)
            count += 1
            for x, y, z in itertools.product(basis, repeat=3):
                assert p.mul(x, y) == p.mul(y, x)
                assert p.mul(p.mul(x, y), z) == p.mul(x, p.mul(y, z))
    assert count > 10


@pytest.mark.parametrize("g", [r2(), r3_jordan(), heisenberg(), f23()], ids=lambda g: g.name)
def test_every_sample_verifies_and_lands_in_radical(g):
    r = sv.solve(sv.setup_commutative(g))
    for fam in r.families:
        for s in fam.samples:
            p = fam.at(s)
            assert verify_commutative(g, p).passed
            assert image_in_radical(g, p)


def test_budget_exhaustion_is_inconclusive_not_empty():
    r = sv.solve(sv.setup_general(PairOnSameSpace(heisenberg(), sl2())), Budget(5))
    assert r.status == "inconclusive" and "budget" in r.reason
    r = sv.solve_pair(PairOnSameSpace(r3_diag(1), sl2()), Budget(50))
    assert r.status == "inconclusive"


def test_solve_pair_nonexistence_covers_all_identifications():
    for g in (heisenberg(), abelian(3), r3_diag(-1)):
        r = sv.solve_pair(PairOnSameSpace(g, sl2()))
        assert r.status == "empty"
        assert sv.verify_certificate(r.certificate, "lex")


def test_solve_pair_witness_on_r3_diag():
    r = sv.solve_pair(PairOnSameSpace(r3_diag(1), sl2()))
    assert r.status == "witness"
    assert verify_pair(PairOnSameSpace(r3_diag(1), r.target), r.witness).passed
    # the pulled-back bracket is sl2 in another basis
    assert sv.pull_back(sl2(), r.identification).c == r.target.c


def test_identification_free_system_matches_sympy_on_heisenberg():
    eqs, det, names = sv.identification_free_system(PairOnSameSpace(heisenberg(), sl2()))
    syms = sympy.symbols(names + ("t",))
    loc = {n: s for n, s in zip(names + ("t",), syms)}
    exprs = [sympy.sympify(str(e).replace("^", "**"), locals=loc) for e in eqs]
    exprs.append(loc["t"] * sympy.sympify(str(det).replace("^", "**"), locals=loc) - 1)
    assert list(sympy.groebner(exprs, *syms, order="grevlex").exprs) == [1]


def test_automorphism_parametrizations_validate():
    for aut in (ref.aut_r2(), ref.aut_r3_jordan(), ref.aut_heisenberg()):
        assert aut.validate()
    a = var("a")
    z, one = Polynomial(), Polynomial.const(1)
    bogus = sv.AutGroupParam(r2(), ("a",), [[one, z], [z, a]], a)
    assert not bogus.validate()


def test_isomorphic_examples():
    h, aut = heisenberg(), ref.aut_heisenberg()
    assert sv.isomorphic(h, ref.C2(1), ref.C2(2), aut).answer == "no"
    assert sv.isomorphic(h, ref.C2(1), ref.C2(1), aut).reason == "identity"
    s = ref.structures_r2()
    r = sv.isomorphic(r2(), s["A2"], s["A3"], ref.aut_r2())
    assert r.answer == "no" and r.reason.startswith("fingerprint")


def test_isomorphism_witnesses_compose_and_invert():
    h, aut = heisenberg(), ref.aut_heisenberg()
    phi = M([[1, 2, 0], [0, 1, 0], [3, 0, 1]])
    p = ref.C2(2)
    q = p.transformed(phi)
    r = sv.isomorphic(h, p, q, aut)
    assert r.answer == "yes"
    m = r.witness
    assert p.transformed(m) == q
    inv = Matrix.from_columns([solve_affine(m, unit_vec(3, i))[0] for i in range(3)])
    assert q.transformed(inv) == p
    psi = M([[2, 0, 0], [0, 1, 0], [0, 0, 2]])
    w = q.transformed(psi)
    assert p.transformed(psi @ m) == w


def test_centre_form_determinant_is_an_invariant():
    # e1.e1 = e3, e2.e2 = -e3 has det -1, C4 has det 1: not isomorphic over C
    h, aut = heisenberg(), ref.aut_heisenberg()
    other = BilinearProduct.from_entries(3, {(1, 1): {3: 1}, (2, 2): {3: -1}})
    assert verify_commutative(h, other).passed
    assert ref.central_form_determinant(other) == -1
    assert ref.central_form_determinant(ref.structures_heisenberg()["C4"]) == 1
    assert sv.isomorphic(h, other, ref.structures_heisenberg()["C4"], aut).answer == "no"
    scaled = BilinearProduct.from_entries(3, {(1, 1): {3: 2}, (2, 2): {3: Fraction(1, 2)}})
    assert sv.isomorphic(h, scaled, ref.structures_heisenberg()["C4"], aut).answer == "yes"


def test_classify_r2():
    res = sv.classify_commutative(r2(), ref.aut_r2(), [sv.Candidate(k, v) for k, v in ref.structures_r2().items()])
    assert res.status == "complete" and res.names == ["A1", "A2", "A3"]
    assert all(d["answer"] == "no" for d in res.distinctness)
    assert len(res.distinctness) == 3


def test_classify_r2_without_candidates_discovers_three_classes():
    res = sv.classify_commutative(r2(), ref.aut_r2())
    assert res.status == "complete" and len(res.classes) == 3


def test_classify_r3_jordan():
    res = sv.classify_commutative(r3_jordan(), ref.aut_r3_jordan(),
                                  [sv.Candidate(k, v) for k, v in ref.structures_r3_jordan().items()],
                                  parametrization=ref.r3_jordan_family())
    assert res.status == "complete" and res.names == ["B1", "B2", "B3", "B4"]


def test_classification_is_deterministic():
    cands = [sv.Candidate(k, v) for k, v in ref.structures_r2().items()]
    a = sv.classify_commutative(r2(), ref.aut_r2(), cands).to_json()
    b = sv.classify_commutative(r2(), ref.aut_r2(), cands).to_json()
    assert a == b


def test_bad_candidate_rejected():
    bad = sv.Candidate("X", BilinearProduct.from_entries(2, {(1, 1): {2: 1}}))
    with pytest.raises(sv.SolverError):
        sv.classify_commutative(r2(), ref.aut_r2(), [bad])


def test_depth_bounds():
    with pytest.raises(ValueError):
        sv.solve(sv.setup_commutative(r2()), depth=13)
