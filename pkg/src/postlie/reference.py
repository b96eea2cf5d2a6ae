"""Known structures used as regression data and classification candidates.

Matrices are written the way they are usually displayed: column j of L(e_i)
holds the coordinates of e_i.e_j.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Matrix, Subspace
from .liealg import LieAlgebra, h1_plus_C, heisenberg, r2, r3_jordan, sl3_chevalley
from .poly import Polynomial, var
from .structures import BilinearProduct

M = Matrix.from_rows
Z2 = M([[0, 0], [0, 0]])
Z3 = M([[0, 0, 0], [0, 0, 0], [0, 0, 0]])


def _p(mats) -> BilinearProduct:
    return BilinearProduct.from_left_ops(mats)


# --- 2-dimensional non-abelian algebra ------------------------------------

def structures_r2() -> dict[str, BilinearProduct]:
    return {
        "A1": _p([Z2, Z2]),
        "A2": _p([Z2, M([[0, 1], [0, 0]])]),
        "A3": _p([M([[0, -1], [0, 0]]), M([[-1, 0], [0, 0]])]),
    }


# --- r3 with Jordan block action --------------------------------------------

def B(alpha, beta, gamma) -> BilinearProduct:
    """B(alpha, beta, gamma); needs 2*gamma != 1."""
    alpha, beta, gamma = (Fraction(x) for x in (alpha, beta, gamma))
    if 2 * gamma == 1:
        raise ValueError("B(alpha, beta, gamma) is undefined at gamma = 1/2")
    tau = gamma / (2 * gamma - 1)
    return _p([M([[0, 0, 0], [alpha, gamma, tau], [beta, 0, gamma]]),
               M([[0, 0, 0], [gamma, 0, 0], [0, 0, 0]]),
               M([[0, 0, 0], [tau, 0, 0], [gamma, 0, 0]])])


def structures_r3_jordan() -> dict[str, BilinearProduct]:
    return {
        "B1": _p([Z3, Z3, Z3]),
        "B2": _p([M([[0, 0, 0], [1, 0, 0], [0, 0, 0]]), Z3, Z3]),
        "B3": _p([M([[0, 0, 0], [0, 0, 0], [1, 0, 0]]), Z3, Z3]),
        "B4": _p([M([[0, 0, 0], [0, 1, 1], [0, 0, 1]]),
                  M([[0, 0, 0], [1, 0, 0], [0, 0, 0]]),
                  M([[0, 0, 0], [1, 0, 0], [1, 0, 0]])]),
    }


def r3_jordan_family() -> tuple[tuple[str, ...], list]:
    """B(alpha, beta, gamma) with tau standing in for gamma/(2 gamma - 1),
    as polynomial left-multiplication matrices linear in the parameters."""
    a, b, c, t = var("alpha"), var("beta"), var("gamma"), var("tau")
    z = Polynomial()
    mats = [
        [[z, z, z], [a, c, t], [b, z, c]],
        [[z, z, z], [c, z, z], [z, z, z]],
        [[z, z, z], [t, z, z], [c, z, z]],
    ]
    return ("alpha", "beta", "gamma", "tau"), mats


# --- Heisenberg algebra ---------------------------------------------------

def C2(mu) -> BilinearProduct:
    mu = Fraction(mu)
    return _p([M([[0, 0, 0], [1, 0, 0], [0, mu, 0]]), M([[0, 0, 0], [0, 0, 0], [mu, 0, 0]]), Z3])


def C2_symbolic(name: str = "mu") -> list:
    """C2 with its parameter left as a polynomial variable."""
    mu = var(name)
    z, one = Polynomial(), Polynomial.const(1)
    return [
        [[z, z, z], [one, z, z], [z, mu, z]],
        [[z, z, z], [z, z, z], [mu, z, z]],
        [[z, z, z], [z, z, z], [z, z, z]],
    ]


def structures_heisenberg() -> dict[str, BilinearProduct]:
    return {
        "C1": _p([Z3, Z3, Z3]),
        "C3": _p([M([[0, 0, 0], [0, 0, 0], [1, 0, 0]]), Z3, Z3]),
        "C4": _p([M([[0, 0, 0], [0, 0, 0], [1, 0, 0]]), M([[0, 0, 0], [0, 0, 0], [0, 1, 0]]), Z3]),
    }


HEISENBERG_PARAMS = ("alpha", "beta", "gamma", "delta", "eps", "kappa", "lam")


def heisenberg_family() -> tuple[tuple[str, ...], list]:
    a, b, c, d, e, k, l = (var(n) for n in HEISENBERG_PARAMS)
    z = Polynomial()
    mats = [
        [[a, d, z], [b, -a, z], [c, e, z]],
        [[d, k, z], [-a, -d, z], [e, l, z]],
        [[z, z, z], [z, z, z], [z, z, z]],
    ]
    return HEISENBERG_PARAMS, mats


def heisenberg_conditions() -> list[Polynomial]:
    a, b, c, d, e, k, l = (var(n) for n in HEISENBERG_PARAMS)
    return [a * d + b * k, a * k - d * d, a * a + b * d,
            c * d - 2 * a * e - b * l, a * l + c * k - 2 * d * e]


# --- automorphism groups ----------------------------------------------------

def aut_r2():
    from .solver import AutGroupParam
    a, b = var("a"), var("b")
    one, z = Polynomial.const(1), Polynomial()
    return AutGroupParam(r2(), ("a", "b"), [[a, b], [z, one]], a)


def aut_r3_jordan():
    from .solver import AutGroupParam
    f2, f3, f5, f8 = (var(f"f{i}") for i in (2, 3, 5, 8))
    one, z = Polynomial.const(1), Polynomial()
    return AutGroupParam(r3_jordan(), ("f2", "f3", "f5", "f8"),
                         [[one, z, z], [f2, f5, f8], [f3, z, f5]], f5)


def aut_heisenberg():
    from .solver import AutGroupParam
    f = {i: var(f"f{i}") for i in range(1, 7)}
    det = f[1] * f[5] - f[2] * f[4]
    z = Polynomial()
    return AutGroupParam(heisenberg(), tuple(f"f{i}" for i in range(1, 7)),
                         [[f[1], f[4], z], [f[2], f[5], z], [f[3], f[6], det]], det)


# --- a non-nilpotent structure on h1 + C --------------------------------------

def h1_plus_C_product() -> BilinearProduct:
    """e1.e1 = e1.e4 = e4.e1 = e4.e4 = e4."""
    return BilinearProduct.from_entries(4, {(1, 1): {4: 1}, (1, 4): {4: 1},
                                            (4, 1): {4: 1}, (4, 4): {4: 1}})


def h1_plus_C_algebra() -> LieAlgebra:
    return h1_plus_C()


# --- a pair (g, sl3) with g neither solvable nor semisimple -----------------

def sl3_example_algebra() -> LieAlgebra:
    """Brackets on e1..e8 with e3, e5 central."""
    br = {
        (1, 4): {2: 1}, (1, 7): {1: -2}, (1, 8): {1: 1},
        (2, 6): {1: 1}, (2, 7): {2: -1}, (2, 8): {2: -1},
        (4, 6): {8: 1}, (4, 7): {4: 1}, (4, 8): {4: -2},
        (6, 7): {6: -1}, (6, 8): {6: 2},
    }
    table = {}
    for (i, j), coeffs in br.items():
        v = [0] * 8
        for k, x in coeffs.items():
            v[k - 1] = x
        table[(i - 1, j - 1)] = v
    return LieAlgebra(8, table, name="sl3_example_g")


def sl3_example_product() -> BilinearProduct:
    return BilinearProduct.from_entries(8, {
        (3, 1): {7: 1}, (3, 2): {4: -1}, (3, 6): {5: 1}, (3, 7): {3: -2}, (3, 8): {3: 1},
        (5, 1): {6: -1}, (5, 2): {7: 1, 8: 1}, (5, 4): {3: 1}, (5, 7): {5: -1}, (5, 8): {5: -1},
    })


def sl3_example_phi() -> Matrix:
    return Matrix.diag([0, 0, -1, 0, -1, 0, 0, 0])


def sl3_target() -> LieAlgebra:
    return sl3_chevalley()


# --- derivations of the free 3-step nilpotent algebra on two generators -----

def f23_derivation_pattern() -> Subspace:
    """Span of
        [[a1, a2, 0, 0, 0],
         [b1, b2, 0, 0, 0],
         [c1, c2, a1+b2, 0, 0],
         [d1, d2, c2, 2a1+b2, a2],
         [e1, e2, -c1, b1, a1+2b2]]
    over its ten parameters."""
    names = ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2", "e1", "e2")
    out = []
    for name in names:
        v = dict.fromkeys(names, 0)
        v[name] = 1
        a1, a2, b1, b2, c1, c2, d1, d2, e1, e2 = (v[n] for n in names)
        rows = [[a1, a2, 0, 0, 0],
                [b1, b2, 0, 0, 0],
                [c1, c2, a1 + b2, 0, 0],
                [d1, d2, c2, 2 * a1 + b2, a2],
                [e1, e2, -c1, b1, a1 + 2 * b2]]
        out.append([x for r in rows for x in r])
    return Subspace(25, out)


def central_form_determinant(p: BilinearProduct):
    """det of B where x.y = B(x, y) e3 on span(e1, e2), for a product on h1
    with values in the centre; None when the product is not of that shape.

    An automorphism acting by A on span(e1, e2) scales e3 by det A and sends
    B to det(A)^-1 A^T B A, so this determinant is an isomorphism invariant.
    """
    if p.dim != 3:
        return None
    for i in range(3):
        for j in range(3):
            v = p.a[i][j]
            if v[0] or v[1] or ((i == 2 or j == 2) and v[2]):
                return None
    b = [[p.a[i][j][2] for j in range(2)] for i in range(2)]
    return b[0][0] * b[1][1] - b[0][1] * b[1][0]
