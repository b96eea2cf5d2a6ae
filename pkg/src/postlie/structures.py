"""Bilinear products on a Lie algebra pair and their axiom checks.

The residual functions below only use ``+``, ``-`` and ``*`` on coefficients,
so the same code produces exact defect vectors for rational products and
polynomial equations for products with unknown coefficients.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import Matrix, Q, Subspace, fmt, kernel_basis, unit_vec, vec
from .liealg import LieAlgebra, PairOnSameSpace, killing_radical, predicates
from .poly import Polynomial, var


class ProductError(ValueError):
    pass


class BilinearProduct:
    """x.y = sum_k a[i][j][k] e_k for basis vectors x = e_i, y = e_j."""

    def __init__(self, dim: int, table=None):
        self.dim = dim
        a = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        if table:
            for (i, j), v in table.items():
                v = vec(v)
                if len(v) != dim:
                    raise ProductError("product vector has wrong length")
                a[i][j] = list(v)
        self.a = tuple(tuple(tuple(a[i][j]) for j in range(dim)) for i in range(dim))

    @classmethod
    def zero(cls, dim: int) -> "BilinearProduct":
        return cls(dim)

    @classmethod
    def from_left_ops(cls, mats: Sequence[Matrix]) -> "BilinearProduct":
        """Product with L(e_i) = mats[i]; column j of L(e_i) is e_i.e_j."""
        n = len(mats)
        return cls(n, {(i, j): mats[i].column(j) for i in range(n) for j in range(n)})

    @classmethod
    def from_entries(cls, dim: int, entries: dict) -> "BilinearProduct":
        """Build from {(i, j): {k: coeff}} with 1-based indices."""
        table = {}
        for (i, j), coeffs in entries.items():
            v = [Fraction(0)] * dim
            for k, x in coeffs.items():
                v[k - 1] += Q(x)
            table[(i - 1, j - 1)] = v
        return cls(dim, table)

    def __eq__(self, other):
        return isinstance(other, BilinearProduct) and self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        nz = sum(1 for i in range(self.dim) for j in range(self.dim) if any(self.a[i][j]))
        return f"BilinearProduct(dim={self.dim}, nonzero_pairs={nz})"

    def mul(self, u: Sequence, v: Sequence) -> tuple:
        return multiply(self.a, u, v)

    def left_ops(self) -> list[Matrix]:
        return [Matrix.from_columns([self.a[i][j] for j in range(self.dim)]) for i in range(self.dim)]

    def left(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for i, L in enumerate(self.left_ops()):
            if x[i]:
                out = out + L.scale(x[i])
        return out

    def is_zero(self) -> bool:
        return all(not any(v) for row in self.a for v in row)

    def transformed(self, phi: Matrix) -> "BilinearProduct":
        """Product transported along phi: x * y = phi(phi^-1 x . phi^-1 y)."""
        from .exact import solve_affine
        n = self.dim
        inv_cols = []
        for i in range(n):
            sol = solve_affine(phi, unit_vec(n, i))
            if sol is None or sol[1].dim:
                raise ProductError("map is not invertible")
            inv_cols.append(sol[0])
        return BilinearProduct(n, {(i, j): phi @ self.mul(inv_cols[i], inv_cols[j])
                                   for i in range(n) for j in range(n)})

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "products": [
                {"i": i + 1, "j": j + 1,
                 "coeffs": {str(k + 1): fmt(x) for k, x in enumerate(self.a[i][j]) if x}}
                for i in range(self.dim) for j in range(self.dim) if any(self.a[i][j])
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BilinearProduct":
        try:
            n = int(data["dim"])
            table = {}
            for entry in data.get("products", []):
                i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
                if not (0 <= i < n and 0 <= j < n):
                    raise ProductError(f"product indices out of range: {i + 1},{j + 1}")
                if (i, j) in table:
                    raise ProductError(f"duplicate product entry ({i + 1},{j + 1})")
                v = [Fraction(0)] * n
                for k, x in entry["coeffs"].items():
                    k = int(k) - 1
                    if not 0 <= k < n:
                        raise ProductError(f"coefficient index {k + 1} out of range")
                    v[k] = Q(x)
                table[(i, j)] = v
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ProductError):
                raise
            raise ProductError(f"malformed product data: {exc}") from exc
        return cls(n, table)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# generic tensor helpers (coefficients may be Fractions or Polynomials)


def multiply(table, u: Sequence, v: Sequence) -> list:
    n = len(table)
    out = [0] * n
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            f = ui * vj
            for k, x in enumerate(table[i][j]):
                if x:
                    out[k] = out[k] + f * x
    return out


def _unit(n: int, i: int) -> list:
    return [1 if k == i else 0 for k in range(n)]


def _sub(*vs) -> list:
    out = list(vs[0])
    for v in vs[1:]:
        out = [a - b for a, b in zip(out, v)]
    return out


def _nonzero(v) -> bool:
    return any(bool(x) for x in v)


def residuals_post1(g_c, n_c, a) -> dict:
    """x.y - y.x - [x,y] + {x,y} on pairs i < j."""
    n = len(a)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = [a[i][j][k] - a[j][i][k] - g_c[i][j][k] + n_c[i][j][k] for k in range(n)]
            out[(i, j)] = d
    return out


def residuals_post2(g_c, a) -> dict:
    """[x,y].z - x.(y.z) + y.(x.z) on triples with i < j."""
    n = len(a)
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                ez = _unit(n, k)
                lhs = multiply(a, g_c[i][j], ez)
                t1 = multiply(a, _unit(n, i), a[j][k])
                t2 = multiply(a, _unit(n, j), a[i][k])
                out[(i, j, k)] = [p - q + r for p, q, r in zip(lhs, t1, t2)]
    return out


def residuals_post3(n_c, a) -> dict:
    """x.{y,z} - {x.y,z} - {y,x.z} on triples with j < k."""
    n = len(a)
    out = {}
    for i in range(n):
        for j in range(n):
            for k in range(j + 1, n):
                lhs = multiply(a, _unit(n, i), n_c[j][k])
                t1 = multiply(n_c, a[i][j], _unit(n, k))
                t2 = multiply(n_c, _unit(n, j), a[i][k])
                out[(i, j, k)] = [p - q - r for p, q, r in zip(lhs, t1, t2)]
    return out


def residuals_symmetric(a) -> dict:
    n = len(a)
    return {(i, j): [a[i][j][k] - a[j][i][k] for k in range(n)]
            for i in range(n) for j in range(i + 1, n)}


# ---------------------------------------------------------------------------
# reports


@dataclass
class AxiomReport:
    """Per-axiom lists of (basis indices, defect vector); 0-based internally."""

    axioms: tuple
    residuals: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(not v for v in self.residuals.values())

    def failures(self) -> int:
        return sum(len(v) for v in self.residuals.values())

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "axioms": {
                str(ax): [{"indices": [i + 1 for i in idx], "defect": [fmt(x) for x in d]}
                          for idx, d in self.residuals.get(ax, [])]
                for ax in self.axioms
            },
        }


def _collect(res: dict) -> list:
    return [(idx, tuple(d)) for idx, d in sorted(res.items()) if _nonzero(d)]


def verify_pair(pair: PairOnSameSpace, p: BilinearProduct) -> AxiomReport:
    """Residuals of x.y - y.x = [x,y] - {x,y}, [x,y].z = x.(y.z) - y.(x.z),
    x.{y,z} = {x.y,z} + {y,x.z}, on all basis pairs and triples."""
    if p.dim != pair.dim:
        raise ProductError(f"product has dim {p.dim}, pair has dim {pair.dim}")
    g, n = pair.g, pair.n
    return AxiomReport((1, 2, 3), {
        1: _collect(residuals_post1(g.c, n.c, p.a)),
        2: _collect(residuals_post2(g.c, p.a)),
        3: _collect(residuals_post3(n.c, p.a)),
    })


def verify_commutative(g: LieAlgebra, p: BilinearProduct) -> AxiomReport:
    """Residuals of symmetry (4), [x,y].z = x.(y.z) - y.(x.z) (5) and
    x.[y,z] = [x.y,z] + [y,x.z] (6)."""
    if p.dim != g.dim:
        raise ProductError(f"product has dim {p.dim}, algebra has dim {g.dim}")
    return AxiomReport((4, 5, 6), {
        4: _collect(residuals_symmetric(p.a)),
        5: _collect(residuals_post2(g.c, p.a)),
        6: _collect(residuals_post3(g.c, p.a)),
    })


def left_ops(pair: PairOnSameSpace, p: BilinearProduct) -> dict:
    """L(e_i) together with checks that L lands in Der(n) and respects [,]."""
    from .liealg import is_derivation
    L = p.left_ops()
    in_der = [is_derivation(pair.n, m) for m in L]
    hom = []
    for i in range(p.dim):
        for j in range(i + 1, p.dim):
            ok = p.left(pair.g.c[i][j]) == L[i].commutator(L[j])
            if not ok:
                hom.append((i, j))
    return {"L": L, "in_der": in_der, "homomorphism": not hom, "homomorphism_failures": hom}


def phi_to_product(phi: Matrix, pair: PairOnSameSpace) -> tuple[BilinearProduct, dict]:
    """Product x.y = {phi(x), y} and the two conditions that make it post-Lie."""
    g, n = pair.g, pair.n
    if not predicates(n)["is_semisimple"]:
        raise ProductError("phi-form products need a semisimple n")
    d = pair.dim
    cols = [phi.column(i) for i in range(d)]
    p = BilinearProduct(d, {(i, j): n.bracket(cols[i], unit_vec(d, j)) for i in range(d) for j in range(d)})
    linear = True
    hom = True
    for i in range(d):
        for j in range(i + 1, d):
            lhs = [a + b for a, b in zip(n.bracket(cols[i], unit_vec(d, j)), n.bracket(unit_vec(d, i), cols[j]))]
            rhs = [a - b for a, b in zip(g.c[i][j], n.c[i][j])]
            if lhs != rhs:
                linear = False
            if tuple(phi @ g.c[i][j]) != n.bracket(cols[i], cols[j]):
                hom = False
    return p, {"linear_condition": linear, "homomorphism_condition": hom, "both": linear and hom}


# ---------------------------------------------------------------------------
# nilpotency of left multiplications


def _poly_matmul(a, b):
    n = len(a)
    m = len(b[0])
    out = [[Polynomial() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(len(b)):
            x = a[i][t]
            if x.is_zero():
                continue
            for j in range(m):
                y = b[t][j]
                if not y.is_zero():
                    out[i][j] = out[i][j] + x * y
    return out


def symbolic_traces(L: Sequence, names: Sequence[str]) -> list[Polynomial]:
    """tr(L(x)^m), m = 1..n, for L(x) = sum_i x_i L[i] with polynomial entries.

    ``L[i]`` is a list of rows of Polynomials (or rationals); ``names`` are the
    coordinate variables of x.
    """
    n = len(L[0])
    X = [[Polynomial() for _ in range(n)] for _ in range(n)]
    for i, Li in enumerate(L):
        xi = var(names[i])
        for r in range(n):
            for c in range(n):
                e = Polynomial.lift(Li[r][c])
                if not e.is_zero():
                    X[r][c] = X[r][c] + xi * e
    traces = []
    power = X
    for m in range(1, n + 1):
        if m > 1:
            power = _poly_matmul(power, X)
        tr = Polynomial()
        for r in range(n):
            tr = tr + power[r][r]
        traces.append(tr)
    return traces


def _coordinate_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


def all_left_nilpotent(p: BilinearProduct, samples: int = 50, seed: int = 0):
    """Whether every L(x) is nilpotent, decided symbolically.

    Returns (flag, witness): witness is a rational vector x with L(x) not
    nilpotent when flag is False, else None.
    """
    n = p.dim
    L = [m.to_rows() for m in p.left_ops()]
    traces = symbolic_traces(L, _coordinate_names(n))
    if all(t.is_zero() for t in traces):
        return True, None
    return False, nilpotency_witness(p, samples, seed)


def is_nilpotent_matrix(m: Matrix) -> bool:
    return m.power(m.rows).is_zero()


def nilpotency_witness(p: BilinearProduct, samples: int = 50, seed: int = 0):
    n = p.dim
    for i in range(n):
        x = unit_vec(n, i)
        if not is_nilpotent_matrix(p.left(x)):
            return x
    for x in sample_vectors(n, samples, seed):
        if not is_nilpotent_matrix(p.left(x)):
            return x
    return None


def sample_vectors(n: int, count: int, seed: int = 0) -> list[tuple]:
    """Deterministic pseudo-random small rational vectors."""
    rng = random.Random(seed)
    return [tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)) for _ in range(count)]


def sampled_left_nilpotent(p: BilinearProduct, count: int = 50, seed: int = 0) -> bool:
    return all(is_nilpotent_matrix(p.left(x)) for x in sample_vectors(p.dim, count, seed))


# ---------------------------------------------------------------------------
# invariants


def product_span(p: BilinearProduct) -> Subspace:
    n = p.dim
    return Subspace(n, [p.a[i][j] for i in range(n) for j in range(n)])


def image_in_radical(g: LieAlgebra, p: BilinearProduct) -> bool:
    return killing_radical(g).contains_subspace(product_span(p))


def annihilator(p: BilinearProduct) -> Subspace:
    n = p.dim
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append([p.a[i][j][k] for i in range(n)])  # x.e_j
            rows.append([p.a[j][i][k] for i in range(n)])  # e_j.x
    return kernel_basis(Matrix.from_rows(rows))


def invariants(g: LieAlgebra, p: BilinearProduct) -> dict:
    """Fingerprint preserved by maps that are algebra isomorphisms and Lie
    automorphisms at once; equal fingerprints prove nothing."""
    n = g.dim
    span = product_span(p)
    derived = Subspace(n, [g.c[i][j] for i in range(n) for j in range(n)])
    second = Subspace(n, [p.mul(unit_vec(n, i), b) for i in range(n) for b in span.basis])
    L_rank = Subspace(n * n, [m.flatten() for m in p.left_ops()]).dim
    nil, _ = all_left_nilpotent(p)
    return {
        "dim_product_span": span.dim,
        "dim_annihilator": annihilator(p).dim,
        "rank_left_map": L_rank,
        "all_left_nilpotent": nil,
        "dim_second_power": second.dim,
        "dim_span_plus_derived": (span + derived).dim,
        "dim_span_cap_derived": span.intersection(derived).dim,
    }
