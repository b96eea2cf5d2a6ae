"""Derivations, the space D(0,1,1), intertwiners and degree-one cohomology.

Every space here is the kernel of a linear system whose unknowns are matrix
entries in row-major order, with one equation per (basis pair, output
coordinate). Matrices act on column vectors: column c of D is D(e_c).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Matrix, Subspace, kernel_basis, matrices_of, span_of_matrices, unit_vec
from .liealg import (LieAlgebra, Representation, SemidirectProduct, center, is_derivation)


@dataclass(frozen=True)
class DerivationSpace:
    algebra: LieAlgebra
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def basis(self) -> list[Matrix]:
        n = self.algebra.dim
        return matrices_of(self.space, n, n)

    def contains(self, d: Matrix) -> bool:
        return self.space.contains(d.flatten())


def _entry(n_cols: int, r: int, c: int) -> int:
    return r * n_cols + c


def _derivation_rows(g: LieAlgebra, sign_left: int = 1) -> list[list[Fraction]]:
    """Rows of sign_left * D[x,y] - [Dx,y] - [x,Dy] = 0 over basis pairs x<y."""
    n = g.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                if sign_left:
                    for a, x in enumerate(g.c[i][j]):
                        if x:
                            row[_entry(n, k, a)] += sign_left * x
                # [D e_i, e_j]_k = sum_a D[a][i] c[a][j][k]
                for a in range(n):
                    x = g.c[a][j][k]
                    if x:
                        row[_entry(n, a, i)] -= x
                    y = g.c[i][a][k]
                    if y:
                        row[_entry(n, a, j)] -= y
                rows.append(row)
    return rows


def _kernel(rows: list, nunknowns: int) -> Subspace:
    if not rows:
        return Subspace(nunknowns, [unit_vec(nunknowns, i) for i in range(nunknowns)])
    return kernel_basis(Matrix(len(rows), nunknowns, [x for r in rows for x in r]))


def derivations(g: LieAlgebra) -> DerivationSpace:
    return DerivationSpace(g, _kernel(_derivation_rows(g), g.dim ** 2))


def inner_derivations(g: LieAlgebra) -> Subspace:
    return span_of_matrices([g.ad(i) for i in range(g.dim)], g.dim, g.dim)


def inner_and_outer(g: LieAlgebra) -> dict:
    dim_der = derivations(g).dim
    dim_inner = g.dim - center(g).dim
    return {"dim_der": dim_der, "dim_inner": dim_inner, "dim_H1": dim_der - dim_inner}


def d011(g: LieAlgebra) -> Subspace:
    """Endomorphisms phi with [phi(x), y] + [x, phi(y)] = 0 for all x, y."""
    return _kernel(_derivation_rows(g, sign_left=0), g.dim ** 2)


def intertwiners(rep: Representation) -> Subspace:
    """Commutant of the action: X with X rho(e_i) = rho(e_i) X."""
    m = rep.module_dim
    rows = []
    for a in rep.action:
        for r in range(m):
            for c in range(m):
                row = [Fraction(0)] * (m * m)
                # (X a)[r][c] - (a X)[r][c]
                for t in range(m):
                    if a[t, c]:
                        row[_entry(m, r, t)] += a[t, c]
                    if a[r, t]:
                        row[_entry(m, t, c)] -= a[r, t]
                rows.append(row)
    return _kernel(rows, m * m)


def cocycles(rep: Representation) -> Subspace:
    """Z^1(s, V): maps f (module_dim x dim s) with f([x,y]) = x.f(y) - y.f(x)."""
    s = rep.algebra
    k, m = s.dim, rep.module_dim
    rows = []
    for i in range(k):
        for j in range(i + 1, k):
            for r in range(m):
                row = [Fraction(0)] * (m * k)
                for a, x in enumerate(s.c[i][j]):
                    if x:
                        row[_entry(k, r, a)] += x
                for t in range(m):
                    if rep.action[i][r, t]:
                        row[_entry(k, t, j)] -= rep.action[i][r, t]
                    if rep.action[j][r, t]:
                        row[_entry(k, t, i)] += rep.action[j][r, t]
                rows.append(row)
    return _kernel(rows, m * k)


def coboundary(rep: Representation, b) -> Matrix:
    """The cocycle x -> -rho(x) b."""
    cols = [tuple(-v for v in (a @ b)) for a in rep.action]
    return Matrix.from_columns(cols) if cols else Matrix.zeros(rep.module_dim, 0)


def coboundaries(rep: Representation) -> Subspace:
    m, k = rep.module_dim, rep.algebra.dim
    return span_of_matrices([coboundary(rep, unit_vec(m, i)) for i in range(m)], m, k)


def cohomology_H1(rep: Representation) -> dict:
    z = cocycles(rep).dim
    b = coboundaries(rep).dim
    return {"dim_Z1": z, "dim_B1": b, "dim_H1": z - b}


# ---------------------------------------------------------------------------
# semidirect products


@dataclass(frozen=True)
class Triple:
    d1: Matrix  # r -> r
    f: Matrix  # s -> r
    d2: Matrix  # s -> s


def block(sd: SemidirectProduct, t: Triple) -> Matrix:
    """The endomorphism (a, x) -> (d1 a + f x, d2 x) of r x| s."""
    m, k = sd.r.dim, sd.s.dim
    rows = [list(t.d1.row(i)) + list(t.f.row(i)) for i in range(m)] + \
           [[0] * m + list(t.d2.row(i)) for i in range(k)]
    return Matrix.from_rows(rows)


def split_block(sd: SemidirectProduct, d: Matrix) -> Triple:
    m, k = sd.r.dim, sd.s.dim
    if any(d[m + i, j] for i in range(k) for j in range(m)):
        raise ValueError("endomorphism does not preserve r")
    d1 = Matrix.from_rows([[d[i, j] for j in range(m)] for i in range(m)])
    f = Matrix.from_rows([[d[i, m + j] for j in range(k)] for i in range(m)])
    d2 = Matrix.from_rows([[d[m + i, m + j] for j in range(k)] for i in range(k)])
    return Triple(d1, f, d2)


def verify_triple(sd: SemidirectProduct, t: Triple) -> dict:
    """Check conditions (a)-(d) for (d1, f, d2) and cross-check directly."""
    r, s, phi = sd.r, sd.s, sd.phi
    m, k = r.dim, s.dim
    if t.d1.shape != (m, m) or t.f.shape != (m, k) or t.d2.shape != (k, k):
        raise ValueError("triple shapes do not match the semidirect decomposition")
    a = is_derivation(r, t.d1)
    b = is_derivation(s, t.d2)
    c = True
    for i in range(k):
        for j in range(i + 1, k):
            lhs = t.f @ s.c[i][j]
            rhs = [x - y for x, y in zip(phi.action[i] @ t.f.column(j), phi.action[j] @ t.f.column(i))]
            if tuple(lhs) != tuple(rhs):
                c = False
    d = True
    for i in range(k):
        lhs = t.d1.commutator(phi.action[i])
        rhs = r.ad_vec(t.f.column(i)) + phi.rho(t.d2.column(i))
        if lhs != rhs:
            d = False
    direct = is_derivation(sd.algebra, block(sd, t))
    out = {"a": a, "b": b, "c": c, "d": d, "derivation": a and b and c and d}
    if out["derivation"] != direct:
        raise AssertionError("conditions (a)-(d) disagree with the direct derivation check")
    return out


def derivations_into(g: LieAlgebra, target: Subspace) -> Subspace:
    """Derivations D of g with D(g) inside ``target``."""
    n = g.dim
    rows = _derivation_rows(g)
    # annihilator of target: w with w.t = 0 for every t in target
    ann = _kernel([list(b) for b in target.basis], n)
    for w in ann.basis:
        for c in range(n):
            row = [Fraction(0)] * (n * n)
            for r, x in enumerate(w):
                if x:
                    row[_entry(n, r, c)] = x
            rows.append(row)
    return _kernel(rows, n * n)


def radical_target(sd: SemidirectProduct) -> Subspace:
    n = sd.algebra.dim
    return Subspace(n, [unit_vec(n, i) for i in sd.r_indices])


def triple_space(sd: SemidirectProduct) -> Subspace:
    """Derivations determined by triples (d1, f, 0), from conditions (a), (c), (d).

    Unknowns are the entries of d1 (m x m) then f (m x k); the result is
    embedded as block matrices on r x| s.
    """
    r, s, phi = sd.r, sd.s, sd.phi
    m, k = r.dim, s.dim
    nu = m * m + m * k

    def d1_idx(i, j):
        return i * m + j

    def f_idx(i, j):
        return m * m + i * k + j

    rows = []
    # (a): d1 in Der(r)
    for row in _derivation_rows(r):
        rows.append(row + [Fraction(0)] * (m * k))
    # (c): f cocycle
    for i in range(k):
        for j in range(i + 1, k):
            for q in range(m):
                row = [Fraction(0)] * nu
                for a, x in enumerate(s.c[i][j]):
                    if x:
                        row[f_idx(q, a)] += x
                for t in range(m):
                    if phi.action[i][q, t]:
                        row[f_idx(t, j)] -= phi.action[i][q, t]
                    if phi.action[j][q, t]:
                        row[f_idx(t, i)] += phi.action[j][q, t]
                rows.append(row)
    # (d) with d2 = 0: d1 phi(x) - phi(x) d1 - ad_r(f(x)) = 0
    for i in range(k):
        p = phi.action[i]
        for q in range(m):
            for c in range(m):
                row = [Fraction(0)] * nu
                for t in range(m):
                    if p[t, c]:
                        row[d1_idx(q, t)] += p[t, c]
                    if p[q, t]:
                        row[d1_idx(t, c)] -= p[q, t]
                # ad_r(f(x))[q][c] = sum_t f[t][i] c_r[t][c][q]
                for t in range(m):
                    x = r.c[t][c][q]
                    if x:
                        row[f_idx(t, i)] -= x
                rows.append(row)
    sol = _kernel(rows, nu)
    zero_s = Matrix.zeros(k, k)
    out = []
    for v in sol.basis:
        d1 = Matrix(m, m, v[:m * m])
        f = Matrix(m, k, v[m * m:])
        out.append(block(sd, Triple(d1, f, zero_s)).flatten())
    n = m + k
    return Subspace(n * n, out)


def intertwiner_triples(sd: SemidirectProduct) -> Subspace:
    """Block matrices of triples (d, 0, 0) with d a derivation and s-morphism."""
    m, k = sd.r.dim, sd.s.dim
    der_r = derivations(sd.r).space
    comm = intertwiners(sd.phi)
    both = der_r.intersection(comm)
    return Subspace((m + k) ** 2, [block(sd, Triple(Matrix(m, m, v), Matrix.zeros(m, k),
                                                     Matrix.zeros(k, k))).flatten()
                                   for v in both.basis])


def inner_intertwiners(sd: SemidirectProduct) -> Subspace:
    """Triples (d, 0, 0) that are inner derivations; zero for abelian r."""
    return intertwiner_triples(sd).intersection(inner_derivations(sd.algebra))
