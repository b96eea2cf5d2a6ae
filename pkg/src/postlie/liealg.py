"""Lie algebras given by structure constants, plus the built-in catalog."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import (Matrix, Q, Subspace, fmt, kernel_basis, solve_affine, unit_vec, vec,
                    zero_vec)


class AlgebraError(ValueError):
    """Invalid structure constants or representation data."""


def _dense_constants(n: int, brackets) -> list:
    c = [[list(zero_vec(n)) for _ in range(n)] for _ in range(n)]
    items = brackets.items() if isinstance(brackets, dict) else brackets
    for (i, j), v in items:
        v = vec(v)
        if len(v) != n:
            raise AlgebraError(f"bracket [{i},{j}] has wrong length")
        if i == j:
            if any(v):
                raise AlgebraError(f"[e{i + 1},e{i + 1}] must vanish")
            continue
        for k in range(n):
            c[i][j][k] += v[k]
            c[j][i][k] -= v[k]
    return c


def jacobi_defect(c: Sequence) -> list[tuple[int, int, int]]:
    """Basis triples (i<j<k) on which the Jacobi identity fails."""
    n = len(c)

    def br(u, v):
        out = [Fraction(0)] * n
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if vb:
                    row = c[a][b]
                    f = ua * vb
                    for k in range(n):
                        if row[k]:
                            out[k] += f * row[k]
        return out

    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                t1 = br(unit_vec(n, i), c[j][k])
                t2 = br(unit_vec(n, j), c[k][i])
                t3 = br(unit_vec(n, k), c[i][j])
                if any(a + b + d for a, b, d in zip(t1, t2, t3)):
                    bad.append((i, j, k))
    return bad


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    ``brackets`` maps 0-based index pairs (i, j) to the coordinate vector of
    [e_i, e_j]; the opposite pair is filled in by antisymmetry.
    """

    def __init__(self, dim: int, brackets=(), basis_names: Sequence[str] = None, name: str = None,
                 check: bool = True):
        self.dim = dim
        c = _dense_constants(dim, brackets)
        self.c = tuple(tuple(tuple(c[i][j]) for j in range(dim)) for i in range(dim))
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"e{i + 1}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise AlgebraError("basis_names length differs from dim")
        self.name = name
        self._ad = None
        if check:
            bad = jacobi_defect(self.c)
            if bad:
                i, j, k = bad[0]
                raise AlgebraError(f"Jacobi identity fails on (e{i + 1}, e{j + 1}, e{k + 1})")

    def __repr__(self):
        return f"LieAlgebra({self.name or 'anonymous'}, dim={self.dim})"

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def brackets(self) -> dict:
        """Nonzero brackets [e_i, e_j] with i < j."""
        return {(i, j): self.c[i][j] for i in range(self.dim) for j in range(i + 1, self.dim)
                if any(self.c[i][j])}

    def bracket(self, u: Sequence, v: Sequence) -> tuple:
        n = self.dim
        out = [Fraction(0)] * n
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, vb in enumerate(v):
                if vb:
                    f = ua * vb
                    row = self.c[a][b]
                    for k in range(n):
                        if row[k]:
                            out[k] += f * row[k]
        return tuple(out)

    def ad(self, i: int) -> Matrix:
        if self._ad is None:
            n = self.dim
            self._ad = tuple(Matrix.from_columns([self.c[a][b] for b in range(n)]) for a in range(n))
        return self._ad[i]

    def ad_vec(self, u: Sequence) -> Matrix:
        out = Matrix.zeros(self.dim, self.dim)
        for i, ui in enumerate(u):
            if ui:
                out = out + self.ad(i).scale(ui)
        return out

    def killing(self) -> Matrix:
        n = self.dim
        return Matrix(n, n, [(self.ad(i) @ self.ad(j)).trace() for i in range(n) for j in range(n)])

    def is_abelian(self) -> bool:
        return all(not any(v) for row in self.c for v in row)

    def negated(self, name: str = None) -> "LieAlgebra":
        """The same space with bracket -[,]."""
        return LieAlgebra(self.dim, {k: tuple(-x for x in v) for k, v in self.brackets().items()},
                          self.basis_names, name or f"-{self.name}")

    def permuted(self, order: Sequence[int], name: str = None) -> "LieAlgebra":
        """Algebra in the basis (e_order[0], e_order[1], ...)."""
        pos = {old: new for new, old in enumerate(order)}
        br = {}
        for (i, j), v in self.brackets().items():
            w = [Fraction(0)] * self.dim
            for k, x in enumerate(v):
                w[pos[k]] = x
            a, b = pos[i], pos[j]
            if a > b:
                a, b, w = b, a, [-x for x in w]
            br[(a, b)] = w
        return LieAlgebra(self.dim, br, [self.basis_names[i] for i in order], name or self.name)

    # serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": list(self.basis_names),
            "brackets": [
                {"i": i + 1, "j": j + 1,
                 "coeffs": {str(k + 1): fmt(x) for k, x in enumerate(v) if x}}
                for (i, j), v in sorted(self.brackets().items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict, name: str = None) -> "LieAlgebra":
        try:
            n = int(data["dim"])
            names = data.get("basis")
            br = {}
            for entry in data.get("brackets", []):
                i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
                if not (0 <= i < j < n):
                    raise AlgebraError(f"bracket indices must satisfy 1 <= i < j <= dim, got {i + 1},{j + 1}")
                if (i, j) in br:
                    raise AlgebraError(f"duplicate bracket ({i + 1},{j + 1})")
                v = [Fraction(0)] * n
                for k, x in entry["coeffs"].items():
                    k = int(k) - 1
                    if not 0 <= k < n:
                        raise AlgebraError(f"coefficient index {k + 1} out of range")
                    v[k] = Q(x)
                br[(i, j)] = v
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, AlgebraError):
                raise
            raise AlgebraError(f"malformed algebra data: {exc}") from exc
        return cls(n, br, names, name)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class PairOnSameSpace:
    g: LieAlgebra
    n: LieAlgebra

    def __post_init__(self):
        if self.g.dim != self.n.dim:
            raise AlgebraError(f"pair dimensions differ: {self.g.dim} vs {self.n.dim}")

    @property
    def dim(self) -> int:
        return self.g.dim


class Representation:
    """Action of a Lie algebra s on Q^m by matrices rho(e_i)."""

    def __init__(self, algebra: LieAlgebra, action: Sequence[Matrix], check: bool = True):
        self.algebra = algebra
        self.action = tuple(action)
        if len(self.action) != algebra.dim:
            raise AlgebraError("need one matrix per basis element")
        self.module_dim = self.action[0].rows if self.action else 0
        for m in self.action:
            if m.shape != (self.module_dim, self.module_dim):
                raise AlgebraError("action matrices must be square of equal size")
        if check:
            bad = self.homomorphism_defect()
            if bad:
                raise AlgebraError(f"rho([e{bad[0][0] + 1},e{bad[0][1] + 1}]) != [rho, rho]")

    def rho(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.module_dim, self.module_dim)
        for i, xi in enumerate(x):
            if xi:
                out = out + self.action[i].scale(xi)
        return out

    def homomorphism_defect(self) -> list[tuple[int, int]]:
        bad = []
        n = self.algebra.dim
        for i in range(n):
            for j in range(i + 1, n):
                lhs = self.rho(self.algebra.c[i][j])
                if lhs != self.action[i].commutator(self.action[j]):
                    bad.append((i, j))
        return bad

    def direct_sum(self, other: "Representation") -> "Representation":
        mats = []
        a, b = self.module_dim, other.module_dim
        for x, y in zip(self.action, other.action):
            rows = [list(x.row(i)) + [0] * b for i in range(a)] + \
                   [[0] * a + list(y.row(i)) for i in range(b)]
            mats.append(Matrix.from_rows(rows))
        return Representation(self.algebra, mats)

    @classmethod
    def trivial(cls, algebra: LieAlgebra, module_dim: int) -> "Representation":
        return cls(algebra, [Matrix.zeros(module_dim, module_dim)] * algebra.dim)


# ---------------------------------------------------------------------------
# subspaces and series


def bracket_span(g: LieAlgebra, u: Subspace, w: Subspace) -> Subspace:
    return Subspace(g.dim, [g.bracket(a, b) for a in u.basis for b in w.basis])


def whole(g: LieAlgebra) -> Subspace:
    return Subspace(g.dim, [unit_vec(g.dim, i) for i in range(g.dim)])


def series(g: LieAlgebra, kind: str = "lower_central") -> list[Subspace]:
    """Lower central or derived series, stopping once it stabilizes."""
    if kind not in ("lower_central", "derived"):
        raise ValueError(f"unknown series {kind!r}")
    full = whole(g)
    terms = [full]
    while True:
        last = terms[-1]
        nxt = bracket_span(g, full if kind == "lower_central" else last, last)
        if nxt == last:
            return terms
        terms.append(nxt)


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    # rows: coefficient of e_k in [x, e_j], as a function of x
    rows = [[g.c[i][j][k] for i in range(n)] for j in range(n) for k in range(n)]
    return kernel_basis(Matrix.from_rows(rows) if rows else Matrix.zeros(0, n))


def is_ideal(g: LieAlgebra, sub: Subspace) -> bool:
    return all(sub.contains(g.bracket(unit_vec(g.dim, i), b)) for i in range(g.dim) for b in sub.basis)


def is_subalgebra(g: LieAlgebra, sub: Subspace) -> bool:
    return all(sub.contains(g.bracket(a, b)) for a in sub.basis for b in sub.basis)


def restrict(g: LieAlgebra, sub: Subspace, name: str = None) -> LieAlgebra:
    """Subalgebra in the echelon basis of ``sub``."""
    if not is_subalgebra(g, sub):
        raise AlgebraError("subspace is not closed under the bracket")
    br = {}
    for a in range(sub.dim):
        for b in range(a + 1, sub.dim):
            br[(a, b)] = sub.coordinates(g.bracket(sub.basis[a], sub.basis[b]))
    return LieAlgebra(sub.dim, br, name=name)


def quotient(g: LieAlgebra, ideal: Subspace, name: str = None) -> LieAlgebra:
    """g / ideal on the complement spanned by the non-pivot basis vectors."""
    if not is_ideal(g, ideal):
        raise AlgebraError("not an ideal")
    keep = ideal.complement_indices()
    br = {}
    for a, i in enumerate(keep):
        for b in range(a + 1, len(keep)):
            j = keep[b]
            r = ideal.reduce(g.c[i][j])
            br[(a, b)] = [r[k] for k in keep]
    return LieAlgebra(len(keep), br, [g.basis_names[i] for i in keep], name)


def killing_radical(g: LieAlgebra) -> Subspace:
    """Solvable radical: the Killing-orthogonal complement of [g, g]."""
    derived = bracket_span(g, whole(g), whole(g))
    kill = g.killing()
    if derived.dim == 0:
        return whole(g)
    rows = [kill @ d for d in derived.basis]  # kill symmetric: row d.K
    rad = kernel_basis(Matrix.from_rows(rows))
    if not is_solvable(restrict(g, rad)):
        raise AssertionError("computed radical is not solvable")
    return rad


def is_nilpotent(g: LieAlgebra) -> bool:
    return series(g, "lower_central")[-1].dim == 0


def is_solvable(g: LieAlgebra) -> bool:
    return series(g, "derived")[-1].dim == 0


def predicates(g: LieAlgebra) -> dict:
    derived = series(g, "derived")
    lower = series(g, "lower_central")
    return {
        "is_nilpotent": lower[-1].dim == 0,
        "is_solvable": derived[-1].dim == 0,
        "is_perfect": len(derived) == 1,
        "is_semisimple": g.dim > 0 and g.killing().rank() == g.dim,
        "is_unimodular": all(g.ad(i).trace() == 0 for i in range(g.dim)),
        "center_dim": center(g).dim,
    }


# ---------------------------------------------------------------------------
# constructions


def from_matrices(mats: Sequence[Matrix], names: Sequence[str] = None, name: str = None) -> LieAlgebra:
    """Structure constants of a matrix Lie algebra with the given basis."""
    n = len(mats)
    cols = [m.flatten() for m in mats]
    a = Matrix.from_columns(cols)
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            sol = solve_affine(a, mats[i].commutator(mats[j]).flatten())
            if sol is None:
                raise AlgebraError("matrices do not span a Lie algebra")
            part, hom = sol
            if hom.dim:
                raise AlgebraError("matrices are linearly dependent")
            br[(i, j)] = part
    return LieAlgebra(n, br, names, name)


@dataclass(frozen=True)
class SemidirectProduct:
    """r x| s with bracket ([a,b] + phi(x)b - phi(y)a, [x,y]); r comes first."""

    algebra: LieAlgebra
    r: LieAlgebra
    s: LieAlgebra
    phi: Representation

    @property
    def r_indices(self) -> range:
        return range(self.r.dim)

    @property
    def s_indices(self) -> range:
        return range(self.r.dim, self.r.dim + self.s.dim)


def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = d @ g.c[i][j]
            rhs = [a + b for a, b in zip(g.bracket(d.column(i), unit_vec(n, j)),
                                         g.bracket(unit_vec(n, i), d.column(j)))]
            if tuple(lhs) != tuple(rhs):
                return False
    return True


def semidirect(r: LieAlgebra, s: LieAlgebra, phi: Representation, name: str = None) -> SemidirectProduct:
    if phi.algebra != s or phi.module_dim != r.dim:
        raise AlgebraError("phi must be a representation of s on the space of r")
    for i, m in enumerate(phi.action):
        if not is_derivation(r, m):
            raise AlgebraError(f"phi(e{i + 1}) is not a derivation of r")
    m, k = r.dim, s.dim
    n = m + k
    br = {}
    for (i, j), v in r.brackets().items():
        br[(i, j)] = list(v) + [0] * k
    for (p, q), v in s.brackets().items():
        br[(m + p, m + q)] = [0] * m + list(v)
    for i in range(m):
        for p in range(k):
            # [r_i, s_p] = -phi(s_p) r_i
            col = phi.action[p].column(i)
            if any(col):
                br[(i, m + p)] = [-x for x in col] + [0] * k
    names = list(r.basis_names) + list(s.basis_names)
    if len(set(names)) != n:
        names = [f"e{i + 1}" for i in range(n)]
    algebra = LieAlgebra(n, br, names, name)
    return SemidirectProduct(algebra, r, s, phi)


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str = None) -> LieAlgebra:
    phi = Representation.trivial(b, a.dim)
    return semidirect(a, b, phi, name).algebra


# ---------------------------------------------------------------------------
# catalog


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, name=f"abelian({n})")


def sl2() -> LieAlgebra:
    # e1 = E, e2 = F, e3 = H
    return LieAlgebra(3, {(0, 1): (0, 0, 1), (0, 2): (-2, 0, 0), (1, 2): (0, 2, 0)}, name="sl2")


def sl2_irrep(m: int) -> Representation:
    """V(m): sl2 acting on binary forms of degree m-1, basis x^(m-1-k) y^k."""
    if m < 1:
        raise AlgebraError("V(m) needs m >= 1")
    e = [[0] * m for _ in range(m)]
    f = [[0] * m for _ in range(m)]
    h = [[0] * m for _ in range(m)]
    for k in range(m):
        a, b = m - 1 - k, k
        if k > 0:
            e[k - 1][k] = b
        if k < m - 1:
            f[k + 1][k] = a
        h[k][k] = a - b
    return Representation(sl2(), [Matrix.from_rows(e), Matrix.from_rows(f), Matrix.from_rows(h)])


def sl2_ltimes_V(m: int) -> LieAlgebra:
    """sl2 x| V(m), sl2 basis first as e1..e3, module basis after."""
    sd = semidirect(abelian(m), sl2(), sl2_irrep(m))
    order = list(range(m, m + 3)) + list(range(m))
    g = sd.algebra.permuted(order, name=f"sl2_ltimes_V({m})")
    return LieAlgebra(g.dim, g.brackets(), name=g.name)


def sl3_chevalley() -> LieAlgebra:
    """sl3 with e1=E12, e2=E13, e3=E21, e4=E23, e5=E31, e6=E32,
    e7=E11-E22, e8=E22-E33."""
    def unit(i, j):
        m = [[0] * 3 for _ in range(3)]
        m[i][j] = 1
        return Matrix.from_rows(m)
    mats = [unit(0, 1), unit(0, 2), unit(1, 0), unit(1, 2), unit(2, 0), unit(2, 1),
            Matrix.diag([1, -1, 0]), Matrix.diag([0, 1, -1])]
    return from_matrices(mats, name="sl3_chevalley")


def r2() -> LieAlgebra:
    return LieAlgebra(2, {(0, 1): (1, 0)}, name="r2")


def r3_diag(lam) -> LieAlgebra:
    lam = Q(lam)
    return LieAlgebra(3, {(0, 1): (0, 1, 0), (0, 2): (0, 0, lam)}, name=f"r3_diag({fmt(lam)})")


def r3_jordan() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): (0, 1, 0), (0, 2): (0, 1, 1)}, name="r3_jordan")


def heisenberg() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): (0, 0, 1)}, name="heisenberg")


def f23() -> LieAlgebra:
    """Free 3-step nilpotent algebra on two generators."""
    return LieAlgebra(5, {(0, 1): (0, 0, 1, 0, 0), (0, 2): (0, 0, 0, 1, 0),
                          (1, 2): (0, 0, 0, 0, 1)}, name="f23")


def h1_plus_C() -> LieAlgebra:
    return LieAlgebra(4, {(0, 1): (0, 0, 1, 0)}, name="h1_plus_C")


_PARAMETRIZED = {"abelian", "r3_diag", "sl2_ltimes_V"}

CATALOG_NAMES = ("abelian", "r2", "r3_diag", "r3_jordan", "heisenberg", "n3", "f23", "sl2",
                 "sl3_chevalley", "sl2_ltimes_V", "h1_plus_C")


def catalog(name: str, param=None) -> LieAlgebra:
    """Look up a catalog algebra.

    Parameters may be passed separately or inline as ``name(param)``;
    ``abelian3`` and ``sl2_ltimes_V2`` are accepted shorthands.
    """
    m = re.fullmatch(r"([A-Za-z_0-9]+?)\((.+)\)", name.strip())
    if m:
        name, inline = m.group(1), m.group(2)
        if param is not None and Q(param) != Q(inline):
            raise AlgebraError("conflicting parameters")
        param = inline
    else:
        m = re.fullmatch(r"(abelian|sl2_ltimes_V)(\d+)", name.strip())
        if m:
            name, param = m.group(1), m.group(2)
    if name not in CATALOG_NAMES:
        raise AlgebraError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if name in _PARAMETRIZED:
        if param is None:
            raise AlgebraError(f"{name} needs a parameter")
        if name == "r3_diag":
            return r3_diag(param)
        p = Q(param)
        if p.denominator != 1 or p < 1:
            raise AlgebraError(f"{name} needs a positive integer parameter")
        if name == "abelian":
            return abelian(int(p))
        if p < 2:
            raise AlgebraError("sl2_ltimes_V needs m >= 2")
        return sl2_ltimes_V(int(p))
    if param is not None:
        raise AlgebraError(f"{name} takes no parameter")
    if name == "n3":
        g = heisenberg()
        return LieAlgebra(3, g.brackets(), name="n3")
    return {
        "r2": r2, "r3_jordan": r3_jordan, "heisenberg": heisenberg, "f23": f23, "sl2": sl2,
        "sl3_chevalley": sl3_chevalley, "h1_plus_C": h1_plus_C,
    }[name]()


def catalog_entries() -> list[LieAlgebra]:
    """Every catalog algebra, parametrized ones at representative values."""
    out = []
    for name in CATALOG_NAMES:
        if name == "abelian":
            out += [abelian(n) for n in (1, 2, 3)]
        elif name == "r3_diag":
            out += [r3_diag(x) for x in (1, -1, Fraction(1, 2), 0)]
        elif name == "sl2_ltimes_V":
            out += [sl2_ltimes_V(m) for m in (2, 3, 4)]
        else:
            out.append(catalog(name))
    return out
