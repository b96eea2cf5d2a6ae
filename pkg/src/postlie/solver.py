"""Polynomial systems for post-Lie structures, their solution, and
classification of commutative structures up to isomorphism.

Each system is solved in two stages: the equations that are linear in the
unknowns are eliminated exactly, and the quadratic ones are rewritten in the
remaining free unknowns before any Groebner computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .exact import Matrix, Q, Subspace, _rref_rows, fmt, unit_vec
from .liealg import LieAlgebra, PairOnSameSpace, predicates
from .poly import (SAMPLE_VALUES, Budget, BudgetExhausted, Ideal, Polynomial, as_budget,
                   case_split, contains_one, find_point, find_points, groebner, is_empty_with, normal_form,
                   parse, sample_points, var)
from .structures import (BilinearProduct, invariants, multiply, residuals_post2, residuals_post3,
                         symbolic_traces, verify_commutative, verify_pair)


class SolverError(ValueError):
    pass


def _flat(res: dict) -> list[Polynomial]:
    out = []
    seen = set()
    for _, d in sorted(res.items()):
        for x in d:
            x = Polynomial.lift(x)
            if x.is_zero():
                continue
            # scale so the leading coefficient is 1; drops duplicates up to sign
            x = x * (1 / x.sorted_terms()[0][1])
            if x not in seen:
                seen.add(x)
                out.append(x)
    return out


def _evaluate_table(table, point: dict) -> BilinearProduct:
    n = len(table)
    return BilinearProduct(n, {(i, j): [Polynomial.lift(x).evaluate(point) for x in table[i][j]]
                               for i in range(n) for j in range(n)})


def _subs_table(table, mapping: dict):
    return [[[Polynomial.lift(x).subs(mapping) for x in v] for v in row] for row in table]


def table_from_left_ops(mats) -> list:
    """a[i][j][k] = mats[i][k][j] for rows-of-polynomials matrices."""
    n = len(mats)
    return [[[Polynomial.lift(mats[i][k][j]) for k in range(n)] for j in range(n)] for i in range(n)]


def left_ops_of_table(table) -> list:
    n = len(table)
    return [[[table[i][j][k] for j in range(n)] for k in range(n)] for i in range(n)]


def _product_table(p) -> list:
    if isinstance(p, BilinearProduct):
        return [[[Polynomial.const(x) for x in v] for v in row] for row in p.a]
    return table_from_left_ops(p)


# ---------------------------------------------------------------------------
# systems


@dataclass
class PolySystem:
    """Equations over raw unknowns plus their linear-stage reduction.

    ``embedding`` writes every raw unknown as an affine polynomial in
    ``params``; ``reduced`` are the remaining equations in ``params``.
    """

    kind: str
    unknowns: tuple
    linear: list
    quadratic: list
    template: list
    params: tuple
    embedding: dict
    reduced: list
    consistent: bool
    check: Callable
    label: str = ""
    cuts: list = field(default_factory=list)
    full: "PolySystem" = None

    @property
    def equations(self) -> list:
        return list(self.linear) + list(self.quadratic)

    def raw_ideal(self) -> Ideal:
        return Ideal(self.equations, self.unknowns)

    def reduced_ideal(self) -> Ideal:
        return Ideal(self.reduced, self.params)

    def template_in_params(self) -> list:
        return _subs_table(self.template, self.embedding)

    def raw_point(self, values: dict) -> dict:
        return {u: e.evaluate(values) for u, e in self.embedding.items()}

    def product_at(self, values: dict) -> BilinearProduct:
        return _evaluate_table(self.template, self.raw_point(values))

    def verify_at(self, values: dict) -> bool:
        return self.check(self.product_at(values), self.raw_point(values))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "unknowns": len(self.unknowns),
            "linear_equations": len(self.linear),
            "quadratic_equations": len(self.quadratic),
            "params": list(self.params),
            "reduced": [str(p) for p in self.reduced],
            "consistent": self.consistent,
        }


def _linear_stage(linear: Sequence[Polynomial], unknowns: Sequence[str]):
    """Solve the affine system; free unknowns become the parameters.

    Returns None when inconsistent, else (params, embedding).
    """
    n = len(unknowns)
    idx = {u: i for i, u in enumerate(unknowns)}
    rows = []
    for p in linear:
        if p.degree() > 1:
            raise SolverError("linear stage received a nonlinear equation")
        row = [Fraction(0)] * (n + 1)
        for m, c in p.terms.items():
            if m == ():
                row[n] = -c
            else:
                row[idx[m[0][0]]] += c
        rows.append(row)
    rows, pivots = _rref_rows(rows, n + 1)
    if n in pivots:
        return None
    piv = set(pivots)
    free = tuple(u for j, u in enumerate(unknowns) if j not in piv)
    emb = {u: var(u) for u in free}
    for r, p in enumerate(pivots):
        expr = Polynomial.const(rows[r][n])
        for f in free:
            c = rows[r][idx[f]]
            if c:
                expr = expr - var(f) * c
        emb[unknowns[p]] = expr
    return free, {u: emb[u] for u in unknowns}


def _finish(kind, unknowns, linear, quadratic, template, check, label) -> PolySystem:
    stage = _linear_stage(linear, unknowns)
    if stage is None:
        return PolySystem(kind, tuple(unknowns), linear, quadratic, template, (), {}, [],
                          False, check, label)
    params, emb = stage
    reduced = _flat({(i,): [q.subs(emb)] for i, q in enumerate(quadratic)})
    return PolySystem(kind, tuple(unknowns), linear, quadratic, template, params, emb, reduced,
                      True, check, label)


def _sym_name(i, j, k):
    a, b = min(i, j), max(i, j)
    return f"s{a + 1}_{b + 1}_{k + 1}"


def setup_general(pair: PairOnSameSpace) -> PolySystem:
    """Unknowns are the symmetric parts s_ij^k (i <= j); the antisymmetric
    part is fixed to half of [x,y] - {x,y}, so x.y - y.x = [x,y] - {x,y}
    holds by construction."""
    g, nn = pair.g, pair.n
    n = pair.dim
    unknowns = [_sym_name(i, j, k) for i in range(n) for j in range(i, n) for k in range(n)]
    half = Fraction(1, 2)
    template = [[[var(_sym_name(i, j, k)) + (g.c[i][j][k] - nn.c[i][j][k]) * half
                  for k in range(n)] for j in range(n)] for i in range(n)]
    linear = _flat(residuals_post3(nn.c, template))
    quadratic = _flat(residuals_post2(g.c, template))

    def check(p, _raw):
        return verify_pair(pair, p).passed

    return _finish("general", unknowns, linear, quadratic, template, check,
                   f"general({g.name}, {nn.name})")


def _phi_name(r, c):
    return f"p{r + 1}_{c + 1}"


def _phi_template(n_alg: LieAlgebra):
    n = n_alg.dim
    cols = [[var(_phi_name(r, i)) for r in range(n)] for i in range(n)]
    table = [[multiply(n_alg.c, cols[i], _unit(n, j)) for j in range(n)] for i in range(n)]
    return cols, table


def _unit(n, i):
    return [1 if k == i else 0 for k in range(n)]


def _require_semisimple(n_alg: LieAlgebra):
    if not predicates(n_alg)["is_semisimple"]:
        raise SolverError(f"{n_alg.name or 'n'} is not semisimple; phi-form needs semisimple n")


def _phi_equations(g_c, n_alg: LieAlgebra, cols):
    n = n_alg.dim
    linear, quadratic = {}, {}
    for i in range(n):
        for j in range(i + 1, n):
            a = multiply(n_alg.c, cols[i], _unit(n, j))
            b = multiply(n_alg.c, _unit(n, i), cols[j])
            linear[(i, j)] = [a[k] + b[k] - g_c[i][j][k] + n_alg.c[i][j][k] for k in range(n)]
            lhs = [sum((cols[r][k] * g_c[i][j][r] for r in range(n) if g_c[i][j][r]), Polynomial())
                   for k in range(n)]
            rhs = multiply(n_alg.c, cols[i], cols[j])
            quadratic[(i, j)] = [x - y for x, y in zip(lhs, rhs)]
    return linear, quadratic


def phi_matrix(values: dict, n: int) -> Matrix:
    return Matrix(n, n, [values.get(_phi_name(r, c), 0) for r in range(n) for c in range(n)])


def setup_phi(pair: PairOnSameSpace) -> PolySystem:
    """Unknowns are the entries p{r}_{c} of phi with x.y = {phi(x), y}."""
    g, nn = pair.g, pair.n
    _require_semisimple(nn)
    n = pair.dim
    unknowns = [_phi_name(r, c) for r in range(n) for c in range(n)]
    cols, template = _phi_template(nn)
    lin, quad = _phi_equations(g.c, nn, cols)

    def check(p, _raw):
        return verify_pair(pair, p).passed

    return _finish("phi", unknowns, _flat(lin), _flat(quad), template, check,
                   f"phi({g.name}, {nn.name})")


def scaled_bracket(alg: LieAlgebra, t) -> LieAlgebra:
    t = Q(t)
    return LieAlgebra(alg.dim, {k: tuple(t * x for x in v) for k, v in alg.brackets().items()},
                      name=f"{fmt(t)}*{alg.name}")


def setup_phi_scaled(n_alg: LieAlgebra, scale_var: str = "t") -> PolySystem:
    """phi-form system on the pairs (t{,}, {,}) with the scalar t unknown."""
    _require_semisimple(n_alg)
    n = n_alg.dim
    t = var(scale_var)
    g_c = [[[t * x for x in n_alg.c[i][j]] for j in range(n)] for i in range(n)]
    unknowns = [scale_var] + [_phi_name(r, c) for r in range(n) for c in range(n)]
    cols, template = _phi_template(n_alg)
    lin, quad = _phi_equations(g_c, n_alg, cols)
    equations = _flat({**{(0,) + k: v for k, v in lin.items()}, **{(1,) + k: v for k, v in quad.items()}})
    emb = {u: var(u) for u in unknowns}

    def check(p, raw):
        scale = raw[scale_var]
        if scale == 0:
            return False
        return verify_pair(PairOnSameSpace(scaled_bracket(n_alg, scale), n_alg), p).passed

    return PolySystem("phi_scaled", tuple(unknowns), [], equations, template, tuple(unknowns), emb,
                      equations, True, check, f"phi_scaled({n_alg.name})")


def setup_pair(pair: PairOnSameSpace) -> PolySystem:
    """phi-form when n is semisimple (smaller and equivalent), else general."""
    if predicates(pair.n)["is_semisimple"]:
        return setup_phi(pair)
    return setup_general(pair)


def setup_commutative(g: LieAlgebra, parametrization=None) -> PolySystem:
    """Symmetric unknowns s_ij^k; the derivation law is the linear stage and
    [x,y].z = x.(y.z) - y.(x.z) the quadratic one.

    ``parametrization`` = (names, left-op matrices linear in names) replaces
    the default free unknowns; it must span exactly the linear-stage
    solution space.
    """
    n = g.dim
    unknowns = [_sym_name(i, j, k) for i in range(n) for j in range(i, n) for k in range(n)]
    template = [[[var(_sym_name(i, j, k)) for k in range(n)] for j in range(n)] for i in range(n)]
    linear = _flat(residuals_post3(g.c, template))
    quadratic = _flat(residuals_post2(g.c, template))

    def check(p, _raw):
        return verify_commutative(g, p).passed

    system = _finish("commutative", unknowns, linear, quadratic, template, check,
                     f"commutative({g.name})")
    if parametrization is None:
        return system
    names, mats = parametrization
    table = table_from_left_ops(mats)
    emb = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[i][j][k] != table[j][i][k]:
                    raise SolverError("parametrization is not symmetric")
                if i <= j:
                    emb[_sym_name(i, j, k)] = table[i][j][k]
    for e in emb.values():
        if e.degree() > 1 or e.constant_value():
            raise SolverError("parametrization must be linear and homogeneous")
    images = [[emb[u].linear_part().get(name, 0) for u in unknowns] for name in names]
    given = Subspace(len(unknowns), images)
    if given.dim != len(names):
        raise SolverError("parametrization is not injective")
    free_idx = [unknowns.index(p) for p in system.params]
    for v in given.basis:
        point = {p: v[i] for p, i in zip(system.params, free_idx)}
        if any(system.embedding[u].evaluate(point) != v[k] for k, u in enumerate(unknowns)):
            raise SolverError("parametrization leaves the linear-stage solution space")
    # linear forms in the free unknowns that cut the parametrized subspace out
    restricted = Subspace(len(free_idx), [[v[i] for i in free_idx] for v in given.basis])
    from .exact import kernel_basis
    rows = restricted.basis or ((Fraction(0),) * len(free_idx),)
    cuts = kernel_basis(Matrix.from_rows([list(r) for r in rows])).basis if restricted.dim else \
        [unit_vec(len(free_idx), i) for i in range(len(free_idx))]
    forms = []
    for c in cuts:
        form = Polynomial()
        for p, x in zip(system.params, c):
            if x:
                form = form + var(p) * x
        forms.append(form)
    reduced = _flat({(i,): [q.subs(emb)] for i, q in enumerate(quadratic)})
    out = PolySystem("commutative", system.unknowns, linear, quadratic, template, tuple(names), emb,
                     reduced, True, check, system.label)
    out.cuts = forms
    out.full = system
    return out


def check_parametrization(system: PolySystem, budget=None) -> list[bool]:
    """For each cutting form l: 1 is in (full reduced system) + (1 - t*l),
    i.e. l vanishes on every solution, so no solution lies outside the
    parametrization."""
    full = system.full
    results = []
    for form in system.cuts:
        empty, _ = is_empty_with(full.reduced, [form], full.params, budget, order="grevlex")
        results.append(empty)
    return results


# ---------------------------------------------------------------------------
# solving


@dataclass
class SolutionFamily:
    """Products parametrized by ``params`` subject to ``constraints = 0``
    and ``nonvanishing != 0``."""

    params: tuple
    table: list  # a[i][j][k] as Polynomials in params
    constraints: tuple
    nonvanishing: tuple
    resolved: bool
    samples: list = field(default_factory=list)
    raw: dict = field(default_factory=dict)  # raw unknown -> Polynomial in params

    def raw_point(self, values: dict) -> dict:
        return {u: e.evaluate(values) for u, e in self.raw.items()}

    def at(self, values: dict) -> BilinearProduct:
        return _evaluate_table(self.table, values)

    def left_ops(self) -> list:
        return left_ops_of_table(self.table)

    def is_point(self) -> bool:
        return self.resolved and not self.params

    def to_json(self) -> dict:
        return {
            "params": list(self.params),
            "product": {"L": [[[str(x) for x in row] for row in L] for L in self.left_ops()]},
            "constraints": [str(p) for p in self.constraints],
            "nonvanishing": [str(p) for p in self.nonvanishing],
            "resolved": self.resolved,
            "samples": [{k: fmt(v) for k, v in s.items()} for s in self.samples],
        }


@dataclass
class SolveResult:
    status: str  # witness | families | empty | inconclusive
    families: list = field(default_factory=list)
    witness: BilinearProduct = None
    witness_point: dict = None
    certificate: dict = None
    steps: int = 0
    reason: str = ""
    identification: Matrix = None  # psi when n was pulled back along psi
    target: LieAlgebra = None  # the n bracket the witness is verified against

    def to_json(self) -> dict:
        out = {"status": self.status, "steps": self.steps}
        if self.reason:
            out["reason"] = self.reason
        if self.identification is not None:
            out["identification"] = self.identification.to_str_rows()
            out["pulled_back_n"] = self.target.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.witness is not None:
            out["witness"] = {"point": {k: fmt(v) for k, v in sorted(self.witness_point.items())},
                              "product": self.witness.to_json()}
        out["families"] = [f.to_json() for f in self.families]
        return out


def rabinowitsch(generators, nonvanishing, variables) -> tuple[list, tuple]:
    """Append t * prod(nonvanishing) - 1 with a fresh t."""
    gens = list(generators)
    names = tuple(variables)
    if nonvanishing:
        from .poly import fresh_name
        t = fresh_name("_t", names)
        prod = Polynomial.const(1)
        for u in nonvanishing:
            prod = prod * u
        gens.append(var(t) * prod - 1)
        names = names + (t,)
    return gens, names


def make_certificate(generators, variables, order="grevlex", budget=None, nonvanishing=(),
                     scope: str = "") -> dict:
    gens, names = rabinowitsch(generators, nonvanishing, variables)
    gb = groebner(gens, names, order, budget)
    out = {"variables": list(names), "order": order, "generators": [str(p) for p in gens],
           "basis": gb.to_strings(), "contains_one": contains_one(gb)}
    if scope:
        out["scope"] = scope
    return out


def verify_certificate(cert: dict, order: str = "lex", budget=None) -> bool:
    """Recompute the basis from the listed generators in another order."""
    gens = [parse(s) for s in cert["generators"]]
    return contains_one(groebner(gens, cert["variables"], order, budget))


def solve(system: PolySystem, budget=None, depth: int = 6, mode: str = "families",
          order: str = "lex") -> SolveResult:
    """Solve ``system``; every reported structure has passed the verifier.

    mode "witness" stops at the first verified point, "families" returns the
    full case decomposition.
    """
    if mode not in ("families", "witness"):
        raise ValueError("mode must be 'families' or 'witness'")
    if not 0 <= depth <= 12:
        raise ValueError("split depth must be between 0 and 12")
    budget = as_budget(budget)
    start = budget.used
    try:
        if not system.consistent:
            cert = make_certificate(system.linear, system.unknowns, order, budget,
                                    scope=system.label)
            return SolveResult("empty", certificate=cert, steps=budget.used - start,
                               reason="linear equations are inconsistent")
        gb = groebner(system.reduced, system.params, order, budget)
        if contains_one(gb):
            cert = make_certificate(system.equations, system.unknowns, "grevlex", budget,
                                    scope=system.label)
            if not cert["contains_one"]:
                raise AssertionError("reduced and raw systems disagree on emptiness")
            return SolveResult("empty", certificate=cert, steps=budget.used - start)
        comps = case_split(system.reduced, system.params, depth, budget)
        families = []
        embedded = system.template_in_params()
        for comp in comps:
            table = _subs_table(embedded, comp.substitution_map())
            sub = comp.substitution_map()
            fam = SolutionFamily(comp.free, table, comp.residual, comp.nonvanishing, comp.resolved,
                                 raw={u: e.subs(sub) for u, e in system.embedding.items()})
            if comp.resolved:
                pts = sample_points(comp, 5)
            else:
                pts = find_points(comp.residual, comp.free, comp.nonvanishing, budget, depth,
                                  count=1 if mode == "witness" else 5)
            for pt in pts:
                full = comp.point(pt)
                if not system.verify_at(full):
                    raise AssertionError("solver produced a product failing verification")
                fam.samples.append(pt)
            families.append(fam)
            if mode == "witness" and fam.samples:
                values = comp.point(fam.samples[0])
                return SolveResult("witness", families, system.product_at(values),
                                   system.raw_point(values), steps=budget.used - start)
        witness = next(((f, s) for f in families for s in f.samples), None)
        if mode == "witness" or witness is None:
            return SolveResult("inconclusive", families, steps=budget.used - start,
                               reason="no rational point found")
        fam, s = witness
        return SolveResult("families", families, fam.at(s), fam.raw_point(s), steps=budget.used - start)
    except BudgetExhausted as exc:
        return SolveResult("inconclusive", steps=budget.used - start,
                           reason=f"budget exhausted after {exc.used} of {exc.limit} steps")


def pull_back(n_alg: LieAlgebra, psi: Matrix) -> LieAlgebra:
    """The bracket psi^-1 {psi x, psi y} on the domain of psi."""
    from .exact import solve_affine
    d = n_alg.dim
    inv = []
    for i in range(d):
        sol = solve_affine(psi, unit_vec(d, i))
        if sol is None or sol[1].dim:
            raise SolverError("identification is not invertible")
        inv.append(sol[0])
    inv_m = Matrix.from_columns(inv)
    br = {}
    for i in range(d):
        for j in range(i + 1, d):
            v = inv_m @ n_alg.bracket(psi.column(i), psi.column(j))
            if any(v):
                br[(i, j)] = v
    return LieAlgebra(d, br, name=f"pullback({n_alg.name})")


def _determinant(cols) -> Polynomial:
    d = len(cols)
    det = Polynomial()
    for perm in itertools.permutations(range(d)):
        sign = 1
        for x in range(d):
            for y in range(x + 1, d):
                if perm[x] > perm[y]:
                    sign = -sign
        term = Polynomial.const(sign)
        for c in range(d):
            term = term * cols[c][perm[c]]
        det = det + term
    return det


def identification_free_system(pair: PairOnSameSpace):
    """Equations for a structure on (g, n) under some linear identification.

    Unknowns are psi (g -> n, entries a{r}_{c}) and chi = phi o psi
    (b{r}_{c}); the structure exists for some identification iff the system
    has a solution with det psi != 0. Returns (equations, det psi, names).
    """
    g, nn = pair.g, pair.n
    _require_semisimple(nn)
    d = pair.dim
    psi = [[var(f"a{r + 1}_{c + 1}") for r in range(d)] for c in range(d)]
    chi = [[var(f"b{r + 1}_{c + 1}") for r in range(d)] for c in range(d)]
    eqs = {}
    for i in range(d):
        for j in range(i + 1, d):
            gij = g.c[i][j]
            lhs = [x + y + z for x, y, z in zip(multiply(nn.c, chi[i], psi[j]),
                                              multiply(nn.c, psi[i], chi[j]),
                                              multiply(nn.c, psi[i], psi[j]))]
            img = [sum((psi[r][k] * gij[r] for r in range(d) if gij[r]), Polynomial()) for k in range(d)]
            eqs[(0, i, j)] = [a - b for a, b in zip(lhs, img)]
            img = [sum((chi[r][k] * gij[r] for r in range(d) if gij[r]), Polynomial()) for k in range(d)]
            eqs[(1, i, j)] = [a - b for a, b in zip(img, multiply(nn.c, chi[i], chi[j]))]
    names = tuple(f"a{r + 1}_{c + 1}" for r in range(d) for c in range(d)) + \
        tuple(f"b{r + 1}_{c + 1}" for r in range(d) for c in range(d))
    return _flat(eqs), _determinant(psi), names


IDENTIFICATION_SCALES = (Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                         Fraction(1, 2), Fraction(-1, 2))


def monomial_identifications(d: int, limit: int):
    """Scaled permutation matrices in a fixed order, identity excluded."""
    count = 0
    for scales in itertools.product(IDENTIFICATION_SCALES, repeat=d):
        for perm in itertools.permutations(range(d)):
            entries = [[0] * d for _ in range(d)]
            for c in range(d):
                entries[perm[c]][c] = scales[c]
            m = Matrix.from_rows(entries)
            if m == Matrix.identity(d):
                continue
            yield m
            count += 1
            if count >= limit:
                return


def solve_pair(pair: PairOnSameSpace, budget=None, depth: int = 6, mode: str = "witness",
               order: str = "lex", search_limit: int = 2000) -> SolveResult:
    """Existence of post-Lie structures on (g, n).

    For semisimple n the answer "empty" is certified for every linear
    identification of the two spaces. Witnesses are searched first under the
    given identification and then under scaled permutations, pulling n back
    so the verified pair is (g, psi^* n) with psi^* n isomorphic to n.
    For other n only the given identification is examined.
    """
    budget = as_budget(budget)
    start = budget.used
    if not predicates(pair.n)["is_semisimple"]:
        return solve(setup_general(pair), budget, depth, mode, order)
    result = solve(setup_phi(pair), budget, depth, mode, order)
    if result.status in ("witness", "families"):
        return result
    if result.status == "inconclusive" and result.reason.startswith("budget"):
        return result
    try:
        eqs, det, names = identification_free_system(pair)
        empty, _ = is_empty_with(eqs, [det], names, budget, order="grevlex")
        if empty:
            cert = make_certificate(eqs, names, "grevlex", budget, [det], scope="all identifications")
            return SolveResult("empty", certificate=cert, steps=budget.used - start)
    except BudgetExhausted as exc:
        return SolveResult("inconclusive", steps=budget.used - start,
                           reason=f"budget exhausted after {exc.used} of {exc.limit} steps")
    try:
        for psi in monomial_identifications(pair.dim, search_limit):
            target = pull_back(pair.n, psi)
            r = solve(setup_phi(PairOnSameSpace(pair.g, target)), budget, depth, "witness", order)
            if r.status == "witness":
                r.identification, r.target = psi, target
                r.steps = budget.used - start
                return r
            if r.status == "inconclusive" and r.reason.startswith("budget"):
                return r
    except BudgetExhausted as exc:
        return SolveResult("inconclusive", steps=budget.used - start,
                           reason=f"budget exhausted after {exc.used} of {exc.limit} steps")
    return SolveResult("inconclusive", steps=budget.used - start,
                       reason="a structure exists for some identification over C, "
                              "but none was found among scaled permutations")


def family_left_nilpotent(fam: SolutionFamily, budget=None):
    """Symbolic check that every L(x) is nilpotent on the whole family.

    Returns True, False (a sampled member fails), or None when the traces do
    not vanish modulo the residual constraints but no sample disproves it.
    """
    from .structures import all_left_nilpotent
    for s in fam.samples:
        if not all_left_nilpotent(fam.at(s))[0]:
            return False
    n = len(fam.table)
    names = [f"_x{i + 1}" for i in range(n)]
    traces = symbolic_traces(fam.left_ops(), names)
    if fam.constraints:
        gb = groebner(fam.constraints, fam.params, "lex", budget)
        traces = [normal_form(t, gb, budget) for t in traces]
    if all(t.is_zero() for t in traces):
        return True
    return None


def params_enter_linearly(fam: SolutionFamily) -> bool:
    return all(Polynomial.lift(x).degree() <= 1 for row in fam.table for v in row for x in v)


# ---------------------------------------------------------------------------
# isomorphism


@dataclass
class AutGroupParam:
    """Automorphisms as a matrix of polynomials, invertible where
    ``nonvanishing`` is nonzero."""

    algebra: LieAlgebra
    params: tuple
    matrix: list
    nonvanishing: Polynomial

    def at(self, values: dict) -> Matrix:
        return Matrix.from_rows([[Polynomial.lift(x).evaluate(values) for x in row] for row in self.matrix])

    def symbolic_defect(self) -> list[Polynomial]:
        """Entries of Phi[e_i,e_j] - [Phi e_i, Phi e_j]; empty iff every member
        is a Lie algebra endomorphism."""
        g = self.algebra
        n = g.dim
        cols = [[Polynomial.lift(self.matrix[r][c]) for r in range(n)] for c in range(n)]
        out = {}
        for i in range(n):
            for j in range(i + 1, n):
                lhs = [sum((cols[r][k] * g.c[i][j][r] for r in range(n) if g.c[i][j][r]), Polynomial())
                       for k in range(n)]
                out[(i, j)] = [a - b for a, b in zip(lhs, multiply(g.c, cols[i], cols[j]))]
        return _flat(out)

    def validate(self, count: int = 5) -> bool:
        if self.symbolic_defect():
            return False
        checked = 0
        for key in itertools.product(SAMPLE_VALUES, repeat=len(self.params)):
            values = dict(zip(self.params, key))
            if self.nonvanishing.evaluate(values) == 0:
                continue
            m = self.at(values)
            if m.rank() != m.rows or not _is_automorphism(self.algebra, m):
                return False
            checked += 1
            if checked == count:
                break
        return checked > 0


def _is_automorphism(g: LieAlgebra, m: Matrix) -> bool:
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            if m @ g.c[i][j] != g.bracket(m.column(i), m.column(j)):
                return False
    return True


@dataclass
class IsoResult:
    answer: str  # yes | no | inconclusive
    reason: str
    witness: Matrix = None
    values: dict = None
    certificate: dict = None

    def to_json(self) -> dict:
        out = {"answer": self.answer, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_str_rows()
        if self.values:
            out["values"] = {k: fmt(v) for k, v in sorted(self.values.items())}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _iso_equations(g: LieAlgebra, p_table, q_table, aut: AutGroupParam) -> list[Polynomial]:
    """Phi(e_i.e_j) - Phi(e_i) * Phi(e_j) for i <= j (both products symmetric)."""
    n = g.dim
    cols = [[Polynomial.lift(aut.matrix[r][c]) for r in range(n)] for c in range(n)]
    out = {}
    for i in range(n):
        for j in range(i, n):
            v = p_table[i][j]
            lhs = [sum((cols[r][k] * v[r] for r in range(n) if v[r]), Polynomial()) for k in range(n)]
            rhs = multiply(q_table, cols[i], cols[j])
            out[(i, j)] = [a - b for a, b in zip(lhs, rhs)]
    return _flat(out)


def _table_vars(table) -> set:
    return {v for row in table for vec_ in row for x in vec_ for v in Polynomial.lift(x).variables()}


def isomorphic(g: LieAlgebra, p, q, aut: AutGroupParam, budget=None, depth: int = 6,
               extra_nonvanishing: Sequence[Polynomial] = ()) -> IsoResult:
    """Decide whether some automorphism Phi in ``aut`` satisfies
    Phi(x.y) = Phi(x) * Phi(y).

    ``p`` and ``q`` are BilinearProducts or left-op matrices of polynomials;
    their variables (say mu) are treated as further unknowns, so the answer
    is "is there any parameter value making them isomorphic".
    """
    budget = as_budget(budget)
    concrete = isinstance(p, BilinearProduct) and isinstance(q, BilinearProduct)
    if concrete:
        if p == q:
            return IsoResult("yes", "identity", Matrix.identity(g.dim), {})
        fp, fq = invariants(g, p), invariants(g, q)
        if fp != fq:
            diff = sorted(k for k in fp if fp[k] != fq[k])
            return IsoResult("no", "fingerprint differs: " + ", ".join(diff))
    pt, qt = _product_table(p), _product_table(q)
    extra = sorted((_table_vars(pt) | _table_vars(qt)) - set(aut.params))
    variables = tuple(aut.params) + tuple(extra)
    eqs = _iso_equations(g, pt, qt, aut)
    nonvanishing = [aut.nonvanishing] + list(extra_nonvanishing)
    try:
        empty, gb = is_empty_with(eqs, nonvanishing, variables, budget, order="grevlex")
        if empty:
            cert = {"variables": list(variables), "generators": [str(e) for e in eqs],
                    "nonvanishing": [str(u) for u in nonvanishing], "basis": gb.to_strings()}
            return IsoResult("no", "certificate", certificate=cert)
        point = find_point(eqs, variables, nonvanishing, budget, depth)
    except BudgetExhausted as exc:
        return IsoResult("inconclusive", f"budget exhausted after {exc.used} of {exc.limit} steps")
    if point is None:
        return IsoResult("yes", "nonempty variety, no rational witness found")
    m = aut.at(point)
    pe = _evaluate_table(pt, point)
    qe = _evaluate_table(qt, point)
    if not (_is_automorphism(g, m) and m.rank() == g.dim and pe.transformed(m) == qe):
        raise AssertionError("isomorphism witness failed verification")
    return IsoResult("yes", "witness", m, {v: point[v] for v in variables})


# ---------------------------------------------------------------------------
# classification


@dataclass
class Candidate:
    name: str
    product: object  # BilinearProduct or left-op polynomial matrices
    params: tuple = ()

    @property
    def symbolic(self) -> bool:
        return not isinstance(self.product, BilinearProduct)

    def left_ops_json(self):
        if self.symbolic:
            return [[[str(x) for x in row] for row in L] for L in self.product]
        return [m.to_str_rows() for m in self.product.left_ops()]


def verify_candidate(g: LieAlgebra, c: Candidate) -> bool:
    if not c.symbolic:
        return verify_commutative(g, c.product).passed
    table = table_from_left_ops(c.product)
    from .structures import residuals_symmetric
    res = {**residuals_symmetric(table), **residuals_post2(g.c, table), **residuals_post3(g.c, table)}
    return not _flat(res)


@dataclass
class ClassificationResult:
    algebra: str
    classes: list  # [{"name", "origin", "L"}]
    distinctness: list
    coverage: list
    unclassified: list
    families: int
    status: str

    @property
    def names(self) -> list[str]:
        return [c["name"] for c in self.classes]

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "status": self.status, "classes": self.classes,
                "distinctness": self.distinctness, "coverage": self.coverage,
                "unclassified": self.unclassified, "families": self.families}


def _fresh_symbolic(c: Candidate, suffix: str) -> tuple[object, dict]:
    """Rename the candidate's parameters so two copies are independent."""
    ren = {p: var(p + suffix) for p in c.params}
    mats = [[[Polynomial.lift(x).subs(ren) for x in row] for row in L] for L in c.product]
    return mats, ren


def classify_commutative(g: LieAlgebra, aut: AutGroupParam, candidates: Sequence[Candidate] = (),
                         budget=None, depth: int = 6, parametrization=None) -> ClassificationResult:
    """Classes of commutative structures on g up to isomorphism.

    Candidate representatives are checked, shown pairwise non-isomorphic,
    and every sampled member of every solution family is matched to one of
    them; members matching none become new classes.
    """
    budget = as_budget(budget)
    if not aut.validate():
        raise SolverError("automorphism parametrization failed validation")
    classes: list[Candidate] = []
    for c in candidates:
        if not verify_candidate(g, c):
            raise SolverError(f"candidate {c.name} is not a commutative structure")
        classes.append(c)
    system = setup_commutative(g, parametrization)
    result = solve(system, budget, depth, mode="families")
    if result.status == "inconclusive":
        return ClassificationResult(g.name, [], [], [], [], 0, "inconclusive")

    coverage = []
    unclassified = []
    hits = {c.name: 0 for c in classes}
    discovered = 0
    trivial = SolutionFamily((), [[[Polynomial()] * g.dim for _ in range(g.dim)] for _ in range(g.dim)],
                             (), (), True, [{}])
    for fi, fam in [(-1, trivial)] + list(enumerate(result.families)):
        if not fam.samples:
            unclassified.append({"family": fi + 1, **fam.to_json()})
        for s in fam.samples:
            prod = fam.at(s)
            match = None
            for c in classes:
                r = isomorphic(g, prod, c.product, aut, budget, depth)
                if r.answer == "inconclusive":
                    return ClassificationResult(g.name, [], [], coverage, unclassified,
                                                len(result.families), "inconclusive")
                if r.answer == "yes":
                    match = (c, r)
                    break
            if match is None:
                discovered += 1
                c = Candidate(f"new{discovered}", prod)
                classes.append(c)
                hits[c.name] = 0
                match = (c, IsoResult("yes", "identity"))
            c, r = match
            hits[c.name] += 1
            entry = {"family": fi + 1, "sample": {k: fmt(v) for k, v in s.items()},
                     "class": c.name, "reason": r.reason}
            if c.params and r.values:
                entry["class_params"] = {p: fmt(r.values[p]) for p in c.params if p in r.values}
            coverage.append(entry)

    distinct = []
    for a, b in itertools.combinations_with_replacement(classes, 2):
        if a is b and not a.symbolic:
            continue
        if a is b:
            pa, ra = _fresh_symbolic(a, "_1")
            pb, rb = _fresh_symbolic(b, "_2")
            diff = Polynomial.const(1)
            for p in a.params:
                diff = diff * (ra[p] - rb[p])
            r = isomorphic(g, pa, pb, aut, budget, depth, [diff])
            label = f"{a.name} vs {a.name} with different parameters"
        else:
            r = isomorphic(g, a.product, b.product, aut, budget, depth)
            label = f"{a.name} vs {b.name}"
        distinct.append({"pair": label, "answer": r.answer, "reason": r.reason})
    ok = all(d["answer"] == "no" for d in distinct)
    status = "complete" if ok and not unclassified else ("unclassified families" if ok else "not distinct")
    out_classes = [{"name": c.name, "origin": "candidate" if i < len(candidates) else "discovered",
                    "params": list(c.params), "matched_samples": hits[c.name], "L": c.left_ops_json()}
                   for i, c in enumerate(classes)]
    return ClassificationResult(g.name, out_classes, distinct, coverage, unclassified,
                                len(result.families), status)
