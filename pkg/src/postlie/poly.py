"""Multivariate polynomials over Q and a Buchberger Groebner engine.

Polynomials are ring-free: a monomial is a sorted tuple of ``(name, exponent)``
pairs, so systems can be assembled from pieces without declaring a ring first.
The Groebner engine converts to dense exponent vectors for an explicit
variable order when it runs.
"""

from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import Q, fmt

DEFAULT_BUDGET = 200_000


def default_budget() -> int:
    env = os.environ.get("POSTLIE_BUDGET")
    if env:
        value = int(env)
        if value <= 0:
            raise ValueError("POSTLIE_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


class BudgetExhausted(Exception):
    """The step budget ran out; callers must report 'inconclusive'."""

    def __init__(self, used: int, limit: int):
        super().__init__(f"step budget exhausted ({used}/{limit} reduction steps)")
        self.used = used
        self.limit = limit


class Budget:
    """Shared counter of polynomial reduction steps."""

    def __init__(self, limit: int = None):
        self.limit = default_budget() if limit is None else int(limit)
        if self.limit <= 0:
            raise ValueError("budget must be positive")
        self.used = 0

    def step(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExhausted(self.used, self.limit)

    @property
    def remaining(self) -> int:
        return max(self.limit - self.used, 0)

    def __repr__(self):
        return f"Budget(used={self.used}, limit={self.limit})"


def as_budget(budget) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


Monomial = tuple  # tuple[tuple[str, int], ...], sorted by name


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class Polynomial:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Q(c)
                if c != 0:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({(): Q(c)})

    @classmethod
    def var(cls, name: str) -> "Polynomial":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def lift(cls, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        return cls.const(x)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = Polynomial.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Polynomial.lift(other))

    def __rsub__(self, other):
        return Polynomial.lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Q(other)
            return Polynomial({m: c * v for m, v in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Q(c)
        return Polynomial({m: v / c for m, v in self.terms.items()})

    def __pow__(self, k: int):
        out = Polynomial.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.const(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self.terms.get(monomial, Fraction(0))

    def linear_part(self) -> dict[str, Fraction]:
        return {m[0][0]: c for m, c in self.terms.items() if len(m) == 1 and m[0][1] == 1}

    # substitution -----------------------------------------------------
    def subs(self, mapping: Mapping) -> "Polynomial":
        if not mapping:
            return self
        lifted = {k: Polynomial.lift(v) for k, v in mapping.items()}
        out = Polynomial()
        cache = {}
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            rest = []
            for v, e in m:
                if v in lifted:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = lifted[v] ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Polynomial({tuple(rest): 1})
            out = out + term
        return out

    def evaluate(self, point: Mapping) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= Q(point[v]) ** e
            total += t
        return total

    # formatting -------------------------------------------------------
    def sorted_terms(self):
        def key(item):
            m, _ = item
            deg = sum(e for _, e in m)
            return (-deg, tuple((v, -e) for v, e in m))
        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = fmt(a)
            elif a == 1:
                body = mono
            else:
                body = f"{fmt(a)}*{mono}"
            if i == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def var(name: str) -> Polynomial:
    return Polynomial.var(name)


def const(c) -> Polynomial:
    return Polynomial.const(c)


def parse(text: str) -> Polynomial:
    """Parse the canonical string form, e.g. "3/2*a1^2*b3 - c2"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(a + b for a, b in pieces) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    out = Polynomial()
    for sign, body in pieces:
        coeff = Fraction(-1 if sign == "-" else 1)
        mono = {}
        for factor in body.split("*"):
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            name, _, exp = factor.partition("^")
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name) or (exp and not exp.isdigit()):
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            mono[name] = mono.get(name, 0) + (int(exp) if exp else 1)
        out = out + Polynomial({tuple(sorted(mono.items())): coeff})
    return out


def variables_of(polys: Iterable[Polynomial]) -> list[str]:
    names = set()
    for p in polys:
        names |= p.variables()
    return sorted(names)


# ---------------------------------------------------------------------------
# dense engine


class _Ring:
    def __init__(self, variables: Sequence[str], order: str):
        if order not in ("lex", "grevlex"):
            raise ValueError(f"unknown term order {order!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variables")
        self.variables = tuple(variables)
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.n = len(self.variables)
        self.order = order
        if order == "lex":
            self.key = lambda m: m
        else:
            self.key = lambda m: (sum(m), tuple(-e for e in reversed(m)))

    def to_dense(self, p: Polynomial) -> dict:
        out = {}
        for m, c in p.terms.items():
            e = [0] * self.n
            for v, k in m:
                try:
                    e[self.index[v]] = k
                except KeyError:
                    raise ValueError(f"variable {v!r} not in ring {self.variables}") from None
            out[tuple(e)] = c
        return out

    def from_dense(self, d: dict) -> Polynomial:
        return Polynomial({tuple((self.variables[i], k) for i, k in enumerate(e) if k): c
                           for e, c in d.items()})

    def lead(self, d: dict):
        m = max(d, key=self.key)
        return m, d[m]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _sub_mul(f: dict, c: Fraction, shift, g: dict):
    """f -= c * x^shift * g (in place)."""
    for m, v in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        nv = f.get(mm, 0) - c * v
        if nv:
            f[mm] = nv
        else:
            f.pop(mm, None)


def _monic(d: dict, ring: _Ring) -> dict:
    _, c = ring.lead(d)
    if c == 1:
        return d
    return {m: v / c for m, v in d.items()}


def _reduce(f: dict, basis: list, ring: _Ring, budget: Budget, full: bool = True) -> dict:
    """Normal form of f modulo basis, a list of (lm, monic dense poly)."""
    f = dict(f)
    rem = {}
    key = ring.key
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                _sub_mul(f, c, shift, g)
                budget.step()
                break
        else:
            if not full:
                rem.update(f)
                return rem
            rem[m] = c
            del f[m]
    return rem


@dataclass(frozen=True)
class GroebnerBasis:
    polys: tuple  # tuple[Polynomial, ...], ascending by leading monomial
    variables: tuple
    order: str
    steps: int = 0

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def is_one(self) -> bool:
        return contains_one(self)

    def reduce(self, p: Polynomial, budget=None) -> Polynomial:
        return normal_form(p, self, budget)

    def to_strings(self) -> list[str]:
        return [str(p) for p in self.polys]


def _buchberger(dense: list, ring: _Ring, budget: Budget) -> list:
    key = ring.key
    G = []  # list of (lm, poly)
    for f in dense:
        f = _reduce(f, G, ring, budget) if G else f
        if f:
            f = _monic(f, ring)
            G.append((ring.lead(f)[0], f))
            if G[-1][0] == (0,) * ring.n:
                return [G[-1]]
    # restart from a clean list so pairs are built uniformly
    polys = []
    pairs = []
    active = []

    def update(h_idx):
        # Gebauer-Moeller criteria
        nonlocal pairs, active
        h_lm = polys[h_idx][0]
        C = [g for g in active]
        D = []
        while C:
            g1 = C.pop(0)
            l1 = _lcm(polys[g1][0], h_lm)
            if _coprime(polys[g1][0], h_lm) or not any(
                    _divides(_lcm(polys[g2][0], h_lm), l1) for g2 in C + D):
                D.append(g1)
        new_pairs = [(g, h_idx) for g in D if not _coprime(polys[g][0], h_lm)]
        survivors = []
        for (a, b) in pairs:
            lab = _lcm(polys[a][0], polys[b][0])
            if _divides(h_lm, lab) and _lcm(polys[a][0], h_lm) != lab \
                    and _lcm(polys[b][0], h_lm) != lab:
                continue
            survivors.append((a, b))
        pairs = survivors + new_pairs
        active = [g for g in active if not _divides(h_lm, polys[g][0])] + [h_idx]

    for lm, f in G:
        polys.append((lm, f))
        update(len(polys) - 1)

    while pairs:
        pairs.sort(key=lambda p: (sum(_lcm(polys[p[0]][0], polys[p[1]][0])), p[0], p[1]))
        a, b = pairs.pop(0)
        la, fa = polys[a]
        lb, fb = polys[b]
        l = _lcm(la, lb)
        s = {}
        _sub_mul(s, Fraction(-1), tuple(x - y for x, y in zip(l, la)), fa)
        _sub_mul(s, Fraction(1), tuple(x - y for x, y in zip(l, lb)), fb)
        budget.step()
        basis = [polys[i] for i in active]
        h = _reduce(s, basis, ring, budget)
        if h:
            h = _monic(h, ring)
            hlm = ring.lead(h)[0]
            polys.append((hlm, h))
            if hlm == (0,) * ring.n:
                return [(hlm, h)]
            update(len(polys) - 1)
    return [polys[i] for i in active]


def _interreduce(G: list, ring: _Ring, budget: Budget) -> list:
    # minimal basis
    G = sorted(G, key=lambda t: ring.key(t[0]))
    minimal = []
    for i, (lm, f) in enumerate(G):
        if any(_divides(lm2, lm) and (lm2 != lm or j < i) for j, (lm2, _) in enumerate(G) if j != i):
            continue
        minimal.append((lm, f))
    out = []
    for i, (lm, f) in enumerate(minimal):
        others = [t for j, t in enumerate(minimal) if j != i]
        tail = {m: c for m, c in f.items() if m != lm}
        r = _reduce(tail, others, ring, budget)
        r[lm] = Fraction(1)
        out.append((lm, r))
    out.sort(key=lambda t: ring.key(t[0]))
    return out


def groebner(polys: Iterable[Polynomial], variables: Sequence[str] = None, order: str = "lex",
             budget=None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    ``variables`` fixes the variable order (first = largest); by default the
    sorted variable names are used. Raises :class:`BudgetExhausted`.
    """
    polys = [p for p in polys if not p.is_zero()]
    if variables is None:
        variables = variables_of(polys)
    ring = _Ring(variables, order)
    budget = as_budget(budget)
    start = budget.used
    dense = [ring.to_dense(p) for p in polys]
    if not dense:
        return GroebnerBasis((), ring.variables, order, 0)
    G = _buchberger(dense, ring, budget)
    G = _interreduce(G, ring, budget)
    return GroebnerBasis(tuple(ring.from_dense(g) for _, g in G), ring.variables, order,
                         budget.used - start)


def contains_one(gb: GroebnerBasis) -> bool:
    return any(p.is_constant() and not p.is_zero() for p in gb.polys)


def normal_form(p: Polynomial, gb: GroebnerBasis, budget=None) -> Polynomial:
    extra = [v for v in sorted(p.variables()) if v not in gb.variables]
    ring = _Ring(tuple(gb.variables) + tuple(extra), gb.order)
    basis = []
    for g in gb.polys:
        d = ring.to_dense(g)
        basis.append((ring.lead(d)[0], d))
    budget = as_budget(budget if budget is not None else 10 ** 9)
    return ring.from_dense(_reduce(ring.to_dense(p), basis, ring, budget))


@dataclass
class Ideal:
    generators: list
    variables: tuple = None
    order: str = "lex"

    def __post_init__(self):
        self.generators = [Polynomial.lift(g) for g in self.generators if not Polynomial.lift(g).is_zero()]
        if self.variables is None:
            self.variables = tuple(variables_of(self.generators))
        else:
            self.variables = tuple(self.variables)
            missing = set(variables_of(self.generators)) - set(self.variables)
            if missing:
                raise ValueError(f"generators use undeclared variables {sorted(missing)}")

    def groebner(self, budget=None) -> GroebnerBasis:
        return groebner(self.generators, self.variables, self.order, budget)

    def to_strings(self) -> list[str]:
        return [str(g) for g in self.generators]


def ideal_equal(a: Ideal, b: Ideal, budget=None) -> bool:
    if set(a.variables) != set(b.variables):
        raise ValueError("ideals live in different variable sets")
    budget = as_budget(budget)
    variables = a.variables
    ga = groebner(a.generators, variables, a.order, budget)
    gb = groebner(b.generators, variables, a.order, budget)
    return all(normal_form(p, gb, budget).is_zero() for p in a.generators) and \
        all(normal_form(p, ga, budget).is_zero() for p in b.generators)


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    name = base
    i = 0
    while name in taken:
        i += 1
        name = f"{base}{i}"
    return name


def saturate(polys: Sequence[Polynomial], f: Polynomial, variables: Sequence[str],
             budget=None) -> GroebnerBasis:
    """Groebner basis (lex, ``variables``) of (polys) : f^infinity."""
    t = fresh_name("_t", variables)
    gb = groebner(list(polys) + [1 - var(t) * f], (t,) + tuple(variables), "lex", budget)
    kept = [p for p in gb.polys if t not in p.variables()]
    return groebner(kept, variables, "lex", budget)


def is_empty_with(polys: Sequence[Polynomial], nonvanishing: Sequence[Polynomial],
                  variables: Sequence[str], budget=None,
                  order: str = "lex") -> tuple[bool, GroebnerBasis]:
    """Decide emptiness over C of V(polys) minus V(prod nonvanishing).

    Uses one Rabinowitsch variable for the product of the assumptions.
    """
    gens = list(polys)
    names = list(variables)
    if nonvanishing:
        t = fresh_name("_t", names)
        prod = Polynomial.const(1)
        for u in nonvanishing:
            prod = prod * u
        gens.append(var(t) * prod - 1)
        names.append(t)
    gb = groebner(gens, names, order, budget)
    return contains_one(gb), gb


# ---------------------------------------------------------------------------
# case splitting


@dataclass(frozen=True)
class CaseComponent:
    """One piece of a variety: triangular substitutions, leftover equations
    and assumptions of the form poly != 0."""

    substitutions: tuple  # tuple[(name, Polynomial)], in variable order
    residual: tuple  # reduced lex Groebner basis over the free variables
    nonvanishing: tuple
    free: tuple  # variables not eliminated by substitutions
    resolved: bool = True

    def substitution_map(self) -> dict:
        return dict(self.substitutions)

    def point(self, values: Mapping) -> dict:
        """Full assignment from values of the free variables."""
        out = {v: Q(values[v]) for v in self.free}
        for name, expr in self.substitutions:
            out[name] = expr.evaluate(out)
        return out

    def admissible(self, values: Mapping) -> bool:
        full = {v: Q(values[v]) for v in self.free}
        return all(r.evaluate(full) == 0 for r in self.residual) and \
            all(u.evaluate(full) != 0 for u in self.nonvanishing)

    def to_json(self) -> dict:
        return {
            "params": list(self.free),
            "substitutions": {k: str(v) for k, v in self.substitutions},
            "constraints": [str(p) for p in self.residual],
            "nonvanishing": [str(p) for p in self.nonvanishing],
            "resolved": self.resolved,
        }


def _compose(subs: dict, new: dict) -> dict:
    out = {k: v.subs(new) for k, v in subs.items()}
    out.update(new)
    return out


def _simplify_nonzero(nonzero: list) -> list:
    out = []
    for u in nonzero:
        if u.is_zero():
            return [u]
        if u.is_constant():
            continue
        u = u * (1 / u.sorted_terms()[0][1])
        if u not in out:
            out.append(u)
    return out


def case_split(generators: Sequence[Polynomial], variables: Sequence[str], depth: int = 6,
               budget=None, nonvanishing: Sequence[Polynomial] = ()) -> list[CaseComponent]:
    """Decompose V(generators) into triangular pieces.

    Linear leading terms of the lex basis become substitutions (earlier
    variables expressed through later ones). Remaining nonlinear equations
    are split on a variable: ``x = 0`` first, then ``x != 0`` with the ideal
    saturated by x. Pieces whose equations stay nonlinear after ``depth``
    splits are returned with ``resolved=False``. Output order is the
    depth-first order of the splits, so it is deterministic.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    budget = as_budget(budget)
    variables = tuple(variables)
    out: list[CaseComponent] = []

    def explore(subs: dict, gens: list, nonzero: list, depth_left: int):
        nonzero = _simplify_nonzero([u.subs(subs) for u in nonzero])
        if any(u.is_zero() for u in nonzero):
            return
        free_vars = [v for v in variables if v not in subs]
        gb = groebner(gens, free_vars, "lex", budget)
        if contains_one(gb):
            return
        if nonzero:
            empty, _ = is_empty_with(gb.polys, nonzero, free_vars, budget)
            if empty:
                return
        new = {}
        rest = []
        for g in gb.polys:
            lead = max(g.terms, key=lambda m: _lex_key(m, free_vars))
            if len(lead) == 1 and lead[0][1] == 1 and g.degree_in(lead[0][0]) == 1:
                x = lead[0][0]
                c = g.terms[lead]
                new[x] = -(g - Polynomial({lead: c})) / c
            else:
                rest.append(g)
        if new:
            # reduced basis: tails never mention other leading variables
            subs = _compose(subs, new)
            explore(subs, rest, [u.subs(new) for u in nonzero], depth_left)
            return
        if not rest:
            out.append(_component(subs, (), nonzero, variables, True))
            return
        split_var = _choose_split(rest, nonzero, free_vars)
        if depth_left == 0 or split_var is None:
            out.append(_component(subs, tuple(rest), nonzero, variables, False))
            return
        x = split_var
        zero = {x: Polynomial.const(0)}
        explore(_compose(subs, zero), [g.subs(zero) for g in rest], nonzero, depth_left - 1)
        sat = saturate(rest, var(x), free_vars, budget)
        if contains_one(sat):
            return
        explore(dict(subs), list(sat.polys), nonzero + [var(x)], depth_left - 1)

    explore({}, [p for p in generators if not p.is_zero()], list(nonvanishing), depth)
    return out


def _lex_key(m: Monomial, order: Sequence[str]):
    d = dict(m)
    return tuple(d.get(v, 0) for v in order)


def _choose_split(rest: list, nonzero: list, free_vars: Sequence[str]):
    assumed = {next(iter(u.variables())) for u in nonzero
               if len(u.terms) == 1 and u.degree() == 1}
    # a variable dividing a whole equation gives the cleanest split
    for g in rest:
        common = None
        for m in g.terms:
            names = {v for v, _ in m}
            common = names if common is None else common & names
        for v in free_vars:
            if common and v in common and v not in assumed:
                return v
    for v in free_vars:
        if v in assumed:
            continue
        if any(v in g.variables() for g in rest):
            return v
    return None


def _component(subs: dict, residual: tuple, nonzero: list, variables: tuple,
               resolved: bool) -> CaseComponent:
    ordered = tuple((v, subs[v]) for v in variables if v in subs)
    free = tuple(v for v in variables if v not in subs)
    return CaseComponent(ordered, tuple(residual), tuple(nonzero), free, resolved)


SAMPLE_VALUES = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2))


def sample_points(component: CaseComponent, count: int = 5, limit: int = 4000) -> list[dict]:
    """Deterministic admissible assignments of the free variables.

    Values come from 0, 1, -1, 2, 1/2: first the five rotations (variable j
    gets value (i + j) mod 5), then the full grid in order. Assignments that
    violate residual equations or assumptions are skipped.
    """
    free = component.free
    n = len(SAMPLE_VALUES)
    rotations = (tuple(SAMPLE_VALUES[(i + j) % n] for j in range(len(free))) for i in range(n))
    grid = itertools.islice(itertools.product(SAMPLE_VALUES, repeat=len(free)), limit)
    found = []
    seen = set()
    for key in itertools.chain(rotations, grid):
        if key in seen:
            continue
        seen.add(key)
        vals = dict(zip(free, key))
        if component.admissible(vals):
            found.append(vals)
            if len(found) == count:
                break
    return found


def find_points(generators: Sequence[Polynomial], variables: Sequence[str],
                nonvanishing: Sequence[Polynomial] = (), budget=None, depth: int = 6,
                tries: int = 3, count: int = 5) -> list[dict]:
    """Search for up to ``count`` rational points of V(generators) avoiding
    the assumptions.

    Resolved components are sampled directly; unresolved ones are specialized
    by fixing their last free variable to 0, 1, -1, 2, 1/2 in turn and split
    again. An empty result does not mean the variety is empty over C.
    """
    budget = as_budget(budget)
    comps = case_split(generators, variables, depth, budget, nonvanishing)
    found: list[dict] = []

    def add(pt):
        if pt not in found:
            found.append(pt)
        return len(found) >= count

    for comp in comps:
        if comp.resolved:
            for pt in sample_points(comp, count):
                if add(comp.point(pt)):
                    return found
    if tries <= 0:
        return found
    for comp in comps:
        if comp.resolved or not comp.free:
            continue
        v = comp.free[-1]
        for value in SAMPLE_VALUES:
            fixed = {v: Polynomial.const(value)}
            gens = [g.subs(fixed) for g in comp.residual]
            nz = [u.subs(fixed) for u in comp.nonvanishing]
            if any(u.is_zero() for u in nz):
                continue
            rest_vars = [w for w in comp.free if w != v]
            for sub in find_points(gens, rest_vars, nz, budget, depth, tries - 1, count - len(found)):
                sub[v] = value
                if add(comp.point(sub)):
                    return found
    return found


def find_point(generators: Sequence[Polynomial], variables: Sequence[str],
               nonvanishing: Sequence[Polynomial] = (), budget=None, depth: int = 6,
               tries: int = 3) -> dict | None:
    """First point of :func:`find_points`, or None."""
    pts = find_points(generators, variables, nonvanishing, budget, depth, tries, 1)
    return pts[0] if pts else None
