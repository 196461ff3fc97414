"""Multicontact vector fields on Hessenberg slices.

The induced field of an algebra element E is computed from the adjoint
action: along the standard left-invariant frame, the component of tau(E)
labelled by the positive root gamma is minus the g_gamma-coefficient of
Ad(n^{-1}) E.  Projecting to the slice of a Hessenberg set drops the
complement components and sets the complement coordinates to zero.

The multicontact condition on a slice field F = sum f_gamma X_gamma is
the first-order system, over simple roots delta in R and gamma in R,

    X_delta(f_gamma) = 0                          gamma - delta outside
                                                  Sigma_+ u {0}
    X_delta(f_gamma) + c_{delta,gamma-delta} f_{gamma-delta} = 0
                                                  gamma - delta in Sigma_+

(the gamma = delta equations carry a free multiplier and are omitted).
The system is graded: fields split into homogeneous parts which are
solved separately, block by block, by exact fraction-free elimination.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction as Q

from . import linalg
from .fields import PolyVectorField
from .hessenberg import HessenbergSet, HessenbergReport, analyze, validate
from .liealg import Chart, SplitLieAlgebra, adjoint_of_point
from .poly import Poly, monomials_of_weighted_degree


class McError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tau and projection
# ---------------------------------------------------------------------------

def tau(algebra: SplitLieAlgebra, chart: Chart, element) -> PolyVectorField:
    """Multicontact field of an algebra element (matrix), on the full group."""
    coeffs = adjoint_of_point(chart, None, element, inverse=True)
    comps = {}
    for r in range(algebra.rs.n_pos):
        c = coeffs[algebra.full_index(r)]
        if not c.is_zero():
            comps[r] = c * Q(-1)
    return PolyVectorField(chart, "invariant", comps)


def tau_basis(algebra: SplitLieAlgebra, chart: Chart) -> dict[int, PolyVectorField]:
    """tau of every full-basis element, keyed by full-basis index; cached."""
    cache = getattr(chart, "_tau_basis_cache", None)
    if cache is None:
        cache = {}
        for k in range(algebra.dim):
            cache[k] = tau(algebra, chart, algebra.realization.basis_matrix(k))
        chart._tau_basis_cache = cache
    return cache


def project_to_slice(field: PolyVectorField, hs: HessenbergSet) -> PolyVectorField:
    """Drop complement components and set complement coordinates to zero."""
    chart = field.chart
    inv = field.to_invariant()
    csub = {chart.coord_index(r): Q(0) for r in hs.C}
    comps = {}
    for r, p in inv.components.items():
        if r in hs.R:
            q = p.subs(csub)
            if not q.is_zero():
                comps[r] = q
    return PolyVectorField(chart, "invariant", comps, slice_roots=hs.R)


def nu(algebra: SplitLieAlgebra, chart: Chart, hs: HessenbergSet,
       element) -> PolyVectorField:
    return project_to_slice(tau(algebra, chart, element), hs)


# ---------------------------------------------------------------------------
# homogeneity
# ---------------------------------------------------------------------------

def homogeneous_degree(obj, chart: Chart):
    """Degree of a polynomial or invariant-frame field under the dilation
    grading (coordinate x_gamma has weight ht(gamma), frame field X_gamma
    has weight -ht(gamma)).  Returns None when inhomogeneous."""
    parts = homogeneous_parts(obj, chart)
    if not parts:
        raise McError("zero input has no homogeneous degree")
    if len(parts) == 1:
        return next(iter(parts))
    return None


def homogeneous_parts(obj, chart: Chart):
    weights = chart.weights
    if isinstance(obj, Poly):
        return obj.weighted_parts(weights)
    if isinstance(obj, PolyVectorField):
        inv = obj.to_invariant()
        rs = chart.algebra.rs
        parts: dict[int, dict[int, Poly]] = {}
        for r, p in inv.components.items():
            for w, piece in p.weighted_parts(weights).items():
                d = w - rs.root(r).height
                parts.setdefault(d, {})[r] = piece
        return {
            d: PolyVectorField(chart, "invariant", comps,
                               slice_roots=obj.slice_roots)
            for d, comps in parts.items()
        }
    raise McError(f"cannot grade object of type {type(obj)!r}")


# ---------------------------------------------------------------------------
# the linear system
# ---------------------------------------------------------------------------

@dataclass
class McSystem:
    hs: HessenbergSet
    chart: Chart
    degree_bound: int
    labels: list[int]                      # gamma in R, contract order
    equations: list[tuple[int, int]]       # (delta, gamma) pairs used

    def unknown_monomials(self, degree: int) -> list[tuple[int, tuple]]:
        """Unknowns of the homogeneous block of field degree ``degree``:
        pairs (gamma, monomial) in deterministic order."""
        chart = self.chart
        rs = self.hs.rs
        slice_vars = [chart.coord_index(r) for r in self.labels]
        out = []
        for g in self.labels:
            w = degree + rs.root(g).height
            if w < 0:
                continue
            sub_weights = [chart.weights[v] for v in slice_vars]
            for mono in monomials_of_weighted_degree(sub_weights, w):
                full = [0] * chart.nvars
                for v, e in zip(slice_vars, mono):
                    full[v] = e
                out.append((g, tuple(full)))
        return out

    def block_rows(self, degree: int,
                   unknown_index: dict[tuple[int, tuple], int]):
        """Sparse rows of the block for one homogeneous degree."""
        chart = self.chart
        rs = self.hs.rs
        alg = chart.algebra
        frame = chart.frame_components(self.hs.R)
        rows: dict[tuple, dict[int, Q]] = {}
        nv = chart.nvars
        for (g, mono), col in unknown_index.items():
            xm = Poly(nv, {mono: Q(1)})
            for delta, gamma in self.equations:
                contrib = None
                if gamma == g:
                    acc = Poly.zero(nv)
                    for j, a in frame[delta].items():
                        acc = acc + a * xm.diff(chart.coord_index(j))
                    contrib = acc
                diff = rs.add(gamma, rs.neg(delta))
                if diff is not None and diff < rs.n_pos and diff == g:
                    term = xm * alg.c[(delta, diff)]
                    contrib = term if contrib is None else contrib + term
                if contrib is None or contrib.is_zero():
                    continue
                for m2, cf in contrib.terms.items():
                    key = (delta, gamma, m2)
                    rows.setdefault(key, {})[col] = \
                        rows.get(key, {}).get(col, Q(0)) + cf
        ordered = [rows[k] for k in sorted(rows)]
        return [r for r in ordered if any(v != 0 for v in r.values())]

    def to_json_dict(self) -> dict:
        rs = self.hs.rs
        return {
            "degree_bound": self.degree_bound,
            "labels": [rs.root_name(g) for g in self.labels],
            "equations": [[rs.root_name(d), rs.root_name(g)]
                          for d, g in self.equations],
        }


def assemble_mc_system(hs: HessenbergSet, chart: Chart,
                       degree_bound: int) -> McSystem:
    if degree_bound < 1:
        raise McError("degree bound must be >= 1")
    rs = hs.rs
    labels = sorted(hs.R)
    simples = [s for s in rs.simple_ids() if s in hs.R]
    equations = []
    for delta in simples:
        for gamma in labels:
            if gamma == delta:
                continue            # free multiplier, no constraint
            diff = rs.add(gamma, rs.neg(delta))
            if diff is not None and diff < rs.n_pos and diff not in hs.R:
                raise McError("Hessenberg closure violated in system assembly")
            equations.append((delta, gamma))
    return McSystem(hs=hs, chart=chart, degree_bound=degree_bound,
                    labels=labels, equations=equations)


@dataclass
class McSolution:
    hs: HessenbergSet
    chart: Chart
    degree_bound: int
    basis: list[PolyVectorField]
    degrees: list[int]
    dimension: int
    stabilized: bool
    bracket_table: list[list[list[Q]]] | None = None
    bracket_closed: bool = True

    # ---- span helpers ------------------------------------------------------
    def monomial_index(self) -> dict[tuple[int, tuple], int]:
        seen: dict[tuple[int, tuple], int] = {}
        for f in self.basis:
            for g, p in f.components.items():
                for m in p.monomials():
                    seen.setdefault((g, m), len(seen))
        return seen

    def flatten(self, field: PolyVectorField,
                index: dict[tuple[int, tuple], int]) -> list[Q] | None:
        """Coefficient vector of a slice field over the solution monomials;
        None when the field involves monomials outside the span support."""
        vec = [Q(0)] * len(index)
        inv = field.to_invariant()
        for g, p in inv.components.items():
            for m, c in p.terms.items():
                key = (g, m)
                if key not in index:
                    return None
                vec[index[key]] = c
        return vec

    def contains(self, field: PolyVectorField) -> bool:
        index = self.monomial_index()
        vec = self.flatten(field, index)
        if vec is None:
            return False
        basis_vecs = [self.flatten(b, index) for b in self.basis]
        return linalg.coordinates_in_span(basis_vecs, vec) is not None

    def component_span(self, root_id: int) -> list[Poly]:
        return [b.component(root_id) for b in self.basis]

    # ---- structure ---------------------------------------------------------
    def compute_brackets(self) -> None:
        index = self.monomial_index()
        basis_vecs = []
        for b in self.basis:
            v = self.flatten(b, index)
            basis_vecs.append(v)
        table: list[list[list[Q]]] = []
        closed = True
        for i, a in enumerate(self.basis):
            row = []
            for b in self.basis:
                br = a.bracket(b).to_invariant()
                vec = self.flatten(br, index)
                coords = (linalg.coordinates_in_span(basis_vecs, vec)
                          if vec is not None else None)
                if coords is None:
                    closed = False
                    coords = []
                row.append(coords)
            table.append(row)
        self.bracket_table = table
        self.bracket_closed = closed

    def algebra_summary(self) -> dict:
        """Dimension, derived-series dimensions, and the rank/signature of
        the trace form of the bracket table."""
        if self.bracket_table is None:
            self.compute_brackets()
        n = self.dimension
        if not self.bracket_closed:
            return {"dimension": n, "bracket_closed": False}
        # structure constants tensor
        c = self.bracket_table
        # derived series by linear algebra over flattened brackets
        span = linalg.frac_identity(n)
        dims = [n]
        while True:
            prods = []
            for u in span:
                for v in span:
                    w = [Q(0)] * n
                    for i in range(n):
                        for j in range(n):
                            if u[i] and v[j]:
                                for k in range(n):
                                    w[k] += u[i] * v[j] * c[i][j][k]
                    prods.append(w)
            red, piv = linalg.rref(prods) if prods else ([], [])
            new = [red[t] for t in range(len(piv))]
            dims.append(len(piv))
            if len(piv) in (0, dims[-2]):
                break
            span = new
        # Killing-style form of the bracket table
        ad = []
        for i in range(n):
            m = [[c[i][j][k] for j in range(n)] for k in range(n)]
            ad.append(m)
        killing = [[sum(ad[i][p][q] * ad[j][q][p]
                        for p in range(n) for q in range(n))
                    for j in range(n)] for i in range(n)]
        rank_k, pos_k, neg_k = linalg.symmetric_signature(killing)
        return {
            "dimension": n,
            "bracket_closed": True,
            "derived_series": dims,
            "killing_rank": rank_k,
            "killing_signature": [pos_k, neg_k],
        }

    def to_json_dict(self) -> dict:
        rs = self.hs.rs
        names = self.chart.var_names
        out = {
            "R": [rs.root_name(g) for g in sorted(self.hs.R)],
            "degree_bound": self.degree_bound,
            "dimension": self.dimension,
            "stabilized": self.stabilized,
            "degrees": list(self.degrees),
            "basis": [
                {rs.root_name(g): p.render(names)
                 for g, p in sorted(f.components.items())}
                for f in self.basis
            ],
        }
        if self.bracket_table is not None:
            out["bracket_closed"] = self.bracket_closed
            out["bracket_table"] = [
                [[str(x) for x in cell] for cell in row]
                for row in self.bracket_table
            ]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _solve_block(system: McSystem, degree: int) -> list[PolyVectorField]:
    unknowns = system.unknown_monomials(degree)
    if not unknowns:
        return []
    index = {u: k for k, u in enumerate(unknowns)}
    rows = system.block_rows(degree, index)
    null = linalg.sparse_nullspace(rows, len(unknowns))
    chart = system.chart
    out = []
    for vec in null:
        comps: dict[int, Poly] = {}
        for (g, mono), k in index.items():
            if vec[k] != 0:
                comps.setdefault(g, Poly.zero(chart.nvars)).terms[mono] = vec[k]
        comps = {g: p for g, p in comps.items() if not p.is_zero()}
        out.append(PolyVectorField(chart, "invariant", comps,
                                   slice_roots=system.hs.R))
    return out


def solve_mc(hs: HessenbergSet, chart: Chart,
             degree_bound: int | None = None) -> McSolution:
    """Exact basis of the multicontact solution space on the slice.

    The default bound is twice the highest-root height; the stabilized
    flag records whether raising the bound by one adds no solutions.
    """
    h = hs.rs.highest_root.height
    if degree_bound is None:
        degree_bound = 2 * h
    system = assemble_mc_system(hs, chart, degree_bound)
    basis: list[PolyVectorField] = []
    degrees: list[int] = []
    for d in range(-h, degree_bound + 1):
        block = _solve_block(system, d)
        basis.extend(block)
        degrees.extend([d] * len(block))
    extra = _solve_block(system, degree_bound + 1)
    if extra:
        import warnings
        warnings.warn(
            f"multicontact dimension not stabilized at bound {degree_bound}: "
            f"{len(extra)} further solution(s) at the next degree",
            stacklevel=2)
    return McSolution(hs=hs, chart=chart, degree_bound=degree_bound,
                      basis=basis, degrees=degrees, dimension=len(basis),
                      stabilized=not extra)


# ---------------------------------------------------------------------------
# normalizer comparison
# ---------------------------------------------------------------------------

@dataclass
class NormalizerComparison:
    report: HessenbergReport
    nu_dimension: int
    solver_dimension: int
    nu_contained: bool
    equal: bool
    kernel_is_complement_ideal: bool
    conjecture_dimension: int
    conjecture_matches: bool

    def to_json_dict(self) -> dict:
        return {
            "dim_q": self.report.dims["dim_q"],
            "dim_q_mod_nC": self.report.dims["dim_q_mod_nC"],
            "nu_dimension": self.nu_dimension,
            "solver_dimension": self.solver_dimension,
            "nu_contained_in_solver": self.nu_contained,
            "equal": self.equal,
            "kernel_is_complement_ideal": self.kernel_is_complement_ideal,
            "conjecture_dimension": self.conjecture_dimension,
            "conjecture_matches": self.conjecture_matches,
            "hypothesis_I": self.report.hypothesis_I,
            "hypothesis_II": self.report.hypothesis_II,
        }


def normalizer_basis_indices(algebra: SplitLieAlgebra,
                             report: HessenbergReport) -> list[int]:
    """Full-basis indices spanning the normalizer of the complement ideal."""
    idx = list(range(algebra.rank))
    idx += [algebra.full_index(r) for r in range(algebra.rs.n_pos)]
    idx += [algebra.full_index(r) for r in sorted(report.normalizer_support)]
    return idx


def compare_with_normalizer(hs: HessenbergSet, chart: Chart,
                            solution: McSolution,
                            report: HessenbergReport | None = None
                            ) -> NormalizerComparison:
    if not solution.stabilized:
        raise McError("solution dimension is not stabilized")
    alg = chart.algebra
    rep = report if report is not None else analyze(hs)
    taus = tau_basis(alg, chart)
    q_index = normalizer_basis_indices(alg, rep)
    fields = [project_to_slice(taus[k], hs) for k in q_index]

    index = solution.monomial_index()
    for f in fields:
        for g, p in f.components.items():
            for m in p.monomials():
                index.setdefault((g, m), len(index))
    basis_vecs = [_pad(solution.flatten(b, index), len(index))
                  for b in solution.basis]
    contained = True
    nu_vecs = []
    for f in fields:
        v = _pad(solution.flatten(f, index), len(index))
        nu_vecs.append(v)
        if linalg.coordinates_in_span(basis_vecs, v) is None:
            contained = False
    nu_dim = linalg.rank(nu_vecs) if nu_vecs else 0
    kernel_dim = len(q_index) - nu_dim
    kernel_ok = kernel_dim == len(hs.C)
    conj = rep.dims["dim_conjecture"]
    return NormalizerComparison(
        report=rep,
        nu_dimension=nu_dim,
        solver_dimension=solution.dimension,
        nu_contained=contained,
        equal=nu_dim == solution.dimension,
        kernel_is_complement_ideal=kernel_ok,
        conjecture_dimension=conj,
        conjecture_matches=conj == solution.dimension,
    )


def _pad(vec, length):
    if vec is None:
        raise McError("field outside the joint monomial support")
    return vec + [Q(0)] * (length - len(vec))


# ---------------------------------------------------------------------------
# dark-zone reduction
# ---------------------------------------------------------------------------

@dataclass
class ZoneReduction:
    zones: list[frozenset[int]]
    zone_solutions: list[McSolution]
    full_solution: McSolution
    additive: bool
    lifts_contained: bool

    def to_json_dict(self) -> dict:
        rs = self.full_solution.hs.rs
        return {
            "zones": [[rs.root_name(g) for g in sorted(z)] for z in self.zones],
            "zone_dimensions": [s.dimension for s in self.zone_solutions],
            "full_dimension": self.full_solution.dimension,
            "additive": self.additive,
            "lifts_contained": self.lifts_contained,
        }


def reduce_by_dark_zones(hs: HessenbergSet, chart: Chart,
                         degree_bound: int | None = None) -> ZoneReduction:
    rep = analyze(hs)
    full = solve_mc(hs, chart, degree_bound)
    zone_solutions = []
    lifted_ok = True
    total = 0
    for zone in rep.dark_zones:
        zhs = validate(hs.rs, zone)
        zsol = solve_mc(zhs, chart, degree_bound)
        zone_solutions.append(zsol)
        total += zsol.dimension
        for f in zsol.basis:
            lifted = PolyVectorField(chart, "invariant", dict(f.components),
                                     slice_roots=hs.R)
            if not full.contains(lifted):
                lifted_ok = False
    return ZoneReduction(
        zones=list(rep.dark_zones),
        zone_solutions=zone_solutions,
        full_solution=full,
        additive=total == full.dimension,
        lifts_contained=lifted_ok,
    )
