"""Polynomial interpolation matrices and spline quadrature on the gasket.

A degree-n polynomial has 3n+3 coefficients over the mixed monomial basis, so
interpolation asks for 3n+3 nodes making the node-by-monomial value matrix
invertible.  The spine node family

    x_i = F_0^(i-1)(q1)  (1 <= i <= 2n+2),   x_i = F_0^(i-2n-3)(q2)  (else)

does so whenever no beta_j vanishes (asserted for j <= 50): the scaling laws
turn each family block into a scaled Vandermonde matrix in powers of 1/5.
All entries are exact there, so determinants and quadrature weights are exact.

The order-n quadrature rule solves the moment system M^T w = integrals and is
exact on all polynomials of degree <= n; the composite rule applies it to
every (m-n)-cell with the measure factor 3^{-(m-n)}, which makes constants
integrate to 1 exactly (partition of unity).  Weights may be negative and the
rules are known to be unstable for large n on non-polynomial data; condition
numbers are reported but never alter any result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .addresses import VertexAddress, mapped, spine_address
from .coeffs import TABLE
from .errors import ConsistencyError
from .grid import FieldOnGrid
from .inner import basis_indices
from .linalg import bareiss_det, inf_norm, inverse_exact, minor_det, solve_exact
from .poly import Poly
from .rationals import Rat, ZERO, rat_str
from .solver import eval_poly_grid


@dataclass(frozen=True)
class NodeSet:
    nodes: tuple[VertexAddress, ...]
    n: int

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("nodes must be distinct after canonicalization")


def spine_nodes(n: int) -> NodeSet:
    """The 3n+3 spine nodes used for interpolation and quadrature."""
    if n < 0:
        raise ValueError("n must be >= 0")
    nodes = [spine_address(i - 1, 1) for i in range(1, 2 * n + 3)]
    nodes += [spine_address(i - 2 * n - 3, 2) for i in range(2 * n + 3, 3 * n + 4)]
    return NodeSet(nodes=tuple(nodes), n=n)


def degenerate_spine_nodes(n: int) -> NodeSet:
    """All 3n+3 nodes on the q1 spine; the interpolation matrix is singular."""
    return NodeSet(nodes=tuple(spine_address(i, 1) for i in range(3 * n + 3)), n=n)


def v1_nodes() -> NodeSet:
    """The six level-1 vertices (degree-1 interpolation set)."""
    grid_order = [VertexAddress.make((), 0), VertexAddress.make((), 1),
                  VertexAddress.make((), 2), VertexAddress.make((0,), 1),
                  VertexAddress.make((0,), 2), VertexAddress.make((1,), 2)]
    return NodeSet(nodes=tuple(grid_order), n=1)


def eval_monomial_at(j: int, k: int, addr: VertexAddress,
                     field_cache: dict | None = None, solve_pad: int = 2):
    """Value of P_{j,k} at a vertex: exact on the spine, on the symmetry axis
    for k=3, and for harmonic monomials; otherwise from the grid solver.

    Returns (value, exact_flag, error_estimate)."""
    depth = addr.spine_depth()
    mono = Poly.monomial(j, k)
    if depth is not None:
        return mono.eval_spine(depth, addr.corner), True, ZERO
    if addr.is_boundary():
        return TABLE.value(j, k, addr.corner), True, ZERO
    if k == 3 and addr.reflect() == addr:
        return ZERO, True, ZERO  # anti-symmetric on the symmetry axis
    if j == 0:
        from .grid import harmonic_extend
        fld = harmonic_extend([TABLE.value(0, k, v) for v in (0, 1, 2)], addr.level)
        return fld.value_at(addr), True, ZERO
    level = addr.level
    cache = field_cache if field_cache is not None else {}
    key = (j, k, level)
    if key not in cache:
        cache[key] = (eval_poly_grid(mono, level, level + solve_pad),
                      eval_poly_grid(mono, level, level + solve_pad - 1))
    fine, coarse = cache[key]
    value = fine.value_at(addr)
    if j == 1:
        # degree-1 collocation loads are harmonic, hence discretely harmonic,
        # so the solve reproduces the true values with no discretization error
        return value, True, ZERO
    est = abs(value - coarse.value_at(addr))
    return value, False, est


@dataclass
class InterpolationMatrix:
    """Node-by-monomial value matrix in the fixed mixed-basis column order."""

    node_set: NodeSet
    entries: list            # rows = nodes, cols = monomials, exact rationals
    exact: list              # per-entry bool flags
    error_bounds: list       # per-entry uncertainty (0 where exact)

    @property
    def fully_exact(self) -> bool:
        return all(all(row) for row in self.exact)

    def to_json_dict(self) -> dict:
        return {
            "n": self.node_set.n,
            "nodes": [str(a) for a in self.node_set.nodes],
            "basis": [[j, k] for j, k in basis_indices("mixed", self.node_set.n)],
            "entries": [[rat_str(x) for x in row] for row in self.entries],
            "exact": self.exact,
        }


def interpolation_matrix(nodes: NodeSet, n: int | None = None) -> InterpolationMatrix:
    if n is None:
        n = nodes.n
    basis = basis_indices("mixed", n)
    if len(nodes.nodes) != len(basis):
        raise ValueError(f"need {len(basis)} nodes for degree {n}")
    cache: dict = {}
    entries, exact, bounds = [], [], []
    for addr in nodes.nodes:
        row_v, row_e, row_b = [], [], []
        for (j, k) in basis:
            v, ex, est = eval_monomial_at(j, k, addr, cache)
            row_v.append(v)
            row_e.append(ex)
            row_b.append(est)
        entries.append(row_v)
        exact.append(row_e)
        bounds.append(row_b)
    return InterpolationMatrix(node_set=nodes, entries=entries,
                               exact=exact, error_bounds=bounds)


def invertibility_check(matrix: InterpolationMatrix) -> dict:
    """Exact determinant when all entries are exact; otherwise the determinant
    of the computed matrix with a first-order certified error bound

        |det(true) - det(computed)| <= sum_ij |cofactor_ij| * bound_ij.
    """
    det = bareiss_det(matrix.entries)
    if matrix.fully_exact:
        return {"exact": True, "det": det, "error_bound": ZERO}
    bound = ZERO
    for i, row in enumerate(matrix.error_bounds):
        for j, eps in enumerate(row):
            if eps != 0:
                bound += abs(minor_det(matrix.entries, i, j)) * eps
    return {"exact": False, "det": det, "error_bound": bound}


def condition_inf(matrix: InterpolationMatrix) -> float:
    """Infinity-norm condition number (report only)."""
    inv = inverse_exact(matrix.entries)
    return float(inf_norm(matrix.entries) * inf_norm(inv))


@dataclass(frozen=True)
class QuadratureRule:
    """Exactness-degree-n rule on the spine nodes with exact weights."""

    n: int
    nodes: NodeSet
    weights: tuple

    def apply(self, values) -> object:
        return sum((w * v for w, v in zip(self.weights, values)), ZERO)

    def to_json_dict(self) -> dict:
        return {"n": self.n,
                "nodes": [str(a) for a in self.nodes.nodes],
                "weights": [rat_str(w) for w in self.weights]}


def quadrature_weights(n: int) -> QuadratureRule:
    """Solve the exact moment system on the spine nodes.

    The rule integrates every monomial of degree <= n with exactly zero
    residual; this is re-verified after the solve.
    """
    nodes = spine_nodes(n)
    matrix = interpolation_matrix(nodes, n)
    if bareiss_det(matrix.entries) == 0:
        raise ConsistencyError("spine interpolation matrix is singular")
    basis = basis_indices("mixed", n)
    moments = [TABLE.integral(j, k) for (j, k) in basis]
    transposed = [[matrix.entries[r][c] for r in range(len(basis))]
                  for c in range(len(basis))]
    weights = solve_exact(transposed, moments)
    for col, (j, k) in enumerate(basis):
        residual = sum((weights[r] * matrix.entries[r][col]
                        for r in range(len(basis))), ZERO) - moments[col]
        if residual != 0:
            raise ConsistencyError("quadrature exactness residual is nonzero")
    return QuadratureRule(n=n, nodes=nodes, weights=tuple(weights))


def node_depth(rule: QuadratureRule) -> int:
    return max(a.level for a in rule.nodes.nodes)


def composite_quadrature(rule: QuadratureRule, m: int, f,
                         solve_pad: int = 2, field: FieldOnGrid | None = None):
    """Composite rule sum over all (m-n)-cells with measure factor 3^{-(m-n)}.

    `f` may be a Poly (evaluated once on a covering grid via the exact solver)
    or a callable address -> value.  Cells are reduced in lexicographic order,
    so the result is reproducible bit for bit.
    """
    if m < rule.n:
        raise ValueError("composite level must be >= rule order")
    depth = m - rule.n
    if isinstance(f, Poly):
        level = depth + node_depth(rule)
        if field is None or field.grid.m < level:
            field = eval_poly_grid(f, level, level + solve_pad)
        evaluate = field.value_at
    else:
        evaluate = f
    from .grid import cell_words
    factor = Rat(1, 3**depth)
    total = ZERO
    for word in cell_words(depth):
        cell_sum = sum((w * evaluate(mapped(word, a))
                        for w, a in zip(rule.weights, rule.nodes.nodes)), ZERO)
        total += cell_sum
    return factor * total


def quadrature_error_study(n: int, f: Poly, m_max: int, solve_pad: int = 2):
    """Exact-error table of the composite rule against the exact integral.

    Returns rows {m, estimate, exact, abs_error, ratio} with the ratio of the
    previous level's error to the current one (expected near 5^(n+1)).
    """
    rule = quadrature_weights(n)
    exact = f.integral()
    rows = []
    prev_err = None
    for m in range(n, m_max + 1):
        est = composite_quadrature(rule, m, f, solve_pad=solve_pad)
        err = abs(est - exact)
        row = {"m": m, "estimate": est, "exact": exact, "abs_error": err}
        if prev_err is not None and err != 0:
            row["ratio"] = prev_err / err
        rows.append(row)
        prev_err = err
    return rows
