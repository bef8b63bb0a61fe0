"""Floating-point spectra and spectral-radius bound estimators.

The exact layer (exact.py, operators.py) produces integer operators; this
module is where floating point is allowed.  It wraps a dense symmetric
eigensolver behind a checked contract and implements every bound column of
the measurement tables:

* rho        largest eigenvalue of the Kirchhoff matrix B - A
* rho_abs    largest eigenvalue of the signless Kirchhoff matrix B + A
* dual_vertex   r - 1/r with r = 1 + max over edges of (deg x + deg y)
* kwalk      r_k - 1/r_k with r_k = 1 + (max row sum of A(G')^k)^(1/k),
             row sums taken exactly in big integers
* bhs        u - 1/u with u = 1 + (sqrt(1 + 8 e') - 1)/2, e' = edge count
             of the connection graph G'
* lsc, shi   diameter-corrected degree bounds for irregular graphs

Soundness (every applicable bound >= rho) is asserted whenever a report is
assembled, so a wrong formula cannot produce a quietly wrong table.

Exact eigenvalue cross-validation lives at the bottom: characteristic
polynomials from the integer Faddeev-LeVerrier recursion are fed to a Sturm
chain root isolator, giving certified eigenvalue multisets to compare with
the floating-point solver on small matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .exact import IntMatrix, IntPolynomial, charpoly, matpow
from .graphs import Graph, connected_components, diameter, induced_subgraph, is_connected, is_regular
from .operators import OperatorBundle, bundle_for


class SpectraError(ValueError):
    """Raised for contract violations: asymmetric input, edgeless graphs."""


class SoundnessError(AssertionError):
    """An upper bound came out below the spectral radius it must dominate."""


# Relative asymmetry allowed before eig_sym refuses the input.
SYMMETRY_RTOL = 1e-12
# Default residual target for the eigensolver.
EIG_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues of one symmetric matrix plus the achieved residual."""

    eigenvalues: tuple[float, ...]
    matrix_dim: int
    tolerance_achieved: float

    def __post_init__(self) -> None:
        if len(self.eigenvalues) != self.matrix_dim:
            raise SpectraError("eigenvalue count does not match matrix_dim")
        if any(
            a > b for a, b in zip(self.eigenvalues, self.eigenvalues[1:])
        ):
            raise SpectraError("eigenvalues must be sorted ascending")

    @property
    def top(self) -> float:
        return self.eigenvalues[-1]

    @property
    def bottom(self) -> float:
        return self.eigenvalues[0]

    @property
    def top_gap(self) -> float:
        """lambda_n - lambda_{n-1}."""
        if self.matrix_dim < 2:
            return math.inf
        return self.eigenvalues[-1] - self.eigenvalues[-2]

    def partial_sums(self) -> tuple[float, ...]:
        out = []
        acc = 0.0
        for lam in self.eigenvalues:
            acc += lam
            out.append(acc)
        return tuple(out)


def _as_array(m: IntMatrix | np.ndarray | Sequence[Sequence[float]]) -> np.ndarray:
    if isinstance(m, IntMatrix):
        return m.to_float()
    return np.asarray(m, dtype=float)


def eig_sym(m: IntMatrix | np.ndarray | Sequence[Sequence[float]], tol: float = EIG_TOL) -> Spectrum:
    """Eigenvalues of a symmetric real matrix, sorted ascending.

    The input must be symmetric within SYMMETRY_RTOL * max|m|; it is then
    explicitly symmetrized and handed to the dense symmetric solver.  The
    achieved residual max|A v - lambda v| / max(1, max|m|) is recorded and
    checked against tol, so a silently bad decomposition raises instead of
    propagating.
    """
    a = _as_array(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SpectraError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return Spectrum((), 0, 0.0)
    scale = max(1.0, float(np.max(np.abs(a))))
    asym = float(np.max(np.abs(a - a.T)))
    if asym > SYMMETRY_RTOL * scale:
        raise SpectraError(
            f"matrix is not symmetric: max|A - A^T| = {asym:.3e} "
            f"exceeds {SYMMETRY_RTOL:.0e} * {scale:.3e}"
        )
    s = (a + a.T) / 2.0
    try:
        w, v = np.linalg.eigh(s)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hardware dependent
        raise SpectraError(f"eigensolver did not converge: {exc}") from exc
    residual = float(np.max(np.abs(s @ v - v * w))) / scale
    if residual > tol:
        raise SpectraError(
            f"eigensolver residual {residual:.3e} exceeds requested tolerance {tol:.0e}"
        )
    order = np.argsort(w, kind="stable")
    return Spectrum(tuple(float(w[i]) for i in order), n, residual)


def spectrum_of(m: IntMatrix, tol: float = EIG_TOL) -> Spectrum:
    return eig_sym(m, tol)


# ---------------------------------------------------------------------------
# bound estimators


def _require_edges(g: Graph) -> None:
    if not g.edges:
        raise SpectraError(f"graph {g.name!r} has no edges; degree bounds are inapplicable")


def _edge_degree_max(g: Graph) -> int:
    """max over edges (a,b) of deg(a) + deg(b)."""
    _require_edges(g)
    deg = g.degrees()
    return max(deg[a] + deg[b] for a, b in g.edges)


def bound_trivial_2d(g: Graph) -> float:
    """Row-sum bound 2d on the Kirchhoff spectral radius, d = max degree."""
    _require_edges(g)
    return 2.0 * max(g.degrees())


def bound_anderson_morley(g: Graph) -> float:
    """max over edges of deg(x) + deg(y), the 1-form row-sum bound."""
    return float(_edge_degree_max(g))


def bound_dual_vertex(g: Graph) -> float:
    """r - 1/r with r = 1 + max over edges of (deg x + deg y).

    r dominates rho(L) by a row-sum argument in the connection graph, and
    t -> t - 1/t is increasing, so this dominates rho(|H|) and in turn the
    Kirchhoff spectral radius.
    """
    r = 1.0 + _edge_degree_max(g)
    return r - 1.0 / r


def bound_kwalk(g: Graph, k: int) -> float:
    """Walk bound r_k - 1/r_k, r_k = 1 + (max_x P(k,x))^(1/k).

    P(k,x) counts length-k walks in the connection graph G' starting at x,
    computed exactly: A(G') = L - I over the integers, raised to the k-th
    power by binary exponentiation, then the maximal row sum.  Only the
    final k-th root is floating point.
    """
    if k < 1:
        raise SpectraError("walk length k must be >= 1")
    _require_edges(g)
    bundle = bundle_for(g)
    n = bundle.size
    adj = bundle.connection - IntMatrix.identity(n)
    power = matpow(adj, k)
    walks = max(power.row_sums())
    if walks <= 0:
        raise SpectraError("connection graph has no walks; graph must have an edge")
    # exp(log(P)/k) stays finite even when P overflows a float
    r = 1.0 + math.exp(math.log(walks) / k)
    return r - 1.0 / r


def connection_edge_count(g: Graph) -> int:
    """Number of edges e' of the connection graph G'."""
    bundle = bundle_for(g)
    n = bundle.size
    return (bundle.connection.entry_sum() - n) // 2


def bound_bhs(g: Graph) -> float:
    """Edge-count bound u - 1/u, u = 1 + (sqrt(1 + 8 e') - 1)/2.

    The inner expression bounds the adjacency spectral radius of any graph
    with e' edges, applied here to the connection graph G'.
    """
    _require_edges(g)
    eprime = connection_edge_count(g)
    u = 1.0 + (math.sqrt(1.0 + 8.0 * eprime) - 1.0) / 2.0
    return u - 1.0 / u


def _lsc_shi_one_component(g: Graph) -> tuple[float, float]:
    d = max(g.degrees())
    radius = diameter(g)
    v = g.n
    lsc = 2.0 * d - 1.0 / (v * (2 * radius + 1))
    shi = 2.0 * d - 2.0 / ((2 * radius + 1) * v)
    return lsc, shi


def _lsc_shi(g: Graph) -> tuple[float, float, bool, bool]:
    """(lsc, shi, applicable, per_component).

    Applicability follows the tables' caveat: the bound holds for irregular
    graphs only.  Disconnected input is handled per component with that
    component's own (d, diameter, v) and the maximum taken; a single regular
    component poisons applicability since its radius may exceed its own bound.
    """
    if is_connected(g):
        lsc, shi = _lsc_shi_one_component(g)
        return lsc, shi, not is_regular(g), False
    comps = connected_components(g)
    vals = [_lsc_shi_one_component(induced_subgraph(g, comp)) for comp in comps]
    applicable = all(
        not is_regular(induced_subgraph(g, comp)) for comp in comps
    )
    return max(v[0] for v in vals), max(v[1] for v in vals), applicable, True


def bound_lsc(g: Graph) -> tuple[float, bool]:
    """Li-Shiu-Chan style bound 2d - 1/(v (2R + 1)); (value, applicable)."""
    lsc, _, applicable, _ = _lsc_shi(g)
    return lsc, applicable


def bound_shi(g: Graph) -> tuple[float, bool]:
    """Shi style bound 2d - 2/((2R + 1) v); (value, applicable)."""
    _, shi, applicable, _ = _lsc_shi(g)
    return shi, applicable


# ---------------------------------------------------------------------------
# assembled report


@dataclass(frozen=True)
class BoundsReport:
    """One table row: measured radii plus every bound estimator.

    rho_H and rho_Habs are the measured columns (Kirchhoff and signless
    Kirchhoff); rho_Habs_full is the top of the full signless Hodge operator
    and coincides with rho_Habs for graphs with at least one edge.
    """

    graph_name: str
    rho_H: float
    rho_Habs: float
    rho_Habs_full: float
    bound_trivial_2d: float
    bound_anderson_morley: float
    bound_dual_vertex: float
    bound_kwalk: Mapping[int, float]
    bound_bhs: float
    bound_lsc: float
    bound_shi: float
    regular: bool
    connected: bool
    flags: tuple[str, ...]

    def row(self, walk_k: int = 3) -> tuple[float, float, float, float, float, float]:
        """The six printed columns: rho, rho_abs, dual_vertex, walk3, bhs, lsc."""
        return (
            self.rho_H,
            self.rho_Habs,
            self.bound_dual_vertex,
            self.bound_kwalk[walk_k],
            self.bound_bhs,
            self.bound_lsc,
        )


CSV_COLUMNS = ("name", "rho", "rho_abs", "dual_vertex", "walk3", "bhs", "lsc")


def _check_soundness(report: BoundsReport, tol: float = 1e-9) -> None:
    rho = report.rho_H
    checks = [
        ("trivial_2d", report.bound_trivial_2d),
        ("anderson_morley", report.bound_anderson_morley),
        ("dual_vertex", report.bound_dual_vertex),
        ("bhs", report.bound_bhs),
    ]
    checks.extend((f"kwalk[{k}]", v) for k, v in report.bound_kwalk.items())
    if "lsc-inapplicable" not in report.flags:
        checks.append(("lsc", report.bound_lsc))
        checks.append(("shi", report.bound_shi))
    for label, value in checks:
        if value < rho - tol:
            raise SoundnessError(
                f"{report.graph_name}: bound {label} = {value!r} is below rho = {rho!r}"
            )


def bounds_report(g: Graph, ks: Sequence[int] = (1, 2, 3), tol: float = EIG_TOL) -> BoundsReport:
    """All bound columns for one graph, with the soundness invariant asserted."""
    _require_edges(g)
    bundle = bundle_for(g)
    rho_h = eig_sym(bundle.kirchhoff, tol).top
    rho_habs = eig_sym(bundle.kirchhoff_signless, tol).top
    rho_habs_full = eig_sym(bundle.hodge_signless, tol).top
    lsc, shi, applicable, per_component = _lsc_shi(g)
    flags = []
    regular = is_regular(g)
    connected = is_connected(g)
    if regular:
        flags.append("regular")
    if not connected:
        flags.append("disconnected")
    if per_component:
        flags.append("lsc-per-component")
    if not applicable:
        flags.append("lsc-inapplicable")
    report = BoundsReport(
        graph_name=g.name or "graph",
        rho_H=rho_h,
        rho_Habs=rho_habs,
        rho_Habs_full=rho_habs_full,
        bound_trivial_2d=bound_trivial_2d(g),
        bound_anderson_morley=bound_anderson_morley(g),
        bound_dual_vertex=bound_dual_vertex(g),
        bound_kwalk={k: bound_kwalk(g, k) for k in ks},
        bound_bhs=bound_bhs(g),
        bound_lsc=lsc,
        bound_shi=shi,
        regular=regular,
        connected=connected,
        flags=tuple(flags),
    )
    _check_soundness(report)
    return report


# ---------------------------------------------------------------------------
# Schur majorization and the limiting spectral function


@dataclass(frozen=True)
class SchurReport:
    """Partial-sum majorization facts for a connection Laplacian spectrum."""

    partial_sums_ok: bool
    worst_partial_excess: float
    trace_matches_dim: bool
    top_gap: float
    top_gap_ge_one: bool
    fiedler_ok: bool | None

    @property
    def ok(self) -> bool:
        core = self.partial_sums_ok and self.trace_matches_dim
        return core and (self.fiedler_ok is not False)


def schur_check(
    l_spec: Spectrum,
    habs_top: float | None = None,
    max_degree: int | None = None,
    tol: float = 1e-8,
) -> SchurReport:
    """Check sum_{i<=t} lambda_i <= t with equality at t = n, and the gaps.

    The ascending partial sums of the connection spectrum are majorized by
    the counting sequence because L has unit diagonal.  top_gap_ge_one is
    reported but not asserted; it fails for long cycles.  When both
    habs_top and max_degree are supplied, the Fiedler-style inequality
    lambda_max(|H|) >= d is checked too.
    """
    n = l_spec.matrix_dim
    excess = max(
        (s - t for t, s in enumerate(l_spec.partial_sums(), start=1)),
        default=0.0,
    )
    trace = l_spec.partial_sums()[-1] if n else 0.0
    gap = l_spec.top_gap
    fiedler = None
    if habs_top is not None and max_degree is not None:
        fiedler = habs_top >= max_degree - tol
    return SchurReport(
        partial_sums_ok=excess <= tol,
        worst_partial_excess=float(excess),
        trace_matches_dim=abs(trace - n) <= tol,
        top_gap=gap,
        top_gap_ge_one=gap >= 1.0 - tol,
        fiedler_ok=fiedler,
    )


def connection_sign_split(l_spec: Spectrum, tol: float = 1e-8) -> tuple[int, int]:
    """(negative count, positive count) of a connection Laplacian spectrum.

    For a 1-dimensional complex these are (e, v): the spectrum lives in
    [-1, 0) union [1, infinity), and -1 is attained (cycles, for example).
    """
    neg = sum(1 for lam in l_spec.eigenvalues if lam < -tol)
    pos = sum(1 for lam in l_spec.eigenvalues if lam > tol)
    return neg, pos


def block_gap(l_spec: Spectrum, negative_count: int) -> float:
    """lambda_{e+1} - lambda_e across the negative/positive split of sigma(L)."""
    e = negative_count
    if e == 0 or e >= l_spec.matrix_dim:
        return math.inf
    return l_spec.eigenvalues[e] - l_spec.eigenvalues[e - 1]


def spectral_function(spec: Spectrum) -> Callable[[float], float]:
    """The step function F(x) = lambda_ceil(n x) on (0, 1]."""
    if spec.matrix_dim == 0:
        raise SpectraError("empty spectrum has no spectral function")
    eigs = spec.eigenvalues
    n = spec.matrix_dim

    def f(x: float) -> float:
        if not 0.0 < x <= 1.0:
            raise SpectraError(f"spectral function argument {x} outside (0, 1]")
        return eigs[math.ceil(n * x) - 1]

    return f


def limit_profile(x: float) -> float:
    """The barycentric limit profile 4 sin^2(pi x / 2) of cycle Kirchhoff spectra."""
    s = math.sin(math.pi * x / 2.0)
    return 4.0 * s * s


def spectral_function_sup_distance(spec: Spectrum) -> float:
    """sup_j |F(j/n) - limit_profile(j/n)| over the natural sample grid."""
    f = spectral_function(spec)
    n = spec.matrix_dim
    return max(abs(f(j / n) - limit_profile(j / n)) for j in range(1, n + 1))


def limit_functional_equation_residual(samples: int = 100) -> float:
    """max |F(2x) - F(x)(4 - F(x))| for the limit profile at sampled x.

    The doubling identity is exact for 4 sin^2(pi x / 2); the residual here
    is pure floating-point roundoff.
    """
    worst = 0.0
    for j in range(1, samples + 1):
        x = j / (2.0 * samples)
        fx = limit_profile(x)
        worst = max(worst, abs(limit_profile(2.0 * x) - fx * (4.0 - fx)))
    return worst


# ---------------------------------------------------------------------------
# certified eigenvalues from the exact characteristic polynomial
#
# Sturm chains decide exactly how many real roots a square-free rational
# polynomial has in an interval, so bisection gives eigenvalue enclosures
# with no floating-point trust anywhere.  Multiplicities come from peeling
# gcd(p, p') layers.  Degree stays tiny (n <= 12 in the validation suite).


def _fpoly(coeffs: Sequence[Fraction]) -> list[Fraction]:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out


def _fpoly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _fpoly_deriv(p: Sequence[Fraction]) -> list[Fraction]:
    return _fpoly([c * k for k, c in enumerate(p)][1:])


def _fpoly_rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _fpoly(a):
        a = _fpoly(a)
        if len(a) - 1 < db:
            break
        q = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a = _fpoly(a)
    return _fpoly(a)


def _fpoly_monic(p: Sequence[Fraction]) -> list[Fraction]:
    p = _fpoly(p)
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def _fpoly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _fpoly(a), _fpoly(b)
    while b:
        a, b = b, _fpoly_rem(a, b)
    return _fpoly_monic(a)


def _fpoly_div_exact(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    a, b = _fpoly(a), _fpoly(b)
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    while len(a) >= len(b) and _fpoly(a):
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        out[shift] = q
        for i, c in enumerate(b):
            a[shift + i] -= q * c
        a = _fpoly(a)
    if _fpoly(a):
        raise ArithmeticError("polynomial division was not exact")
    return _fpoly(out)


def _sturm_chain(p: Sequence[Fraction]) -> list[list[Fraction]]:
    chain = [_fpoly(p), _fpoly_deriv(p)]
    while chain[-1]:
        rem = _fpoly_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return [c for c in chain if c]


def _sign_variations(chain: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _fpoly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _roots_squarefree(p: list[Fraction], precision: Fraction) -> list[Fraction]:
    """All real roots of a square-free polynomial, each within precision."""
    if len(p) <= 1:
        return []
    chain = _sturm_chain(p)
    bound = Fraction(1) + max(abs(c) for c in p[:-1]) / abs(p[-1])
    roots: list[Fraction] = []

    def count(a: Fraction, b: Fraction) -> int:
        return _sign_variations(chain, a) - _sign_variations(chain, b)

    stack = [(-bound, bound, count(-bound, bound))]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1 and b - a < precision:
            roots.append((a + b) / 2)
            continue
        mid = (a + b) / 2
        # roots are counted in half-open intervals (a, b]; a root exactly at
        # the midpoint is captured by the left half
        left = count(a, mid)
        stack.append((a, mid, left))
        stack.append((mid, b, k - left))
    return sorted(roots)


def exact_root_multiset(p: IntPolynomial, precision: Fraction = Fraction(1, 10**9)) -> list[float]:
    """Real roots of p with multiplicity, sorted, certified by Sturm counts.

    Layers of gcd(p, p') carry the repeated roots, so the recursion returns
    each root as many times as its multiplicity.  For characteristic
    polynomials of symmetric integer matrices all roots are real, which the
    caller can confirm by comparing len(result) with the degree.
    """
    coeffs = [Fraction(c) for c in p.coeffs]

    def rec(q: list[Fraction]) -> list[float]:
        q = _fpoly(q)
        if len(q) <= 1:
            return []
        deriv = _fpoly_deriv(q)
        g = _fpoly_gcd(q, deriv)
        squarefree = _fpoly_div_exact(q, g) if len(g) > 1 else _fpoly_monic(q)
        found = [float(r) for r in _roots_squarefree(squarefree, precision)]
        if len(g) > 1:
            found.extend(rec(g))
        return found

    return sorted(rec(coeffs))


def validate_spectrum_against_charpoly(m: IntMatrix, tol: float = 1e-6) -> float:
    """Compare eig_sym(m) with certified charpoly roots; return the worst gap.

    Raises if the multiset sizes differ or any eigenvalue is further than
    tol from its certified partner.
    """
    spec = eig_sym(m)
    roots = exact_root_multiset(charpoly(m))
    if len(roots) != spec.matrix_dim:
        raise SpectraError(
            f"charpoly yielded {len(roots)} real roots for dimension {spec.matrix_dim}"
        )
    worst = max(
        (abs(a - b) for a, b in zip(spec.eigenvalues, roots)),
        default=0.0,
    )
    if worst > tol:
        raise SpectraError(
            f"eigensolver disagrees with certified roots by {worst:.3e}"
        )
    return worst
