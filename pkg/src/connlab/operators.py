"""Operators attached to a 1-dimensional complex.

Row and column order everywhere is the simplex order of the complex:
vertices ascending, then edges lexicographically.  All matrices are exact
integer matrices; nothing in this module touches floating point.

The central objects:

  d0       signed incidence, one row per edge {a,b} with a<b: -1 at a, +1 at b
  D        Dirac block matrix [[0, d0^T], [d0, 0]]
  H = D^2  Hodge operator, block diagonal H0 (+) H1
  |D|,|H|  the same built from the signless incidence |d0|
  L        connection matrix, L(x,y) = 1 iff the simplices x and y intersect
  g        Green matrix, the exact integer inverse of L

g is produced by the star formula g(x,y) = w(x) w(y) chi(St(x) /\\ St(y))
with w = (-1)^dim, then certified against L by an exact product check.  An
independent elimination-based inverse lives in exact.inverse_exact; the test
suite compares the two routes, so keep them separate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .complexes import Complex, build_complex, parity, sphere_chi, star
from .exact import (
    FieldMatrix,
    IntMatrix,
    IntPolynomial,
    charpoly,
    det,
    field_inverse,
    field_reduce,
)
from .graphs import Graph, betti_numbers


def incidence_signed(c: Complex, signs: Sequence[int] | None = None) -> IntMatrix:
    """Signed incidence matrix d0 (edges x vertices).

    The default orientation points each edge from its smaller endpoint to
    its larger one.  An optional signs vector (one +-1 per edge, in edge
    order) flips individual orientations.
    """
    if signs is None:
        signs = (1,) * c.e
    if len(signs) != c.e or any(s not in (-1, 1) for s in signs):
        raise ValueError("signs must be one +-1 per edge")
    rows = []
    for s, (a, b) in zip(signs, c.graph.edges):
        row = [0] * c.v
        row[a] = -s
        row[b] = s
        rows.append(row)
    return IntMatrix(rows, ncols=c.v)


def incidence_signless(c: Complex) -> IntMatrix:
    rows = []
    for a, b in c.graph.edges:
        row = [0] * c.v
        row[a] = 1
        row[b] = 1
        rows.append(row)
    return IntMatrix(rows, ncols=c.v)


def dirac_from_incidence(d0: IntMatrix) -> IntMatrix:
    """Assemble the Dirac block matrix [[0, d0^T], [d0, 0]]."""
    v = d0.ncols
    e = d0.nrows
    n = v + e
    out = IntMatrix.zeros(n, n)
    for k in range(e):
        for x in range(v):
            out.rows[x][v + k] = d0.rows[k][x]
            out.rows[v + k][x] = d0.rows[k][x]
    return out


def connection_matrix(c: Complex) -> IntMatrix:
    """L(x,y) = 1 iff the closed simplices x and y share a vertex."""
    sets = [frozenset(s) for s in c.simplices]
    n = len(sets)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
        for j in range(i + 1, n):
            if sets[i] & sets[j]:
                rows[i][j] = 1
                rows[j][i] = 1
    return IntMatrix(rows, ncols=n)


def green_star(c: Complex) -> IntMatrix:
    """Green matrix from the star formula.

    g(x,y) = w(x) w(y) chi(St(x) /\\ St(y)) with w = (-1)^dim and chi of a
    set of simplices the alternating count (vertices minus edges).  This is
    the closed form for the inverse of the connection matrix; callers that
    need a certified inverse should go through OperatorBundle.green, which
    verifies L @ g = I exactly.
    """
    n = c.size
    stars = [frozenset(c.index[t] for t in star(c, s)) for s in c.simplices]
    w = [parity(s) for s in c.simplices]
    chi = [parity(s) for s in c.simplices]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            common = stars[i] & stars[j]
            if common:
                val = w[i] * w[j] * sum(chi[k] for k in common)
                rows[i][j] = val
                rows[j][i] = val
    return IntMatrix(rows, ncols=n)


def block(m: IntMatrix, r0: int, r1: int, c0: int, c1: int) -> IntMatrix:
    return IntMatrix([row[c0:c1] for row in m.rows[r0:r1]], ncols=c1 - c0)


class OperatorBundle:
    """Every operator of one complex, computed on demand and cached.

    An optional orientation (one +-1 per edge) only affects the signed
    operators; the signless family and the connection side never see it.
    """

    def __init__(self, source: Graph | Complex, signs: Sequence[int] | None = None):
        self.complex = source if isinstance(source, Complex) else build_complex(source)
        self.signs = tuple(signs) if signs is not None else (1,) * self.complex.e

    @property
    def graph(self) -> Graph:
        return self.complex.graph

    @property
    def v(self) -> int:
        return self.complex.v

    @property
    def e(self) -> int:
        return self.complex.e

    @property
    def size(self) -> int:
        return self.complex.size

    # -- incidence / Dirac / Hodge ------------------------------------------

    @cached_property
    def incidence(self) -> IntMatrix:
        return incidence_signed(self.complex, self.signs)

    @cached_property
    def incidence_signless(self) -> IntMatrix:
        return incidence_signless(self.complex)

    @cached_property
    def dirac(self) -> IntMatrix:
        return dirac_from_incidence(self.incidence)

    @cached_property
    def dirac_signless(self) -> IntMatrix:
        return dirac_from_incidence(self.incidence_signless)

    @cached_property
    def hodge(self) -> IntMatrix:
        return self.dirac @ self.dirac

    @cached_property
    def hodge_signless(self) -> IntMatrix:
        return self.dirac_signless @ self.dirac_signless

    @cached_property
    def hodge0(self) -> IntMatrix:
        return block(self.hodge, 0, self.v, 0, self.v)

    @cached_property
    def hodge1(self) -> IntMatrix:
        return block(self.hodge, self.v, self.size, self.v, self.size)

    @cached_property
    def hodge0_signless(self) -> IntMatrix:
        return block(self.hodge_signless, 0, self.v, 0, self.v)

    @cached_property
    def hodge1_signless(self) -> IntMatrix:
        return block(self.hodge_signless, self.v, self.size, self.v, self.size)

    @cached_property
    def kirchhoff(self) -> IntMatrix:
        """Degree-minus-adjacency matrix, built directly from the graph.

        Independent of the incidence route on purpose: tests compare it
        against hodge0.
        """
        g = self.graph
        deg = g.degrees()
        rows = [[0] * g.n for _ in range(g.n)]
        for i in range(g.n):
            rows[i][i] = deg[i]
        for a, b in g.edges:
            rows[a][b] -= 1
            rows[b][a] -= 1
        return IntMatrix(rows, ncols=g.n)

    @cached_property
    def kirchhoff_signless(self) -> IntMatrix:
        g = self.graph
        deg = g.degrees()
        rows = [[0] * g.n for _ in range(g.n)]
        for i in range(g.n):
            rows[i][i] = deg[i]
        for a, b in g.edges:
            rows[a][b] += 1
            rows[b][a] += 1
        return IntMatrix(rows, ncols=g.n)

    # -- connection side -----------------------------------------------------

    @cached_property
    def connection(self) -> IntMatrix:
        return connection_matrix(self.complex)

    @cached_property
    def green(self) -> IntMatrix:
        """Certified integer inverse of the connection matrix."""
        g = green_star(self.complex)
        if self.connection @ g != IntMatrix.identity(self.size):
            raise ArithmeticError("star formula failed certification against L")
        return g

    @cached_property
    def connection_det(self) -> int:
        return det(self.connection)

    @cached_property
    def connection_charpoly(self) -> IntPolynomial:
        return charpoly(self.connection)


def bundle_for(source: Graph | Complex) -> OperatorBundle:
    return OperatorBundle(source)


# ---------------------------------------------------------------------------
# identity checks


def hydrogen_residual(bundle: OperatorBundle) -> IntMatrix:
    """|H| - (L - L^-1); the zero matrix exactly when the identity holds."""
    return bundle.hodge_signless - (bundle.connection - bundle.green)


def hydrogen_holds(bundle: OperatorBundle) -> bool:
    return hydrogen_residual(bundle).is_zero()


def hydrogen_residual_mod(bundle: OperatorBundle, p: int) -> FieldMatrix:
    """The same identity computed entirely over F_p (field inverse included)."""
    lp = field_reduce(bundle.connection, p)
    gp = field_inverse(lp)
    hp = field_reduce(bundle.hodge_signless, p)
    return hp - (lp - gp)


def hydrogen_holds_mod(bundle: OperatorBundle, p: int) -> bool:
    return hydrogen_residual_mod(bundle, p).is_zero()


def is_unimodular(bundle: OperatorBundle) -> bool:
    return bundle.connection_det in (1, -1)


def energy(bundle: OperatorBundle) -> int:
    """Sum of all Green matrix entries; equals the Euler characteristic."""
    return bundle.green.entry_sum()


def energy_holds(bundle: OperatorBundle) -> bool:
    return energy(bundle) == bundle.complex.euler_characteristic()


@dataclass(frozen=True)
class TraceReport:
    """Exact trace identities tying the connection and Hodge sides together."""

    simplices: int
    edges: int
    connection_trace: int
    hodge_signless_trace: int
    sphere_chi_sum: int
    connection_sq_trace: int
    hodge_signless_sq_trace: int
    intersection_edges: int
    hodge0_signless_sq_trace: int
    hodge1_signless_sq_trace: int

    @property
    def ok(self) -> bool:
        return (
            self.connection_trace == self.simplices
            and self.hodge_signless_trace == self.sphere_chi_sum == 4 * self.edges
            and self.hodge_signless_sq_trace
            == 2 * self.connection_sq_trace - 2 * self.simplices
            == 4 * self.intersection_edges
            and self.hodge0_signless_sq_trace == self.hodge1_signless_sq_trace
        )


def trace_report(bundle: OperatorBundle) -> TraceReport:
    c = bundle.complex
    lsq = bundle.connection @ bundle.connection
    habs = bundle.hodge_signless
    return TraceReport(
        simplices=c.size,
        edges=c.e,
        connection_trace=bundle.connection.trace(),
        hodge_signless_trace=habs.trace(),
        sphere_chi_sum=sum(sphere_chi(c, s) for s in c.simplices),
        connection_sq_trace=lsq.trace(),
        hodge_signless_sq_trace=(habs @ habs).trace(),
        intersection_edges=(bundle.connection.entry_sum() - c.size) // 2,
        hodge0_signless_sq_trace=(
            bundle.hodge0_signless @ bundle.hodge0_signless
        ).trace(),
        hodge1_signless_sq_trace=(
            bundle.hodge1_signless @ bundle.hodge1_signless
        ).trace(),
    )


def _strip_zero_root(p: IntPolynomial) -> tuple[int, tuple[int, ...]]:
    """Split a characteristic polynomial into (multiplicity of root 0, rest)."""
    coeffs = p.coeffs
    mult = 0
    while mult < len(coeffs) and coeffs[mult] == 0:
        mult += 1
    return mult, coeffs[mult:]


@dataclass(frozen=True)
class SupersymmetryReport:
    """Nonzero spectra of the two Hodge blocks agree; kernels count cycles.

    The comparison is exact: the characteristic polynomials of H0 and H1,
    stripped of their zero roots, must be identical, and the zero-root
    multiplicities must equal the component and independent-cycle counts.
    The signless blocks share nonzero spectra too (they are the two Gram
    matrices of the same rectangular factor), checked the same way.
    """

    betti0: int
    betti1: int
    kernel0: int
    kernel1: int
    nonzero_match: bool
    signless_kernel0: int
    signless_kernel1: int
    signless_nonzero_match: bool

    @property
    def ok(self) -> bool:
        return (
            self.kernel0 == self.betti0
            and self.kernel1 == self.betti1
            and self.nonzero_match
            and self.signless_nonzero_match
        )


def supersymmetry_report(bundle: OperatorBundle) -> SupersymmetryReport:
    b0, b1 = betti_numbers(bundle.graph)
    k0, q0 = _strip_zero_root(charpoly(bundle.hodge0))
    k1, q1 = _strip_zero_root(charpoly(bundle.hodge1))
    sk0, sq0 = _strip_zero_root(charpoly(bundle.hodge0_signless))
    sk1, sq1 = _strip_zero_root(charpoly(bundle.hodge1_signless))
    return SupersymmetryReport(
        betti0=b0,
        betti1=b1,
        kernel0=k0,
        kernel1=k1,
        nonzero_match=q0 == q1,
        signless_kernel0=sk0,
        signless_kernel1=sk1,
        signless_nonzero_match=sq0 == sq1,
    )
