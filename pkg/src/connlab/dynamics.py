"""Two-sided walks, Jacobi solutions, Perron limits, and the mod-p automaton.

The connection Laplacian L is unimodular, so the walk psi(n) = L^n psi runs
in both time directions with integer states and is reversible bit for bit.
Squaring the defining identity gives the discrete wave equation

    psi(n+2) - 2 psi(n) + psi(n-2) = |H|^2 psi(n)

whose residual this module evaluates exactly (it must be the zero integer).
Four parity-restricted branch families solve the same equation from a
quadruple of initial vectors; their span is measured honestly, since it
degenerates whenever +1 or -1 is an eigenvalue of L.

Floating point appears only where growth is genuinely exponential: Perron
projection limits and Lyapunov exponents of operator cocycles.  Over a
prime field the walk becomes a reversible cellular automaton with purely
periodic orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .exact import (
    FieldMatrix,
    IntMatrix,
    field_inverse,
    field_matpow,
    inverse_unimodular,
    matpow,
    rank,
)
from .graphs import Graph, connected_components, induced_subgraph
from .operators import OperatorBundle, bundle_for
from .spectra import eig_sym


class DynamicsError(ValueError):
    pass


Vector = tuple


@dataclass(frozen=True)
class Trajectory:
    """States of a walk keyed by integer time, possibly negative.

    Full walks record every time in range and step by one application of L
    (or its exact inverse, for negative times).  Branch solutions of the
    second-order equation record a single parity class and step by L^2 or
    L^-2; the provenance string says which.
    """

    states: Mapping[int, Vector]
    provenance: str

    def __getitem__(self, n: int) -> Vector:
        return self.states[n]

    def __contains__(self, n: int) -> bool:
        return n in self.states

    def times(self) -> tuple[int, ...]:
        return tuple(sorted(self.states))

    @property
    def dimension(self) -> int:
        return len(next(iter(self.states.values()))) if self.states else 0


@dataclass(frozen=True)
class QuaternionField:
    """Initial data quadruple (psi0, psi1, psi2, psi3), all the same length."""

    psi0: Vector
    psi1: Vector
    psi2: Vector
    psi3: Vector

    def __post_init__(self) -> None:
        n = len(self.psi0)
        if any(len(v) != n for v in (self.psi1, self.psi2, self.psi3)):
            raise DynamicsError("all four component vectors must share a length")

    @property
    def dimension(self) -> int:
        return len(self.psi0)


@dataclass(frozen=True)
class AutomatonState:
    """One configuration of the mod-p automaton: F_p-valued and time-stamped."""

    p: int
    vector: Vector
    time: int

    def __post_init__(self) -> None:
        if any(not 0 <= x < self.p for x in self.vector):
            raise DynamicsError("automaton state entries must be reduced mod p")


@dataclass(frozen=True)
class EnvironmentSequence:
    """Operator indices omega(1), omega(2), ... over a registry of equal-size L's."""

    indices: tuple[int, ...]
    registry: tuple[IntMatrix, ...]

    def __post_init__(self) -> None:
        if not self.registry:
            raise DynamicsError("environment registry is empty")
        n = self.registry[0].nrows
        if any(m.nrows != n or m.ncols != n for m in self.registry):
            raise DynamicsError("registered operators must share dimensions")
        if any(not 0 <= i < len(self.registry) for i in self.indices):
            raise DynamicsError("environment index out of range")

    @property
    def dimension(self) -> int:
        return self.registry[0].nrows


# ---------------------------------------------------------------------------
# exact walks and the Jacobi equation


def walk(L: IntMatrix, psi0: Sequence[int], n_min: int, n_max: int) -> Trajectory:
    """psi(n) = L^n psi0 for n_min <= n <= n_max, exact in both directions."""
    if n_min > 0 or n_max < 0:
        raise DynamicsError("time range must contain 0")
    start = tuple(int(x) for x in psi0)
    if len(start) != L.ncols:
        raise DynamicsError(f"initial vector has length {len(start)}, expected {L.ncols}")
    states: dict[int, Vector] = {0: start}
    current = start
    for n in range(1, n_max + 1):
        current = L.apply(current)
        states[n] = current
    if n_min < 0:
        linv = inverse_unimodular(L)
        current = start
        for n in range(-1, n_min - 1, -1):
            current = linv.apply(current)
            states[n] = current
    return Trajectory(states, f"L^n walk, {L.nrows} cells, exact integers")


def jacobi_residual(t: Trajectory, habs: IntMatrix) -> int | float:
    """max over n of |psi(n+2) - 2 psi(n) + psi(n-2) - |H|^2 psi(n)|_inf.

    Exactly zero for any exact walk trajectory; integer states give an
    integer residual so a pass is unambiguous.
    """
    habs_sq = habs @ habs
    worst = None
    for n in t.times():
        if n + 2 not in t or n - 2 not in t:
            continue
        hi, mid, lo = t[n + 2], t[n], t[n - 2]
        pulled = habs_sq.apply(mid) if isinstance(mid[0], int) else tuple(
            float(x) for x in habs_sq.to_float() @ np.asarray(mid, dtype=float)
        )
        residual = max(
            abs(hi[i] - 2 * mid[i] + lo[i] - pulled[i]) for i in range(len(mid))
        )
        worst = residual if worst is None else max(worst, residual)
    if worst is None:
        raise DynamicsError("trajectory does not cover any n-2, n, n+2 triple")
    return worst


def quaternion_solution(
    bundle: OperatorBundle, q: QuaternionField, n_steps: int
) -> tuple[Trajectory, Trajectory, Trajectory, Trajectory]:
    """Four branch solutions of the Jacobi equation from initial data q.

    Branches 0 and 1 live on even times t = 2m, |m| <= n_steps, with states
    L^t psi0 and L^-t psi1; branches 2 and 3 live on odd times t = 2m+1 with
    states L^t psi2 and L^-t psi3.  Stepping any branch by two time units
    multiplies by L^2 or L^-2, so each branch satisfies the equation
    exactly (verify with jacobi_residual).
    """
    n = bundle.size
    if q.dimension != n:
        raise DynamicsError(f"initial data has length {q.dimension}, expected {n}")
    L = bundle.connection
    Linv = bundle.green
    Lsq = L @ L
    Linv_sq = Linv @ Linv

    def branch(start: Vector, t0: int, step_op: IntMatrix, reach: IntMatrix, back: IntMatrix) -> dict[int, Vector]:
        # state at the base time t0, then stride-2 in both directions
        base = reach.apply(tuple(int(x) for x in start))
        states = {t0: base}
        fwd = base
        for m in range(1, n_steps + 1):
            fwd = step_op.apply(fwd)
            states[t0 + 2 * m] = fwd
        bwd = base
        for m in range(1, n_steps + 1):
            bwd = back.apply(bwd)
            states[t0 - 2 * m] = bwd
        return states

    ident = IntMatrix.identity(n)
    b0 = Trajectory(branch(q.psi0, 0, Lsq, ident, Linv_sq), "even branch, states L^t psi0")
    b1 = Trajectory(branch(q.psi1, 0, Linv_sq, ident, Lsq), "even branch, states L^-t psi1")
    b2 = Trajectory(branch(q.psi2, 1, Lsq, L, Linv_sq), "odd branch, states L^t psi2")
    b3 = Trajectory(branch(q.psi3, 1, Linv_sq, Linv, Lsq), "odd branch, states L^-t psi3")
    return b0, b1, b2, b3


def combined_solution(branches: Sequence[Trajectory]) -> Trajectory:
    """Pointwise sum of the four branches on the times they share per parity."""
    states: dict[int, Vector] = {}
    for b in branches:
        for t, v in b.states.items():
            if t in states:
                states[t] = tuple(a + c for a, c in zip(states[t], v))
            else:
                states[t] = v
    return Trajectory(states, "sum of quaternion branches")


def jacobi_ivp(habs: IntMatrix, initial: Sequence[Sequence[int]], n_min: int, n_max: int) -> Trajectory:
    """Solve the Jacobi equation from four consecutive states u(0)..u(3).

    The equation is a second-order recurrence on each time parity, so any
    quadruple of vectors extends uniquely to all of the requested range;
    this is the 4n-dimensional solution space, parameterized directly.
    """
    if len(initial) != 4:
        raise DynamicsError("need exactly u(0), u(1), u(2), u(3)")
    n = habs.nrows
    vecs = [tuple(int(x) for x in v) for v in initial]
    if any(len(v) != n for v in vecs):
        raise DynamicsError("initial vectors must match operator dimension")
    habs_sq = habs @ habs
    states: dict[int, Vector] = {i: vecs[i] for i in range(4)}

    def step_forward(t: int) -> Vector:
        mid = states[t - 2]
        pulled = habs_sq.apply(mid)
        return tuple(2 * mid[i] + pulled[i] - states[t - 4][i] for i in range(n))

    def step_backward(t: int) -> Vector:
        mid = states[t + 2]
        pulled = habs_sq.apply(mid)
        return tuple(2 * mid[i] + pulled[i] - states[t + 4][i] for i in range(n))

    for t in range(4, n_max + 1):
        states[t] = step_forward(t)
    for t in range(-1, n_min - 1, -1):
        states[t] = step_backward(t)
    for t in list(states):
        if t < n_min or t > n_max:
            del states[t]
    return Trajectory(states, "Jacobi initial value solution, exact integers")


def quaternion_branch_rank(bundle: OperatorBundle) -> int:
    """Rank of the map from (psi0..psi3) to the states at times 0, 1, 2, 3.

    Full rank 4n means every solution arises from a unique branch quadruple.
    The map degenerates exactly on eigenvectors of L with eigenvalue +1 or
    -1 (the branch pairs collide there), and the deficiency is reported by
    this rank rather than hidden.
    """
    n = bundle.size
    L = bundle.connection
    Linv = bundle.green
    zero = IntMatrix.zeros(n, n)
    p = {0: IntMatrix.identity(n), 1: L, 2: matpow(L, 2), 3: matpow(L, 3)}
    q = {0: IntMatrix.identity(n), 1: Linv, 2: matpow(Linv, 2), 3: matpow(Linv, 3)}
    rows: list[list[int]] = []
    for t in range(4):
        blocks = (
            (p[t], q[t], zero, zero) if t % 2 == 0 else (zero, zero, p[t], q[t])
        )
        for i in range(n):
            rows.append(
                blocks[0].rows[i] + blocks[1].rows[i] + blocks[2].rows[i] + blocks[3].rows[i]
            )
    return rank(IntMatrix(rows))


# ---------------------------------------------------------------------------
# Perron projection limits


@dataclass(frozen=True)
class PerronReport:
    """Limits of the normalized forward and backward even-time walks."""

    rho: float
    v: Vector
    w: Vector
    forward_residuals: tuple[float, ...]
    backward_residuals: tuple[float, ...]

    @property
    def forward_final(self) -> float:
        return self.forward_residuals[-1]

    @property
    def backward_final(self) -> float:
        return self.backward_residuals[-1]


def _irreducible(L: IntMatrix) -> bool:
    n = L.nrows
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if j not in seen and L.rows[i][j] != 0:
                seen.add(j)
                frontier.append(j)
    return len(seen) == n


def perron_limits(L: IntMatrix, max_n: int = 30, tol: float = 1e-6) -> PerronReport:
    """Perron vector v and small-eigenvalue vector w with certified limits.

    v and w come from the dense symmetric eigendecomposition; the report
    then cross-checks them against exact big-integer powers: L^{2n} (and
    L^{-2n}) normalized by rho^{2n} must converge to v (x) v and w (x) w in
    Frobenius norm, and the residual sequences are returned so the decrease
    is visible.  The final forward residual is checked against tol.

    The eigenvalue nearest zero has magnitude exactly 1/rho (the spectrum
    of L^2 is closed under inversion), which is why one normalization
    constant serves both directions.
    """
    if not _irreducible(L):
        raise DynamicsError(
            "connection matrix is reducible; use perron_limits_components"
        )
    a = L.to_float()
    eigs, vecs = np.linalg.eigh((a + a.T) / 2.0)
    top = int(np.argmax(eigs))
    rho = float(eigs[top])
    v_arr = vecs[:, top]
    if v_arr.sum() < 0:
        v_arr = -v_arr
    small = int(np.argmin(np.abs(eigs)))
    w_arr = vecs[:, small]
    nz = next(i for i in range(len(w_arr)) if abs(w_arr[i]) > 1e-12)
    if w_arr[nz] < 0:
        w_arr = -w_arr
    if np.any(v_arr <= 0):
        raise DynamicsError("Perron vector is not strictly positive; L is not irreducible")

    v_proj = np.outer(v_arr, v_arr)
    w_proj = np.outer(w_arr, w_arr)
    linv = inverse_unimodular(L)
    forward: list[float] = []
    backward: list[float] = []
    fwd_pow = IntMatrix.identity(L.nrows)
    bwd_pow = IntMatrix.identity(L.nrows)
    lsq = L @ L
    linv_sq = linv @ linv
    scale = 1.0
    for n in range(1, max_n + 1):
        fwd_pow = fwd_pow @ lsq
        bwd_pow = bwd_pow @ linv_sq
        scale *= rho * rho
        forward.append(float(np.linalg.norm(fwd_pow.to_float() / scale - v_proj)))
        backward.append(float(np.linalg.norm(bwd_pow.to_float() / scale - w_proj)))
    if forward[-1] > tol:
        raise DynamicsError(
            f"forward Perron residual {forward[-1]:.3e} exceeds {tol:.0e} at n = {max_n}"
        )
    return PerronReport(rho, tuple(map(float, v_arr)), tuple(map(float, w_arr)),
                        tuple(forward), tuple(backward))


def perron_limits_components(g: Graph, max_n: int = 30, tol: float = 1e-6) -> list[PerronReport]:
    """Per-component Perron reports for a possibly disconnected graph."""
    return [
        perron_limits(bundle_for(induced_subgraph(g, comp)).connection, max_n, tol)
        for comp in connected_components(g)
    ]


# ---------------------------------------------------------------------------
# reversible cellular automaton over F_p


def automaton_run(
    Lp: FieldMatrix, s0: AutomatonState, n_min: int, n_max: int
) -> list[AutomatonState]:
    """States L^n s0 mod p for n in [n_min, n_max], exact in both directions."""
    if s0.p != Lp.p:
        raise DynamicsError(f"state modulus {s0.p} does not match operator modulus {Lp.p}")
    if len(s0.vector) != Lp.ncols:
        raise DynamicsError("state length does not match operator size")
    if n_min > s0.time or n_max < s0.time:
        raise DynamicsError("time range must contain the initial time")
    states = {s0.time: s0}
    current = s0.vector
    for n in range(s0.time + 1, n_max + 1):
        current = Lp.apply(current)
        states[n] = AutomatonState(s0.p, current, n)
    if n_min < s0.time:
        back = field_inverse(Lp)
        current = s0.vector
        for n in range(s0.time - 1, n_min - 1, -1):
            current = back.apply(current)
            states[n] = AutomatonState(s0.p, current, n)
    return [states[n] for n in range(n_min, n_max + 1)]


def orbit_period(Lp: FieldMatrix, vector: Sequence[int], cap: int = 10**6) -> int:
    """Least k >= 1 with L^k s = s; exists because L is invertible mod p."""
    start = tuple(int(x) % Lp.p for x in vector)
    current = start
    for k in range(1, cap + 1):
        current = Lp.apply(current)
        if current == start:
            return k
    raise DynamicsError(f"orbit period exceeds cap {cap}")


def multiplicative_order(Lp: FieldMatrix, cap: int = 10**6) -> int:
    """Order of L in GL(n, F_p) by direct iteration."""
    ident = FieldMatrix.identity(Lp.nrows, Lp.p)
    current = Lp
    for k in range(1, cap + 1):
        if current.rows == ident.rows:
            return k
        current = current @ Lp
    raise DynamicsError(f"multiplicative order exceeds cap {cap}")


# ---------------------------------------------------------------------------
# cocycles and growth rates


@dataclass(frozen=True)
class CocycleReport:
    """Lyapunov estimate of an operator product, with the normalized tail state."""

    lyapunov: float
    steps: int
    final_state: Vector
    log_norms: tuple[float, ...]


def cocycle(
    env: EnvironmentSequence,
    psi0: Sequence[float],
    n_steps: int,
    renorm_every: int = 16,
) -> CocycleReport:
    """Apply L_omega(n) ... L_omega(1) psi0 and estimate the Lyapunov exponent.

    Entries grow like rho^n, so the state is renormalized by its max norm
    every renorm_every steps and the discarded scale factors accumulate in
    log space; the estimate is (sum of logs + log of the final norm) / n.
    """
    if len(env.indices) < n_steps:
        raise DynamicsError(f"environment supplies {len(env.indices)} steps, need {n_steps}")
    x = np.asarray(psi0, dtype=float)
    if x.shape != (env.dimension,):
        raise DynamicsError("initial vector does not match registry dimension")
    mats = [m.to_float() for m in env.registry]
    log_acc = 0.0
    log_norms = []
    for t in range(n_steps):
        x = mats[env.indices[t]] @ x
        if (t + 1) % renorm_every == 0:
            m = float(np.max(np.abs(x)))
            if m == 0.0:
                raise DynamicsError("state collapsed to zero; Lyapunov undefined")
            x /= m
            log_acc += math.log(m)
            log_norms.append(log_acc)
    tail = float(np.max(np.abs(x)))
    if tail == 0.0:
        raise DynamicsError("state collapsed to zero; Lyapunov undefined")
    lyap = (log_acc + math.log(tail)) / n_steps
    return CocycleReport(lyap, n_steps, tuple(map(float, x)), tuple(log_norms))


def constant_environment(L: IntMatrix, n_steps: int) -> EnvironmentSequence:
    return EnvironmentSequence(tuple([0] * n_steps), (L,))


@dataclass(frozen=True)
class GrowthReport:
    """Growth-rate comparison between the connection walk and related graphs."""

    rho_connection: float
    log_rho_connection: float
    rho_hodge_signless: float
    functional_link_residual: float
    rho_line_graph_adjacency: float


def growth_rates(g: Graph) -> GrowthReport:
    """Descriptive growth rates: log rho(L), the |H| link, and the line graph.

    rho(|H|) = rho(L) - 1/rho(L) is the exact functional link; the line
    graph adjacency radius is reported alongside for comparison, without
    any claimed identity.
    """
    from .graphs import line_graph

    bundle = bundle_for(g)
    rho_l = eig_sym(bundle.connection).top
    rho_habs = eig_sym(bundle.hodge_signless).top
    lg = line_graph(g)
    if lg.edges:
        adj = [[0] * lg.n for _ in range(lg.n)]
        for a, b in lg.edges:
            adj[a][b] = adj[b][a] = 1
        rho_lg = eig_sym(IntMatrix(adj)).top
    else:
        rho_lg = 0.0
    return GrowthReport(
        rho_connection=rho_l,
        log_rho_connection=math.log(rho_l),
        rho_hodge_signless=rho_habs,
        functional_link_residual=abs(rho_habs - (rho_l - 1.0 / rho_l)),
        rho_line_graph_adjacency=rho_lg,
    )
