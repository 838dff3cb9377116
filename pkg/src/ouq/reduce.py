"""Finite reduction: one mass cell per piece/support combination.

Each cell owns a probability weight p and a rescaled location gamma = p*theta.
The reduced program maximizes the sum of perspective values of the objective
pieces subject to the simplex row, perspective-epigraph sums for each
inequality, affine equality rows in gamma, and scaled support membership.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .model import DiscreteDistribution, OUQProblem

__all__ = ["MassCell", "ReducedProgram", "reduce_problem", "recover_distribution",
           "merge_masses"]

DEFAULT_WEIGHT_FLOOR = 1e-7


@dataclass(frozen=True)
class MassCell:
    """One (objective piece, constraint pieces, support component) combination."""

    index: int
    k: int
    ls: tuple[int, ...]
    s: int | None

    @property
    def key(self):
        return (self.k, self.ls, -1 if self.s is None else self.s)


@dataclass(frozen=True)
class ReducedProgram:
    """The finite perspective-form program equivalent to the source problem."""

    problem: OUQProblem
    cells: tuple[MassCell, ...]

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    @property
    def dimension(self) -> int:
        return self.problem.dimension

    # -- direct evaluation (used by consistency tests and recovery) ---------

    def perspective_objective(self, p, gammas) -> float:
        """sum_cells p * f_k(gamma/p), with 0 * f(0/0) = 0."""
        total = 0.0
        for cell, pc, gc in zip(self.cells, p, gammas):
            if pc <= 0.0:
                continue
            piece = self.problem.objective.pieces[cell.k]
            total += pc * piece.evaluate(np.asarray(gc) / pc)
        return total

    def perspective_inequalities(self, p, gammas):
        """Aggregated perspective value of each inequality constraint."""
        vals = np.zeros(len(self.problem.inequalities))
        for cell, pc, gc in zip(self.cells, p, gammas):
            if pc <= 0.0:
                continue
            theta = np.asarray(gc) / pc
            for i, g in enumerate(self.problem.inequalities):
                vals[i] += pc * g.pieces[cell.ls[i]].evaluate(theta)
        return vals

    def equality_residual(self, p, gammas):
        eq = self.problem.equality
        if eq is None:
            return np.zeros(0)
        total_gamma = np.sum(np.asarray(gammas, dtype=float), axis=0)
        return eq.A.T @ total_gamma + eq.b


def reduce_problem(problem: OUQProblem) -> ReducedProgram:
    """Enumerate mass cells in lexicographic (k, l_1..l_p, s) order."""
    issues = problem.validate()
    if issues:
        raise ValueError("cannot reduce an invalid problem: %s" % "; ".join(issues))
    k_range = range(problem.objective.n_pieces)
    l_ranges = [range(g.n_pieces) for g in problem.inequalities]
    if problem.support.n_components >= 1:
        s_range = list(range(problem.support.n_components))
    else:
        s_range = [None]
    cells = []
    for combo in itertools.product(k_range, *l_ranges, s_range):
        k, ls, s = combo[0], tuple(combo[1:-1]), combo[-1]
        cells.append(MassCell(index=len(cells), k=k, ls=ls, s=s))
    return ReducedProgram(problem=problem, cells=tuple(cells))


def recover_distribution(program: ReducedProgram, solution,
                         weight_floor: float = DEFAULT_WEIGHT_FLOOR) -> DiscreteDistribution:
    """Extract (weight, gamma/weight) atoms from an optimal conic solution.

    Cells below the weight floor are dropped (their gamma/p is numerically
    meaningless); surviving weights are renormalized to sum to one.
    """
    if solution.status != "optimal":
        raise ValueError("cannot recover a distribution from status %r"
                         % solution.status)
    p, gammas = solution.cell_values(program.n_cells, program.dimension)
    keep = p >= weight_floor
    if not np.any(keep):
        raise ValueError("degenerate solution: all cell weights below %g"
                         % weight_floor)
    w = p[keep]
    locs = gammas[keep] / w[:, None]
    return DiscreteDistribution(w / w.sum(), locs)


def merge_masses(dist: DiscreteDistribution, i: int, j: int) -> DiscreteDistribution:
    """Replace atoms i and j by their barycenter with the combined weight."""
    if i == j:
        raise ValueError("merge requires two distinct atoms")
    q1, q2 = dist.weights[i], dist.weights[j]
    if q1 + q2 <= 0.0:
        raise ValueError("merged weight is zero")
    phi = (q1 * dist.locations[i] + q2 * dist.locations[j]) / (q1 + q2)
    keep = [k for k in range(dist.n_atoms) if k not in (i, j)]
    weights = np.concatenate([dist.weights[keep], [q1 + q2]])
    locations = np.vstack([dist.locations[keep], phi[None, :]])
    return DiscreteDistribution(weights, locations)
