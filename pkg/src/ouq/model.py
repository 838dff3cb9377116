"""Problem container: piecewise objective, information constraints, support.

The problem asks for the largest expectation of a piecewise-concave function
over all probability distributions that satisfy expectation inequalities
(piecewise-convex integrands), affine expectation equalities, and a support
restriction to a finite union of convex sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .atoms import ConcaveAtom, ConvexAtom, ConvexSetDesc

__all__ = [
    "PiecewiseConcave",
    "PiecewiseConvex",
    "AffineEquality",
    "SupportDesc",
    "OUQProblem",
    "DiscreteDistribution",
]

WEIGHT_SUM_TOL = 1e-9
SUPPORT_WEIGHT_FLOOR = 1e-9


@dataclass(frozen=True)
class PiecewiseConcave:
    """Pointwise maximum of concave pieces."""

    pieces: tuple[ConcaveAtom, ...]

    def __init__(self, pieces):
        object.__setattr__(self, "pieces", tuple(pieces))

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    def evaluate(self, theta) -> float:
        return max(p.evaluate(theta) for p in self.pieces)

    def evaluate_many(self, thetas):
        vals = np.stack([p.evaluate_many(thetas) for p in self.pieces])
        return vals.max(axis=0)

    def argmax_piece(self, theta) -> int:
        vals = [p.evaluate(theta) for p in self.pieces]
        return int(np.argmax(vals))


@dataclass(frozen=True)
class PiecewiseConvex:
    """Pointwise minimum of convex pieces; rhs shifts live inside the pieces."""

    pieces: tuple[ConvexAtom, ...]

    def __init__(self, pieces):
        object.__setattr__(self, "pieces", tuple(pieces))

    @property
    def n_pieces(self) -> int:
        return len(self.pieces)

    def evaluate(self, theta) -> float:
        return min(p.evaluate(theta) for p in self.pieces)

    def evaluate_many(self, thetas):
        vals = np.stack([p.evaluate_many(thetas) for p in self.pieces])
        return vals.min(axis=0)


@dataclass(frozen=True)
class AffineEquality:
    """h(theta) = A' theta + b, constrained to have zero expectation."""

    A: np.ndarray  # d x q
    b: np.ndarray  # q

    def __init__(self, A, b):
        A = np.atleast_2d(np.asarray(A, dtype=float))
        b = np.atleast_1d(np.asarray(b, dtype=float))
        if A.shape[1] != b.shape[0]:
            raise ValueError("equality: A has %d columns but b has length %d"
                             % (A.shape[1], b.shape[0]))
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def n_constraints(self) -> int:
        return self.b.shape[0]

    def evaluate_many(self, thetas):
        return np.asarray(thetas, dtype=float) @ self.A + self.b


@dataclass(frozen=True)
class SupportDesc:
    """Support as a finite union of convex sets; empty list means all of R^d."""

    sets: tuple[ConvexSetDesc, ...] = ()

    def __init__(self, sets=()):
        object.__setattr__(self, "sets", tuple(sets))

    @property
    def n_components(self) -> int:
        return len(self.sets)

    def contains(self, theta, tol=1e-9) -> bool:
        if not self.sets:
            return True
        return any(s.contains(theta, tol) for s in self.sets)

    def contains_many(self, thetas, tol=1e-9):
        T = np.asarray(thetas, dtype=float)
        if not self.sets:
            return np.ones(T.shape[0], dtype=bool)
        member = np.zeros(T.shape[0], dtype=bool)
        for s in self.sets:
            member |= s.contains_many(T, tol)
        return member


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finite mixture of point masses (weight, location)."""

    weights: np.ndarray
    locations: np.ndarray  # n x d

    def __init__(self, weights, locations):
        w = np.atleast_1d(np.asarray(weights, dtype=float))
        loc = np.atleast_2d(np.asarray(locations, dtype=float))
        if loc.shape[0] != w.shape[0]:
            raise ValueError("distribution has %d weights but %d locations"
                             % (w.shape[0], loc.shape[0]))
        if np.any(w < -WEIGHT_SUM_TOL):
            raise ValueError("weights must be nonnegative")
        if abs(w.sum() - 1.0) > 1e-6:
            raise ValueError("weights sum to %.12f, expected 1" % w.sum())
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "locations", loc)

    @property
    def n_atoms(self) -> int:
        return self.weights.shape[0]

    def atoms(self):
        return list(zip(self.weights, self.locations))


@dataclass(frozen=True)
class OUQProblem:
    """Worst-case expectation problem over partially known distributions."""

    dimension: int
    objective: PiecewiseConcave
    inequalities: tuple[PiecewiseConvex, ...] = ()
    equality: AffineEquality | None = None
    support: SupportDesc = field(default_factory=SupportDesc)

    def __init__(self, dimension, objective, inequalities=(), equality=None,
                 support=None):
        object.__setattr__(self, "dimension", int(dimension))
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "inequalities", tuple(inequalities))
        object.__setattr__(self, "equality", equality)
        object.__setattr__(self, "support", support if support is not None
                           else SupportDesc())

    # -- structure ---------------------------------------------------------

    @property
    def piece_counts(self) -> list[int]:
        return [g.n_pieces for g in self.inequalities]

    def validate(self) -> list[str]:
        """Diagnostics for every violated invariant; empty when well-formed."""
        d = self.dimension
        out = []
        if d < 1:
            out.append("dimension must be >= 1")
        if self.objective.n_pieces == 0:
            out.append("objective has no pieces")
        for k, piece in enumerate(self.objective.pieces):
            for msg in piece.diagnostics(d):
                out.append("objective piece %d: %s" % (k, msg))
        for i, g in enumerate(self.inequalities):
            if g.n_pieces == 0:
                out.append("inequality %d has no pieces" % i)
            for l, piece in enumerate(g.pieces):
                for msg in piece.diagnostics(d):
                    out.append("inequality %d piece %d: %s" % (i, l, msg))
        if self.equality is not None and self.equality.A.shape[0] != d:
            out.append("equality matrix has %d rows, expected %d"
                       % (self.equality.A.shape[0], d))
        for s, comp in enumerate(self.support.sets):
            for msg in comp.diagnostics(d):
                out.append("support component %d: %s" % (s, msg))
        return out

    def cell_count(self) -> int:
        """Number of point masses in the equivalent finite program."""
        n = self.objective.n_pieces
        for g in self.inequalities:
            n *= g.n_pieces
        if self.support.n_components >= 1:
            n *= self.support.n_components
        return n

    # -- evaluation --------------------------------------------------------

    def evaluate_expectation(self, dist: DiscreteDistribution):
        """Objective value and constraint residuals of a discrete distribution.

        Zero-weight atoms contribute nothing, including to support violations
        (the 0 * inf convention for indicator pieces).
        """
        w = dist.weights
        if abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError("weights sum to %.12f, outside tolerance" % w.sum())
        locs = dist.locations
        if locs.shape[1] != self.dimension:
            raise ValueError("distribution dimension %d, expected %d"
                             % (locs.shape[1], self.dimension))
        live = w > 0.0
        objective = 0.0
        if np.any(live):
            fvals = self.objective.evaluate_many(locs[live])
            objective = float(np.dot(w[live], fvals))
        ineq = np.zeros(len(self.inequalities))
        for i, g in enumerate(self.inequalities):
            if np.any(live):
                gv = g.evaluate_many(locs[live])
                ineq[i] = float(np.dot(w[live], gv))
        if self.equality is not None:
            mean = w @ locs
            eq = self.equality.A.T @ mean + self.equality.b
        else:
            eq = np.zeros(0)
        heavy = w > SUPPORT_WEIGHT_FLOOR
        violations = 0
        if np.any(heavy) and self.support.n_components:
            inside = self.support.contains_many(locs[heavy])
            violations = int(np.sum(~inside))
        return objective, {
            "inequalities": ineq,
            "equality": eq,
            "support_violations": violations,
        }

    def digest(self) -> dict:
        return {
            "dimension": self.dimension,
            "objective_pieces": self.objective.n_pieces,
            "inequality_pieces": self.piece_counts,
            "support_components": self.support.n_components,
            "cell_count": self.cell_count(),
        }
