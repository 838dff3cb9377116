"""Catalog of concave objective pieces and convex constraint pieces.

Every atom supports exact extended-real evaluation (indicators take the
values 1/-inf or 0/+inf) and compiles to a small conic description of its
hypograph (concave atoms) or epigraph (convex atoms).  The conic rows are
written homogeneously in (gamma, p, t, aux) so that fixing the scale p to 1
recovers the plain hypograph/epigraph and general p > 0 yields the
perspective p*f(gamma/p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ConvexSetDesc",
    "ConcaveAtom",
    "ConvexAtom",
    "ConeGroup",
    "ConicBlock",
    "negate_concave",
]

PSD_TOL = 1e-9
MEMBERSHIP_TOL = 1e-9


def _as_vector(a, d=None):
    v = np.atleast_1d(np.asarray(a, dtype=float))
    if v.ndim != 1:
        raise ValueError("expected a vector, got shape %s" % (v.shape,))
    if d is not None and v.shape[0] != d:
        raise ValueError("dimension mismatch: expected %d, got %d" % (d, v.shape[0]))
    return v


def _as_matrix(a):
    m = np.atleast_2d(np.asarray(a, dtype=float))
    if m.ndim != 2:
        raise ValueError("expected a matrix, got shape %s" % (m.shape,))
    return m


def psd_factor(P):
    """Return R with R.T @ R == P for symmetric PSD P (eigenvalue clamped).

    Raises if the smallest eigenvalue is below -PSD_TOL.
    """
    P = _as_matrix(P)
    sym_err = np.max(np.abs(P - P.T)) if P.size else 0.0
    if sym_err > 1e-12:
        raise ValueError("quadratic coefficient matrix is not symmetric")
    w, V = np.linalg.eigh(P)
    if P.size and w.min() < -PSD_TOL:
        raise ValueError("quadratic coefficient matrix is not PSD "
                         "(min eigenvalue %.3e)" % w.min())
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)).T


# ---------------------------------------------------------------------------
# Convex set descriptions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvexSetDesc:
    """A conic-representable convex set: polytope, halfspace, box, or ball."""

    kind: str
    A: np.ndarray | None = None       # polytope rows, m x d
    b: np.ndarray | None = None       # polytope rhs, m
    a: np.ndarray | None = None       # halfspace normal (a.T theta <= bound)
    bound: float = 0.0                # halfspace rhs
    lo: np.ndarray | None = None      # box bounds
    hi: np.ndarray | None = None
    center: np.ndarray | None = None  # ball
    radius: float = 0.0

    @staticmethod
    def polytope(A, b) -> "ConvexSetDesc":
        A = _as_matrix(A)
        b = _as_vector(b, A.shape[0])
        if not np.all(np.isfinite(A)) or not np.all(np.isfinite(b)):
            raise ValueError("polytope rows must be finite")
        return ConvexSetDesc("polytope", A=A, b=b)

    @staticmethod
    def halfspace(a, bound) -> "ConvexSetDesc":
        return ConvexSetDesc("halfspace", a=_as_vector(a), bound=float(bound))

    @staticmethod
    def box(lo, hi) -> "ConvexSetDesc":
        lo, hi = _as_vector(lo), _as_vector(hi)
        if lo.shape != hi.shape:
            raise ValueError("box bounds must have equal length")
        if np.any(lo > hi):
            raise ValueError("box requires lo <= hi componentwise")
        return ConvexSetDesc("box", lo=lo, hi=hi)

    @staticmethod
    def ball(center, radius) -> "ConvexSetDesc":
        if radius < 0:
            raise ValueError("ball radius must be nonnegative")
        return ConvexSetDesc("ball", center=_as_vector(center), radius=float(radius))

    @property
    def dimension(self) -> int:
        if self.kind == "polytope":
            return self.A.shape[1]
        if self.kind == "halfspace":
            return self.a.shape[0]
        if self.kind == "box":
            return self.lo.shape[0]
        return self.center.shape[0]

    def contains(self, theta, tol=MEMBERSHIP_TOL) -> bool:
        return bool(self.contains_many(np.asarray(theta, dtype=float)[None, :], tol)[0])

    def contains_many(self, thetas, tol=MEMBERSHIP_TOL):
        """Vectorized membership for an (n, d) array of points."""
        T = np.asarray(thetas, dtype=float)
        if self.kind == "polytope":
            return np.all(T @ self.A.T <= self.b + tol, axis=1)
        if self.kind == "halfspace":
            return T @ self.a <= self.bound + tol
        if self.kind == "box":
            return np.all((T >= self.lo - tol) & (T <= self.hi + tol), axis=1)
        return np.linalg.norm(T - self.center, axis=1) <= self.radius + tol

    def scaled_membership_groups(self, d):
        """Rows over columns (gamma, p) expressing gamma in p*C.

        Returns a list of (cone_kind, matrix) with matrix columns
        [gamma_0..gamma_{d-1}, p]; polytopes/boxes/halfspaces give nonneg
        rows, balls one second-order cone group.
        """
        if self.dimension != d:
            raise ValueError("set dimension %d does not match %d" % (self.dimension, d))
        groups = []
        if self.kind == "polytope":
            rows = np.hstack([-self.A, self.b[:, None]])  # p*b - A gamma >= 0
            groups.append(("nonneg", rows))
        elif self.kind == "halfspace":
            row = np.concatenate([-self.a, [self.bound]])
            groups.append(("nonneg", row[None, :]))
        elif self.kind == "box":
            eye = np.eye(d)
            lo_rows = np.hstack([eye, -self.lo[:, None]])   # gamma - p*lo >= 0
            hi_rows = np.hstack([-eye, self.hi[:, None]])   # p*hi - gamma >= 0
            groups.append(("nonneg", np.vstack([lo_rows, hi_rows])))
        else:  # ball: ||gamma - p*center|| <= p*radius
            head = np.concatenate([np.zeros(d), [self.radius]])
            tail = np.hstack([np.eye(d), -self.center[:, None]])
            groups.append(("soc", np.vstack([head[None, :], tail])))
        return groups

    def diagnostics(self, d) -> list[str]:
        out = []
        if self.dimension != d:
            out.append("support set dimension %d does not match problem dimension %d"
                       % (self.dimension, d))
        if self.kind == "polytope" and not np.all(np.isfinite(self.A)):
            out.append("polytope rows not finite")
        if self.kind == "box" and np.any(self.lo > self.hi):
            out.append("box has lo > hi")
        if self.kind == "ball" and self.radius < 0:
            out.append("ball has negative radius")
        return out


# ---------------------------------------------------------------------------
# Atoms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcaveAtom:
    """One concave piece f_k of a piecewise-concave objective."""

    kind: str
    a: np.ndarray | None = None
    b: float = 0.0
    P: np.ndarray | None = None
    q: np.ndarray | None = None
    r: float = 0.0
    cap_a: float = 0.0
    cap_b: float = 0.0
    cap_c: float = 0.0
    set_: ConvexSetDesc | None = None

    @staticmethod
    def affine(a, b) -> "ConcaveAtom":
        return ConcaveAtom("affine", a=_as_vector(a), b=float(b))

    @staticmethod
    def constant(r) -> "ConcaveAtom":
        return ConcaveAtom("constant", r=float(r))

    @staticmethod
    def concave_quadratic(P, q, r) -> "ConcaveAtom":
        """-theta' P theta + q' theta + r with P symmetric PSD."""
        P = _as_matrix(P)
        return ConcaveAtom("concave_quadratic", P=P, q=_as_vector(q, P.shape[0]),
                           r=float(r))

    @staticmethod
    def capped_concave_quadratic(a, b, c) -> "ConcaveAtom":
        """Nondecreasing concave hull of a*(theta-b)^2 + c, univariate, a < 0."""
        if a >= 0:
            raise ValueError("capped quadratic requires a < 0")
        return ConcaveAtom("capped_concave_quadratic", cap_a=float(a),
                           cap_b=float(b), cap_c=float(c))

    @staticmethod
    def indicator(set_: ConvexSetDesc) -> "ConcaveAtom":
        """Value 1 on the set, -inf outside."""
        return ConcaveAtom("indicator_concave", set_=set_)

    def dimension_of(self, d: int) -> int:
        """The atom's own dimension, or d when dimension-free (constant)."""
        if self.kind == "affine":
            return self.a.shape[0]
        if self.kind == "concave_quadratic":
            return self.P.shape[0]
        if self.kind == "capped_concave_quadratic":
            return 1
        if self.kind == "indicator_concave":
            return self.set_.dimension
        return d

    def diagnostics(self, d) -> list[str]:
        out = []
        if self.dimension_of(d) != d:
            out.append("%s piece has dimension %d, expected %d"
                       % (self.kind, self.dimension_of(d), d))
        if self.kind == "concave_quadratic":
            w = np.linalg.eigvalsh(self.P)
            if w.min() < -PSD_TOL:
                out.append("concave_quadratic matrix not PSD (min eigenvalue %.3e)"
                           % w.min())
            if np.max(np.abs(self.P - self.P.T)) > 1e-12:
                out.append("concave_quadratic matrix not symmetric")
        if self.kind == "capped_concave_quadratic":
            if self.cap_a >= 0:
                out.append("capped quadratic requires a < 0")
            if d != 1:
                out.append("capped quadratic is univariate only")
        if self.kind == "indicator_concave":
            out.extend(self.set_.diagnostics(d))
        return out

    def evaluate(self, theta) -> float:
        theta = _as_vector(theta, self.dimension_of(len(np.atleast_1d(theta))))
        return float(self.evaluate_many(theta[None, :])[0])

    def evaluate_many(self, thetas):
        T = np.asarray(thetas, dtype=float)
        if T.ndim != 2 or T.shape[1] != self.dimension_of(T.shape[1]):
            raise ValueError("theta batch has wrong dimension for %s atom" % self.kind)
        if self.kind == "affine":
            return T @ self.a + self.b
        if self.kind == "constant":
            return np.full(T.shape[0], self.r)
        if self.kind == "concave_quadratic":
            quad = np.einsum("ni,ij,nj->n", T, self.P, T)
            return -quad + T @ self.q + self.r
        if self.kind == "capped_concave_quadratic":
            x = T[:, 0]
            val = self.cap_a * (x - self.cap_b) ** 2 + self.cap_c
            return np.where(x <= self.cap_b, val, self.cap_c)
        # indicator: 1 on the set, -inf off it
        member = self.set_.contains_many(T)
        return np.where(member, 1.0, -np.inf)

    def hypograph_block(self, d: int) -> "ConicBlock":
        """Conic rows for {(gamma, p, t): t <= p * f(gamma/p)} (closure)."""
        if self.diagnostics(d):
            raise ValueError("atom failed validation: %s" % "; ".join(self.diagnostics(d)))
        cols = d + 2  # gamma, p, t (aux appended beyond)
        if self.kind == "affine":
            row = np.concatenate([self.a, [self.b, -1.0]])
            return ConicBlock(d, 0, [("nonneg", row[None, :])])
        if self.kind == "constant":
            row = np.concatenate([np.zeros(d), [self.r, -1.0]])
            return ConicBlock(d, 0, [("nonneg", row[None, :])])
        if self.kind == "concave_quadratic":
            R = psd_factor(self.P)
            # (q'gamma + r p - t) * p >= ||R gamma||^2 as a rotated cone
            u = np.concatenate([self.q / 2.0, [self.r / 2.0, -0.5]])
            v = np.concatenate([np.zeros(d), [1.0, 0.0]])
            w = np.hstack([R, np.zeros((d, 2))])
            return ConicBlock(d, 0, [("rsoc", np.vstack([u, v, w]))])
        if self.kind == "capped_concave_quadratic":
            # lift through omega <= gamma; quadratic evaluated at omega
            s = math.sqrt(-self.cap_a)
            u = np.array([0.0, self.cap_c / 2.0, -0.5, 0.0])
            v = np.array([0.0, 1.0, 0.0, 0.0])
            w = np.array([0.0, -s * self.cap_b, 0.0, s])
            mono = np.array([1.0, 0.0, 0.0, -1.0])  # gamma - omega >= 0

            def witness(gamma, p, t):
                return np.array([min(gamma[0], self.cap_b * p)])

            return ConicBlock(d, 1,
                              [("rsoc", np.vstack([u, v, w])), ("nonneg", mono[None, :])],
                              witness=witness)
        # indicator: t <= p plus scaled membership
        cap = np.concatenate([np.zeros(d), [1.0, -1.0]])  # p - t >= 0
        groups = [("nonneg", cap[None, :])]
        for kind, rows in self.set_.scaled_membership_groups(d):
            groups.append((kind, np.hstack([rows, np.zeros((rows.shape[0], 1))])))
        return ConicBlock(d, 0, groups)


@dataclass(frozen=True)
class ConvexAtom:
    """One convex piece g_l of a piecewise-convex information constraint."""

    kind: str
    a: np.ndarray | None = None
    b: float = 0.0
    P: np.ndarray | None = None
    q: np.ndarray | None = None
    r: float = 0.0
    order: int = 0
    index: int = 0
    offset: float = 0.0
    cap_a: float = 0.0
    cap_b: float = 0.0
    cap_c: float = 0.0
    set_: ConvexSetDesc | None = None

    @staticmethod
    def affine(a, b) -> "ConvexAtom":
        return ConvexAtom("affine", a=_as_vector(a), b=float(b))

    @staticmethod
    def constant(r) -> "ConvexAtom":
        return ConvexAtom("constant", r=float(r))

    @staticmethod
    def convex_quadratic(P, q, r) -> "ConvexAtom":
        """theta' P theta + q' theta + r with P symmetric PSD."""
        P = _as_matrix(P)
        return ConvexAtom("convex_quadratic", P=P, q=_as_vector(q, P.shape[0]),
                          r=float(r))

    @staticmethod
    def even_power(order, index=0, offset=0.0) -> "ConvexAtom":
        """theta_i^order + offset for even order >= 2."""
        order = int(order)
        if order < 2 or order % 2 != 0:
            raise ValueError("order must be even and >= 2")
        return ConvexAtom("even_power", order=order, index=int(index),
                          offset=float(offset))

    @staticmethod
    def abs(index=0, offset=0.0) -> "ConvexAtom":
        """|theta_i| + offset."""
        return ConvexAtom("abs", index=int(index), offset=float(offset))

    @staticmethod
    def indicator(set_: ConvexSetDesc, offset=0.0) -> "ConvexAtom":
        """Value offset on the set, +inf outside."""
        return ConvexAtom("indicator_convex", set_=set_, offset=float(offset))

    @staticmethod
    def capped_convex_quadratic(a, b, c) -> "ConvexAtom":
        """Nonincreasing convex hull of a*(theta-b)^2 + c, univariate, a > 0."""
        if a <= 0:
            raise ValueError("capped convex quadratic requires a > 0")
        return ConvexAtom("capped_convex_quadratic", cap_a=float(a),
                          cap_b=float(b), cap_c=float(c))

    def dimension_of(self, d: int) -> int:
        if self.kind == "affine":
            return self.a.shape[0]
        if self.kind == "convex_quadratic":
            return self.P.shape[0]
        if self.kind == "indicator_convex":
            return self.set_.dimension
        if self.kind == "capped_convex_quadratic":
            return 1
        return d

    def diagnostics(self, d) -> list[str]:
        out = []
        if self.dimension_of(d) != d:
            out.append("%s piece has dimension %d, expected %d"
                       % (self.kind, self.dimension_of(d), d))
        if self.kind == "convex_quadratic":
            w = np.linalg.eigvalsh(self.P)
            if w.min() < -PSD_TOL:
                out.append("convex_quadratic matrix not PSD (min eigenvalue %.3e)"
                           % w.min())
        if self.kind in ("even_power", "abs") and self.index >= d:
            out.append("%s coordinate index %d out of range" % (self.kind, self.index))
        if self.kind == "even_power" and (self.order < 2 or self.order % 2):
            out.append("order must be even and >= 2")
        if self.kind == "capped_convex_quadratic":
            if self.cap_a <= 0:
                out.append("capped convex quadratic requires a > 0")
            if d != 1:
                out.append("capped convex quadratic is univariate only")
        if self.kind == "indicator_convex":
            out.extend(self.set_.diagnostics(d))
        return out

    def evaluate(self, theta) -> float:
        theta = _as_vector(theta, self.dimension_of(len(np.atleast_1d(theta))))
        return float(self.evaluate_many(theta[None, :])[0])

    def evaluate_many(self, thetas):
        T = np.asarray(thetas, dtype=float)
        if T.ndim != 2 or T.shape[1] != self.dimension_of(T.shape[1]):
            raise ValueError("theta batch has wrong dimension for %s atom" % self.kind)
        if self.kind == "affine":
            return T @ self.a + self.b
        if self.kind == "constant":
            return np.full(T.shape[0], self.r)
        if self.kind == "convex_quadratic":
            quad = np.einsum("ni,ij,nj->n", T, self.P, T)
            return quad + T @ self.q + self.r
        if self.kind == "even_power":
            return T[:, self.index] ** self.order + self.offset
        if self.kind == "abs":
            return np.abs(T[:, self.index]) + self.offset
        if self.kind == "capped_convex_quadratic":
            x = T[:, 0]
            val = self.cap_a * (x - self.cap_b) ** 2 + self.cap_c
            return np.where(x <= self.cap_b, val, self.cap_c)
        member = self.set_.contains_many(T)
        return np.where(member, self.offset, np.inf)

    def epigraph_block(self, d: int) -> "ConicBlock":
        """Conic rows for {(gamma, p, t): t >= p * g(gamma/p)} (closure)."""
        if self.diagnostics(d):
            raise ValueError("atom failed validation: %s" % "; ".join(self.diagnostics(d)))
        if self.kind == "affine":
            row = np.concatenate([-self.a, [-self.b, 1.0]])
            return ConicBlock(d, 0, [("nonneg", row[None, :])])
        if self.kind == "constant":
            row = np.concatenate([np.zeros(d), [-self.r, 1.0]])
            return ConicBlock(d, 0, [("nonneg", row[None, :])])
        if self.kind == "convex_quadratic":
            R = psd_factor(self.P)
            u = np.concatenate([-self.q / 2.0, [-self.r / 2.0, 0.5]])
            v = np.concatenate([np.zeros(d), [1.0, 0.0]])
            w = np.hstack([R, np.zeros((d, 2))])
            return ConicBlock(d, 0, [("rsoc", np.vstack([u, v, w]))])
        if self.kind == "abs":
            # t - offset*p >= +/- gamma_i
            pos = np.zeros(d + 2)
            pos[self.index] = -1.0
            pos[d] = -self.offset
            pos[d + 1] = 1.0
            neg = pos.copy()
            neg[self.index] = 1.0
            return ConicBlock(d, 0, [("nonneg", np.vstack([pos, neg]))])
        if self.kind == "even_power":
            return self._even_power_block(d)
        if self.kind == "capped_convex_quadratic":
            s = math.sqrt(self.cap_a)
            u = np.array([0.0, -self.cap_c / 2.0, 0.5, 0.0])
            v = np.array([0.0, 1.0, 0.0, 0.0])
            w = np.array([0.0, -s * self.cap_b, 0.0, s])
            mono = np.array([-1.0, 0.0, 0.0, 1.0])  # omega - gamma >= 0

            def witness(gamma, p, t):
                return np.array([max(gamma[0], self.cap_b * p)])

            return ConicBlock(d, 1,
                              [("rsoc", np.vstack([u, v, w])), ("nonneg", mono[None, :])],
                              witness=witness)
        # indicator: t >= offset*p plus scaled membership
        cap = np.concatenate([np.zeros(d), [-self.offset, 1.0]])
        groups = [("nonneg", cap[None, :])]
        for kind, rows in self.set_.scaled_membership_groups(d):
            groups.append((kind, np.hstack([rows, np.zeros((rows.shape[0], 1))])))
        return ConicBlock(d, 0, groups)

    def _even_power_block(self, d: int) -> "ConicBlock":
        """Rotated-cone tower for t - offset*p >= gamma_i^{2q} / p^{2q-1}."""
        i, off = self.index, self.offset
        half = self.order // 2

        def gcol(c, n_aux):
            row = np.zeros(d + 2 + n_aux)
            row[i] = c
            return row

        def pcol(c, n_aux):
            row = np.zeros(d + 2 + n_aux)
            row[d] = c
            return row

        def tcol(c, n_aux):
            row = np.zeros(d + 2 + n_aux)
            row[d + 1] = c
            row[d] = -off * c  # fold the offset into every t occurrence
            return row

        def acol(j, c, n_aux):
            row = np.zeros(d + 2 + n_aux)
            row[d + 2 + j] = c
            return row

        if half == 1:
            u = tcol(0.5, 0)
            v = pcol(1.0, 0)
            w = gcol(1.0, 0)
            return ConicBlock(d, 0, [("rsoc", np.vstack([u, v, w]))])

        if half & (half - 1) == 0:
            # pure squaring tower: aux t_1..t_{m-1}, last level bounded by t
            m = half.bit_length()  # log2(order) steps
            n_aux = m - 1
            groups = [("rsoc", np.vstack([acol(0, 0.5, n_aux), pcol(1.0, n_aux),
                                          gcol(1.0, n_aux)]))]
            for j in range(1, m):
                head = tcol(0.5, n_aux) if j == m - 1 else acol(j, 0.5, n_aux)
                groups.append(("rsoc", np.vstack([head, pcol(1.0, n_aux),
                                                  acol(j - 1, 1.0, n_aux)])))

            def witness(gamma, p, t):
                vals = []
                cur = gamma[i] ** 2 / p if p > 0 else 0.0
                vals.append(cur)
                for _ in range(1, m - 1):
                    cur = cur ** 2 / p if p > 0 else 0.0
                    vals.append(cur)
                return np.array(vals)

            return ConicBlock(d, n_aux, groups, witness=witness)

        # general even order: y >= gamma^2/p, then y^q <= T p^{q-1} via a
        # padded geometric-mean tree on leaves [T, p x (q-1), y x (N-q)]
        n_leaves = 1 << (half - 1).bit_length()
        pad = n_leaves - half

        # internal tree nodes except the root (the root value is y itself)
        n_aux = 1 + (n_leaves - 2)  # y plus non-root internal nodes

        groups = [("rsoc", np.vstack([acol(0, 0.5, n_aux), pcol(1.0, n_aux),
                                      gcol(1.0, n_aux)]))]
        next_aux = 1
        node_exprs = ([tcol(1.0, n_aux)]
                      + [pcol(1.0, n_aux) for _ in range(half - 1)]
                      + [acol(0, 1.0, n_aux) for _ in range(pad)])
        while len(node_exprs) > 2:
            merged = []
            for k in range(0, len(node_exprs), 2):
                u_expr = node_exprs[k] * 0.5
                v_expr = node_exprs[k + 1]
                w_expr = acol(next_aux, 1.0, n_aux)
                groups.append(("rsoc", np.vstack([u_expr, v_expr, w_expr])))
                merged.append(acol(next_aux, 1.0, n_aux))
                next_aux += 1
            node_exprs = merged
        groups.append(("rsoc", np.vstack([node_exprs[0] * 0.5, node_exprs[1],
                                          acol(0, 1.0, n_aux)])))

        def witness(gamma, p, t):
            y = gamma[i] ** 2 / p if p > 0 else 0.0
            vals = {0: y}
            T = t - off * p
            leaf_vals = [max(T, 0.0)] + [p] * (half - 1) + [y] * pad
            cur, idx = leaf_vals, 1
            while len(cur) > 2:
                nxt = []
                for k in range(0, len(cur), 2):
                    node = math.sqrt(max(cur[k] * cur[k + 1], 0.0))
                    vals[idx] = node
                    nxt.append(node)
                    idx += 1
                cur = nxt
            return np.array([vals[j] for j in range(n_aux)])

        return ConicBlock(d, n_aux, groups, witness=witness)


# ---------------------------------------------------------------------------
# Conic blocks
# ---------------------------------------------------------------------------

ConeGroup = tuple[str, np.ndarray]


def _cone_member(kind, vals, tol):
    if kind == "nonneg":
        return bool(np.all(vals >= -tol))
    if kind == "zero":
        return bool(np.all(np.abs(vals) <= tol))
    if kind == "soc":
        return vals[0] >= np.linalg.norm(vals[1:]) - tol
    # rsoc: 2uv >= ||w||^2, u, v >= 0
    u, v, w = vals[0], vals[1], vals[2:]
    return u >= -tol and v >= -tol and 2.0 * u * v >= w @ w - tol


@dataclass(frozen=True)
class ConicBlock:
    """Homogeneous conic rows over columns [gamma (d), p, t, aux (n_aux)].

    With the scale column fixed to p=1 the feasible (gamma, t) slice equals
    the atom's hypograph or epigraph; general p > 0 gives the perspective.
    """

    d: int
    n_aux: int
    groups: list[ConeGroup]
    witness: object = field(default=None, compare=False)

    @property
    def n_cols(self) -> int:
        return self.d + 2 + self.n_aux

    def aux_values(self, gamma, p, t):
        if self.n_aux == 0:
            return np.zeros(0)
        return np.asarray(self.witness(np.asarray(gamma, dtype=float), float(p),
                                       float(t)), dtype=float)

    def feasible(self, gamma, p, t, tol=1e-8) -> bool:
        """Membership of (gamma, p, t) with the canonical auxiliary witness."""
        gamma = _as_vector(gamma, self.d)
        x = np.concatenate([gamma, [float(p), float(t)], self.aux_values(gamma, p, t)])
        for kind, rows in self.groups:
            if not _cone_member(kind, rows @ x, tol):
                return False
        return True


def negate_concave(atom: ConcaveAtom) -> ConvexAtom:
    """-f for a concave atom f, expressed in the convex catalog."""
    if atom.kind == "affine":
        return ConvexAtom.affine(-atom.a, -atom.b)
    if atom.kind == "constant":
        return ConvexAtom.constant(-atom.r)
    if atom.kind == "concave_quadratic":
        return ConvexAtom.convex_quadratic(atom.P, -atom.q, -atom.r)
    if atom.kind == "capped_concave_quadratic":
        return ConvexAtom.capped_convex_quadratic(-atom.cap_a, atom.cap_b, -atom.cap_c)
    raise ValueError("cannot negate %s atom into the convex catalog" % atom.kind)
