"""Antipodes of semi-Hopf categories and the weak Hopf flattening.

The antipode equations are linear in the entries of ``S_xy``, so existence
is decided by one linear system per pair of objects.  When the system is
consistent its homogeneous part has zero kernel (an antipode is unique),
which the solver reports rather than assumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Mapping

import numpy as np

from .coalg import Violation
from .kernel import ExactMatrix, FieldSpec, inconsistency_certificate, kernel_basis, solve
from .vcat import SemiHopfCategory, check_semihopf, check_semihopf_morphism, comultiplicativity_defect, variant
from .vgraph import VGraphMorphism

__all__ = [
    "Antipode",
    "AntipodeResult",
    "antipode_system",
    "solve_antipode",
    "check_antipode_properties",
    "antipode_power",
    "WeakBialgebraData",
    "WeakFlattening",
    "flatten_weak_hopf",
    "WEAK_AXIOMS_HEADER",
]


@dataclass(frozen=True)
class Antipode:
    """``components[(x, y)]`` is ``S_xy: A_xy -> A_yx``."""

    components: Mapping[tuple[str, str], ExactMatrix]

    def __getitem__(self, pair: tuple[str, str]) -> ExactMatrix:
        return self.components[pair]

    def __eq__(self, other):
        if not isinstance(other, Antipode):
            return NotImplemented
        return set(self.components) == set(other.components) and all(
            self.components[p] == other.components[p] for p in self.components
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass
class AntipodeResult:
    """Outcome of :func:`solve_antipode`.

    ``certificates[(x, y)]`` holds a row vector ``c`` with ``c M = 0`` and
    ``c b != 0`` for the inconsistent system ``M s = b`` at that pair.
    ``kernel_dims`` records the dimension of the homogeneous solution space.
    """

    antipode: Antipode | None
    certificates: dict = dc_field(default_factory=dict)
    kernel_dims: dict = dc_field(default_factory=dict)

    @property
    def exists(self) -> bool:
        return self.antipode is not None

    @property
    def unique(self) -> bool:
        return all(k == 0 for k in self.kernel_dims.values())


def _reduce(field: FieldSpec, a: np.ndarray) -> ExactMatrix:
    if field.p is not None:
        a = a % field.p
    return ExactMatrix(field, a.astype(object), _trusted=True)


def antipode_system(A: SemiHopfCategory, x: str, y: str) -> tuple[ExactMatrix, ExactMatrix]:
    """The linear system ``M s = b`` for ``S_xy``, with ``s[r * dim A_xy + c] = S_xy[r, c]``.

    Rows come first from ``m_xyx (id (x) S) delta = j_x eps`` and then from
    ``m_yxy (S (x) id) delta = j_y eps``, each indexed ``t * dim A_xy + b``.
    """
    f = A.field
    n, k = A.dim(x, y), A.dim(y, x)
    dxx, dyy = A.dim(x, x), A.dim(y, y)
    D = A.delta(x, y).array.reshape(n, n, n)  # [p, q, b]
    M1 = A.m(x, y, x).array.reshape(dxx, n, k)  # [t, p, r]
    M2 = A.m(y, x, y).array.reshape(dyy, k, n)  # [t, r, q]
    C1 = np.tensordot(M1, D, axes=([1], [0])).transpose(0, 3, 1, 2)  # [t, b, r, q]
    C2 = np.tensordot(M2, D, axes=([2], [1])).transpose(0, 3, 1, 2)  # [t, b, r, p]
    rows = np.concatenate([C1.reshape(dxx * n, k * n), C2.reshape(dyy * n, k * n)])
    eps = A.eps(x, y).array[0]
    rhs = np.concatenate(
        [np.outer(A.j(x).array[:, 0], eps).reshape(-1), np.outer(A.j(y).array[:, 0], eps).reshape(-1)]
    )
    return _reduce(f, rows), _reduce(f, rhs.reshape(-1, 1))


def solve_antipode(A: SemiHopfCategory, validate: bool = True) -> AntipodeResult:
    """Solve for ``S`` pair by pair; raises ``ValueError`` when A is not semi-Hopf."""
    if validate:
        bad = check_semihopf(A)
        if bad:
            raise ValueError(f"not a semi-Hopf category: {bad[0]}")
    f = A.field
    comps, certs, kdims = {}, {}, {}
    for x, y in A.graph.pairs():
        n, k = A.dim(x, y), A.dim(y, x)
        if n == 0:
            comps[(x, y)] = ExactMatrix.zeros(f, k, 0)
            kdims[(x, y)] = 0
            continue
        M, b = antipode_system(A, x, y)
        kdims[(x, y)] = len(kernel_basis(M))
        sol = solve(M, b)
        if sol is None:
            certs[(x, y)] = inconsistency_certificate(M, b)
            continue
        s = sol.particular.col(0)
        comps[(x, y)] = ExactMatrix.from_rows(f, [s[r * n : (r + 1) * n] for r in range(k)], n)
    antipode = Antipode(comps) if not certs else None
    return AntipodeResult(antipode, certs, kdims)


def antipode_power(A: SemiHopfCategory, S: Antipode, x: str, y: str, i: int) -> ExactMatrix:
    """``S^i`` starting at ``A_xy``: lands in ``A_xy`` for even i and ``A_yx`` for odd i."""
    out = ExactMatrix.identity(A.field, A.dim(x, y))
    a, b = x, y
    for _ in range(i):
        out = S[(a, b)] @ out
        a, b = b, a
    return out


def _equation_defects(A: SemiHopfCategory, S: Antipode) -> list[Violation]:
    f = A.field
    out = []
    for x, y in A.graph.pairs():
        n, k = A.dim(x, y), A.dim(y, x)
        if n == 0:
            continue
        if S[(x, y)].shape != (k, n):
            out.append(Violation("antipode shape", (x, y)))
            continue
        M, b = antipode_system(A, x, y)
        s = [S[(x, y)][r, c] for r in range(k) for c in range(n)]
        lhs = M @ ExactMatrix.column(f, s)
        half = A.dim(x, x) * n
        for i in range(lhs.rows):
            if lhs[i, 0] != b[i, 0]:
                name = "antipode left equation" if i < half else "antipode right equation"
                out.append(Violation(name, (x, y), (i if i < half else i - half) % n))
                break
    return out


def check_antipode_properties(A: SemiHopfCategory, S: Antipode) -> list[Violation]:
    """Antipode equations, anti-functoriality and the anti-coalgebra property.

    The last two together say that ``S`` is a semi-Hopf morphism from ``A``
    to its opposite-co-opposite, which is how they are checked.
    """
    for x, y in A.graph.pairs():
        if S[(x, y)].shape != (A.dim(y, x), A.dim(x, y)):
            raise ValueError(f"S at {(x, y)} has shape {S[(x, y)].shape}")
    out = _equation_defects(A, S)
    target = variant(A, "opcop")
    F = VGraphMorphism(A.graph, target.graph, {x: x for x in A.objects}, dict(S.components), A.field)
    rename = {
        "functoriality": "anti-functoriality",
        "unit preservation": "antipode fixes units",
        "coalgebra map": "anti-coalgebra map",
    }
    for v in check_semihopf_morphism(F, A, target):
        out.append(v._replace(axiom=rename.get(v.axiom, v.axiom)))
    return out


# -- weak Hopf flattening ----------------------------------------------------

WEAK_AXIOMS_HEADER = (
    "curated weak Hopf axiom subset: associativity, unit, coassociativity, counit, "
    "comultiplicativity, weak unit, weak counit, antipode identities"
)


@dataclass(frozen=True)
class WeakBialgebraData:
    """Direct sum of all homs with block multiplication and block-diagonal comultiplication."""

    field: FieldSpec
    blocks: tuple  # ((x, y), offset, dim) in basis order
    mult: ExactMatrix  # N x N^2
    unit: ExactMatrix  # N x 1
    delta: ExactMatrix  # N^2 x N
    epsilon: ExactMatrix  # 1 x N
    antipode: ExactMatrix | None  # N x N

    @property
    def dim(self) -> int:
        return self.unit.rows


@dataclass
class WeakFlattening:
    data: WeakBialgebraData
    report: dict  # axiom -> bool
    header: str = WEAK_AXIOMS_HEADER
    delta_one_trivial: bool = True
    degenerate: bool = False

    @property
    def ok(self) -> bool:
        return all(self.report.values())


def _flatten(A: SemiHopfCategory, S: Antipode | None) -> WeakBialgebraData:
    f = A.field
    blocks, off = [], {}
    N = 0
    for p in A.graph.pairs():
        off[p] = N
        blocks.append((p, N, A.dim(*p)))
        N += A.dim(*p)
    mu = np.full((N, N * N), f.zero, dtype=object)
    for x, y, z in product(A.objects, repeat=3):
        a, b, c = A.dim(x, y), A.dim(y, z), A.dim(x, z)
        if a * b * c == 0:
            continue
        m = A.m(x, y, z).array
        for u in range(a):
            for v in range(b):
                mu[off[(x, z)] : off[(x, z)] + c, (off[(x, y)] + u) * N + off[(y, z)] + v] = m[:, u * b + v]
    one = np.full((N, 1), f.zero, dtype=object)
    for x in A.objects:
        one[off[(x, x)] : off[(x, x)] + A.dim(x, x), 0] = A.j(x).array[:, 0]
    delta = np.full((N * N, N), f.zero, dtype=object)
    eps = np.full((1, N), f.zero, dtype=object)
    anti = np.full((N, N), f.zero, dtype=object) if S is not None else None
    for (x, y), o, d in blocks:
        D = A.delta(x, y).array
        for u in range(d):
            for p in range(d):
                for q in range(d):
                    delta[(o + p) * N + o + q, o + u] = D[p * d + q, u]
        eps[0, o : o + d] = A.eps(x, y).array[0]
        if anti is not None and d:
            oy = off[(y, x)]
            anti[oy : oy + A.dim(y, x), o : o + d] = S[(x, y)].array
    wrap = lambda a: ExactMatrix(f, a, _trusted=True)  # noqa: E731
    return WeakBialgebraData(
        f, tuple(blocks), wrap(mu), wrap(one), wrap(delta), wrap(eps), wrap(anti) if anti is not None else None
    )


def _same(f: FieldSpec, a, b) -> bool:
    d = np.asarray(a, dtype=object) - np.asarray(b, dtype=object)
    if f.p is not None:
        d = d % f.p
    return not any(v != 0 for v in d.ravel())


def flatten_weak_hopf(A: SemiHopfCategory, S: Antipode | None = None) -> WeakFlattening:
    """Flatten a finite (semi-)Hopf category to one weak bialgebra and test it.

    The report covers the axioms listed in :data:`WEAK_AXIOMS_HEADER`;
    the antipode identities are only tested when ``S`` is given.
    """
    W = _flatten(A, S)
    f, N = W.field, W.dim
    if N == 0:
        return WeakFlattening(W, {}, delta_one_trivial=True, degenerate=True)
    mu3 = W.mult.array.reshape(N, N, N)  # [t, u, v]
    Dl = W.delta.array.reshape(N, N, N)  # [p, q, u]
    eps = W.epsilon.array[0]
    one = W.unit.array[:, 0]
    rep = {}

    # (e_u e_v) e_w and e_u (e_v e_w)
    left = np.tensordot(mu3, mu3, axes=([0], [1]))  # [u, v, t, w] : sum_s mu[s,u,v] mu[t,s,w]
    right = np.tensordot(mu3, mu3, axes=([2], [0]))  # [t, u, v, w] : sum_s mu[t,u,s] mu[s,v,w]
    rep["associativity"] = _same(f, left.transpose(2, 0, 1, 3), right)
    rep["unit"] = _same(f, np.tensordot(mu3, one, axes=([1], [0])), np.eye(N, dtype=int)) and _same(
        f, np.tensordot(mu3, one, axes=([2], [0])), np.eye(N, dtype=int)
    )
    co_l = np.tensordot(Dl, Dl, axes=([2], [0]))  # [p', q', q, u]: (Delta (x) id) Delta
    co_r = np.tensordot(Dl, Dl, axes=([2], [1]))  # [q, r, p, u]: (id (x) Delta) Delta
    rep["coassociativity"] = _same(f, co_l, co_r.transpose(2, 0, 1, 3))
    rep["counit"] = _same(f, np.tensordot(eps, Dl, axes=([0], [0])), np.eye(N, dtype=int)) and _same(
        f, np.tensordot(eps, Dl, axes=([0], [1])), np.eye(N, dtype=int)
    )
    rep["comultiplicativity"] = comultiplicativity_defect(f, W.mult, W.delta, W.delta, W.delta) is None

    D1 = np.tensordot(Dl, one, axes=([2], [0]))  # Delta(1) as N x N
    eye = np.zeros((N, N), dtype=object)
    for i in range(N):
        eye[i, i] = f.one
    trivial = _same(f, D1, np.outer(one, one))
    delta2_one = np.tensordot(Dl, D1, axes=([2], [0]))  # [p, b, s]
    prod1 = np.stack([D1 @ mu3[b] @ D1 for b in range(N)], axis=1)
    prod2 = np.stack([D1 @ mu3[b].T @ D1 for b in range(N)], axis=1)
    rep["weak unit"] = _same(f, delta2_one, prod1) and _same(f, delta2_one, prod2)
    E2 = np.tensordot(eps, mu3, axes=([0], [0]))  # [a, b] = eps(e_a e_b)
    E3 = np.tensordot(mu3, E2, axes=([0], [0]))  # [x, y, z] = eps(e_x e_y e_z)
    ok = True
    for y in range(N):
        Dy = Dl[:, :, y]
        if not (_same(f, E3[:, y, :], E2 @ Dy @ E2) and _same(f, E3[:, y, :], E2 @ Dy.T @ E2)):
            ok = False
            break
    rep["weak counit"] = ok

    if W.antipode is not None:
        Sm = W.antipode.array
        Mu = W.mult.array
        eps_t = D1.T @ E2  # [q, a]
        eps_s = D1 @ E2.T  # [p, a]
        a1S = np.stack([Mu @ (Dl[:, :, a] @ Sm.T).reshape(-1) for a in range(N)], axis=1)
        Sa2 = np.stack([Mu @ (Sm @ Dl[:, :, a]).reshape(-1) for a in range(N)], axis=1)
        rep["antipode target identity"] = _same(f, a1S, eps_t)
        rep["antipode source identity"] = _same(f, Sa2, eps_s)
        SaS = np.stack([Mu @ (Sa2 @ Dl[:, :, a] @ Sm.T).reshape(-1) for a in range(N)], axis=1)
        rep["antipode S(a1)a2S(a3) = S(a)"] = _same(f, SaS, Sm)
    return WeakFlattening(W, rep, delta_one_trivial=trivial, degenerate=False)
