"""Finite-dimensional coalgebras.

A coalgebra of dimension n is stored as two matrices: ``delta`` (n^2 x n,
column j is the comultiplication of basis vector j) and ``epsilon``
(1 x n).  Besides the axioms this module provides the two fixed-point
algorithms everything else leans on: the largest coideal and the largest
subcoalgebra inside a given subspace.  The cofree coalgebra itself is
never built; :func:`cofree_factorization` computes the image of the
couniversal map out of a coalgebra instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .kernel import (
    ExactMatrix,
    FieldSpec,
    Subspace,
    kron,
    kron_all,
    swap_matrix,
    vstack,
)

__all__ = [
    "Coalgebra",
    "Violation",
    "check_coalgebra",
    "is_coalgebra_morphism",
    "iterate_delta",
    "largest_coideal_in",
    "largest_subcoalgebra_in",
    "quotient_coalgebra",
    "subcoalgebra",
    "CofreeFactorization",
    "cofree_factorization",
    "equalizer_coalg",
    "cop",
    "grouplike_coalgebra",
    "matrix_coalgebra",
    "tensor_coalgebra",
    "trivial_coalgebra",
    "coalgebra_from_columns",
    "first_bad_column",
]


class Violation(NamedTuple):
    """One failed axiom: what failed, where, and a basis index witnessing it."""

    axiom: str
    where: tuple
    index: int | None = None

    def __str__(self) -> str:
        loc = ",".join(map(str, self.where))
        at = "" if self.index is None else f" at basis index {self.index}"
        return f"{self.axiom} [{loc}]{at}"


def first_bad_column(A: ExactMatrix, B: ExactMatrix) -> int | None:
    """Index of the first column where two equally shaped matrices differ."""
    diff = (A - B).array
    for j in range(diff.shape[1]):
        if any(v != 0 for v in diff[:, j]):
            return j
    return None


@dataclass(frozen=True)
class Coalgebra:
    field: FieldSpec
    dim: int
    delta: ExactMatrix
    epsilon: ExactMatrix

    def __post_init__(self):
        if self.delta.shape != (self.dim * self.dim, self.dim):
            raise ValueError(f"delta must be {self.dim**2}x{self.dim}, got {self.delta.shape}")
        if self.epsilon.shape != (1, self.dim):
            raise ValueError(f"epsilon must be 1x{self.dim}, got {self.epsilon.shape}")

    @property
    def identity(self) -> ExactMatrix:
        return ExactMatrix.identity(self.field, self.dim)


def grouplike_coalgebra(field: FieldSpec, n: int) -> Coalgebra:
    """The coalgebra spanned by n grouplike basis vectors."""
    cols = []
    for i in range(n):
        v = [0] * (n * n)
        v[i * n + i] = 1
        cols.append(v)
    return Coalgebra(
        field,
        n,
        ExactMatrix.from_columns(field, cols, n * n),
        ExactMatrix.from_rows(field, [[1] * n], n),
    )


def trivial_coalgebra(field: FieldSpec) -> Coalgebra:
    return grouplike_coalgebra(field, 1)


def matrix_coalgebra(field: FieldSpec, n: int) -> Coalgebra:
    """Dual of the n x n matrix algebra: ``e_ij -> sum_k e_ik (x) e_kj``.

    Basis vector ``e_ij`` has index ``i * n + j``.
    """
    d = n * n
    cols = []
    for i in range(n):
        for j in range(n):
            v = [0] * (d * d)
            for k in range(n):
                v[(i * n + k) * d + (k * n + j)] = 1
            cols.append(v)
    eps = [[1 if i == j else 0 for i in range(n) for j in range(n)]]
    return Coalgebra(field, d, ExactMatrix.from_columns(field, cols, d * d), ExactMatrix.from_rows(field, eps, d))


def tensor_coalgebra(C: Coalgebra, D: Coalgebra) -> Coalgebra:
    """``C (x) D`` with ``Delta = (1 (x) sigma (x) 1)(Delta_C (x) Delta_D)``."""
    f = C.field
    mid = kron_all(f, [ExactMatrix.identity(f, C.dim), swap_matrix(f, C.dim, D.dim), ExactMatrix.identity(f, D.dim)])
    return Coalgebra(f, C.dim * D.dim, mid @ kron(C.delta, D.delta), kron(C.epsilon, D.epsilon))


def cop(C: Coalgebra) -> Coalgebra:
    """Co-opposite coalgebra: comultiplication followed by the symmetry."""
    return Coalgebra(C.field, C.dim, swap_matrix(C.field, C.dim, C.dim) @ C.delta, C.epsilon)


def _split(C: Coalgebra, k: int) -> np.ndarray:
    """``Delta(e_k)`` as an n x n array ``D`` with ``Delta(e_k) = sum D[p, q] e_p (x) e_q``."""
    return C.delta.array[:, k].reshape(C.dim, C.dim)


def _differs(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> bool:
    d = a - b
    if field.p is not None:
        d = d % field.p
    return any(v != 0 for v in d.ravel())


def check_coalgebra(C: Coalgebra) -> list[Violation]:
    """Coassociativity and both counit laws, tested one basis vector at a time."""
    f, n = C.field, C.dim
    out = []
    delta, eps = C.delta.array, C.epsilon.array
    found = {"coassociativity": None, "left counit": None, "right counit": None}
    for k in range(n):
        D = _split(C, k)
        # (Delta (x) id) Delta e_k and (id (x) Delta) Delta e_k, both flattened to n^3;
        # only the nonzero rows and columns of D contribute
        if found["coassociativity"] is None:
            rows = [p for p in range(n) if any(v != 0 for v in D[p])]
            cols = [q for q in range(n) if any(v != 0 for v in D[:, q])]
            lhs = delta[:, rows] @ D[rows, :] if rows else np.zeros((n * n, n), dtype=object)
            rhs = D[:, cols] @ delta.T[cols, :] if cols else np.zeros((n, n * n), dtype=object)
            if _differs(f, lhs.ravel(), rhs.ravel()):
                found["coassociativity"] = k
        e = np.zeros(n, dtype=object)
        e[k] = f.one
        if found["left counit"] is None and _differs(f, eps[0] @ D, e):
            found["left counit"] = k
        if found["right counit"] is None and _differs(f, D @ eps[0], e):
            found["right counit"] = k
    for axiom, k in found.items():
        if k is not None:
            out.append(Violation(axiom, (), k))
    return out


def is_coalgebra_morphism(g: ExactMatrix, C: Coalgebra, D: Coalgebra) -> bool:
    if g.shape != (D.dim, C.dim):
        return False
    if D.epsilon @ g != C.epsilon:
        return False
    G = g.array
    lhs = D.delta @ g
    for k in range(C.dim):
        if _differs(C.field, lhs.array[:, k].reshape(D.dim, D.dim), G @ _split(C, k) @ G.T):
            return False
    return True


def iterate_delta(C: Coalgebra, n: int) -> ExactMatrix:
    """``Delta^0 = epsilon``, ``Delta^1 = id``, ``Delta^n = (Delta^{n-1} (x) id) Delta``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return C.epsilon
    out = C.identity
    for _ in range(n - 1):
        out = kron(out, C.identity) @ C.delta
    return out


def largest_coideal_in(C: Coalgebra, W: Subspace) -> Subspace:
    """Largest ``J`` inside ``W`` with ``eps(J) = 0`` and ``Delta J`` in ``J(x)C + C(x)J``.

    ``J (x) C + C (x) J`` is the kernel of ``pi (x) pi`` for the quotient map
    ``pi`` by J, which turns each step into a kernel computation.
    """
    J = W.restrict_kernel(C.epsilon)
    for _ in range(C.dim + 1):
        pi = J.quotient_map()
        nxt = J.restrict_kernel(kron(pi, pi) @ C.delta)
        if nxt.dim == J.dim:
            return J
        J = nxt
    raise AssertionError("coideal iteration did not stabilize")  # pragma: no cover


def largest_subcoalgebra_in(C: Coalgebra, W: Subspace) -> Subspace:
    """Largest ``E`` inside ``W`` with ``Delta E`` in ``E (x) E``."""
    E = W
    I = C.identity
    for _ in range(C.dim + 1):
        pi = E.quotient_map()
        nxt = E.restrict_kernel(vstack(C.field, [kron(pi, I) @ C.delta, kron(I, pi) @ C.delta], C.dim))
        if nxt.dim == E.dim:
            return E
        E = nxt
    raise AssertionError("subcoalgebra iteration did not stabilize")  # pragma: no cover


def quotient_coalgebra(C: Coalgebra, J: Subspace) -> tuple[Coalgebra, ExactMatrix, ExactMatrix]:
    """``C / J`` on the echelon complement of J, with quotient map and section."""
    pi, s = J.quotient_map(), J.section()
    Q = Coalgebra(C.field, pi.rows, kron(pi, pi) @ C.delta @ s, C.epsilon @ s)
    return Q, pi, s


def subcoalgebra(C: Coalgebra, E: Subspace) -> tuple[Coalgebra, ExactMatrix]:
    """Induced structure on a subcoalgebra ``E``, with its inclusion matrix."""
    inc = E.matrix()
    # an RREF basis reads off coordinates at its pivot positions
    take = list(E.pivots)
    dd = C.delta @ inc
    dim = E.dim
    rows = [a * C.dim + b for a in take for b in take]
    delta = dd.select_rows(rows)
    sub = Coalgebra(C.field, dim, delta, C.epsilon @ inc)
    if not kron(inc, inc) @ sub.delta == C.delta @ inc:
        raise ValueError("subspace is not a subcoalgebra")
    return sub, inc


@dataclass(frozen=True)
class CofreeFactorization:
    """Image of the couniversal map ``C -> T^c(V)``, represented by components.

    ``components[k]`` is ``gamma^{(x)k} Delta^k`` for k = 0..K, ``kernel``
    the kernel of the couniversal map, and ``image`` the quotient coalgebra
    with quotient map ``e`` and section ``s``.
    """

    source: Coalgebra
    target_dim: int
    gamma: ExactMatrix
    components: tuple[ExactMatrix, ...]
    kernel: Subspace
    image: Coalgebra
    e: ExactMatrix
    s: ExactMatrix

    @property
    def stabilization_index(self) -> int:
        return len(self.components) - 1

    def image_components(self) -> list[ExactMatrix]:
        """Components restricted to the image, via the section."""
        return [g @ self.s for g in self.components]

    def jointly_monic(self) -> bool:
        K = Subspace.whole(self.source.field, self.image.dim)
        for g in self.image_components():
            K = K.restrict_kernel(g)
        return K.dim == 0


def _gamma_power(gamma: ExactMatrix, k: int) -> ExactMatrix:
    return kron_all(gamma.field, [gamma] * k)


def cofree_factorization(C: Coalgebra, gamma: ExactMatrix) -> CofreeFactorization:
    """Factor the couniversal map determined by ``gamma: C -> V``.

    The kernel is computed twice: once as the largest coideal inside
    ``ker gamma`` and once as the running intersection of the kernels of
    ``gamma_k``; the components are extended until the two agree.
    """
    if gamma.cols != C.dim or gamma.field != C.field:
        raise ValueError(f"gamma must be (dim V) x {C.dim} over {C.field}, got {gamma.shape}")
    J = largest_coideal_in(C, Subspace.kernel_of(gamma))
    comps = []
    running = Subspace.whole(C.field, C.dim)
    k = 0
    while True:
        g = _gamma_power(gamma, k) @ iterate_delta(C, k)
        comps.append(g)
        running = running.restrict_kernel(g)
        # k = 1 is always kept: it carries the counit component
        if running == J and k >= 1:
            break
        k += 1
        if k > C.dim + 2:
            raise AssertionError("component kernels did not reach the largest coideal")  # pragma: no cover
    img, e, s = quotient_coalgebra(C, J)
    return CofreeFactorization(C, gamma.rows, gamma, tuple(comps), J, img, e, s)


def equalizer_coalg(f: ExactMatrix, g: ExactMatrix, C: Coalgebra, D: Coalgebra) -> tuple[Coalgebra, ExactMatrix]:
    """Equalizer of two coalgebra maps ``C -> D``: sub-coalgebra plus inclusion."""
    for name, h in (("f", f), ("g", g)):
        if not is_coalgebra_morphism(h, C, D):
            raise ValueError(f"{name} is not a coalgebra morphism")
    E = largest_subcoalgebra_in(C, Subspace.kernel_of(f - g))
    return subcoalgebra(C, E)


def coalgebra_from_columns(field: FieldSpec, dim: int, delta_cols: Sequence[dict], eps: Sequence) -> Coalgebra:
    """Build a coalgebra from sparse comultiplication columns ``{(p, q): coeff}``."""
    cols = []
    for d in delta_cols:
        v = [0] * (dim * dim)
        for (p, q), c in d.items():
            v[p * dim + q] = c
        cols.append(v)
    return Coalgebra(field, dim, ExactMatrix.from_columns(field, cols, dim * dim), ExactMatrix.from_rows(field, [list(eps)], dim))

