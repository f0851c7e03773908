"""Exact scalars, dense exact linear algebra and Smith normal form.

Every linear computation in the package goes through :class:`ExactMatrix`,
a thin immutable wrapper around a numpy object array whose entries are
either :class:`fractions.Fraction` (the field Q) or Python ints reduced
modulo a prime p (the field F_p).

Tensor products of spaces use a single basis convention throughout:
``e_i (x) f_j`` has index ``i * dim(W) + j``.  :func:`kron` and
:func:`swap_matrix` both follow it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldSpec",
    "Q",
    "GF",
    "FieldMismatch",
    "ExactMatrix",
    "Subspace",
    "rref",
    "kernel_basis",
    "kernel_matrix",
    "solve",
    "Solution",
    "inconsistency_certificate",
    "kron",
    "kron_all",
    "swap_matrix",
    "permute_factors",
    "block_diag",
    "hstack",
    "vstack",
    "IntMatrix",
    "snf",
    "is_prime",
]


class FieldMismatch(ValueError):
    """Raised when matrices over different fields are combined."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The base field: Q when ``p`` is None, otherwise F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or self.p >= 2**63:
                raise ValueError(f"prime modulus must be a machine-word int, got {self.p!r}")
            if not is_prime(self.p):
                raise ValueError(f"{self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return Fraction(0) if self.p is None else 0

    @property
    def one(self):
        return Fraction(1) if self.p is None else 1

    def __call__(self, value):
        """Coerce ints, Fractions and ``"p/q"`` strings into this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.p is None:
            if isinstance(value, float):
                raise TypeError("floats are not exact scalars")
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.p is None else pow(a, -1, self.p)

    def fmt(self, a) -> str:
        return str(a)

    def __str__(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text == "Q":
            return Q
        if text.startswith("F_"):
            text = "F" + text[2:]
        if text.startswith("F") and text[1:].isdigit():
            return cls(int(text[1:]))
        raise ValueError(f"unknown field {text!r}; expected 'Q' or 'F<p>'")


Q = FieldSpec()


@lru_cache(maxsize=None)
def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def _obj_array(rows: int, cols: int, fill) -> np.ndarray:
    a = np.empty((rows, cols), dtype=object)
    a.fill(fill)
    return a


class ExactMatrix:
    """Dense immutable matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "_a")

    def __init__(self, field: FieldSpec, data, *, _trusted: bool = False):
        self.field = field
        if _trusted:
            a = data
        else:
            a = np.array(data, dtype=object)
            if a.ndim != 2:
                if a.size == 0:
                    a = a.reshape(0, 0)
                else:
                    raise ValueError("matrix data must be two-dimensional")
            a = np.vectorize(field, otypes=[object])(a) if a.size else a.astype(object)
        a.flags.writeable = False
        self._a = a

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "ExactMatrix":
        return cls(field, _obj_array(rows, cols, field.zero), _trusted=True)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "ExactMatrix":
        a = _obj_array(n, n, field.zero)
        for i in range(n):
            a[i, i] = field.one
        return cls(field, a, _trusted=True)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence], cols: int | None = None) -> "ExactMatrix":
        rows = list(rows)
        if not rows:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, [list(r) for r in rows])

    @classmethod
    def column(cls, field: FieldSpec, values: Sequence) -> "ExactMatrix":
        a = _obj_array(len(values), 1, field.zero)
        for i, v in enumerate(values):
            a[i, 0] = field(v)
        return cls(field, a, _trusted=True)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Sequence], rows: int) -> "ExactMatrix":
        a = _obj_array(rows, len(columns), field.zero)
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                a[i, j] = field(v)
        return cls(field, a, _trusted=True)

    @classmethod
    def unit_vector(cls, field: FieldSpec, n: int, i: int) -> "ExactMatrix":
        a = _obj_array(n, 1, field.zero)
        a[i, 0] = field.one
        return cls(field, a, _trusted=True)

    # basic protocol -----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def entries(self) -> list:
        return list(self._a.ravel())

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying object array."""
        return self._a

    def tolist(self) -> list[list]:
        return self._a.tolist()

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self._a[i, j]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "ExactMatrix":
        return ExactMatrix(self.field, self._a[r0:r1, c0:c1].copy(), _trusted=True)

    def col(self, j: int) -> tuple:
        return tuple(self._a[:, j])

    def row(self, i: int) -> tuple:
        return tuple(self._a[i, :])

    def columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, self._a[:, list(idx)].reshape(self.rows, len(idx)).copy(), _trusted=True)

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.field, self._a[list(idx), :].reshape(len(idx), self.cols).copy(), _trusted=True)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(v) for v in r) for r in self._a.tolist())
        return f"ExactMatrix<{self.field}>({self.rows}x{self.cols})[{body}]"

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and bool(np.all(self._a == other._a))

    def __hash__(self):
        return hash((self.field, self.shape, tuple(self._a.ravel())))

    def is_zero(self) -> bool:
        return not self._a.size or not bool(np.any(self._a != 0))

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "ExactMatrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _wrap(self, a: np.ndarray) -> "ExactMatrix":
        if self.field.p is not None:
            a = a % self.field.p
        return ExactMatrix(self.field, a, _trusted=True)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.cols == 0:
            return ExactMatrix.zeros(self.field, self.rows, other.cols)
        return self._wrap(np.dot(self._a, other._a))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return self._wrap(self._a + other._a)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return self._wrap(self._a - other._a)

    def __neg__(self) -> "ExactMatrix":
        return self._wrap(-self._a)

    def scale(self, c) -> "ExactMatrix":
        c = self.field(c)
        return self._wrap(self._a * c)

    __rmul__ = scale

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self._a.T.copy(), _trusted=True)

    def __pow__(self, n: int) -> "ExactMatrix":
        if self.rows != self.cols or n < 0:
            raise ValueError("power needs a square matrix and n >= 0")
        out = ExactMatrix.identity(self.field, self.rows)
        for _ in range(n):
            out = out @ self
        return out


# -- stacking ----------------------------------------------------------------


def hstack(field: FieldSpec, mats: Sequence[ExactMatrix], rows: int | None = None) -> ExactMatrix:
    mats = list(mats)
    if not mats:
        return ExactMatrix.zeros(field, rows or 0, 0)
    return ExactMatrix(field, np.hstack([m.array for m in mats]), _trusted=True)


def vstack(field: FieldSpec, mats: Sequence[ExactMatrix], cols: int | None = None) -> ExactMatrix:
    mats = list(mats)
    if not mats:
        return ExactMatrix.zeros(field, 0, cols or 0)
    return ExactMatrix(field, np.vstack([m.array for m in mats]), _trusted=True)


def block_diag(field: FieldSpec, mats: Sequence[ExactMatrix]) -> ExactMatrix:
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    a = _obj_array(r, c, field.zero)
    i = j = 0
    for m in mats:
        a[i : i + m.rows, j : j + m.cols] = m.array
        i += m.rows
        j += m.cols
    return ExactMatrix(field, a, _trusted=True)


# -- elimination -------------------------------------------------------------


def _rref_rows(field: FieldSpec, rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form of a list of rows."""
    if not rows:
        return rows, []
    ncols = len(rows[0])
    p = field.p
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.inv(rows[r][c])
        if p is None:
            rows[r] = [v * inv for v in rows[r]]
        else:
            rows[r] = [v * inv % p for v in rows[r]]
        piv = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                if p is None:
                    rows[i] = [a - f * b for a, b in zip(rows[i], piv)]
                else:
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], piv)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rref(M: ExactMatrix) -> tuple[ExactMatrix, list[int], int]:
    """Reduced row echelon form ``(R, pivots, rank)``."""
    rows, pivots = _rref_rows(M.field, M.tolist())
    R = ExactMatrix(M.field, np.array(rows, dtype=object).reshape(M.shape), _trusted=True) if rows else M
    return R, pivots, len(pivots)


def kernel_basis(M: ExactMatrix) -> list[tuple]:
    """Basis of the right null space, one vector per free column.

    The vector attached to free column ``f`` has a 1 in position ``f``, zeros
    in the other free positions, and pivot entries read off the RREF.
    """
    field = M.field
    R, pivots, rank = rref(M)
    free = [c for c in range(M.cols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [field.zero] * M.cols
        v[f] = field.one
        for i, pc in enumerate(pivots):
            v[pc] = -R.array[i, f] if field.p is None else (-R.array[i, f]) % field.p
        out.append(tuple(v))
    return out


def kernel_matrix(M: ExactMatrix) -> ExactMatrix:
    """Kernel basis as the columns of a matrix."""
    return ExactMatrix.from_columns(M.field, kernel_basis(M), M.cols)


@dataclass(frozen=True)
class Solution:
    particular: ExactMatrix
    kernel: list[tuple]


def solve(A: ExactMatrix, B: ExactMatrix) -> Solution | None:
    """Solve ``A X = B``; None when inconsistent.

    The particular solution sets every free variable to zero.
    """
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    if A.rows != B.rows:
        raise ValueError(f"shape mismatch: A has {A.rows} rows, B has {B.rows}")
    field = A.field
    aug = [ra + rb for ra, rb in zip(A.tolist(), B.tolist())]
    rows, pivots = _rref_rows(field, aug)
    if any(p >= A.cols for p in pivots):
        return None
    X = _obj_array(A.cols, B.cols, field.zero)
    for i, pc in enumerate(pivots):
        X[pc, :] = rows[i][A.cols :]
    return Solution(ExactMatrix(field, X, _trusted=True), kernel_basis(A))


def inconsistency_certificate(A: ExactMatrix, B: ExactMatrix) -> tuple | None:
    """A row vector ``y`` with ``y A = 0`` and ``y B != 0``, or None if solvable."""
    for y in kernel_basis(A.T):
        Y = ExactMatrix.from_rows(A.field, [y])
        if not (Y @ B).is_zero():
            return y
    return None


# -- tensor products ---------------------------------------------------------


def kron(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Kronecker product with ``(i*B.rows + k, j*B.cols + l) -> A[i,j] B[k,l]``."""
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    field = A.field
    if 0 in A.shape or 0 in B.shape:
        return ExactMatrix.zeros(field, A.rows * B.rows, A.cols * B.cols)
    a = np.kron(A.array, B.array)
    if field.p is not None:
        a = a % field.p
    return ExactMatrix(field, a, _trusted=True)


def kron_all(field: FieldSpec, mats: Iterable[ExactMatrix]) -> ExactMatrix:
    return reduce(kron, mats, ExactMatrix.identity(field, 1))


def swap_matrix(field: FieldSpec, m: int, n: int) -> ExactMatrix:
    """The symmetry ``V (x) W -> W (x) V`` for dim V = m, dim W = n."""
    a = _obj_array(m * n, m * n, field.zero)
    for i in range(m):
        for j in range(n):
            a[j * m + i, i * n + j] = field.one
    return ExactMatrix(field, a, _trusted=True)


def permute_factors(field: FieldSpec, dims: Sequence[int], perm: Sequence[int]) -> ExactMatrix:
    """Permutation of tensor factors: output factor ``k`` is input factor ``perm[k]``."""
    dims = list(dims)
    out_dims = [dims[p] for p in perm]
    total = 1
    for d in dims:
        total *= d
    a = _obj_array(total, total, field.zero)

    def flat(idx, ds):
        v = 0
        for i, d in zip(idx, ds):
            v = v * d + i
        return v

    for idx in product(*[range(d) for d in dims]):
        out_idx = [idx[p] for p in perm]
        a[flat(out_idx, out_dims), flat(idx, dims)] = field.one
    return ExactMatrix(field, a, _trusted=True)


# -- subspaces ---------------------------------------------------------------


class Subspace:
    """A subspace of ``field^ambient`` stored by its RREF basis."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: FieldSpec, ambient: int, vectors: Iterable[Sequence] = ()):
        rows = [[field(v) for v in vec] for vec in vectors]
        for r in rows:
            if len(r) != ambient:
                raise ValueError(f"vector of length {len(r)} in ambient dimension {ambient}")
        rows, pivots = _rref_rows(field, rows)
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in rows[: len(pivots)])
        self.pivots = tuple(pivots)

    @classmethod
    def whole(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, [])

    @classmethod
    def kernel_of(cls, M: ExactMatrix) -> "Subspace":
        return cls(M.field, M.cols, kernel_basis(M))

    @classmethod
    def image_of(cls, M: ExactMatrix) -> "Subspace":
        return cls(M.field, M.rows, [M.col(j) for j in range(M.cols)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field, self.ambient, self.basis) == (other.field, other.ambient, other.basis)

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.field}^{self.ambient}, basis={[list(map(str, b)) for b in self.basis]})"

    def matrix(self) -> ExactMatrix:
        """Basis vectors as columns (ambient x dim)."""
        return ExactMatrix.from_columns(self.field, self.basis, self.ambient)

    def complement_indices(self) -> list[int]:
        piv = set(self.pivots)
        return [i for i in range(self.ambient) if i not in piv]

    def quotient_map(self) -> ExactMatrix:
        """Projection onto the echelon complement, ``(ambient - dim) x ambient``.

        Coordinates are taken in the basis of standard vectors at the non-pivot
        positions, so the map kills exactly this subspace.
        """
        field = self.field
        comp = self.complement_indices()
        pos = {c: k for k, c in enumerate(comp)}
        a = _obj_array(len(comp), self.ambient, field.zero)
        for c, k in pos.items():
            a[k, c] = field.one
        for vec, pc in zip(self.basis, self.pivots):
            for c, k in pos.items():
                if vec[c] != 0:
                    a[k, pc] = -vec[c] if field.p is None else (-vec[c]) % field.p
        return ExactMatrix(field, a, _trusted=True)

    def section(self) -> ExactMatrix:
        """Inclusion of the echelon complement, ``ambient x (ambient - dim)``."""
        comp = self.complement_indices()
        return ExactMatrix.identity(self.field, self.ambient).columns(comp)

    def contains(self, vec: Sequence) -> bool:
        return Subspace(self.field, self.ambient, list(self.basis) + [list(vec)]).dim == self.dim

    def issubspace(self, other: "Subspace") -> bool:
        return (self + other).dim == other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient, list(self.basis) + list(other.basis))

    def __and__(self, other: "Subspace") -> "Subspace":
        """Intersection, computed as a kernel of the stacked quotient maps."""
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        return self.restrict_kernel(other.quotient_map())

    def restrict_kernel(self, M: ExactMatrix) -> "Subspace":
        """``{v in self : M v = 0}``."""
        if self.dim == 0:
            return self
        B = self.matrix()
        K = kernel_basis(M @ B)
        return Subspace(self.field, self.ambient, [(B @ ExactMatrix.column(self.field, k)).col(0) for k in K])


# -- integer matrices and Smith normal form ----------------------------------


@dataclass(frozen=True)
class IntMatrix:
    """Arbitrary-precision integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        if not rows:
            return cls(0, cols or 0, ())
        c = len(rows[0])
        if any(len(r) != c for r in rows):
            raise ValueError("ragged integer matrix")
        return cls(len(rows), c, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        return [list(self.entries[i * self.cols : (i + 1) * self.cols]) for i in range(self.rows)]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        a, b = self.tolist(), other.tolist()
        out = [[sum(a[i][k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)] for i in range(self.rows)]
        return IntMatrix.from_rows(out, other.cols)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(c) for c in zip(*self.tolist())], self.rows) if self.rows else IntMatrix(self.cols, 0, ())

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


def snf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: ``D = U M V`` with U, V unimodular.

    D is diagonal, its entries are non-negative and each divides the next.
    """
    m, n = M.rows, M.cols
    A = M.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col_dst += k * col_src
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # the pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return IntMatrix.from_rows(U, m), IntMatrix.from_rows(A, n), IntMatrix.from_rows(V, n)
