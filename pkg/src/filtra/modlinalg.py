"""Exact linear algebra over Z_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  No
floats anywhere: pivoting uses modular inverses, so every result is
exact.  Row spaces are kept in reduced row echelon form, which makes
subspace equality a plain array comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")


def as_array(entries, p: int) -> np.ndarray:
    a = np.asarray(entries, dtype=np.int64)
    return np.mod(a, p)


def inv_mod(x: int, p: int) -> int:
    return pow(int(x) % p, p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns of a over Z_p."""
    m = np.mod(np.asarray(a, dtype=np.int64), p).copy()
    if m.ndim != 2:
        raise DimensionMismatch("rref expects a 2-d array")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if m[i, c] != 0:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        m[r] = (m[r] * inv_mod(m[r, c], p)) % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis (as rows, in rref) of {x : a @ x = 0} over Z_p."""
    a = np.mod(np.asarray(a, dtype=np.int64), p)
    rows, cols = a.shape if a.ndim == 2 else (0, 0)
    if a.ndim != 2:
        raise DimensionMismatch("nullspace expects a 2-d array")
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-r[i, fc]) % p
    rb, _ = rref(basis, p)
    return rb[: len(free)]


@dataclass(frozen=True)
class FpMatrix:
    """An immutable matrix over Z_p (p prime, checked)."""

    p: int
    array: np.ndarray = field(repr=False)

    def __post_init__(self):
        check_prime(self.p)
        a = as_array(self.array, self.p)
        a.setflags(write=False)
        object.__setattr__(self, "array", a)

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def rref(self) -> tuple["FpMatrix", list[int]]:
        r, piv = rref(self.array, self.p)
        return FpMatrix(self.p, r), piv

    def nullspace(self) -> "Subspace":
        return Subspace(self.p, self.cols, nullspace(self.array, self.p))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.p != other.p or self.cols != other.rows:
            raise DimensionMismatch("incompatible matrix product")
        return FpMatrix(self.p, (self.array @ other.array) % self.p)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FpMatrix)
            and self.p == other.p
            and self.array.shape == other.array.shape
            and bool(np.array_equal(self.array, other.array))
        )

    def __hash__(self):
        return hash((self.p, self.array.shape, self.array.tobytes()))


class Subspace:
    """A subspace of Z_p^n stored as an rref row basis (canonical)."""

    def __init__(self, p: int, n: int, vectors=None):
        check_prime(p)
        self.p = p
        self.n = n
        if vectors is None or len(vectors) == 0:
            self.basis = np.zeros((0, n), dtype=np.int64)
        else:
            v = as_array(vectors, p)
            if v.ndim != 2 or v.shape[1] != n:
                raise DimensionMismatch(f"vectors must be rows of length {n}")
            r, piv = rref(v, p)
            self.basis = r[: len(piv)].copy()
        self.basis.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        """Pivot column of each rref basis row."""
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    def contains(self, vec) -> bool:
        v = as_array(vec, self.p).reshape(-1)
        if v.shape[0] != self.n:
            raise DimensionMismatch(f"vector length {v.shape[0]}, ambient {self.n}")
        return self.reduce(v) is None

    def reduce(self, vec) -> np.ndarray | None:
        """Residue of vec after eliminating along the basis; None if inside."""
        v = as_array(vec, self.p).reshape(-1).copy()
        for row in self.basis:
            c = int(np.argmax(row != 0)) if row.any() else -1
            if c >= 0 and v[c]:
                v = (v - v[c] * row) % self.p
        return None if not v.any() else v

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace(self.p, self.n, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.p, self.n)
        stacked = np.vstack([self.basis, other.basis])
        # left kernel rows (u | w) give u @ self.basis = -w @ other.basis
        left = nullspace(stacked.T, self.p)
        if left.shape[0] == 0:
            return Subspace(self.p, self.n)
        vecs = (left[:, : self.dim] @ self.basis) % self.p
        return Subspace(self.p, self.n, vecs)

    def le(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(other.contains(row) for row in self.basis)

    def matrix_image(self, mat: np.ndarray) -> "Subspace":
        """Row space of basis @ mat (the image of this space under mat)."""
        if self.dim == 0:
            return Subspace(self.p, mat.shape[1])
        return Subspace(self.p, mat.shape[1], (self.basis @ np.mod(mat, self.p)) % self.p)

    def _check_compatible(self, other: "Subspace") -> None:
        if self.p != other.p or self.n != other.n:
            raise DimensionMismatch("subspaces live in different ambients")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.p == other.p
            and self.n == other.n
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self):
        return hash((self.p, self.n, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(p={self.p}, n={self.n}, dim={self.dim})"


def full_space(p: int, n: int) -> Subspace:
    return Subspace(p, n, np.eye(n, dtype=np.int64))


def inv_matrix(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over Z_p via rref of [a | I]."""
    a = np.mod(np.asarray(a, dtype=np.int64), p)
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise DimensionMismatch("inverse expects a square matrix")
    aug, pivots = rref(np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1), p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return aug[:, n:]


def solve_nullspace(rows, p: int, n_unknowns: int) -> Subspace:
    """Nullspace of a stacked constraint system (each row has n_unknowns)."""
    if isinstance(rows, np.ndarray):
        a = np.mod(rows.reshape(-1, rows.shape[-1]).astype(np.int64), p)
    elif rows:
        a = np.vstack([as_array(r, p).reshape(1, -1) for r in rows])
    else:
        return full_space(p, n_unknowns)
    if len(a) == 0:
        return full_space(p, n_unknowns)
    if a.shape[1] != n_unknowns:
        raise DimensionMismatch("constraint width disagrees with unknown count")
    return Subspace(p, n_unknowns, nullspace(a, p))
