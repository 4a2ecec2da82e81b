"""Bilinear maps and their scalar rings.

A bimap U x V -> W is stored as a structure tensor B of shape
(a, b, c): B[i, j] is the coordinate vector of e_i * e_j.  Vectors are
rows throughout; a matrix X acts on U on the right, so (uX)_l is
sum_i u_i X[i, l].

Three rings of scalars are computed by linear algebra over Z_p:

  adjoint     pairs (X, Y) with  uX * v = u * vY
  centroid    triples (X, Y, Z) with  uX * v = u * vY = (u * v)Z
  derivations triples (X, Y, Z) with  uX * v + u * vY = (u * v)Z

The adjoint and centroid are multiplicatively closed and contain the
identity; derivations close under the commutator bracket.  Verification
helpers recheck all of that from the solved bases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .modlinalg import Subspace, check_prime, solve_nullspace


def as_tensor(entries, p: int) -> np.ndarray:
    t = np.asarray(entries, dtype=np.int64)
    if t.ndim != 3:
        raise ValueError("bimap tensor must have three axes")
    check_prime(p)
    return t % p


def _unflatten(vec: np.ndarray, shapes: list[tuple[int, int]]) -> list[np.ndarray]:
    out, pos = [], 0
    for r, s in shapes:
        out.append(vec[pos:pos + r * s].reshape(r, s))
        pos += r * s
    return out


@dataclass(frozen=True, eq=False)
class ScalarRing:
    """Solution space of one of the three scalar-ring identities."""

    kind: str
    p: int
    tensor: np.ndarray
    members: tuple[tuple[np.ndarray, ...], ...]
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains(self, *mats) -> bool:
        flat = np.concatenate([np.asarray(m, dtype=np.int64).reshape(-1) for m in mats])
        return self.space.contains(flat)

    def has_identity(self) -> bool:
        """(I, I) resp. (I, I, I) solves the identity; for derivations the
        canonical member is (I, I, 2I)."""
        a, b, c = self.tensor.shape
        ia, ib, ic = (np.eye(n, dtype=np.int64) for n in (a, b, c))
        if self.kind == "adjoint":
            return self.contains(ia, ib)
        if self.kind == "centroid":
            return self.contains(ia, ib, ic)
        return self.contains(ia, ib, (2 * ic) % self.p)

    def closed(self) -> bool:
        for ms in self.members:
            for ns in self.members:
                if self.kind == "adjoint":
                    prod = ((ms[0] @ ns[0]) % self.p, (ns[1] @ ms[1]) % self.p)
                elif self.kind == "centroid":
                    prod = tuple((x @ y) % self.p for x, y in zip(ms, ns))
                else:
                    prod = tuple((x @ y - y @ x) % self.p for x, y in zip(ms, ns))
                if not self.contains(*prod):
                    return False
        return True

    def satisfies_identity(self) -> bool:
        b = self.tensor
        for ms in self.members:
            if self.kind == "adjoint":
                x, y = ms
                left = np.einsum("il,ljk->ijk", x, b) % self.p
                right = np.einsum("jl,ilk->ijk", y, b) % self.p
                if not np.array_equal(left, right):
                    return False
            else:
                x, y, z = ms
                left = np.einsum("il,ljk->ijk", x, b) % self.p
                mid = np.einsum("jl,ilk->ijk", y, b) % self.p
                right = np.einsum("ijm,mk->ijk", b, z) % self.p
                if self.kind == "centroid":
                    if not (np.array_equal(left, mid) and np.array_equal(mid, right)):
                        return False
                else:
                    if not np.array_equal((left + mid) % self.p, right):
                        return False
        return True


def _rows_x(b: np.ndarray) -> np.ndarray:
    """Coefficient block of X in  uX * v: entry ((i,j,k),(i',l)) = d_{ii'} B[l,j,k]."""
    a, bb, c = b.shape
    rows = np.zeros((a, bb, c, a, a), dtype=np.int64)
    for i in range(a):
        rows[i, :, :, i, :] = b.transpose(1, 2, 0)
    return rows.reshape(a * bb * c, a * a)


def _rows_y_right(b: np.ndarray) -> np.ndarray:
    """Coefficient block of Y in  u * vY with v a row: uses Y[j,l] B[i,l,k]."""
    a, bb, c = b.shape
    rows = np.zeros((a, bb, c, bb, bb), dtype=np.int64)
    for j in range(bb):
        rows[:, j, :, j, :] = b.transpose(0, 2, 1)
    return rows.reshape(a * bb * c, bb * bb)


def _rows_z(b: np.ndarray) -> np.ndarray:
    """Coefficient block of Z in  (u * v)Z: entry ((i,j,k),(m,k')) = d_{kk'} B[i,j,m]."""
    a, bb, c = b.shape
    rows = np.zeros((a, bb, c, c, c), dtype=np.int64)
    for k in range(c):
        rows[:, :, k, :, k] = b
    return rows.reshape(a * bb * c, c * c)


def adjoint_ring(tensor, p: int) -> ScalarRing:
    b = as_tensor(tensor, p)
    a, bb, _ = b.shape
    rows = np.concatenate([_rows_x(b), -_rows_y_right(b) % p], axis=1)
    space = solve_nullspace(rows, p, a * a + bb * bb)
    members = tuple(tuple(_unflatten(v, [(a, a), (bb, bb)])) for v in space.basis)
    return ScalarRing("adjoint", p, b, members, space)


def centroid_ring(tensor, p: int) -> ScalarRing:
    b = as_tensor(tensor, p)
    a, bb, c = b.shape
    zx = np.zeros((a * bb * c, a * a), dtype=np.int64)
    zy = np.zeros((a * bb * c, bb * bb), dtype=np.int64)
    eq1 = np.concatenate([_rows_x(b), zy, -_rows_z(b) % p], axis=1)
    eq2 = np.concatenate([zx, _rows_y_right(b), -_rows_z(b) % p], axis=1)
    rows = np.concatenate([eq1, eq2], axis=0)
    space = solve_nullspace(rows, p, a * a + bb * bb + c * c)
    members = tuple(tuple(_unflatten(v, [(a, a), (bb, bb), (c, c)])) for v in space.basis)
    return ScalarRing("centroid", p, b, members, space)


def derivation_ring(tensor, p: int) -> ScalarRing:
    b = as_tensor(tensor, p)
    a, bb, c = b.shape
    rows = np.concatenate([_rows_x(b), _rows_y_right(b), -_rows_z(b) % p], axis=1)
    space = solve_nullspace(rows, p, a * a + bb * bb + c * c)
    members = tuple(tuple(_unflatten(v, [(a, a), (bb, bb), (c, c)])) for v in space.basis)
    return ScalarRing("derivation", p, b, members, space)


def solve_ring(tensor, p: int, method: str) -> ScalarRing:
    try:
        fn = {"adjoint": adjoint_ring, "centroid": centroid_ring,
              "derivation": derivation_ring}[method]
    except KeyError:
        raise ValueError(f"unknown ring method {method!r}") from None
    return fn(tensor, p)


def exterior_square_tensor(r: int, p: int) -> np.ndarray:
    """Alternating bimap Z_p^r x Z_p^r -> wedge^2 with the lex pair basis."""
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    b = np.zeros((r, r, len(pairs)), dtype=np.int64)
    for k, (i, j) in enumerate(pairs):
        b[i, j, k] = 1
        b[j, i, k] = (-1) % p
    return b


def kronecker_pair_tensor(m: int, p: int) -> np.ndarray:
    """Alternating bimap on Z_p^{2m+1} from the matrix pencil ([Z 0], [0 Z])
    with Z the m x m anti-diagonal: (u,v) * (x,y) = (uFy^t - vF^tx^t, uGy^t - vG^tx^t)."""
    z = np.eye(m, dtype=np.int64)[::-1]
    f = np.concatenate([z, np.zeros((m, 1), dtype=np.int64)], axis=1)
    g = np.concatenate([np.zeros((m, 1), dtype=np.int64), z], axis=1)
    n = 2 * m + 1
    b = np.zeros((n, n, 2), dtype=np.int64)
    for i in range(m):
        for j in range(m + 1):
            b[i, m + j, 0] = f[i, j]
            b[m + j, i, 0] = (-f[i, j]) % p
            b[i, m + j, 1] = g[i, j]
            b[m + j, i, 1] = (-g[i, j]) % p
    return b


def heisenberg_tensor(ring) -> np.ndarray:
    """Commutation bimap of the Heisenberg group over a commutative ring:
    (a, b) * (c, d) = ad - bc taken in the ring."""
    m = ring.dim
    b = np.zeros((2 * m, 2 * m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            prod = ring.table[i, j]
            b[i, m + j] = prod
            b[m + j, i] = (-prod) % ring.p
    return b


def tensor_to_json(tensor: np.ndarray) -> dict:
    a, b, c = tensor.shape
    entries = [[i, j, k, int(tensor[i, j, k])]
               for i in range(a) for j in range(b) for k in range(c)
               if tensor[i, j, k]]
    return {"dims": [a, b, c], "entries": entries}


def tensor_from_json(data: dict, p: int) -> np.ndarray:
    a, b, c = data["dims"]
    t = np.zeros((a, b, c), dtype=np.int64)
    for i, j, k, v in data["entries"]:
        t[i, j, k] = v
    return t % p
