"""Finite commutative Z_p-algebras given by structure constants.

Elements are coordinate row vectors over Z_p.  The Jacobson radical of
such a ring is its nilradical, computed as the eventual kernel of the
Frobenius map x -> x^p, which is Z_p-linear in characteristic p.
"""

from __future__ import annotations

import numpy as np

from .errors import ClosureViolation, DimensionMismatch
from .modlinalg import Subspace, as_array, check_prime, nullspace


class FinCommRing:
    """Unital commutative ring on Z_p^dim with structure tensor c[i][j] -> vector."""

    def __init__(self, p: int, table: np.ndarray, unit, name: str = ""):
        check_prime(p)
        self.p = p
        t = as_array(table, p)
        if t.ndim != 3 or t.shape[0] != t.shape[1] or t.shape[1] != t.shape[2]:
            raise DimensionMismatch("structure table must be dim x dim x dim")
        self.dim = t.shape[0]
        self.table = t
        self.unit = as_array(unit, p).reshape(-1)
        if self.unit.shape[0] != self.dim:
            raise DimensionMismatch("unit vector has wrong length")
        self.name = name
        self._check()

    def _check(self) -> None:
        d, t = self.dim, self.table
        if not np.array_equal(t, t.transpose(1, 0, 2)):
            raise ClosureViolation("multiplication is not commutative")
        for i in range(d):
            for j in range(d):
                ij = t[i, j]
                for k in range(d):
                    left = (ij @ t[:, k, :]) % self.p
                    right = (t[j, k] @ t[i, :, :]) % self.p
                    if not np.array_equal(left, right):
                        raise ClosureViolation(f"associativity fails at basis ({i},{j},{k})")
        for i in range(d):
            e = np.zeros(d, dtype=np.int64)
            e[i] = 1
            if not np.array_equal(self.mult(self.unit, e), e):
                raise ClosureViolation("designated unit does not act as identity")

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def mult(self, x, y) -> np.ndarray:
        x = as_array(x, self.p).reshape(-1)
        y = as_array(y, self.p).reshape(-1)
        return (np.einsum("i,j,ijk->k", x, y, self.table)) % self.p

    def mult_matrix(self, x) -> np.ndarray:
        """Matrix M with coords(y*x) = coords(y) @ M for row vectors y."""
        x = as_array(x, self.p).reshape(-1)
        return (np.einsum("j,ijk->ik", x, self.table)) % self.p

    def power(self, x, n: int) -> np.ndarray:
        acc = self.unit.copy()
        for _ in range(n):
            acc = self.mult(acc, x)
        return acc

    def frobenius_matrix(self) -> np.ndarray:
        rows = [self.power(self.basis_vector(i), self.p) for i in range(self.dim)]
        return np.stack(rows)

    def radical(self) -> Subspace:
        """Nilradical = eventual kernel of Frobenius (all nilpotents)."""
        f = self.frobenius_matrix()
        k = 1
        bound = self.dim + 1
        pk = self.p
        acc = f
        while pk < bound:
            acc = (acc @ f) % self.p
            pk *= self.p
            k += 1
        return Subspace(self.p, self.dim, nullspace(acc.T, self.p))

    def radical_chain(self) -> list[Subspace]:
        """[J, J^2, ...] down to (and excluding) zero."""
        j = self.radical()
        chain = []
        cur = j
        while cur.dim > 0:
            chain.append(cur)
            prods = []
            for u in cur.basis:
                for v in j.basis:
                    prods.append(self.mult(u, v))
            cur = Subspace(self.p, self.dim, np.stack(prods) if prods else None)
        return chain

    def nilpotency_class(self) -> int:
        """Least c with J^(c+1) = 0 (0 for semisimple input)."""
        return len(self.radical_chain())

    def elements_of(self, space: Subspace) -> list[np.ndarray]:
        """All vectors of a subspace, in deterministic order."""
        from itertools import product as iproduct

        out = []
        for coeffs in iproduct(range(self.p), repeat=space.dim):
            v = np.zeros(self.dim, dtype=np.int64)
            for c, row in zip(coeffs, space.basis):
                v = (v + c * row) % self.p
            out.append(v)
        return out

    def __repr__(self):
        return f"FinCommRing({self.name or 'R'}, p={self.p}, dim={self.dim})"


def make_poly_quotient(p: int, coeffs) -> FinCommRing:
    """Z_p[x]/(f) with f = sum coeffs[i] x^i, monic (last coefficient 1)."""
    check_prime(p)
    c = [int(x) % p for x in coeffs]
    if len(c) < 2 or c[-1] != 1:
        raise ValueError("f must be monic of degree >= 1 (ascending coefficients, leading 1)")
    deg = len(c) - 1
    # x^deg = -(c0 + c1 x + ... + c_{deg-1} x^{deg-1})
    powers = [np.zeros(deg, dtype=np.int64) for _ in range(2 * deg - 1)]
    for k in range(deg):
        powers[k][k] = 1
    for k in range(deg, 2 * deg - 1):
        prev = powers[k - 1]
        shifted = np.zeros(deg, dtype=np.int64)
        shifted[1:] = prev[:-1]
        shifted = (shifted + prev[-1] * np.array([(-x) % p for x in c[:deg]])) % p
        powers[k] = shifted
    table = np.zeros((deg, deg, deg), dtype=np.int64)
    for i in range(deg):
        for j in range(deg):
            table[i, j] = powers[i + j]
    unit = np.zeros(deg, dtype=np.int64)
    unit[0] = 1
    fstr = "+".join(f"{ci}x^{i}" for i, ci in enumerate(c) if ci) or "0"
    return FinCommRing(p, table, unit, name=f"F{p}[x]/({fstr})")


def make_r_circ(p: int, v_dim: int, w_dim: int, circ) -> FinCommRing:
    """The ring Z_p + V + W with V*V -> W given by a symmetric tensor.

    (s,v,w)(s',v',w') = (ss', sv'+s'v, sw'+s'w+v*v'); the radical is V+W
    and squares to the span of the circ products.
    """
    check_prime(p)
    t = as_array(circ, p)
    if t.shape != (v_dim, v_dim, w_dim):
        raise DimensionMismatch("circ tensor must be v_dim x v_dim x w_dim")
    if not np.array_equal(t, t.transpose(1, 0, 2)):
        raise ValueError("circ must be symmetric")
    if not t.any():
        raise ValueError("circ must be nontrivial")
    dim = 1 + v_dim + w_dim
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    table[0, 0, 0] = 1
    for i in range(v_dim):
        table[0, 1 + i, 1 + i] = 1
        table[1 + i, 0, 1 + i] = 1
    for j in range(w_dim):
        table[0, 1 + v_dim + j, 1 + v_dim + j] = 1
        table[1 + v_dim + j, 0, 1 + v_dim + j] = 1
    for i in range(v_dim):
        for j in range(v_dim):
            table[1 + i, 1 + j, 1 + v_dim:] = t[i, j]
    unit = np.zeros(dim, dtype=np.int64)
    unit[0] = 1
    return FinCommRing(p, table, unit, name=f"R(circ,{v_dim},{w_dim})")


def make_field(p: int) -> FinCommRing:
    return make_poly_quotient(p, [0, 1])
