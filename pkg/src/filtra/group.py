"""Finite unipotent matrix groups over Z_p and their standard series.

Elements are d x d unipotent matrices with entries in [0, p), stored as
uint8 arrays (p must fit in a byte) and multiplied in int64 to avoid
overflow.  Element sets are kept sorted by row-major byte order, so a
set has one canonical layout; the lexicographically least matrix of a
coset is therefore just the first one found in sorted order.

Subgroup enumeration is a breadth-first closure under generator
multiplication with a configurable cap.  Commutator subgroups use the
normal-closure identity [<S>,<T>] = <[s,t] : s in S, t in T>^<S,T>
(conjugation by the generators suffices); the exhaustive element-pair
version lives in the oracles module and is only feasible at toy sizes.
"""

from __future__ import annotations

import hashlib
from itertools import product as iproduct

import numpy as np

from .errors import CapExceeded, DimensionMismatch, NotAbelianSection, NotNormal
from .modlinalg import Subspace, check_prime

DEFAULT_CAP = 2**20


def _as_mat(m, p: int, degree: int) -> np.ndarray:
    a = np.mod(np.asarray(m, dtype=np.int64), p)
    if a.shape != (degree, degree):
        raise DimensionMismatch(f"matrix shape {a.shape}, expected {(degree, degree)}")
    return a


def is_unipotent(m: np.ndarray, p: int) -> bool:
    d = m.shape[0]
    n = (m.astype(np.int64) - np.eye(d, dtype=np.int64)) % p
    acc = n.copy()
    for _ in range(d - 1):
        if not acc.any():
            return True
        acc = (acc @ n) % p
    return not acc.any()


def batch_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(..., d, d) @ (..., d, d) mod p, computed exactly in int64."""
    return (a.astype(np.int64) @ b.astype(np.int64)) % p


def batch_inv(a: np.ndarray, p: int) -> np.ndarray:
    """Inverses of a batch of unipotent matrices via the nilpotent series."""
    d = a.shape[-1]
    eye = np.eye(d, dtype=np.int64)
    n = (a.astype(np.int64) - eye) % p
    acc = np.broadcast_to(eye, a.shape).copy()
    term = np.broadcast_to(eye, a.shape).copy()
    for k in range(1, d):
        term = (term @ n) % p
        if not term.any():
            break
        acc = (acc + (term if k % 2 == 0 else (p - 1) * term)) % p
    return acc


def commutator(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    ai = batch_inv(a[None], p)[0]
    bi = batch_inv(b[None], p)[0]
    return batch_mul(batch_mul(ai, bi, p), batch_mul(a, b, p), p)


class ElementSet:
    """An immutable, canonically sorted set of group elements."""

    __slots__ = ("p", "degree", "array", "_keys", "_digest")

    def __init__(self, p: int, degree: int, mats: np.ndarray):
        self.p = p
        self.degree = degree
        flat = np.ascontiguousarray(mats.reshape(len(mats), -1).astype(np.uint8))
        keys = [row.tobytes() for row in flat]
        order = sorted(range(len(keys)), key=keys.__getitem__)
        self.array = flat[order].reshape(-1, degree, degree)
        self.array.setflags(write=False)
        self._keys = frozenset(keys)
        h = hashlib.blake2b(digest_size=16)
        h.update(f"{p}:{degree}:".encode())
        h.update(self.array.tobytes())
        self._digest = h.hexdigest()

    def __len__(self) -> int:
        return len(self.array)

    def __contains__(self, item) -> bool:
        if isinstance(item, bytes):
            return item in self._keys
        return np.asarray(item, dtype=np.uint8).tobytes() in self._keys

    @property
    def digest(self) -> str:
        return self._digest

    @property
    def keys(self) -> frozenset:
        return self._keys

    def mats64(self) -> np.ndarray:
        return self.array.astype(np.int64)

    def least(self) -> np.ndarray:
        return self.array[0]

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSet) and self._digest == other._digest

    def __hash__(self):
        return hash(self._digest)


def _bfs_closure(p: int, degree: int, gens: list[np.ndarray], cap: int,
                 seed: np.ndarray | None = None) -> ElementSet:
    eye = np.eye(degree, dtype=np.int64)
    if seed is None:
        seed = eye[None]
    known: dict[bytes, None] = {}
    rows: list[np.ndarray] = []

    def absorb(batch: np.ndarray) -> list[np.ndarray]:
        fresh = []
        flat = batch.reshape(len(batch), -1).astype(np.uint8)
        for i, row in enumerate(flat):
            k = row.tobytes()
            if k not in known:
                known[k] = None
                rows.append(flat[i])
                fresh.append(batch[i])
        return fresh

    frontier = absorb(np.mod(seed, p))
    gens64 = [g.astype(np.int64) for g in gens]
    while frontier:
        batch = np.stack(frontier)
        frontier = []
        for g in gens64:
            prod = (batch @ g) % p
            frontier.extend(absorb(prod))
        if len(known) > cap:
            raise CapExceeded(cap, len(known))
    mats = np.stack(rows).reshape(-1, degree, degree) if rows else np.zeros((0, degree, degree), np.uint8)
    return ElementSet(p, degree, mats)


class UnipotentGroup:
    """Ambient group: closure of unipotent generator matrices over Z_p."""

    def __init__(self, p: int, degree: int, generators, name: str = "", cap: int = DEFAULT_CAP):
        check_prime(p)
        if p > 251:
            raise ValueError("p must fit in one byte")
        self.p = p
        self.degree = degree
        self.name = name
        self.cap = cap
        gens = [_as_mat(g, p, degree) for g in generators]
        for g in gens:
            if not is_unipotent(g, p):
                raise ValueError("generator is not unipotent")
        self.generators = gens
        self.elements = _bfs_closure(p, degree, gens, cap)
        self._join_cache: dict = {}
        self._comm_cache: dict = {}
        self._power_cache: dict = {}
        self._full = None

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.degree, dtype=np.int64)

    def order(self) -> int:
        return len(self.elements)

    def full_subgroup(self) -> "Subgroup":
        if self._full is None:
            self._full = Subgroup(self, self.generators, self.elements)
        return self._full

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, [], ElementSet(self.p, self.degree, self.identity[None]))

    def subgroup(self, gens, cap: int | None = None) -> "Subgroup":
        gens = [_as_mat(g, self.p, self.degree) for g in gens]
        elems = _bfs_closure(self.p, self.degree, gens, cap or self.cap)
        return Subgroup(self, gens, elems)

    def __repr__(self):
        label = self.name or "group"
        return f"UnipotentGroup({label}, p={self.p}, degree={self.degree}, order={self.order()})"


class Subgroup:
    """A subgroup of a UnipotentGroup, fully enumerated."""

    __slots__ = ("parent", "generators", "elements")

    def __init__(self, parent: UnipotentGroup, generators, elements: ElementSet):
        self.parent = parent
        self.generators = [np.mod(np.asarray(g, dtype=np.int64), parent.p) for g in generators]
        self.elements = elements

    def order(self) -> int:
        return len(self.elements)

    def order_exp(self) -> int:
        n = len(self.elements)
        e = 0
        while n > 1:
            n //= self.parent.p
            e += 1
        return e

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    @property
    def digest(self) -> str:
        return self.elements.digest

    def contains_element(self, m) -> bool:
        return m in self.elements

    def contains(self, other: "Subgroup") -> bool:
        if self.digest == other.digest:
            return True
        if len(other.elements) > len(self.elements):
            return False
        mine = self.elements.keys
        return all(k in mine for k in other.elements.keys)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and self.parent.p == other.parent.p
            and self.parent.degree == other.parent.degree
            and self.digest == other.digest
        )

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"Subgroup(order={self.order()}, degree={self.parent.degree}, p={self.parent.p})"


def reduced_generators(p: int, degree: int, candidates: list[np.ndarray], cap: int,
                       base: Subgroup | None = None) -> tuple[list[np.ndarray], ElementSet]:
    """Greedy generator thinning: keep a candidate only if it enlarges the closure.

    Kept lists stay O(log_p |result|), which keeps every later BFS cheap.
    """
    kept: list[np.ndarray] = [] if base is None else [g for g in base.generators]
    if base is None:
        elems = ElementSet(p, degree, np.eye(degree, dtype=np.int64)[None])
    else:
        elems = base.elements
    for c in candidates:
        c = np.mod(np.asarray(c, dtype=np.int64), p)
        if c.astype(np.uint8).tobytes() in elems.keys:
            continue
        kept.append(c)
        elems = _bfs_closure(p, degree, kept, cap, seed=elems.mats64())
    return kept, elems


def join(a: Subgroup, b: Subgroup, cap: int | None = None) -> Subgroup:
    """Subgroup generated by a and b together."""
    parent = a.parent
    cap = cap or parent.cap
    if a.contains(b):
        return a
    if b.contains(a):
        return b
    key = ("join",) + tuple(sorted((a.digest, b.digest)))
    cached = parent._join_cache.get(key)
    if cached is not None:
        return cached
    big, small = (a, b) if len(a.elements) >= len(b.elements) else (b, a)
    kept, elems = reduced_generators(parent.p, parent.degree, small.generators, cap, base=big)
    out = Subgroup(parent, kept, elems)
    parent._join_cache[key] = out
    return out


def commutator_subgroup(a: Subgroup, b: Subgroup, cap: int | None = None) -> Subgroup:
    """[a, b]: closure of all commutators between the two subgroups.

    Computed as the normal closure of generator-pair commutators under
    conjugation by the generators of both arguments.
    """
    parent = a.parent
    p, degree = parent.p, parent.degree
    cap = cap or parent.cap
    key = (a.digest, b.digest)
    cached = parent._comm_cache.get(key)
    if cached is not None:
        return cached
    seeds = []
    for x in a.generators:
        for y in b.generators:
            c = commutator(x, y, p)
            seeds.append(c)
    kept, elems = reduced_generators(p, degree, seeds, cap)
    conj = a.generators + b.generators
    conj_inv = [batch_inv(g[None], p)[0] for g in conj]
    while True:
        new = []
        for x in kept:
            for g, gi in zip(conj, conj_inv):
                y = batch_mul(batch_mul(gi, x, p), g, p)
                if y.astype(np.uint8).tobytes() not in elems.keys:
                    new.append(y)
        if not new:
            break
        kept, elems = reduced_generators(p, degree, new, cap,
                                         base=Subgroup(parent, kept, elems))
    out = Subgroup(parent, kept, elems)
    parent._comm_cache[key] = out
    parent._comm_cache[(b.digest, a.digest)] = out
    return out


def power_subgroup(a: Subgroup, k: int, cap: int | None = None) -> Subgroup:
    """Subgroup generated by all k-th powers of elements of a."""
    parent = a.parent
    p, degree = parent.p, parent.degree
    cap = cap or parent.cap
    key = (a.digest, k)
    cached = parent._power_cache.get(key)
    if cached is not None:
        return cached
    mats = a.elements.mats64()
    acc = np.broadcast_to(np.eye(degree, dtype=np.int64), mats.shape).copy()
    for _ in range(k):
        acc = (acc @ mats) % p
    flat = {row.tobytes(): m for row, m in zip(acc.astype(np.uint8).reshape(len(acc), -1), acc)}
    candidates = [flat[key_] for key_ in sorted(flat)]
    kept, elems = reduced_generators(p, degree, candidates, cap)
    out = Subgroup(parent, kept, elems)
    parent._power_cache[key] = out
    return out


def is_normal(sub: Subgroup, ambient: Subgroup | None = None) -> bool:
    """Normality check by conjugating generators by generators."""
    parent = sub.parent
    p = parent.p
    outer = ambient.generators if ambient is not None else parent.generators
    for g in outer:
        g = np.mod(np.asarray(g, dtype=np.int64), p)
        gi = batch_inv(g[None], p)[0]
        for x in sub.generators:
            y = batch_mul(batch_mul(gi, x, p), g, p)
            if y.astype(np.uint8).tobytes() not in sub.elements.keys:
                return False
    return True


def lower_central_series(g: UnipotentGroup, n: Subgroup | None = None,
                         cap: int | None = None) -> list[Subgroup]:
    """gamma_1 = N, gamma_{i+1} = [N, gamma_i]; nontrivial terms only."""
    n = n or g.full_subgroup()
    terms = [n]
    while not terms[-1].is_trivial():
        nxt = commutator_subgroup(n, terms[-1], cap)
        if nxt.order() == terms[-1].order():
            raise NotNormal("series failed to descend; input is not nilpotent?")
        if nxt.is_trivial():
            break
        terms.append(nxt)
    return terms


def exponent_p_central_series(g: UnipotentGroup, n: Subgroup | None = None,
                              cap: int | None = None) -> list[Subgroup]:
    """eta_1 = N, eta_{i+1} = [N, eta_i] * eta_i^p; nontrivial terms only."""
    n = n or g.full_subgroup()
    p = g.p
    terms = [n]
    while not terms[-1].is_trivial():
        nxt = join(commutator_subgroup(n, terms[-1], cap), power_subgroup(terms[-1], p, cap), cap)
        if nxt.order() == terms[-1].order():
            raise NotNormal("series failed to descend")
        if nxt.is_trivial():
            break
        terms.append(nxt)
    return terms


def jennings_series(g: UnipotentGroup, n: Subgroup | None = None,
                    cap: int | None = None) -> list[Subgroup]:
    """kappa_1 = N, kappa_i = [N, kappa_{i-1}] * kappa_{ceil(i/p)}^p."""
    n = n or g.full_subgroup()
    p = g.p
    terms = [n]
    # kappa may plateau (kappa_i = kappa_{i+1} between p-power jumps) but must
    # reach 1; the bound guards against a non-terminating recursion.
    bound = 4 * n.order_exp() + 4
    i = 1
    while not terms[-1].is_trivial():
        i += 1
        if i > bound:
            raise NotNormal("jennings series failed to terminate")
        half = terms[-(-i // p) - 1]
        nxt = join(commutator_subgroup(n, terms[-1], cap), power_subgroup(half, p, cap), cap)
        if nxt.is_trivial():
            break
        terms.append(nxt)
    return terms


class SectionBasis:
    """Z_p coordinates on a section A/B' where B' = B * (p-th powers of A).

    Enlarging the denominator by p-th powers makes the section an
    elementary abelian p-group, hence a Z_p vector space.  A coordinate
    table is built for every element of A, so coordinatizing is a dict
    lookup; lifting returns the lexicographically least element of the
    matching coset.
    """

    def __init__(self, num: Subgroup, den: Subgroup, cap: int | None = None):
        parent = num.parent
        p, degree = parent.p, parent.degree
        cap = cap or parent.cap
        if not num.contains(den):
            raise ValueError("denominator is not inside numerator")
        for x in num.generators:
            for y in num.generators:
                if commutator(x, y, p).astype(np.uint8).tobytes() not in den.elements.keys:
                    raise NotAbelianSection("section numerator/denominator is not abelian")
        self.parent = parent
        self.num = num
        self.den_given = den
        self.den = join(den, power_subgroup(num, p, cap), cap)
        self.p = p

        reps: list[np.ndarray] = []
        kept, elems = list(self.den.generators), self.den.elements
        for m in num.elements.array:
            if len(elems) == len(num.elements):
                break
            key = m.tobytes()
            if key in elems.keys:
                continue
            m64 = m.astype(np.int64)
            reps.append(m64)
            kept = kept + [m64]
            elems = _bfs_closure(p, degree, kept, cap, seed=elems.mats64())
        self.reps = reps
        self.dim = len(reps)

        base = self.den.elements.mats64()
        self._coords: dict[bytes, tuple[int, ...]] = {}
        self._coset_min: dict[tuple[int, ...], bytes] = {}
        for c in iproduct(range(p), repeat=self.dim):
            mat = np.eye(degree, dtype=np.int64)
            for ci, r in zip(c, reps):
                for _ in range(ci):
                    mat = (mat @ r) % p
            batch = (base @ mat) % p
            flat = batch.astype(np.uint8).reshape(len(batch), -1)
            least = None
            for row in flat:
                k = row.tobytes()
                self._coords[k] = c
                if least is None or k < least:
                    least = k
            self._coset_min[c] = least

    def coordinatize(self, m) -> np.ndarray:
        key = np.asarray(m, dtype=np.uint8).tobytes() if not isinstance(m, bytes) else m
        c = self._coords.get(key)
        if c is None:
            raise ValueError("element is not in the section numerator")
        return np.array(c, dtype=np.int64)

    def lift(self, coords) -> np.ndarray:
        c = tuple(int(x) % self.p for x in coords)
        if len(c) != self.dim:
            raise DimensionMismatch(f"expected {self.dim} coordinates")
        key = self._coset_min[c]
        d = self.parent.degree
        return np.frombuffer(key, dtype=np.uint8).reshape(d, d).astype(np.int64)

    def canonical_rep(self, m) -> np.ndarray:
        return self.lift(self.coordinatize(m))

    def preimage(self, space: Subspace, cap: int | None = None) -> Subgroup:
        """Subgroup of elements whose coordinates land in the subspace."""
        gens = list(self.den.generators) + [self.lift(row) for row in space.basis]
        kept, elems = reduced_generators(self.parent.p, self.parent.degree, gens,
                                         cap or self.parent.cap)
        return Subgroup(self.parent, kept, elems)


def make_ut(d: int, p: int, cap: int = DEFAULT_CAP, all_transvections: bool = False) -> UnipotentGroup:
    """Full upper unitriangular group UT(d, p) from transvection generators."""
    gens = []
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)] if all_transvections \
        else [(i, i + 1) for i in range(d - 1)]
    for i, j in pairs:
        m = np.eye(d, dtype=np.int64)
        m[i, j] = 1
        gens.append(m)
    return UnipotentGroup(p, d, gens, name=f"UT({d},{p})", cap=cap)


def make_heisenberg(ring, cap: int = DEFAULT_CAP) -> UnipotentGroup:
    """H(R) as block 3m x 3m unipotent matrices via the regular representation.

    Elements are [[I, M_a, M_c], [0, I, M_b], [0, 0, I]] with a, b, c in R;
    the group law works out to (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab').
    """
    p, m = ring.p, ring.dim
    d = 3 * m
    gens = []
    for i in range(m):
        mul = ring.mult_matrix(ring.basis_vector(i))
        for block in (0, 1):
            g = np.eye(d, dtype=np.int64)
            r0, c0 = (0, m) if block == 0 else (m, 2 * m)
            g[r0:r0 + m, c0:c0 + m] = mul
            gens.append(g)
    name = f"H({ring.name})" if getattr(ring, "name", "") else "H(R)"
    return UnipotentGroup(p, d, gens, name=name, cap=cap)


def group_from_spec(spec: dict, cap: int = DEFAULT_CAP) -> UnipotentGroup:
    """Build a group from the JSON wire format (row-major generator entries)."""
    p = int(spec["p"])
    degree = int(spec["degree"])
    gens = []
    for flat in spec["generators"]:
        a = np.asarray(flat, dtype=np.int64)
        if a.size != degree * degree:
            raise DimensionMismatch(f"generator has {a.size} entries, expected {degree * degree}")
        gens.append(a.reshape(degree, degree))
    return UnipotentGroup(p, degree, gens, name=str(spec.get("name", "")), cap=cap)


def group_to_spec(g: UnipotentGroup) -> dict:
    return {
        "p": g.p,
        "degree": g.degree,
        "generators": [[int(x) for x in gen.reshape(-1)] for gen in g.generators],
        "name": g.name,
    }
