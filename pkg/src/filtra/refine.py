"""Filter refinement through ring invariants of the graded Lie ring.

One round: take the leading nonzero component L_s of the graded Lie
ring, form the self-bracket bimap L_s x L_s -> L_{2s}, compute the
configured scalar ring (adjoint, centroid, or derivations), pass to a
unital matrix algebra acting on L_s, and intersect annihilators of
composition factors to get its Jacobson radical J.  The subspaces
L_s J^i are invariant under every filter-respecting automorphism, so
their preimages H_i refine the filter: they are appended as new
generators at indices (s, i) one coordinate deeper, every old supported
index is kept at (u, 0), and the filter is regenerated.  Iterating
until no round inserts anything gives the stable refinement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algrep import (
    MatAlgebra,
    RadicalData,
    algebra_closure,
    embed_adjoint_pairs,
    embed_centroid_triples,
    jacobson_radical,
    verify_radical,
)
from .bimap import ScalarRing, solve_ring
from .errors import ClosureViolation, FiltraError, NoNontrivialComponent
from .filters import Filter, generate, verify_axioms, eta_filter
from .group import Subgroup, UnipotentGroup, commutator_subgroup
from .liering import GradedLieRing
from .modlinalg import Subspace
from .monoid import Index

METHODS = ("adjoint", "centroid", "derivation")


@dataclass
class RingData:
    """Scalar ring of the leading self-bracket, its enveloping matrix
    algebra on L_s, and the radical action subspaces L_s J^i."""

    method: str
    ring: ScalarRing
    algebra: MatAlgebra
    radical: RadicalData
    acting_powers: list[Subspace]

    @property
    def ring_dim(self) -> int:
        return self.ring.dim

    def radical_chain_dims(self) -> list[int]:
        return self.radical.chain_dims()


def _x_part(mat: np.ndarray, a: int) -> np.ndarray:
    return mat[:a, :a]


def ring_at(lie: GradedLieRing, s: Index, method: str, check: bool = False,
            rng: np.random.Generator | None = None) -> RingData:
    if method not in METHODS:
        raise ValueError(f"unknown ring method {method!r}")
    p = lie.p
    tensor = lie.product_tensor(s, s)
    a = tensor.shape[0]
    ring = solve_ring(tensor, p, method)
    if method == "adjoint":
        emb = embed_adjoint_pairs(ring.members, p)
        alg = algebra_closure(emb, p, 2 * a, unital=True)
        if alg.dim != ring.dim:
            raise ClosureViolation("adjoint ring span is not multiplicatively closed")
    elif method == "centroid":
        emb = embed_centroid_triples(ring.members, p)
        alg = algebra_closure(emb, p, 2 * a + tensor.shape[2], unital=True)
        if alg.dim != ring.dim:
            raise ClosureViolation("centroid span is not multiplicatively closed")
    else:
        xs = [m[0] for m in ring.members]
        alg = algebra_closure(xs, p, a, unital=True)
    rad = jacobson_radical(alg, rng)
    if check:
        if not ring.has_identity() or not ring.satisfies_identity():
            raise FiltraError(f"{method} ring failed its defining identity")
        if method != "derivation" and not ring.closed():
            raise FiltraError(f"{method} ring is not closed under its product")
        bad = verify_radical(alg, rad)
        if bad:
            raise FiltraError(f"radical verification failed: {bad}")
    powers = []
    for level in rad.chain:
        rows = []
        for vec in level.basis:
            x = _x_part(vec.reshape(alg.n, alg.n), a)
            rows.extend(x % p)
        powers.append(Subspace(p, a, rows))
    return RingData(method, ring, alg, rad, powers)


@dataclass
class RefineRound:
    filter: Filter
    proper: bool
    index: Index | None = None
    section_dim: int = 0
    ring_dim: int = 0
    radical_chain_dims: list[int] = field(default_factory=list)
    inserted: list[int] = field(default_factory=list)


def refine_once(f: Filter, method: str = "adjoint", cap: int | None = None,
                check: bool = False, rng: np.random.Generator | None = None) -> RefineRound:
    lie = GradedLieRing(f, cap)
    s = lie.leading_index()
    if s is None:
        raise NoNontrivialComponent("filter has no nonzero graded component")
    rd = ring_at(lie, s, method, check=check, rng=rng)
    sec = lie.section(s)
    plus_digest = f.plus(s).digest
    a = sec.dim
    hs: list[Subgroup] = []
    spaces = rd.acting_powers + [Subspace(lie.p, a, [])]
    for space in spaces:
        h = sec.preimage(space, cap)
        hs.append(h)
        if h.digest == plus_digest:
            break
    if hs[0].digest == plus_digest:
        return RefineRound(f, False, s, a, rd.ring_dim, rd.radical_chain_dims())
    dom: dict[Index, Subgroup] = {u + (0,): f.support[u] for u in f.keys}
    for i, h in enumerate(hs, start=1):
        dom[s + (i,)] = h
    newf = generate(f.ambient, f.dim + 1, dom, cap, persistent=(s,)).compact()
    if check:
        report = verify_axioms(newf, cap)
        if not report.ok:
            raise FiltraError(f"refined filter failed verification: {report.violations}")
    return RefineRound(newf, True, s, a, rd.ring_dim, rd.radical_chain_dims(),
                       [h.order_exp() for h in hs])


@dataclass
class StableResult:
    filter: Filter
    rounds: list[RefineRound]
    converged: bool

    @property
    def round_count(self) -> int:
        return len(self.rounds)


def refine_stable(f: Filter, method: str = "adjoint", max_rounds: int = 16,
                  cap: int | None = None, check: bool = False,
                  rng: np.random.Generator | None = None) -> StableResult:
    cur = f
    rounds: list[RefineRound] = []
    for _ in range(max_rounds):
        r = refine_once(cur, method, cap, check, rng)
        if not r.proper:
            return StableResult(cur, rounds, True)
        rounds.append(r)
        cur = r.filter
    return StableResult(cur, rounds, False)


def fingerprint(group: UnipotentGroup, method: str = "adjoint", cap: int | None = None,
                max_rounds: int = 16, check: bool = False) -> dict:
    """Isomorphism-invariant summary from the stable refinement of eta."""
    f = eta_filter(group, cap=cap)
    stable = refine_stable(f, method, max_rounds, cap, check)
    if not stable.converged:
        raise FiltraError(f"refinement did not stabilize within {max_rounds} rounds")
    chain = stable.filter.chain()
    factor_dims = [chain[i].order_exp() - chain[i + 1].order_exp()
                   for i in range(len(chain) - 1)]
    lie = GradedLieRing(stable.filter, cap)
    s = lie.leading_index()
    out = {
        "p": group.p,
        "order_exp": group.full_subgroup().order_exp(),
        "method": method,
        "length": stable.filter.length(),
        "factor_dims": factor_dims,
        "rounds": len(stable.rounds),
    }
    if s is not None:
        rd = ring_at(lie, s, method)
        out["ring_dims"] = {"ring": rd.ring_dim, "radical_chain": rd.radical_chain_dims()}
    else:
        out["ring_dims"] = {"ring": 0, "radical_chain": []}
    return out


def hyperplane_witness(f: Filter, cap: int | None = None) -> tuple[Subgroup, bool] | None:
    """Preimage of L_s J^i for the half radical power (J^i != 0, J^2i = 0),
    checked against the third term of the flattened chain.  Returns None
    when the adjoint radical is trivial."""
    lie = GradedLieRing(f, cap)
    s = lie.leading_index()
    if s is None:
        return None
    rd = ring_at(lie, s, "adjoint")
    r = len(rd.radical.chain) + 1
    if r < 2:
        return None
    i = -(-r // 2)
    space = rd.acting_powers[i - 1] if i - 1 < len(rd.acting_powers) \
        else Subspace(lie.p, lie.dim(s), [])
    h = lie.section(s).preimage(space, cap)
    chain = f.chain()
    target = chain[2] if len(chain) > 2 else f.ambient.trivial_subgroup()
    ok = target.contains(commutator_subgroup(h, h, cap))
    return h, ok
