"""Coin-level symmetry checks: covariance, homogeneity, the uniqueness of
differences condition, and the admissible projective coin representations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .cayley import GeneratingSet, neg
from .errors import NotAnAction
from .matkernel import DEFAULT_TOL, ID2, PAULI_X, PAULI_Y, PAULI_Z, exact_vector, mat_vec
from .point_groups import PointGroup
from .walk import SELF_LOOP, QuantumWalk

EXCLUDED = "Excluded"


@dataclass
class SpinRep:
    """Map from group elements to 2x2 special-unitary matrices.

    ``projective`` is True when some product only closes up to a sign.
    """

    group: PointGroup
    mapping: dict  # element matrix -> ndarray
    projective: bool
    tol: float = DEFAULT_TOL

    def of(self, element_matrix) -> np.ndarray:
        return self.mapping[element_matrix]

    def is_faithful(self) -> bool:
        """Injective up to the projective sign."""
        mats = list(self.mapping.values())
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                if min(np.linalg.norm(mats[i] - mats[j]), np.linalg.norm(mats[i] + mats[j])) <= self.tol:
                    return False
        return True


def spin_rep(group: PointGroup, assignment: dict, tol: float = DEFAULT_TOL) -> SpinRep:
    """Build and validate a SpinRep from an explicit element -> matrix map."""
    mapping = {}
    for e in group.elements:
        if e.matrix not in assignment:
            raise ValueError("assignment must cover every group element")
        u = np.asarray(assignment[e.matrix], dtype=complex)
        if np.linalg.norm(u.conj().T @ u - ID2) > tol or abs(np.linalg.det(u) - 1) > tol:
            raise ValueError("images must be special unitary")
        mapping[e.matrix] = u
    projective = False
    from .matkernel import mat_mul
    for a in group.elements:
        for b in group.elements:
            prod = mat_mul(a.matrix, b.matrix)
            lhs = mapping[a.matrix] @ mapping[b.matrix]
            target = mapping[prod]
            if np.linalg.norm(lhs - target) <= tol:
                continue
            if np.linalg.norm(lhs + target) <= tol:
                projective = True
                continue
            raise ValueError("assignment is not a projective representation")
    return SpinRep(group, mapping, projective, tol)


@dataclass
class PermutationAction:
    """Action of a point group on the indices of S_+ (exact)."""

    group: PointGroup
    gs: GeneratingSet
    perms: dict  # element matrix -> tuple of target indices

    @property
    def transitive(self) -> bool:
        n = len(self.gs.s_plus)
        reach = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for p in self.perms.values():
                j = p[i]
                if j not in reach:
                    reach.add(j)
                    frontier.append(j)
        return len(reach) == n


def induced_permutation(group: PointGroup, gs: GeneratingSet) -> PermutationAction:
    """Permutation of S_+ induced by the 3D matrices acting on the generator
    vectors (vectors of lower dimension are zero-padded)."""
    vecs = [exact_vector(tuple(v) + (0,) * (3 - gs.dim)) for v in gs.s_plus]
    index = {v: i for i, v in enumerate(vecs)}
    perms = {}
    for e in group.elements:
        targets = []
        for v in vecs:
            image = mat_vec(e.matrix, v)
            if image not in index:
                raise NotAnAction(f"element maps generator {v} outside S_+")
            targets.append(index[image])
        perms[e.matrix] = tuple(targets)
    return PermutationAction(group, gs, perms)


def _signed_coins(w: QuantumWalk):
    """coins keyed by s_plus index with sign, plus the self-loop."""
    return {i: w.coins[h] for i, h in enumerate(w.gs.s_plus)}


def check_covariance(w: QuantumWalk, rep: SpinRep, act: PermutationAction) -> bool:
    """Eq.-level covariance: conjugating every coin by U_l reproduces the coin
    of the permuted generator, for every group element (inverses included)."""
    if rep.group is not act.group and rep.group.name != act.group.name:
        raise ValueError("rep and action must be over the same group")
    sp = act.gs.s_plus
    tol = w.tol
    for e in rep.group.elements:
        u = rep.of(e.matrix)
        p = act.perms[e.matrix]
        for i, h in enumerate(sp):
            target = sp[p[i]]
            if np.linalg.norm(w.coins[target] - u @ w.coins[h] @ u.conj().T) > tol:
                return False
            if not act.gs.include_inverses:
                if np.linalg.norm(w.coins[neg(target)] - u @ w.coins[neg(h)] @ u.conj().T) > tol:
                    return False
        if act.gs.self_loop:
            a_e = w.coins[SELF_LOOP]
            if np.linalg.norm(a_e - u @ a_e @ u.conj().T) > tol:
                return False
    return True


def check_homogeneity(w: QuantumWalk, rep: SpinRep, act: PermutationAction) -> bool:
    """[U_l, A_h] must be nonzero whenever l moves h (h in S_+)."""
    sp = act.gs.s_plus
    for e in rep.group.elements:
        u = rep.of(e.matrix)
        p = act.perms[e.matrix]
        for i, h in enumerate(sp):
            if p[i] == i:
                continue
            a = w.coins[h]
            if np.linalg.norm(u @ a - a @ u) <= w.tol:
                return False
    return True


# --- uniqueness-of-differences (Eq. 21) --------------------------------------


def _as_tuple_vectors(vectors) -> list:
    return [tuple(v) for v in vectors]


def unique_difference_condition(gs: GeneratingSet, subgroup_orbit, full_orbit) -> bool:
    """Exact check: every representation h_i - h_j = h_l - h_m with h_i != h_j
    from the subgroup orbit and h_l, h_m drawn from {0} u (+-full_orbit)
    satisfies (h_i = h_l) or (h_i = -h_m)."""
    return find_e21_violation(gs, subgroup_orbit, full_orbit) is None


def find_e21_violation(gs: GeneratingSet, subgroup_orbit, full_orbit) -> Optional[tuple]:
    """First violating tuple (h_i, h_j, h_l, h_m) in deterministic order, or
    None when the condition holds.  Brute-force quadruple loop; exact."""
    sub = _as_tuple_vectors(subgroup_orbit)
    full = _as_tuple_vectors(full_orbit)
    if not set(sub) <= set(full):
        raise ValueError("subgroup orbit must be contained in the full orbit")
    zero = tuple(0 for _ in range(len(full[0])))
    pool = [zero] + full + [neg(v) for v in full if neg(v) != v]
    pool = list(dict.fromkeys(pool))
    for hi in sub:
        for hj in sub:
            if hi == hj:
                continue
            diff = tuple(a - b for a, b in zip(hi, hj))
            for hl in pool:
                for hm in pool:
                    if tuple(a - b for a, b in zip(hl, hm)) != diff:
                        continue
                    if hi == hl or hi == neg(hm):
                        continue
                    return (hi, hj, hl, hm)
    return None


def unique_difference_hashmap(gs: GeneratingSet, subgroup_orbit, full_orbit) -> bool:
    """Independent implementation grouping pairs by difference in a dict;
    used to cross-check the brute-force loop."""
    sub = _as_tuple_vectors(subgroup_orbit)
    full = _as_tuple_vectors(full_orbit)
    zero = tuple(0 for _ in range(len(full[0])))
    pool = list(dict.fromkeys([zero] + full + [neg(v) for v in full]))
    by_diff: dict = {}
    for hl in pool:
        for hm in pool:
            d = tuple(a - b for a, b in zip(hl, hm))
            by_diff.setdefault(d, []).append((hl, hm))
    for hi in sub:
        for hj in sub:
            if hi == hj:
                continue
            d = tuple(a - b for a, b in zip(hi, hj))
            for hl, hm in by_diff.get(d, []):
                if hi != hl and hi != neg(hm):
                    return False
    return True


_TAGS_ALL = ["H", "J1", "J2", "J3", "J4", "TrivialI"]


def admissible_coin_reps(k_group: PointGroup, e21_holds: bool):
    """Admissible coin-representation classes for the subgroup K.

    With the uniqueness condition in force the options narrow by the abstract
    type of K; without it the condition is vacuous and every class remains.
    """
    if not e21_holds:
        return list(_TAGS_ALL)
    n = len(k_group)
    orders = sorted(e.order for e in k_group.elements)
    if n == 1:
        return ["TrivialI"]
    if n == 2:
        return ["J1", "J2"]
    if n == 3:
        return EXCLUDED
    if n == 4 and max(orders) == 4:
        return ["J3", "J4"]
    if n == 4:
        return ["H"]
    return EXCLUDED


# --- named representations ---------------------------------------------------


def rep_H(klein_group: PointGroup) -> SpinRep:
    """The Heisenberg-group representation {I, i sx, i sy, i sz} of a Klein
    four-group of pi rotations about the coordinate axes."""
    from .matkernel import exact_matrix, mat_identity

    x1 = exact_matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    x2 = exact_matrix([[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    x3 = exact_matrix([[-1, 0, 0], [0, -1, 0], [0, 0, 1]])
    assignment = {
        mat_identity(3): ID2,
        x1: 1j * PAULI_X,
        x2: 1j * PAULI_Y,
        x3: 1j * PAULI_Z,
    }
    return spin_rep(klein_group, assignment)


def rep_J1(z2_group: PointGroup) -> SpinRep:
    """{I, i sx} on a two-element group."""
    from .matkernel import mat_identity

    ident = mat_identity(3)
    assignment = {}
    for e in z2_group.elements:
        assignment[e.matrix] = ID2 if e.matrix == ident else 1j * PAULI_X
    return spin_rep(z2_group, assignment)


def rep_J2(z2_group: PointGroup, v_h1: np.ndarray) -> SpinRep:
    """{I, -V (i sx) V^dag}, instantiated from a walk's polar unitary."""
    from .matkernel import mat_identity

    ident = mat_identity(3)
    u = -v_h1 @ (1j * PAULI_X) @ v_h1.conj().T
    assignment = {}
    for e in z2_group.elements:
        assignment[e.matrix] = ID2 if e.matrix == ident else u
    return spin_rep(z2_group, assignment)


def rep_J3(z4_group: PointGroup) -> SpinRep:
    """{I, i sx, -I, -i sx} on a cyclic group of order four."""
    from .matkernel import mat_identity, mat_mul

    ident = mat_identity(3)
    gen = next(e.matrix for e in z4_group.elements if e.order == 4)
    images = {ident: ID2}
    powers = {1: gen, 2: mat_mul(gen, gen)}
    powers[3] = mat_mul(powers[2], gen)
    images[powers[1]] = 1j * PAULI_X
    images[powers[2]] = -ID2
    images[powers[3]] = -1j * PAULI_X
    return spin_rep(z4_group, images)


def rep_J4(z4_group: PointGroup, v_h1: np.ndarray) -> SpinRep:
    from .matkernel import mat_identity, mat_mul

    ident = mat_identity(3)
    gen = next(e.matrix for e in z4_group.elements if e.order == 4)
    u = -v_h1 @ (1j * PAULI_X) @ v_h1.conj().T
    images = {ident: ID2, gen: u}
    sq = mat_mul(gen, gen)
    images[sq] = -ID2
    images[mat_mul(sq, gen)] = -u
    return spin_rep(z4_group, images)


def rep_trivial(group: PointGroup) -> SpinRep:
    return SpinRep(group, {e.matrix: ID2.copy() for e in group.elements}, projective=False)
