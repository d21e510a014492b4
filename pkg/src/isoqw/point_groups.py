"""Finite subgroups of GL(3,Z)-conjugacy classes inside O(3), their exact
orthogonal representations, and vector orbits.

The catalog covers the groups supporting isotropic walk candidates on Z^d for
d <= 3: trivial, Z_n (n in {2,3,4,6}), D_n (n in {1,2,3,4,6}), A4, S4 and the
direct products of each with Z2 (adjoining -I).  Order-4 and order-6 rotation
generators come in two representation flavours R_{theta,+} / R_{theta,-}; the
sign is selected with a name suffix, e.g. ``Z4-``.

Everything here is exact: entries live in Q(sqrt(3)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NotAGroup, UnknownGroup, ZeroSeed
from .matkernel import (
    HALF,
    ONE,
    SQRT3_HALF,
    ZERO,
    ExactMatrix,
    ExactVector,
    QSqrt3,
    element_order,
    exact_matrix,
    exact_vector,
    is_orthogonal,
    mat_identity,
    mat_mul,
    mat_neg,
    mat_to_float,
    mat_transpose,
    mat_vec,
    sqrt_positive,
)


@dataclass(frozen=True)
class GroupElement3:
    """Exact orthogonal matrix of finite order."""

    matrix: ExactMatrix
    order: int

    @staticmethod
    def of(matrix: ExactMatrix) -> "GroupElement3":
        return GroupElement3(matrix, element_order(matrix))


@dataclass(frozen=True)
class PointGroup:
    name: str
    elements: tuple[GroupElement3, ...]
    generators: tuple[GroupElement3, ...]

    def __len__(self):
        return len(self.elements)

    def matrices(self) -> list[ExactMatrix]:
        return [e.matrix for e in self.elements]

    def contains_matrix(self, m: ExactMatrix) -> bool:
        return any(e.matrix == m for e in self.elements)

    def subgroup(self, matrices: Sequence[ExactMatrix], name: str) -> "PointGroup":
        elems = tuple(GroupElement3.of(m) for m in matrices)
        for e in elems:
            if not self.contains_matrix(e.matrix):
                raise NotAGroup(f"{name}: matrix not in parent group")
        return PointGroup(name, elems, elems)


@dataclass(frozen=True)
class Orbit:
    seed: ExactVector
    vectors: tuple[ExactVector, ...]
    stabilizer_size: int


# --- generator matrices ----------------------------------------------------

X1 = exact_matrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
R_CYCLIC = exact_matrix([[0, 0, 1], [1, 0, 0], [0, 1, 0]])  # (x,y,z) -> (z,x,y)
C_SWAP = exact_matrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
MINUS_I = mat_neg(mat_identity(3))

_COS_SIN = {
    1: (ONE, ZERO),
    2: (-ONE, ZERO),
    3: (-HALF, SQRT3_HALF),
    4: (ZERO, ONE),
    6: (HALF, SQRT3_HALF),
}


def rotation_z(n: int, s: int) -> ExactMatrix:
    """R_{2pi/n, s}: rotation by 2pi/n in the xy-plane, sign s on the z-axis."""
    c, sn = _COS_SIN[n]
    return exact_matrix(
        [[c, -sn, 0], [sn, c, 0], [0, 0, s]]
    )


def reflection_xy(r: int) -> ExactMatrix:
    """S_{0, r}: planar reflection across the x-axis, sign r on the z-axis."""
    return exact_matrix([[1, 0, 0], [0, -1, 0], [0, 0, r]])


def closure(generators: Sequence[ExactMatrix], cap: int = 200) -> list[ExactMatrix]:
    """All products of the generators (finite group assumed)."""
    elems = [mat_identity(3)]
    seen = {elems[0]}
    frontier = list(elems)
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                p = mat_mul(m, g)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
                    if len(seen) > cap:
                        raise NotAGroup("closure exceeded cap; not a small finite group")
        elems.extend(nxt)
        frontier = nxt
    return elems


_EXPECTED_ORDER = {
    "Trivial": 1, "Z2": 2, "Z3": 3, "Z4": 4, "Z6": 6,
    "D1": 2, "D2": 4, "D2r": 4, "D3": 6, "D4": 8, "D6": 12,
    "A4": 12, "S4": 24, "S4m": 24,
}


def _parse_name(name: str):
    base = name
    with_z2 = False
    if base.endswith("xZ2"):
        base, with_z2 = base[:-3], True
    sign = 1
    if base and base[-1] in "+-":
        sign = 1 if base[-1] == "+" else -1
        base = base[:-1]
    return base, sign, with_z2


def build_group(name: str) -> PointGroup:
    """Construct a catalog group from its name.

    Names: ``Trivial``, ``Z2``, ``Z3``, ``Z4``, ``Z6``, ``D1`` .. ``D6``,
    ``A4``, ``S4``; rotation-sign variants take a ``+``/``-`` suffix
    (``Z4-``); direct products with Z2 (central inversion) take ``xZ2``.
    """
    base, sign, with_z2 = _parse_name(name)
    if base == "Trivial":
        gens: list[ExactMatrix] = []
    elif base == "Z2":
        gens = [mat_neg(mat_identity(3))] if sign < 0 else [rotation_z(2, 1)]
    elif base in ("Z3", "Z4", "Z6"):
        n = int(base[1])
        gens = [rotation_z(n, sign)]
    elif base == "D1":
        gens = [reflection_xy(1)]
    elif base == "D2r":
        # rotation Klein four-group {I, X1, X2, X3} (pi rotations, det +1)
        gens = [X1, rotation_z(2, 1)]
    elif base in ("D2", "D3", "D4", "D6"):
        n = int(base[1])
        gens = [rotation_z(n, sign), reflection_xy(1)]
    elif base == "A4":
        gens = [X1, R_CYCLIC]
    elif base == "S4":
        # proper-rotation form: orbits are full signed permutations
        gens = [X1, R_CYCLIC, mat_neg(C_SWAP)]
    elif base == "S4m":
        # mixed-determinant form A4 u C.A4: the automorphism group of the
        # four-diagonal generating set (it preserves S_+ setwise)
        gens = [X1, R_CYCLIC, C_SWAP]
    else:
        raise UnknownGroup(name)
    if with_z2:
        gens = gens + [MINUS_I]

    mats = closure(gens) if gens else [mat_identity(3)]
    expected = _EXPECTED_ORDER.get(base)
    if expected is not None:
        want = expected * (2 if with_z2 else 1)
        if len(mats) != want and with_z2:
            # -I already inside the base group: the product is not direct
            raise UnknownGroup(f"{name}: -I lies in the base group, product is not direct")
        if len(mats) != want:
            raise NotAGroup(f"{name}: closure has order {len(mats)}, expected {want}")
    for m in mats:
        if not is_orthogonal(m):
            raise NotAGroup(f"{name}: non-orthogonal element")
    elements = tuple(GroupElement3.of(m) for m in sorted(mats, key=_mat_sort_key))
    generators = tuple(GroupElement3.of(g) for g in gens)
    return PointGroup(name, elements, generators)


def _scalar_sort_key(x: QSqrt3):
    return (x.a.numerator, x.a.denominator, x.b.numerator, x.b.denominator)


def _mat_sort_key(m: ExactMatrix):
    return tuple(_scalar_sort_key(x) for row in m for x in row)


def _vec_sort_key(v: ExactVector):
    return tuple(_scalar_sort_key(x) for x in v)


def orbit(group: PointGroup, seed) -> Orbit:
    """Deduplicated exact orbit of ``seed``, sorted for deterministic output."""
    seed = exact_vector(seed)
    if all(x.is_zero() for x in seed):
        raise ZeroSeed("orbit seed must be nonzero")
    vecs = {mat_vec(e.matrix, seed) for e in group.elements}
    ordered = tuple(sorted(vecs, key=_vec_sort_key))
    stab = len(group) // len(ordered)
    return Orbit(seed=seed, vectors=ordered, stabilizer_size=stab)


def orthogonalize_rep(matrices: Sequence[ExactMatrix]) -> list[np.ndarray]:
    """Conjugate a finite (possibly non-orthogonal) integer matrix group into
    an orthogonal representation via P = sum M^T M and M -> P^(1/2) M P^(-1/2).

    The output is floating point; the conjugation preserves products.
    """
    mats = list(matrices)
    index = {m: i for i, m in enumerate(mats)}
    for m1 in mats:
        for m2 in mats:
            if mat_mul(m1, m2) not in index:
                raise NotAGroup("input matrices are not closed under multiplication")
    n = len(mats[0])
    p = np.zeros((n, n))
    for m in mats:
        f = mat_to_float(m)
        p += f.T @ f
    p_half = sqrt_positive(p)
    p_half_inv = np.linalg.inv(p_half)
    return [p_half @ mat_to_float(m) @ p_half_inv for m in mats]


def ternary_subgroups(group: PointGroup) -> list[PointGroup]:
    """All order-3 cyclic subgroups, one entry per subgroup (not per generator)."""
    seen: set[frozenset] = set()
    out = []
    ident = mat_identity(3)
    for e in group.elements:
        if e.order != 3:
            continue
        sq = mat_mul(e.matrix, e.matrix)
        key = frozenset({e.matrix, sq})
        if key in seen:
            continue
        seen.add(key)
        mats = [ident, e.matrix, sq]
        out.append(group.subgroup(mats, f"{group.name}:Z3#{len(out)}"))
    return out


def catalog(dim: int) -> list[str]:
    """Group names from the finite-subgroup catalog for each dimension."""
    if dim == 1:
        return ["Trivial", "Z2"]
    if dim == 2:
        # planar groups are realized via their z-trivial 3D embeddings
        return ["Trivial", "Z2", "Z3", "Z4", "Z6", "D1", "D2", "D3", "D4", "D6"]
    if dim == 3:
        base = ["Z2", "Z2-", "Z3", "Z4", "Z4-", "Z6", "Z6-",
                "D1", "D2", "D2r", "D3", "D4", "D4-", "D6", "D6-", "A4", "S4", "S4m"]
        prods = []
        for b in base + ["Trivial"]:
            try:
                build_group(b + "xZ2")
            except (UnknownGroup, NotAGroup):
                continue
            prods.append(b + "xZ2")
        return ["Trivial"] + base + prods
    raise ValueError("dim must be 1, 2 or 3")


# --- JSON serialization ----------------------------------------------------

def _matrix_to_json(m: ExactMatrix):
    return [[str(x) for x in row] for row in m]


def _matrix_from_json(rows) -> ExactMatrix:
    return tuple(tuple(QSqrt3.parse(x) for x in row) for row in rows)


def group_to_json(g: PointGroup) -> str:
    return json.dumps(
        {
            "name": g.name,
            "generators": [_matrix_to_json(e.matrix) for e in g.generators],
            "elements": [_matrix_to_json(e.matrix) for e in g.elements],
        },
        sort_keys=True,
    )


def group_from_json(s: str) -> PointGroup:
    d = json.loads(s)
    elements = tuple(GroupElement3.of(_matrix_from_json(m)) for m in d["elements"])
    generators = tuple(GroupElement3.of(_matrix_from_json(m)) for m in d["generators"])
    return PointGroup(d["name"], elements, generators)


def orbit_to_json(o: Orbit) -> str:
    return json.dumps(
        {
            "seed": [str(x) for x in o.seed],
            "vectors": [[str(x) for x in v] for v in o.vectors],
            "stabilizer_size": o.stabilizer_size,
        },
        sort_keys=True,
    )


def orbit_from_json(s: str) -> Orbit:
    d = json.loads(s)
    return Orbit(
        seed=tuple(QSqrt3.parse(x) for x in d["seed"]),
        vectors=tuple(tuple(QSqrt3.parse(x) for x in v) for v in d["vectors"]),
        stabilizer_size=d["stabilizer_size"],
    )
