"""Generating sets and Cayley-graph presentations of Z^d, spanning checks,
and Brillouin-zone construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import pi

import numpy as np

from .errors import DegenerateSet

IntVector = tuple  # tuple of ints, length d


def ivec(coords) -> IntVector:
    return tuple(int(c) for c in coords)


def neg(v: IntVector) -> IntVector:
    return tuple(-c for c in v)


@dataclass(frozen=True)
class GeneratingSet:
    """S_+ together with presentation metadata.

    ``include_inverses`` means S_+ = S_- (the listed set is closed under
    negation); otherwise S = S_+ u (-S_+).  ``relators`` are integer
    coefficient tuples over s_plus summing to the zero vector.  For Z^d every
    non-identity generator has infinite order, so the order classes collapse
    to a single class; ``order_classes`` keeps the bookkeeping for API
    symmetry.
    """

    dim: int
    s_plus: tuple
    include_inverses: bool = False
    self_loop: bool = False
    relators: tuple = ()

    def __post_init__(self):
        sp = tuple(ivec(v) for v in self.s_plus)
        object.__setattr__(self, "s_plus", sp)
        object.__setattr__(self, "relators", tuple(tuple(int(c) for c in r) for r in self.relators))
        if len(set(sp)) != len(sp):
            raise ValueError("s_plus vectors must be distinct")
        for v in sp:
            if len(v) != self.dim:
                raise ValueError("vector dimension mismatch")
            if all(c == 0 for c in v):
                raise ValueError("s_plus vectors must be nonzero")
        if self.include_inverses:
            missing = [v for v in sp if neg(v) not in sp]
            if missing:
                raise ValueError(f"include_inverses set but {missing[0]} has no inverse listed")
        for r in self.relators:
            if len(r) != len(sp):
                raise ValueError("relator length must match s_plus")
            total = tuple(sum(c * v[i] for c, v in zip(r, sp)) for i in range(self.dim))
            if any(t != 0 for t in total):
                raise ValueError(f"relator {r} does not evaluate to zero")

    def full_s(self) -> list:
        """S = S_+ u S_- as vectors (no self-loop entry)."""
        if self.include_inverses:
            return list(self.s_plus)
        out = list(self.s_plus)
        for v in self.s_plus:
            nv = neg(v)
            if nv not in out:
                out.append(nv)
        return out

    def order_classes(self) -> dict:
        return {None: tuple(self.s_plus)}  # None stands for infinite order


@dataclass
class BrillouinZone:
    """Halfspace representation: |k . normal| <= bound for every halfspace."""

    dim: int
    halfspaces: list          # list of (normal ndarray, bound float)
    duals: list               # list of dual sets, each a list of float vectors
    _bbox: np.ndarray = field(default=None, repr=False)

    def contains(self, k, eps: float = 1e-12) -> bool:
        k = np.asarray(k, dtype=float)
        return all(abs(k @ n) <= b + eps for n, b in self.halfspaces)

    def bounding_box(self) -> np.ndarray:
        """Per-axis bound array: |k_i| <= box[i] for every k in the zone."""
        if self._bbox is None:
            first = self.duals[0]
            prim = np.linalg.inv(np.array(first)).T  # rows: primal basis vectors
            box = np.zeros(self.dim)
            for h_t, h in zip(first, prim):
                box += pi * (np.linalg.norm(h_t) ** 2) * np.abs(h)
            self._bbox = box
        return self._bbox

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform points in the zone by rejection from the bounding box."""
        box = self.bounding_box()
        out = np.empty((n, self.dim))
        got = 0
        while got < n:
            draw = rng.uniform(-box, box, size=(max(64, 2 * (n - got)), self.dim))
            for k in draw:
                if self.contains(k):
                    out[got] = k
                    got += 1
                    if got == n:
                        break
        return out


def _hnf_diag(vectors, dim: int) -> list:
    """Diagonal of the column-style Hermite form of the integer matrix whose
    columns are the given vectors."""
    cols = [list(v) for v in vectors]
    diag = []
    row = 0
    while row < dim and cols:
        piv = next((j for j, c in enumerate(cols) if c[row] != 0), None)
        if piv is None:
            diag.append(0)
            row += 1
            continue
        cols[0], cols[piv] = cols[piv], cols[0]
        # gcd-reduce every other column against the pivot column
        for j in range(1, len(cols)):
            while cols[j][row] != 0:
                qf = cols[0][row] // cols[j][row]
                cols[0] = [a - qf * b for a, b in zip(cols[0], cols[j])]
                if cols[0][row] == 0:
                    cols[0], cols[j] = cols[j], cols[0]
                else:
                    qf = cols[j][row] // cols[0][row]
                    cols[j] = [b - qf * a for b, a in zip(cols[j], cols[0])]
        diag.append(abs(cols[0][row]))
        cols = [c for c in cols[1:] if any(c[row + 1:])]
        row += 1
    while len(diag) < dim:
        diag.append(0)
    return diag


def spans_lattice(gs: GeneratingSet) -> bool:
    """True iff integer combinations of S_+ u -S_+ generate all of Z^d
    (strict test: canonical diagonal form with unit diagonal)."""
    diag = _hnf_diag(gs.full_s(), gs.dim)
    return all(d == 1 for d in diag)


def presents_zd(gs: GeneratingSet) -> bool:
    """True iff the generated lattice has full rank d, i.e. the set is a
    valid presentation of Z^d after a basis change.  Index-k sublattices of
    Z^d (like the four-diagonal BCC set in its orthogonal coordinates) pass
    this test while failing the strict one."""
    diag = _hnf_diag(gs.full_s(), gs.dim)
    return all(d != 0 for d in diag)


def _independent_subsets(gs: GeneratingSet):
    sp = gs.s_plus
    d = gs.dim
    for idx in combinations(range(len(sp)), d):
        m = np.array([sp[i] for i in idx], dtype=float)
        if abs(np.linalg.det(m)) > 1e-9:
            yield idx, m


def brillouin_zone(gs: GeneratingSet) -> BrillouinZone:
    """Intersect the halfspaces -pi|h~|^2 <= k.h~ <= pi|h~|^2 over the duals
    of every maximal linearly independent subset of S_+."""
    halfspaces = []
    duals = []
    seen = set()
    for idx, m in _independent_subsets(gs):
        dual = np.linalg.inv(m).T  # rows satisfy dual[l] . m[j] = delta_lj
        duals.append([dual[i].copy() for i in range(gs.dim)])
        for h_t in dual:
            key = tuple(np.round(h_t, 12))
            if key in seen or tuple(np.round(-h_t, 12)) in seen:
                continue
            seen.add(key)
            halfspaces.append((h_t.copy(), pi * float(h_t @ h_t)))
    if not duals:
        raise DegenerateSet("no linearly independent subset of size d")
    return BrillouinZone(dim=gs.dim, halfspaces=halfspaces, duals=duals)


def difference_multiset(gs: GeneratingSet) -> dict:
    """Group ordered pairs (h, h') from S (plus e when self_loop) by their
    difference h - h'.  The zero difference is omitted (that is the
    normalization condition, not an off-diagonal one)."""
    s = gs.full_s()
    if gs.self_loop:
        s = s + [tuple(0 for _ in range(gs.dim))]
    out: dict = {}
    for h in s:
        for hp in s:
            diff = tuple(a - b for a, b in zip(h, hp))
            if all(c == 0 for c in diff):
                continue
            out.setdefault(diff, []).append((h, hp))
    return out


# --- JSON ------------------------------------------------------------------

def gs_to_json(gs: GeneratingSet) -> str:
    return json.dumps(
        {
            "dim": gs.dim,
            "s_plus": [list(v) for v in gs.s_plus],
            "include_inverses": gs.include_inverses,
            "self_loop": gs.self_loop,
            "relators": [list(r) for r in gs.relators],
        },
        sort_keys=True,
    )


def gs_from_json(s: str) -> GeneratingSet:
    d = json.loads(s)
    return GeneratingSet(
        dim=d["dim"],
        s_plus=tuple(tuple(v) for v in d["s_plus"]),
        include_inverses=d["include_inverses"],
        self_loop=d["self_loop"],
        relators=tuple(tuple(r) for r in d.get("relators", [])),
    )


def bz_to_json(bz: BrillouinZone) -> str:
    return json.dumps(
        {
            "dim": bz.dim,
            "halfspaces": [{"normal": list(map(float, n)), "bound": float(b)} for n, b in bz.halfspaces],
        },
        sort_keys=True,
    )
