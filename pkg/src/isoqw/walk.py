"""Quantum-walk representation, unitarity conditions, momentum symbol,
finite-torus oracle, position-space evolution and dispersion."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cayley import GeneratingSet, IntVector, difference_multiset, gs_from_json, gs_to_json
from .errors import DegeneratePoint, TorusTooSmall
from .matkernel import DEFAULT_TOL, polar_decompose

SELF_LOOP = "e"


@dataclass
class CoinMatrix:
    """A 2x2 transition matrix with lazily computed rank-one polar data."""

    matrix: np.ndarray
    tol: float = DEFAULT_TOL
    _polar: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=complex)

    def polar_cache(self):
        """(V, alpha, eta) with matrix = alpha * V |eta><eta| when rank one,
        None otherwise."""
        if self._polar is None:
            u, s, vh = np.linalg.svd(self.matrix)
            if s[0] <= self.tol or s[1] > self.tol:
                self._polar = (None,)
            else:
                v_unitary, _ = polar_decompose(self.matrix, self.tol)
                self._polar = (v_unitary, float(s[0]), vh[0].conj())
        return None if self._polar == (None,) else self._polar

    def modulus(self) -> np.ndarray:
        _, sv, vh = np.linalg.svd(self.matrix)
        return vh.conj().T @ np.diag(sv) @ vh


@dataclass
class QuantumWalk:
    """Generating set plus the transition-matrix assignment.

    ``coins`` maps every h in S (as an int tuple) to its 2x2 matrix; the key
    ``"e"`` holds the self-loop coin when the presentation has one.  Coins on
    S_+ u S_- must be nonzero; the self-loop coin may be zero.
    """

    gs: GeneratingSet
    coins: dict
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        clean = {}
        for k, v in self.coins.items():
            key = SELF_LOOP if k == SELF_LOOP else tuple(int(c) for c in k)
            clean[key] = np.asarray(v, dtype=complex)
            if clean[key].shape != (2, 2):
                raise ValueError("coins must be 2x2")
        self.coins = clean
        for h in self.gs.full_s():
            if h not in self.coins:
                raise ValueError(f"missing coin for generator {h}")
            if np.abs(self.coins[h]).max() <= self.tol:
                raise ValueError(f"coin for {h} is zero")
        if self.gs.self_loop and SELF_LOOP not in self.coins:
            self.coins[SELF_LOOP] = np.zeros((2, 2), dtype=complex)

    def coin_items(self):
        """(vector, matrix) pairs, the self-loop reported as the zero vector."""
        zero = tuple(0 for _ in range(self.gs.dim))
        out = [(h, self.coins[h]) for h in self.gs.full_s()]
        if self.gs.self_loop:
            out.append((zero, self.coins[SELF_LOOP]))
        return out

    def max_hop(self) -> int:
        return max(abs(c) for h, _ in self.coin_items() for c in h) or 1


@dataclass
class UnitarityReport:
    normalization_residual: float
    offdiag_residuals: dict
    tol: float

    @property
    def valid(self) -> bool:
        worst = max([self.normalization_residual] + list(self.offdiag_residuals.values()))
        return worst <= self.tol

    @property
    def max_residual(self) -> float:
        return max([self.normalization_residual] + list(self.offdiag_residuals.values()))


def check_unitarity(w: QuantumWalk) -> UnitarityReport:
    """Evaluate the normalization and off-diagonal unitarity conditions."""
    items = w.coin_items()
    ident = np.eye(2)
    s1 = sum(a @ a.conj().T for _, a in items) - ident
    s2 = sum(a.conj().T @ a for _, a in items) - ident
    norm_res = max(np.linalg.norm(s1), np.linalg.norm(s2))

    coin_of = {h: a for h, a in items}
    gs = w.gs
    # reuse the difference-multiset machinery, including the self-loop entry
    gs_for_diff = GeneratingSet(gs.dim, gs.s_plus, gs.include_inverses, gs.self_loop, gs.relators)
    off = {}
    for diff, pairs in difference_multiset(gs_for_diff).items():
        t1 = sum(coin_of[h] @ coin_of[hp].conj().T for h, hp in pairs)
        t2 = sum(coin_of[hp].conj().T @ coin_of[h] for h, hp in pairs)
        off[diff] = max(np.linalg.norm(t1), np.linalg.norm(t2))
    return UnitarityReport(float(norm_res), {k: float(v) for k, v in off.items()}, w.tol)


def momentum_symbol(w: QuantumWalk, k) -> np.ndarray:
    """A_k = sum_h e^{i h.k} A_h (the self-loop enters with phase 1)."""
    k = np.asarray(k, dtype=float)
    out = np.zeros((2, 2), dtype=complex)
    for h, a in w.coin_items():
        out += np.exp(1j * float(np.dot(h, k))) * a
    return out


def momentum_symbols(w: QuantumWalk, ks: np.ndarray) -> np.ndarray:
    """Vectorized momentum symbols for an (n, d) array of momenta."""
    ks = np.asarray(ks, dtype=float)
    items = w.coin_items()
    hs = np.array([h for h, _ in items], dtype=float)
    coins = np.array([a for _, a in items])
    phases = np.exp(1j * ks @ hs.T)  # (n, m)
    return np.einsum("nm,mab->nab", phases, coins)


def max_symbol_residual(w: QuantumWalk, ks: np.ndarray) -> float:
    """max_k || A_k^dag A_k - I || over the given momenta (Frobenius)."""
    aks = momentum_symbols(w, ks)
    prods = np.einsum("nba,nbc->nac", aks.conj(), aks) - np.eye(2)
    return float(np.sqrt((np.abs(prods) ** 2).sum(axis=(1, 2))).max())


def _eig_sorted(m: np.ndarray):
    lam, vec = np.linalg.eig(m)
    w = np.angle(lam)
    order = np.argsort(-w)
    return lam[order], w[order], vec[:, order]


def dispersion(w: QuantumWalk, k):
    """Eigenphases (w_plus, w_minus) of the momentum symbol at k."""
    lam, phases, _ = _eig_sorted(momentum_symbol(w, k))
    return float(phases[0]), float(phases[1])


def group_velocity(w: QuantumWalk, k, step: float = 1e-5):
    """Gradient of both dispersion branches by central differences.

    Branches at the shifted points are matched to the central ones by
    eigenvector overlap.  Raises DegeneratePoint within 10*step of a band
    crossing, where no smooth branch assignment exists.
    """
    k = np.asarray(k, dtype=float)
    lam0, w0, v0 = _eig_sorted(momentum_symbol(w, k))
    if abs(w0[0] - w0[1]) < 10 * step:
        raise DegeneratePoint(f"bands separated by {abs(w0[0]-w0[1]):.2e} at k={k}")
    grads = np.zeros((2, w.gs.dim))
    for axis in range(w.gs.dim):
        dk = np.zeros_like(k)
        dk[axis] = step
        deltas = []
        for sgn in (+1, -1):
            lam_s, _, v_s = _eig_sorted(momentum_symbol(w, k + sgn * dk))
            # overlap-based branch matching
            ov = np.abs(v0.conj().T @ v_s)
            cols = [int(np.argmax(ov[0])), 0]
            cols[1] = 1 - cols[0]
            # phase increments via the complex ratio (no wrapping issues)
            deltas.append([np.angle(lam_s[cols[b]] * np.conj(lam0[b])) for b in (0, 1)])
        for b in (0, 1):
            grads[b, axis] = (deltas[0][b] - deltas[1][b]) / (2 * step)
    return grads[0], grads[1]


def torus_operator(w: QuantumWalk, n_side: int) -> np.ndarray:
    """Dense matrix of the walk on the (Z_N)^d torus (brute-force oracle)."""
    if n_side < 2 * w.max_hop() + 1:
        raise TorusTooSmall(f"N={n_side} < {2 * w.max_hop() + 1} required to avoid aliasing")
    d = w.gs.dim
    n_sites = n_side ** d
    mat = np.zeros((2 * n_sites, 2 * n_sites), dtype=complex)
    sites = list(np.ndindex(*([n_side] * d)))
    index = {s: i for i, s in enumerate(sites)}
    for h, a in w.coin_items():
        for s, i in index.items():
            t = tuple((c + hc) % n_side for c, hc in zip(s, h))
            j = index[t]
            mat[2 * j:2 * j + 2, 2 * i:2 * i + 2] += a
    return mat


@dataclass
class TorusState:
    """Two-component amplitudes on the (Z_N)^d torus, stored densely."""

    n_side: int
    dim: int
    amplitudes: np.ndarray  # shape (2, N, ..., N)

    @staticmethod
    def point(n_side: int, dim: int, site, component: int = 0) -> "TorusState":
        amp = np.zeros((2,) + (n_side,) * dim, dtype=complex)
        amp[(component,) + tuple(int(c) % n_side for c in site)] = 1.0
        return TorusState(n_side, dim, amp)

    def norm(self) -> float:
        return float(np.sqrt((np.abs(self.amplitudes) ** 2).sum()))

    def site_amplitude(self, site) -> np.ndarray:
        return self.amplitudes[(slice(None),) + tuple(int(c) % self.n_side for c in site)]

    def support(self, tol: float = 1e-14) -> set:
        mask = (np.abs(self.amplitudes) ** 2).sum(axis=0) > tol
        return {tuple(int(c) for c in idx) for idx in np.argwhere(mask)}


def evolve(w: QuantumWalk, state: TorusState, steps: int) -> TorusState:
    """Apply the walk ``steps`` times via shifted coin applications -- the
    dense operator is never built."""
    if state.n_side < 2 * w.max_hop() + 1:
        raise TorusTooSmall(f"N={state.n_side} too small for this walk")
    psi = state.amplitudes
    items = w.coin_items()
    for _ in range(steps):
        new = np.zeros_like(psi)
        for h, a in items:
            moved = np.tensordot(a, psi, axes=([1], [0]))
            for axis, shift in enumerate(h):
                if shift:
                    moved = np.roll(moved, shift, axis=1 + axis)
            new += moved
        psi = new
    return TorusState(state.n_side, state.dim, psi)


# --- JSON walk files ---------------------------------------------------------

def walk_to_json(w: QuantumWalk) -> str:
    coins = {}
    for key, a in w.coins.items():
        name = key if key == SELF_LOOP else ",".join(str(c) for c in key)
        coins[name] = [[[float(x.real), float(x.imag)] for x in row] for row in a]
    return json.dumps(
        {
            "dim": w.gs.dim,
            "s_plus": [list(v) for v in w.gs.s_plus],
            "include_inverses": w.gs.include_inverses,
            "self_loop": w.gs.self_loop,
            "relators": [list(r) for r in w.gs.relators],
            "coins": coins,
        },
        sort_keys=True,
    )


def walk_from_json(s: str) -> QuantumWalk:
    d = json.loads(s)
    gs = GeneratingSet(
        dim=d["dim"],
        s_plus=tuple(tuple(v) for v in d["s_plus"]),
        include_inverses=d["include_inverses"],
        self_loop=d["self_loop"],
        relators=tuple(tuple(r) for r in d.get("relators", [])),
    )
    coins = {}
    for name, rows in d["coins"].items():
        key = SELF_LOOP if name == SELF_LOOP else tuple(int(c) for c in name.split(","))
        coins[key] = np.array([[complex(re, im) for re, im in row] for row in rows])
    return QuantumWalk(gs, coins)
