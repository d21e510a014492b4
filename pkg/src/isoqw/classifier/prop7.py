"""The closed-form admissible walk families for d = 1, 2, 3.

Family parameters:

* d = 1: reals (n, m) with n^2 + m^2 = 1, n > 0, m >= 0, and a unitary V
  (arbitrary for the minimal presentation, commuting with sigma_x when the
  inverses are included in S_+).
* d = 2: branch in {1, 2} and a unitary V (commuting with sigma_x for
  branch 1 / sigma_z for branch 2 in the two-generator presentation;
  proportional to the identity in the four-generator one).
* d = 3: chirality +1 or -1; the eight coins are fixed numbers.
"""

from __future__ import annotations

import numpy as np

from ..cayley import GeneratingSet
from ..errors import InvalidFamilyParams
from ..matkernel import DEFAULT_TOL, ID2, PAULI_X, PAULI_Z
from ..walk import SELF_LOOP, QuantumWalk

BCC_SPLUS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))


def bcc_generating_set() -> GeneratingSet:
    return GeneratingSet(
        dim=3,
        s_plus=BCC_SPLUS,
        include_inverses=False,
        self_loop=False,
        relators=((1, 1, 1, 1),),
    )


def line_generating_set(include_inverses: bool = False) -> GeneratingSet:
    if include_inverses:
        return GeneratingSet(dim=1, s_plus=((1,), (-1,)), include_inverses=True, self_loop=True)
    return GeneratingSet(dim=1, s_plus=((1,),), include_inverses=False, self_loop=True)


def square_generating_set(include_inverses: bool = False) -> GeneratingSet:
    if include_inverses:
        return GeneratingSet(
            dim=2, s_plus=((1, 0), (0, 1), (-1, 0), (0, -1)), include_inverses=True, self_loop=False
        )
    return GeneratingSet(dim=2, s_plus=((1, 0), (0, 1)), include_inverses=False, self_loop=False)


def _check_unitary(v: np.ndarray, tol: float):
    if v.shape != (2, 2) or np.linalg.norm(v.conj().T @ v - ID2) > tol:
        raise InvalidFamilyParams("V must be a 2x2 unitary")


def line_walk(n: float, m: float, v=None, include_inverses: bool = False,
              tol: float = DEFAULT_TOL) -> QuantumWalk:
    """d = 1 family: A_{h} = V diag(n, 0), A_{-h} = V diag(0, n),
    A_e = i m V sigma_x."""
    v = ID2.copy() if v is None else np.asarray(v, dtype=complex)
    _check_unitary(v, tol)
    if abs(n * n + m * m - 1.0) > 1e-9:
        raise InvalidFamilyParams("need n^2 + m^2 = 1")
    if n <= 0 or m < 0:
        raise InvalidFamilyParams("need n > 0 (nonzero coins) and m >= 0")
    if include_inverses and np.linalg.norm(v @ PAULI_X - PAULI_X @ v) > tol:
        raise InvalidFamilyParams("V must commute with sigma_x when S_+ includes the inverses")
    coins = {
        (1,): v @ np.array([[n, 0], [0, 0]], dtype=complex),
        (-1,): v @ np.array([[0, 0], [0, n]], dtype=complex),
        SELF_LOOP: v @ np.array([[0, 1j * m], [1j * m, 0]], dtype=complex),
    }
    return QuantumWalk(line_generating_set(include_inverses), coins, tol=tol)


_SQ = {
    "h1": np.array([[1, 0], [1, 0]], dtype=complex) / 2,
    "-h1": np.array([[0, -1], [0, 1]], dtype=complex) / 2,
    "h2": np.array([[0, 1], [0, 1]], dtype=complex) / 2,
    "-h2": np.array([[1, 0], [-1, 0]], dtype=complex) / 2,
}


def square_walk(branch: int = 1, v=None, include_inverses: bool = False,
                tol: float = DEFAULT_TOL) -> QuantumWalk:
    """d = 2 family: the alpha = 1/2 coins; branch 2 swaps h2 <-> -h2."""
    v = ID2.copy() if v is None else np.asarray(v, dtype=complex)
    _check_unitary(v, tol)
    if branch not in (1, 2):
        raise InvalidFamilyParams("branch must be 1 or 2")
    if include_inverses:
        # the commutant of the full isotropy group is trivial: V = phase * I
        if abs(abs(v[0, 0]) - 1.0) > tol or np.linalg.norm(v - v[0, 0] * ID2) > tol:
            raise InvalidFamilyParams("V must be proportional to I for the four-generator presentation")
    else:
        sigma = PAULI_X if branch == 1 else PAULI_Z
        if np.linalg.norm(v @ sigma - sigma @ v) > tol:
            raise InvalidFamilyParams("V must commute with the branch's Pauli matrix")
    a_h2, a_mh2 = (_SQ["h2"], _SQ["-h2"]) if branch == 1 else (_SQ["-h2"], _SQ["h2"])
    coins = {
        (1, 0): v @ _SQ["h1"],
        (-1, 0): v @ _SQ["-h1"],
        (0, 1): v @ a_h2,
        (0, -1): v @ a_mh2,
    }
    return QuantumWalk(square_generating_set(include_inverses), coins, tol=tol)


def weyl_walk(chirality: int = +1, tol: float = DEFAULT_TOL) -> QuantumWalk:
    """The two d = 3 walks; eta = (1 + chirality*i)/4 on the plus coins and
    its conjugate on the minus coins."""
    if chirality not in (+1, -1):
        raise InvalidFamilyParams("chirality must be +1 or -1")
    eta = (1 + 1j * chirality) / 4
    etc = np.conj(eta)
    h1, h2, h3, h4 = BCC_SPLUS
    coins = {
        h1: np.array([[eta, 0], [eta, 0]]),
        tuple(-c for c in h1): np.array([[0, -etc], [0, etc]]),
        h2: np.array([[0, eta], [0, eta]]),
        tuple(-c for c in h2): np.array([[etc, 0], [-etc, 0]]),
        h3: np.array([[0, -eta], [0, eta]]),
        tuple(-c for c in h3): np.array([[etc, 0], [etc, 0]]),
        h4: np.array([[eta, 0], [-eta, 0]]),
        tuple(-c for c in h4): np.array([[0, etc], [0, etc]]),
    }
    return QuantumWalk(bcc_generating_set(), coins, tol=tol)


def build_prop7_walk(d: int, **params) -> QuantumWalk:
    """Instantiate the admissible family for dimension d.

    d = 1: n, m, v=None, include_inverses=False
    d = 2: branch=1, v=None, include_inverses=False
    d = 3: chirality=+1
    """
    if d == 1:
        return line_walk(**params)
    if d == 2:
        return square_walk(**params)
    if d == 3:
        return weyl_walk(**params)
    raise InvalidFamilyParams("d must be 1, 2 or 3")
