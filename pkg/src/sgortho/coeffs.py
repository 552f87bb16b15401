"""Fundamental coefficient sequences and monomial boundary data.

The three families of monomials P_{j,k} (k = 1, 2, 3, based at the top corner
q0) are determined by four rational sequences:

    alpha_j = P_{j,1}(q1)        beta_j = P_{j,2}(q1)
    gamma_j = P_{j,3}(q1)        eta_j  = normal derivative of P_{j,1} at q1

which satisfy, with alpha_0 = 1, alpha_1 = 1/6, beta_0 = -1/2, eta_0 = 0:

    alpha_j = 4/(5^j - 5) * sum_{l=1}^{j-1} alpha_{j-l} alpha_l          (j >= 2)
    beta_j  = 2/(15(5^j-1)) * sum_{l=0}^{j-1} (3*5^{j-l} - 5^{l+1} + 6)
                                              alpha_{j-l} beta_l         (j >= 1)
    gamma_j = 3 alpha_{j+1}                                              (j >= 0)
    eta_j   = (5^j+1)/2 * alpha_j + 2 sum_{l=0}^{j-1} eta_l beta_{j-l}   (j >= 1)

alpha'_j is alpha_j except alpha'_0 = 1/2; it carries the normal derivative
of the k=2 family at q1/q2.  Any sequence queried at a negative index is 0,
which keeps every downstream shifted-index sum valid without special cases.

All arithmetic is exact rational; powers of 5 are exact integers.  Sequences
are memoized and extended on demand; extension is serialized by a lock so the
table is safe for concurrent readers.
"""

from __future__ import annotations

import json
import os
import threading

from .rationals import Rat, ZERO, rat_from_str, rat_str

Q0, Q1, Q2 = 0, 1, 2
FAMILIES = (1, 2, 3)


class CoeffTable:
    """Memoized alpha/beta/gamma/eta/alpha' sequences plus boundary tables."""

    def __init__(self):
        self._alpha = [Rat(1), Rat(1, 6)]
        self._beta = [Rat(-1, 2)]
        self._eta = [ZERO]
        self._lock = threading.RLock()

    # -- sequence extension -------------------------------------------------

    def _extend(self, n: int) -> None:
        """Grow all three base sequences so indices <= n are available."""
        with self._lock:
            a, b, e = self._alpha, self._beta, self._eta
            while len(a) <= n:
                j = len(a)
                a.append(Rat(4, 5**j - 5) * sum(
                    (a[j - l] * a[l] for l in range(1, j)), ZERO))
            while len(b) <= n:
                j = len(b)
                b.append(Rat(2, 15 * (5**j - 1)) * sum(
                    ((3 * 5**(j - l) - 5**(l + 1) + 6) * a[j - l] * b[l]
                     for l in range(j)), ZERO))
            while len(e) <= n:
                j = len(e)
                e.append(Rat(5**j + 1, 2) * a[j] + 2 * sum(
                    (e[l] * b[j - l] for l in range(j)), ZERO))

    def alpha(self, j: int):
        if j < 0:
            return ZERO
        if j >= len(self._alpha):
            self._extend(j)
        return self._alpha[j]

    def beta(self, j: int):
        if j < 0:
            return ZERO
        if j >= len(self._beta):
            self._extend(j)
        return self._beta[j]

    def eta(self, j: int):
        if j < 0:
            return ZERO
        if j >= len(self._eta):
            self._extend(j)
        return self._eta[j]

    def gamma(self, j: int):
        if j < 0:
            return ZERO
        return 3 * self.alpha(j + 1)

    def alpha_prime(self, j: int):
        if j < 0:
            return ZERO
        if j == 0:
            return Rat(1, 2)
        return self.alpha(j)

    # -- monomial boundary data ----------------------------------------------

    def value(self, j: int, k: int, vertex: int):
        """P_{j,k}(q_vertex), exactly."""
        _check_jk(j, k)
        if vertex == Q0:
            return Rat(1) if (j == 0 and k == 1) else ZERO
        if k == 1:
            return self.alpha(j)
        if k == 2:
            return self.beta(j)
        g = self.gamma(j)
        return g if vertex == Q1 else -g

    def normal(self, j: int, k: int, vertex: int):
        """Normal derivative of P_{j,k} at q_vertex, exactly."""
        _check_jk(j, k)
        if vertex == Q0:
            return Rat(1) if (j == 0 and k == 2) else ZERO
        if k == 1:
            return self.eta(j)
        if k == 2:
            return -self.alpha_prime(j)
        t = 3 * self.eta(j + 1)
        return t if vertex == Q1 else -t

    def boundary(self, j: int, k: int, vertex: int, kind: str):
        """Boundary value or normal derivative of P_{j,k} at a corner.

        Tangential derivatives at q1/q2 are not part of the table (no exact
        closed form is available for them) and are rejected.
        """
        if vertex not in (Q0, Q1, Q2):
            raise ValueError(f"vertex must be 0, 1 or 2, got {vertex!r}")
        if kind == "value":
            return self.value(j, k, vertex)
        if kind == "normal":
            return self.normal(j, k, vertex)
        if kind == "tangential":
            raise ValueError("tangential derivatives at q1/q2 are not available exactly")
        raise ValueError(f"unknown kind {kind!r}")

    def integral(self, j: int, k: int):
        """Integral of P_{j,k} against the self-similar probability measure."""
        _check_jk(j, k)
        if k == 1:
            return 2 * self.eta(j + 1)
        if k == 2:
            return -2 * self.alpha(j + 1)
        return ZERO  # k=3 is anti-symmetric

    # -- cache persistence ----------------------------------------------------

    def save(self, directory: str) -> str:
        """Persist the memo tables as a keyed (index -> "p/q") JSON file."""
        path = os.path.join(directory, "sgortho_coeffs.json")
        with self._lock:
            payload = {
                "alpha": {str(i): rat_str(v) for i, v in enumerate(self._alpha)},
                "beta": {str(i): rat_str(v) for i, v in enumerate(self._beta)},
                "eta": {str(i): rat_str(v) for i, v in enumerate(self._eta)},
            }
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        return path

    def load(self, directory: str) -> bool:
        """Load persisted tables if present; ignores shorter-than-current data."""
        path = os.path.join(directory, "sgortho_coeffs.json")
        if not os.path.exists(path):
            return False
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)

        def as_list(d):
            return [rat_from_str(d[str(i)]) for i in range(len(d))]

        with self._lock:
            for name, attr in (("alpha", "_alpha"), ("beta", "_beta"), ("eta", "_eta")):
                loaded = as_list(payload.get(name, {}))
                if len(loaded) > len(getattr(self, attr)):
                    setattr(self, attr, loaded)
        return True


def _check_jk(j: int, k: int) -> None:
    if j < 0:
        raise ValueError(f"degree must be >= 0, got {j}")
    if k not in FAMILIES:
        raise ValueError(f"family must be 1, 2 or 3, got {k}")


#: Shared default table; all module-level helpers delegate here.
TABLE = CoeffTable()

alpha = TABLE.alpha
beta = TABLE.beta
gamma = TABLE.gamma
eta = TABLE.eta
alpha_prime = TABLE.alpha_prime
monomial_value = TABLE.value
monomial_normal = TABLE.normal
monomial_boundary = TABLE.boundary
monomial_integral = TABLE.integral
