"""Divided-power operators on sl_2 Weyl modules and the families Y(t).

V(m) has basis v_i = f^(i) v_0 (i = 0..m) and the integral-form action

    e^(k) v_i = binom(m-i+k, k) v_{i-k}
    f^(k) v_i = binom(i+k, k) v_{i+k}
    (h choose k) v_i = binom(m-2i, k) v_i

reduced mod p.  The n-th Frobenius kernel uses 0 <= k < p^n.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from overres import primefield as pf
from overres.groupgen import PhiReport, graph_subgroup


def divided_matrix(kind: str, k: int, m: int, p: int) -> np.ndarray:
    """Matrix of e^(k), f^(k) or (h choose k) on V(m) over F_p."""
    p = pf.check_prime(p)
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = m + 1
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        if kind == "e":
            if i - k >= 0:
                out[i - k, i] = int(pf.binom_mod(m - i + k, k, p))
        elif kind == "f":
            if i + k <= m:
                out[i + k, i] = int(pf.binom_mod(i + k, k, p))
        elif kind == "h":
            out[i, i] = int(pf.binom_mod(m - 2 * i, k, p))
        else:
            raise ValueError(f"unknown divided power kind {kind!r}")
    return out


@dataclass(frozen=True)
class DividedPowerAction:
    m: int
    p: int
    n: int

    @property
    def size(self) -> int:
        return self.p ** self.n

    @property
    def dim(self) -> int:
        return self.m + 1

    @cached_property
    def e(self) -> list:
        return [divided_matrix("e", k, self.m, self.p) for k in range(self.size)]

    @cached_property
    def f(self) -> list:
        return [divided_matrix("f", k, self.m, self.p) for k in range(self.size)]

    @cached_property
    def h(self) -> list:
        return [divided_matrix("h", k, self.m, self.p) for k in range(self.size)]

    def powers(self, sign: int) -> list:
        return self.e if sign > 0 else self.f


def y_operator(action: DividedPowerAction, sign: int, t: int) -> np.ndarray:
    """Y(t) = sum_{k < p^n} t^k e^(k) (sign +1) or the same with f (sign -1)."""
    p = action.p
    out = np.zeros((action.dim, action.dim), dtype=np.int64)
    for k, mat in enumerate(action.powers(sign)):
        out = (out + pow(int(t), k, p) * mat) % p
    return out


def over_threshold(p: int, n: int) -> int:
    return (p ** n + 1) // 2


def is_n_over_restricted(action: DividedPowerAction, n: int | None = None) -> bool:
    """e^(k) and f^(k) vanish for floor((p^n+1)/2) <= k < p^n."""
    n = action.n if n is None else n
    lo, hi = over_threshold(action.p, n), action.p ** n
    ks = range(lo, hi)
    return all(not divided_matrix(kind, k, action.m, action.p).any() for kind in "ef" for k in ks)


def abs_n_chev_sides(action: DividedPowerAction, sign: int, t: int, d: np.ndarray) -> tuple:
    """(Hopf expansion of the adjoint action on d, Y(t) d Y(-t))."""
    p, size = action.p, action.size
    pw = action.powers(sign)
    d = np.asarray(d, dtype=np.int64) % p
    lhs = np.zeros_like(d)
    for k in range(size):
        tk = pow(int(t), k, p)
        if not tk:
            continue
        for i in range(k + 1):
            j = k - i
            term = pf.matmul(pf.matmul(pw[i], d, p), pw[j], p)
            lhs = (lhs + tk * (-1) ** j * term) % p
    rhs = pf.matmul(pf.matmul(y_operator(action, sign, t), d, p), y_operator(action, sign, -t), p)
    return lhs, rhs


def verify_abs_n_chev(action: DividedPowerAction, t: int, d: np.ndarray, sign: int = 1) -> bool:
    lhs, rhs = abs_n_chev_sides(action, sign, t, d)
    return bool(np.array_equal(lhs, rhs))


def spanning_operators(action: DividedPowerAction) -> list:
    """All matrix units on V(m); they span every operator, in particular the image algebra."""
    out = []
    for a in range(action.dim):
        for b in range(action.dim):
            u = np.zeros((action.dim, action.dim), dtype=np.int64)
            u[a, b] = 1
            out.append(u)
    return out


@dataclass(frozen=True)
class AbsNChevReport:
    checked: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def verify_abs_n_chev_exhaustive(action: DividedPowerAction) -> AbsNChevReport:
    """All t in F_p, both root signs, d over a spanning set."""
    fails = checked = 0
    for sign in (1, -1):
        for t in range(action.p):
            for d in spanning_operators(action):
                checked += 1
                if not verify_abs_n_chev(action, t, d, sign):
                    fails += 1
    return AbsNChevReport(checked, fails)


def surh_map(action: DividedPowerAction, cap: int | None = None) -> PhiReport:
    """Pair Y(t) on V(m) with Y(t) on the adjoint module V(2) and test phi.

    The kernel is also checked against theta(e), theta(f), theta(h) on V(m).
    """
    p = action.p
    adj = DividedPowerAction(2, p, action.n)
    pairs, labels = [], []
    for sign, name in ((1, "e"), (-1, "f")):
        for t in range(1, p):
            pairs.append((y_operator(action, sign, t), y_operator(adj, sign, t)))
            labels.append(f"Y_{name}({t})")
    lie_images = [action.e[1], action.f[1], (action.h[1]) % p]
    return graph_subgroup(pairs, p, labels, lie_images, cap)
