"""Seeded synthetic samples of simple manifolds.

The generators draw from a 64-bit linear congruential recurrence so that the
same ``(kind, n, seed, noise)`` gives the same points everywhere::

    state_0     = seed mod 2**64
    state_{i+1} = (6364136223846793005 * state_i + 1442695040888963407) mod 2**64
    u_{i+1}     = (state_{i+1} >> 11) / 2**53          # uniform on [0, 1)

Kinds (draws are consumed in the order listed):

circle
    Stratified angles on the unit circle, ``theta_i = 2*pi*(i + u_i)/n``.
annulus
    Area-uniform on radii [1, 1.3]: ``rho = sqrt(1 + 0.69*u)``, then
    ``theta = 2*pi*u'``.
double-annulus
    Two such annuli centered at (-1.45, 0) and (1.45, 0) joined by the strip
    ``|x| <= 0.3, |y| <= 0.15``. Rejection sampling from the box
    ``[-2.75, 2.75] x [-1.3, 1.3]``, drawing ``x`` then ``y`` per trial.
torus
    ``theta = 2*pi*u``, ``phi = 2*pi*u'``; the point
    ``((2 + 0.5 cos phi) cos theta, (2 + 0.5 cos phi) sin theta, 0.5 sin phi)``.

With ``noise > 0`` every coordinate then gets Gaussian noise of that standard
deviation, generated by Box-Muller from pairs ``(u, u')`` as
``sqrt(-2 ln(1 - u)) * cos(2*pi*u')``, one pair per coordinate, row-major.
"""

from __future__ import annotations

import math

import numpy as np

KINDS = ("circle", "annulus", "double-annulus", "torus")

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class LCG:
    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def uniform(self) -> float:
        self.state = (_MULT * self.state + _INC) & _MASK
        return (self.state >> 11) / float(1 << 53)

    def gauss(self) -> float:
        u, v = self.uniform(), self.uniform()
        return math.sqrt(-2.0 * math.log(1.0 - u)) * math.cos(2.0 * math.pi * v)


def _in_annulus(x, y, cx):
    d2 = (x - cx) ** 2 + y * y
    return 1.0 <= d2 <= 1.69


def _in_double_annulus(x, y):
    return _in_annulus(x, y, -1.45) or _in_annulus(x, y, 1.45) or (abs(x) <= 0.3 and abs(y) <= 0.15)


def sample(kind: str, n: int, seed: int = 0, noise: float = 0.0) -> np.ndarray:
    if kind not in KINDS:
        raise ValueError(f"unknown sample kind {kind!r}; expected one of {', '.join(KINDS)}")
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = LCG(seed)
    tau = 2.0 * math.pi
    pts: list[tuple[float, ...]] = []
    if kind == "circle":
        for i in range(n):
            t = tau * (i + rng.uniform()) / n
            pts.append((math.cos(t), math.sin(t)))
    elif kind == "annulus":
        for _ in range(n):
            rho = math.sqrt(1.0 + 0.69 * rng.uniform())
            t = tau * rng.uniform()
            pts.append((rho * math.cos(t), rho * math.sin(t)))
    elif kind == "double-annulus":
        while len(pts) < n:
            x = -2.75 + 5.5 * rng.uniform()
            y = -1.3 + 2.6 * rng.uniform()
            if _in_double_annulus(x, y):
                pts.append((x, y))
    else:
        for _ in range(n):
            t, p = tau * rng.uniform(), tau * rng.uniform()
            ring = 2.0 + 0.5 * math.cos(p)
            pts.append((ring * math.cos(t), ring * math.sin(t), 0.5 * math.sin(p)))
    X = np.array(pts, dtype=float)
    if noise > 0:
        for i in range(X.shape[0]):
            for j in range(X.shape[1]):
                X[i, j] += noise * rng.gauss()
    return X
