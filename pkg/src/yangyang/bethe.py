"""Critical points of the (symmetry breaking) Yang-Yang function.

Only the gradient is used for verification.  The closed forms for one point
``z`` are evaluated exactly at ``c = 1`` (they are homogeneous of degree -1 in
``c``) and then scaled.  Symmetric pairs of coordinates carrying the same root
are rebuilt from their sum ``wbar`` and squared difference ``delta``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .liedata import LieType, weight_table, weyl_vector
from .monodromy import lowest_root_labels

__all__ = [
    "CriticalConfig", "CriticalSolution", "SingularConfigurationError", "CriticalPointError",
    "NewtonError", "yy_gradient", "yy_jacobian", "yy_value", "residual", "one_point_labels",
    "admissible_levels", "closed_form_one_point", "closed_form_two_point_c0", "newton_refine",
    "verify_ordering", "verify_c_limit", "pair_data", "partner",
]

RESIDUAL_TOL = 1e-9
NEWTON_TOL = 1e-12


class SingularConfigurationError(ValueError):
    """Coordinates collide where the critical equations have a pole."""


class CriticalPointError(ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (relative residual {residual:.3e})")
        self.residual = residual


class NewtonError(ArithmeticError):
    pass


@dataclass(frozen=True)
class CriticalConfig:
    """Roots ``alpha_{i_j}`` (1-based labels), points ``z`` all weighted by ``omega_1``, and ``c``."""

    lie: LieType
    roots: tuple[int, ...]
    z: tuple[complex, ...]
    c: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(int(r) for r in self.roots))
        object.__setattr__(self, "z", tuple(complex(x) for x in self.z))
        for r in self.roots:
            if not 1 <= r <= self.lie.rank:
                raise ValueError(f"root label {r} is not valid for {self.lie}")
        if len(set(self.z)) != len(self.z):
            raise ValueError("the points z must be pairwise distinct")
        if self.c < 0:
            raise ValueError("c must be nonnegative")

    def with_c(self, c: float) -> "CriticalConfig":
        return CriticalConfig(self.lie, self.roots, self.z, c)


@dataclass(frozen=True)
class CriticalSolution:
    config: CriticalConfig
    coords: tuple[complex, ...]
    residual: float
    relative_residual: float
    meta: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {
            "coords": [[w.real, w.imag] for w in self.coords],
            "residual": self.residual,
            "relative_residual": self.relative_residual,
            "roots": list(self.config.roots),
        }


# -- the critical equations ------------------------------------------------------

def _pairings(cfg: CriticalConfig):
    tab = weight_table(cfg.lie)
    idx = [r - 1 for r in cfg.roots]
    G = np.array([[float(tab.root_gram[i][k]) for k in idx] for i in idx])
    om = np.array([float(tab.form(tab.omega1, tab.roots[i])) for i in idx])
    rho = np.array([float(tab.rho_pairings[i]) for i in idx])
    return G, om, rho


def _terms(cfg: CriticalConfig, w: Sequence[complex]):
    w = np.asarray(w, dtype=complex)
    G, om, rho = _pairings(cfg)
    z = np.asarray(cfg.z, dtype=complex)
    dz = w[:, None] - z[None, :]
    if np.any((dz == 0) & (om[:, None] != 0)):
        raise SingularConfigurationError("a coordinate sits on a point z with nonzero pairing")
    dw = w[:, None] - w[None, :]
    clash = (dw == 0) & (G != 0)
    np.fill_diagonal(clash, False)
    if np.any(clash):
        raise SingularConfigurationError("two coordinates coincide with nonzero root pairing")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        point = np.where(om[:, None] != 0, om[:, None] / dz, 0)
        mutual = np.where(G != 0, G / dw, 0)
    np.fill_diagonal(mutual, 0)
    return point, mutual, cfg.c * rho, w, dz, dw, G, om


def yy_gradient(cfg: CriticalConfig, w: Sequence[complex]) -> np.ndarray:
    """Left side minus right side of the critical equations, one entry per coordinate."""
    point, mutual, linear, *_ = _terms(cfg, w)
    return point.sum(axis=1) - mutual.sum(axis=1) - linear


def yy_jacobian(cfg: CriticalConfig, w: Sequence[complex]) -> np.ndarray:
    _, _, _, w, dz, dw, G, om = _terms(cfg, w)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        dpoint = np.where(om[:, None] != 0, -om[:, None] / dz ** 2, 0).sum(axis=1)
        m = np.where(G != 0, G / dw ** 2, 0)
    np.fill_diagonal(m, 0)
    J = -m
    J[np.diag_indices_from(J)] = dpoint + m.sum(axis=1)
    return J


def residual(cfg: CriticalConfig, w: Sequence[complex]) -> tuple[float, float]:
    """``(max |F_j|, max |F_j| / largest single term)``."""
    point, mutual, linear, *_ = _terms(cfg, w)
    F = point.sum(axis=1) - mutual.sum(axis=1) - linear
    scale = max(np.abs(point).max(initial=0), np.abs(mutual).max(initial=0), np.abs(linear).max(initial=0))
    err = float(np.abs(F).max(initial=0))
    return err, (err / scale if scale else err)


def yy_value(cfg: CriticalConfig, w: Sequence[complex]) -> complex:
    """The multivalued function itself on principal-branch logarithms.

    Diagnostic only: the branch jumps by multiples of ``2 pi i`` times the
    pairings as coordinates move, so values are meaningful only up to those.
    """
    tab = weight_table(cfg.lie)
    G, om, rho = _pairings(cfg)
    w = [complex(x) for x in w]
    z = cfg.z
    lam = float(tab.form(tab.omega1, tab.omega1))
    rho_lam = float(tab.form(weyl_vector(cfg.lie), tab.omega1))
    total = 0j
    for j, wj in enumerate(w):
        for za in z:
            if om[j]:
                total += om[j] * cmath.log(wj - za)
        for k in range(j + 1, len(w)):
            if G[j, k]:
                total -= G[j, k] * cmath.log(wj - w[k])
        total -= cfg.c * rho[j] * wj
    for a in range(len(z)):
        for b in range(a + 1, len(z)):
            total -= lam * cmath.log(z[a] - z[b])
        total += cfg.c * rho_lam * z[a]
    return total


# -- one point: root assignments -------------------------------------------------

def _parse_level(t: LieType, l) -> tuple[int, bool]:
    if isinstance(l, str):
        text = l.strip()
        if text.endswith(("p", "'")):
            k = int(text[:-1])
            if t.family != "D" or k != t.rank - 1:
                raise ValueError(f"primed level {l!r} exists only as n-1' for D_n")
            return k, True
        l = int(text)
    return int(l), False


def admissible_levels(t: LieType) -> list:
    n = t.rank
    top = {"A": n, "B": 2 * n, "C": 2 * n - 1, "D": 2 * n - 2}[t.family]
    levels: list = list(range(1, top + 1))
    if t.family == "D":
        levels.insert(n - 1, f"{n - 1}p")
    return levels


def one_point_labels(t: LieType, l) -> list[int]:
    l, primed = _parse_level(t, l)
    n, fam = t.rank, t.family
    top = {"A": n, "B": 2 * n, "C": 2 * n - 1, "D": 2 * n - 2}[fam]
    if not 1 <= l <= top:
        raise ValueError(f"level l={l} is not admissible for {t} (1..{top})")
    if primed:
        return list(range(1, n - 1)) + [n]
    if fam == "A":
        return list(range(1, l + 1))
    mirror = {"B": 2 * n + 1, "C": 2 * n, "D": 2 * n - 1}[fam]
    return [j if j <= n else mirror - j for j in range(1, l + 1)]


def partner(t: LieType, k: int) -> int:
    """1-based position carrying the same root as position ``k`` in the upper half."""
    return {"B": 2 * t.rank + 1, "C": 2 * t.rank, "D": 2 * t.rank - 1}[t.family] - k


def _s(lo: int, hi: int, f) -> Fraction:
    return sum((Fraction(1) / f(i) for i in range(lo, hi + 1)), Fraction(0))


def pair_data(t: LieType, l) -> tuple[dict[int, Fraction], dict[int, tuple[Fraction, Fraction]]]:
    """Exact closed form at ``c = 1``, ``z = 0``.

    Returns ``(singles, pairs)``: ``singles[j]`` is ``w_j`` and ``pairs[k]`` is
    ``(wbar_k, delta_k)`` for the pair ``{w_k, w_partner(k)}``.
    """
    l, primed = _parse_level(t, l)
    one_point_labels(t, f"{l}p" if primed else l)
    n, fam = t.rank, t.family
    singles: dict[int, Fraction] = {}
    pairs: dict[int, tuple[Fraction, Fraction]] = {}
    if fam == "A" or l < n or (fam == "D" and l <= n - 1 and not primed):
        for j in range(1, l + 1):
            singles[j] = _s(1, j, lambda i: l - i + 1)
        return singles, pairs
    if fam == "B":
        if l == n:
            for j in range(1, l + 1):
                singles[j] = _s(1, j, lambda i: l - i + Fraction(1, 2))
            return singles, pairs
        for k in range(1, 2 * n - l + 1):
            singles[k] = _s(1, k, lambda i: l - i)
        middle = 1 / (l - n - Fraction(1, 2))
        for k in range(2 * n + 1 - l, n + 1):
            wbar = (middle + 2 * _s(1, 2 * n - l, lambda j: l - j)
                    + _s(2 * n - l + 1, k - 1, lambda j: l - j - 1)
                    + _s(2 * n - l + 1, 2 * n - k - 1, lambda j: l - j - 1))
            delta = _s(k, 2 * n - k - 1, lambda j: l - j - 1) ** 2 - middle ** 2
            pairs[k] = (wbar, delta)
        return singles, pairs
    if fam == "C":
        if l == n:
            for j in range(1, n):
                singles[j] = _s(1, j, lambda i: n - i + 2)
            singles[n] = 1 + _s(1, n - 1, lambda i: n - i + 2)
            return singles, pairs
        for k in range(1, 2 * n - l):
            singles[k] = _s(1, k, lambda i: l + 2 - i)
        singles[n] = _s(1, 2 * n - l - 1, lambda i: l + 2 - i) + _s(2 * n - l, n, lambda i: l + 1 - i)
        for k in range(2 * n - l, n):
            S = _s(k, n, lambda i: l - i + 1) + _s(k, n, lambda i: l - 2 * n + i + 1)
            wbar = (2 * _s(1, 2 * n - l - 1, lambda i: l - i + 2)
                    + 2 * _s(2 * n - l, k - 1, lambda i: l - i + 1) + S)
            pairs[k] = (wbar, S * (S - Fraction(2, l - n + 1)))
        return singles, pairs
    # D
    if primed:
        for j in range(1, n):
            singles[j] = _s(1, j, lambda i: n - i)
        return singles, pairs
    if l == n:
        for j in range(1, n - 1):
            singles[j] = _s(1, j, lambda i: n + 1 - i)
        singles[n - 1] = singles[n] = 1 + _s(1, n - 2, lambda i: n + 1 - i)
        return singles, pairs
    for k in range(1, 2 * n - 1 - l):
        singles[k] = _s(1, k, lambda i: l + 1 - i)
    singles[n - 1] = singles[n] = (_s(1, 2 * n - 2 - l, lambda i: l + 1 - i)
                                   + _s(2 * n - 1 - l, n - 2, lambda i: l - i)
                                   + Fraction(1, l + 1 - n))
    for k in range(2 * n - 1 - l, n - 1):
        S = (_s(k, n - 2, lambda i: l - i) + Fraction(2, l - n + 1)
             + _s(k, n - 2, lambda i: l + i + 2 - 2 * n))
        wbar = (2 * _s(1, 2 * n - l - 2, lambda i: l + 1 - i)
                + _s(2 * n - 1 - l, k - 1, lambda i: l - i)
                + _s(2 * n - 1 - l, n - 2, lambda i: l - i)
                + Fraction(2, l - n + 1)
                + _s(k, n - 2, lambda i: l + i + 2 - 2 * n))
        pairs[k] = (wbar, S * (S - Fraction(2, l - n + 1)))
    return singles, pairs


def _split_pair(wbar: complex, delta: complex) -> tuple[complex, complex]:
    """Roots with the given sum and squared difference, larger imaginary part first.

    Real pairs come out as (smaller, larger).
    """
    r = cmath.sqrt(delta)
    a, b = (wbar + r) / 2, (wbar - r) / 2
    if abs(a.imag - b.imag) <= 1e-14 * max(1.0, abs(a), abs(b)):
        return (a, b) if a.real <= b.real else (b, a)
    return (a, b) if a.imag > b.imag else (b, a)


def _finish(cfg: CriticalConfig, coords: list[complex], meta: dict, check: bool) -> CriticalSolution:
    err, rel = residual(cfg, coords)
    sol = CriticalSolution(cfg, tuple(coords), err, rel, meta)
    if check and rel >= RESIDUAL_TOL:
        raise CriticalPointError(f"closed form for {cfg.lie} {meta} does not solve the critical equations", rel)
    return sol


def closed_form_one_point(t: LieType, l, c: float, z: complex = 0, check: bool = True) -> CriticalSolution:
    if c <= 0:
        raise ValueError("the one-point closed forms need c > 0")
    labels = one_point_labels(t, l)
    singles, pairs = pair_data(t, l)
    z = complex(z)
    coords: list[complex] = [0j] * len(labels)
    for j, u in singles.items():
        pos = j if j <= len(labels) else None
        if pos is None:
            raise AssertionError("single coordinate outside the configuration")
        coords[pos - 1] = z + float(u) / c
    for k, (wbar, delta) in pairs.items():
        lo, hi = _split_pair(complex(float(wbar)), complex(float(delta)))
        coords[k - 1] = z + lo / c
        coords[partner(t, k) - 1] = z + hi / c
    cfg = CriticalConfig(t, tuple(labels), (z,), c)
    return _finish(cfg, coords, {"form": "one_point", "level": str(l)}, check)


def closed_form_two_point_c0(t: LieType, z1: complex, z2: complex, check: bool = True) -> CriticalSolution:
    """The lowest singular-vector critical point for ``z = (z1, z2)`` at ``c = 0``."""
    z1, z2 = complex(z1), complex(z2)
    if z1 == z2:
        raise ValueError("z1 and z2 must differ")
    labels = lowest_root_labels(t)
    n, fam = t.rank, t.family
    mid = (z1 + z2) / 2
    coords: list = [None] * len(labels)
    if fam == "A":
        coords[0] = mid
    else:
        npairs = {"B": n, "C": n - 1, "D": n - 2}[fam]
        denom = {"B": 4 * n * n - 1, "C": 4 * n * (n + 1), "D": 4 * n * (n - 1)}[fam]
        span = {"B": 2 * n, "C": 2 * n + 1, "D": 2 * n - 1}[fam]
        for k in range(1, npairs + 1):
            prod = z1 * z2 + (z1 - z2) ** 2 * k * (span - k) / denom
            wsum = z1 + z2
            coords[k - 1], coords[len(labels) - k] = _split_pair(wsum, wsum * wsum - 4 * prod)
        for pos, lab in enumerate(labels):
            if coords[pos] is None:
                coords[pos] = mid
    cfg = CriticalConfig(t, tuple(labels), (z1, z2), 0.0)
    return _finish(cfg, coords, {"form": "two_point_c0"}, check)


# -- Newton ----------------------------------------------------------------------------

def newton_refine(cfg: CriticalConfig, w0: Sequence[complex], tol: float = NEWTON_TOL,
                  max_iter: int = 100) -> CriticalSolution:
    """Plain Newton on the critical equations; stops when the relative residual is below ``tol``."""
    w = np.asarray(w0, dtype=complex).copy()
    for it in range(max_iter + 1):
        try:
            err, rel = residual(cfg, w)
        except SingularConfigurationError as exc:
            raise NewtonError(f"iteration {it}: {exc}") from None
        if not np.isfinite(err):
            raise NewtonError(f"iteration {it}: residual is not finite")
        if rel < tol:
            return CriticalSolution(cfg, tuple(complex(x) for x in w), err, rel, {"form": "newton", "iterations": it})
        if it == max_iter:
            break
        J = yy_jacobian(cfg, w)
        if not np.all(np.isfinite(J)) or np.linalg.cond(J) > 1e14:
            raise NewtonError(f"iteration {it}: singular Jacobian")
        w = w - np.linalg.solve(J, yy_gradient(cfg, w))
    raise NewtonError(f"no convergence after {max_iter} iterations (relative residual {rel:.3e})")


# -- ordering lemmas ----------------------------------------------------------------

def verify_ordering(sol: CriticalSolution, tol: float = 1e-9) -> bool:
    """The real ordering of one-point coordinates, plus the signs of ``delta``."""
    cfg = sol.config
    t = cfg.lie
    level = sol.meta.get("level")
    if level is None or len(cfg.z) != 1:
        raise ValueError("ordering is only stated for one-point solutions")
    l, primed = _parse_level(t, level)
    z = cfg.z[0]
    w = [x - z for x in sol.coords]
    scale = max(abs(x) for x in w)
    eps = tol * scale

    def real(x):
        return abs(x.imag) <= eps

    def increasing(seq):
        return seq[0].real > eps and all(b.real - a.real > eps for a, b in zip(seq, seq[1:]))

    n, fam = t.rank, t.family
    if fam == "A" or primed or l < n or (fam == "B" and l == n) or (fam == "C" and l <= n) \
            or (fam == "D" and l <= n - 1):
        return all(real(x) for x in w) and increasing(w)
    if fam == "B":
        for k in range(2 * n + 1 - l, n + 1):
            d = (w[k - 1] - w[partner(t, k) - 1]) ** 2
            if k < n and not (real(d) and d.real > 0):
                return False
            if k == n and not (abs(d.imag) <= eps * scale and d.real < 0):
                return False
        chain = w[:n - 1] + [(w[n - 1] + w[n]) / 2] + w[n + 1:]
        return all(real(x) for x in chain) and increasing(chain)
    if fam == "C":
        for k in range(2 * n - l, n):
            d = (w[k - 1] - w[partner(t, k) - 1]) ** 2
            if not (real(d) and d.real > 0):
                return False
        return all(real(x) for x in w) and increasing(w)
    # D, l >= n
    if l > n:
        for k in range(2 * n - 1 - l, n - 1):
            d = (w[k - 1] - w[partner(t, k) - 1]) ** 2
            if not (real(d) and d.real > 0):
                return False
    if abs(w[n - 2] - w[n - 1]) > eps:
        return False
    chain = w[:n - 1] + w[n:]
    return all(real(x) for x in w) and increasing(chain)


# -- the large-c limit ------------------------------------------------------------------

@dataclass
class LimitReport:
    ok: bool
    checkpoints: list[float]
    distances: list[list[float]]   # distances[i][j]: coordinate j at checkpoint i
    notes: list[str]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checkpoints": self.checkpoints, "distances": self.distances, "notes": self.notes}


def _continue(cfg: CriticalConfig, w, c_from: float, c_to: float, max_halvings: int = 30):
    c, step = c_from, c_to - c_from
    w = np.asarray(w, dtype=complex)
    halvings = 0
    while c < c_to:
        nxt = min(c + step, c_to)
        try:
            sol = newton_refine(cfg.with_c(nxt), w)
        except NewtonError:
            step /= 2
            halvings += 1
            if halvings > max_halvings:
                raise NewtonError(f"continuation stalled at c={c}") from None
            continue
        # stay on the branch: reject jumps that are large compared with the step
        jump = np.abs(np.asarray(sol.coords) - w).max()
        if jump > 0.5 * max(1.0, np.abs(w).max()) and step > 1e-6 * max(c, 1.0):
            step /= 2
            continue
        w, c = np.asarray(sol.coords), nxt
        step *= 1.5
    return w


def verify_c_limit(t: LieType, l=None, z=(0, 1), checkpoints=(1.0, 10.0, 100.0, 1000.0)) -> LimitReport:
    """Continue the lowest two-point critical point from ``c = 0`` to large ``c``.

    Every coordinate's distance to ``{z1, z2}`` must shrink between consecutive
    checkpoints, and ``c * distance`` must agree within a factor 3 across the
    last interval (the asymptotic end).  Earlier intervals are reported in
    ``notes`` when they are still pre-asymptotic.
    """
    seed = closed_form_two_point_c0(t, *z)
    if l is not None and int(l) != len(seed.coords):
        raise ValueError(f"a c = 0 seed exists only for l = {len(seed.coords)} on {t}")
    cfg = seed.config
    zs = np.asarray(cfg.z)
    w = np.asarray(seed.coords)
    c = 0.0
    dists = []
    notes = []
    for target in checkpoints:
        w = _continue(cfg, w, c, target)
        c = target
        dists.append([float(np.abs(x - zs).min()) for x in w])
    ok = True
    last = len(checkpoints) - 2
    for i in range(len(checkpoints) - 1):
        for j in range(len(w)):
            a, b = dists[i][j], dists[i + 1][j]
            if not b < a:
                ok = False
                notes.append(f"coordinate {j} does not approach z between c={checkpoints[i]} and {checkpoints[i + 1]}")
            ratio = (a * checkpoints[i]) / (b * checkpoints[i + 1]) if b else float("inf")
            if not 1 / 3 <= ratio <= 3:
                if i == last:
                    ok = False
                notes.append(f"coordinate {j}: c*distance ratio {ratio:.3g} between c={checkpoints[i]} "
                             f"and {checkpoints[i + 1]}" + ("" if i == last else " (pre-asymptotic)"))
    return LimitReport(ok, list(checkpoints), dists, notes)
