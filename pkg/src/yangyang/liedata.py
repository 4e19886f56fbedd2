"""Weights of the vector representation and simple roots for types A-D.

Every weight is realised in an orthogonal basis ``e_1, e_2, ...``; the
bilinear form is ``gram_scale`` times the Euclidean dot product.  All
downstream formulas are written in terms of the *position* of a weight in
the total order of the weight list, which is the identity for A, B, C and
the order map ``o`` for D (where the slot ``n-1'`` sits between ``n-1`` and
``n``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

__all__ = ["LieType", "WeightIndex", "WeightTable", "weight_table", "dim_fundamental",
           "order", "inner_product_weights", "root_data", "weyl_vector"]

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper() if isinstance(self.family, str) else self.family
        object.__setattr__(self, "family", fam)
        if fam not in ("A", "B", "C", "D"):
            raise ValueError(f"unknown Lie family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError(f"rank must be a positive integer, got {self.rank!r}")
        if fam == "C" and self.rank < 2:
            raise ValueError("C_n requires n >= 2")
        if fam == "D" and self.rank < 3:
            raise ValueError("D_n requires n >= 3")

    @classmethod
    def parse(cls, text: str) -> "LieType":
        """``"B2"`` or ``"B_2"`` -> ``LieType("B", 2)``."""
        text = text.strip().replace("_", "")
        return cls(text[0], int(text[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True, order=True)
class WeightIndex:
    """A weight label; ``primed`` only for the D_n slot ``n-1'``."""

    slot: int
    primed: bool = False

    @classmethod
    def parse(cls, text: str | int) -> "WeightIndex":
        if isinstance(text, int):
            return cls(text)
        text = text.strip()
        if text.endswith(("p", "'")):
            return cls(int(text[:-1]), True)
        return cls(int(text))

    def __str__(self) -> str:
        return f"{self.slot}p" if self.primed else str(self.slot)

    def to_json(self):
        return {"slot": self.slot, "primed": True} if self.primed else self.slot


def dim_fundamental(t: LieType) -> int:
    n = t.rank
    return {"A": n + 1, "B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[t.family]


def _unit(k: int, size: int, scale: int = 1) -> Vector:
    return tuple(Fraction(scale if i == k else 0) for i in range(size))


def _sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def _add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def _neg(u: Sequence[Fraction]) -> Vector:
    return tuple(-a for a in u)


@dataclass(frozen=True)
class WeightTable:
    """Weights (in order position), simple roots and the bilinear form."""

    lie: LieType
    labels: tuple[WeightIndex, ...]   # labels[p] is the weight at order position p
    weights: tuple[Vector, ...]       # weights[p]
    roots: tuple[Vector, ...]         # roots[i-1] is alpha_i
    gram_scale: Fraction

    @property
    def dim(self) -> int:
        return len(self.weights)

    def form(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return self.gram_scale * sum((a * b for a, b in zip(u, v)), Fraction(0))

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """``gram[p][r] = (lambda_p, lambda_r)`` by order position."""
        return tuple(tuple(self.form(u, v) for v in self.weights) for u in self.weights)

    @cached_property
    def root_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(self.form(a, b) for b in self.roots) for a in self.roots)

    @cached_property
    def rho_pairings(self) -> tuple[Fraction, ...]:
        # 2(rho, alpha_i)/(alpha_i, alpha_i) = 1
        return tuple(self.form(a, a) / 2 for a in self.roots)

    @property
    def omega1(self) -> Vector:
        return self.weights[0]

    def position(self, idx: WeightIndex | int | str) -> int:
        if not isinstance(idx, WeightIndex):
            idx = WeightIndex.parse(idx)
        try:
            return self._positions[idx]
        except KeyError:
            raise ValueError(f"weight index {idx} is not valid for {self.lie}") from None

    @cached_property
    def _positions(self) -> dict[WeightIndex, int]:
        return {lab: p for p, lab in enumerate(self.labels)}

    @property
    def antidiagonal_sum(self) -> int | None:
        """Position sum ``o(a)+o(b)`` of weight pairs adding to zero (None for A)."""
        return {"A": None, "B": 2 * self.lie.rank}.get(self.lie.family, 2 * self.lie.rank - 1)

    @property
    def step(self) -> Fraction:
        """``(lambda^0, lambda^0 - lambda^1)``; the exponent unit of the Hecke-type correction."""
        return self.form(self.weights[0], _sub(self.weights[0], self.weights[1]))

    def weight_sum(self, positions: Sequence[int]) -> Vector:
        total = tuple(Fraction(0) for _ in self.weights[0])
        for p in positions:
            total = _add(total, self.weights[p])
        return total


@lru_cache(maxsize=None)
def weight_table(t: LieType) -> WeightTable:
    n, fam = t.rank, t.family
    if fam == "A":
        size = n + 1
        centroid = tuple(Fraction(1, size) for _ in range(size))
        weights = [_sub(_unit(i, size), centroid) for i in range(size)]
        roots = [_sub(_unit(i, size), _unit(i + 1, size)) for i in range(n)]
        labels = [WeightIndex(i) for i in range(size)]
        scale = Fraction(1)
    else:
        e = [_unit(i, n) for i in range(n)]
        roots = [_sub(e[i], e[i + 1]) for i in range(n - 1)]
        if fam == "B":
            weights = e + [tuple(Fraction(0) for _ in range(n))] + [_neg(v) for v in reversed(e)]
            roots.append(e[n - 1])
            labels = [WeightIndex(i) for i in range(2 * n + 1)]
            scale = Fraction(1)
        elif fam == "C":
            weights = e + [_neg(v) for v in reversed(e)]
            roots.append(_unit(n - 1, n, 2))
            labels = [WeightIndex(i) for i in range(2 * n)]
            scale = Fraction(1, 2)
        else:
            weights = e + [_neg(v) for v in reversed(e)]
            roots.append(_add(e[n - 2], e[n - 1]))
            labels = ([WeightIndex(i) for i in range(n)] + [WeightIndex(n - 1, True)]
                      + [WeightIndex(i) for i in range(n, 2 * n - 1)])
            scale = Fraction(1)
    return WeightTable(t, tuple(labels), tuple(weights), tuple(roots), scale)


def order(t: LieType, i: WeightIndex | int | str) -> int:
    """Position of weight ``i`` in the total order (``o`` for D_n, identity otherwise)."""
    if not isinstance(i, WeightIndex):
        i = WeightIndex.parse(i)
    if i.primed and t.family != "D":
        raise ValueError(f"primed index {i} only exists for D_n")
    return weight_table(t).position(i)


def inner_product_weights(t: LieType, s, u) -> Fraction:
    tab = weight_table(t)
    return tab.gram[tab.position(s)][tab.position(u)]


def root_data(t: LieType):
    """``(roots, rho_pairings, root_gram)`` with ``roots[i-1] = alpha_i``."""
    tab = weight_table(t)
    return tab.roots, tab.rho_pairings, tab.root_gram


def weyl_vector(t: LieType) -> Vector:
    """Half the sum of positive roots, in the same orthogonal basis as the weights."""
    n, fam = t.rank, t.family
    if fam == "A":
        return tuple(Fraction(n - 2 * i, 2) for i in range(n + 1))
    if fam == "B":
        return tuple(Fraction(2 * (n - i) - 1, 2) for i in range(n))
    if fam == "C":
        return tuple(Fraction(n - i) for i in range(n))
    return tuple(Fraction(n - 1 - i) for i in range(n))
