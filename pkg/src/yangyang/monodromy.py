"""Wall-crossing monodromy on V (x) V, the antidiagonal pairing and its twist.

Matrices act on the basis ``J_{a,b}`` of the tensor square and are stored by
rows: ``rows[(a, b)]`` maps each target pair ``(c, d)`` to the coefficient
``B_{a,b}^{c,d}`` in ``B J_{a,b} = sum B_{a,b}^{c,d} J_{c,d}``.  Indices are
order positions (see :mod:`yangyang.liedata`); labels only matter at the
JSON boundary.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .liedata import LieType, weight_table
from .ring import ONE, ZERO, QFrac, QLaurent, divide_exact, q, serialize

__all__ = [
    "RMatrix", "PairingData", "build_monodromy", "build_pairing", "twist_eigenvalue",
    "build_Q", "verify_yang_baxter", "verify_pairing_eigenvector", "minimal_polynomial",
    "inverse", "lowest_root_labels", "summary_coefficient", "summary_disagreements",
    "weight_conservation_violations", "pure_swap_violations", "monodromy_pair",
]

Pair = tuple[int, int]
Rows = dict[Pair, dict[Pair, QLaurent]]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True, eq=False)
class RMatrix:
    """Sparse operator on ``V (x) V`` with Laurent coefficients."""

    lie: LieType
    rows: Rows = field(repr=False)

    @property
    def dim(self) -> int:
        return weight_table(self.lie).dim

    def entry(self, src: Pair, dst: Pair) -> QLaurent:
        return self.rows.get(src, {}).get(dst, ZERO)

    def nonzero(self) -> Iterable[tuple[Pair, Pair, QLaurent]]:
        for src in sorted(self.rows):
            for dst, c in sorted(self.rows[src].items()):
                yield src, dst, c

    def with_entry(self, src: Pair, dst: Pair, value: QLaurent) -> "RMatrix":
        rows = {k: dict(v) for k, v in self.rows.items()}
        row = rows.setdefault(src, {})
        if value:
            row[dst] = value
        else:
            row.pop(dst, None)
        return RMatrix(self.lie, rows)

    @classmethod
    def identity(cls, lie: LieType) -> "RMatrix":
        dim = weight_table(lie).dim
        return cls(lie, {(a, b): {(a, b): ONE} for a in range(dim) for b in range(dim)})

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        """``self`` applied first, then ``other``."""
        out: Rows = {}
        for src, row in self.rows.items():
            acc: dict[Pair, QLaurent] = {}
            for mid, c in row.items():
                for dst, e in other.rows.get(mid, {}).items():
                    v = acc.get(dst, ZERO) + c * e
                    if v:
                        acc[dst] = v
                    else:
                        acc.pop(dst, None)
            if acc:
                out[src] = acc
        return RMatrix(self.lie, out)

    def scale(self, c: QLaurent) -> "RMatrix":
        if not c:
            return RMatrix(self.lie, {})
        return RMatrix(self.lie, {s: {t: v * c for t, v in row.items()} for s, row in self.rows.items()})

    def __add__(self, other: "RMatrix") -> "RMatrix":
        out = {k: dict(v) for k, v in self.rows.items()}
        for src, row in other.rows.items():
            acc = out.setdefault(src, {})
            for dst, c in row.items():
                v = acc.get(dst, ZERO) + c
                if v:
                    acc[dst] = v
                else:
                    acc.pop(dst, None)
        return RMatrix(self.lie, {k: v for k, v in out.items() if v})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        strip = lambda rows: {k: v for k, v in rows.items() if v}
        return self.lie == other.lie and strip(self.rows) == strip(other.rows)

    __hash__ = None

    def to_json(self) -> dict:
        labels = weight_table(self.lie).labels
        entries = [
            {"src": [labels[s[0]].to_json(), labels[s[1]].to_json()],
             "dst": [labels[t[0]].to_json(), labels[t[1]].to_json()],
             "poly": c.to_triples()}
            for s, t, c in self.nonzero()
        ]
        return {"type": str(self.lie), "dim": self.dim, "entries": entries}

    def serialize_entry(self, src: Pair, dst: Pair) -> str:
        return serialize(self.entry(src, dst))


# -- the wall-crossing tables ------------------------------------------------


def _antidiagonal_coefficient(fam: str, n: int, p: int, j: int) -> QLaurent:
    """Coefficient at target ``(p-j, N-p+j)`` for the source ``(N-p, p)``, ``j >= 1``."""
    sgn = -1 if j % 2 else 1
    h = HALF
    if fam == "B":
        if (p > n and p - j > n) or (0 < j <= p <= n - 1):
            return q(Fraction(j, 2), sgn) * (q(h) - q(-h))
        if p == n:
            return q(Fraction(j, 2), sgn) * (1 - q(-h))
        if p > n and p - j == n:
            return q(Fraction(j, 2) + QUARTER, sgn) * (q(QUARTER) + q(-QUARTER)) * (1 - q(-1))
        if p > n and p - j == 2 * n - p:
            return (q(h) - q(-h)) * (q(n - p + j - h, sgn) - 1)
        if p > n and p - j < n:
            return q(Fraction(j - 1, 2), sgn) * (q(h) - q(-h))
    elif fam == "C":
        def base(e: Fraction) -> QLaurent:
            return q(e, sgn) - q(e - h, sgn)
        if 0 < j <= p < n:
            return base(Fraction(j + 1, 4))
        if p == n:
            return q(Fraction(3, 4)) * (q(-1) - 1) if j == 1 else base(Fraction(j + 2, 4))
        if p > n:
            if p - j >= n:
                return base(Fraction(j + 1, 4))
            if p - j == 2 * n - 1 - p and p - j < n - 1:
                return (1 - q(Fraction(n - p + j, 2), sgn)) * (q(-QUARTER) - q(QUARTER))
            return base(Fraction(j + 2, 4))
    elif fam == "D":
        if (p > n and p - j >= n) or (0 < j <= p < n):
            return q(Fraction(j + 1, 2), sgn) * (1 - q(-1))
        if p >= n and p - j <= n - 1:
            c = q(Fraction(j, 2), -sgn) * (1 - q(-1))
            if 2 * p - j == 2 * n - 1:
                c = c + q(-h) - q(h)
            return c
    raise ValueError(f"no wall-crossing coefficient for {fam}{n}, p={p}, j={j}")


def _build_rows(t: LieType) -> Rows:
    tab = weight_table(t)
    n, fam, dim = t.rank, t.family, tab.dim
    g = tab.gram
    anti = tab.antidiagonal_sum
    s = tab.step
    hecke = q(-s / 2) - q(s / 2)
    rows: Rows = {}
    for a in range(dim):
        for b in range(dim):
            swap = q(-g[a][b] / 2)
            row = {(b, a): swap}
            if anti is not None and a + b == anti:
                for j in range(1, b + 1):
                    tgt = (b - j, anti - b + j)
                    v = row.get(tgt, ZERO) + _antidiagonal_coefficient(fam, n, b, j)
                    if v:
                        row[tgt] = v
                    else:
                        row.pop(tgt, None)
            elif a < b:
                row[(a, b)] = swap * hecke
            rows[(a, b)] = row
    return rows


@lru_cache(maxsize=None)
def build_monodromy(t: LieType) -> RMatrix:
    """The monodromy ``B`` of the half rotation exchanging two points."""
    return RMatrix(t, _build_rows(t))


# -- summary displays, kept only for cross-checking ---------------------------

def summary_coefficient(t: LieType, pa: int, pb: int) -> QLaurent | None:
    """Closed summary for the antidiagonal entry with source second index ``pa``
    and target second index ``pb`` (positions), or None where it says nothing.

    Only targets reached with ``j = pa + pb - N >= 1`` are covered.
    """
    n, fam = t.rank, t.family
    anti = weight_table(t).antidiagonal_sum
    if anti is None or pa + pb - anti < 1:
        return None
    h = HALF
    sign = 1 if (pa + pb) % 2 == 0 else -1
    if fam == "B":
        diff = q(h) - q(-h)
        if pa > n and pb == n:
            return q(Fraction(pa - n, 2), (-1) ** (pa + n)) * diff * (1 + q(-h))
        if (pa < n < pb) or (pb < n < pa):
            return q(-n + Fraction(pa + pb, 2), sign) * diff
        if pa > n and pb > n:
            return diff * (q(-n + Fraction(pa + pb - 1, 2), sign) - (1 if pa == pb else 0))
        if pa == n and pb > n:
            return q(Fraction(pb - n, 2), (-1) ** (n + pb)) * (1 - q(-h))
        return None
    diff4 = q(QUARTER) - q(-QUARTER)
    if fam == "C":
        if (pa <= n - 1 and pb >= n) or (pa >= n and pb <= n - 1):
            return q(-Fraction(2 * n - pa - pb - 1, 4), -sign) * diff4
        if pa >= n and pb >= n:
            c = q(-Fraction(2 * n - pa - pb - 2, 4), -sign) * diff4
            return c - diff4 if pa == pb else c
        return None
    diff = q(h) - q(-h)
    if pa <= n - 1 and pb >= n:
        return q(-n + Fraction(pa + pb + 1, 2), -sign) * diff
    if pa > n and pb <= n - 1:
        return q(-n + Fraction(pa + pb, 2), sign) * diff
    if pa >= n and pb >= n:
        return -diff if pa == pb else ZERO
    return None


def summary_disagreements(t: LieType) -> list[tuple[Pair, Pair, QLaurent, QLaurent]]:
    """Entries where the summary display and the per-j assembly differ."""
    tab = weight_table(t)
    anti = tab.antidiagonal_sum
    if anti is None:
        return []
    R = build_monodromy(t)
    out = []
    for pa in range(tab.dim):
        pb_range = range(max(0, anti - pa + 1), min(tab.dim, anti + 1))
        for pb in pb_range:
            src, dst = (anti - pa, pa), (anti - pb, pb)
            summary = summary_coefficient(t, pa, pb)
            if summary is None:
                continue
            assembled = R.entry(src, dst)
            if assembled != summary:
                out.append((src, dst, assembled, summary))
    return out


# -- verification --------------------------------------------------------------

def _apply(rows: Rows, vec: Mapping[tuple, QLaurent], k: int) -> dict[tuple, QLaurent]:
    out: dict[tuple, QLaurent] = {}
    for tup, c in vec.items():
        for (x, y), r in rows[(tup[k], tup[k + 1])].items():
            nt = tup[:k] + (x, y) + tup[k + 2:]
            v = out.get(nt, ZERO) + c * r
            if v:
                out[nt] = v
            else:
                out.pop(nt, None)
    return out


def verify_yang_baxter(R: RMatrix, report: list | None = None) -> bool:
    """``R12 R23 R12 == R23 R12 R23`` on every basis vector of ``V^(x)3``."""
    rows = {k: v for k, v in R.rows.items()}
    dim = R.dim
    for a in range(dim):
        for b in range(dim):
            rows.setdefault((a, b), {})
    ok = True
    for tup in itertools.product(range(dim), repeat=3):
        v = {tup: ONE}
        lhs = _apply(rows, _apply(rows, _apply(rows, v, 0), 1), 0)
        rhs = _apply(rows, _apply(rows, _apply(rows, v, 1), 0), 1)
        if lhs != rhs:
            ok = False
            if report is None:
                return False
            diff = {k: (str(lhs.get(k, ZERO)), str(rhs.get(k, ZERO)))
                    for k in set(lhs) | set(rhs) if lhs.get(k, ZERO) != rhs.get(k, ZERO)}
            report.append({"basis": list(tup), "diff": {str(k): v for k, v in sorted(diff.items())}})
            if len(report) >= 5:
                return False
    return ok


def weight_conservation_violations(R: RMatrix) -> list[tuple[Pair, Pair]]:
    tab = weight_table(R.lie)
    w = tab.weights
    bad = []
    for src, dst, _ in R.nonzero():
        lhs = tuple(x + y for x, y in zip(w[src[0]], w[src[1]]))
        rhs = tuple(x + y for x, y in zip(w[dst[0]], w[dst[1]]))
        if lhs != rhs:
            bad.append((src, dst))
    return bad


def pure_swap_violations(R: RMatrix) -> list[Pair]:
    """Sources without wall-crossing whose row is not the single swap monomial."""
    tab = weight_table(R.lie)
    anti = tab.antidiagonal_sum
    bad = []
    for a in range(tab.dim):
        for b in range(a + 1):
            if anti is not None and a + b == anti:
                continue
            row = {k: v for k, v in R.rows.get((a, b), {}).items() if v}
            expected = {(b, a): q(-tab.gram[a][b] / 2)}
            if row != expected:
                bad.append((a, b))
    return bad


# -- minimal polynomial and inverse --------------------------------------------

_PROBE = cmath.exp(0.7j) * 1.13


def _flatten(mats: list[RMatrix]) -> list[Pair]:
    keys = set()
    for m in mats:
        for src, dst, _ in m.nonzero():
            keys.add((src, dst))
    return sorted(keys)


def _numeric_rank(vectors: list[list[complex]], tol: float = 1e-9) -> list[int]:
    """Greedy pivot rows making the columns independent (complex elimination)."""
    mat = [list(v) for v in vectors]
    n_cols = len(mat[0]) if mat else 0
    pivots = []
    used = set()
    work = [row[:] for row in mat]
    for col in range(n_cols):
        best, best_val = None, tol
        for r, row in enumerate(work):
            if r in used:
                continue
            if abs(row[col]) > best_val:
                best, best_val = r, abs(row[col])
        if best is None:
            return pivots
        used.add(best)
        pivots.append(best)
        piv = work[best]
        for r, row in enumerate(work):
            if r != best and row[col]:
                f = row[col] / piv[col]
                work[r] = [x - f * y for x, y in zip(row, piv)]
    return pivots


def _det(m: list[list[QLaurent]]) -> QLaurent:
    if len(m) == 1:
        return m[0][0]
    total = ZERO
    for col in range(len(m)):
        minor = [row[:col] + row[col + 1:] for row in m[1:]]
        term = m[0][col] * _det(minor)
        total = total + term if col % 2 == 0 else total - term
    return total


def minimal_polynomial(R: RMatrix, max_degree: int = 3) -> list[QLaurent]:
    """Coefficients ``[c_0, ..., c_{k-1}, 1]`` of the monic minimal polynomial.

    Searches for an exact linear dependence among ``I, R, ..., R^k``.
    """
    powers = [RMatrix.identity(R.lie)]
    for k in range(1, max_degree + 1):
        powers.append(powers[-1] @ R)
        keys = _flatten(powers)
        numeric = [[powers[i].entry(*key).eval(_PROBE) for i in range(k)] for key in keys]
        pivots = _numeric_rank(numeric)
        if len(pivots) < k:
            continue
        chosen = [keys[r] for r in pivots]
        system = [[powers[i].entry(*key) for i in range(k)] for key in chosen]
        rhs = [-powers[k].entry(*key) for key in chosen]
        det = _det(system)
        if not det:
            continue
        coeffs = []
        for i in range(k):
            replaced = [row[:i] + [rhs[r]] + row[i + 1:] for r, row in enumerate(system)]
            c = divide_exact(_det(replaced), det)
            if c is None:
                break
            coeffs.append(c)
        else:
            if all(sum((coeffs[i] * powers[i].entry(*key) for i in range(k)), ZERO)
                   + powers[k].entry(*key) == ZERO for key in keys):
                return coeffs + [ONE]
    raise ArithmeticError(f"no polynomial dependence of degree <= {max_degree} found")


def inverse(R: RMatrix, poly: list[QLaurent] | None = None) -> RMatrix:
    """``R^-1`` as a polynomial in ``R``; needs a unit constant term."""
    poly = poly or minimal_polynomial(R)
    c0 = poly[0]
    if not c0.is_unit():
        raise ArithmeticError(f"constant term {c0} is not a unit; R is not invertible over the ring")
    # R (R^{k-1} + c_{k-1} R^{k-2} + ... + c_1) = -c_0
    scale = -c0.inverse()
    acc = RMatrix.identity(R.lie).scale(poly[-1])
    for c in reversed(poly[1:-1]):
        acc = (acc @ R) + RMatrix.identity(R.lie).scale(c)
    return acc.scale(scale)


@lru_cache(maxsize=None)
def monodromy_pair(t: LieType) -> tuple[RMatrix, RMatrix]:
    """``(R, R^-1)`` for a type, cached."""
    R = build_monodromy(t)
    return R, inverse(R)


# -- pairing and twist -----------------------------------------------------------

def lowest_root_labels(t: LieType) -> list[int]:
    """Root labels of the lowest singular vector of ``V (x) V``."""
    n = t.rank
    if t.family == "A":
        return [1]
    if t.family == "B":
        return list(range(1, n + 1)) + list(range(n, 0, -1))
    if t.family == "C":
        return list(range(1, n + 1)) + list(range(n - 1, 0, -1))
    return list(range(1, n + 1)) + list(range(n - 2, 0, -1))


def self_interaction(t: LieType) -> Fraction:
    tab = weight_table(t)
    labels = lowest_root_labels(t)
    G = tab.root_gram
    return sum((G[labels[i] - 1][labels[k] - 1]
                for i in range(len(labels)) for k in range(i + 1, len(labels))), Fraction(0))


def twist_eigenvalue(t: LieType) -> QLaurent:
    """Eigenvalue of ``B`` on the lowest singular thimble.

    The sign ``(-1)^|I|`` comes from the orientation of the ``|I|`` coordinates
    of the lowest critical point; without it the pairing vector is not an
    eigenvector (A_1 already shows this).
    """
    tab = weight_table(t)
    labels = lowest_root_labels(t)
    om = tab.omega1
    total = sum((tab.form(om, tab.roots[i - 1]) for i in labels), Fraction(0))
    exponent = -HALF * (tab.form(om, om) - 2 * total + self_interaction(t))
    return q(exponent, (-1) ** len(labels))


@dataclass(frozen=True, eq=False)
class PairingData:
    """Creation coefficients ``e^{a,b}``, their inverse and the twist ``d``."""

    lie: LieType
    creation: dict[Pair, QLaurent]
    annihilation: dict[Pair, QFrac]
    twist: QLaurent

    @property
    def partner(self) -> dict[int, int]:
        return {a: b for a, b in self.creation}

    def eta(self) -> list[QLaurent]:
        """Diagonal of ``eta``: ``eta_i = M^{i,s(i)} M_{i,s(i)}`` with ``s`` the partner."""
        out = []
        for i, j in sorted(self.partner.items()):
            v = (QFrac(self.creation[(i, j)]) * self.annihilation[(i, j)]).reduced()
            if not v.is_polynomial():
                raise ArithmeticError(f"eta entry {i} is not a Laurent polynomial: {v}")
            out.append(v.num)
        return out


def _creation(t: LieType) -> dict[Pair, QLaurent]:
    n, fam = t.rank, t.family
    e: dict[Pair, QLaurent] = {}
    if fam == "A":
        if n != 1:
            raise ValueError(f"pairing not invertible for {t}: only A_1 is supported in type A")
        e[(1, 0)] = q(-QUARTER)
        e[(0, 1)] = q(QUARTER, -1)
    elif fam == "B":
        for i in range(2 * n + 1):
            sgn = (-1) ** i
            if i < n:
                e[(2 * n - i, i)] = q(-Fraction(n - i, 2) + QUARTER, sgn)
            elif i == n:
                e[(n, n)] = (q(QUARTER) + q(-QUARTER)) * sgn
            else:
                e[(2 * n - i, i)] = q(-Fraction(n - i, 2) - QUARTER, sgn)
    elif fam == "C":
        for i in range(2 * n):
            shift = n - i if i < n else n - i - 1
            e[(2 * n - 1 - i, i)] = q(-Fraction(shift, 4), (-1) ** i)
    else:
        # slots 0..n-2 and n..2n-2 carry the generic pattern; the doubled middle
        # level (positions n-1, n) pairs with itself crosswise.
        def pos(slot: int) -> int:
            return slot if slot <= n - 1 else slot + 1
        for i in range(2 * n - 1):
            if i < n - 1:
                e[(pos(2 * n - 2 - i), pos(i))] = q(-Fraction(n - i - 1, 2), (-1) ** i)
            elif i >= n:
                e[(pos(2 * n - 2 - i), pos(i))] = q(-Fraction(n - 1 - i, 2), (-1) ** i)
        e[(n - 1, n)] = e[(n, n - 1)] = QLaurent.const((-1) ** (n - 1))
    return e


@lru_cache(maxsize=None)
def build_pairing(t: LieType) -> PairingData:
    creation = _creation(t)
    annihilation = {(b, a): QFrac(1, c) for (a, b), c in creation.items()}
    return PairingData(t, creation, annihilation, twist_eigenvalue(t))


def verify_pairing_eigenvector(t: LieType, creation: Mapping[Pair, QLaurent] | None = None,
                               twist: QLaurent | None = None) -> bool:
    """``sum_{a,b} e^{a,b} B_{a,b}^{c,d} == d e^{c,d}`` for every ``(c, d)``."""
    R = build_monodromy(t)
    creation = creation if creation is not None else build_pairing(t).creation
    twist = twist if twist is not None else twist_eigenvalue(t)
    image: dict[Pair, QLaurent] = {}
    for src, c in creation.items():
        for dst, r in R.rows.get(src, {}).items():
            image[dst] = image.get(dst, ZERO) + c * r
    keys = set(image) | set(creation)
    return all(image.get(k, ZERO) == twist * creation.get(k, ZERO) for k in keys)


# -- the similarity Q --------------------------------------------------------------

def build_Q(t: LieType) -> dict[Pair, QFrac]:
    """Diagonal of ``Q``: identity off the antidiagonal sector, alternating signs on it.

    Keyed by pair of positions; every pair of ``V (x) V`` is present.
    """
    tab = weight_table(t)
    n, dim = t.rank, tab.dim
    anti = tab.antidiagonal_sum
    out = {(a, b): QFrac(ONE) for a in range(dim) for b in range(dim)}
    if anti is None:
        return out
    for i in range(anti + 1):
        if t.family == "B":
            if i == n:
                val = QFrac((-1) ** n, q(QUARTER) + q(-QUARTER))
            else:
                val = QFrac((-1) ** i)
        else:
            val = QFrac((-1) ** (i if i < n else i - 1))
        out[(anti - i, i)] = val
    return out

