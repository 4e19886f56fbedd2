"""Braid words, their tensor representations and the quantum trace of a closure.

Conventions (fixed by the Markov tests, see the README):

* a positive letter ``s_k`` acts by ``R`` on strands ``k, k+1``; ``s_k^-1`` by ``R^-1``;
* ``eta`` is diagonal, ``eta_i = M^{i,s(i)} M_{i,s(i)}``; contracting it into the
  right factor of ``R`` gives ``d^-1`` times the identity;
* the normalised invariant is ``d^w Tr_q / U`` with ``U`` the one-strand trace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable

from .liedata import LieType, weight_table
from .monodromy import PairingData, RMatrix, build_monodromy, build_pairing, inverse, monodromy_pair
from .ring import ONE, ZERO, QFrac, QLaurent

__all__ = ["BraidWord", "parse_braid", "TensorOperator", "represent", "eta_matrix",
           "quantum_trace", "partial_trace", "framed_trace", "knot_invariant", "KnotInvariant",
           "unknot_value"]

_TOKEN = re.compile(r"^(?:s|σ)(\d+)(\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"generator s{abs(x)} does not exist on {self.strands} strands")

    @property
    def writhe(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return BraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def rotate(self, k: int) -> "BraidWord":
        """Cyclic conjugate: the last ``k`` letters moved to the front."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.strands, self.letters[-k:] + self.letters[:-k] if k else self.letters)

    def stabilize(self, sign: int = 1) -> "BraidWord":
        m = self.strands
        return BraidWord(m + 1, self.letters + ((m if sign > 0 else -m),))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in self.letters))

    def __str__(self) -> str:
        return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)


def parse_braid(text: str, strands_hint: int | None = None) -> BraidWord:
    """Parse ``"s1 s2^-1 s1"``; ``σ`` is accepted for ``s`` and ``^1`` is allowed."""
    letters = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"malformed braid token {tok!r}")
        k = int(m.group(1))
        power = int(m.group(3)) if m.group(2) else 1
        if k == 0:
            raise ValueError("generator index must be positive")
        if power not in (1, -1):
            raise ValueError(f"only exponents 1 and -1 are allowed, got {tok!r}")
        letters.append(k * power)
    strands = strands_hint if strands_hint is not None else max((abs(x) for x in letters), default=0) + 1
    return BraidWord(strands, tuple(letters))


# -- explicit operators (small sizes) ---------------------------------------------

State = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class TensorOperator:
    """Sparse operator on ``V^(x)m`` stored by rows, like :class:`RMatrix`."""

    lie: LieType
    strands: int
    rows: dict[State, dict[State, QLaurent]]

    def entry(self, src: State, dst: State) -> QLaurent:
        return self.rows.get(src, {}).get(dst, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorOperator):
            return NotImplemented
        strip = lambda rows: {k: v for k, v in rows.items() if v}
        return (self.lie, self.strands) == (other.lie, other.strands) and strip(self.rows) == strip(other.rows)

    __hash__ = None

    def is_identity(self) -> bool:
        dim = weight_table(self.lie).dim
        return all(self.rows.get(s, {}) == {s: ONE} for s in _states(dim, self.strands))


def _states(dim: int, m: int) -> Iterable[State]:
    if m == 0:
        yield ()
        return
    for head in _states(dim, m - 1):
        for x in range(dim):
            yield head + (x,)


def _apply_letter(rows, vec: dict, k: int, zero=ZERO) -> dict:
    out: dict = {}
    for tup, c in vec.items():
        for (x, y), r in rows[(tup[k], tup[k + 1])].items():
            nt = tup[:k] + (x, y) + tup[k + 2:]
            v = out.get(nt, zero) + c * r
            if v:
                out[nt] = v
            else:
                out.pop(nt, None)
    return out


def _full_rows(R: RMatrix) -> dict:
    dim = R.dim
    return {(a, b): R.rows.get((a, b), {}) for a in range(dim) for b in range(dim)}


def represent(R: RMatrix, beta: BraidWord, R_inv: RMatrix | None = None) -> TensorOperator:
    """Operator of ``beta``: letters applied left to right, each on its two strands."""
    if any(x < 0 for x in beta.letters) and R_inv is None:
        R_inv = monodromy_pair(R.lie)[1] if R == build_monodromy(R.lie) else inverse(R)
    pos, neg = _full_rows(R), _full_rows(R_inv) if R_inv is not None else None
    dim = R.dim
    rows = {}
    for s in _states(dim, beta.strands):
        vec = {s: ONE}
        for x in beta.letters:
            vec = _apply_letter(pos if x > 0 else neg, vec, abs(x) - 1)
        if vec:
            rows[s] = vec
    return TensorOperator(R.lie, beta.strands, rows)


def eta_matrix(p: PairingData) -> list[list[QLaurent]]:
    diag = p.eta()
    return [[diag[i] if i == j else ZERO for j in range(len(diag))] for i in range(len(diag))]


def quantum_trace(T: TensorOperator, p: PairingData) -> QLaurent:
    """``sum T_{i..}^{j..} eta^{i_1}_{j_1} ... eta^{i_m}_{j_m}``."""
    eta = eta_matrix(p)
    total = ZERO
    for src, row in T.rows.items():
        for dst, c in row.items():
            w = c
            for i, j in zip(src, dst):
                w = w * eta[i][j]
                if not w:
                    break
            total = total + w
    return total


def partial_trace(R: RMatrix, p: PairingData) -> dict[tuple[int, int], QLaurent]:
    """Contract ``eta`` into the right factor of ``R``: an operator on one strand."""
    eta = p.eta()
    out: dict[tuple[int, int], QLaurent] = {}
    for (a, b), row in R.rows.items():
        for (c, d), v in row.items():
            if d == b:
                w = out.get((a, c), ZERO) + v * eta[b]
                if w:
                    out[(a, c)] = w
                else:
                    out.pop((a, c), None)
    return out


# -- fast exact trace ---------------------------------------------------------------
#
# Every Laurent coefficient is shifted to an ordinary polynomial in x = q^(1/D)
# and packed into one integer by evaluating at x = 2^K (K larger than any
# coefficient can get).  Ring arithmetic is then plain int arithmetic.

@dataclass(frozen=True)
class _Engine:
    lie: LieType
    den: int
    pos: dict
    neg: dict
    pos_t: dict
    neg_t: dict
    shift_pos: int
    shift_neg: int
    shift_eta: int
    eta_poly: tuple
    norm_pos: int
    norm_neg: int


def _exponent_data(values: Iterable[QLaurent]) -> tuple[int, Fraction]:
    den, low = 1, None
    for v in values:
        if not v:
            continue
        lo, _ = v.degree_range()
        low = lo if low is None else min(low, lo)
        for e in v.terms:
            den = lcm(den, e.denominator)
    return den, (low if low is not None else Fraction(0))


def _poly(v: QLaurent, den: int, shift: int) -> dict[int, int]:
    return {int(e * den) + shift: c for e, c in v.terms.items()}


def _pack(poly: dict[int, int], bits: int) -> int:
    return sum(c << (bits * k) for k, c in poly.items())


def _unpack(value: int, bits: int) -> dict[int, int]:
    out = {}
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    k = 0
    while value:
        r = value & mask
        if r >= half:
            r -= 1 << bits
        if r:
            out[k] = r
        value = (value - r) >> bits
        k += 1
    return out


@lru_cache(maxsize=None)
def _engine(t: LieType) -> _Engine:
    R, Ri = monodromy_pair(t)
    eta = build_pairing(t).eta()
    all_vals = [v for _, _, v in R.nonzero()] + [v for _, _, v in Ri.nonzero()] + eta
    den, _ = _exponent_data(all_vals)
    _, lo_p = _exponent_data(v for _, _, v in R.nonzero())
    _, lo_n = _exponent_data(v for _, _, v in Ri.nonzero())
    _, lo_e = _exponent_data(eta)
    sp, sn, se = -int(lo_p * den), -int(lo_n * den), -int(lo_e * den)

    def poly_rows(M: RMatrix, shift: int):
        rows = {(a, b): {} for a in range(M.dim) for b in range(M.dim)}
        for src, dst, v in M.nonzero():
            rows[src][dst] = _poly(v, den, shift)
        return rows

    def norm(rows) -> int:
        return max(sum(sum(abs(c) for c in p.values()) for p in row.values()) for row in rows.values())

    pr, nr = poly_rows(R, sp), poly_rows(Ri, sn)

    def transpose(rows):
        out = {k: {} for k in rows}
        for src, row in rows.items():
            for dst, p in row.items():
                out[dst][src] = p
        return out

    return _Engine(t, den, pr, nr, transpose(pr), transpose(nr), sp, sn, se,
                   tuple(_poly(v, den, se) for v in eta), norm(pr), norm(nr))


def _packed_rows(rows, bits):
    return {k: {d: _pack(p, bits) for d, p in row.items()} for k, row in rows.items()}


def framed_trace(t: LieType, beta: BraidWord) -> QLaurent:
    """``Tr_q`` of the braid's operator, without any framing correction."""
    eng = _engine(t)
    dim = weight_table(t).dim
    m = beta.strands
    letters = beta.letters
    n_pos = sum(1 for x in letters if x > 0)
    n_neg = len(letters) - n_pos
    bound = dim ** m * eng.norm_pos ** n_pos * eng.norm_neg ** n_neg
    bits = bound.bit_length() + 2
    pos, neg = _packed_rows(eng.pos, bits), _packed_rows(eng.neg, bits)
    pos_t, neg_t = _packed_rows(eng.pos_t, bits), _packed_rows(eng.neg_t, bits)
    eta = [_pack(p, bits) for p in eng.eta_poly]
    half = len(letters) // 2
    front, back = letters[:half], letters[half:]

    total = 0
    for s in _states(dim, m):
        fwd = {s: 1}
        for x in front:
            fwd = _apply_letter(pos if x > 0 else neg, fwd, abs(x) - 1, 0)
            if not fwd:
                break
        if not fwd:
            continue
        bwd = {s: 1}
        for x in reversed(back):
            bwd = _apply_letter(pos_t if x > 0 else neg_t, bwd, abs(x) - 1, 0)
            if not bwd:
                break
        diag = sum(c * bwd[u] for u, c in fwd.items() if u in bwd)
        if diag:
            w = diag
            for i in s:
                w *= eta[i]
            total += w
    shift = n_pos * eng.shift_pos + n_neg * eng.shift_neg + m * eng.shift_eta
    terms = {Fraction(k - shift, eng.den): c for k, c in _unpack(total, bits).items()}
    return QLaurent(terms)


@dataclass(frozen=True, eq=False)
class KnotInvariant:
    writhe: int
    framed_trace: QLaurent
    normalized: QFrac
    unknot_value: QLaurent

    def to_json(self) -> dict:
        norm = self.normalized
        return {
            "writhe": self.writhe,
            "framed_trace": self.framed_trace.to_triples(),
            "normalized": norm.num.to_triples() if norm.is_polynomial() else norm.to_json(),
            "unknot_value": self.unknot_value.to_triples(),
        }


def unknot_value(t: LieType) -> QLaurent:
    return sum(build_pairing(t).eta(), ZERO)


def knot_invariant(t: LieType, beta: BraidWord) -> KnotInvariant:
    """``d^w Tr_q(beta) / U``, equal to 1 on the unknot."""
    p = build_pairing(t)
    tr = framed_trace(t, beta)
    U = unknot_value(t)
    w = beta.writhe
    normalized = QFrac(tr * p.twist ** w, U).reduced()
    return KnotInvariant(w, tr, normalized, U)
