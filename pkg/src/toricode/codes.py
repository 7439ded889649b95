"""Generator matrices and exact minimum distances of (generalized) toric codes.

A configuration S of exponent vectors in [0, q-2]^m yields one matrix row
per point: the values of the monomial t^a at every torus point, in the
fixed torus order.  Distances are exact integers, computed either by
projective exhaustive enumeration or by a Brouwer-Zimmermann style
information-set enumeration with converging lower/upper bounds.
"""

from __future__ import annotations

import itertools
import time
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from toricode.gf import FiniteField, torus_points

MESSAGE_BUDGET = 10**7
_CHUNK_CELLS = 1 << 21


class BudgetExceededError(Exception):
    """Raised when an enumeration would exceed its message budget."""


@dataclass
class LinearCode:
    """A linear code over GF(q) given by a row-reduced generator matrix.

    ``evaluation_matrix`` keeps one row per configuration point (before
    row reduction), so polynomials can be addressed by their monomial
    coefficients even when the rank drops below |S|.
    """

    field: FiniteField
    n: int
    generator: np.ndarray
    evaluation_matrix: np.ndarray | None = None
    config: tuple | None = None
    support: np.ndarray | None = dc_field(default=None, repr=False)

    def __post_init__(self):
        self.generator = np.ascontiguousarray(self.generator, dtype=np.uint8)
        if self.generator.ndim != 2:
            raise ValueError("generator must be a 2-d matrix")
        if self.generator.shape[1] != self.n:
            raise ValueError("generator width disagrees with block length")
        r, _, rank = gf_rref(self.generator, self.field)
        if rank != self.generator.shape[0]:
            raise ValueError("generator rows must be linearly independent")

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def encode(self, message) -> np.ndarray:
        """Codeword of a length-k message over the generator rows."""
        msg = np.asarray(message, dtype=np.uint8)
        if msg.shape != (self.k,):
            raise ValueError(f"message must have length k={self.k}")
        return _combine_rows(self.generator, msg, self.field)


@dataclass
class CodeParams:
    """[n, k, d] with the method and certification state of d.

    ``d`` is the exact distance when ``certified``; otherwise it is the
    best bound the chosen method produced (an upper bound except in
    lower-only runs).
    """

    n: int
    k: int
    d: int
    d_method: str  # exhaustive | information-set | upper-bound-only
    certified: bool = True
    lower_bound: int | None = None
    upper_bound: int | None = None
    witness_message: np.ndarray | None = dc_field(default=None, repr=False)
    witness_codeword: np.ndarray | None = dc_field(default=None, repr=False)
    weight_enumerator: np.ndarray | None = dc_field(default=None, repr=False)
    max_zeros: int | None = None

    def __post_init__(self):
        if self.k >= 1 and self.certified:
            if not 1 <= self.d <= self.n:
                raise ValueError(f"certified distance {self.d} outside [1, {self.n}]")
            if self.d > self.n - self.k + 1:
                raise ValueError("Singleton bound violated; distance computation is buggy")


# --- field-vectorized helpers ------------------------------------------


def gf_rref(matrix: np.ndarray, field: FiniteField,
            allowed_cols=None) -> tuple[np.ndarray, list[int], int]:
    """Row-reduce over GF(q); returns (reduced matrix, pivot columns, rank).

    If ``allowed_cols`` is given, pivots are only chosen among those
    columns (rows that cannot be pivoted there end up zero on them).
    """
    m = np.array(matrix, dtype=np.uint8)
    rows, cols = m.shape
    col_iter = range(cols) if allowed_cols is None else allowed_cols
    mul, sub, inv = field.mul_table, field.sub_table, field.inv_table
    pivots: list[int] = []
    r = 0
    for c in col_iter:
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        pivot_inv = inv[m[r, c]]
        m[r] = mul[pivot_inv, m[r]]
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = sub[m[other], mul[m[other, c][:, None], m[r][None, :]]]
        pivots.append(c)
        r += 1
    return m, pivots, r


def _combine_rows(matrix: np.ndarray, coeffs: np.ndarray, field: FiniteField) -> np.ndarray:
    out = np.zeros(matrix.shape[1], dtype=np.uint8)
    mul, add = field.mul_table, field.add_table
    for c, row in zip(coeffs, matrix):
        if c:
            out = add[out, mul[c, row]]
    return out


def _row_multiples(matrix: np.ndarray, field: FiniteField) -> np.ndarray:
    """(k, q, n): entry [i, c] is c * row_i, for gather-based encoding."""
    return np.ascontiguousarray(np.swapaxes(field.mul_table[:, matrix], 0, 1))


def _accumulate(acc: np.ndarray, term: np.ndarray, field: FiniteField) -> np.ndarray:
    if field.p == 2:
        acc ^= term
        return acc
    return field.add_table[acc, term]


# --- code construction --------------------------------------------------


def build_code(S, field: FiniteField, m: int) -> LinearCode:
    """Generalized toric code of the exponent configuration S in Z^m.

    Exponents are normalized mod q-1 first (they are only meaningful on
    the torus); a warning reports collisions, which make k < |S|.
    """
    pts = [tuple(int(c) for c in p) for p in S]
    if not pts:
        raise ValueError("empty configuration")
    if any(len(p) != m for p in pts):
        raise ValueError(f"configuration points must have dimension {m}")
    qm1 = field.q - 1
    support = np.array(pts, dtype=np.int64) % qm1
    seen: dict[tuple, tuple] = {}
    for orig, norm in zip(pts, map(tuple, support.tolist())):
        if norm in seen:
            warnings.warn(
                f"exponents {seen[norm]} and {orig} coincide mod {qm1}; "
                "dimension will be smaller than |S|", stacklevel=2)
        else:
            seen[norm] = orig
    torus = torus_points(field, m)
    rows = field.exp_table[(torus.exponents @ support.T) % qm1].T
    rows = np.ascontiguousarray(rows, dtype=np.uint8)
    reduced, _, rank = gf_rref(rows, field)
    return LinearCode(field=field, n=torus.n, generator=reduced[:rank],
                      evaluation_matrix=rows, config=tuple(pts), support=support)


def weight_of_message(code: LinearCode, message) -> int:
    """Weight of the codeword of a coefficient vector.

    The coefficients are indexed by the configuration points (one per
    monomial) when the code was built from a configuration, else by the
    generator rows.
    """
    matrix = code.evaluation_matrix if code.evaluation_matrix is not None else code.generator
    msg = np.asarray(message, dtype=np.uint8)
    if msg.shape != (matrix.shape[0],):
        raise ValueError(f"message must have length {matrix.shape[0]}")
    cw = _combine_rows(matrix, msg, code.field)
    return int(np.count_nonzero(cw))


def zero_count_of_message(code: LinearCode, message) -> int:
    """Number of torus points where the polynomial vanishes."""
    return code.n - weight_of_message(code, message)


# --- exhaustive distance -------------------------------------------------


def _mixed_radix(start: int, count: int, ndigits: int, base: int) -> np.ndarray:
    vals = np.arange(start, start + count, dtype=np.int64)
    out = np.empty((count, ndigits), dtype=np.int64)
    for j in range(ndigits - 1, -1, -1):
        out[:, j] = vals % base
        vals //= base
    return out


def min_distance_exhaustive(code: LinearCode, with_enumerator: bool = False,
                            budget: int = MESSAGE_BUDGET) -> CodeParams:
    """Exact minimum distance by enumerating projective messages.

    Nonzero codewords come in scalar classes of size q-1 sharing a
    weight, so only messages with first nonzero coordinate 1 are
    generated: (q^k - 1)/(q - 1) of them.
    """
    field, k, n, q = code.field, code.k, code.n, code.field.q
    if k == 0:
        raise ValueError("distance of the zero code is undefined")
    reps = (q**k - 1) // (q - 1)
    if reps > budget:
        raise BudgetExceededError(
            f"{reps} projective messages exceed budget {budget}; "
            "use the information-set method")
    rm = _row_multiples(code.generator, field)
    best_w = n + 1
    best_msg = None
    max_zeros = 0
    enum = np.zeros(n + 1, dtype=np.int64) if with_enumerator else None
    chunk = max(1, _CHUNK_CELLS // max(n, 1))
    for lead in range(k):
        free = k - lead - 1
        total = q**free
        for start in range(0, total, chunk):
            cnt = min(chunk, total - start)
            digits = _mixed_radix(start, cnt, free, q) if free else None
            acc = np.repeat(rm[lead][1][None, :], cnt, axis=0)
            for j in range(free):
                col = digits[:, j]
                acc = _accumulate(acc, rm[lead + 1 + j][col], field)
            weights = np.count_nonzero(acc, axis=1)
            zeros = (acc == 0).sum(axis=1)
            mz = int(zeros.max()) if zeros.size else 0
            if mz > max_zeros:
                max_zeros = mz
            if enum is not None:
                enum += np.bincount(weights, minlength=n + 1)
            wmin_idx = int(np.argmin(weights))
            if int(weights[wmin_idx]) < best_w:
                best_w = int(weights[wmin_idx])
                best_msg = np.zeros(k, dtype=np.uint8)
                best_msg[lead] = 1
                if free:
                    best_msg[lead + 1:] = digits[wmin_idx]
    if enum is not None:
        enum *= q - 1
        enum[0] = 1
    return CodeParams(
        n=n, k=k, d=best_w, d_method="exhaustive", certified=True,
        lower_bound=best_w, upper_bound=best_w,
        witness_message=best_msg, witness_codeword=code.encode(best_msg),
        weight_enumerator=enum, max_zeros=max_zeros)


# --- information-set distance --------------------------------------------


def _disjoint_information_sets(code: LinearCode):
    """Greedy disjoint information sets with adapted generator matrices.

    Returns a list of (pivot_cols, rank, adapted_matrix); in each adapted
    matrix the first ``rank`` rows are systematic on the pivot columns
    and the remaining rows vanish there, so the restriction of any
    codeword to the set reads off part of its message.
    """
    sets = []
    used = np.zeros(code.n, dtype=bool)
    while True:
        allowed = [c for c in range(code.n) if not used[c]]
        if not allowed:
            break
        adapted, pivots, rank = gf_rref(code.generator, code.field, allowed_cols=allowed)
        if rank == 0:
            break
        used[pivots] = True
        sets.append((pivots, rank, adapted))
    return sets


def _weight_patterns(q: int, w: int) -> np.ndarray:
    """All length-w vectors of nonzero elements with first entry 1."""
    cnt = (q - 1) ** (w - 1)
    out = np.empty((cnt, w), dtype=np.int64)
    out[:, 0] = 1
    if w > 1:
        out[:, 1:] = _mixed_radix(0, cnt, w - 1, q - 1) + 1
    return out.astype(np.uint8)


def min_distance_isd(code: LinearCode, mode: str = "exact",
                     max_weight: int | None = None,
                     budget_messages: int | None = None,
                     budget_seconds: float | None = None) -> CodeParams:
    """Minimum distance by information-set enumeration.

    ``exact`` enumerates messages by weight class over greedily chosen
    disjoint information sets until the lower bound meets the best
    weight found.  ``upper-only`` stops at the budget and reports the
    best weight found (a valid upper bound); ``lower-only`` reports the
    lower bound reached.  Budgets degrade the result, never raise.
    """
    if mode not in ("exact", "lower-only", "upper-only"):
        raise ValueError(f"unknown mode {mode!r}")
    field, k, n, q = code.field, code.k, code.n, code.field.q
    if k == 0:
        raise ValueError("distance of the zero code is undefined")
    sets = _disjoint_information_sets(code)
    rms = [_row_multiples(adapted, field) for _, _, adapted in sets]
    deficits = [k - rank for _, rank, _ in sets]

    ub = n + 1
    witness_msg = None
    witness_set = 0
    lb = 0
    used_messages = 0
    t0 = time.monotonic()
    stopped = False

    def out_of_budget() -> bool:
        if budget_messages is not None and used_messages >= budget_messages:
            return True
        if budget_seconds is not None and time.monotonic() - t0 >= budget_seconds:
            return True
        return False

    w_cap = min(k, max_weight) if max_weight is not None else k
    for w in range(1, w_cap + 1):
        patterns = _weight_patterns(q, w)
        for j, (_, rank, adapted) in enumerate(sets):
            rm = rms[j]
            for combo in itertools.combinations(range(k), w):
                for start in range(0, patterns.shape[0], max(1, _CHUNK_CELLS // n)):
                    block = patterns[start:start + max(1, _CHUNK_CELLS // n)]
                    acc = np.repeat(rm[combo[0]][1][None, :], block.shape[0], axis=0)
                    for i in range(1, w):
                        acc = _accumulate(acc, rm[combo[i]][block[:, i]], field)
                    weights = np.count_nonzero(acc, axis=1)
                    idx = int(np.argmin(weights))
                    if int(weights[idx]) < ub:
                        ub = int(weights[idx])
                        witness_msg = np.zeros(k, dtype=np.uint8)
                        witness_msg[list(combo)] = block[idx]
                        witness_set = j
                    used_messages += block.shape[0]
                if out_of_budget():
                    stopped = True
                    break
            if stopped:
                break
        if stopped:
            break
        lb = sum(max(0, w + 1 - deficit) for deficit in deficits)
        if mode != "upper-only" and lb >= ub:
            break
        if mode == "exact" and max_weight is None and w == w_cap:
            break

    certified = lb >= ub and 1 <= ub <= n
    witness_cw = None
    if witness_msg is not None:
        witness_cw = _combine_rows(sets[witness_set][2], witness_msg, field)
    if mode == "lower-only":
        d, method = lb, "information-set"
        certified = certified and lb == ub
    elif certified:
        d, method = ub, "information-set"
    else:
        d, method = ub, "upper-bound-only"
    return CodeParams(
        n=n, k=k, d=d, d_method=method, certified=certified,
        lower_bound=lb, upper_bound=(ub if ub <= n else None),
        witness_message=witness_msg, witness_codeword=witness_cw)


# --- Construction X -------------------------------------------------------


def construction_x(sub: LinearCode, big: LinearCode, aux: LinearCode) -> LinearCode:
    """Lengthen ``big`` by ``aux`` along coset generators over ``sub``.

    Requires sub's row space nested in big's with codimension aux.k; the
    result has length n + n_aux, dimension k_big, and minimum distance
    at least min(d_sub, d_big + d_aux).
    """
    field = big.field
    if sub.field != field or aux.field != field:
        raise ValueError("all three codes must share one field")
    if sub.n != big.n:
        raise ValueError("sub and big must share the block length")
    stacked, _, rank = gf_rref(np.vstack([big.generator, sub.generator]), field)
    if rank != big.k:
        raise ValueError("sub is not contained in big")
    if big.k - sub.k != aux.k:
        raise ValueError("aux dimension must equal k_big - k_sub")
    if aux.k == 0:
        return big

    # coset generators: rows of big independent from sub's row space
    current = sub.generator
    cosets = []
    for row in big.generator:
        trial = np.vstack([current, row[None, :]])
        reduced, _, r = gf_rref(trial, field)
        if r > current.shape[0]:
            cosets.append(row)
            current = reduced[:r]
    cosets = np.array(cosets, dtype=np.uint8)
    if cosets.shape[0] != aux.k:
        raise ValueError("failed to extract coset generators")

    top = np.hstack([sub.generator, np.zeros((sub.k, aux.n), dtype=np.uint8)])
    bottom = np.hstack([cosets, aux.generator])
    return LinearCode(field=field, n=big.n + aux.n,
                      generator=np.vstack([top, bottom]))
