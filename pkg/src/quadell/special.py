"""Scalar special functions and sum-normalized Jack polynomials.

This module is the combinatorial core shared by every series formula in the
package: integer partitions, generalized Pochhammer symbols, the multivariate
gamma function over a division algebra, Stiefel manifold volumes, and Jack
polynomials C_kappa in the normalization fixed by

    sum over partitions kappa of weight k of C_kappa(X) = (tr X)^k.

Jack polynomials are evaluated through a monomial-symmetric-function
expansion. The monic (P-normalized) polynomials are computed as triangular
eigenvectors of the standard degree-preserving second-order operator on
symmetric polynomials, whose matrix in the monomial basis is triangular with
respect to dominance order; the C normalization is then applied through the
hook-product constant. Coefficients are exact rationals up to weight
``EXACT_WEIGHT_MAX`` and float64 beyond. Tables are cached per
(weight, variable count, alpha) behind an exclusive-writer lock.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, TruncationError

#: Division algebra real dimensions handled by the formula layer.
ALGEBRA_DIMS = (1, 2, 4, 8)

#: Largest weight for which Jack coefficients are computed in exact rationals.
EXACT_WEIGHT_MAX = 12


@dataclass(frozen=True)
class AlgebraKind:
    """A real normed division algebra, identified by its real dimension beta."""

    beta: int

    def __post_init__(self) -> None:
        if self.beta not in ALGEBRA_DIMS:
            raise DomainError(f"beta must be one of {ALGEBRA_DIMS}, got {self.beta!r}")

    @property
    def alpha(self) -> Fraction:
        """The Jack parameter alpha = 2/beta."""
        return Fraction(2, self.beta)


def as_beta(beta) -> int:
    """Normalize an ``AlgebraKind`` or plain integer to a validated beta."""
    if isinstance(beta, AlgebraKind):
        return beta.beta
    b = int(beta)
    if b not in ALGEBRA_DIMS:
        raise DomainError(f"beta must be one of {ALGEBRA_DIMS}, got {beta!r}")
    return b


@dataclass(frozen=True)
class Partition:
    """A partition: non-increasing positive integer parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise DomainError(f"partition parts must be positive, got {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"partition parts must be non-increasing, got {parts}")

    @classmethod
    def coerce(cls, obj) -> "Partition":
        if isinstance(obj, Partition):
            return obj
        if isinstance(obj, int):
            return cls((obj,)) if obj else cls(())
        return cls(tuple(obj))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class SeriesControl:
    """Truncation budget and tolerances for the degree-layered series.

    A series is declared converged once two consecutive degree layers each
    contribute less than ``rel_tol * |partial sum| + abs_tol``.
    """

    max_degree: int = 40
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.max_degree < 0:
            raise DomainError("max_degree must be >= 0")
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise DomainError("tolerances must be positive")


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

def _partition_tuples(k: int, max_len: int) -> list[tuple[int, ...]]:
    """All partitions of k with at most max_len parts, reverse-lexicographic."""
    if k == 0:
        return [()]
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == max_len:
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(k, k, [])
    return out


def enumerate_partitions(k: int, max_len: int) -> list[Partition]:
    """Enumerate partitions of ``k`` with at most ``max_len`` parts.

    The order is reverse-lexicographic (largest first), which refines
    dominance order; series code relies on this for reproducible partial
    sums.
    """
    if k < 0:
        raise DomainError("k must be >= 0")
    if max_len < 1:
        raise DomainError("max_len must be >= 1")
    return [Partition(t) for t in _partition_tuples(k, max_len)]


def conjugate_partition(parts: Sequence[int]) -> tuple[int, ...]:
    """The conjugate (transposed Young diagram) of a partition."""
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


# ---------------------------------------------------------------------------
# Pochhammer / gamma / volumes
# ---------------------------------------------------------------------------

def gen_pochhammer(a: float, kappa, beta) -> float:
    """Generalized Pochhammer symbol of weight kappa for algebra dimension beta.

    ``prod_i (a - (i-1) beta/2)_{k_i}`` with the rising factorial
    ``(x)_j = x (x+1) ... (x+j-1)``. Poles are not special-cased: the finite
    product is returned, possibly zero, which legitimately truncates series
    at special integer parameters.
    """
    b = as_beta(beta)
    parts = Partition.coerce(kappa).parts
    out = 1.0
    for i, ki in enumerate(parts):
        base = a - 0.5 * i * b
        for j in range(ki):
            out *= base + j
    return out


def mv_gamma(m: int, a: float, beta) -> float:
    """Multivariate gamma over the algebra: pi^{m(m-1)beta/4} prod_i Gamma(a-(i-1)beta/2)."""
    return math.exp(mv_lgamma(m, a, beta)) if m > 1 or a > 0 else math.gamma(a)


def mv_lgamma(m: int, a: float, beta) -> float:
    """Log of :func:`mv_gamma`, with the same domain checking.

    Raises :class:`DomainError` naming the first factor whose gamma argument
    is at a pole or negative (the precondition is a > (m-1) beta / 2).
    """
    b = as_beta(beta)
    if m < 1:
        raise DomainError("m must be >= 1")
    total = 0.25 * m * (m - 1) * b * math.log(math.pi)
    for i in range(m):
        arg = a - 0.5 * i * b
        if arg <= 0:
            raise DomainError(
                f"mv_gamma pole: factor i={i + 1} has Gamma argument "
                f"a - (i-1)*beta/2 = {arg} <= 0 (need a > {(m - 1) * b / 2})"
            )
        total += math.lgamma(arg)
    return total


def stiefel_volume(m: int, n: int, beta) -> float:
    """Volume of the manifold of n x m frames H with H*H = I_m.

    ``2^m pi^{m n beta / 2} / mv_gamma(m, n beta / 2)``; requires m <= n.
    """
    b = as_beta(beta)
    if not 1 <= m <= n:
        raise DomainError(f"stiefel_volume requires 1 <= m <= n, got m={m}, n={n}")
    log_vol = m * math.log(2.0) + 0.5 * m * n * b * math.log(math.pi) - mv_lgamma(m, 0.5 * n * b, b)
    return math.exp(log_vol)


# ---------------------------------------------------------------------------
# Jack polynomial tables
# ---------------------------------------------------------------------------

def _unique_permutations(pool: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Distinct permutations of a multiset of integers."""
    out: list[tuple[int, ...]] = []
    counts: dict[int, int] = {}
    for v in pool:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    cur: list[int] = []

    def rec() -> None:
        if len(cur) == len(pool):
            out.append(tuple(cur))
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                cur.append(v)
                rec()
                cur.pop()
                counts[v] += 1

    rec()
    return out


class _WeightTables:
    """Monomial-expansion data for all Jack C polynomials of one weight.

    Attributes
    ----------
    parts : list of partition tuples (reverse-lexicographic, <= m parts)
    coeffs : (p, p) float64 array; row i holds the monomial coefficients of
        C_{parts[i]} against the same partition list.
    exact : same data as nested Fractions, present when the weight is within
        the exact-arithmetic range.
    perms : per-partition list of distinct exponent vectors (padded to m).
    """

    __slots__ = ("k", "m", "parts", "index", "coeffs", "exact", "perms")

    def __init__(self, k: int, m: int, alpha: Fraction):
        self.k = k
        self.m = m
        self.parts = _partition_tuples(k, m)
        self.index = {p: i for i, p in enumerate(self.parts)}
        exact = k <= EXACT_WEIGHT_MAX
        rows = _jack_c_rows(self.parts, m, alpha, exact=exact)
        self.exact = rows if exact else None
        self.coeffs = np.array([[float(c) for c in row] for row in rows], dtype=np.float64)
        self.perms = [_unique_permutations(p + (0,) * (m - len(p))) for p in self.parts]

    def monomial_values(self, eigs: np.ndarray) -> np.ndarray:
        """Vector of monomial symmetric polynomial values m_mu(eigs)."""
        dtype = np.complex128 if np.iscomplexobj(eigs) else np.float64
        vals = np.empty(len(self.parts), dtype=dtype)
        for i, perms in enumerate(self.perms):
            acc = 0.0 + 0.0j if dtype is np.complex128 else 0.0
            for expo in perms:
                term = 1.0
                for x, e in zip(eigs, expo):
                    if e:
                        term = term * x**e
                acc += term
            vals[i] = acc
        return vals


def _dominance_eigenvalue(padded: tuple[int, ...], alpha: Fraction):
    """Diagonal entry of the triangular operator for a padded partition."""
    quad = sum(p * (p - 1) for p in padded)
    lin = sum(p * (len(padded) - 1 - i) for i, p in enumerate(padded))
    return Fraction(alpha, 2) * quad + lin


def _source_moves(mu_pad: tuple[int, ...], index: dict[tuple[int, ...], int]):
    """Contributions to m_mu from the operator applied to higher partitions.

    Yields (source index, integer coefficient) pairs: for each slot pair of
    mu and each split (a, b) with a + b = mu_i + mu_j and a > max(mu_i, mu_j),
    the partition obtained by substituting (a, b) acts on m_mu with
    coefficient a - b.
    """
    m = len(mu_pad)
    acc: dict[int, int] = {}
    for i in range(m):
        for j in range(i + 1, m):
            s = mu_pad[i] + mu_pad[j]
            lo = max(mu_pad[i], mu_pad[j])
            for a in range(lo + 1, s + 1):
                b = s - a
                lam = list(mu_pad)
                lam[i], lam[j] = a, b
                lam_t = tuple(sorted((x for x in lam if x), reverse=True))
                src = index.get(lam_t)
                if src is not None:
                    acc[src] = acc.get(src, 0) + (a - b)
    return sorted(acc.items())


def _hook_norm(parts: tuple[int, ...], alpha: Fraction):
    """C-normalization constant alpha^k k! / prod over cells of (alpha(arm+1)+leg)."""
    k = sum(parts)
    conj = conjugate_partition(parts)
    denom = Fraction(1)
    for i, pi in enumerate(parts):
        for j in range(pi):
            denom *= alpha * (pi - j) + (conj[j] - i - 1)
    return Fraction(alpha**k * math.factorial(k), 1) / denom


def _jack_c_rows(parts: list[tuple[int, ...]], m: int, alpha: Fraction, exact: bool):
    """Monomial coefficient rows of the C-normalized Jack polynomials.

    Solves, for each partition kappa, the triangular eigen-system of the
    degree-preserving operator in the monomial basis (dominance-triangular),
    then rescales by the hook-product constant.
    """
    p = len(parts)
    padded = [t + (0,) * (m - len(t)) for t in parts]
    index = {t: i for i, t in enumerate(parts)}
    if exact:
        eig = [_dominance_eigenvalue(pd, alpha) for pd in padded]
    else:
        af = float(alpha)
        eig = [
            0.5 * af * sum(q * (q - 1) for q in pd) + sum(q * (m - 1 - i) for i, q in enumerate(pd))
            for pd in padded
        ]
    sources = [_source_moves(pd, index) for pd in padded]

    rows = []
    for c, kappa in enumerate(parts):
        zero = Fraction(0) if exact else 0.0
        u = [zero] * p
        u[c] = Fraction(1) if exact else 1.0
        for t in range(c + 1, p):
            acc = zero
            for src, coef in sources[t]:
                if src >= c and u[src]:
                    acc += coef * u[src]
            if acc:
                u[t] = acc / (eig[c] - eig[t])
        norm = _hook_norm(kappa, alpha)
        if not exact:
            norm = float(norm)
        rows.append([norm * v for v in u])
    return rows


class JackCache:
    """Shared cache of Jack monomial tables keyed by (weight, m, alpha).

    Thread-safe with an exclusive-writer gate: concurrent readers see fully
    built tables only, and a rebuild of the same key is bit-identical.
    """

    def __init__(self) -> None:
        self._tables: dict[tuple[int, int, Fraction], _WeightTables] = {}
        self._lock = threading.Lock()

    def weight_tables(self, k: int, m: int, beta) -> _WeightTables:
        alpha = Fraction(2, as_beta(beta))
        key = (k, m, alpha)
        tab = self._tables.get(key)
        if tab is None:
            with self._lock:
                tab = self._tables.get(key)
                if tab is None:
                    tab = _WeightTables(k, m, alpha)
                    self._tables[key] = tab
        return tab

    def get(self, k: int, m: int, beta) -> dict[int, _WeightTables]:
        """Tables for every weight up to ``k`` (inclusive)."""
        return {w: self.weight_tables(w, m, beta) for w in range(k + 1)}


_CACHE = JackCache()


def jack_layer(k: int, eigs, beta) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """All C_kappa values of weight ``k`` at a spectrum, in enumeration order.

    Returns the partition tuples (reverse-lexicographic, at most len(eigs)
    parts) and the matching value array (complex when the spectrum is).
    """
    eigs = np.asarray(eigs)
    m = eigs.shape[0]
    if k == 0:
        one = np.ones(1, dtype=np.complex128 if np.iscomplexobj(eigs) else np.float64)
        return [()], one
    tab = _CACHE.weight_tables(k, m, beta)
    return tab.parts, tab.coeffs @ tab.monomial_values(eigs)


def jack_c(kappa, eigs, beta):
    """Sum-normalized Jack polynomial C_kappa at the given spectrum.

    Homogeneous of degree |kappa|, symmetric in the eigenvalues, invariant
    under padding the spectrum with zeros, and normalized so the values of a
    fixed weight sum to (sum of eigs)^weight. Returns 0 when kappa has more
    parts than there are variables. Complex spectra are accepted.
    """
    kp = Partition.coerce(kappa)
    eigs = np.asarray(eigs)
    if eigs.ndim != 1:
        raise DomainError("eigs must be a 1-D spectrum")
    if kp.weight == 0:
        return 1.0 + 0.0j if np.iscomplexobj(eigs) else 1.0
    if kp.length > eigs.shape[0]:
        return 0.0 + 0.0j if np.iscomplexobj(eigs) else 0.0
    tab = _CACHE.weight_tables(kp.weight, eigs.shape[0], beta)
    row = tab.index[kp.parts]
    val = tab.coeffs[row] @ tab.monomial_values(eigs)
    return complex(val) if np.iscomplexobj(eigs) else float(val)


def jack_ones(kappa, count: int, beta) -> float:
    """C_kappa at the identity spectrum of the given size (zero if too short)."""
    kp = Partition.coerce(kappa)
    if kp.weight == 0:
        return 1.0
    if kp.length > count:
        return 0.0
    return float(jack_c(kp, np.ones(count), beta))


# ---------------------------------------------------------------------------
# Layered series summation and 1F0
# ---------------------------------------------------------------------------

def layered_sum(layer_fn, ctrl: SeriesControl, what: str = "series"):
    """Sum degree layers until two consecutive layers fall below tolerance.

    Returns ``(value, degree_used, tail_estimate, layers)``. Raises
    :class:`TruncationError` carrying the partial sum when the budget is
    exhausted first.
    """
    partial = 0.0
    layers = []
    small_run = 0
    last_mag = 0.0
    for k in range(ctrl.max_degree + 1):
        layer = layer_fn(k)
        layers.append(layer)
        partial = partial + layer
        last_mag = abs(layer)
        thresh = ctrl.rel_tol * abs(partial) + ctrl.abs_tol
        small_run = small_run + 1 if last_mag < thresh else 0
        if small_run >= 2 and k >= 1:
            return partial, max(k - small_run, 0), last_mag, layers
    raise TruncationError(
        f"{what} did not converge within max_degree={ctrl.max_degree} "
        f"(last layer magnitude {last_mag:.3e})",
        partial=partial,
        degree_used=ctrl.max_degree,
        tail_estimate=last_mag,
    )


def hypergeom_1F0(a: float, eigs, beta, ctrl: SeriesControl | None = None):
    """Truncated hypergeometric 1F0 of matrix argument.

    Sums ``sum_k sum_kappa [a]_kappa C_kappa(eigs) / k!`` layer by layer; for
    spectra with max |eig| < 1 this converges to prod_i (1 - x_i)^(-a).
    Returns a float (or complex for complex spectra); raises
    :class:`TruncationError` with the partial sum when the degree budget runs
    out.
    """
    ctrl = ctrl or SeriesControl()
    eigs = np.asarray(eigs, dtype=np.complex128 if np.iscomplexobj(np.asarray(eigs)) else np.float64)
    b = as_beta(beta)

    def layer(k: int):
        parts, vals = jack_layer(k, eigs, b)
        fact = math.factorial(k)
        return sum(gen_pochhammer(a, p, b) * v for p, v in zip(parts, vals)) / fact

    value, _, _, _ = layered_sum(layer, ctrl, what="hypergeom_1F0")
    return complex(value) if np.iscomplexobj(eigs) else float(value)
