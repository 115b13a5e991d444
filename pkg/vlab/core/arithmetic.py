"""
arithmetic.py
#############

Exact arithmetic coefficient generators: divisor counts, sums of two squares,
generalized divisor sums and Ramanujan's tau. Pointwise functions use trial division;
the *_counts / *_values functions sieve whole prefixes with numpy.
"""

# Imports
import math
from typing import List

import numpy as np

TAU_LIMIT = 100_000


def coeff_divisor(n: int) -> int:
    """d(n), the number of positive divisors of n, by trial division up to sqrt(n)."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    count = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            count += 1 if d * d == n else 2
    return count


def chi_minus4(d: int) -> int:
    """The non-principal character modulo 4."""
    if d % 2 == 0:
        return 0
    return 1 if d % 4 == 1 else -1


def coeff_r2(n: int) -> int:
    """r2(n), ordered representations as a sum of two squares with signs: 4 sum_{d | n} chi_-4(d)."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    total = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            total += chi_minus4(d)
            if d * d != n:
                total += chi_minus4(n // d)
    return 4 * total


def coeff_r2_lattice(n: int) -> int:
    """r2(n) by enumerating lattice points; used to cross-check coeff_r2."""
    count = 0
    bound = math.isqrt(n)
    for x in range(-bound, bound + 1):
        rest = n - x * x
        y = math.isqrt(rest)
        if y * y == rest:
            count += 1 if y == 0 else 2
    return count


def coeff_sigma_zk(n: int, z: complex, k: int = 1) -> complex:
    """
    sigma^(k)_z(n) = sum of d^z over the d with d^k dividing n.

    Integer z >= 0 is summed in exact integer arithmetic before conversion.
    """
    if n < 1 or k < 1:
        raise ValueError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    z = complex(z)
    exact = z.imag == 0.0 and z.real >= 0.0 and z.real == int(z.real)
    int_total = 0
    total = 0j
    d = 1
    while d**k <= n:
        if n % d**k == 0:
            if exact:
                int_total += d ** int(z.real)
            else:
                total += complex(d) ** z
        d += 1
    return complex(int_total) if exact else total


def pentagonal_coefficients(n_max: int) -> List[int]:
    """
    Coefficients of prod_{n >= 1} (1 - z^n) up to z^n_max.

    Only the generalized pentagonal numbers m(3m -+ 1)/2 carry a non-zero coefficient (-1)^m.
    """
    coeffs = [0] * (n_max + 1)
    coeffs[0] = 1
    m = 1
    while m * (3 * m - 1) // 2 <= n_max:
        sign = -1 if m % 2 else 1
        coeffs[m * (3 * m - 1) // 2] = sign
        if m * (3 * m + 1) // 2 <= n_max:
            coeffs[m * (3 * m + 1) // 2] = sign
        m += 1
    return coeffs


def power_series_power(coeffs: List[int], power: int, n_max: int) -> List[int]:
    """
    Coefficients of P(z)^power up to z^n_max for an integer series with P(0) = 1.

    Uses the recurrence n g_n = sum_{k=1}^{n} ((power + 1) k - n) p_k g_{n-k} over the
    non-zero p_k only. Every division is exact.
    """
    if coeffs[0] != 1:
        raise ValueError("the series must have constant term 1")
    support = [(k, c) for k, c in enumerate(coeffs[: n_max + 1]) if k > 0 and c != 0]
    g = [0] * (n_max + 1)
    g[0] = 1
    for n in range(1, n_max + 1):
        acc = 0
        for k, c in support:
            if k > n:
                break
            acc += ((power + 1) * k - n) * c * g[n - k]
        quotient, remainder = divmod(acc, n)
        if remainder:
            raise ArithmeticError(f"non-integral coefficient at z^{n}")
        g[n] = quotient
    return g


def coeff_tau(n_max: int) -> List[int]:
    """
    tau(1), ..., tau(n_max) from z prod (1 - z^n)^24, as exact Python integers.
    """
    if not 1 <= n_max <= TAU_LIMIT:
        raise ValueError(f"n_max must lie in [1, {TAU_LIMIT}], got {n_max}")
    eta = pentagonal_coefficients(n_max - 1)
    return power_series_power(eta, 24, n_max - 1)


# Prefix sieves


def divisor_counts(n_max: int) -> np.ndarray:
    """d(1), ..., d(n_max)."""
    counts = np.zeros(n_max, dtype=np.int64)
    for d in range(1, n_max + 1):
        counts[d - 1::d] += 1
    return counts


def r2_counts(n_max: int) -> np.ndarray:
    """r2(1), ..., r2(n_max)."""
    total = np.zeros(n_max, dtype=np.int64)
    for d in range(1, n_max + 1, 2):
        total[d - 1::d] += chi_minus4(d)
    return 4 * total


def sigma_zk_values(n_max: int, z: complex, k: int = 1) -> np.ndarray:
    """sigma^(k)_z(1), ..., sigma^(k)_z(n_max) as a complex array."""
    values = np.zeros(n_max, dtype=complex)
    d = 1
    while d**k <= n_max:
        step = d**k
        values[step - 1::step] += complex(d) ** complex(z)
        d += 1
    return values
