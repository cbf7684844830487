"""Combinatorial primitives: factorials, binomials, Pochhammer symbols,
harmonic numbers, Euler numbers, Fermat quotients, Lucas reduction.

Factorials, odd products, central binomials, and Euler numbers are cached
in growable tables guarded by a lock; cached reads are observationally
identical to recomputation, so concurrent callers are safe.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction

from .exactnum import Rational, _check_odd_prime


class UnsupportedConvention(ValueError):
    """Raised for reciprocal-Pochhammer arguments outside the stated convention."""


# the zero-Pochhammer reciprocal raises the stdlib division error
DivisionByZero = ZeroDivisionError


_lock = threading.Lock()
_fact: list[int] = [1]
_odd: list[int] = [1]
_central: list[int] = [1]
_euler: list[int] = [1]


def factorial(n: int) -> int:
    """n!, table-cached."""
    if n < 0:
        raise ValueError(f"factorial of negative {n}")
    if n >= len(_fact):
        with _lock:
            while len(_fact) <= n:
                _fact.append(_fact[-1] * len(_fact))
    return _fact[n]


def odd_product(m: int) -> int:
    """Product of the first m odd numbers: 1*3*...*(2m-1), table-cached."""
    if m < 0:
        raise ValueError(f"odd_product of negative {m}")
    if m >= len(_odd):
        with _lock:
            while len(_odd) <= m:
                _odd.append(_odd[-1] * (2 * len(_odd) - 1))
    return _odd[m]


def central_binomial(m: int) -> int:
    """C(2m, m), table-cached (incremental ratio 2(2m-1)/m is exact)."""
    if m < 0:
        raise ValueError(f"central_binomial of negative {m}")
    if m >= len(_central):
        with _lock:
            while len(_central) <= m:
                k = len(_central)
                _central.append(_central[-1] * (2 * (2 * k - 1)) // k)
    return _central[m]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with signed upper argument.

    For n >= 0 the standard value (0 when k > n); for n < 0 the
    generalized value via the reflection (-1)^k C(-n+k-1, k).
    k < 0 returns 0 (vanishing convention used by the summation limits).
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    return (-1) ** k * math.comb(-n + k - 1, k)


def binomial_rat(a, k: int) -> Rational:
    """C(a, k) = a(a-1)...(a-k+1)/k! for rational upper argument a."""
    if k < 0:
        raise ValueError(f"binomial_rat lower index must be >= 0, got {k}")
    a = Fraction(a)
    num = Fraction(1)
    for j in range(k):
        num *= a - j
    return num / factorial(k)


def pochhammer(a, n: int) -> Rational:
    """Rising factorial (a)_n = a(a+1)...(a+n-1); (a)_0 = 1."""
    if n < 0:
        raise ValueError(f"pochhammer index must be >= 0, got {n}")
    a = Fraction(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


def pochhammer_half(m: int) -> Rational:
    """(1/2)_m = C(2m,m) m! / 4^m, via the cached tables."""
    return Fraction(central_binomial(m) * factorial(m), 4 ** m)


def pochhammer_neg_half(m: int) -> Rational:
    """(-1/2)_m; equals -(1/2)_(m-1)/2 for m >= 1."""
    if m == 0:
        return Fraction(1)
    return -pochhammer_half(m - 1) / 2


def recip_pochhammer(a, n: int) -> Rational:
    """1/(a)_n, extended by the convention 1/(1)_n = 0 for n < 0.

    Only a = 1 supports negative n (the convention actually used); any
    other a with n < 0 raises UnsupportedConvention rather than guessing.
    """
    a = Fraction(a)
    if n < 0:
        if a == 1:
            return Fraction(0)
        raise UnsupportedConvention(f"1/({a})_{n} has no registered convention")
    val = pochhammer(a, n)
    if val == 0:
        raise ZeroDivisionError(f"({a})_{n} = 0")
    return 1 / val


def harmonic(n: int, order: int = 1) -> Rational:
    """H_n^(order) = sum over 1 <= k <= n of 1/k^order; H_0 = 0."""
    if n < 0:
        raise ValueError(f"harmonic index must be >= 0, got {n}")
    if order < 1:
        raise ValueError(f"harmonic order must be >= 1, got {order}")
    return sum((Fraction(1, k ** order) for k in range(1, n + 1)), Fraction(0))


def euler_number(n: int) -> int:
    """Euler number E_n by the recurrence E_n = -sum C(n,2k) E_(n-2k), E_0 = 1."""
    if n < 0:
        raise ValueError(f"euler_number of negative {n}")
    if n >= len(_euler):
        with _lock:
            while len(_euler) <= n:
                i = len(_euler)
                _euler.append(-sum(math.comb(i, 2 * k) * _euler[i - 2 * k]
                                   for k in range(1, i // 2 + 1)))
    return _euler[n]


def fermat_quotient(p: int) -> int:
    """q_p(2) = (2^(p-1) - 1)/p, an integer for odd prime p."""
    _check_odd_prime(p)
    return (2 ** (p - 1) - 1) // p


def lucas_residue(n: int, k: int, p: int) -> int:
    """C(n, k) mod p via the base-p digit product."""
    _check_odd_prime(p)
    if n < 0 or k < 0:
        raise ValueError("lucas_residue needs n, k >= 0")
    out = 1
    while n or k:
        out = out * binomial(n % p, k % p) % p
        if out == 0:
            return 0
        n //= p
        k //= p
    return out
