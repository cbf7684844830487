"""Catalog of verifiable congruences: truncated series, binomial facts, and
certificate-row sums, each scored by the p-adic valuation of LHS - RHS.

Case kinds:
  series   -- a truncated sum with a term generator (exact pairwise summation,
              plus a termwise residue path when the terms are p-integral)
  scalar   -- a single closed-form quantity
  family   -- a k-indexed batch of scalar congruences, aggregated by the
              minimum observed valuation over all members
  identity -- an exact rational equality (pass iff LHS equals RHS)

Statuses: theorem / known / lemma / fact-family / conjecture / informational.
Conjecture and informational cases report honestly but are flagged so sweep
exit codes can ignore them; the same flag is applied to p = 3 evaluations and
to r = 1 evaluations of statements whose hypotheses require r >= 2.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from fnmatch import fnmatch
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Union

from .combinat import (binomial, binomial_rat, central_binomial, euler_number,
                       factorial, fermat_quotient, harmonic, lucas_residue,
                       odd_product)
from .exactnum import (INFINITE, PadicContext, Rational, Valuation, is_prime,
                       residue, vp)
from . import wz

P_FLOOR = 5

STATUSES = ("theorem", "known", "lemma", "fact-family", "conjecture",
            "informational")


class UnknownCase(ValueError):
    """No catalog entry with the requested id."""


class PrimeBelowFloor(ValueError):
    """p below the case's admissible floor and no override was given."""


class BackendIneligible(RuntimeError):
    """The residue backend cannot evaluate this case (p-power denominators)."""


def _sign_p(p: int) -> int:
    return -1 if (p - 1) // 2 % 2 else 1


def _sign_pr(p: int, r: int) -> int:
    # (-1)^((p^r-1)/2), equal to (-1)^(r(p-1)/2) for odd p
    return -1 if (p ** r - 1) // 2 % 2 else 1


@dataclass(frozen=True)
class CheckParams:
    """Evaluation point: prime p, exponent r, optional delta / member / cap."""

    p: int
    r: int = 1
    delta: Optional[int] = None
    k: Optional[int] = None
    upper_override: Optional[int] = None

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.delta is not None and self.delta not in (1, 2):
            raise ValueError(f"delta must be 1 or 2, got {self.delta}")
        if self.upper_override is not None and self.upper_override < 0:
            raise ValueError("upper_override must be >= 0")


@dataclass(frozen=True)
class CongruenceCase:
    id: str
    status: str
    statement: str
    kind: str                                   # series | scalar | family | identity
    claimed_exponent: Optional[Callable[[int, int], int]]
    rhs: Callable[[int, int], Rational]
    # series
    series_name: Optional[str] = None
    upper: Optional[Callable[[int, int, int], int]] = None  # (p, r, delta) -> cap
    # scalar / identity
    lhs_scalar: Optional[Callable[[int, int], Rational]] = None
    # family
    members: Optional[Callable[[int, int], range]] = None
    member_lhs: Optional[Callable[[int, int, int], Rational]] = None
    member_rhs: Optional[Callable[[int, int, int], Rational]] = None
    member_lucas: Optional[Callable[[int, int, int], int]] = None  # lhs mod p, digitwise
    uses_r: bool = True
    uses_delta: bool = False
    p_integral: bool = False                    # residue backend eligibility
    r_floor: int = 1
    p_floor: int = P_FLOOR

    def claimed(self, p: int, r: int) -> Optional[int]:
        return None if self.claimed_exponent is None else self.claimed_exponent(p, r)


@dataclass
class CheckResult:
    case_id: str
    params: CheckParams
    lhs: Union[Rational, int]
    rhs: Union[Rational, int]
    observed_valuation: Valuation
    claimed_exponent: Optional[int]
    passed: bool
    backend: str
    elapsed_ms: float = 0.0
    status: str = ""
    informational: bool = False
    note: str = ""


# --------------------------------------------------------------------------
# term generators: everything the exact and residue series backends share.
# Central-binomial form keeps numerators integral and denominators powers of
# two (except the harmonic/Catalan-style sums, whose denominators stay < p).

def _terms_guo64(upper: int) -> Iterator[Rational]:
    # (4k+1) C(2k,k)^3 / (-64)^k
    for k in range(upper + 1):
        yield (4 * k + 1) * Fraction((-1) ** k * central_binomial(k) ** 3, 1 << (6 * k))


def _terms_gz10n2(upper: int) -> Iterator[Rational]:
    # (10n^2+6n+1) (-4)^n (1/2)_n^5/(1)_n^5 = (10n^2+6n+1)(-1)^n C(2n,n)^5/2^(8n)
    for n in range(upper + 1):
        yield (10 * n * n + 6 * n + 1) * Fraction((-1) ** n * central_binomial(n) ** 5, 1 << (8 * n))


def _terms_z20n3_signed(upper: int) -> Iterator[Rational]:
    for n in range(upper + 1):
        t = (20 * n + 3) * Fraction(central_binomial(n) ** 2 * central_binomial(2 * n), 1 << (10 * n))
        yield -t if n % 2 else t


def _terms_z20n3_raw(upper: int) -> Iterator[Rational]:
    for n in range(upper + 1):
        yield (20 * n + 3) * Fraction(central_binomial(n) ** 2 * central_binomial(2 * n), 1 << (10 * n))


def _terms_z120n2(upper: int) -> Iterator[Rational]:
    # (120n^2+34n+3) (1/2)_n^3 (1/2)_(2n) / ((1)_n^5 2^(6n))
    #   = (120n^2+34n+3) C(2n,n)^4 C(4n,2n) / 2^(16n)
    for n in range(upper + 1):
        yield ((120 * n * n + 34 * n + 3)
               * Fraction(central_binomial(n) ** 4 * central_binomial(2 * n), 1 << (16 * n)))


def _terms_glr(upper: int) -> Iterator[Rational]:
    # (-1)^k (4k-1) (-1/2)_k^3/(1)_k^3; k >= 1 via Catalan numbers:
    # (-1/2)_k/(1)_k = -C(2k-2,k-1)/(k 4^k) * 2
    yield Fraction(-1)
    for k in range(1, upper + 1):
        cat = central_binomial(k - 1) // k
        yield (4 * k - 1) * Fraction((-1) ** (k + 1) * cat ** 3, 1 << (6 * k - 3))


def _terms_mao(upper: int) -> Iterator[Rational]:
    # C(2n,n)^2 / ((n+1) 16^n)
    for n in range(upper + 1):
        yield Fraction(central_binomial(n) ** 2, (n + 1) << (4 * n))


def _terms_suncat(upper: int) -> Iterator[Rational]:
    # C(2k,k) / ((2k+1) 4^k)
    for k in range(upper + 1):
        yield Fraction(central_binomial(k), (2 * k + 1) << (2 * k))


def _terms_h1(upper: int) -> Iterator[Rational]:
    for k in range(1, upper + 1):
        yield Fraction(1, k)


def _terms_h2(upper: int) -> Iterator[Rational]:
    for k in range(1, upper + 1):
        yield Fraction(1, k * k)


def _terms_lem21(p: int, r: int, upper: int) -> Iterator[Rational]:
    # F(n, K) for the five-factor pair at K = (p^r-1)/2, by the term ratio
    # t(n+1)/t(n) = -(2n+1)(2K+2n+1)^4 / (8 (n+1)^5)
    K = (p ** r - 1) // 2
    base = Fraction(1)
    for n in range(upper + 1):
        c = 10 * n * n + 12 * n * K + 6 * n + 4 * K * K + 4 * K + 1
        yield c * base
        base *= Fraction(-(2 * n + 1) * (2 * K + 2 * n + 1) ** 4, 8 * (n + 1) ** 5)


_GENERATORS: dict[str, Callable[..., Iterator[Rational]]] = {
    "guo64": _terms_guo64,
    "gz10n2": _terms_gz10n2,
    "z20n3-signed": _terms_z20n3_signed,
    "z20n3-raw": _terms_z20n3_raw,
    "z120n2": _terms_z120n2,
    "glr": _terms_glr,
    "mao": _terms_mao,
    "suncat": _terms_suncat,
    "h1": _terms_h1,
    "h2": _terms_h2,
    "lem21": _terms_lem21,
}
_P_DEPENDENT = {"lem21"}  # generators whose terms depend on (p, r), not just the cap


def _pairwise_sum(terms: Iterable[Rational]) -> Rational:
    """Tree-shaped summation; far fewer giant-gcd reductions than a left fold."""
    vals = list(terms)
    if not vals:
        return Fraction(0)
    while len(vals) > 1:
        nxt = [vals[i] + vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return Fraction(vals[0])


def _iter_terms(name: str, p: int, r: int, upper: int) -> Iterator[Rational]:
    gen = _GENERATORS[name]
    return gen(p, r, upper) if name in _P_DEPENDENT else gen(upper)


@lru_cache(maxsize=None)
def _series_exact(name: str, p_key: Optional[int], r_key: Optional[int], upper: int) -> Rational:
    p, r = p_key or 0, r_key or 0
    return _pairwise_sum(_iter_terms(name, p, r, upper))


@lru_cache(maxsize=256)
def _series_residue(name: str, p_key: Optional[int], r_key: Optional[int],
                    upper: int, p: int, m: int) -> int:
    mod = p ** m
    acc = 0
    for t in _iter_terms(name, p_key or 0, r_key or 0, upper):
        acc = (acc + t.numerator * pow(t.denominator, -1, mod)) % mod
    return acc


def _series_keys(case: CongruenceCase, p: int, r: int) -> tuple[Optional[int], Optional[int]]:
    return (p, r) if case.series_name in _P_DEPENDENT else (None, None)


# --------------------------------------------------------------------------
# certificate-row sums: one stepped pass over k = 1 .. p^r - 1 split into
# prefix (k <= (P-1)/2), middle (k = (P+1)/2), and tail (k >= (P+3)/2).

def _theta_direct(p: int, r: int, k: int) -> Rational:
    """Closed-form row used by the fourth pair's middle/tail evaluations."""
    P = p ** r
    pre = -Fraction(p ** (3 * r)) * Fraction(binomial(2 * P - 1, P - 1)) ** 2 \
        / ((2 * P - 1) * Fraction(4) ** (3 * P - 3))
    return (pre * Fraction(-4) ** k / central_binomial(k)
            * binomial_rat(Fraction(-2 * P - 1), 2 * k - 2) / (k * (2 * k - 1))
            * binomial(2 * P - 2, P - k - 1))


def _row_slices(start: Rational, ratio: Callable[[int], Rational], P: int
                ) -> tuple[Rational, Rational, Rational]:
    half = (P - 1) // 2
    prefix, tail = [], []
    mid = Fraction(0)
    val = start
    for k in range(1, P):
        if k <= half:
            prefix.append(val)
        elif k == half + 1:
            mid = val
        else:
            tail.append(val)
        if k < P - 1:
            val *= ratio(k)
    return _pairwise_sum(prefix), mid, _pairwise_sum(tail)


@lru_cache(maxsize=64)
def _guo_row(p: int, r: int) -> tuple[Rational, Rational, Rational]:
    P = p ** r

    def ratio(k: int) -> Rational:
        m = P - 1 + k
        return Fraction(-2 * (2 * m + 1) * (P - k) * (P + k), (m + 1) * (2 * k + 1) ** 2)

    return _row_slices(wz.eval_G("GUO64", P, 1), ratio, P)


@lru_cache(maxsize=64)
def _z20_row(p: int, r: int) -> tuple[Rational, Rational, Rational]:
    P = p ** r

    def ratio(k: int) -> Rational:
        m = 2 * P - 1 + k
        return Fraction(-2 * (2 * m + 1) * (P - k), (2 * k + 1) ** 2)

    return _row_slices(wz.eval_G("Z20N3", P, 1), ratio, P)


@lru_cache(maxsize=64)
def _theta_row(p: int, r: int) -> tuple[Rational, Rational, Rational]:
    P = p ** r

    def ratio(k: int) -> Rational:
        return Fraction(-2 * (2 * P + 2 * k - 1) * (P - k - 1), (2 * k + 1) ** 2)

    return _row_slices(_theta_direct(p, r, 1), ratio, P)


# --------------------------------------------------------------------------
# five-factor certificate column sums at n0 = (P+1)/2 and n0 = P: integer
# numerator assembly over the constant denominator 2^(3 n0 - 5) (n0-1)!^5,
# using G(n0,k) = (n0+2k-1) odd(n0) (odd(k+n0-1)/odd(k))^4 (-1)^(n0) 2^(2n0+1)
#                 / (2^(n0) 2^(4(n0-1)) (n0-1)!^5)

@lru_cache(maxsize=64)
def _gz_column(p: int, r: int, at_top: bool) -> Rational:
    P = p ** r
    n0 = P if at_top else (P + 1) // 2
    num = 0
    for k in range(1, (P - 1) // 2 + 1):
        q = odd_product(k + n0 - 1) // odd_product(k)
        num += (n0 + 2 * k - 1) * q ** 4
    num *= (-1) ** n0 * odd_product(n0)
    return Fraction(num, 2 ** (3 * n0 - 5) * factorial(n0 - 1) ** 5)


# --------------------------------------------------------------------------
# catalog construction

def _fact_range(p: int, r: int) -> range:
    P = p ** r
    return range((P + 1) // 2, P)          # k = P - l, 0 < l < P/2


def _binrow_range(p: int, r: int) -> range:
    return range(1, (p ** r - 3) // 2 + 1)


def _bin311_range(p: int, r: int) -> range:
    return range(1, (p - 1) // 2 + 1)


def _rhs_zero(p, r):
    return Fraction(0)


_C: dict[str, CongruenceCase] = {}


def _add(case: CongruenceCase) -> None:
    if case.id in _C:
        raise ValueError(f"duplicate case id {case.id}")
    _C[case.id] = case


def _series(id, status, statement, m, rhs, name, upper, *, uses_r=True,
            uses_delta=False, p_integral=True, r_floor=1):
    _add(CongruenceCase(id=id, status=status, statement=statement, kind="series",
                        claimed_exponent=m, rhs=rhs, series_name=name, upper=upper,
                        uses_r=uses_r, uses_delta=uses_delta, p_integral=p_integral,
                        r_floor=r_floor))


def _scalar(id, status, statement, m, lhs, rhs, *, uses_r=True, p_integral=False,
            r_floor=1, kind="scalar"):
    _add(CongruenceCase(id=id, status=status, statement=statement, kind=kind,
                        claimed_exponent=m, rhs=rhs, lhs_scalar=lhs,
                        uses_r=uses_r, p_integral=p_integral, r_floor=r_floor))


def _family(id, statement, m, members, lhs, rhs, *, p_integral=True, lucas=None):
    _add(CongruenceCase(id=id, status="fact-family", statement=statement,
                        kind="family", claimed_exponent=m, rhs=_rhs_zero,
                        members=members, member_lhs=lhs, member_rhs=rhs,
                        member_lucas=lucas, uses_r=True, p_integral=p_integral))


# --- truncated series -------------------------------------------------------

_series("VH-4K1", "known",
        "sum_{k=0}^{(p-1)/2} (4k+1) C(2k,k)^3/(-64)^k == (-1)^((p-1)/2) p  (mod p^3)",
        lambda p, r: 3, lambda p, r: Fraction(_sign_p(p) * p),
        "guo64", lambda p, r, d: (p - 1) // 2, uses_r=False)

_series("GUO-64", "theorem",
        "sum_{k=0}^{p^r-1} (4k+1) C(2k,k)^3/(-64)^k == (-1)^((p^r-1)/2) p^r  (mod p^(r+2))",
        lambda p, r: r + 2, lambda p, r: Fraction(_sign_pr(p, r) * p ** r),
        "guo64", lambda p, r, d: p ** r - 1)

_series("SUN-64-P4", "known",
        "sum_{k=0}^{p-1} (4k+1) C(2k,k)^3/(-64)^k == (-1)^((p-1)/2) p + p^3 E_(p-3)  (mod p^4)",
        lambda p, r: 4, lambda p, r: Fraction(_sign_p(p) * p + p ** 3 * euler_number(p - 3)),
        "guo64", lambda p, r, d: p - 1, uses_r=False)

_series("GZ-10N2", "theorem",
        "sum_{n=0}^{(p^r-1)/delta} (10n^2+6n+1)(-4)^n (1/2)_n^5/(1)_n^5 == p^(2r) "
        "(mod p^(r+4)) for r <= 4, == 0 (mod p^(r+4)) for r >= 5; delta in {1,2}",
        lambda p, r: r + 4,
        lambda p, r: Fraction(p ** (2 * r)) if r <= 4 else Fraction(0),
        "gz10n2", lambda p, r, d: (p ** r - 1) // d, uses_delta=True)

_series("CONJ-10N2", "conjecture",
        "sum_{n=0}^{(p^r-1)/delta} (10n^2+6n+1)(-4)^n (1/2)_n^5/(1)_n^5 == p^(2r)"
        "  (mod p^(2r+3)); delta in {1,2}",
        lambda p, r: 2 * r + 3, lambda p, r: Fraction(p ** (2 * r)),
        "gz10n2", lambda p, r, d: (p ** r - 1) // d, uses_delta=True)

_series("Z-20N3", "theorem",
        "sum_{n=0}^{p^r-1} (-1)^n (20n+3) (1/2)_n (1/2)_(2n) / ((1)_n^3 16^n) == "
        "3 (-1)^((p^r-1)/2) p^r  (mod p^(r+2))",
        lambda p, r: r + 2, lambda p, r: Fraction(3 * _sign_pr(p, r) * p ** r),
        "z20n3-signed", lambda p, r, d: p ** r - 1)

_series("Z-20N3-RAW", "informational",
        "sum_{n=0}^{p^r-1} (20n+3) (1/2)_n (1/2)_(2n) / ((1)_n^3 16^n) vs "
        "3 (-1)^((p^r-1)/2) p^r  (mod p^(r+2)): the unsigned variant, retained "
        "for the record; the congruence holds for the alternating series only",
        lambda p, r: r + 2, lambda p, r: Fraction(3 * _sign_pr(p, r) * p ** r),
        "z20n3-raw", lambda p, r, d: p ** r - 1)

_series("Z-120N2", "known",
        "sum_{n=0}^{p-1} (120n^2+34n+3) (1/2)_n^3 (1/2)_(2n) / ((1)_n^5 2^(6n)) == "
        "3p^2  (mod p^5)",
        lambda p, r: 5, lambda p, r: Fraction(3 * p * p),
        "z120n2", lambda p, r, d: p - 1, uses_r=False)

_series("GZ-120N2-R", "theorem",
        "sum_{n=0}^{(p^r-1)/delta} (120n^2+34n+3) (1/2)_n^3 (1/2)_(2n) / ((1)_n^5 2^(6n)) "
        "== 3p^(2r) (mod p^(r+4)) for r <= 4, == 0 for r >= 5; delta in {1,2}",
        lambda p, r: r + 4,
        lambda p, r: Fraction(3 * p ** (2 * r)) if r <= 4 else Fraction(0),
        "z120n2", lambda p, r, d: (p ** r - 1) // d, uses_delta=True)

_series("GL-R", "theorem",
        "sum_{k=0}^{p^r-1} (-1)^k (4k-1) (-1/2)_k^3/(1)_k^3 == -(-1)^((p^r-1)/2) p^r"
        "  (mod p^(r+2))",
        lambda p, r: r + 2, lambda p, r: Fraction(-_sign_pr(p, r) * p ** r),
        "glr", lambda p, r, d: p ** r - 1)

_series("GL-4K1-P4", "known",
        "sum_{k=0}^{(p+1)/2} (-1)^k (4k-1) (-1/2)_k^3/(1)_k^3 == "
        "-(-1)^((p-1)/2) p + p^3 (2 - E_(p-3))  (mod p^4)",
        lambda p, r: 4,
        lambda p, r: Fraction(-_sign_p(p) * p + p ** 3 * (2 - euler_number(p - 3))),
        "glr", lambda p, r, d: (p + 1) // 2, uses_r=False)

_series("MAO-I2", "theorem",
        "sum_{n=0}^{(p-1)/2} C(2n,n)^2 / ((n+1) 16^n) == 2p^2 + 2p^3 (2 q_p(2) - 1)"
        "  (mod p^4)",
        lambda p, r: 4,
        lambda p, r: Fraction(2 * p * p + 2 * p ** 3 * (2 * fermat_quotient(p) - 1)),
        "mao", lambda p, r, d: (p - 1) // 2, uses_r=False)

_series("SUN-CAT", "known",
        "sum_{k=0}^{(p-3)/2} C(2k,k) / ((2k+1) 4^k) == -(-1)^((p-1)/2) q_p(2)  (mod p^2)",
        lambda p, r: 2, lambda p, r: Fraction(-_sign_p(p) * fermat_quotient(p)),
        "suncat", lambda p, r, d: (p - 3) // 2, uses_r=False)

_series("H-HALF", "known",
        "H_((p-1)/2) == -2 q_p(2)  (mod p)",
        lambda p, r: 1, lambda p, r: Fraction(-2 * fermat_quotient(p)),
        "h1", lambda p, r, d: (p - 1) // 2, uses_r=False)

_series("WOLST-H1", "known",
        "H_(p-1) == 0  (mod p^2)",
        lambda p, r: 2, _rhs_zero, "h1", lambda p, r, d: p - 1, uses_r=False)

_series("WOLST-H2", "known",
        "H_(p-1)^(2) == 0  (mod p)",
        lambda p, r: 1, _rhs_zero, "h2", lambda p, r, d: p - 1, uses_r=False)

_series("LEM-2.1", "lemma",
        "sum_{n=0}^{(p^r-1)/delta} F(n,(p^r-1)/2) == p^(2r)  (mod p^(2r+3)), where "
        "F(n,k) = (10n^2+12nk+6n+4k^2+4k+1) (1/2)_n (1/2+k)_n^4/(1)_n^5 (-4)^n; "
        "delta in {1,2}",
        lambda p, r: 2 * r + 3, lambda p, r: Fraction(p ** (2 * r)),
        "lem21", lambda p, r, d: (p ** r - 1) // d, uses_delta=True, p_integral=False)

# --- scalar closed forms ----------------------------------------------------

_scalar("WOLST-BIN", "known",
        "C(2p-1,p-1) == 1  (mod p^3)",
        lambda p, r: 3, lambda p, r: Fraction(binomial(2 * p - 1, p - 1)),
        lambda p, r: Fraction(1), uses_r=False, p_integral=True)

_scalar("MAO-I2-IDENT", "theorem",
        "sum_{n=0}^{(p-1)/2} C(2n,n)^2 / ((n+1) 16^n) = C(-3/2,(p-1)/2)^2 / ((p+1)/2)"
        "  (exact rational identity)",
        None,
        lambda p, r: Fraction(_series_exact("mao", None, None, (p - 1) // 2)),
        lambda p, r: binomial_rat(Fraction(-3, 2), (p - 1) // 2) ** 2 / Fraction((p + 1) // 2),
        uses_r=False, kind="identity")

_scalar("LEM-2.2", "lemma",
        "sum_{k=1}^{(p^r-1)/2} G((p^r+1)/2, k) == 0  (mod p^(r+4)), where "
        "G(n,k) = (n+2k-1) (1/2)_n (1/2+k)_(n-1)^4/(1)_(n-1)^5 (-1)^n 2^(2n+1)",
        lambda p, r: r + 4, lambda p, r: _gz_column(p, r, False), _rhs_zero)

_scalar("LEM-2.3", "lemma",
        "sum_{k=1}^{(p^r-1)/2} G(p^r, k) == 0  (mod p^(r+4)), same G as LEM-2.2",
        lambda p, r: r + 4, lambda p, r: _gz_column(p, r, True), _rhs_zero)

_scalar("LEM-3.1", "lemma",
        "F(p^r-1, p^r-1) == 0  (mod p^(r+2)) for the (4n+1)-series pair; "
        "stated for r >= 2",
        lambda p, r: r + 2,
        lambda p, r: wz.eval_F("GUO64", p ** r - 1, p ** r - 1), _rhs_zero, r_floor=2)

_scalar("LEM-3.2", "lemma",
        "sum_{k=1}^{(p^r-1)/2} G(p^r,k) == 0  (mod p^(r+2)) for the (4n+1)-series pair",
        lambda p, r: r + 2, lambda p, r: _guo_row(p, r)[0], _rhs_zero)

_scalar("LEM-3.3", "lemma",
        "G(p^r,(p^r+1)/2) == (-1)^((p^r-1)/2) p^r (1 - 3 p q_p(2))  (mod p^(r+2)) "
        "for the (4n+1)-series pair",
        lambda p, r: r + 2, lambda p, r: _guo_row(p, r)[1],
        lambda p, r: Fraction(_sign_pr(p, r) * p ** r * (1 - 3 * p * fermat_quotient(p))))

_scalar("LEM-3.5", "lemma",
        "sum_{k=(p^r+3)/2}^{p^r-1} G(p^r,k) == (-1)^((p^r-1)/2) 3 p^(r+1) q_p(2) "
        " (mod p^(r+2)) for the (4n+1)-series pair; stated for r >= 2",
        lambda p, r: r + 2, lambda p, r: _guo_row(p, r)[2],
        lambda p, r: Fraction(_sign_pr(p, r) * 3 * p ** (r + 1) * fermat_quotient(p)),
        r_floor=2)

_scalar("LEM-4.1", "lemma",
        "F(p^r-1, p^r-1) == 0  (mod p^(r+2)) for the (4n-1)-series pair; "
        "stated for r >= 2",
        lambda p, r: r + 2,
        lambda p, r: wz.eval_F("GL4K1", p ** r - 1, p ** r - 1), _rhs_zero, r_floor=2)

_scalar("LEM-4.2", "lemma",
        "sum_{k=1}^{(p^r-1)/2} theta(k) == 0  (mod p^(r+2)), where theta(k) = "
        "-p^(3r) C(2p^r-1,p^r-1)^2 / ((2p^r-1) 4^(3p^r-3)) * (-4)^k/C(2k,k) * "
        "C(-2p^r-1,2k-2)/(k(2k-1)) * C(2p^r-2,p^r-k-1)",
        lambda p, r: r + 2, lambda p, r: _theta_row(p, r)[0], _rhs_zero)

_scalar("LEM-4.3", "lemma",
        "theta((p^r+1)/2) == -(-1)^((p^r-1)/2) p^r (1 - 3 p q_p(2))  (mod p^(r+2)); "
        "stated for r >= 2 (theta as in LEM-4.2)",
        lambda p, r: r + 2, lambda p, r: _theta_row(p, r)[1],
        lambda p, r: Fraction(-_sign_pr(p, r) * p ** r * (1 - 3 * p * fermat_quotient(p))),
        r_floor=2)

_scalar("LEM-4.4", "lemma",
        "sum_{k=(p^r+3)/2}^{p^r-1} theta(k) == -(-1)^((p^r-1)/2) 3 p^(r+1) q_p(2) "
        " (mod p^(r+2)); stated for r >= 2 (theta as in LEM-4.2)",
        lambda p, r: r + 2, lambda p, r: _theta_row(p, r)[2],
        lambda p, r: Fraction(-_sign_pr(p, r) * 3 * p ** (r + 1) * fermat_quotient(p)),
        r_floor=2)

_scalar("LEM-5.1", "lemma",
        "F(p^r-1, p^r-1) == 0  (mod p^(r+2)) for the (20n+3)-series pair; "
        "stated for r >= 2",
        lambda p, r: r + 2,
        lambda p, r: wz.eval_F("Z20N3", p ** r - 1, p ** r - 1), _rhs_zero, r_floor=2)

_scalar("LEM-5.2", "lemma",
        "sum_{k=1}^{(p^r-1)/2} G(p^r,k) == 0  (mod p^(r+2)) for the (20n+3)-series pair",
        lambda p, r: r + 2, lambda p, r: _z20_row(p, r)[0], _rhs_zero)

_scalar("LEM-5.3", "lemma",
        "G(p^r,(p^r+1)/2) == 3 (-1)^((p^r-1)/2) p^r (1 - 5 p q_p(2))  (mod p^(r+2)) "
        "for the (20n+3)-series pair",
        lambda p, r: r + 2, lambda p, r: _z20_row(p, r)[1],
        lambda p, r: Fraction(3 * _sign_pr(p, r) * p ** r * (1 - 5 * p * fermat_quotient(p))))

_scalar("LEM-5.4", "lemma",
        "sum_{k=(p^r+3)/2}^{p^r-1} G(p^r,k) == 15 (-1)^((p^r-1)/2) p^(r+1) q_p(2) "
        " (mod p^(r+2)) for the (20n+3)-series pair; stated for r >= 2",
        lambda p, r: r + 2, lambda p, r: _z20_row(p, r)[2],
        lambda p, r: Fraction(15 * _sign_pr(p, r) * p ** (r + 1) * fermat_quotient(p)),
        r_floor=2)

_scalar("BIN-3.4", "known",
        "C(p^r-1,(p^r-1)/2) == (-1)^((p^r-1)/2) 4^(p^r-1)  (mod p^3)",
        lambda p, r: 3,
        lambda p, r: Fraction(binomial(p ** r - 1, (p ** r - 1) // 2)),
        lambda p, r: Fraction(_sign_pr(p, r) * 4 ** (p ** r - 1)), p_integral=True)

_scalar("BIN-3.5", "known",
        "C(3p^r-1,p^r) == 2 (1 - 3 p^r H_(p^r-1))  (mod p^2)",
        lambda p, r: 2,
        lambda p, r: Fraction(binomial(3 * p ** r - 1, p ** r)),
        lambda p, r: 2 * (1 - 3 * p ** r * harmonic(p ** r - 1)), p_integral=True)

_scalar("BIN-3.6", "known",
        "C(2p^r-1,p^r-1) == 1  (mod p^2)",
        lambda p, r: 2,
        lambda p, r: Fraction(binomial(2 * p ** r - 1, p ** r - 1)),
        lambda p, r: Fraction(1), p_integral=True)

_scalar("BIN-3.7", "known",
        "C(2p^r-1,(p^r-1)/2) == (-1)^((p^r-1)/2) (1 - 2 p H_((p-1)/2))  (mod p^2)",
        lambda p, r: 2,
        lambda p, r: Fraction(binomial(2 * p ** r - 1, (p ** r - 1) // 2)),
        lambda p, r: _sign_pr(p, r) * (1 - 2 * p * harmonic((p - 1) // 2)),
        p_integral=True)

# --- k-indexed fact families ------------------------------------------------

_family("FACT-2LL",
        "l C(2l,l) C(2k,k) == -2 p^r  (mod p^(r+1)) for k + l = p^r, 0 < l < p^r/2",
        lambda p, r: r + 1, _fact_range,
        lambda p, r, k: Fraction((p ** r - k) * binomial(2 * (p ** r - k), p ** r - k)
                                 * binomial(2 * k, k)),
        lambda p, r, k: Fraction(-2 * p ** r),
        lucas=lambda p, r, k: ((p ** r - k) * lucas_residue(2 * (p ** r - k), p ** r - k, p)
                               * lucas_residue(2 * k, k, p)) % p)

_family("FACT-2KK",
        "C(2k,k) == 0  (mod p) for k + l = p^r, 0 < l < p^r/2",
        lambda p, r: 1, _fact_range,
        lambda p, r, k: Fraction(binomial(2 * k, k)),
        lambda p, r, k: Fraction(0),
        lucas=lambda p, r, k: lucas_residue(2 * k, k, p))

_family("FACT-INV",
        "-2 p^r / (l C(2l,l)) == C(2k,k)  (mod p^2) for k + l = p^r, 0 < l < p^r/2",
        lambda p, r: 2, _fact_range,
        lambda p, r, k: Fraction(-2 * p ** r,
                                 (p ** r - k) * binomial(2 * (p ** r - k), p ** r - k)),
        lambda p, r, k: Fraction(binomial(2 * k, k)), p_integral=False)

_family("DAO-HB",
        "-2 p^r / C(2k,k) == (p^r-k) C(2p^r-2k,p^r-k)  (mod p) for k + l = p^r, "
        "0 < l < p^r/2",
        lambda p, r: 1, _fact_range,
        lambda p, r, k: Fraction(-2 * p ** r, binomial(2 * k, k)),
        lambda p, r, k: Fraction((p ** r - k) * binomial(2 * p ** r - 2 * k, p ** r - k)),
        p_integral=False)

_family("BIN-3.9",
        "C(2p^r-1,k) == (-1)^k  (mod p) for 1 <= k <= (p^r-3)/2",
        lambda p, r: 1, _binrow_range,
        lambda p, r, k: Fraction(binomial(2 * p ** r - 1, k)),
        lambda p, r, k: Fraction((-1) ** k),
        lucas=lambda p, r, k: lucas_residue(2 * p ** r - 1, k, p))

# 2p^r - 2k - 2 is even, so the negative-upper reflection drops its sign here
_family("BIN-3.10",
        "C(-2p^r-1,2p^r-2k-2) == 3  (mod p) for 1 <= k <= (p^r-3)/2",
        lambda p, r: 1, _binrow_range,
        lambda p, r, k: Fraction(binomial(-2 * p ** r - 1, 2 * p ** r - 2 * k - 2)),
        lambda p, r, k: Fraction(3),
        lucas=lambda p, r, k: lucas_residue(4 * p ** r - 2 * k - 2,
                                            2 * p ** r - 2 * k - 2, p))

_family("BIN-3.11",
        "C(2j q - q - 1, j q - (q+1)/2) == (-1)^((q-1)/2) C(2j-2,j-1)  (mod p) "
        "for q = p^(r-1), 1 <= j <= (p-1)/2",
        lambda p, r: 1, _bin311_range,
        lambda p, r, j: Fraction(binomial(2 * j * p ** (r - 1) - p ** (r - 1) - 1,
                                          j * p ** (r - 1) - (p ** (r - 1) + 1) // 2)),
        lambda p, r, j: Fraction((-1) ** ((p ** (r - 1) - 1) // 2)
                                 * binomial(2 * j - 2, j - 1)),
        lucas=lambda p, r, j: lucas_residue(
            2 * j * p ** (r - 1) - p ** (r - 1) - 1,
            j * p ** (r - 1) - (p ** (r - 1) + 1) // 2, p))

_family("BIN-5.5",
        "C(3p^r-1,k) == (-1)^k  (mod p) for 1 <= k <= (p^r-3)/2",
        lambda p, r: 1, _binrow_range,
        lambda p, r, k: Fraction(binomial(3 * p ** r - 1, k)),
        lambda p, r, k: Fraction((-1) ** k),
        lucas=lambda p, r, k: lucas_residue(3 * p ** r - 1, k, p))

_family("BIN-5.6",
        "C(-4p^r-1,2p^r-2k-2) == 5  (mod p) for 1 <= k <= (p^r-3)/2",
        lambda p, r: 1, _binrow_range,
        lambda p, r, k: Fraction(binomial(-4 * p ** r - 1, 2 * p ** r - 2 * k - 2)),
        lambda p, r, k: Fraction(5),
        lucas=lambda p, r, k: lucas_residue(6 * p ** r - 2 * k - 2,
                                            2 * p ** r - 2 * k - 2, p))

CATALOG: dict[str, CongruenceCase] = dict(sorted(_C.items()))


# --------------------------------------------------------------------------
# evaluation

def get_case(case) -> CongruenceCase:
    if isinstance(case, CongruenceCase):
        return case
    try:
        return CATALOG[case]
    except KeyError:
        raise UnknownCase(f"unknown case id {case!r}; see list_cases()") from None


def list_cases(status: Optional[str] = None, glob: Optional[str] = None
               ) -> list[CongruenceCase]:
    if status is not None and status not in STATUSES:
        raise ValueError(f"unknown status {status!r}; known: {', '.join(STATUSES)}")
    out = []
    for cid in sorted(CATALOG):
        case = CATALOG[cid]
        if status is not None and case.status != status:
            continue
        if glob is not None and not fnmatch(cid, glob):
            continue
        out.append(case)
    return out


def _check_point(case: CongruenceCase, params: CheckParams, include_p3: bool) -> None:
    if params.p < case.p_floor and not (params.p == 3 and include_p3):
        raise PrimeBelowFloor(
            f"{case.id} needs p >= {case.p_floor} (got p = {params.p}); "
            "p = 3 runs require the include-p3 override and are informational")
    if not case.uses_r and params.r != 1:
        raise ValueError(f"{case.id} has no exponent r in its statement; use r = 1")
    if not case.uses_delta and params.delta is not None:
        raise ValueError(f"{case.id} takes no delta")
    if case.kind != "family" and params.k is not None:
        raise ValueError(f"{case.id} takes no member index k")
    if case.kind != "series" and params.upper_override is not None:
        raise ValueError(f"{case.id} takes no summation cap")


def _series_upper(case: CongruenceCase, params: CheckParams) -> int:
    if params.upper_override is not None:
        return params.upper_override
    return case.upper(params.p, params.r, params.delta or 1)


def series_sum_exact(case, params: CheckParams) -> Rational:
    """Exact value of a series case's truncated sum."""
    case = get_case(case)
    if case.kind != "series":
        raise ValueError(f"{case.id} is not a series case")
    pk, rk = _series_keys(case, params.p, params.r)
    return _series_exact(case.series_name, pk, rk, _series_upper(case, params))


def series_sum_residue(case, params: CheckParams, ctx: PadicContext) -> int:
    """Termwise residue of a series case's truncated sum in Z/p^m."""
    case = get_case(case)
    if case.kind != "series":
        raise ValueError(f"{case.id} is not a series case")
    if not case.p_integral:
        raise BackendIneligible(
            f"{case.id} has p-power denominators; use the exact backend")
    pk, rk = _series_keys(case, params.p, params.r)
    return _series_residue(case.series_name, pk, rk, _series_upper(case, params),
                           ctx.p, ctx.m)


def _family_members(case: CongruenceCase, params: CheckParams
                    ) -> list[tuple[int, Rational, Rational]]:
    p, r = params.p, params.r
    rng = case.members(p, r)
    if params.k is not None:
        if params.k not in rng:
            raise ValueError(
                f"{case.id}: member index {params.k} outside admissible range "
                f"[{rng.start}, {rng.stop - 1}] at p={p}, r={r}")
        keys = [params.k]
    else:
        keys = list(rng)
    return [(k, case.member_lhs(p, r, k), case.member_rhs(p, r, k)) for k in keys]


def _saturating_residue_valuation(diff_residue: int, p: int, m: int) -> Valuation:
    """Valuation of a residue-ring difference, capped at the ring's precision."""
    if diff_residue % p ** m == 0:
        return m
    v = 0
    x = diff_residue % p ** m
    while x % p == 0:
        x //= p
        v += 1
    return v


def evaluate_case(case, params: CheckParams, backend: str = "exact", *,
                  include_p3: bool = False) -> CheckResult:
    """Compute LHS and RHS at the given point and score the congruence.

    backend "both" runs the exact path, cross-checks the residue path when the
    case is eligible, and reports the exact values.
    """
    case = get_case(case)
    if backend not in ("exact", "residue", "both"):
        raise ValueError(f"backend must be exact, residue, or both, got {backend!r}")
    _check_point(case, params, include_p3)
    t0 = time.perf_counter()
    claimed = case.claimed(params.p, params.r)
    note = ""
    informational = (case.status in ("conjecture", "informational")
                     or params.p == 3 or params.r < case.r_floor)
    if params.p == 3:
        note = "p = 3 is below the default floor; result is informational"
    elif params.r < case.r_floor:
        note = f"statement hypotheses need r >= {case.r_floor}; r = {params.r} is informational"

    if backend == "residue":
        if not case.p_integral:
            raise BackendIneligible(
                f"{case.id} has p-power denominators; use the exact backend")
        result = _evaluate_residue(case, params, claimed)
    else:
        result = _evaluate_exact(case, params, claimed)
        if backend == "both" and case.p_integral and claimed is not None:
            ctx = PadicContext(params.p, claimed)
            lhs_res, rhs_res = _residue_pair(case, params, ctx)
            if (residue(result[0], ctx) != lhs_res
                    or residue(result[1], ctx) != rhs_res):
                raise AssertionError(
                    f"{case.id}: exact and residue backends disagree at "
                    f"p={params.p}, r={params.r}")
    lhs, rhs, observed, passed, member_note = result
    if member_note:
        note = f"{member_note}; {note}" if note else member_note

    elapsed = (time.perf_counter() - t0) * 1000.0
    return CheckResult(case_id=case.id, params=params, lhs=lhs, rhs=rhs,
                       observed_valuation=observed, claimed_exponent=claimed,
                       passed=passed, backend=backend, elapsed_ms=elapsed,
                       status=case.status, informational=informational, note=note)


def _evaluate_exact(case: CongruenceCase, params: CheckParams,
                    claimed: Optional[int]):
    p = params.p
    if case.kind == "series":
        lhs = series_sum_exact(case, params)
        rhs = case.rhs(p, params.r)
        observed = vp(lhs - rhs, p)
        return lhs, rhs, observed, _passes(observed, claimed), ""
    if case.kind in ("scalar", "identity"):
        lhs = case.lhs_scalar(p, params.r)
        rhs = case.rhs(p, params.r)
        observed = vp(lhs - rhs, p)
        if case.kind == "identity":
            return lhs, rhs, observed, lhs == rhs, ""
        return lhs, rhs, observed, _passes(observed, claimed), ""
    # family: aggregate min observed valuation; report the worst member
    members = _family_members(case, params)
    if not members:
        return Fraction(0), Fraction(0), INFINITE, True, "empty member range"
    worst = None
    for k, lhs, rhs in members:
        obs = vp(lhs - rhs, p)
        if worst is None or obs < worst[3]:
            worst = (k, lhs, rhs, obs)
    k, lhs, rhs, observed = worst
    note = f"k={k}" if params.k is not None else \
        f"worst member k={k} of {len(members)}"
    return lhs, rhs, observed, _passes(observed, claimed), note


def _residue_pair(case: CongruenceCase, params: CheckParams, ctx: PadicContext):
    """(lhs, rhs) in Z/p^m; for series cases the lhs is accumulated termwise."""
    if case.kind == "series":
        return (series_sum_residue(case, params, ctx),
                residue(case.rhs(params.p, params.r), ctx))
    if case.kind == "scalar":
        return (residue(case.lhs_scalar(params.p, params.r), ctx),
                residue(case.rhs(params.p, params.r), ctx))
    # family: reduce the worst member per the exact scoring
    members = _family_members(case, params)
    if not members:
        return 0, 0
    worst = None
    for k, lhs, rhs in members:
        obs = vp(lhs - rhs, params.p)
        if worst is None or obs < worst[1]:
            worst = ((lhs, rhs), obs)
    (lhs, rhs), _ = worst
    return residue(lhs, ctx), residue(rhs, ctx)


def _evaluate_residue(case: CongruenceCase, params: CheckParams,
                      claimed: Optional[int]):
    if claimed is None:
        raise BackendIneligible(f"{case.id} is an exact identity; residue "
                                "reduction cannot certify equality")
    ctx = PadicContext(params.p, claimed)
    if case.kind == "family":
        members = _family_members(case, params)
        if not members:
            return 0, 0, claimed, True, "empty member range"
        worst = None
        for k, lhs, rhs in members:
            lr, rr = residue(lhs, ctx), residue(rhs, ctx)
            obs = _saturating_residue_valuation(lr - rr, params.p, claimed)
            if worst is None or obs < worst[3]:
                worst = (k, lr, rr, obs)
        k, lhs_res, rhs_res, observed = worst
        note = f"k={k}" if params.k is not None else \
            f"worst member k={k} of {len(members)}"
        return lhs_res, rhs_res, observed, observed >= claimed, note
    lhs_res, rhs_res = _residue_pair(case, params, ctx)
    observed = _saturating_residue_valuation(lhs_res - rhs_res, params.p, claimed)
    return lhs_res, rhs_res, observed, observed >= claimed, ""


def _passes(observed: Valuation, claimed: Optional[int]) -> bool:
    if claimed is None:
        return observed is INFINITE
    return observed >= claimed


def cross_validate(case, params: CheckParams, ctx: PadicContext) -> bool:
    """Check the exact and residue routes against each other.

    Series cases: residue(pairwise exact sum) vs the termwise modular sum.
    Families: each member's big-integer LHS mod p vs the digitwise Lucas
    product. Scalars: exact value reduced twice through independent call
    paths. Raises BackendIneligible for cases with p-power denominators.
    """
    case = get_case(case)
    if not case.p_integral:
        raise BackendIneligible(
            f"{case.id} has p-power denominators; use the exact backend")
    if case.kind == "series":
        return residue(series_sum_exact(case, params), ctx) == \
            series_sum_residue(case, params, ctx)
    if case.kind == "scalar":
        exact = case.lhs_scalar(params.p, params.r)
        lhs_res, _ = _residue_pair(case, params, ctx)
        return residue(exact, ctx) == lhs_res
    return all(residue(lhs, PadicContext(params.p, 1)) ==
               case.member_lucas(params.p, params.r, k)
               for k, lhs, _ in _family_members(case, params))
