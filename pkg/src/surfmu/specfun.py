"""Integer-order Bessel, modified Bessel and Struve functions.

Everything is evaluated in ``decimal`` arithmetic: ascending series for
small arguments and the standard asymptotic expansions for large ones.  The
working precision is raised with the argument so that cancellation in the
series never reaches the returned double.  The ``*_dec`` helpers return
``Decimal`` values at the caller's context precision; they are used by the
plasma TE closed form, whose terms cancel by many orders of magnitude.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from functools import lru_cache

# Switchover radii.  Below them the ascending series is used.
Y_SWITCH = 17.0
K_SWITCH = 20.0
STRUVE_SWITCH = 35.0

SUPPORTED_RANGE = (1e-8, 700.0)

_GAMMA_DIGITS = ("0.57721566490153286060651209008240243104215933593992"
                 "3598805767234884867726777664670936947063291746749")
_BASE_PREC = 40


@dataclass(frozen=True)
class SpecFunResult:
    value: float
    est_abs_err: float


@lru_cache(maxsize=32)
def _pi(prec: int) -> Decimal:
    # Series from the decimal module documentation recipe.
    with localcontext() as ctx:
        ctx.prec = prec + 5
        three = Decimal(3)
        lasts, t, s, n, na, d, da = 0, three, 3, 1, 0, 0, 24
        while s != lasts:
            lasts = s
            n, na = n + na, na + 8
            d, da = d + da, da + 32
            t = (t * n) / d
            s += t
    with localcontext() as ctx:
        ctx.prec = prec
        return +s


def _euler(prec: int) -> Decimal:
    if prec > len(_GAMMA_DIGITS) - 4:
        raise ValueError("precision exceeds stored Euler constant")
    with localcontext() as ctx:
        ctx.prec = prec
        return +Decimal(_GAMMA_DIGITS)


def pi_dec() -> Decimal:
    """pi at the current context precision."""
    from decimal import getcontext
    return _pi(getcontext().prec)


def euler_dec() -> Decimal:
    """Euler's constant at the current context precision."""
    from decimal import getcontext
    return _euler(getcontext().prec)


def _sincos(x: Decimal) -> tuple[Decimal, Decimal]:
    from decimal import getcontext
    prec = getcontext().prec
    with localcontext() as ctx:
        ctx.prec = prec + 10 + max(0, int(x.adjusted()))
        twopi = 2 * _pi(ctx.prec)
        r = x % twopi
        if r > twopi / 2:
            r -= twopi
        # Taylor series after halving twice; recover with double-angle formulas.
        r = r / 4
        r2 = r * r
        s, c = Decimal(0), Decimal(0)
        term_s, term_c = r, Decimal(1)
        k = 0
        eps = Decimal(10) ** (-ctx.prec)
        while abs(term_s) > eps or abs(term_c) > eps:
            s += term_s
            c += term_c
            term_s = -term_s * r2 / ((2 * k + 2) * (2 * k + 3))
            term_c = -term_c * r2 / ((2 * k + 1) * (2 * k + 2))
            k += 1
        for _ in range(2):
            s, c = 2 * s * c, c * c - s * s
    with localcontext() as ctx:
        ctx.prec = prec
        return +s, +c


def _harmonic(m: int) -> Decimal:
    return sum((Decimal(1) / j for j in range(1, m + 1)), Decimal(0))


def _check_positive(x: float, name: str) -> None:
    if not (isinstance(x, (int, float)) and math.isfinite(x) and x > 0):
        raise ValueError(f"{name} requires a finite argument x > 0, got {x!r}")


def _series_prec(x: float) -> int:
    # Largest ascending-series term is roughly exp(x); keep that many extra digits.
    return _BASE_PREC + int(x / 2.3) + 5


# ---------------------------------------------------------------- Bessel J, Y

def _jy_series(n: int, x: Decimal) -> tuple[Decimal, Decimal]:
    """J_n and Y_n from their ascending series (context precision)."""
    from decimal import getcontext
    eps = Decimal(10) ** (-getcontext().prec)
    h = x / 2
    h2 = h * h
    fact_n = math.factorial(n)
    term = h ** n / fact_n
    psi_sum = 2 * (-euler_dec()) + _harmonic(n)  # psi(1) + psi(n+1)
    j = Decimal(0)
    tail = Decimal(0)
    k = 0
    while True:
        j += term
        tail += psi_sum * term
        if abs(term) * (1 + abs(psi_sum)) <= eps * max(abs(j), eps):
            break
        k += 1
        term = -term * h2 / (k * (k + n))
        psi_sum += Decimal(1) / k + Decimal(1) / (k + n)
    finite = Decimal(0)
    for k in range(n):
        finite += Decimal(math.factorial(n - k - 1)) / math.factorial(k) * h ** (2 * k - n)
    pi = pi_dec()
    y = (2 * j * h.ln() - finite - tail) / pi
    return j, y


def _hankel_pq(n: int, x: Decimal) -> tuple[Decimal, Decimal, Decimal]:
    """Asymptotic P, Q series and the smallest retained term."""
    mu = 4 * n * n
    p, q = Decimal(0), Decimal(0)
    a = Decimal(1)
    k = 0
    last = None
    while True:
        term = a / x ** k
        if last is not None and abs(term) >= last:
            break
        sign = -1 if (k // 2) % 2 else 1
        if k % 2 == 0:
            p += sign * term
        else:
            q += sign * term
        last = abs(term)
        if last < Decimal(10) ** -60:
            break
        k += 1
        a = a * (mu - (2 * k - 1) ** 2) / (k * 8)
        if a == 0:
            break
    return p, q, last


def _jy_asymptotic(n: int, x: Decimal) -> tuple[Decimal, Decimal, Decimal]:
    p, q, last = _hankel_pq(n, x)
    pi = pi_dec()
    chi = x - (Decimal(2 * n + 1) / 4) * pi
    s, c = _sincos(chi)
    amp = (2 / (pi * x)).sqrt()
    j = amp * (p * c - q * s)
    y = amp * (p * s + q * c)
    return j, y, amp * last


def jy_dec(n: int, x: Decimal) -> tuple[Decimal, Decimal]:
    """J_n(x), Y_n(x) as Decimals at the current precision."""
    if float(x) <= Y_SWITCH:
        from decimal import getcontext
        prec = getcontext().prec
        with localcontext() as ctx:
            ctx.prec = prec + int(float(x) / 2.3) + 5
            j, y = _jy_series(n, +x)
        return +j, +y
    j, y, _ = _jy_asymptotic(n, x)
    return j, y


def _jy(n: int, x: float) -> tuple[SpecFunResult, SpecFunResult]:
    if n < 0:
        raise ValueError("order must be a non-negative integer")
    _check_positive(x, "Bessel J/Y")
    with localcontext() as ctx:
        if x <= Y_SWITCH:
            ctx.prec = _series_prec(x)
            j, y = _jy_series(n, Decimal(x))
            jv, yv = float(j), float(y)
            ej = 4e-17 * abs(jv)
            ey = 4e-17 * abs(yv)
        else:
            ctx.prec = _BASE_PREC
            j, y, trunc = _jy_asymptotic(n, Decimal(x))
            jv, yv = float(j), float(y)
            ej = float(trunc) + 4e-17 * abs(jv)
            ey = float(trunc) + 4e-17 * abs(yv)
    return SpecFunResult(jv, ej), SpecFunResult(yv, ey)


def bessel_j(order: int, x: float) -> SpecFunResult:
    """Bessel function of the first kind J_n(x) for x > 0."""
    return _jy(order, x)[0]


def bessel_y(order: int, x: float) -> SpecFunResult:
    """Bessel function of the second kind Y_n(x) for x > 0.

    Orders 1 and 2 are the ones used downstream; any non-negative integer
    order is accepted.

    Raises
    ------
    ValueError
        If ``x <= 0``.
    """
    return _jy(order, x)[1]


# ---------------------------------------------------------------- modified K

def _k_series(n: int, x: Decimal) -> Decimal:
    from decimal import getcontext
    eps = Decimal(10) ** (-getcontext().prec)
    h = x / 2
    h2 = h * h
    term = h ** n / math.factorial(n)
    psi_sum = 2 * (-euler_dec()) + _harmonic(n)
    i_n = Decimal(0)
    tail = Decimal(0)
    k = 0
    while True:
        i_n += term
        tail += psi_sum * term
        if abs(term) * (1 + abs(psi_sum)) <= eps * max(abs(i_n), eps):
            break
        k += 1
        term = term * h2 / (k * (k + n))
        psi_sum += Decimal(1) / k + Decimal(1) / (k + n)
    finite = Decimal(0)
    for k in range(n):
        finite += (-1) ** k * Decimal(math.factorial(n - k - 1)) / math.factorial(k) * h ** (2 * k - n)
    sign = -1 if n % 2 else 1
    return finite / 2 - sign * h.ln() * i_n + sign * tail / 2


def _k_asymptotic(n: int, x: Decimal) -> tuple[Decimal, Decimal]:
    mu = 4 * n * n
    s = Decimal(0)
    a = Decimal(1)
    k = 0
    last = None
    while True:
        term = a / x ** k
        if last is not None and abs(term) >= last:
            break
        s += term
        last = abs(term)
        if last < Decimal(10) ** -60:
            break
        k += 1
        a = a * (mu - (2 * k - 1) ** 2) / (k * 8)
        if a == 0:
            break
    pref = (pi_dec() / (2 * x)).sqrt() * (-x).exp()
    return pref * s, pref * last


def bessel_k(order: int, x: float) -> SpecFunResult:
    """Modified Bessel function of the second kind K_n(x) for x > 0."""
    if order < 0:
        raise ValueError("order must be a non-negative integer")
    _check_positive(x, "Bessel K")
    with localcontext() as ctx:
        if x <= K_SWITCH:
            ctx.prec = _series_prec(2 * x)
            v = float(_k_series(order, Decimal(x)))
            return SpecFunResult(v, 4e-17 * abs(v))
        ctx.prec = _BASE_PREC
        val, trunc = _k_asymptotic(order, Decimal(x))
        v = float(val)
        return SpecFunResult(v, float(trunc) + 4e-17 * abs(v))


def bessel_k1(x: float) -> SpecFunResult:
    """Modified Bessel function K_1(x) for x > 0.

    Raises
    ------
    ValueError
        If ``x <= 0``.
    """
    return bessel_k(1, x)


def bessel_k0(x: float) -> SpecFunResult:
    """Modified Bessel function K_0(x) for x > 0."""
    return bessel_k(0, x)


# ---------------------------------------------------------------- Struve H

def _half_gamma_ratio(nu: int) -> Decimal:
    # 1 / Gamma(nu + 3/2), without the 1/sqrt(pi) factor.
    return Decimal(4 ** (nu + 1) * math.factorial(nu + 1)) / math.factorial(2 * nu + 2)


def _struve_series(nu: int, x: Decimal) -> Decimal:
    from decimal import getcontext
    eps = Decimal(10) ** (-getcontext().prec)
    h = x / 2
    h2 = h * h
    # Gamma(3/2) Gamma(nu+3/2) = pi * (2nu+2)! / (2 * 4^(nu+1) (nu+1)!)
    term = 2 * h ** (nu + 1) * _half_gamma_ratio(nu) / pi_dec()
    total = Decimal(0)
    k = 0
    while True:
        total += term
        if abs(term) <= eps * max(abs(total), eps):
            break
        term = -term * h2 / ((k + Decimal(3) / 2) * (k + nu + Decimal(3) / 2))
        k += 1
    return total


def _struve_minus_y_asymptotic(nu: int, x: Decimal) -> tuple[Decimal, Decimal]:
    """H_nu - Y_nu from its large-x expansion, with the last term used."""
    h = x / 2
    h2 = h * h
    # Gamma(1/2)/Gamma(nu+1/2) = 4^nu nu! / (2nu)!
    term = Decimal(4 ** nu * math.factorial(nu)) / math.factorial(2 * nu) * h ** (nu - 1)
    total = Decimal(0)
    k = 0
    last = None
    while True:
        if last is not None and abs(term) >= last:
            break
        total += term
        last = abs(term)
        if term == 0:
            break
        term = term * (k + Decimal(1) / 2) * (nu - Decimal(1) / 2 - k) / h2
        k += 1
        if last < Decimal(10) ** -60 * abs(total):
            break
    pi = pi_dec()
    return total / pi, last / pi


def struve_minus_y_dec(nu: int, x: Decimal) -> Decimal:
    """H_nu(x) - Y_nu(x) at the current precision (any x > 0)."""
    if float(x) <= STRUVE_SWITCH:
        from decimal import getcontext
        prec = getcontext().prec
        with localcontext() as ctx:
            ctx.prec = prec + int(float(x) / 2.3) + 5
            xx = +x
            val = _struve_series(nu, xx) - _jy_series(nu, xx)[1]
        return +val
    return _struve_minus_y_asymptotic(nu, x)[0]


def struve_h_dec(nu: int, x: Decimal) -> Decimal:
    """H_nu(x) at the current precision."""
    if x == 0:
        return Decimal(0)
    if float(x) <= STRUVE_SWITCH:
        from decimal import getcontext
        prec = getcontext().prec
        with localcontext() as ctx:
            ctx.prec = prec + int(float(x) / 2.3) + 5
            val = _struve_series(nu, +x)
        return +val
    return _struve_minus_y_asymptotic(nu, x)[0] + jy_dec(nu, x)[1]


def struve_h(order: int, x: float) -> SpecFunResult:
    """Struve function H_n(x) for x >= 0.

    Power series up to ``STRUVE_SWITCH``, then ``Y_n`` plus the asymptotic
    series of ``H_n - Y_n``.
    """
    if order < 0:
        raise ValueError("order must be a non-negative integer")
    if x == 0:
        return SpecFunResult(0.0, 0.0)
    _check_positive(x, "Struve H")
    with localcontext() as ctx:
        if x <= STRUVE_SWITCH:
            ctx.prec = _series_prec(x)
            v = float(_struve_series(order, Decimal(x)))
            return SpecFunResult(v, 4e-17 * abs(v))
        ctx.prec = _BASE_PREC
        xd = Decimal(x)
        m, mtrunc = _struve_minus_y_asymptotic(order, xd)
        _, y, ytrunc = _jy_asymptotic(order, xd)
        v = float(m + y)
        return SpecFunResult(v, float(mtrunc + ytrunc) + 4e-17 * abs(v))


def struve_h_series(order: int, x: float) -> float:
    """Power-series branch only (used to check the branch overlap)."""
    with localcontext() as ctx:
        ctx.prec = _series_prec(x)
        return float(_struve_series(order, Decimal(x)))


def struve_h_asymptotic(order: int, x: float) -> float:
    """Asymptotic branch only (used to check the branch overlap)."""
    with localcontext() as ctx:
        ctx.prec = _BASE_PREC
        xd = Decimal(x)
        return float(_struve_minus_y_asymptotic(order, xd)[0] + _jy_asymptotic(order, xd)[1])


def bessel_y_series(order: int, x: float) -> float:
    """Ascending-series branch of Y_n only."""
    with localcontext() as ctx:
        ctx.prec = _series_prec(x)
        return float(_jy_series(order, Decimal(x))[1])


def bessel_y_asymptotic(order: int, x: float) -> float:
    """Asymptotic branch of Y_n only."""
    with localcontext() as ctx:
        ctx.prec = _BASE_PREC
        return float(_jy_asymptotic(order, Decimal(x))[1])
