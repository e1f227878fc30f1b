"""Special functions used by the multipole field expansion.

Spherical Bessel functions of integer order (negative orders included),
the spherical Hankel function of the first kind, Condon-Shortley spherical
harmonics, Clebsch-Gordan coefficients and the sine integral.

All functions are pure and scalar; vectorise with ``np.vectorize`` or list
comprehensions when grids are needed.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import sici

__all__ = [
    "DomainError",
    "MAX_ORDER",
    "spherical_bessel_j",
    "spherical_hankel1",
    "spherical_harmonic",
    "clebsch_gordan",
    "clebsch_gordan_exact",
    "sine_integral",
    "half_integer_bessel_square_sum",
]

# accuracy is validated up to this order; recurrences accept up to _ORDER_LIMIT
MAX_ORDER = 12
_ORDER_LIMIT = 64

_RESCALE = 1e250


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


def _check_order(ell: int) -> int:
    if int(ell) != ell:
        raise DomainError(f"order must be an integer, got {ell!r}")
    ell = int(ell)
    if abs(ell) > _ORDER_LIMIT:
        raise DomainError(f"|order| <= {_ORDER_LIMIT} supported, got {ell}")
    return ell


def _j_upward(ell: int, x: float) -> float:
    j_prev, j_cur = math.sin(x) / x, math.sin(x) / x**2 - math.cos(x) / x
    if ell == 0:
        return j_prev
    for n in range(1, ell):
        j_prev, j_cur = j_cur, (2 * n + 1) / x * j_cur - j_prev
    return j_cur


def _j_miller(ell: int, x: float) -> float:
    # downward recurrence from far above ell, normalised on j0 or j1
    start = ell + 30 + int(x)
    f_next, f_cur = 0.0, 1e-300
    value = 0.0
    for n in range(start, 0, -1):
        f_next, f_cur = f_cur, (2 * n + 1) / x * f_cur - f_next
        # f_cur now holds the order n - 1 value
        if n - 1 == ell:
            value = f_cur
        if abs(f_cur) > _RESCALE:
            f_cur /= _RESCALE
            f_next /= _RESCALE
            value /= _RESCALE
    f0, f1 = f_cur, f_next
    j0 = math.sin(x) / x
    j1 = math.sin(x) / x**2 - math.cos(x) / x
    if abs(j0) >= abs(j1):
        return value * (j0 / f0)
    return value * (j1 / f1)


def _j_negative(n: int, x: float) -> float:
    """j_{-n}(x) for n >= 1 by downward recurrence from j_0, j_{-1}."""
    j_up, j_cur = math.sin(x) / x, math.cos(x) / x
    # j_up = j_0, j_cur = j_{-1}
    for ell in range(-1, -n, -1):
        nxt = (2 * ell + 1) / x * j_cur - j_up
        if not math.isfinite(nxt):
            raise OverflowError(f"j_{{{-n}}}({x}) overflows")
        j_up, j_cur = j_cur, nxt
    if not math.isfinite(j_cur):
        raise OverflowError(f"j_{{{-n}}}({x}) overflows")
    return j_cur


def spherical_bessel_j(ell: int, x: float) -> float:
    """Spherical Bessel function ``j_ell(x) = sqrt(pi/2x) J_{ell+1/2}(x)``.

    Integer orders up to ``|ell| = 64`` are accepted (validated for
    ``|ell| <= 12``). Negative orders are
    singular at the origin; ``j_{-n}`` equals ``(-1)^n y_{n-1}``.

    Parameters
    ----------
    ell : int
        Order (may be negative).
    x : float
        Real argument, ``x >= 0`` (``x > 0`` for negative orders).

    Raises
    ------
    DomainError
        For ``x < 0`` or ``x == 0`` with a negative order.
    OverflowError
        When a negative order at tiny ``x`` exceeds the float range.
    """
    ell = _check_order(ell)
    x = float(x)
    if x < 0 or not math.isfinite(x):
        raise DomainError(f"argument must be finite and >= 0, got {x}")
    if ell < 0:
        if x == 0.0:
            raise DomainError(f"j_{ell} has a pole at x = 0")
        return _j_negative(-ell, x)
    if x == 0.0:
        return 1.0 if ell == 0 else 0.0
    if x < 1e-3 or (x < 0.5 and ell >= 2):
        # leading terms of the ascending series are exact to double precision here
        term = x**ell / _double_factorial(2 * ell + 1)
        total, k, x2 = term, 0, -0.5 * x * x
        while abs(term) > 1e-18 * abs(total):
            k += 1
            term *= x2 / (k * (2 * ell + 2 * k + 1))
            total += term
        return total
    if ell == 0:
        return math.sin(x) / x
    if x > ell:
        return _j_upward(ell, x)
    return _j_miller(ell, x)


def _double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def spherical_hankel1(ell: int, x: float) -> complex:
    """Outgoing spherical Hankel function ``h1_ell = j_ell + i (-1)^(ell+1) j_{-ell-1}``."""
    ell = _check_order(ell)
    if ell < 0:
        raise DomainError("spherical_hankel1 takes non-negative orders")
    if x <= 0:
        raise DomainError(f"h1_{ell} diverges at x = {x}")
    sign = -1.0 if ell % 2 == 0 else 1.0
    return complex(spherical_bessel_j(ell, x), sign * spherical_bessel_j(-ell - 1, x))


def sine_integral(z: float) -> float:
    """Si(z), the integral of sin(t)/t from 0 to z."""
    if z < 0:
        raise DomainError(f"sine_integral expects z >= 0, got {z}")
    return float(sici(z)[0])


def _assoc_legendre(ell: int, m: int, x: float) -> float:
    """P_ell^m(x) for m >= 0, Condon-Shortley phase included."""
    somx2 = math.sqrt(max(0.0, (1.0 - x) * (1.0 + x)))
    pmm = 1.0
    fact = 1.0
    for _ in range(m):
        pmm *= -fact * somx2
        fact += 2.0
    if ell == m:
        return pmm
    pmmp1 = x * (2 * m + 1) * pmm
    if ell == m + 1:
        return pmmp1
    for ll in range(m + 2, ell + 1):
        pmm, pmmp1 = pmmp1, (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m)
    return pmmp1


def spherical_harmonic(ell: int, m: int, theta: float, phi: float) -> complex:
    """Spherical harmonic ``Y_{ell m}(theta, phi)`` with the Condon-Shortley phase.

    ``theta`` is the polar angle in ``[0, pi]``, ``phi`` the azimuth.
    """
    if ell < 0 or abs(m) > ell:
        raise DomainError(f"need |m| <= ell with ell >= 0, got ell={ell}, m={m}")
    if not 0.0 <= theta <= math.pi + 1e-12:
        raise DomainError(f"theta must lie in [0, pi], got {theta}")
    am = abs(m)
    norm = math.sqrt(
        (2 * ell + 1) / (4 * math.pi) * math.factorial(ell - am) / math.factorial(ell + am)
    )
    value = norm * _assoc_legendre(ell, am, math.cos(theta)) * complex(
        math.cos(am * phi), math.sin(am * phi)
    )
    if m < 0:
        value = (-1) ** am * value.conjugate()
    return value


def _doubled(value) -> int:
    twice = Fraction(value) * 2
    if twice.denominator != 1:
        raise DomainError(f"{value!r} is not an integer or half-integer")
    return int(twice)


@lru_cache(maxsize=4096)
def _cg_doubled(tj1: int, tm1: int, tj2: int, tm2: int, tj: int, tm: int) -> Fraction:
    """Squared CG coefficient times its sign, as an exact rational (Racah formula).

    Arguments are doubled angular momenta so half-integers stay exact.
    """
    if tm1 + tm2 != tm:
        return Fraction(0)
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm) > tj:
        return Fraction(0)
    if not abs(tj1 - tj2) <= tj <= tj1 + tj2 or (tj1 + tj2 + tj) % 2:
        return Fraction(0)
    if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or (tj + tm) % 2:
        return Fraction(0)
    f = math.factorial
    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tj2 + tj) // 2
    c = (-tj1 + tj2 + tj) // 2
    d = (tj1 + tj2 + tj) // 2 + 1
    prefactor = Fraction((tj + 1) * f(a) * f(b) * f(c), f(d))
    prefactor *= (
        f((tj1 + tm1) // 2) * f((tj1 - tm1) // 2)
        * f((tj2 + tm2) // 2) * f((tj2 - tm2) // 2)
        * f((tj + tm) // 2) * f((tj - tm) // 2)
    )
    total = 0
    denominators = (a, (tj1 - tm1) // 2, (tj2 + tm2) // 2,
                    (tj - tj2 + tm1) // 2, (tj - tj1 - tm2) // 2)
    for k in range(0, a + 1):
        terms = (
            k,
            denominators[0] - k,
            denominators[1] - k,
            denominators[2] - k,
            denominators[3] + k,
            denominators[4] + k,
        )
        if min(terms) < 0:
            continue
        total += Fraction((-1) ** k, math.prod(f(t) for t in terms))
    if total == 0:
        return Fraction(0)
    square = prefactor * total * total
    return square if total > 0 else -square


def clebsch_gordan_exact(j1, m1, j2, m2, j, m) -> Fraction:
    """Signed square ``sign(C) * C**2`` of ``<j1 m1; j2 m2 | j m>`` as a Fraction.

    Integer or half-integer arguments (ints, Fractions or floats like 0.5).
    """
    return _cg_doubled(
        _doubled(j1), _doubled(m1), _doubled(j2), _doubled(m2), _doubled(j), _doubled(m)
    )


def clebsch_gordan(j1, m1, j2, m2, j, m) -> float:
    """Clebsch-Gordan coefficient ``<j1 m1; j2 m2 | j m>`` (Condon-Shortley).

    Selection-rule failures (``m != m1 + m2``, broken triangle, ``|m| > j``)
    return 0 rather than raising.
    """
    signed_square = clebsch_gordan_exact(j1, m1, j2, m2, j, m)
    return math.copysign(math.sqrt(abs(signed_square)), signed_square)


def bessel_row(ells, x: float) -> np.ndarray:
    """Convenience: ``[j_ell(x) for ell in ells]`` as an array."""
    return np.array([spherical_bessel_j(ell, x) for ell in ells])


def half_integer_bessel_square_sum(z: float, ell_max: int) -> float:
    """``sum_{ell=0}^{ell_max} J_{ell+1/2}(z)^2`` via ``J = sqrt(2z/pi) j_ell``.

    Tends to ``Si(2z) / pi`` as ``ell_max`` grows.
    """
    if z <= 0:
        raise DomainError(f"z must be positive, got {z}")
    return 2 * z / math.pi * math.fsum(spherical_bessel_j(ell, z) ** 2
                                       for ell in range(ell_max + 1))
