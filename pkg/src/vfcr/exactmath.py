"""Exact big-integer linear algebra and elementary number theory.

Everything here works on plain Python ints; no floating point is used
anywhere in the package.
"""

from __future__ import annotations

import math
import random

DEFAULT_RHO_BUDGET = 10**6
TRIAL_DIVISION_BOUND = 10**6

# n below this bound is decided by Miller-Rabin with a fixed base set
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_RANDOM_ROUNDS = 64  # error < 4^-64 = 2^-128


class FactorBudgetExceeded(RuntimeError):
    """Raised when a factorization does not complete within its step budget."""


def det_exact(matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in matrix]
    d = len(m)
    if d == 0 or any(len(row) != d for row in m):
        raise ValueError("matrix must be square and nonempty")
    sign = 1
    prev = 1
    for k in range(d - 1):
        if m[k][k] == 0:
            for i in range(k + 1, d):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, d):
            for j in range(k + 1, d):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[d - 1][d - 1]


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Primality test: deterministic below 3.3e24, 64 random rounds above."""
    n = abs(n)
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % p == 0:
            return n == p
    if n < _MR_DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, a) for a in _MR_BASES)
    rng = random.Random(n % (2**64) ^ 0x9E3779B97F4A7C15)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(_RANDOM_ROUNDS))


def trial_division_factor(n: int, bound: int = TRIAL_DIVISION_BOUND):
    """Strip prime factors up to bound; returns (sorted factor list, cofactor)."""
    factors = []
    for p in (2, 3):
        while n % p == 0:
            factors.append(p)
            n //= p
    d = 5
    while d <= bound and d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                factors.append(p)
                n //= p
        d += 6
    return factors, n


def _pollard_rho(n: int, budget: int, rng: random.Random) -> int | None:
    """One Brent-style rho run; returns a nontrivial factor or None on budget."""
    if n % 2 == 0:
        return 2
    steps = 0
    while steps < budget:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and steps < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1 and steps < budget:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                steps += min(m, r - k)
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                steps += 1
                if steps >= budget:
                    break
        if 1 < g < n:
            return g
    return None


def factorize(n: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> dict:
    """Full prime factorization of n >= 1, or FactorBudgetExceeded.

    Trial division up to 10^6, then Pollard rho with a shared step budget.
    A budget overrun raises; it never returns a wrong answer.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    small, n = trial_division_factor(n)
    for p in small:
        out[p] = out.get(p, 0) + 1
    rng = random.Random(0xC0FFEE ^ (n % (2**64)))
    stack = [n] if n > 1 else []
    budget = rho_budget
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_rho(m, budget, rng)
        if f is None:
            raise FactorBudgetExceeded(f"factorization budget exceeded on {m}")
        stack.append(f)
        stack.append(m // f)
    return out


def multiplicative_order(base: int, q: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> int:
    """Least t > 0 with base^t = 1 mod q, for odd q > 1 coprime to base."""
    if q <= 1 or q % 2 == 0:
        raise ValueError("modulus must be odd and > 1")
    base %= q
    if math.gcd(base, q) != 1:
        raise ValueError("base must be coprime to the modulus")
    if base == 1:
        return 1
    if is_probable_prime(q):
        # order divides q-1: strip prime factors of the exponent
        t = q - 1
        for p, e in factorize(q - 1, rho_budget).items():
            for _ in range(e):
                if pow(base, t // p, q) == 1:
                    t //= p
                else:
                    break
        return t
    if q < 2**32:
        t = 1
        x = base
        while x != 1:
            x = x * base % q
            t += 1
        return t
    raise FactorBudgetExceeded(
        "order modulo a large composite requires factoring the modulus"
    )


def is_primitive_root_2(q: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> bool:
    """True iff 2 generates the multiplicative group mod the odd prime q."""
    if not is_probable_prime(q) or q == 2:
        raise ValueError("modulus must be an odd prime")
    return multiplicative_order(2, q, rho_budget) == q - 1
