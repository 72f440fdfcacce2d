"""Arithmetic in F2[X]/(P) and its integer lift Z[X]/(P).

Field elements are coordinate tuples in the power basis {1, Xbar, ...,
Xbar^(n-1)}, constant term first.  The lift of the modulus P keeps the
signed coefficients it was constructed with, so X^2 - X - 1 and
X^2 + X + 1 define the same field but different integer quotient rings
(and therefore different norms).
"""

from __future__ import annotations

from functools import lru_cache

from .exactmath import det_exact, trial_division_factor


class PolynomialError(ValueError):
    pass


def _bits_of_int_poly(p: int) -> str:
    return bin(p)[2:][::-1]


def _int_poly(bits) -> int:
    """Pack F2 coefficients (constant first) into an int, bit k = coeff of X^k."""
    v = 0
    for k, b in enumerate(bits):
        if b & 1:
            v |= 1 << k
    return v


def _gf2_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _gf2_mulmod(a: int, b: int, m: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a = _gf2_mod(a << 1, m)
    return r


def _gf2_powmod(a: int, e: int, m: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _gf2_mulmod(r, a, m)
        e >>= 1
        a = _gf2_mulmod(a, a, m)
    return r


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _is_irreducible(m: int) -> bool:
    """Rabin's irreducibility test for a polynomial over F2 (int-encoded)."""
    n = m.bit_length() - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = 0b10
    # X^(2^n) == X mod m
    t = x
    for _ in range(n):
        t = _gf2_mulmod(t, t, m)
    if t != x:
        return False
    for d in _prime_divisors(n):
        t = x
        for _ in range(n // d):
            t = _gf2_mulmod(t, t, m)
        if _gf2_gcd(t ^ x, m) != 1:
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class BinaryPolynomial:
    """Monic modulus with signed integer coefficients, irreducible mod 2.

    ``coeffs`` is the lift in Z[X] (constant term first, length n+1).
    Reduction mod 2 must be irreducible with nonzero constant term;
    primitivity is verified exactly for n <= 20 and left unverified above.
    """

    __slots__ = ("coeffs", "n", "primitive", "_f2", "_xpow")

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) < 2:
            raise PolynomialError("degree must be at least 1")
        if coeffs[-1] != 1:
            raise PolynomialError("modulus must be monic")
        if coeffs[0] % 2 == 0:
            raise PolynomialError("constant term must be odd")
        self.coeffs = coeffs
        self.n = len(coeffs) - 1
        self._f2 = _int_poly(coeffs)
        if not _is_irreducible(self._f2):
            raise PolynomialError("modulus is reducible over F2")
        self.primitive = self._check_primitive()
        self._xpow = self._power_table()

    @classmethod
    def from_bits(cls, bits: str) -> "BinaryPolynomial":
        """Parse a {0,1} lift from a bit string, constant term first ("111")."""
        if not bits or set(bits) - {"0", "1"}:
            raise PolynomialError("bit string must be nonempty over {0,1}")
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def parse(cls, text: str) -> "BinaryPolynomial":
        """Parse "111" (bit string) or "-1,-1,1" (signed coefficients)."""
        text = text.strip()
        if "," in text:
            return cls(tuple(int(t) for t in text.split(",")))
        return cls.from_bits(text)

    def bits(self) -> str:
        """F2 reduction as a bit string, constant term first."""
        return "".join(str(c & 1) for c in self.coeffs)

    def lift_text(self) -> str:
        """Signed coefficients as comma-separated text (round-trips parse)."""
        return ",".join(str(c) for c in self.coeffs)

    def _check_primitive(self):
        # Xbar generates the multiplicative group iff its order is 2^n - 1.
        if self.n > 20:
            return None  # unverified; analysis only needs irreducibility
        order = (1 << self.n) - 1
        if order == 1:
            return True
        small, rest = trial_division_factor(order)
        primes = set(small)
        if rest > 1:
            primes.add(rest)
        for p in primes:
            if _gf2_powmod(0b10, order // p, self._f2) == 1:
                return False
        return True

    def _power_table(self):
        """Coordinates of Xbar^k in Z[X]/(P) for k = 0 .. 2n-2."""
        n = self.n
        rows = []
        cur = [0] * n
        cur[0] = 1
        for _ in range(2 * n - 1):
            rows.append(tuple(cur))
            nxt = [0] * (n + 1)
            for i, c in enumerate(cur):
                nxt[i + 1] = c
            top = nxt[n]
            cur = [nxt[i] - top * self.coeffs[i] for i in range(n)]
        return tuple(rows)

    def __eq__(self, other):
        return isinstance(other, BinaryPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BinaryPolynomial({self.coeffs})"


# The quadratic modulus used throughout: X^2 - X - 1, whose quotient ring
# Z[X]/(P) has norm form u^2 + uv - v^2.
def quadratic() -> BinaryPolynomial:
    return _quadratic_cached()


@lru_cache(maxsize=1)
def _quadratic_cached():
    return BinaryPolynomial((-1, -1, 1))


# Degree-1 modulus X - 1, making Z[X]/(P) canonically Z; used to run the
# binary automata through the vectorial machinery.
def binary_modulus() -> BinaryPolynomial:
    return _binary_cached()


@lru_cache(maxsize=1)
def _binary_cached():
    return BinaryPolynomial((-1, 1))


def _check_len(v, P: BinaryPolynomial):
    if len(v) != P.n:
        raise ValueError(f"expected {P.n} coordinates, got {len(v)}")


def mul_lifted(a, b, P: BinaryPolynomial) -> tuple:
    """Product of two integer vectors in Z[X]/(P), coordinates in the power basis."""
    _check_len(a, P)
    _check_len(b, P)
    n = P.n
    out = [0] * n
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            row = P._xpow[i + j]
            c = ai * bj
            for k in range(n):
                out[k] += c * row[k]
    return tuple(out)


def gf_mul(a, b, P: BinaryPolynomial) -> tuple:
    """Product in F2[X]/(P) of two bit-coordinate vectors."""
    return tuple(c & 1 for c in mul_lifted(a, b, P))


def mult_matrix(q, P: BinaryPolynomial):
    """Matrix of v -> v*q on Z[X]/(P), row-vector convention (image is v.M)."""
    _check_len(q, P)
    n = P.n
    rows = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        rows.append(mul_lifted(tuple(e), q, P))
    return tuple(rows)


def norm(q, P: BinaryPolynomial) -> int:
    """Field norm of a lifted vector: det of its multiplication matrix."""
    return det_exact(mult_matrix(q, P))


def elem_from_bits(bits: str, P: BinaryPolynomial) -> tuple:
    """Field element from a coordinate bit string, constant coordinate first."""
    if len(bits) != P.n or set(bits) - {"0", "1"}:
        raise ValueError(f"need {P.n} bits over {{0,1}}, got {bits!r}")
    return tuple(int(b) for b in bits)


def elem_to_bits(a) -> str:
    return "".join(str(b & 1) for b in a)
