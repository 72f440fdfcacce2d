"""The six carry-register automata as exact state machines.

Covers binary and vectorial registers in Fibonacci, Galois and Ring mode.
State vectors follow cell-major, coordinate-minor ordering:
a = (a_0^0, ..., a_{n-1}^0, ..., a_0^{r-1}, ..., a_{n-1}^{r-1}) and the
carries likewise (Fibonacci keeps a single n-coordinate carry vector).
All step functions are pure: state in, state out.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import gf2n
from .gf2n import BinaryPolynomial

FIBONACCI = "fibonacci"
GALOIS = "galois"
RING = "ring"
MODES = (FIBONACCI, GALOIS, RING)


class SpecError(ValueError):
    pass


class StepBudgetExceeded(RuntimeError):
    """Cycle detection ran out of steps (possible with negative carries)."""


def _floordiv2(x: int) -> int:
    return x >> 1  # floor semantics, also for negatives


@dataclass(frozen=True)
class RegisterState:
    """Main register bits and integer carries, flattened per the cell-major order."""

    a: tuple
    m: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if any(b not in (0, 1) for b in self.a):
            raise SpecError("main register entries must be bits")

    def to_dict(self):
        return {"a": list(self.a), "m": list(self.m)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["a"]), tuple(d["m"]))


@dataclass(frozen=True)
class RegisterSpec:
    """A register family member: base field, mode, length and connection data.

    Fibonacci/Galois take connection coefficients q_1..q_r (q_r nonzero);
    Ring takes an r x r transition matrix over the field.  Matrices without
    the subdiagonal-ones shape are accepted and flagged as general registers.
    """

    base: str
    mode: str
    r: int
    poly: BinaryPolynomial
    coeffs: tuple | None = None
    matrix: tuple | None = None

    def __post_init__(self):
        if self.base not in ("binary", "vectorial"):
            raise SpecError(f"unknown base {self.base!r}")
        if self.mode not in MODES:
            raise SpecError(f"unknown mode {self.mode!r}")
        if self.r < 1:
            raise SpecError("length must be >= 1")
        if self.base == "binary" and self.poly.n != 1:
            raise SpecError("binary registers use the degree-1 modulus")
        n = self.poly.n
        if self.mode == RING:
            if self.coeffs is not None or self.matrix is None:
                raise SpecError("ring mode takes a transition matrix")
            mat = tuple(tuple(tuple(int(b) & 1 for b in e) for e in row) for row in self.matrix)
            if len(mat) != self.r or any(len(row) != self.r for row in mat):
                raise SpecError("transition matrix must be r x r")
            for row in mat:
                for e in row:
                    if len(e) != n:
                        raise SpecError("matrix entries must have n coordinates")
            object.__setattr__(self, "matrix", mat)
        else:
            if self.matrix is not None or self.coeffs is None:
                raise SpecError(f"{self.mode} mode takes connection coefficients")
            coeffs = tuple(tuple(int(b) & 1 for b in e) for e in self.coeffs)
            if len(coeffs) != self.r:
                raise SpecError("need r connection coefficients")
            for e in coeffs:
                if len(e) != n:
                    raise SpecError("coefficients must have n coordinates")
            if not any(coeffs[-1]):
                raise SpecError("q_r must be nonzero")
            object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self) -> int:
        return self.poly.n

    @property
    def is_ring_shaped(self) -> bool:
        """True when the transition matrix has ones on the subdiagonal."""
        if self.mode != RING:
            return True
        one = (1,) + (0,) * (self.n - 1)
        return all(self.matrix[i + 1][i] == one for i in range(self.r - 1))

    def field_matrix(self):
        """The r x r transition matrix over the field (F/G for Fibonacci/Galois)."""
        n = self.n
        zero = (0,) * n
        one = (1,) + (0,) * (n - 1)
        r = self.r
        if self.mode == RING:
            return self.matrix
        rows = []
        if self.mode == FIBONACCI:
            # last column carries q_r, q_{r-1}, ..., q_1; subdiagonal identity
            for i in range(r):
                row = [zero] * r
                if i > 0:
                    row[i - 1] = one
                row[r - 1] = self.coeffs[r - 1 - i]
                rows.append(tuple(row))
        else:
            # first row carries q_1 ... q_r; subdiagonal identity
            rows.append(tuple(self.coeffs))
            for i in range(1, r):
                row = [zero] * r
                row[i - 1] = one
                rows.append(tuple(row))
        return tuple(rows)

    def big_matrix(self):
        return expand(self.field_matrix(), self.poly)

    def zero_state(self) -> RegisterState:
        rn = self.r * self.n
        mlen = self.n if self.mode == FIBONACCI else rn
        return RegisterState((0,) * rn, (0,) * mlen)

    def state(self, a, m) -> RegisterState:
        s = RegisterState(tuple(a), tuple(m))
        self._check_state(s)
        return s

    def _check_state(self, s: RegisterState):
        rn = self.r * self.n
        mlen = self.n if self.mode == FIBONACCI else rn
        if len(s.a) != rn or len(s.m) != mlen:
            raise SpecError(
                f"state needs {rn} bits and {mlen} carries, got {len(s.a)}/{len(s.m)}"
            )

    # --- serialization (bit-exact, decimal integers) ---

    def to_dict(self):
        d = {"base": self.base, "mode": self.mode, "r": self.r}
        d["poly"] = self.poly.bits() if _is_canonical_lift(self.poly) else self.poly.lift_text()
        if self.mode == RING:
            d["T"] = [[gf2n.elem_to_bits(e) for e in row] for row in self.matrix]
        else:
            d["q"] = [gf2n.elem_to_bits(e) for e in self.coeffs]
        return d

    @classmethod
    def from_dict(cls, d) -> "RegisterSpec":
        try:
            base = d["base"]
            mode = d["mode"]
            r = int(d["r"])
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed spec: {exc}") from exc
        if base == "binary":
            # degree-1 lift X - 1 so that Xbar = 1 and cells are plain bits
            if d.get("poly") not in (None, "11", "-1,1"):
                raise SpecError("binary specs use the degree-1 modulus")
            poly = gf2n.binary_modulus()
        else:
            try:
                poly = BinaryPolynomial.parse(d["poly"])
            except KeyError as exc:
                raise SpecError("vectorial spec needs a poly field") from exc
            except gf2n.PolynomialError as exc:
                raise SpecError(f"bad modulus: {exc}") from exc
        if "T" in d:
            mat = tuple(
                tuple(gf2n.elem_from_bits(e, poly) for e in row) for row in d["T"]
            )
            return cls(base=base, mode=mode, r=r, poly=poly, matrix=mat)
        if "q" in d:
            coeffs = tuple(gf2n.elem_from_bits(e, poly) for e in d["q"])
            return cls(base=base, mode=mode, r=r, poly=poly, coeffs=coeffs)
        raise SpecError("spec needs either 'q' or 'T'")

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RegisterSpec":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed spec: {exc}") from exc
        return cls.from_dict(d)


def _is_canonical_lift(poly: BinaryPolynomial) -> bool:
    return all(c in (0, 1) for c in poly.coeffs)


def binary_spec(mode: str, taps) -> RegisterSpec:
    """Binary FCSR/FCR shorthand: taps are bits q_1..q_r or a 0/1 matrix."""
    P = gf2n.binary_modulus()
    if mode == RING:
        mat = tuple(tuple((int(b) & 1,) for b in row) for row in taps)
        return RegisterSpec(base="binary", mode=mode, r=len(mat), poly=P, matrix=mat)
    coeffs = tuple((int(b) & 1,) for b in taps)
    return RegisterSpec(base="binary", mode=mode, r=len(coeffs), poly=P, coeffs=coeffs)


def expand(field_matrix, P: BinaryPolynomial):
    """Block expansion T -> big rn x rn integer matrix of multiplication blocks."""
    r = len(field_matrix)
    n = P.n
    big = [[0] * (r * n) for _ in range(r * n)]
    for i in range(r):
        row = field_matrix[i]
        if len(row) != r:
            raise ValueError("field matrix must be square")
        for j in range(r):
            block = gf2n.mult_matrix(row[j], P)
            for bi in range(n):
                big[i * n + bi][j * n : j * n + n] = block[bi]
    return tuple(tuple(x) for x in big)


def mat_vec(a, big):
    """Row vector times matrix, over Z."""
    d = len(big)
    out = [0] * d
    for i, ai in enumerate(a):
        if not ai:
            continue
        row = big[i]
        for j in range(d):
            out[j] += ai * row[j]
    return out


def step_vfcr(state: RegisterState, big) -> RegisterState:
    """One clock of a (vectorial) carry register with expanded matrix big."""
    sigma = mat_vec(state.a, big)
    for j, mj in enumerate(state.m):
        sigma[j] += mj
    a = tuple(s & 1 for s in sigma)
    m = tuple(_floordiv2(s) for s in sigma)
    return RegisterState(a, m)


def step_fibonacci(state: RegisterState, spec: RegisterSpec) -> RegisterState:
    """Fibonacci clock: shift one cell, feedback into the last, single carry."""
    n, r, P = spec.n, spec.r, spec.poly
    sigma = list(state.m)
    for i in range(1, r + 1):
        cell = state.a[(r - i) * n : (r - i + 1) * n]
        prod = gf2n.mul_lifted(spec.coeffs[i - 1], cell, P)
        for j in range(n):
            sigma[j] += prod[j]
    new_cell = tuple(s & 1 for s in sigma)
    m = tuple(_floordiv2(s) for s in sigma)
    return RegisterState(state.a[n:] + new_cell, m)


def step_galois(state: RegisterState, spec: RegisterSpec) -> RegisterState:
    """Galois clock: all cells updated at once, per-cell carries."""
    n, r, P = spec.n, spec.r, spec.poly
    a0 = state.a[:n]
    new_a = []
    new_m = []
    for i in range(r):
        prod = gf2n.mul_lifted(spec.coeffs[i], a0, P)
        sigma = list(prod)
        if i < r - 1:
            nxt = state.a[(i + 1) * n : (i + 2) * n]
            for j in range(n):
                sigma[j] += nxt[j]
        for j in range(n):
            sigma[j] += state.m[i * n + j]
        new_a.extend(s & 1 for s in sigma)
        new_m.extend(_floordiv2(s) for s in sigma)
    return RegisterState(tuple(new_a), tuple(new_m))


def step(spec: RegisterSpec, state: RegisterState) -> RegisterState:
    spec._check_state(state)
    if spec.mode == FIBONACCI:
        return step_fibonacci(state, spec)
    if spec.mode == GALOIS:
        return step_galois(state, spec)
    return step_vfcr(state, spec.big_matrix())


def run(spec: RegisterSpec, init: RegisterState, steps: int):
    """Trajectory as row-major traces: bits[rn][steps+1], mems[...][steps+1].

    Column t is the state after t clocks; column 0 is the initial state.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    spec._check_state(init)
    stepper = _stepper(spec)
    bits = [[b] for b in init.a]
    mems = [[x] for x in init.m]
    s = init
    for _ in range(steps):
        s = stepper(s)
        for row, b in zip(bits, s.a):
            row.append(b)
        for row, x in zip(mems, s.m):
            row.append(x)
    return bits, mems


def _stepper(spec: RegisterSpec):
    if spec.mode == FIBONACCI:
        return lambda s: step_fibonacci(s, spec)
    if spec.mode == GALOIS:
        return lambda s: step_galois(s, spec)
    big = spec.big_matrix()
    return lambda s: step_vfcr(s, big)


def detect_cycle(spec: RegisterSpec, init: RegisterState, max_steps: int = 10**6):
    """Least (preperiod s, period T) of the full-state trajectory, via Brent.

    Termination is guaranteed for nonnegative carries (the carry vector is
    absorbed into a finite box); otherwise the step budget applies.
    """
    spec._check_state(init)
    f = _stepper(spec)
    power = lam = 1
    steps = 0
    tortoise = init
    hare = f(init)
    steps += 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"no cycle within {max_steps} steps")
    tortoise = hare = init
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        mu += 1
        if mu > max_steps:
            raise StepBudgetExceeded(f"no cycle within {max_steps} steps")
    return mu, lam


def minimal_period(seq, preperiod: int, period: int) -> int:
    """Least divisor of period that the tail of seq actually repeats with."""
    tail = seq[preperiod : preperiod + period]
    for d in sorted(_divisors(period)):
        if all(tail[i] == tail[i % d] for i in range(period)):
            return d
    return period


def _divisors(t: int):
    out = set()
    d = 1
    while d * d <= t:
        if t % d == 0:
            out.add(d)
            out.add(t // d)
        d += 1
    return out


def as_ring(spec: RegisterSpec):
    """Equivalent Ring-mode spec (F/G matrix) and the carry embedding map."""
    if spec.mode == RING:
        return spec, lambda s: s
    ring = RegisterSpec(
        base=spec.base, mode=RING, r=spec.r, poly=spec.poly, matrix=spec.field_matrix()
    )
    if spec.mode == GALOIS:
        return ring, lambda s: s
    rn = spec.r * spec.n

    def embed(s: RegisterState) -> RegisterState:
        # Fibonacci's single carry vector lands in the last carry slot
        return RegisterState(s.a, (0,) * (rn - spec.n) + tuple(s.m))

    return ring, embed
