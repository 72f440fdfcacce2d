"""2-adic analysis of carry registers.

Connection integers, vectors and norms, connection matrices, closed-form
numerators for the binary modes, rational reconstruction of output
sequences, and carry-range bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import gf2n, registers
from .exactmath import FactorBudgetExceeded, det_exact, multiplicative_order
from .registers import FIBONACCI, GALOIS, RING, RegisterSpec, RegisterState


@dataclass(frozen=True)
class Rational2Adic:
    """A 2-adic rational p/q with odd positive denominator."""

    p: int
    q: int
    reduced: bool = False

    def __post_init__(self):
        if self.q <= 0 or self.q % 2 == 0:
            raise ValueError("denominator must be odd and positive")
        if self.reduced and math.gcd(self.p, self.q) != 1:
            raise ValueError("marked reduced but gcd > 1")

    def reduce(self) -> "Rational2Adic":
        g = math.gcd(self.p, self.q)
        return Rational2Adic(self.p // g, self.q // g, reduced=True)

    def __str__(self):
        return f"{self.p}/{self.q}"


def connection_integer(spec: RegisterSpec) -> tuple:
    """q = sum_i lift(q_i) 2^i - 1 as a coordinate vector in Z[X]/(P)."""
    if spec.mode == RING:
        raise ValueError("ring specs have no coefficient connection integer")
    n = spec.n
    out = [0] * n
    for i, coeff in enumerate(spec.coeffs, start=1):
        w = 1 << i
        for j in range(n):
            out[j] += w * coeff[j]
    out[0] -= 1
    return tuple(out)


def connection_vector(spec: RegisterSpec) -> tuple:
    """(q~_0, ..., q~_{n-1}) with q~_j = sum_i q_j^i 2^i (no -1 on coordinate 0)."""
    q = connection_integer(spec)
    return (q[0] + 1,) + q[1:]


def connection_norm(spec: RegisterSpec) -> int:
    """q~ = |N(q)|, the absolute field norm of the connection integer."""
    return abs(gf2n.norm(connection_integer(spec), spec.poly))


def connection_matrix(spec: RegisterSpec):
    """Integer matrix of the linear system satisfied by the 2-adic outputs.

    Fibonacci: n x n matrix of multiplication by -q.  Galois: I - 2 G^t with
    G the expanded transition matrix.  Ring mode has no separate form; use
    identity_minus_2t directly.
    """
    if spec.mode == FIBONACCI:
        q = connection_integer(spec)
        return gf2n.mult_matrix(tuple(-c for c in q), spec.poly)
    if spec.mode == GALOIS:
        big = spec.big_matrix()
        d = len(big)
        return tuple(
            tuple((1 if i == j else 0) - 2 * big[j][i] for j in range(d))
            for i in range(d)
        )
    raise ValueError("ring specs: use identity_minus_2t / ring_connection_norm")


def identity_minus_2t(big):
    d = len(big)
    return tuple(
        tuple((1 if i == j else 0) - 2 * big[i][j] for j in range(d)) for i in range(d)
    )


def ring_connection_norm(big):
    """(signed det(I - 2 big), its absolute value q~)."""
    det = det_exact(identity_minus_2t(big))
    return det, abs(det)


def closed_form_numerator(spec: RegisterSpec, init: RegisterState) -> Rational2Adic:
    """Closed-form numerator of the output 2-adic value for binary modes.

    Returns the unreduced p over q = connection integer; the output sequence
    (cell 0 over time) is the 2-adic expansion of p/q.
    """
    if spec.n != 1 or spec.mode == RING:
        raise ValueError("closed-form numerator covers binary Fibonacci/Galois only")
    spec._check_state(init)
    r = spec.r
    a = init.a
    taps = [c[0] for c in spec.coeffs]  # q_1 .. q_r
    if spec.mode == FIBONACCI:
        minus_p = sum(a[i] << i for i in range(r)) + (init.m[0] << r)
        for i in range(1, r):
            inner = sum(taps[j - 1] * a[i - j] for j in range(1, i + 1))
            minus_p -= inner << i
    else:
        minus_p = sum(a[i] << i for i in range(r))
        minus_p += sum(init.m[i - 1] << i for i in range(1, r + 1))
    q = connection_integer(spec)[0]
    p = -minus_p
    if q < 0:
        p, q = -p, -q
    return Rational2Adic(p, q, reduced=False)


def expand_2adic(p: int, q: int, count: int):
    """First count bits of the 2-adic expansion of p/q (q odd)."""
    if q % 2 == 0:
        raise ValueError("denominator must be odd")
    bits = []
    for _ in range(count):
        b = (p * q) & 1  # p * q^{-1} mod 2 == p*q mod 2 for odd q
        bits.append(b)
        p = (p - b * q) >> 1
    return bits


def sequence_to_rational(bits, preperiod: int, period: int) -> Rational2Adic:
    """Exact rational value of an eventually periodic 2-adic bit sequence."""
    if period < 1:
        raise ValueError("period must be >= 1")
    if len(bits) < preperiod + period:
        raise ValueError("need at least preperiod + period bits")
    pre = sum(bits[i] << i for i in range(preperiod))
    b = sum(bits[preperiod + i] << i for i in range(period))
    # value = pre + 2^s * B / (1 - 2^T), cleared to an odd positive denominator
    den = (1 << period) - 1
    num = pre * den - (b << preperiod)
    return Rational2Adic(num, den).reduce()


def memory_bounds(big) -> tuple:
    """Carry weight vector: column sums of the expanded transition matrix."""
    d = len(big)
    return tuple(sum(big[i][j] for i in range(d)) for j in range(d))


def check_containment(mem_rows, w):
    """Per-coordinate stability report for a carry trace against weights w.

    For each coordinate: entry step (first time from which the whole shown
    trace stays in [0, w_j), treating w_j = 0 as the single value 0) and
    whether it stays contained from there on.
    """
    report = []
    for row, wj in zip(mem_rows, w):
        hi = wj if wj > 0 else 1
        inside = [0 <= x < hi for x in row]
        entry = len(row)
        for t in range(len(row) - 1, -1, -1):
            if inside[t]:
                entry = t
            else:
                break
        report.append(
            {
                "weight": wj,
                "entry_step": entry if entry < len(row) else None,
                "contained": entry < len(row),
            }
        )
    return report


@dataclass
class AnalysisReport:
    """Everything the 2-adic analysis can say about one register spec."""

    spec: RegisterSpec
    q_tilde: int
    det_i_minus_2t: int
    weights: tuple
    connection_integer: tuple | None = None
    connection_vector: tuple | None = None
    connection_matrix: tuple | None = None
    order: int | None = None
    order_unavailable: str | None = None
    feedback_corner: tuple | None = None  # t_{1,r} for ring specs
    rationals: list | None = None
    preperiod: int | None = None
    period: int | None = None

    def to_dict(self):
        d = {
            "spec": self.spec.to_dict(),
            "q_tilde": str(self.q_tilde),
            "det_i_minus_2t": str(self.det_i_minus_2t),
            "weights": [str(x) for x in self.weights],
        }
        if self.connection_integer is not None:
            d["connection_integer"] = [str(x) for x in self.connection_integer]
            d["connection_vector"] = [str(x) for x in self.connection_vector]
        if self.connection_matrix is not None:
            d["connection_matrix"] = [
                [str(x) for x in row] for row in self.connection_matrix
            ]
        d["order"] = str(self.order) if self.order is not None else "unavailable"
        if self.order_unavailable:
            d["order_unavailable"] = self.order_unavailable
        if self.feedback_corner is not None:
            d["feedback_corner"] = gf2n.elem_to_bits(self.feedback_corner)
        if self.rationals is not None:
            d["preperiod"] = str(self.preperiod)
            d["period"] = str(self.period)
            d["rationals"] = [
                {"p": str(x.p), "q": str(x.q)} for x in self.rationals
            ]
        return d


def analyze(
    spec: RegisterSpec,
    init: RegisterState | None = None,
    reconstruct: bool = False,
    rho_budget: int = 10**6,
    cycle_budget: int = 10**6,
) -> AnalysisReport:
    """Full analysis: norms, determinant, period bound, weights, rationals."""
    big = spec.big_matrix()
    det, q_tilde = ring_connection_norm(big)
    report = AnalysisReport(
        spec=spec,
        q_tilde=q_tilde,
        det_i_minus_2t=det,
        weights=memory_bounds(big),
    )
    if spec.mode != RING:
        report.connection_integer = connection_integer(spec)
        report.connection_vector = connection_vector(spec)
        report.connection_matrix = connection_matrix(spec)
        norm_abs = connection_norm(spec)
        if norm_abs != q_tilde:
            raise AssertionError(
                f"norm/determinant mismatch: |N(q)|={norm_abs}, |det|={q_tilde}"
            )
    else:
        report.feedback_corner = spec.matrix[0][spec.r - 1]
    if q_tilde > 1:
        try:
            report.order = multiplicative_order(2, q_tilde, rho_budget)
        except FactorBudgetExceeded as exc:
            report.order_unavailable = str(exc)
    else:
        report.order = 1
    if reconstruct:
        if init is None:
            raise ValueError("reconstruction needs an initial state")
        s, t = registers.detect_cycle(spec, init, max_steps=cycle_budget)
        bits, _ = registers.run(spec, init, s + t)
        report.preperiod, report.period = s, t
        report.rationals = [sequence_to_rational(row, s, t) for row in bits]
    return report
