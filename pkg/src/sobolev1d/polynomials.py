"""Dense polynomial and piecewise-polynomial algebra on [0, 1].

Polynomials are stored as ascending coefficient tuples with trailing zeros
stripped; the zero polynomial is the empty tuple.  All coefficients of one
polynomial share a scalar mode (exact Fraction or float), and binary
operations require both operands to be in the same mode.  In exact mode every
operation here is exact, including evaluation at rational points, definite
integration and the Sturm-sequence positivity certificates.

Piecewise polynomials carry strictly increasing breakpoints from 0 to 1 with
one polynomial per interval.  Continuity is deliberately not an invariant:
derivatives of extremizers for point masses jump, and a separate predicate
checks C^m smoothness where a caller needs it.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from .scalars import EXACT, FLOAT, ModeMismatchError, Scalar, coerce, mode_of


class Polynomial:
    """Immutable dense polynomial sum(c[i] * x**i)."""

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs: Iterable[Scalar] = (), mode: str | None = None):
        coeffs = list(coeffs)
        if mode is None:
            mode = FLOAT if any(isinstance(c, float) for c in coeffs) else EXACT
        coeffs = [coerce(c, mode) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention deg(0) == -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.mode == other.mode
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.mode, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return f"Polynomial(0, mode={self.mode})"
        terms = " + ".join(f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c != 0)
        return f"Polynomial({terms})"

    def _zero(self) -> Scalar:
        return coerce(0, self.mode)

    def _check_mode(self, other: "Polynomial"):
        if self.mode != other.mode:
            raise ModeMismatchError(
                f"polynomial modes differ: {self.mode} vs {other.mode}"
            )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_mode(other)
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self._zero()
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)], self.mode)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs], self.mode)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_mode(other)
        if self.is_zero() or other.is_zero():
            return Polynomial((), self.mode)
        zero = self._zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out, self.mode)

    def scale(self, c: Scalar) -> "Polynomial":
        c = coerce(c, self.mode)
        return Polynomial([c * a for a in self.coeffs], self.mode)

    def compose_affine(self, a: Scalar, b: Scalar) -> "Polynomial":
        """Return x -> p(a*x + b), by Horner over the affine argument."""
        a = coerce(a, self.mode)
        b = coerce(b, self.mode)
        inner = Polynomial([b, a], self.mode)
        result = Polynomial((), self.mode)
        for c in reversed(self.coeffs):
            result = result * inner + Polynomial([c], self.mode)
        return result

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "Polynomial":
        return Polynomial(
            [c * i for i, c in enumerate(self.coeffs)][1:], self.mode
        )

    def antiderivative(self) -> "Polynomial":
        """The antiderivative P with P(0) = 0."""
        zero = self._zero()
        if self.mode == EXACT:
            out = [zero] + [c / Fraction(i + 1) for i, c in enumerate(self.coeffs)]
        else:
            out = [zero] + [c / (i + 1) for i, c in enumerate(self.coeffs)]
        return Polynomial(out, self.mode)

    def integrate(self, lo: Scalar, hi: Scalar) -> Scalar:
        """Definite integral over [lo, hi], exact in exact mode."""
        anti = self.antiderivative()
        return anti(hi) - anti(lo)

    def __call__(self, x: Scalar) -> Scalar:
        x = coerce(x, self.mode)
        acc = self._zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def to_float(self) -> "Polynomial":
        return Polynomial([float(c) for c in self.coeffs], FLOAT)


def monomial(power: int, coeff: Scalar = 1, mode: str = EXACT) -> Polynomial:
    return Polynomial([0] * power + [coeff], mode)


def constant(value: Scalar, mode: str | None = None) -> Polynomial:
    if mode is None:
        mode = mode_of(value)
    return Polynomial([value], mode)


def binomial_power(a: Scalar, n: int, mode: str = EXACT) -> Polynomial:
    """Expansion of (x + a)**n."""
    p = Polynomial([1], mode)
    factor = Polynomial([a, 1], mode)
    for _ in range(n):
        p = p * factor
    return p


def bridge_poly(k: int, mode: str = EXACT) -> Polynomial:
    """x**k (1-x)**k, the lowest-degree polynomial clamped to order k."""
    p = monomial(k, 1, mode)
    omx = Polynomial([1, -1], mode)
    for _ in range(k):
        p = p * omx
    return p


def kfold_antiderivative(p: Polynomial, k: int) -> Polynomial:
    for _ in range(k):
        p = p.antiderivative()
    return p


def kth_derivative(p: Polynomial, k: int) -> Polynomial:
    for _ in range(k):
        p = p.derivative()
    return p


# ---------------------------------------------------------------------------
# Sturm sequences and exact sign certificates (exact mode only)
# ---------------------------------------------------------------------------


def poly_divmod(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    if den.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, num.degree - den.degree + 1)
    rem = list(num.coeffs)
    d = den.degree
    lead = den.coeffs[-1]
    while len(rem) - 1 >= d and any(c != 0 for c in rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < d:
            break
        shift = len(rem) - 1 - d
        factor = rem[-1] / lead
        q[shift] = factor
        for i, c in enumerate(den.coeffs):
            rem[shift + i] -= factor * c
        rem.pop()
    return Polynomial(q, EXACT), Polynomial(rem, EXACT)


def sturm_chain(p: Polynomial) -> list[Polynomial]:
    if p.mode != EXACT:
        raise ModeMismatchError("Sturm certificates require exact mode")
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        _, rem = poly_divmod(chain[-2], chain[-1])
        chain.append(-rem)
    chain.pop()
    return chain


def _sign_variations(chain: Sequence[Polynomial], x: Fraction) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_half_open(p: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in (lo, hi].  Requires p(lo) != 0."""
    if p(lo) == 0:
        raise ValueError("Sturm count needs a non-root left endpoint")
    chain = sturm_chain(p)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def strip_root(p: Polynomial, c: Fraction) -> tuple[Polynomial, int]:
    """Divide out (x - c)**m where m is the multiplicity of the root c."""
    m = 0
    factor = Polynomial([-c, 1], EXACT)
    while not p.is_zero() and p(c) == 0:
        p, rem = poly_divmod(p, factor)
        assert rem.is_zero()
        m += 1
    return p, m


def is_positive_on_open(p: Polynomial, lo: Fraction, hi: Fraction) -> bool:
    """Certified strict positivity of p on the open interval (lo, hi).

    Endpoint roots are divided out first; an interior root of any
    multiplicity disqualifies (a touching zero is not strict positivity).
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        return False
    q, _ = strip_root(p, lo)
    q, m_hi = strip_root(q, hi)
    # sign of the stripped endpoint factors on (lo, hi): (x-lo)^a > 0 and
    # (x-hi)^b has sign (-1)^b, so fold that sign into the test
    mid = (lo + hi) / 2
    if q(mid) * ((-1) ** m_hi) <= 0:
        return False
    return count_roots_half_open(q, lo, hi) - (1 if q(hi) == 0 else 0) == 0


def isolate_roots(p: Polynomial, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals (a, b] each holding one distinct root.

    Endpoints are adjusted so p does not vanish at any interval boundary
    except possibly at an exactly-hit root, which is returned degenerate.
    """
    out: list[tuple[Fraction, Fraction]] = []

    def rec(a: Fraction, b: Fraction):
        n = count_roots_half_open(p, a, b)
        if n == 0:
            return
        if n == 1:
            out.append((a, b))
            return
        mid = (a + b) / 2
        while p(mid) == 0:
            # exact hit: report the point itself and recurse around it
            out.append((mid, mid))
            eps = (b - a) / 1024
            rec(a, mid - eps)
            rec(mid + eps, b)
            return
        rec(a, mid)
        rec(mid, b)

    if p(lo) == 0 or p(hi) == 0:
        raise ValueError("isolate_roots needs non-root endpoints")
    rec(Fraction(lo), Fraction(hi))
    return out


def is_nonnegative_on(p: Polynomial, lo: Fraction, hi: Fraction) -> bool:
    """Certified p >= 0 on [lo, hi]; touching zeros are allowed.

    Strategy: strip endpoint roots, isolate the distinct interior roots of
    the remainder, and check the sign of p at rational points separating
    them.  Between consecutive distinct roots the sign is constant, so a
    dip below zero would create an extra distinct root and be detected.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if p.is_zero():
        return True
    if p.mode != EXACT:
        raise ModeMismatchError("exact non-negativity check requires exact mode")
    q, _ = strip_root(p, lo)
    q, m_hi = strip_root(q, hi)
    if m_hi % 2:
        # (x - hi)^m is negative on the interval for odd m; fold the sign in
        q = -q
    samples = [lo, hi]
    boxes = isolate_roots(q, lo, hi)
    samples.extend(a for a, _ in boxes)
    samples.extend(b for _, b in boxes)
    for x in samples:
        if q(x) < 0:
            return False
    # also probe between box boundaries and the outer endpoints
    flat = sorted({lo, hi, *[a for a, _ in boxes], *[b for _, b in boxes]})
    for a, b in zip(flat, flat[1:]):
        x = (a + b) / 2
        if q(x) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Piecewise polynomials
# ---------------------------------------------------------------------------


class PiecewisePolynomial:
    """Breakpoints 0 = t_0 < ... < t_n = 1 with one polynomial per piece.

    Evaluation at an interior breakpoint uses the right piece; the last
    interval is closed at 1.
    """

    __slots__ = ("breakpoints", "pieces")

    def __init__(self, breakpoints: Sequence[Scalar], pieces: Sequence[Polynomial]):
        breakpoints = tuple(breakpoints)
        pieces = tuple(pieces)
        if len(breakpoints) < 2 or len(pieces) != len(breakpoints) - 1:
            raise ValueError("need n+1 breakpoints for n pieces")
        mode = pieces[0].mode
        for p in pieces:
            if p.mode != mode:
                raise ModeMismatchError("pieces have mixed modes")
        breakpoints = tuple(coerce(b, mode) for b in breakpoints)
        if breakpoints[0] != 0 or breakpoints[-1] != 1:
            raise ValueError("breakpoints must span [0, 1]")
        for a, b in zip(breakpoints, breakpoints[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "pieces", pieces)

    def __setattr__(self, name, value):
        raise AttributeError("PiecewisePolynomial is immutable")

    @property
    def mode(self) -> str:
        return self.pieces[0].mode

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PiecewisePolynomial)
            and self.breakpoints == other.breakpoints
            and self.pieces == other.pieces
        )

    def __hash__(self):
        return hash((self.breakpoints, self.pieces))

    def __repr__(self):
        return f"PiecewisePolynomial({len(self.pieces)} pieces on {self.breakpoints})"

    def piece_index(self, x: Scalar) -> int:
        if not 0 <= x <= 1:
            raise ValueError(f"point {x} outside [0, 1]")
        lo, hi = 0, len(self.pieces)
        bp = self.breakpoints
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if x >= bp[mid]:
                lo = mid
            else:
                hi = mid
        return lo

    def __call__(self, x: Scalar) -> Scalar:
        return self.pieces[self.piece_index(x)](coerce(x, self.mode))

    def eval_float(self, x: float) -> float:
        return float(self.pieces[self.piece_index(x)].eval_float(x))

    def map_pieces(self, f: Callable[[Polynomial], Polynomial]) -> "PiecewisePolynomial":
        return PiecewisePolynomial(self.breakpoints, [f(p) for p in self.pieces])

    def add_polynomial(self, q: Polynomial) -> "PiecewisePolynomial":
        return self.map_pieces(lambda p: p + q)

    def scale(self, c: Scalar) -> "PiecewisePolynomial":
        return self.map_pieces(lambda p: p.scale(c))

    def derivative(self) -> "PiecewisePolynomial":
        return self.map_pieces(lambda p: p.derivative())

    def antiderivative(self) -> "PiecewisePolynomial":
        """Continuous antiderivative F with F(0) = 0 (constants accumulate)."""
        pieces = []
        carry = coerce(0, self.mode)
        for (a, b), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            anti = p.antiderivative()
            shift = carry - anti(a)
            pieces.append(anti + constant(shift, self.mode))
            carry = pieces[-1](b)
        return PiecewisePolynomial(self.breakpoints, pieces)

    def integrate01(self) -> Scalar:
        total = coerce(0, self.mode)
        for (a, b), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            total += p.integrate(a, b)
        return total

    def square_integral01(self) -> Scalar:
        total = coerce(0, self.mode)
        for (a, b), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            total += (p * p).integrate(a, b)
        return total

    def to_float(self) -> "PiecewisePolynomial":
        return PiecewisePolynomial(
            [float(b) for b in self.breakpoints], [p.to_float() for p in self.pieces]
        )

    def continuity_defects(self, order: int) -> list[Scalar]:
        """Jumps of the j-th derivatives (j <= order) at interior breakpoints."""
        defects = []
        for j in range(order + 1):
            d = self
            for _ in range(j):
                d = d.derivative()
            for i in range(1, len(self.breakpoints) - 1):
                t = self.breakpoints[i]
                defects.append(d.pieces[i](t) - d.pieces[i - 1](t))
        return defects

    def is_continuous(self, order: int = 0, tol: float = 0.0) -> bool:
        return all(abs(d) <= tol for d in self.continuity_defects(order))


def from_polynomial(p: Polynomial) -> PiecewisePolynomial:
    return PiecewisePolynomial([coerce(0, p.mode), coerce(1, p.mode)], [p])


def merge_binary(
    f: PiecewisePolynomial,
    g: PiecewisePolynomial,
    op: Callable[[Polynomial, Polynomial], Polynomial],
) -> PiecewisePolynomial:
    """Apply a polynomial binary op piecewise over the refined partition."""
    if f.mode != g.mode:
        raise ModeMismatchError("piecewise modes differ")
    cuts = sorted(set(f.breakpoints) | set(g.breakpoints))
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2 if f.mode == EXACT else (a + b) / 2.0
        pieces.append(op(f.pieces[f.piece_index(mid)], g.pieces[g.piece_index(mid)]))
    return PiecewisePolynomial(cuts, pieces)


def pp_mul(f: PiecewisePolynomial, g: PiecewisePolynomial) -> PiecewisePolynomial:
    return merge_binary(f, g, lambda p, q: p * q)


def pp_sub(f: PiecewisePolynomial, g: PiecewisePolynomial) -> PiecewisePolynomial:
    return merge_binary(f, g, lambda p, q: p - q)


def pp_equal(f: PiecewisePolynomial, g: PiecewisePolynomial) -> bool:
    diff = pp_sub(f, g)
    return all(p.is_zero() for p in diff.pieces)


def pp_positive_on_open01(pp: PiecewisePolynomial) -> bool:
    """Sturm-certified u > 0 on (0, 1) for an exact piecewise polynomial."""
    if pp.mode != EXACT:
        raise ModeMismatchError("positivity certificate requires exact mode")
    for i, ((a, b), p) in enumerate(
        zip(zip(pp.breakpoints, pp.breakpoints[1:]), pp.pieces)
    ):
        if not is_positive_on_open(p, a, b):
            return False
        # interior breakpoints must carry strictly positive values
        if i > 0 and p(a) <= 0:
            return False
        if b != 1 and p(b) <= 0:
            return False
    return True


def pp_min_on_grid(pp: PiecewisePolynomial, n: int = 4096) -> float:
    """Float minimum over the interior grid points i/n, 0 < i < n."""
    best = float("inf")
    for i in range(1, n):
        best = min(best, pp.eval_float(i / n))
    return best


def factorial_fraction(n: int) -> Fraction:
    return Fraction(factorial(n))
