"""
Exact truncated power series with rational coefficients.

A series of order N stores the coefficients of z^0 .. z^N. It also carries a
horizon: the largest index whose coefficient is trustworthy. Arithmetic
results keep the smaller order and the smaller horizon of their operands.
"""

from fractions import Fraction
from typing import Iterable, List, Optional

from src.errors import InvariantError, PreconditionError, StructuralError


class TruncatedSeries:
    """A power series known up to z^order."""

    def __init__(self, coefficients: Iterable, horizon: Optional[int] = None):
        """
        Initialize the series.

        Args:
            coefficients: Coefficients of z^0, z^1, ... (at least one)
            horizon: Largest reliable index; defaults to the order
        """
        self.coefficients: List[Fraction] = [Fraction(c) for c in coefficients]
        if not self.coefficients:
            raise StructuralError("a truncated series needs at least one coefficient")
        self.horizon = self.order if horizon is None else max(-1, min(horizon, self.order))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1] + [0] * order)

    @classmethod
    def polynomial(cls, coefficients: Iterable, order: int) -> "TruncatedSeries":
        """A polynomial cut or zero-padded to the given order."""
        coeffs = list(coefficients)[:order + 1]
        return cls(coeffs + [0] * (order + 1 - len(coeffs)))

    @classmethod
    def geometric(cls, order: int, ratio=1) -> "TruncatedSeries":
        """1/(1 - ratio*z)."""
        ratio = Fraction(ratio)
        return cls([ratio ** k for k in range(order + 1)])

    def __getitem__(self, k: int) -> Fraction:
        if k < 0 or k > self.order:
            raise StructuralError(f"coefficient {k} lies beyond the truncation order {self.order}")
        return self.coefficients[k]

    def __len__(self) -> int:
        return len(self.coefficients)

    def _pair(self, other: "TruncatedSeries"):
        n = min(self.order, other.order)
        return n, min(self.horizon, other.horizon)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n, h = self._pair(other)
        return TruncatedSeries([self.coefficients[k] + other.coefficients[k] for k in range(n + 1)], h)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n, h = self._pair(other)
        return TruncatedSeries([self.coefficients[k] - other.coefficients[k] for k in range(n + 1)], h)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coefficients], self.horizon)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries([c * a for a in self.coefficients], self.horizon)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n, h = self._pair(other)
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += a[i] * b[j]
        return TruncatedSeries(out, h)

    def inverse(self) -> "TruncatedSeries":
        """1/s, defined when the constant term is nonzero."""
        a = self.coefficients
        if not a[0]:
            raise PreconditionError("cannot invert a series with zero constant term")
        out = [Fraction(1) / a[0]]
        for k in range(1, self.order + 1):
            acc = sum((a[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
            out.append(-acc / a[0])
        return TruncatedSeries(out, self.horizon)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.inverse()

    def power(self, e: int) -> "TruncatedSeries":
        base = self if e >= 0 else self.inverse()
        result = TruncatedSeries.one(self.order)
        result.horizon = self.horizon
        for _ in range(abs(e)):
            result = result * base
        return result

    def derivative(self) -> "TruncatedSeries":
        a = self.coefficients
        coeffs = [k * a[k] for k in range(1, len(a))] or [0]
        return TruncatedSeries(coeffs, self.horizon - 1)

    def negate_variable(self) -> "TruncatedSeries":
        """s(-z)."""
        return TruncatedSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients)], self.horizon)

    def shift(self, k: int) -> "TruncatedSeries":
        """z^k * s, keeping the order."""
        if k < 0:
            raise StructuralError("shift must be non-negative")
        coeffs = [Fraction(0)] * k + self.coefficients
        return TruncatedSeries(coeffs[:self.order + 1], min(self.order, self.horizon + k))

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise StructuralError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coefficients[:order + 1], self.horizon)

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.coefficients]

    def to_ints(self) -> List[int]:
        if any(c.denominator != 1 for c in self.coefficients):
            raise StructuralError("series has non-integer coefficients")
        return [c.numerator for c in self.coefficients]

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.coefficients == other.coefficients

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coefficients[:8])
        more = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries([{shown}{more}], order={self.order}, horizon={self.horizon})"


def log_derivative(s: TruncatedSeries) -> TruncatedSeries:
    """
    s'/s to order N - 1, checked against the identity (s'/s) * s = s'.

    Args:
        s: Series with nonzero constant term

    Returns:
        The logarithmic derivative
    """
    if not s.coefficients[0]:
        raise PreconditionError("logarithmic derivative needs a nonzero constant term")
    d = s.derivative()
    result = d * s.truncate(d.order).inverse()
    check = result * s.truncate(d.order)
    if check.coefficients != d.coefficients:
        raise InvariantError("logarithmic derivative failed its defining identity")
    return result
