"""Distance, length and rate bounds for (n, k, r, t) locally repairable codes.

Everything is exact: integer bounds are ints, rate bounds are
:class:`fractions.Fraction`.  None of the bounds depend on the field size.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import prod

from .constructions import CodeParams


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def bound_singleton_locality(n: int, k: int, r: int) -> int:
    """d <= n - k - ceil(k/r) + 2 (single repair set per symbol)."""
    return n - k - _ceil_div(k, r) + 2


def bound_one_parity_repair(n: int, k: int, r: int, t: int) -> int:
    """d <= n - k - ceil(kt/r) + t + 1 for repair sets with exactly one parity."""
    return n - k - _ceil_div(k * t, r) + t + 1


def bound_availability(n: int, k: int, r: int, t: int) -> int:
    """d <= n - k - ceil((t(k-1)+1) / (t(r-1)+1)) + 2."""
    return n - k - _ceil_div(t * (k - 1) + 1, t * (r - 1) + 1) + 2


def bound_rate_product(r: int, t: int) -> Fraction:
    """k/n <= 1 / prod_{j=1..t} (1 + 1/(jr))."""
    return 1 / prod((1 + Fraction(1, j * r) for j in range(1, t + 1)), start=Fraction(1))


def bound_distance_floorsum(n: int, k: int, r: int, t: int) -> int:
    """d <= n - sum_{i=0..t} floor((k-1) / r^i)."""
    return n - sum((k - 1) // r**i for i in range(t + 1))


def bound_rate_two_sets(r: int) -> Fraction:
    """k/n <= r/(r+2), availability two."""
    return Fraction(r, r + 2)


def bound_length(k: int, r: int, t: int) -> int:
    """n >= k + ceil(kt/r)."""
    return k + _ceil_div(k * t, r)


def bound_rate_length(k: int, r: int, t: int) -> Fraction:
    """Rate at the minimum length; r/(r+t) when r divides kt."""
    if (k * t) % r == 0:
        return Fraction(r, r + t)
    return Fraction(k, bound_length(k, r, t))


@dataclass(frozen=True)
class BoundsReport:
    params: CodeParams
    singleton_locality: int
    one_parity_repair: int
    availability: int
    distance_floorsum: int
    rate_product: Fraction
    rate_two_sets: Fraction | None
    rate_length: Fraction
    length: int
    rate: Fraction
    distance_optimal: bool
    rate_optimal: bool
    meets_lower: bool

    def to_dict(self) -> dict:
        out = asdict(self)
        out["params"] = asdict(self.params)
        for key, val in out.items():
            if isinstance(val, Fraction):
                out[key] = str(val)
        return out


def classify(params: CodeParams) -> BoundsReport:
    n, k, d, r, t = params.n, params.k, params.d, params.r, params.t
    one_parity = bound_one_parity_repair(n, k, r, t)
    length = bound_length(k, r, t)
    return BoundsReport(
        params=params,
        singleton_locality=bound_singleton_locality(n, k, r),
        one_parity_repair=one_parity,
        availability=bound_availability(n, k, r, t),
        distance_floorsum=bound_distance_floorsum(n, k, r, t),
        rate_product=bound_rate_product(r, t),
        rate_two_sets=bound_rate_two_sets(r) if t == 2 else None,
        rate_length=bound_rate_length(k, r, t),
        length=length,
        rate=Fraction(k, n),
        distance_optimal=d == one_parity,
        rate_optimal=n == length,
        meets_lower=d >= t + 1,
    )


__all__ = [
    "BoundsReport",
    "CodeParams",
    "bound_distance_floorsum",
    "bound_length",
    "bound_one_parity_repair",
    "bound_rate_length",
    "bound_rate_two_sets",
    "bound_rate_product",
    "bound_singleton_locality",
    "bound_availability",
    "classify",
]
