"""Construction constants: tolerance angles, cell size, scale denominators.

The two tolerance angles come from the same closed form

    gamma(n) = arccos(1 - (3/10) * 2n / (n**2 + 1)),

whose cosine is rational for integer n; that rationality is what lets the
angle-window hardware downstream have exact rational coordinates.  The
certified values use n_eps = 5*10**3 and n_delta = 4*10**14; toy mode runs
the same formulas on small n so that desk-scale sweeps are feasible, and
every toy artifact carries an ``uncertified`` flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

N_EPS_CERTIFIED = 5 * 10 ** 3
N_DELTA_CERTIFIED = 4 * 10 ** 14


class InvalidToyParams(Exception):
    pass


def gamma_cos(n: int) -> Fraction:
    """Exact cosine of gamma(n) = arccos(1 - 3n/(5(n^2+1)))."""
    return 1 - Fraction(3 * n, 5 * (n * n + 1))


def gamma(n: int) -> float:
    # arccos(1 - x) = 2*arcsin(sqrt(x/2)); the right-hand side stays
    # well-conditioned for the tiny x of certified n_delta, where the
    # naive arccos would lose most of its digits.
    x = Fraction(3 * n, 5 * (n * n + 1))
    return 2.0 * math.asin(math.sqrt(float(x) / 2.0))


@dataclass
class ParameterSet:
    m: int
    d: int
    s: int
    M: int
    n_eps: int
    n_delta: int
    eps: float
    delta: float
    cos_eps: Fraction
    cos_delta: Fraction
    r: int
    Q: int
    R: int
    D: int
    certified: bool

    def check(self) -> None:
        if self.Q % 40 != 0:
            raise InvalidToyParams(f"Q={self.Q} not divisible by 40")
        if 3 * self.Q % 10 != 0 or self.R != 3 * self.Q // 10:
            raise InvalidToyParams("R must equal 3Q/10 and be an integer")
        if self.certified:
            assert self.eps <= math.pi / 16 + 1e-15
            assert self.delta * 2 ** 18 <= self.eps


def _ceil_div_by_float(numer: int, denom: float) -> int:
    """ceil(numer/denom) using the exact rational value of the float denom.

    The denominators here are tolerance angles known to ~1e-16 relative;
    the quotients are nowhere near integers, so the float rounding cannot
    flip the ceiling.
    """
    fr = Fraction(numer) / Fraction(*denom.as_integer_ratio())
    return -((-fr.numerator) // fr.denominator)


def scale_denominator(n_eps: int, n_delta: int) -> int:
    """Common denominator D of all lowered coordinates and edge lengths."""
    return 2 ** 12 * 13 * 20 * (n_eps ** 2 + 1) * (n_delta ** 2 + 1)


def compute_parameters(
    m: int,
    d: int,
    s: int,
    M: int,
    mode: str = "certified",
    n_eps: int | None = None,
    n_delta: int | None = None,
    Q: int | None = None,
    r: int | None = None,
) -> ParameterSet:
    if min(m, d, s, M) < 1:
        raise ValueError("m, d, s, M must all be >= 1")
    if mode == "certified":
        n_e, n_d = N_EPS_CERTIFIED, N_DELTA_CERTIFIED
    elif mode == "toy":
        if n_eps is None or n_delta is None:
            raise InvalidToyParams("toy mode needs explicit n_eps and n_delta")
        if n_eps < 13 or n_delta < n_eps:
            raise InvalidToyParams("toy n_eps must be >= 13 and n_delta >= n_eps")
        n_e, n_d = n_eps, n_delta
    else:
        raise ValueError(f"unknown mode {mode!r}")

    eps = gamma(n_e)
    delta = gamma(n_d)
    if r is None:
        r = _ceil_div_by_float(d, delta)
    if Q is None:
        numer = 6 ** d * r ** d * M * math.comb(2 * m + d, d)
        Q = 40 * _ceil_div_by_float(numer, 6.0 * delta)
    if Q % 40 != 0:
        raise InvalidToyParams(f"Q={Q} not divisible by 40")
    ps = ParameterSet(
        m=m, d=d, s=s, M=M,
        n_eps=n_e, n_delta=n_d,
        eps=eps, delta=delta,
        cos_eps=gamma_cos(n_e), cos_delta=gamma_cos(n_d),
        r=r, Q=Q, R=3 * Q // 10,
        D=scale_denominator(n_e, n_d),
        certified=(mode == "certified"),
    )
    ps.check()
    return ps


def toy_parameters(
    m: int = 1, d: int = 1, s: int = 1, M: int = 1,
    n_eps: int = 50, n_delta: int = 400, Q: int = 40, r: int = 1,
) -> ParameterSet:
    """The desk-scale parameter set used throughout the toy pipeline."""
    return compute_parameters(m, d, s, M, mode="toy", n_eps=n_eps, n_delta=n_delta, Q=Q, r=r)
