"""Registry of weight functions with analytic derivatives up to order six.

Only two growth classes are admitted, polynomials and bounded smooth
functions, because for both every derivative composed with a Gaussian random
variable has finite moments of all orders. That is the admissibility
certificate the limit statistics rely on; arbitrary user callables are
deliberately not accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .errors import OrderError, UnknownWeight

MAX_ORDER = 6

POLYNOMIAL = "polynomial"
BOUNDED_SMOOTH = "bounded_smooth"


@dataclass(frozen=True)
class WeightFunction:
    """A weight h with evaluators (h, h', ..., h^(max_order)).

    growth_bound = (A, d) certifies |h^(i)(x)| <= A (1 + |x|^d) for every
    registered order i; d = 0 for the bounded smooth class.
    """

    id: str
    evaluators: Tuple[Callable, ...]
    max_order: int
    growth_class: str
    growth_bound: Tuple[float, int]

    def __post_init__(self):
        if len(self.evaluators) != self.max_order + 1:
            raise ValueError(
                f"weight {self.id!r}: expected {self.max_order + 1} evaluators, got {len(self.evaluators)}"
            )
        if self.growth_class not in (POLYNOMIAL, BOUNDED_SMOOTH):
            raise ValueError(f"weight {self.id!r}: unknown growth class {self.growth_class!r}")

    def __call__(self, x):
        return self.evaluators[0](x)

    def derivative(self, order: int) -> Callable:
        """Evaluator of the order-th derivative; OrderError beyond max_order."""
        if not 0 <= order <= self.max_order:
            raise OrderError(
                f"weight {self.id!r} registers derivatives up to order {self.max_order}, requested {order}"
            )
        return self.evaluators[order]


def _const(c: float) -> Callable:
    return lambda x: np.full_like(np.asarray(x, dtype=np.float64), c)


def _poly(*coeffs: float) -> Callable:
    # coeffs in increasing degree order
    def f(x):
        x = np.asarray(x, dtype=np.float64)
        out = np.zeros_like(x)
        for c in reversed(coeffs):
            out = out * x + c
        return out

    return f


def _gauss_bump_deriv(poly_coeffs) -> Callable:
    # p(x) * exp(-x^2) with p given in increasing degree order
    p = _poly(*poly_coeffs)

    def f(x):
        x = np.asarray(x, dtype=np.float64)
        return p(x) * np.exp(-x * x)

    return f


# d^i/dx^i exp(-x^2) = (-1)^i H_i(x) exp(-x^2) with H_i the physicists'
# Hermite polynomials; signs folded into the coefficient tuples below.
_GAUSS_BUMP_POLYS = (
    (1.0,),
    (0.0, -2.0),
    (-2.0, 0.0, 4.0),
    (0.0, 12.0, 0.0, -8.0),
    (12.0, 0.0, -48.0, 0.0, 16.0),
    (0.0, -120.0, 0.0, 160.0, 0.0, -32.0),
    (-120.0, 0.0, 720.0, 0.0, -480.0, 0.0, 64.0),
)

_BUILTINS = {
    "one": WeightFunction(
        id="one",
        evaluators=(_const(1.0),) + tuple(_const(0.0) for _ in range(MAX_ORDER)),
        max_order=MAX_ORDER,
        growth_class=POLYNOMIAL,
        growth_bound=(1.0, 0),
    ),
    "x": WeightFunction(
        id="x",
        evaluators=(_poly(0.0, 1.0), _const(1.0)) + tuple(_const(0.0) for _ in range(MAX_ORDER - 1)),
        max_order=MAX_ORDER,
        growth_class=POLYNOMIAL,
        growth_bound=(1.0, 1),
    ),
    "x2": WeightFunction(
        id="x2",
        evaluators=(_poly(0.0, 0.0, 1.0), _poly(0.0, 2.0), _const(2.0))
        + tuple(_const(0.0) for _ in range(MAX_ORDER - 2)),
        max_order=MAX_ORDER,
        growth_class=POLYNOMIAL,
        growth_bound=(2.0, 2),
    ),
    "x3": WeightFunction(
        id="x3",
        evaluators=(
            _poly(0.0, 0.0, 0.0, 1.0),
            _poly(0.0, 0.0, 3.0),
            _poly(0.0, 6.0),
            _const(6.0),
        )
        + tuple(_const(0.0) for _ in range(MAX_ORDER - 3)),
        max_order=MAX_ORDER,
        growth_class=POLYNOMIAL,
        growth_bound=(6.0, 3),
    ),
    "sin": WeightFunction(
        id="sin",
        evaluators=(
            np.sin,
            np.cos,
            lambda x: -np.sin(np.asarray(x, dtype=np.float64)),
            lambda x: -np.cos(np.asarray(x, dtype=np.float64)),
            np.sin,
            np.cos,
            lambda x: -np.sin(np.asarray(x, dtype=np.float64)),
        ),
        max_order=MAX_ORDER,
        growth_class=BOUNDED_SMOOTH,
        growth_bound=(1.0, 0),
    ),
    "cos": WeightFunction(
        id="cos",
        evaluators=(
            np.cos,
            lambda x: -np.sin(np.asarray(x, dtype=np.float64)),
            lambda x: -np.cos(np.asarray(x, dtype=np.float64)),
            np.sin,
            np.cos,
            lambda x: -np.sin(np.asarray(x, dtype=np.float64)),
            lambda x: -np.cos(np.asarray(x, dtype=np.float64)),
        ),
        max_order=MAX_ORDER,
        growth_class=BOUNDED_SMOOTH,
        growth_bound=(1.0, 0),
    ),
    "exp_neg_x2": WeightFunction(
        id="exp_neg_x2",
        evaluators=tuple(_gauss_bump_deriv(p) for p in _GAUSS_BUMP_POLYS),
        max_order=MAX_ORDER,
        growth_class=BOUNDED_SMOOTH,
        growth_bound=(130.0, 0),
    ),
}

BUILTIN_IDS = tuple(sorted(_BUILTINS))


def builtin(weight_id: str) -> WeightFunction:
    """Look up a registered weight; raises UnknownWeight for anything else."""
    try:
        return _BUILTINS[weight_id]
    except KeyError:
        raise UnknownWeight(f"no builtin weight {weight_id!r}; known ids: {', '.join(BUILTIN_IDS)}") from None


def linear_combination(a: float, w1: WeightFunction, b: float, w2: WeightFunction) -> WeightFunction:
    """Weight a*w1 + b*w2 with derivatives combined order by order."""
    order = min(w1.max_order, w2.max_order)

    def comb(i):
        f, g = w1.evaluators[i], w2.evaluators[i]
        return lambda x: a * f(x) + b * g(x)

    klass = POLYNOMIAL if POLYNOMIAL in (w1.growth_class, w2.growth_class) else BOUNDED_SMOOTH
    bound = (
        abs(a) * w1.growth_bound[0] + abs(b) * w2.growth_bound[0],
        max(w1.growth_bound[1], w2.growth_bound[1]),
    )
    return WeightFunction(
        id=f"{a}*{w1.id}+{b}*{w2.id}",
        evaluators=tuple(comb(i) for i in range(order + 1)),
        max_order=order,
        growth_class=klass,
        growth_bound=bound,
    )


def check_derivatives(w: WeightFunction, order: int, grid, step: float) -> float:
    """Max |central difference of h^(order-1) - h^(order)| over the grid.

    Self-test hook: the truncation error of the symmetric difference is
    O(step^2), so registered derivatives must track it to that accuracy.
    """
    if not 1 <= order <= w.max_order:
        raise OrderError(
            f"weight {w.id!r}: derivative order must be in [1, {w.max_order}], got {order}"
        )
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    x = np.asarray(grid, dtype=np.float64)
    lower = w.evaluators[order - 1]
    numeric = (lower(x + step) - lower(x - step)) / (2.0 * step)
    return float(np.max(np.abs(numeric - w.evaluators[order](x))))
