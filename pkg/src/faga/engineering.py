"""Five mixed-variable constrained design problems."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Bounds, ConfigurationError, ProblemSpec


@dataclass(frozen=True)
class SpringConstants:
    P_max: float = 1000.0      # lb, maximum work load
    S: float = 189e3           # psi, maximum shear stress
    E: float = 30e6            # psi, elastic modulus
    G: float = 11.5e6          # psi, shear modulus
    L_free: float = 14.0       # in, maximum coil free length
    d_min: float = 0.2         # in, minimum wire diameter
    D_max: float = 3.0         # in, maximum outside diameter
    P: float = 300.0           # lb, preload compression force
    delta_pm: float = 6.0      # in, max deflection under preload
    delta_w: float = 1.25      # in, preload-to-max-load deflection


SPRING = SpringConstants()

# allowed wire diameters (in), ascending
WIRE_DIAMETERS = (
    0.0090, 0.0095, 0.0104, 0.0118, 0.0128, 0.0132, 0.0150,
    0.0162, 0.0173, 0.0180, 0.0200, 0.0230, 0.0280, 0.0320,
    0.0350, 0.0410, 0.0470, 0.0540, 0.0720, 0.0800, 0.0920,
    0.1050, 0.1200, 0.1350, 0.1620, 0.1770, 0.1920, 0.2070,
    0.2250, 0.2440, 0.2830, 0.3070, 0.3310, 0.3620, 0.3940,
)


def spring_evaluate(d: float, D: float, N: float):
    """Coil volume and the eight constraint values (<= 0 convention).

    Derived quantities: Wahl factor K, spring rate k, preload deflection,
    and free length P_max/k + 1.05(N+2)d.
    """
    c = SPRING
    C = D / d
    K = (4.0 * C - 1.0) / (4.0 * C - 4.0) + 0.615 / C
    k = c.G * d ** 4 / (8.0 * N * D ** 3)
    delta_p = c.P / k
    L_f = c.P_max / k + 1.05 * (N + 2.0) * d

    volume = math.pi ** 2 * D * d ** 2 * (N + 2.0) / 4.0
    g = (
        8.0 * K * c.P_max * D / (math.pi * d ** 3) - c.S,
        L_f - c.L_free,
        c.d_min - d,
        (d + D) - c.D_max,
        3.0 - C,
        delta_p - c.delta_pm,
        delta_p + (c.P_max - c.P) / k + 1.05 * (N + 2.0) * d - L_f,
        c.delta_w - (c.P_max - c.P) / k,
    )
    return volume, g


def vessel_evaluate(x1: float, x2: float, x3: float, x4: float):
    """Pressure vessel cost and four constraints (<= 0 convention)."""
    cost = (0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 ** 2
            + 3.1661 * x1 ** 2 * x4 + 19.84 * x1 ** 2 * x3)
    g = (
        -x1 + 0.0193 * x3,
        -x2 + 0.00954 * x3,
        -math.pi * x3 ** 2 * x4 - (4.0 / 3.0) * math.pi * x3 ** 3 + 750.0 * 1728.0,
        x4 - 240.0,
    )
    return cost, g


def cantilever_evaluate(x1, x2, x3, x4, x5):
    """Stepped cantilever weight and its single stiffness constraint."""
    weight = 0.0624 * (x1 + x2 + x3 + x4 + x5)
    g1 = (61.0 / x1 ** 3 + 37.0 / x2 ** 3 + 19.0 / x3 ** 3
          + 7.0 / x4 ** 3 + 1.0 / x5 ** 3 - 1.0)
    return weight, g1


def geartrain_evaluate(za: int, zb: int, zc: int, zd: int) -> float:
    """Squared error of the compound gear ratio against 1/6.931."""
    for z in (za, zb, zc, zd):
        if not 12 <= z <= 60:
            raise ConfigurationError("tooth counts must lie in [12, 60]")
    return (1.0 / 6.931 - (za * zb) / (zc * zd)) ** 2


def ibeam_evaluate(h: float, b: float, tw: float, tf: float):
    """I-beam vertical deflection and the area/stress constraints (<= 0)."""
    inertia = (tw * (h - 2.0 * tf) ** 3 / 12.0 + b * tf ** 3 / 6.0
               + 2.0 * b * tf * ((h - tf) / 2.0) ** 2)
    deflection = 5000.0 / inertia
    area = 2.0 * b * tw + tw * (h - 2.0 * tf)
    stress = (18.0 * h * 1e4 / (tw * (h - 2.0 * tf) ** 3
                                + 2.0 * b * tw * (4.0 * tf ** 2 + 3.0 * h * (h - 2.0 * tf)))
              + 15.0 * b * 1e3 / ((h - 2.0 * tf) * tw ** 3 + 2.0 * b ** 3 * tw))
    return deflection, (area - 300.0, stress - 56.0)


def gear_train_brute_force():
    """Exhaustive sweep over all tooth combinations; the module's ground truth.

    Returns (minimum squared error, (za, zb, zc, zd)) with za <= zb, zc <= zd.
    """
    teeth = np.arange(12, 61)
    prod = np.outer(teeth, teeth).ravel()
    target = 1.0 / 6.931
    err = (target - prod[:, None] / prod[None, :]) ** 2
    flat = int(np.argmin(err))
    i, j = divmod(flat, prod.size)
    ia, ib = divmod(i, teeth.size)
    ic, idx = divmod(j, teeth.size)
    combo = (int(teeth[ia]), int(teeth[ib]), int(teeth[ic]), int(teeth[idx]))
    za, zb, zc, zd = combo
    return float(err[i, j]), (min(za, zb), max(za, zb), min(zc, zd), max(zc, zd))


def _cached(evaluate):
    """Objective and constraints share one evaluation per position."""
    last = {}

    def call(x):
        key = tuple(x)
        if last.get("key") != key:
            last["key"] = key
            last["out"] = evaluate(*x)
        return last["out"]

    return call


def make_spring() -> ProblemSpec:
    ev = _cached(spring_evaluate)
    return ProblemSpec(
        name="spring",
        objective=lambda x: ev(x)[0],
        inequality=[(lambda x, i=i: ev(x)[1][i]) for i in range(8)],
        bounds=Bounds([WIRE_DIAMETERS[0], 0.6, 1.0], [WIRE_DIAMETERS[-1], 3.0, 70.0]),
        kinds=[list(WIRE_DIAMETERS), "continuous", "integer"],
        sense="min",
        known_optimum=2.6586,
    )


# plate thicknesses come in 0.0625 in steps
VESSEL_THICKNESSES = [round(0.0625 * i, 4) for i in range(1, 100)]


def make_vessel() -> ProblemSpec:
    ev = _cached(vessel_evaluate)
    return ProblemSpec(
        name="vessel",
        objective=lambda x: ev(x)[0],
        inequality=[(lambda x, i=i: ev(x)[1][i]) for i in range(4)],
        bounds=Bounds([0.0625, 0.0625, 10.0, 10.0], [6.1875, 6.1875, 200.0, 240.0]),
        kinds=[VESSEL_THICKNESSES, VESSEL_THICKNESSES, "continuous", "continuous"],
        sense="min",
        known_optimum=6059.72,
    )


def make_cantilever() -> ProblemSpec:
    ev = _cached(cantilever_evaluate)
    return ProblemSpec(
        name="cantilever",
        objective=lambda x: ev(x)[0],
        inequality=[lambda x: ev(x)[1]],
        bounds=Bounds([0.01] * 5, [100.0] * 5),
        sense="min",
        known_optimum=1.3399,
    )


def make_geartrain() -> ProblemSpec:
    return ProblemSpec(
        name="geartrain",
        objective=lambda x: geartrain_evaluate(*(int(round(v)) for v in x)),
        bounds=Bounds([12.0] * 4, [60.0] * 4),
        kinds=["integer"] * 4,
        sense="min",
        known_optimum=2.7e-12,
    )


def make_ibeam() -> ProblemSpec:
    ev = _cached(ibeam_evaluate)
    return ProblemSpec(
        name="ibeam",
        objective=lambda x: ev(x)[0],
        inequality=[(lambda x, i=i: ev(x)[1][i]) for i in range(2)],
        bounds=Bounds([10.0, 10.0, 0.9, 0.9], [80.0, 50.0, 5.0, 5.0]),
        sense="min",
        known_optimum=6.625e-3,
    )


ENGINEERING_PROBLEMS = {
    "spring": make_spring,
    "vessel": make_vessel,
    "cantilever": make_cantilever,
    "geartrain": make_geartrain,
    "ibeam": make_ibeam,
}
