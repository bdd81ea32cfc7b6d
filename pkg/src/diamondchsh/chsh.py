"""Smeared bilinears, the Weyl-operator vacuum correlator, and violation
classification.

For spacelike-separated smearings the four-term correlator reduces to a
closed form in the Hadamard bilinears alone,

    C = E(f,g) + E(f',g) + E(f,g') - E(f',g'),
    E(u,w) = exp(-[H(u,u) + 2 H(u,w) + H(w,w)] / 2),

so no operator algebra is ever constructed.  The Pauli-Jordan bilinear is
kept as a causality diagnostic (it must vanish between the wedges).

|C| <= 2 is the classical bound; 2 < |C| <= 2*sqrt(2) is a quantum
violation; anything beyond the Tsirelson bound flags a numerical or
modeling fault.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import quad
from .kernels import DEFAULT_GUARD, KernelGuard, hadamard_kernel, pauli_jordan_kernel
from .quad import IntegralEstimate, QuadPlan
from .testfns import DiamondSide, DiamondTestFunction

__all__ = [
    "TSIRELSON_BOUND",
    "Classification",
    "ChshScenario",
    "BilinearSet",
    "ChshResult",
    "classify",
    "hadamard_bilinear",
    "pauli_jordan_bilinear",
    "correlator_terms",
    "correlator_from_bilinears",
    "chsh_correlator",
    "scenario_from_params",
]

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
_TIE_EPSILON = 1e-9  # boundary |C| = 2*sqrt(2) counts as a violation


class Classification(Enum):
    NO_VIOLATION = "NoViolation"
    VIOLATION = "Violation"
    ABOVE_TSIRELSON = "AboveTsirelson"


def classify(correlator: float) -> Classification:
    """Classify a correlator value against the classical and Tsirelson bounds."""
    if not math.isfinite(correlator):
        raise ValueError("correlator must be finite")
    c = abs(correlator)
    if c <= 2.0:
        return Classification.NO_VIOLATION
    if c <= TSIRELSON_BOUND + _TIE_EPSILON:
        return Classification.VIOLATION
    return Classification.ABOVE_TSIRELSON


@dataclass(frozen=True)
class ChshScenario:
    """The four smearing functions and the field mass.

    f, f' live in right diamonds, g, g' in left diamonds; f/g share one
    radius and f'/g' the other (set paired_radii=False to lift that
    constraint for exploratory runs).
    """

    f: DiamondTestFunction
    f_prime: DiamondTestFunction
    g: DiamondTestFunction
    g_prime: DiamondTestFunction
    mass: float
    paired_radii: bool = True

    def __post_init__(self):
        if self.f.side is not DiamondSide.RIGHT or self.f_prime.side is not DiamondSide.RIGHT:
            raise ValueError("f and f' must be right-diamond functions")
        if self.g.side is not DiamondSide.LEFT or self.g_prime.side is not DiamondSide.LEFT:
            raise ValueError("g and g' must be left-diamond functions")
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise ValueError("mass must be a finite positive real")
        if self.paired_radii:
            if self.f.radius != self.g.radius:
                raise ValueError("f and g must share one radius")
            if self.f_prime.radius != self.g_prime.radius:
                raise ValueError("f' and g' must share one radius")


def scenario_from_params(
    a: float,
    eta: float,
    b: float,
    sigma: float,
    a_prime: float,
    eta_prime: float,
    b_prime: float,
    sigma_prime: float,
    m: float,
    r: float,
    r_prime: float,
) -> ChshScenario:
    """Build a scenario from the 11 published-table parameters.

    The left-wedge Weyl operators enter the correlator through their
    adjoints, so g and g' carry amplitudes -sigma and -sigma'.  This is
    the convention that reproduces the published correlator values; with
    +sigma the same parameters land well below the classical bound.
    """
    return ChshScenario(
        f=DiamondTestFunction(DiamondSide.RIGHT, r, a, eta),
        f_prime=DiamondTestFunction(DiamondSide.RIGHT, r_prime, a_prime, eta_prime),
        g=DiamondTestFunction(DiamondSide.LEFT, r, b, -sigma),
        g_prime=DiamondTestFunction(DiamondSide.LEFT, r_prime, b_prime, -sigma_prime),
        mass=m,
    )


@dataclass(frozen=True)
class BilinearSet:
    """The eight Hadamard bilinears entering the correlator."""

    ff: IntegralEstimate
    fpfp: IntegralEstimate
    gg: IntegralEstimate
    gpgp: IntegralEstimate
    fg: IntegralEstimate
    fgp: IntegralEstimate
    fpg: IntegralEstimate
    fpgp: IntegralEstimate

    def __post_init__(self):
        for name in ("ff", "fpfp", "gg", "gpgp"):
            if getattr(self, name).value <= 0.0:
                raise ValueError(f"self-bilinear {name} must be positive "
                                 "(it is the norm of a nonzero vector)")


@dataclass(frozen=True)
class ChshResult:
    bilinears: BilinearSet | None
    correlator: float
    correlator_error: float
    classification: Classification


def hadamard_bilinear(
    u: DiamondTestFunction,
    v: DiamondTestFunction,
    m: float,
    plan: QuadPlan,
    guard: KernelGuard = DEFAULT_GUARD,
) -> IntegralEstimate:
    """H(u, v) at mass m via the QMC engine."""
    return quad.integrate_bilinear(
        u, v, lambda p: hadamard_kernel(p, m, guard), plan
    )


def pauli_jordan_bilinear(
    u: DiamondTestFunction,
    v: DiamondTestFunction,
    m: float,
    plan: QuadPlan,
) -> IntegralEstimate:
    """Causality diagnostic: vanishes whenever u and v are spacelike."""
    return quad.integrate_bilinear(
        u, v, lambda p: pauli_jordan_kernel(p, m), plan
    )


def _exponent_triples(bl: BilinearSet):
    return (
        (bl.ff, bl.fg, bl.gg),
        (bl.fpfp, bl.fpg, bl.gg),
        (bl.ff, bl.fgp, bl.gpgp),
        (bl.fpfp, bl.fpgp, bl.gpgp),
    )


def correlator_terms(bl: BilinearSet) -> tuple[float, float, float, float]:
    """The four exponentials exp(-||u+w||^2 / 2); the fourth is the one
    subtracted in the correlator."""
    return tuple(
        math.exp(-0.5 * (s1.value + 2.0 * cross.value + s2.value))
        for s1, cross, s2 in _exponent_triples(bl)
    )


def correlator_from_bilinears(bl: BilinearSet) -> tuple[float, float]:
    """Closed-form correlator and first-order propagated error from the
    eight bilinears (no integration)."""
    terms = correlator_terms(bl)
    variance = 0.0
    for term, (s1, cross, s2) in zip(terms, _exponent_triples(bl)):
        # delta method through the exponential; the three bilinears in one
        # exponent are treated as independent
        variance += (0.5 * term) ** 2 * (
            s1.std_error ** 2 + 4.0 * cross.std_error ** 2 + s2.std_error ** 2
        )
    correlator = terms[0] + terms[1] + terms[2] - terms[3]
    return correlator, math.sqrt(variance)


def chsh_correlator(
    scenario: ChshScenario,
    plan: QuadPlan,
    guard: KernelGuard = DEFAULT_GUARD,
) -> ChshResult:
    """Evaluate the four-term Weyl correlator of a scenario.

    Each of the eight bilinears is computed exactly once and reused
    across the four exponentials.
    """
    f, fp = scenario.f, scenario.f_prime
    g, gp = scenario.g, scenario.g_prime
    m = scenario.mass

    def H(u, v):
        return hadamard_bilinear(u, v, m, plan, guard)

    bilinears = BilinearSet(
        ff=H(f, f), fpfp=H(fp, fp), gg=H(g, g), gpgp=H(gp, gp),
        fg=H(f, g), fgp=H(f, gp), fpg=H(fp, g), fpgp=H(fp, gp),
    )
    correlator, error = correlator_from_bilinears(bilinears)
    return ChshResult(
        bilinears=bilinears,
        correlator=correlator,
        correlator_error=error,
        classification=classify(correlator),
    )
