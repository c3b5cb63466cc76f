"""Logarithmic Tevelev computations for the blow-up of P^2 at [0:1:0] and [0:0:1].

The quasimap space is a single projective bundle ``P(L_3 + L_4 + L_5)`` over the
product of lines parametrizing the boundary points, with

    c_1(L_3) = -(H_1 + H_2 + H_3),  c_1(L_4) = -(H_1 + H_4),  c_1(L_5) = -(H_2 + H_5)

and incidence class ``[V(p, x)] = (zeta - H_1)(zeta - H_2)``.

Unlike X_{r,s,a}, the inequality gates do not decide every case.  For the one
configuration where the excess locus is understood, :func:`excess_corrected_logtev`
subtracts the contribution of the positive-dimensional components.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod
from typing import Any, Iterable, Sequence

from . import nilring
from .errors import ConfigurationError, CrossCheckError
from .gamma import DerivedBlp2, GammaBlp2, validate_blp2
from .nilring import NilPoly
from .tevelev import binom
from .tower import (
    ZetaPoly,
    base_classes,
    collapse_zeta,
    pushforward_zeta,
    segre_factors,
    segre_from_roots,
)

__all__ = [
    "Blp2Status",
    "ExcessRecord",
    "Blp2Report",
    "closed_formula_blp2",
    "symbolic_integral_blp2",
    "integral_blp2",
    "closed_formula_conflict",
    "blp2_inequalities",
    "status_blp2",
    "excess_contribution",
    "matches_excess_pattern",
    "excess_corrected_logtev",
]


class Blp2Status(str, enum.Enum):
    CERTIFIED_EQUAL = "CERTIFIED_EQUAL"
    CERTIFIED_ZERO = "CERTIFIED_ZERO"
    UNCERTIFIED = "UNCERTIFIED"
    EXCESS_CORRECTED = "EXCESS_CORRECTED"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True)
class ExcessRecord:
    component_count: int
    per_component: int
    corrected: int


@dataclass(frozen=True)
class Blp2Report:
    integral: int
    closed_value: int
    status: Blp2Status
    logtev: int | None = None
    excess: ExcessRecord | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict, compare=False)


def closed_formula_blp2(g: GammaBlp2) -> int:
    d = validate_blp2(g)
    n = d.n
    m1, m2, _, m4, m5 = d.m_parts
    if m1 + m5 > n - 1 or m2 + m4 > n - 1:
        return 0
    mult = prod(factorial(len(p)) for p in g.mu) * prod(x for p in g.mu for x in p)
    return mult * binom(n - 1 - m5, m1) * binom(n - 1 - m4, m2)


def _setup(g: GammaBlp2) -> tuple[DerivedBlp2, int, list[list[int]], list[NilPoly]]:
    d = validate_blp2(g)
    ngens, layout, H = base_classes(g.mu)
    # H[0..4] hold H_1..H_5
    return d, ngens, layout, H


def _chern_roots(H: Sequence[NilPoly]) -> list[NilPoly]:
    h1, h2, h3, h4, h5 = H
    return [-(h1 + h2 + h3), -(h1 + h4), -(h2 + h5)]


@lru_cache(maxsize=None)
def _collapsed_incidence(mu1, mu2, n: int) -> NilPoly:
    # collapse_zeta of the integrand: it is homogeneous of degree M + 2, so the
    # zeta^0 and zeta^1 coefficients have base degree above M and vanish, and
    # the collapsed class is the integrand at zeta = 1
    ngens = 2 * n - 2
    h1, h2 = _block_classes((mu1, mu2), ngens)
    return nilring.mul(nilring.linear_power(-h1, n), nilring.linear_power(-h2, n))


@lru_cache(maxsize=None)
def _incidence_side(mu1, mu2, mu3, n: int) -> NilPoly:
    # collapsed integrand times 1/c(L_3), contracted by the D_3 monomial
    ngens = 2 * n - 2
    H = _block_classes((mu1, mu2, mu3), ngens)
    block3 = range(len(mu1) + len(mu2), len(mu1) + len(mu2) + len(mu3))
    first = nilring.linear_power(-(H[0] + H[1] + H[2]), -1, divide=block3)
    return nilring.mul(_collapsed_incidence(mu1, mu2, n), first)


def _block_classes(blocks, ngens: int, start: int = 0) -> list[NilPoly]:
    out = []
    i = start
    for parts in blocks:
        out.append(NilPoly.linear({i + v: x for v, x in enumerate(parts)}, ngens))
        i += len(parts)
    return out


def symbolic_integral_blp2(g: GammaBlp2, fused: bool = True) -> int:
    """Integral of ``((zeta - H_1)(zeta - H_2))^n`` over the quasimap space.

    The default route collapses zeta (see :func:`~logtev.tower.collapse_zeta`)
    and pairs against the Segre series factor by factor.  Each Segre factor
    ``1/(1 - H_i - H_j)`` is the only one involving D_3, D_4 or D_5
    respectively, so it is contracted by that full monomial (see
    :func:`~logtev.nilring.contract`) and everything is paired over the D_1 and
    D_2 generators.  The part depending only on mu_1, mu_2, mu_3 is cached.  ``fused=False`` forms the full
    push-forward first; both routes give the same number.
    """
    d, ngens, layout, H = _setup(g)
    if not fused:
        z = ZetaPoly.zeta(ngens)
        integrand = ((z - H[0]) * (z - H[1])).pow(d.n)
        bundle = segre_from_roots(_chern_roots(H), ngens)
        return nilring.top_coefficient(pushforward_zeta(integrand, bundle))
    mu = g.mu
    left = _incidence_side(mu[0], mu[1], mu[2], d.n)
    second = nilring.linear_power(-(H[0] + H[3]), -1, divide=layout[3])
    third = nilring.linear_power(-(H[1] + H[4]), -1, divide=layout[4])
    right = nilring.mul(second, third)
    # both sides now live on the D_1 and D_2 generators; pair them there
    left = nilring.mul(left, NilPoly.monomial(layout[2] + layout[3] + layout[4], ngens))
    return nilring.pair_top(left, right)


def integral_blp2(g: GammaBlp2) -> int:
    """The intersection number of the n incidence conditions.

    Unlike :func:`~logtev.tevelev.integral_xrsa` this does not insist on
    agreement with :func:`closed_formula_blp2`: when ``m_4 >= n`` or
    ``m_5 >= n`` the integral is generally nonzero while the closed formula
    reads 0 (see :func:`closed_formula_conflict`).
    """
    return symbolic_integral_blp2(g)


def closed_formula_conflict(d: DerivedBlp2) -> bool:
    """True on the range where the closed formula's zero branch misses the integral.

    There the integral is ``(prod m_j!)(prod mu) C(n-1-m_5, m_1) C(n-1-m_4, m_2)``
    with binomials read as polynomials in their upper argument, which is
    nonzero once an upper argument is negative.
    """
    return d.m_parts[3] >= d.n or d.m_parts[4] >= d.n


def blp2_inequalities(d: DerivedBlp2) -> dict[str, list[dict[str, Any]]]:
    """Sufficient conditions for enumerativity and necessary conditions for nonvanishing."""
    n = d.n
    m1, m2, m3, m4, m5 = d.m_parts
    rows = {
        "enumerative": [("m_4", m4), ("m_5", m5), ("m_1+m_3", m1 + m3), ("m_2+m_3", m2 + m3)],
        "nonvanishing": [("m_3", m3), ("m_1+m_5", m1 + m5), ("m_2+m_4", m2 + m4)],
    }
    return {
        key: [
            {"label": f"{label} <= n-1", "lhs": lhs, "rhs": n - 1, "holds": lhs <= n - 1}
            for label, lhs in items
        ]
        for key, items in rows.items()
    }


def status_blp2(g: GammaBlp2) -> Blp2Report:
    d = validate_blp2(g)
    integral = integral_blp2(g)
    closed = closed_formula_blp2(g)
    ineqs = blp2_inequalities(d)
    diagnostics: dict[str, Any] = {
        "m": d.m,
        "n": d.n,
        "m_parts": list(d.m_parts),
        "inequalities": ineqs,
        "failed": [q["label"] for group in ineqs.values() for q in group if not q["holds"]],
        "integral_matches_closed_formula": integral == closed,
    }
    if integral != closed:
        diagnostics["cross_check"] = (
            "the integral differs from the closed formula, which is 0 here; "
            + ("this is the known range m_4 >= n or m_5 >= n"
               if closed_formula_conflict(d) else "unexpected, likely an engine fault")
        )
    if d.degenerate:
        diagnostics["note"] = "n < 3: intersection number only, no enumerative meaning"
        return Blp2Report(integral, closed, Blp2Status.DEGENERATE, diagnostics=diagnostics)
    if not all(q["holds"] for q in ineqs["nonvanishing"]):
        return Blp2Report(integral, closed, Blp2Status.CERTIFIED_ZERO, 0, diagnostics=diagnostics)
    if all(q["holds"] for q in ineqs["enumerative"]):
        return Blp2Report(
            integral, closed, Blp2Status.CERTIFIED_EQUAL, integral, diagnostics=diagnostics
        )
    diagnostics["warning"] = (
        "the intersection number may include excess contributions from quasimaps "
        "with vanishing sections; it is not certified to equal logTev"
    )
    return Blp2Report(integral, closed, Blp2Status.UNCERTIFIED, diagnostics=diagnostics)


def excess_contribution(
    numerator: ZetaPoly,
    normal_factors: Sequence[ZetaPoly],
    surviving: Iterable[int],
) -> int:
    """Excess contribution of a component isomorphic to a sub-product of base lines.

    On the component the tautological line bundle is trivial (zeta restricts to
    0) and every generator outside ``surviving`` restricts to 0.  Returns the
    integral over the surviving lines of ``numerator / prod(normal_factors)``,
    where ``normal_factors`` are the total Chern classes of the line-bundle
    summands of the normal bundle whose Chern classes are not already trivial.
    """
    ngens = numerator.ngens
    surviving = sorted(set(surviving))
    kill = [i for i in range(ngens) if i not in surviving]
    top = numerator.restrict(kill).at_zeta_zero()
    denominator = NilPoly.one(ngens)
    for factor in normal_factors:
        denominator = nilring.mul(denominator, factor.restrict(kill).at_zeta_zero())
    quotient = nilring.mul(top, nilring.invert_unit(denominator, len(surviving)))
    return nilring.coefficient(quotient, surviving)


def matches_excess_pattern(g: GammaBlp2) -> bool:
    """The configuration whose excess locus is a union of copies of P^1 x P^1.

    mu_1 = mu_2 = (1), mu_3 all ones with m_3 = n - 1, d = 2 + m_3 (so the
    twisted bundle of g_3 has degree 0), and m_4 = m_5 = 1.  The pattern is
    invariant under the fan symmetry swapping (1, 4) with (2, 5).
    """
    d = validate_blp2(g)
    m1, m2, m3, m4, m5 = d.m_parts
    return (
        g.part(1) == (1,)
        and g.part(2) == (1,)
        and all(x == 1 for x in g.part(3))
        and m3 == d.n - 1
        and g.d == 2 + m3
        and m4 == 1
        and m5 == 1
    )


def excess_corrected_logtev(g: GammaBlp2) -> Blp2Report:
    """logTev for the supported excess configuration.

    The excess locus consists of ``m_3! * n`` components (a choice of which
    marked point the two points of D_1 and D_2 sit at, times an ordering of the
    points of D_3), each the product of the two lines carrying D_4 and D_5 and
    each of multiplicity one.  Each contributes

        int (c(incidence excess bundle)) / ((1 + zeta - H_1 - H_4)(1 + zeta - H_2 - H_5)).
    """
    if not matches_excess_pattern(g):
        raise ConfigurationError(
            "excess correction is only established for mu_1 = mu_2 = (1), "
            "mu_3 = (1,...,1) with m_3 = n-1, d = m_3 + 2, m_4 = m_5 = 1"
        )
    d, ngens, layout, H = _setup(g)
    base = status_blp2(g)
    n = d.n
    z = ZetaPoly.zeta(ngens)
    one = ZetaPoly.one(ngens)
    numerator = ((one + z - H[0]) * (one + z - H[1])).pow(n)
    normal = [one + z - H[0] - H[3], one + z - H[1] - H[4]]
    surviving = layout[3] + layout[4]
    per_component = excess_contribution(numerator, normal, surviving)
    component_count = factorial(d.mj(3)) * n
    corrected = base.integral - component_count * per_component
    diagnostics = dict(base.diagnostics)
    diagnostics.update(
        {
            "uncorrected_status": base.status.value,
            "excess_components": "copies of P^1 x P^1 (lines of D_4 and D_5), multiplicity 1",
            "multiplicity_justification": "each component is reduced, isomorphic as a scheme to P^1 x P^1",
            "surviving_generators": surviving,
            "pattern_scope": "only this configuration is supported; no classification of other excess loci",
        }
    )
    return Blp2Report(
        integral=base.integral,
        closed_value=base.closed_value,
        status=Blp2Status.EXCESS_CORRECTED,
        logtev=corrected,
        excess=ExcessRecord(component_count, per_component, corrected),
        diagnostics=diagnostics,
    )
