"""Exhaustive enumeration of tangency data within bounds, and the invariant sweep.

Partitions are enumerated as nonincreasing tuples; reordering parts never
changes a computed value, and the sweep checks that on every instance.
Enumeration order is deterministic (lexicographic in the loop variables).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from .blowup import closed_formula_blp2, closed_formula_conflict, symbolic_integral_blp2
from .gamma import GammaBlp2, GammaXrsa, gamma_to_document, validate_blp2, validate_xrsa
from .tevelev import closed_formula_xrsa, logtev_projective, symbolic_integral_xrsa


def partitions(total: int, max_part: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """Nonincreasing tuples of positive ints <= max_part summing to total, length <= max_len."""
    def rec(rest: int, cap: int, room: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        if room == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            if first * room < rest:
                break
            for tail in rec(rest - first, first, room - 1):
                yield (first,) + tail
    if total < 0:
        return
    yield from rec(total, max_part, max_len)


def _min_len(total: int, max_part: int) -> int:
    return -(-total // max_part)


def _products(totals: list[int], max_part: int, budget: int) -> Iterator[list[tuple[int, ...]]]:
    """Every choice of one partition per total, with total length <= budget."""
    if not totals:
        yield []
        return
    floor_rest = sum(_min_len(t, max_part) for t in totals[1:])
    for head in partitions(totals[0], max_part, budget - floor_rest):
        for tail in _products(totals[1:], max_part, budget - len(head)):
            yield [head] + tail


def enumerate_xrsa(r: int, s: int, a: int, max_m: int, max_part: int) -> Iterator[GammaXrsa]:
    """Every valid Gamma on X_{r,s,a} with m <= max_m and parts <= max_part."""
    if max_m < 0 or max_part < 1:
        return
    b = 0
    while (r + 1) * _min_len(b, max_part) <= max_m:
        c = a * b
        while (r + 1) * _min_len(b, max_part) + s * _min_len(c, max_part) + _min_len(c - a * b, max_part) <= max_m:
            totals = [c - a * b] + [b] * (r + 1) + [c] * s
            for mu in _products(totals, max_part, max_m):
                if sum(len(p) for p in mu) % (r + s) == 0:
                    yield GammaXrsa(r=r, s=s, a=a, b=b, c=c, mu=mu)
            c += 1
        b += 1


def enumerate_blp2(max_m: int, max_part: int) -> Iterator[GammaBlp2]:
    """Every valid Gamma on the blow-up of P^2 with m <= max_m and parts <= max_part."""
    if max_m < 0 or max_part < 1:
        return
    d = 1
    # D_4 and D_5 (or D_1, D_2) carry degree d between them, so d <= max_m * max_part
    while d <= max_m * max_part:
        for e1 in range(d + 1):
            for e2 in range(d - e1 + 1):
                totals = [e1, e2, d - e1 - e2, d - e1, d - e2]
                if sum(_min_len(t, max_part) for t in totals) > max_m:
                    continue
                for mu in _products(totals, max_part, max_m):
                    if sum(len(p) for p in mu) % 2 == 0:
                        yield GammaBlp2(d=d, mu=mu)
        d += 1


# invariant checks


def _reverse_parts(mu):
    return [tuple(reversed(p)) for p in mu]


def check_xrsa(g: GammaXrsa) -> list[str]:
    """All invariant violations for one Gamma (expected: none)."""
    problems = []
    value = symbolic_integral_xrsa(g)
    closed = closed_formula_xrsa(g)
    if value != closed:
        problems.append(f"integral {value} != closed formula {closed}")
    r, s = g.r, g.s
    mu = list(g.mu)
    variants = []
    if any(len(set(p)) > 1 for p in mu):
        variants.append(("part order", _reverse_parts(mu)))
    base_block = mu[1 : r + 2]
    fiber_block = mu[r + 2 :]
    if len(set(base_block)) > 1:
        variants.append(("base index order", mu[:1] + base_block[::-1] + fiber_block))
    if len(set(fiber_block)) > 1:
        variants.append(("fiber index order", mu[: r + 2] + fiber_block[::-1]))
    for label, other_mu in variants:
        other = GammaXrsa(r=r, s=s, a=g.a, b=g.b, c=g.c, mu=other_mu)
        if symbolic_integral_xrsa(other) != value:
            problems.append(f"{label} symmetry broken")
    if g.a == 0:
        d = validate_xrsa(g)
        n, m = d.n, d.m_parts
        balanced = sum(m[1 : r + 2]) == r * (n - 1) and m[0] + sum(m[r + 2 :]) == s * (n - 1)
        if balanced:
            expected = logtev_projective(mu[1 : r + 2]) * logtev_projective([mu[0]] + fiber_block)
        else:
            expected = 0
        if value != expected:
            problems.append(f"product splitting: {value} != {expected}")
    return problems


def check_blp2(g: GammaBlp2) -> list[str]:
    problems = []
    value = symbolic_integral_blp2(g)
    closed = closed_formula_blp2(g)
    if value != closed:
        known = " (m_4 >= n or m_5 >= n)" if closed_formula_conflict(validate_blp2(g)) else ""
        problems.append(f"integral {value} != closed formula {closed}{known}")
    mu = list(g.mu)
    swapped = [mu[1], mu[0], mu[2], mu[4], mu[3]]
    if swapped != mu and symbolic_integral_blp2(GammaBlp2(d=g.d, mu=swapped)) != value:
        problems.append("fan relabeling symmetry broken")
    if any(len(set(p)) > 1 for p in mu):
        if symbolic_integral_blp2(GammaBlp2(d=g.d, mu=_reverse_parts(mu))) != value:
            problems.append("part order symmetry broken")
    return problems


@dataclass
class SweepSummary:
    counts: dict[str, int] = field(default_factory=dict)
    violations: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "counts": dict(self.counts),
            "total": sum(self.counts.values()),
            "violations": list(self.violations),
        }


def _check_doc(item: tuple[str, Any]) -> tuple[str, Any, list[str]]:
    kind, g = item
    check: Callable[[Any], list[str]] = check_xrsa if kind == "xrsa" else check_blp2
    try:
        return kind, g, check(g)
    except Exception as exc:  # an engine failure is a violation, not a crash
        return kind, g, [f"{type(exc).__name__}: {exc}"]


def run_sweep(
    r_max: int,
    s_max: int,
    a_max: int,
    max_m: int,
    max_part: int,
    targets: tuple[str, ...] = ("xrsa", "blp2"),
    workers: int = 1,
) -> SweepSummary:
    items: list[tuple[str, Any]] = []
    if "xrsa" in targets:
        for r in range(1, r_max + 1):
            for s in range(1, s_max + 1):
                for a in range(0, a_max + 1):
                    items.extend(("xrsa", g) for g in enumerate_xrsa(r, s, a, max_m, max_part))
    if "blp2" in targets:
        items.extend(("blp2", g) for g in enumerate_blp2(max_m, max_part))

    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_check_doc, items, chunksize=8))
    else:
        results = [_check_doc(item) for item in items]

    summary = SweepSummary()
    for kind, g, problems in results:
        key = kind
        if kind == "xrsa":
            key = f"xrsa r={g.r} s={g.s} a={g.a}"
        summary.counts[key] = summary.counts.get(key, 0) + 1
        if problems:
            summary.violations.append({"gamma": gamma_to_document(g), "problems": problems})
    return summary


__all__ = [
    "partitions",
    "enumerate_xrsa",
    "enumerate_blp2",
    "check_xrsa",
    "check_blp2",
    "SweepSummary",
    "run_sweep",
]
