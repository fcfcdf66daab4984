#!/usr/bin/env python3
"""
Growth Lab - Embedding Verifier
Exact finite-n checks of the banded embedding and the Lie pipeline

Features:
- Generators W = {E_1(a_1), ..., E_1(a_m), E_-1(1)} of B'
- phi: a -> e_11(a) homomorphism / injectivity checks
- [E_1(a), E_-1(1)] = e_11(a) on a basis of V^n
- W^n inside M_[1,n]x[1,n](V^n) + sum_(|i|<=n) E_i(V^n)
- g_B'(W, n) <= (n^2 + 2n + 1) g_A(V, n)
- L -> U(L) -> banded -> M_2 pipeline growth comparisons

Checks are independent pure computations; run_checks may spread them over
a thread pool and always merges reports in declaration order.
"""

from __future__ import annotations

import asyncio
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from algebra_errors import AlgebraError
from banded import BandedElement, band, cell, coordinates, mul_banded
from base_algebra import AlgebraElement, BaseAlgebra, EnvelopingAlgebra, LieStructure, MatrixExtension, matrix_extend
from span_growth import (
    Ambient,
    CoordinateKey,
    GrowthKind,
    GrowthTable,
    Spanning,
    asym_equiv,
    assoc_growth,
    iterate_filtration,
    lie_growth,
)

logger = logging.getLogger(__name__)

BandedProduct = Callable[[BandedElement, BandedElement], BandedElement]

MAX_LISTED_VIOLATIONS = 5


class CheckStatus(Enum):
    """Outcome of one verification check"""
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass
class CheckResult:
    """One named check; a FAIL always carries a concrete witness"""
    name: str
    status: CheckStatus
    witness: Optional[str] = None
    rows: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def line(self) -> str:
        if self.passed:
            return f"{self.name} PASS"
        return f"{self.name} FAIL {self.witness}"

    @classmethod
    def of(cls, name: str, witness: Optional[str], rows: Optional[List[str]] = None) -> "CheckResult":
        status = CheckStatus.PASS if witness is None else CheckStatus.FAIL
        result = cls(name, status, witness, rows or [])
        if result.passed:
            logger.info(f"✓ {name}")
        else:
            logger.warning(f"✗ {name}: {witness}")
        return result


@dataclass
class VerificationReport:
    """Ordered check results, growth tables and header notes"""
    checks: List[CheckResult] = field(default_factory=list)
    tables: Dict[str, GrowthTable] = field(default_factory=dict)
    header: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.header.extend(line for line in other.header if line not in self.header)
        self.checks.extend(other.checks)
        self.tables.update(other.tables)
        return self

    @classmethod
    def merge(cls, reports: Sequence["VerificationReport"]) -> "VerificationReport":
        merged = cls()
        for report in reports:
            merged.extend(report)
        return merged

    def to_text(self) -> str:
        lines = [f"# {line}" for line in self.header]
        for c in self.checks:
            lines.append(c.line())
            lines.extend(f"#   {row}" for row in c.rows)
        return "\n".join(lines) + "\n"

    def write(self, out_dir: Path, name: str = "report.txt") -> Path:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / name
        path.write_text(self.to_text())
        for table_name, table in self.tables.items():
            table.to_csv(out_dir / f"{table_name}.csv")
        return path


@dataclass
class EmbeddingScenario:
    """A_base with chosen a_1..a_m; V = span(a_1..a_m, 1)"""
    base: BaseAlgebra
    elements: List[AlgebraElement]
    n_max: int
    label: str = "scenario"

    def __post_init__(self):
        if not self.elements:
            raise AlgebraError("scenario needs at least one element a_1")
        if self.n_max < 1:
            raise AlgebraError(f"n_max must be >= 1, got {self.n_max}")
        for a in self.elements:
            if a.algebra != self.base:
                raise AlgebraError(f"element {a} is not in {self.base}")
        self.base.one()  # NoUnitError for a non-unital base

    @property
    def v_generators(self) -> List[AlgebraElement]:
        return list(self.elements) + [self.base.one()]

    @property
    def w_names(self) -> List[str]:
        return [f"E1({a})" for a in self.elements] + ["E-1(1)"]

    def describe_word(self, word: Tuple[int, ...]) -> str:
        names = self.w_names
        return "*".join(names[i] for i in word)

    def header(self) -> List[str]:
        return [
            f"scenario: {self.label}",
            f"base: {self.base}",
            f"n_max: {self.n_max}",
            "V = span(" + ", ".join(str(a) for a in self.elements) + ", 1) (unit added automatically)",
            "W = {" + ", ".join(self.w_names) + "}",
        ]


def build_generators(scenario: EmbeddingScenario) -> List[BandedElement]:
    """W as banded elements: E_1(a_i) for each a_i, then E_-1(1)"""
    one = scenario.base.one()
    return [band(1, a) for a in scenario.elements] + [band(-1, one)]


def phi(a: AlgebraElement) -> BandedElement:
    """The embedding a -> e_11(a)"""
    return cell(1, 1, a)


def banded_ambient(scenario: EmbeddingScenario, product: BandedProduct = mul_banded) -> Ambient:
    return Ambient(f"B'[{scenario.label}]", scenario.base.field, GrowthKind.ASSOCIATIVE, product)


def base_spanning(scenario: EmbeddingScenario, n: Optional[int] = None) -> List[AlgebraElement]:
    """Spanning basis elements of V^n (default V^n_max)"""
    n = n or scenario.n_max
    level = None
    for level in iterate_filtration(Ambient.associative(scenario.base), scenario.v_generators, n):
        pass
    return [s.element for s in level.spanning]


def _random_combination(rng: random.Random, span: Sequence[AlgebraElement], base: BaseAlgebra) -> AlgebraElement:
    total = base.zero()
    for a in rng.sample(list(span), min(3, len(span))):
        total = total + a.scale(base.field.random(rng))
    return total


def verify_phi(
    scenario: EmbeddingScenario,
    trials: int = 500,
    seed: int = 42,
    product: BandedProduct = mul_banded,
    progress: bool = False,
) -> VerificationReport:
    """
    For random a, b in V^n_max: phi(ab) = phi(a) phi(b), phi linear,
    phi(a) = 0 iff a = 0, and phi maps A-coordinates onto Cell(1,1,.)
    coordinates bijectively.
    """
    rng = random.Random(seed)
    base = scenario.base
    span = base_spanning(scenario)
    rank = base.sort_key
    witness = None
    for t in tqdm(range(trials), desc="phi", disable=not progress):
        a = _random_combination(rng, span, base)
        b = _random_combination(rng, span, base)
        c = base.field.random(rng)
        pa, pb = phi(a), phi(b)
        if product(pa, pb) != phi(a * b):
            witness = f"trial {t}: phi(a)phi(b) != phi(ab) for a={a}, b={b}"
        elif phi(a.scale(c) + b) != pa * c + pb:
            witness = f"trial {t}: phi not linear at a={a}, b={b}, c={c}"
        elif bool(pa) != bool(a):
            witness = f"trial {t}: phi(a) = 0 disagrees with a = 0 for a={a}"
        elif coordinates(pa) != {CoordinateKey.cell(1, 1, i, rank(i)): v for i, v in a.terms.items()}:
            witness = f"trial {t}: coordinates of phi(a) are not Cell(1,1,.) images of a={a}"
        if witness:
            break
    return VerificationReport(
        checks=[CheckResult.of("phi_homomorphism", witness, [f"trials={trials} seed={seed} span_dim={len(span)}"])],
        header=scenario.header(),
    )


def verify_commutator_image(scenario: EmbeddingScenario, product: BandedProduct = mul_banded) -> VerificationReport:
    """[E_1(a), E_-1(1)] = e_11(a) for every spanning basis element a of V^n_max"""
    lowering = band(-1, scenario.base.one())
    span = base_spanning(scenario)
    witness = None
    for a in span:
        raising = band(1, a)
        commutator = product(raising, lowering) - product(lowering, raising)
        if commutator != phi(a):
            witness = f"[E1({a}), E-1(1)] = {commutator}, expected e1,1({a})"
            break
    return VerificationReport(
        checks=[CheckResult.of("commutator_image", witness, [f"basis elements checked={len(span)}"])],
        header=scenario.header(),
    )


def _inclusion_violation(
    x: BandedElement, n: int, v_basis
) -> Optional[str]:
    for key, value in x.cells.items():
        if key.row > n or key.col > n:
            return f"cell ({key.row},{key.col}) outside [1,{n}]^2"
        if not v_basis.contains(value.coordinates()):
            return f"cell ({key.row},{key.col}) value {value} not in V^{n}"
    for k, value in x.bands.items():
        if abs(k) > n:
            return f"band offset {k} outside [-{n},{n}]"
        if not v_basis.contains(value.coordinates()):
            return f"band {k} coefficient {value} not in V^{n}"
    return None


def verify_inclusion_eq1(scenario: EmbeddingScenario, product: BandedProduct = mul_banded) -> VerificationReport:
    """
    Every spanning element of W^n has cells in [1,n]^2, band offsets in
    [-n, n] and all values in V^n, for n = 1..n_max.
    """
    w_levels = iterate_filtration(banded_ambient(scenario, product), build_generators(scenario), scenario.n_max)
    v_levels = iterate_filtration(Ambient.associative(scenario.base), scenario.v_generators, scenario.n_max)
    violations: List[str] = []
    rows: List[str] = []
    for w_level, v_level in zip(w_levels, v_levels):
        n = w_level.n
        for s in w_level.spanning:
            problem = _inclusion_violation(s.element, n, v_level.basis)
            if problem:
                violations.append(f"n={n} word={scenario.describe_word(s.word)}: {problem}")
        rows.append(f"n={n} spanning={len(w_level.spanning)} dim_W={w_level.dimension} dim_V={v_level.dimension}")
    witness = None
    if violations:
        listed = violations[:MAX_LISTED_VIOLATIONS]
        witness = "; ".join(listed) + (f" (+{len(violations) - len(listed)} more)" if len(violations) > len(listed) else "")
    return VerificationReport(
        checks=[CheckResult.of("inclusion_eq1", witness, rows)],
        header=scenario.header(),
    )


def lemma_bound(n: int, g_a: int) -> int:
    """n^2 g_A + (2n + 1) g_A"""
    return n * n * g_a + (2 * n + 1) * g_a


def verify_growth_bound(
    scenario: EmbeddingScenario, product: BandedProduct = mul_banded
) -> Tuple[VerificationReport, GrowthTable]:
    """g_B'(W, n) <= (n^2 + 2n + 1) g_A(V, n) for every n <= n_max"""
    g_a = assoc_growth(Ambient.associative(scenario.base), scenario.v_generators, scenario.n_max,
                       label=f"g_A[{scenario.label}]")
    g_b = assoc_growth(banded_ambient(scenario, product), build_generators(scenario), scenario.n_max,
                       label=f"g_B'[{scenario.label}]")
    bounded = g_b.with_bound(lambda n, _: lemma_bound(n, g_a[n]))
    bad = bounded.violations()
    witness = None
    if bad:
        n = bad[0]
        witness = f"n={n}: g_B'={bounded[n]} > bound={bounded.bound[n]} (g_A={g_a[n]})"
    rows = [f"n={n} g_A={g_a[n]} g_B'={bounded[n]} bound={bounded.bound[n]}" for n in sorted(bounded.entries)]
    report = VerificationReport(
        checks=[CheckResult.of("growth_bound", witness, rows)],
        tables={"g_A": g_a, "g_B_prime": bounded},
        header=scenario.header(),
    )
    return report, bounded


def run_checks(checks: Sequence[Callable[[], VerificationReport]], jobs: int = 1) -> VerificationReport:
    """Run independent checks (thread pool when jobs > 1); merge in declaration order"""
    if jobs <= 1:
        return VerificationReport.merge([check() for check in checks])
    return VerificationReport.merge(asyncio.run(_gather_checks(checks, jobs)))


async def _gather_checks(checks: Sequence[Callable[[], VerificationReport]], jobs: int) -> List[VerificationReport]:
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        tasks = [loop.run_in_executor(pool, check) for check in checks]
        return list(await asyncio.gather(*tasks))


def verify_lemma(
    scenario: EmbeddingScenario,
    trials: int = 500,
    seed: int = 42,
    jobs: int = 1,
    product: BandedProduct = mul_banded,
    progress: bool = False,
) -> VerificationReport:
    """All four embedding checks for one scenario"""
    report = run_checks([
        lambda: verify_phi(scenario, trials, seed, product, progress),
        lambda: verify_commutator_image(scenario, product),
        lambda: verify_inclusion_eq1(scenario, product),
        lambda: verify_growth_bound(scenario, product)[0],
    ], jobs)
    report.header.append(f"seed: {seed}")
    return report


# Pipeline: L -> U(L) -> banded -> M_2


def verify_pbw_filtration(U: EnvelopingAlgebra, n_max: int) -> VerificationReport:
    """g_U(span(1, generators), n) = C(n + d, d): PBW monomials of degree <= n"""
    d = U.lie.dimension
    table = assoc_growth(Ambient.associative(U), [U.one()] + U.generators(), n_max, label="g_U")
    rows = [f"n={n} g_U={table[n]} C(n+{d},{d})={comb(n + d, d)}" for n in sorted(table.entries)]
    bad = [n for n in sorted(table.entries) if table[n] != comb(n + d, d)]
    witness = None if not bad else f"n={bad[0]}: g_U={table[bad[0]]} != {comb(bad[0] + d, d)}"
    return VerificationReport(
        checks=[CheckResult.of("pbw_filtration", witness, rows)],
        tables={"g_U": table},
    )


def verify_full_idempotent(C: MatrixExtension) -> VerificationReport:
    """
    e = e_11(1) is a full idempotent of C = M_2(B):
    1 = e_21 e e_12 + e and 1 = e_12 (1 - e) e_21 + (1 - e).
    """
    e = C.matrix_unit(1, 1)
    f = C.one() - e
    e12, e21 = C.matrix_unit(1, 2), C.matrix_unit(2, 1)
    witness = None
    if e * e != e:
        witness = f"e*e = {e * e} != e"
    elif e21 * e * e12 + e != C.one():
        witness = f"e21*e*e12 + e = {e21 * e * e12 + e} != 1"
    elif e12 * f * e21 + f != C.one():
        witness = f"e12*(1-e)*e21 + (1-e) = {e12 * f * e21 + f} != 1"
    return VerificationReport(checks=[CheckResult.of("full_idempotent", witness)])


def matrix_lie_generators(C: MatrixExtension, elements: Sequence[AlgebraElement]) -> Tuple[List[AlgebraElement], List[AlgebraElement]]:
    """
    Associative generators e_rs(1), e_11(a_i) of C and the Lie generators
    [u, v] over all pairs of them (nonzero, first occurrence kept).
    """
    assoc = [C.matrix_unit(r, s) for r in (1, 2) for s in (1, 2)]
    assoc += [C.matrix_unit(1, 1, a) for a in elements]
    lie: List[AlgebraElement] = []
    seen = set()
    for i in range(len(assoc)):
        for j in range(i + 1, len(assoc)):
            u = assoc[i] * assoc[j] - assoc[j] * assoc[i]
            if u and u not in seen:
                seen.add(u)
                lie.append(u)
    return assoc, lie


def verify_matrix_growth_comparison(
    base: BaseAlgebra,
    elements: Sequence[AlgebraElement],
    n_max: int,
    c_max: int = 2,
) -> VerificationReport:
    """
    In C = M_2(base): Lie growth of the bracket-generated subalgebra from the
    commutators of C's associative generators is <= the associative growth
    from the same generators, at every n <= n_max.
    """
    C = matrix_extend(base)
    assoc_gens, lie_gens = matrix_lie_generators(C, elements)
    g_lie = lie_growth(Ambient.commutator(C), lie_gens, n_max, label="g_lie_C")
    g_assoc = assoc_growth(Ambient.associative(C), lie_gens, n_max, label="g_assoc_C")
    bad = [n for n in sorted(g_lie.entries) if g_lie[n] > g_assoc[n]]
    witness = None if not bad else f"n={bad[0]}: lie={g_lie[bad[0]]} > assoc={g_assoc[bad[0]]}"
    rows = [f"n={n} lie={g_lie[n]} assoc={g_assoc[n]}" for n in sorted(g_lie.entries)]

    header = [
        f"C = {C}; Lie generators: all nonzero [u,v] of associative generator pairs of C ({len(lie_gens)} after dedup)",
    ]
    k = n_max // c_max
    if k >= 1:
        v_gens = list(elements) + [base.one()]
        g_c = assoc_growth(Ambient.associative(C), assoc_gens, n_max, label="g_C")
        g_base = assoc_growth(Ambient.associative(base), v_gens, n_max, label="g_base")
        c_le_b, b_le_c = asym_equiv(g_c, g_base, c_max, range(1, k + 1))
        header.append(
            f"finite-range witnesses on n<={k}, C<={c_max} (heuristic, not a proof): "
            f"g_C <= g_base: {c_le_b}; g_base <= g_C: {b_le_c}"
        )
    return VerificationReport(
        checks=[CheckResult.of("matrix_lie_le_assoc", witness, rows)],
        tables={"g_lie_C": g_lie, "g_assoc_C": g_assoc},
        header=header,
    )


def pipeline_growth(
    lie: LieStructure,
    n_max: int,
    order: Optional[Sequence[int]] = None,
    seed: int = 42,
    jobs: int = 1,
    c_max: int = 2,
) -> VerificationReport:
    """
    (i) g_U(L) for V = span(1, generators) against the PBW count,
    (ii) the embedding scenario over A = U(L) with the Lie generators as a_i,
    (iii) Lie vs associative growth in C = M_2(U(L)), plus the full
    idempotent of C.
    """
    U = EnvelopingAlgebra(lie, order)
    header = [f"pipeline: L = {lie}, U = {U}, n_max = {n_max}, seed: {seed}"]
    if lie.field.is_char_two:
        message = "WARNING: characteristic 2; the embedding theorem assumes char F != 2"
        logger.warning(message)
        header.append(message)
    scenario = EmbeddingScenario(U, U.generators(), n_max, label="U(L)")
    report = run_checks([
        lambda: verify_pbw_filtration(U, n_max),
        lambda: verify_commutator_image(scenario),
        lambda: verify_growth_bound(scenario)[0],
        lambda: verify_matrix_growth_comparison(U, U.generators(), n_max, c_max),
        lambda: verify_full_idempotent(matrix_extend(U)),
    ], jobs)
    report.header[:0] = header
    return report
