#!/usr/bin/env python3
"""
Growth Lab - Acceptance Benchmark Script
One-command timed run of the shipped scenarios against their runtime limits
"""

import sys
import time
from math import comb
from pathlib import Path
from typing import Callable, List, Tuple

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from base_algebra import EnvelopingAlgebra, PolynomialAlgebra, abelian_lie, field_algebra, sl2_lie  # noqa: E402
from growth_cli import main as cli_main  # noqa: E402
from lemma_verifier import (  # noqa: E402
    EmbeddingScenario,
    verify_commutator_image,
    verify_growth_bound,
    verify_inclusion_eq1,
    verify_matrix_growth_comparison,
    verify_pbw_filtration,
)
from scalars import ScalarField  # noqa: E402

OUT = ROOT / "benchmarks" / "results"


# Color output for terminal
class Colors:
    HEADER = '\033[95m'
    STEP = '\033[96m'
    OK = '\033[92m'
    SLOW = '\033[93m'
    FAIL = '\033[91m'
    ENDC = '\033[0m'


def print_header(text):
    rule = "=" * 60
    print(f"\n{Colors.HEADER}{rule}\n{text}\n{rule}{Colors.ENDC}\n")


def print_status(color, text):
    print(f"{color}{text}{Colors.ENDC}")


def oracle_run() -> bool:
    return cli_main(["--quiet", "oracle", "--config", str(ROOT / "scenarios" / "oracle_default.toml"),
                     "--out", str(OUT / "oracle")]) == 0


def commutator_run() -> bool:
    P = PolynomialAlgebra(ScalarField.rational(), 2, ["x", "y"])
    return verify_commutator_image(EmbeddingScenario(P, P.generators(), 6)).passed


def inclusion_run() -> bool:
    P = PolynomialAlgebra(ScalarField.rational(), 2, ["x", "y"])
    return verify_inclusion_eq1(EmbeddingScenario(P, P.generators(), 6)).passed


def bound_run() -> bool:
    qq = ScalarField.rational()
    scenarios = [
        EmbeddingScenario(PolynomialAlgebra(qq, 1), PolynomialAlgebra(qq, 1).generators(), 6),
        EmbeddingScenario(PolynomialAlgebra(qq, 2), PolynomialAlgebra(qq, 2).generators(), 6),
        EmbeddingScenario(field_algebra(qq), [field_algebra(qq).one()], 8),
    ]
    return all(verify_growth_bound(s)[0].passed for s in scenarios)


def pbw_run() -> bool:
    qq = ScalarField.rational()
    abelian = verify_pbw_filtration(EnvelopingAlgebra(abelian_lie(qq, 2)), 6)
    sl2 = verify_pbw_filtration(EnvelopingAlgebra(sl2_lie(qq)), 6)
    return abelian.passed and sl2.tables["g_U"].values() == [comb(n + 3, 3) for n in range(1, 7)]


def matrix_run() -> bool:
    qq = ScalarField.rational()
    F = field_algebra(qq)
    P = PolynomialAlgebra(qq, 1)
    return (verify_matrix_growth_comparison(F, [F.one()], 6).passed
            and verify_matrix_growth_comparison(P, P.generators(), 6).passed)


BENCHMARKS: List[Tuple[str, Callable[[], bool], float]] = [
    ("Truncated-matrix oracle, 500 pairs", oracle_run, 10.0),
    ("Commutator image on V^6 over F[x,y]", commutator_run, 60.0),
    ("Inclusion of W^n, n <= 6 over F[x,y]", inclusion_run, 60.0),
    ("Growth bound over F[x], F[x,y], F", bound_run, 60.0),
    ("PBW filtration counts, n <= 6", pbw_run, 60.0),
    ("Lie vs associative growth in M2", matrix_run, 60.0),
]


def main() -> int:
    print_header("Growth Lab - Acceptance Benchmarks")
    OUT.mkdir(parents=True, exist_ok=True)
    failures = 0
    for step, (title, run, limit) in enumerate(BENCHMARKS, start=1):
        print_status(Colors.STEP, f"[{step}] {title}")
        started = time.perf_counter()
        ok = run()
        elapsed = time.perf_counter() - started
        if not ok:
            failures += 1
            print_status(Colors.FAIL, f"FAIL after {elapsed:.1f}s")
        elif elapsed > limit:
            print_status(Colors.SLOW, f"SLOW: passed in {elapsed:.1f}s, over the {limit:.0f}s limit")
        else:
            print_status(Colors.OK, f"OK: passed in {elapsed:.1f}s (limit {limit:.0f}s)")
    print_header("All checks passed" if not failures else f"{failures} check(s) failed")
    return 1 if failures else 0


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print_status(Colors.SLOW, "\n\nInterrupted")
        sys.exit(1)
