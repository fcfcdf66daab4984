#!/usr/bin/env python3
"""
Growth Lab - Command Line

    python growth_cli.py growth        --config scenarios/polynomial_1_growth.toml --out out/
    python growth_cli.py verify-lemma  --config scenarios/polynomial_2_lemma.toml --out out/
    python growth_cli.py oracle        --config scenarios/oracle_default.toml --out out/
    python growth_cli.py pipeline      --config scenarios/sl2_pipeline.toml --out out/

Exit status: 0 all checks pass, 1 a verification failed, 2 configuration
error, 3 precondition error (e.g. a base without unit), 4 algebraic
validation error (Jacobi, antisymmetry, unit law).
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from functools import partial
from pathlib import Path
from typing import List, Optional, Sequence

from tqdm import tqdm

from algebra_errors import AlgebraError, ConfigError
from banded import format_matrix, mul_banded, random_banded, truncation_oracle
from lemma_verifier import EmbeddingScenario, VerificationReport, pipeline_growth, verify_lemma
from scenario_config import (
    LieSection,
    ScenarioConfig,
    build_algebra,
    build_elements,
    build_lie,
    lie_order,
    load_config,
    require_elements,
)
from span_growth import Ambient, assoc_growth, lie_growth

logger = logging.getLogger("growth_cli")

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


def _load(args: argparse.Namespace) -> ScenarioConfig:
    return load_config(args.config, {"n_max": args.nmax, "seed": args.seed})


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _banner(title: str) -> None:
    print("=" * 70)
    print(title)
    print("=" * 70)


def _finish(report: VerificationReport, out: Path) -> int:
    path = report.write(out)
    print(report.to_text(), end="")
    logger.info(f"Report saved: {path}")
    return 0 if report.passed else 1


def cmd_growth(args: argparse.Namespace) -> int:
    """Write growth.csv (n, dim) for the configured ambient and generators"""
    config = _load(args)
    kind = args.kind or config.growth.kind
    if kind == "lie":
        if not isinstance(config.algebra, LieSection):
            raise ConfigError("lie growth needs a Lie algebra", ["algebra.kind: expected lie or enveloping"])
        lie = build_lie(config)
        algebra = lie.as_algebra()
        ambient = Ambient.lie(lie)
    else:
        if config.algebra.kind == "lie":
            # the bracket algebra is not associative
            raise ConfigError(
                f"{kind} growth needs an associative algebra",
                [f"growth.kind: {kind!r} is not defined for algebra.kind 'lie'; "
                 "use growth.kind = 'lie' or algebra.kind = 'enveloping'"],
            )
        algebra = build_algebra(config)
        ambient = Ambient.commutator(algebra) if kind == "commutator" else Ambient.associative(algebra)
    gens = build_elements(config, algebra)
    if not gens:
        gens = algebra.generators()
        logger.info(f"No elements configured; using the {len(gens)} generators of {algebra}")
    compute = assoc_growth if kind == "assoc" else lie_growth
    table = compute(ambient, gens, config.n_max, label=config.label)

    out = _out_dir(args)
    path = table.to_csv(out / "growth.csv")
    _banner(f"GROWTH {kind} - {config.label}")
    print(f"# algebra: {algebra}")
    print("# generators: " + ", ".join(str(g) for g in gens))
    for n in sorted(table.entries):
        print(f"{n},{table[n]}")
    logger.info(f"Growth table saved: {path}")
    return 0


def cmd_verify_lemma(args: argparse.Namespace) -> int:
    """Embedding checks; report.txt, g_A.csv and g_B_prime.csv"""
    config = _load(args)
    algebra = build_algebra(config)
    elements = require_elements(config, algebra)
    scenario = EmbeddingScenario(algebra, elements, config.n_max, label=config.label)
    product = mul_banded
    if args.corrupt_multiplication:
        logger.warning("Banded product corrupted: finite correction cells dropped")
        product = partial(mul_banded, corrections=False)
    report = verify_lemma(
        scenario,
        trials=config.verify.trials,
        seed=config.seed,
        jobs=args.jobs,
        product=product,
        progress=args.progress,
    )
    return _finish(report, _out_dir(args))


def oracle_transcript(config: ScenarioConfig, algebra, progress: bool = False) -> List[str]:
    """Seeded truncated-matrix comparisons; the last line is the verdict"""
    settings = config.oracle
    rng = random.Random(config.seed)
    lines = [
        f"# seed: {config.seed}",
        f"# algebra: {algebra}",
        f"# window: {settings.window}",
        f"# truncation: {settings.truncation or 'auto'} (widened to cover offsets and cells)",
        f"# trials: {settings.trials}",
    ]
    for t in tqdm(range(settings.trials), desc="oracle", disable=not progress):
        x = random_banded(algebra, rng, settings.max_offset, max_cell=settings.max_cell, max_degree=settings.max_degree)
        y = random_banded(algebra, rng, settings.max_offset, max_cell=settings.max_cell, max_degree=settings.max_degree)
        comparison = truncation_oracle(x, y, settings.window, settings.truncation)
        if not comparison.agrees:
            i, j = comparison.first_mismatch
            lines += [
                f"oracle FAIL trial {t}: entry ({i},{j}) differs",
                f"x = {x}",
                f"y = {y}",
                "truncated product of truncations:",
                format_matrix(comparison.expected),
                "truncation of mul_banded:",
                format_matrix(comparison.actual),
            ]
            return lines
    lines.append(f"oracle PASS {settings.trials}/{settings.trials} agree")
    return lines


def cmd_oracle(args: argparse.Namespace) -> int:
    config = _load(args)
    algebra = build_algebra(config)
    lines = oracle_transcript(config, algebra, args.progress)
    text = "\n".join(lines) + "\n"
    path = _out_dir(args) / "oracle.txt"
    path.write_text(text)
    print(text, end="")
    logger.info(f"Transcript saved: {path}")
    return 0 if lines[-1].startswith("oracle PASS") else 1


def cmd_pipeline(args: argparse.Namespace) -> int:
    config = _load(args)
    lie = build_lie(config)
    report = pipeline_growth(lie, config.n_max, lie_order(config, lie), seed=config.seed,
                             jobs=args.jobs, c_max=config.verify.c_max)
    return _finish(report, _out_dir(args))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Growth Lab - exact growth functions and embedding checks")
    parser.add_argument("--verbose", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", action="store_true", help="Warnings and errors only")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="Scenario file (.toml, .yaml or .yml)")
    common.add_argument("--out", default="out", help="Output directory (created if missing)")
    common.add_argument("--nmax", type=int, help="Override n_max from the scenario")
    common.add_argument("--seed", type=int, help="Override the scenario seed")
    common.add_argument("--jobs", type=int, default=1, help="Worker threads for independent checks")
    common.add_argument("--progress", action="store_true", help="Progress bars on stderr")

    sub = parser.add_subparsers(dest="command", required=True)
    growth = sub.add_parser("growth", parents=[common], help="Growth table g(V, n)")
    growth.add_argument("--kind", choices=["assoc", "lie", "commutator"], help="Override growth.kind")
    growth.set_defaults(handler=cmd_growth)

    lemma = sub.add_parser("verify-lemma", parents=[common], help="Banded embedding checks")
    lemma.add_argument("--corrupt-multiplication", action="store_true",
                       help="Drop the finite correction cells of the banded product (failure-path test hook)")
    lemma.set_defaults(handler=cmd_verify_lemma)

    sub.add_parser("oracle", parents=[common], help="Truncated-matrix oracle").set_defaults(handler=cmd_oracle)
    sub.add_parser("pipeline", parents=[common], help="L -> U(L) -> banded -> M2 growth").set_defaults(handler=cmd_pipeline)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        return args.handler(args)
    except AlgebraError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
