"""
Command-line surface.

Exit codes: 0 when every check passes, 1 when a counterexample, a missing
table cell or a found refuted cell is reported, 2 for usage errors.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence, Union

from mahonia import __version__
from mahonia.config import get_settings
from mahonia.core.qseries import alpha_is_extension, cf_truncate, genfunc_312, get_cf_spec, render_series
from mahonia.core.stats import parse, parse_marks
from mahonia.errors import MahoniaError
from mahonia.logging_config import configure_logging
from mahonia.services.bijection_service import BijectionService
from mahonia.services.distribution_service import DistributionService
from mahonia.services.verifier_service import (
    S3,
    VerifierService,
    catalog_stats,
    load_manifest,
    pattern_subsets,
)
from mahonia.utils.pattern_parser import parse_pattern_set
from mahonia.utils.renderers import FORMATS, render_distribution

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


def _distributions() -> DistributionService:
    return DistributionService(get_settings())


def _pattern_words(text: str) -> List[str]:
    if text.strip().lower() == "all3":
        return list(S3)
    return [w.strip() for w in text.split(",") if w.strip()]


def _alpha(text: str) -> Union[List[int], Dict[str, int]]:
    """"1,0,..." as a coefficient list or "1<23>=1,<21>=2" as a mapping"""
    items = [s.strip() for s in text.split(",") if s.strip()]
    try:
        if any("=" in s for s in items):
            return {k.strip(): int(v) for k, v in (s.split("=", 1) for s in items)}
        return [int(s) for s in items]
    except ValueError:
        raise MahoniaError(f"cannot read alpha {text!r}; give integers or pattern=coefficient pairs")


def cmd_dist(args) -> int:
    spec = parse(args.stat)
    patterns = parse_pattern_set(args.avoid)
    service = _distributions()
    poly = service.distribution(spec, patterns, args.n)
    refined = None
    if args.marks:
        refined = service.distribution_refined(spec, patterns, args.n, parse_marks(args.marks))
    meta = {"stat": spec.canonical(), "avoid": [str(p) for p in patterns], "n": args.n}
    print(render_distribution(poly, args.format, meta, refined))
    return EXIT_OK


def cmd_equidist(args) -> int:
    verifier = VerifierService(_distributions())
    result = verifier.check_equidistribution(
        parse(args.stat1), parse_pattern_set(args.avoid1),
        parse(args.stat2), parse_pattern_set(args.avoid2),
        args.max_n,
    )
    for v in result.verdicts:
        print(f"n={v.n} {'ok' if v.agree else 'DIFFERS'}")
        if not v.agree:
            print(f"  {result.stat1} over S_{v.n}({result.avoid1}): {v.left}")
            print(f"  {result.stat2} over S_{v.n}({result.avoid2}): {v.right}")
    if result.holds:
        print(f"equidistributed for n <= {args.max_n}")
        return EXIT_OK
    print(f"counterexample at n = {result.first_disagreement}")
    return EXIT_COUNTEREXAMPLE


def _cell(c) -> str:
    row, col, first, second = c
    return f"{row}/{col} ({first}, {second})"


def cmd_scan(args) -> int:
    manifest = load_manifest(args.manifest)
    verifier = VerifierService(_distributions())
    report = verifier.scan_equidistributions(
        catalog_stats(args.stats), _pattern_words(args.patterns), args.max_n, manifest
    )
    for c in report.cells:
        print(f"{_cell(c)} {report.annotations[c]}")
    for c in report.missing:
        print(f"MISSING {_cell(c)}")
    for c in report.extra:
        print(f"EXTRA {_cell(c)}")
    for c in report.contradicted:
        print(f"CONTRADICTED {_cell(c)}")
    print(f"{len(report.cells)} cells, {len(report.confirmed)} in manifest, "
          f"{len(report.missing)} missing, {len(report.extra)} extra")
    return EXIT_OK if report.consistent else EXIT_COUNTEREXAMPLE


def cmd_wilf(args) -> int:
    verifier = VerifierService(_distributions())
    partition = verifier.st_wilf_classes(args.stat, pattern_subsets(args.subsets), args.max_n)
    for members in partition.classes:
        print("{" + "} {".join(members) + "}")
    return EXIT_OK


def cmd_heads(args) -> int:
    verifier = VerifierService(_distributions())
    failed = False
    for check in verifier.check_head_closed_forms(args.max_n):
        print(f"S({check.family}) {'ok' if check.holds else 'DIFFERS at n = ' + str(check.mismatches)}")
        failed = failed or not check.holds
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def cmd_map(args) -> int:
    print(BijectionService().apply(args.name, args.input, inverse=args.inverse))
    return EXIT_OK


def cmd_cf(args) -> int:
    series = cf_truncate(get_cf_spec(args.which), args.order)
    print(render_series(series))
    return EXIT_OK


def cmd_genfunc(args) -> int:
    alpha = _alpha(args.alpha)
    if alpha_is_extension(alpha):
        logger.warning("[GENFUNC] negative coefficients; exponents may be negative")
    poly = genfunc_312(alpha, args.n)
    print(poly.render())
    marginal = poly.substitute({"t": 1, "u": 1, "v": 1}).value_counts("q")
    print(" ".join(f"{e}:{c}" for e, c in sorted(marginal.items())))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mahonia",
        description="Mahonian statistics over pattern-avoiding permutations",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", dest="log_level", default=None,
                        help="DEBUG, INFO, WARNING or ERROR (default from MAHONIA_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="distribution of a statistic over S_n(Π)")
    p.add_argument("--stat", required=True)
    p.add_argument("--avoid", default="")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marks", default=None, help="des,head,last,DB,DT,AB,AT,LRMin")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("equidist", help="compare two distributions for n = 1..max-n")
    p.add_argument("--stat1", required=True)
    p.add_argument("--avoid1", default="")
    p.add_argument("--stat2", required=True)
    p.add_argument("--avoid2", default="")
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    p.set_defaults(func=cmd_equidist)

    p = sub.add_parser("scan", help="find all equidistributed cells and diff against the manifest")
    p.add_argument("--stats", default="all")
    p.add_argument("--patterns", default="all3")
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    p.add_argument("--manifest", default=None)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("wilf", help="st-Wilf classes of pattern subsets of S_3")
    p.add_argument("--stat", required=True)
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    p.add_argument("--subsets", type=int, choices=(1, 2, 3), default=1)
    p.set_defaults(func=cmd_wilf)

    p = sub.add_parser("heads", help="check the head closed forms against enumeration")
    p.add_argument("--max-n", dest="max_n", type=int, required=True)
    p.set_defaults(func=cmd_heads)

    p = sub.add_parser("map", help="apply a registered bijection")
    p.add_argument("--name", required=True, choices=BijectionService().names())
    p.add_argument("--input", required=True)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("cf", help="truncate a continued fraction")
    p.add_argument("--which", required=True, choices=("cfrak1", "cfrak2"))
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("genfunc", help="linear statistic generating polynomial over S_n(312)")
    p.add_argument("--alpha", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_genfunc)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or get_settings().log_level)
    try:
        return args.func(args)
    except MahoniaError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
