"""Command-line surface: analyze, graph, verify, count.

Exit codes: 0 success, 1 usage error, 2 inconclusive under --strict
(stabilization not reached), 3 internal consistency failure (a formula
disagrees with its oracle, or the verdict triangle fails to close).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import warnings

from . import analysis, counting, rauzy
from .errors import PalrichError, UnstableIndexWarning
from .factors import DEFAULT_PREFIX_CAP, FactorIndex, build_index, stabilized_prefix
from .generators import REGISTRY, WordFamily, get_family
from .palindromes import is_rich_incremental
from .words import Word

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INCONSISTENT = 3


class UsageError(PalrichError):
    pass


@dataclasses.dataclass
class RunConfig:
    command: str
    word: str | None
    generator: str | None
    generator_params: dict
    n_max: int
    prefix_cap: int
    fmt: str
    out: str | None
    strict: bool

    def __post_init__(self):
        if self.command == "count":
            if self.word is not None or self.generator is not None:
                raise UsageError("count takes no word source")
        else:
            if (self.word is None) == (self.generator is None):
                raise UsageError("exactly one of --word or --generator is required")
            if self.word is not None and not self.word:
                raise UsageError("the literal word must be non-empty")
        if self.n_max < 1:
            raise UsageError("--n-max must be at least 1")
        if self.prefix_cap < 4 * (self.n_max + 1):
            raise UsageError(
                f"prefix cap {self.prefix_cap} is below 4*(n_max+1) = "
                f"{4 * (self.n_max + 1)}"
            )


def _default_cap() -> int:
    env = os.environ.get("PALRICH_MAX_PREFIX")
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise UsageError(f"PALRICH_MAX_PREFIX must be an integer, got {env!r}")
        if cap < 8:
            raise UsageError("PALRICH_MAX_PREFIX is too small")
        return cap
    return DEFAULT_PREFIX_CAP


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family(cfg: RunConfig) -> WordFamily:
    return get_family(cfg.generator, **cfg.generator_params)


def _source_payload(cfg: RunConfig) -> dict:
    if cfg.word is not None:
        return {"kind": "literal", "word": cfg.word}
    return {
        "kind": "generator",
        "name": cfg.generator,
        "params": {k: v for k, v in cfg.generator_params.items()},
    }


def _index_for(cfg: RunConfig, depth_orders: int) -> tuple[FactorIndex, Word]:
    """Index deep enough for graphs at each order up to depth_orders."""
    if cfg.word is not None:
        w = Word.parse(cfg.word)
        n_idx = min(depth_orders + 1, len(w) - 1)
        if n_idx < 1:
            raise UsageError("the literal word is too short to index")
        return build_index(w, n_idx), w
    family = _family(cfg)
    if family.exact_sets is not None:
        sets = family.exact_sets(depth_orders + 2)
        sample = family.produce(min(cfg.prefix_cap, analysis.RICHNESS_SAMPLE_CAP))
        return FactorIndex.from_sets(sample.alphabet, sets, sample), sample
    sp = stabilized_prefix(family.produce, depth_orders + 1, cfg.prefix_cap)
    return sp.index, sp.word


# -- analyze -----------------------------------------------------------------


def cmd_analyze(cfg: RunConfig) -> int:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnstableIndexWarning)
        idx, sample = _index_for(cfg, cfg.n_max)
        n_max = min(cfg.n_max, idx.n_max - 1)
        prof = analysis.profile_from_index(idx, n_max)
        rich = is_rich_incremental(
            sample[: min(len(sample), analysis.RICHNESS_SAMPLE_CAP)]
        )
        rows = []
        for n in range(n_max + 1):
            right = idx.right_extensions(n)
            left = idx.left_extensions(n)
            rs = sum(1 for u in idx.factor_set(n) if len(right[u]) >= 2)
            ls = sum(1 for u in idx.factor_set(n) if len(left[u]) >= 2)
            bis = sum(
                1
                for u in idx.factor_set(n)
                if len(right[u]) >= 2 and len(left[u]) >= 2
            )
            rows.append(
                {
                    "n": n,
                    "C": prof.C[n],
                    "P": prof.P[n],
                    "slack": prof.slack[n],
                    "right_special": rs,
                    "left_special": ls,
                    "bispecial": bis,
                    "stabilized": prof.order_stabilized(n),
                }
            )
    payload = {
        "report": "analyze",
        "source": _source_payload(cfg),
        "n_max": n_max,
        "stable": prof.stable,
        "exact": prof.exact,
        "reversal_closed": prof.reversal_closed,
        "closure_witness": prof.closure_witness.text if prof.closure_witness else None,
        "richness": {
            "rich": rich.rich,
            "defect": rich.defect,
            "first_violation_prefix": rich.first_violation_prefix,
            "witness": [w.text for w in rich.witness] if rich.witness else None,
        },
        "rows": rows,
    }
    if cfg.fmt == "json":
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    elif cfg.fmt == "csv":
        lines = ["n,C,P,slack,right_special,left_special,bispecial,stabilized,rich"]
        for r in rows:
            lines.append(
                f"{r['n']},{r['C']},{r['P']},{r['slack']},{r['right_special']},"
                f"{r['left_special']},{r['bispecial']},{r['stabilized']},{rich.rich}"
            )
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        lines = [
            f"source: {payload['source']}",
            f"stable={prof.stable} exact={prof.exact} "
            f"reversal_closed={prof.reversal_closed}",
            f"rich={rich.rich} defect={rich.defect}",
            f"{'n':>4} {'C':>8} {'P':>6} {'slack':>6} {'special(r/l/bi)':>16}",
        ]
        for r in rows:
            special = f"{r['right_special']}/{r['left_special']}/{r['bispecial']}"
            flag = "" if r["stabilized"] else "  (unstable)"
            lines.append(
                f"{r['n']:>4} {r['C']:>8} {r['P']:>6} {r['slack']:>6} "
                f"{special:>16}{flag}"
            )
        _emit("\n".join(lines) + "\n", cfg.out)
    if cfg.strict and not prof.stable:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# -- graph -------------------------------------------------------------------


def cmd_graph(cfg: RunConfig, n: int, tier: str) -> int:
    if n < 0:
        raise UsageError("--n must be non-negative")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UnstableIndexWarning)
        idx, _ = _index_for(cfg, n)
        g = rauzy.build_rauzy(idx, n)
        if tier == "raw":
            text = rauzy.rauzy_dot(g)
        elif tier == "reduced":
            text = rauzy.reduced_dot(rauzy.reduce(g), g.alphabet)
        elif tier == "super":
            sg, _facts = rauzy.super_reduce(rauzy.reduce(g))
            text = rauzy.super_dot(sg, g.alphabet)
        else:
            raise UsageError(f"unknown tier {tier!r}")
    _emit(text, cfg.out)
    if cfg.strict and not idx.stable:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# -- verify ------------------------------------------------------------------


def _verify_literal(cfg: RunConfig) -> int:
    w = Word.parse(cfg.word)
    report = analysis.theorem2_check(w)
    payload = {
        "report": "verify-theorem2",
        "word": cfg.word,
        "properties": {
            "count": report.count_ok,
            "returns": report.returns_ok,
            "identity": report.identity_ok,
        },
        "agree": report.agree,
        "identity_rows": [list(row) for row in report.identity_rows],
    }
    if cfg.fmt == "json":
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    else:
        lines = [
            f"word: {cfg.word}",
            f"palindrome count = |w|+1: {report.count_ok}",
            f"complete returns palindromic: {report.returns_ok}",
            f"complexity identity on 0..|w|: {report.identity_ok}",
            f"three-way agreement: {report.agree}",
        ]
        _emit("\n".join(lines) + "\n", cfg.out)
    return EXIT_OK if report.agree else EXIT_INCONSISTENT


def _verify_generator(cfg: RunConfig) -> int:
    family = _family(cfg)
    report = analysis.theorem1_experiment(
        family, cfg.n_max, prefix_cap=cfg.prefix_cap
    )
    problems = report.discrepancies()
    payload = {
        "report": "verify-theorem1",
        "source": _source_payload(cfg),
        "n_max": report.n_max,
        "stable": report.stable,
        "exact": report.exact,
        "prefix_length": report.prefix_length,
        "closure": {
            "ok": report.closure_ok,
            "witness": report.closure_witness.text
            if report.closure_witness
            else None,
        },
        "richness": {
            "incremental": report.richness.incremental.rich,
            "by_count": report.richness.by_count,
            "by_returns": report.richness.by_returns.rich,
            "agree": report.richness.agree,
        },
        "verdicts": {
            "rich": report.richness.rich,
            "equality": report.equality_all,
            "conditions": report.conditions_all,
            "triangle_consistent": report.triangle_consistent,
        },
        "orders": [
            {
                "n": r.n,
                "C": r.C_n,
                "P": r.P_n,
                "slack": r.slack,
                "equality": r.equality,
                "condition1": r.condition1,
                "condition2": r.condition2,
                "stabilized": r.stabilized,
                "periodic_route": r.periodic_route,
            }
            for r in report.orders
        ],
        "discrepancies": list(problems),
    }
    if cfg.fmt == "json":
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    else:
        lines = [
            f"source: {report.description}",
            f"stable={report.stable} exact={report.exact} "
            f"prefix={report.prefix_length}",
            f"closure: {report.closure_ok}"
            + (
                f" (witness {report.closure_witness.text!r}/"
                f"{report.closure_witness.reversed().text!r})"
                if report.closure_witness
                else ""
            ),
            f"rich={report.richness.rich} equality={report.equality_all} "
            f"conditions={report.conditions_all}",
            f"triangle consistent: {report.triangle_consistent}",
        ]
        for problem in problems:
            lines.append(f"discrepancy: {problem}")
        _emit("\n".join(lines) + "\n", cfg.out)
    if report.degraded:
        return EXIT_INCONCLUSIVE if cfg.strict else EXIT_OK
    if problems:
        return EXIT_INCONSISTENT
    if cfg.strict and not report.stable:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.word is not None:
        return _verify_literal(cfg)
    return _verify_generator(cfg)


# -- count -------------------------------------------------------------------

ORACLE_LIMIT = 14


def cmd_count(cfg: RunConfig, kind: str, alphabet_size: int) -> int:
    n_max = cfg.n_max
    oracle_checked_to = None
    if kind == "sturmian":
        table = counting.sturmian_table(n_max)
        oracle_checked_to = min(n_max, ORACLE_LIMIT)
        for n in range(oracle_checked_to + 1):
            if len(counting.enumerate_balanced(n)) != table.values[n]:
                _emit(f"formula/oracle mismatch at n={n}\n", None)
                return EXIT_INCONSISTENT
    elif kind == "sturmian-palindrome":
        table = counting.sturmian_palindrome_table(n_max)
        oracle_checked_to = min(n_max, ORACLE_LIMIT)
        for n in range(oracle_checked_to + 1):
            if counting.sturmian_palindrome_enumeration_oracle(n) != table.values[n]:
                _emit(f"formula/oracle mismatch at n={n}\n", None)
                return EXIT_INCONSISTENT
    elif kind == "balanced-oracle":
        table = counting.balanced_oracle_table(n_max)
    elif kind == "rich":
        table = counting.rich_table(alphabet_size, n_max)
        oracle_checked_to = min(n_max, 12)
        for n in range(oracle_checked_to + 1):
            if counting.count_rich_naive(alphabet_size, n) != table.values[n]:
                _emit(f"enumeration/sweep mismatch at n={n}\n", None)
                return EXIT_INCONSISTENT
    else:
        raise UsageError(f"unknown counting kind {kind!r}")
    if cfg.fmt == "json":
        payload = json.loads(table.to_json())
        payload["report"] = "count"
        payload["oracle_checked_to"] = oracle_checked_to
        _emit(json.dumps(payload, indent=2) + "\n", cfg.out)
    else:
        _emit(table.to_csv(), cfg.out)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palrich",
        description="Palindromic richness toolkit: complexity profiles, "
        "Rauzy graphs, richness verdicts, counting tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_source(p):
        p.add_argument("--word", help="literal word over a-z")
        p.add_argument(
            "--generator", choices=sorted(REGISTRY), help="named word family"
        )
        p.add_argument("--k", type=int, help="parameter for parametrized families")
        p.add_argument("--block", help="repeating block for the periodic family")
        p.add_argument("--directive", help="directive string for episturmian")
        p.add_argument("--morphism", help="inline morphism, e.g. 'a->ab,b->a'")
        p.add_argument("--seed", help="seed letter for the morphic family")
        p.add_argument("--n-max", type=int, default=30)
        p.add_argument("--prefix-cap", type=int, default=None)
        p.add_argument("--out", help="write output to this path")
        p.add_argument("--strict", action="store_true", dest="strict")

    p_analyze = sub.add_parser("analyze", help="per-order complexity table")
    add_source(p_analyze)
    p_analyze.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p_graph = sub.add_parser("graph", help="export a Rauzy graph tier as DOT")
    add_source(p_graph)
    p_graph.add_argument("--n", type=int, required=True, help="graph order")
    p_graph.add_argument("--tier", choices=["raw", "reduced", "super"], default="raw")

    p_verify = sub.add_parser("verify", help="run the theorem checks")
    add_source(p_verify)
    p_verify.add_argument("--format", choices=["text", "json"], default="text")

    p_count = sub.add_parser("count", help="emit counting tables")
    add_source(p_count)
    p_count.add_argument(
        "--kind",
        choices=["sturmian", "sturmian-palindrome", "rich", "balanced-oracle"],
        required=True,
    )
    p_count.add_argument("--alphabet", type=int, default=2)
    p_count.add_argument("--format", choices=["csv", "json"], default="csv")
    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    params = {}
    for key in ("k", "block", "directive", "morphism", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return RunConfig(
        command=args.command,
        word=args.word,
        generator=args.generator,
        generator_params=params,
        n_max=args.n_max,
        prefix_cap=args.prefix_cap if args.prefix_cap else _default_cap(),
        fmt=getattr(args, "format", "text"),
        out=args.out,
        strict=args.strict,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        if args.command == "analyze":
            return cmd_analyze(cfg)
        if args.command == "graph":
            return cmd_graph(cfg, args.n, args.tier)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "count":
            return cmd_count(cfg, args.kind, args.alphabet)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PalrichError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
