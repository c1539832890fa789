"""``collapse-lab`` command line.

Every command writes one JSON report (stdout, or ``--json PATH``) and a short
human summary on stderr. Exit status: 0 success, 1 invalid input, 2 when a
search ran out of budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .collapse import (
    DEFAULT_BUDGET,
    Undecided,
    collapsibility_with_certificate,
    greedy_collapse,
    is_d_collapsible,
)
from .complex import complex_to_json, make_complex, parse_facets
from .extremal import verify_extremal_complexes, verify_lemma
from .hypergraph import cov_complex, independence_complex, int_complex, read_graph, read_hypergraph
from .mes import best_ordering, d_of_ordering, d_prime, k_graph

COMMANDS = (
    "build-cov", "build-int", "build-ind", "mes-bound", "d-prime", "k-graph",
    "collapse", "collapsibility", "verify-lemma", "verify-extremal",
)
ORDERINGS = ("lex", "given", "search")


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    r: Optional[int] = None
    p: Optional[int] = None
    t: Optional[int] = None
    d: Optional[int] = None
    ground: Optional[int] = None
    parts: Optional[list[int]] = None
    lemma: Optional[str] = None
    budget: int = DEFAULT_BUDGET
    ordering: str = "lex"
    greedy: bool = False
    output: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.budget <= 0:
            raise ValueError("--budget must be positive")
        if self.ordering not in ORDERINGS:
            raise ValueError(f"--ordering must be one of {ORDERINGS}")
        needs_file = self.command not in ("verify-lemma", "verify-extremal")
        if needs_file and not self.input_path:
            raise ValueError(f"{self.command} needs an input file")
        if self.command == "build-cov" and (self.p is None or self.p < 0):
            raise ValueError("build-cov needs -p >= 0")
        if self.t is not None and self.t < 0:
            raise ValueError("-t must be >= 0")
        if self.command == "collapse" and (self.d is None or self.d < 0):
            raise ValueError("collapse needs -d >= 0")
        if self.command == "verify-extremal":
            r, p, t = self.r, self.p or 1, self.t or 0
            if r is None or r < 1 or p < 1:
                raise ValueError("verify-extremal needs -r >= 1 and -p >= 1")
            if t and t > r - 1:
                raise ValueError("hypothesis violated: need t <= r - 1")


def _read_facets(path: str) -> list:
    return parse_facets(Path(path).read_text())


def _threshold(config: RunConfig) -> int:
    return 1 if config.t is None else config.t


def _build(config: RunConfig) -> tuple[dict, str]:
    if config.command == "build-ind":
        X = independence_complex(read_graph(config.input_path))
    else:
        H = read_hypergraph(config.input_path)
        if config.command == "build-cov":
            X = cov_complex(H, config.p, _threshold(config))
        else:
            X = int_complex(H, _threshold(config))
    report = complex_to_json(X)
    return report, f"{len(report['facets'])} facets on {len(report['vertices'])} vertices"


def _mes_bound(config: RunConfig) -> tuple[dict, str]:
    given = _read_facets(config.input_path)
    X = make_complex(given)
    if config.ordering == "search":
        d_mes, ordering = best_ordering(X)
    else:
        ordering = X.facets if config.ordering == "lex" else given
        d_mes = d_of_ordering(X, ordering)
    k, witness = d_prime(X)
    report = {
        "d_mes": d_mes,
        "ordering_mode": config.ordering,
        "ordering": [list(s) for s in ordering],
        "d_prime": k,
        "witness": {"vertices": list(witness.vertices), "facets": [list(f) for f in witness.facets]},
    }
    return report, f"d(X, ordering) = {d_mes}, d'(X) = {k}"


def _d_prime(config: RunConfig) -> tuple[dict, str]:
    X = make_complex(_read_facets(config.input_path))
    k, witness = d_prime(X)
    report = {
        "d_prime": k,
        "witness": {"vertices": list(witness.vertices), "facets": [list(f) for f in witness.facets]},
    }
    return report, f"d'(X) = {k}"


def _k_graph(config: RunConfig) -> tuple[dict, str]:
    G = read_graph(config.input_path)
    k, witness = k_graph(G)
    n = G.number_of_nodes()
    report = {"k_graph": k, "n": n, "witness": {"v": list(witness.v), "u": list(witness.u)}}
    return report, f"k(G) = {k} on {n} vertices"


def _collapse(config: RunConfig) -> tuple[dict, str]:
    X = make_complex(_read_facets(config.input_path))
    if config.greedy:
        outcome = greedy_collapse(X, config.d)
        report = {"d": config.d, "method": "greedy", "collapsed": outcome.collapsed}
        if outcome.collapsed:
            report["certificate"] = outcome.certificate.to_json()
        else:
            report["stuck"] = complex_to_json(outcome.stuck)
        return report, f"greedy {config.d}-collapse: {'collapsed' if outcome.collapsed else 'stuck'}"
    ok, cert = is_d_collapsible(X, config.d, config.budget)
    report = {"d": config.d, "method": "exact", "collapsible": ok,
              "certificate": cert.to_json() if cert else None}
    return report, f"{config.d}-collapsible: {ok}"


def _collapsibility(config: RunConfig) -> tuple[dict, str]:
    X = make_complex(_read_facets(config.input_path))
    c, _ = collapsibility_with_certificate(X, config.budget)
    return {"collapsibility": c}, f"collapsibility = {c}"


def _verify_lemma(config: RunConfig) -> tuple[dict, str]:
    lemma = (config.lemma or "").replace("-", "_")
    report = verify_lemma(
        lemma,
        r=1 if config.r is None else config.r,
        p=1 if config.p is None else config.p,
        t=config.t or 0,
        ground_size=config.ground,
        part_sizes=config.parts,
        budget=config.budget,
    )
    return report, f"{lemma}: k_found={report['k_found']} bound={report['bound']} ok={report['ok']}"


def _verify_extremal(config: RunConfig) -> tuple[dict, str]:
    report = verify_extremal_complexes(config.r, config.p or 1, config.t or 0, budget=config.budget)
    lines = [f"{c['name']}: dimension {c['dimension']} (expected {c['expected_dimension']}), sharp={c['sharp']}"
             for c in report["checks"]]
    return report, "\n".join(lines)


HANDLERS = {
    "build-cov": _build,
    "build-int": _build,
    "build-ind": _build,
    "mes-bound": _mes_bound,
    "d-prime": _d_prime,
    "k-graph": _k_graph,
    "collapse": _collapse,
    "collapsibility": _collapsibility,
    "verify-lemma": _verify_lemma,
    "verify-extremal": _verify_extremal,
}


def run(config: RunConfig) -> tuple[int, dict]:
    try:
        config.validate()
        report, summary = HANDLERS[config.command](config)
    except Undecided as exc:
        return 2, {"undecided": True, "reason": str(exc)}
    except (ValueError, OSError) as exc:
        return 1, {"error": str(exc)}
    print(summary, file=sys.stderr)
    return 0, report


def _parts(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collapse-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, file_help=None):
        sp = sub.add_parser(name, help=help_text)
        if file_help:
            sp.add_argument("input_path", metavar="FILE", help=file_help)
        sp.add_argument("--json", dest="output", metavar="PATH", help="write the report here instead of stdout")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node cap")
        return sp

    hyper = "hypergraph file: one edge per line, optional '#parts: 1-3,4-6' header"
    cplx = "complex file: one facet per line, or '#void' / '#empty'"
    graph = "graph file: 'u v' edge lines, lone 'v' for isolated vertices"

    sp = add("build-cov", "covering complex of a hypergraph", hyper)
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-t", type=int, default=None, help="transversal threshold (default 1)")
    sp = add("build-int", "intersection complex of a hypergraph", hyper)
    sp.add_argument("-t", type=int, default=None, help="intersection threshold (default 1)")
    add("build-ind", "independence complex of a graph", graph)
    sp = add("mes-bound", "minimal exclusion sequence bound", cplx)
    sp.add_argument("--ordering", choices=ORDERINGS, default="lex")
    add("d-prime", "exact d'(X) with a witness", cplx)
    add("k-graph", "exact k(G) with a witness", graph)
    sp = add("collapse", "decide d-collapsibility and print a certificate", cplx)
    sp.add_argument("-d", type=int, required=True)
    sp.add_argument("--greedy", action="store_true", help="greedy heuristic instead of exact search")
    add("collapsibility", "least d with X d-collapsible", cplx)
    sp = add("verify-lemma", "exhaustive set-pair search on a small ground set")
    sp.add_argument("lemma", choices=("frankl-kalai", "furedi", "lnp"))
    sp.add_argument("-r", type=int, default=1)
    sp.add_argument("-p", type=int, default=1)
    sp.add_argument("-t", type=int, default=0)
    sp.add_argument("-g", "--ground", type=int, default=None)
    sp.add_argument("--parts", type=_parts, default=None, help="part sizes for lnp, e.g. 2,2")
    sp = add("verify-extremal", "rebuild and check the sharpness examples")
    sp.add_argument("-r", type=int, required=True)
    sp.add_argument("-p", type=int, default=1)
    sp.add_argument("-t", type=int, default=0)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(**{k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__})
    status, report = run(config)
    text = json.dumps(report, sort_keys=True) + "\n"
    if config.output and status != 1:
        Path(config.output).write_text(text)
    else:
        sys.stdout.write(text)
    if status:
        print(report.get("error") or report.get("reason"), file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
