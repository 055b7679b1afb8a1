"""Command-line front end.

    cobetween compute    --input edges.txt --measure cob --format json
    cobetween oracle     --input edges.txt --measure omega --format csv
    cobetween export-dot --input fixture:karate --measure cond --output karate.dot
    cobetween bench      --model er --sizes 100 200 400 800 --mean-degree 6
    cobetween fixtures   list | emit NAME

``--input fixture:NAME`` reads a bundled case-study network.
Exit codes: 0 ok, 2 invalid configuration, 3 unreadable or malformed
input, 4 oracle size guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .engine import BACKENDS, CentralityResult, compute_all, cond_matrix, corr_matrix
from .fixtures import NAMES as FIXTURE_NAMES, fixture_text, load_fixture
from .graph import EdgeListError, Graph, parse_edgelist
from .netgen import scaling_study
from .oracle import OracleSizeError, brute_centrality, build_routing_matrix, omega
from .pairs import PairMap

log = logging.getLogger("cobetween")

COMMANDS = ("compute", "oracle", "bench", "export-dot", "fixtures")
MEASURES = ("betweenness", "cob", "corr", "cond", "omega")
PAIRWISE = ("cob", "corr", "cond", "omega")
FORMATS = ("csv", "json", "dot")
MAX_PENWIDTH = 8.0
MAX_NODE_SIZE = 3.0

EXIT_OK, EXIT_CONFIG, EXIT_PARSE, EXIT_GUARD = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    weighted: bool | None = None
    measure: str = "cob"
    convention: str = "unordered"
    workers: int = 1
    output: str | None = None
    format: str | None = None
    tolerance: float = 0.0
    min_value: float = 0.0
    seed: int = 0
    force: bool = False
    backend: str | None = None
    fixture_action: str = "list"
    fixture_name: str | None = None
    model: str = "er"
    sizes: list[int] = field(default_factory=lambda: [100, 200, 400, 800])
    mean_degree: float = 6.0
    m: int = 2
    replicates: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.command == "export-dot":
            if self.format not in (None, "dot"):
                raise ConfigError("export-dot always writes DOT")
            self.format = "dot"
        if self.format is None:
            self.format = "json"
        if self.measure not in MEASURES:
            raise ConfigError(f"unknown measure {self.measure!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}")
        if self.convention not in ("unordered", "ordered"):
            raise ConfigError(f"unknown convention {self.convention!r}")
        if self.workers < 1:
            raise ConfigError("--workers must be positive")
        if self.tolerance < 0:
            raise ConfigError("--tolerance must be non-negative")
        if self.backend is not None and self.backend not in BACKENDS:
            raise ConfigError(f"backend {self.backend!r} unavailable (have {', '.join(BACKENDS)})")
        if self.command in ("compute", "oracle", "export-dot"):
            if not self.input:
                raise ConfigError("--input is required")
            if self.measure == "omega" and self.command != "oracle":
                raise ConfigError("--measure omega is only available from the oracle command")
            if self.format == "dot" and self.measure not in PAIRWISE:
                raise ConfigError("DOT output needs a pairwise measure")
        if self.command == "fixtures":
            if self.fixture_action not in ("list", "emit"):
                raise ConfigError("fixtures takes 'list' or 'emit NAME'")
            if self.fixture_action == "emit" and self.fixture_name not in FIXTURE_NAMES:
                raise ConfigError(f"unknown fixture {self.fixture_name!r}; available: {', '.join(FIXTURE_NAMES)}")
        if self.command == "bench" and self.model not in ("er", "ba", "tree"):
            raise ConfigError(f"unknown model {self.model!r}")


def load_graph(spec: str, weighted: bool | None) -> Graph:
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        if name not in FIXTURE_NAMES:
            raise EdgeListError(f"unknown fixture {name!r}")
        return load_fixture(name, weighted)
    text = Path(spec).read_text(encoding="utf-8")
    return parse_edgelist(text, weighted=bool(weighted))


# -- measure assembly -------------------------------------------------------

def _pair_measure(result: CentralityResult, measure: str) -> PairMap:
    if measure == "cob":
        return result.cobetweenness
    if measure == "corr":
        return corr_matrix(result)
    if measure == "cond":
        return cond_matrix(result)
    raise ValueError(measure)


def _header(cfg: RunConfig) -> list[str]:
    return [
        f"cobetween {__version__}",
        f"command={cfg.command} measure={cfg.measure} convention={cfg.convention}",
    ]


def to_csv(cfg: RunConfig, labels, betweenness, matrix: np.ndarray | None) -> str:
    buf = io.StringIO()
    for line in _header(cfg):
        buf.write(f"# {line}\n")
    if cfg.measure == "cond":
        buf.write("# entry (row u, column v) is C(u|v)\n")
    w = csv.writer(buf, lineterminator="\n")
    if matrix is None:
        w.writerow(["vertex", "betweenness"])
        for lab, b in zip(labels, betweenness):
            w.writerow([lab, repr(float(b))])
    else:
        w.writerow([""] + list(labels))
        for lab, row in zip(labels, matrix):
            w.writerow([lab] + [repr(float(x)) for x in row])
    return buf.getvalue()


def to_json(cfg: RunConfig, labels, betweenness, pairs) -> str:
    data = {
        "tool": f"cobetween {__version__}",
        "measure": cfg.measure,
        "convention": cfg.convention,
        "vertices": list(labels),
        "betweenness": [float(b) for b in betweenness],
    }
    if pairs is not None:
        data["pairs"] = [{"u": labels[u], "v": labels[v], "value": float(x)} for u, v, x in pairs]
    return json.dumps(data, indent=1) + "\n"


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(cfg: RunConfig, labels, betweenness, pairs, directed: bool) -> str:
    """One edge per pair above ``min_value``, pen width scaled so the max is 8.

    Directed output draws ``v -> u`` for the value C(u|v). For ``cob`` node
    size follows betweenness; vertices with zero betweenness get unit size.
    """
    pairs = [(u, v, x) for u, v, x in pairs if x > cfg.min_value]
    top = max((x for _, _, x in pairs), default=0.0)
    bmax = float(np.max(betweenness)) if len(betweenness) else 0.0
    kind, arrow = ("digraph", "->") if directed else ("graph", "--")
    lines = [f"// cobetween {__version__} measure={cfg.measure} convention={cfg.convention}"]
    lines.append(f"{kind} {cfg.measure} {{")
    lines.append("  node [shape=circle, fixedsize=true];")
    for i, lab in enumerate(labels):
        b = float(betweenness[i])
        if cfg.measure in ("cob", "omega") and b > 0 and bmax > 0:
            size = MAX_NODE_SIZE * b / bmax
        else:
            size = 1.0
        lines.append(f"  {_dot_id(lab)} [width={size:.6g}, betweenness={b:.10g}];")
    for u, v, x in pairs:
        pen = MAX_PENWIDTH * x / top if top > 0 else 0.0
        # cond maps store (u, v) -> C(u|v); the arc runs from v to u
        a, b = (v, u) if directed else (u, v)
        lines.append(f"  {_dot_id(labels[a])} {arrow} {_dot_id(labels[b])} [penwidth={pen:.6g}, value={x:.10g}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(cfg: RunConfig, g: Graph) -> str:
    labels = g.vertices
    if cfg.command == "oracle":
        result = brute_centrality(g, cfg.convention, force=cfg.force, tol=cfg.tolerance)
    else:
        result = compute_all(g, cfg.convention, workers=cfg.workers, tol=cfg.tolerance, backend=cfg.backend)
    b = result.betweenness

    if cfg.measure == "betweenness":
        return to_json(cfg, labels, b, None) if cfg.format == "json" else to_csv(cfg, labels, b, None)

    if cfg.measure == "omega":
        om = omega(build_routing_matrix(g, convention=cfg.convention, force=cfg.force))
        pm = PairMap.from_dense(om, symmetric=True)
        diag = np.diag(om)
        if cfg.format == "csv":
            return to_csv(cfg, labels, diag, om)
        if cfg.format == "json":
            return to_json(cfg, labels, diag, pm.items())
        return to_dot(cfg, labels, diag, pm.items(), directed=False)

    pm = _pair_measure(result, cfg.measure)
    if cfg.format == "csv":
        mat = pm.to_dense(g.n_v)
        return to_csv(cfg, labels, b, mat)
    if cfg.format == "json":
        return to_json(cfg, labels, b, pm.items())
    return to_dot(cfg, labels, b, pm.items(), directed=not pm.symmetric)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG

    if cfg.command == "fixtures":
        if cfg.fixture_action == "list":
            _emit(cfg, "".join(f"{name}\n" for name in FIXTURE_NAMES))
        else:
            _emit(cfg, fixture_text(cfg.fixture_name))
        return EXIT_OK

    if cfg.command == "bench":
        params = {"mean_degree": cfg.mean_degree} if cfg.model == "er" else {"m": cfg.m}
        try:
            report = scaling_study(cfg.model, cfg.sizes, params, seed=cfg.seed,
                                   workers=cfg.workers, replicates=cfg.replicates)
        except ValueError as exc:
            log.error("%s", exc)
            return EXIT_CONFIG
        _emit(cfg, report.to_json() + "\n")
        return EXIT_OK

    try:
        g = load_graph(cfg.input, cfg.weighted)
    except (EdgeListError, OSError, UnicodeDecodeError) as exc:
        log.error("cannot read %s: %s", cfg.input, exc)
        return EXIT_PARSE
    try:
        text = render(cfg, g)
    except OracleSizeError as exc:
        log.error("%s", exc)
        return EXIT_GUARD
    _emit(cfg, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cobetween",
        description="Betweenness, co-betweenness and conditional betweenness of undirected graphs.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", help="edge-list path, or fixture:NAME")
        p.add_argument("--weighted", action="store_true", default=None,
                       help="read a third weight column (fixtures use their own default)")
        p.add_argument("--measure", default="cob", help="|".join(MEASURES))
        p.add_argument("--convention", default="unordered", help="unordered|ordered")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--output", help="write here instead of stdout")
        p.add_argument("--format", default=None, help="csv|json|dot (default json)")
        p.add_argument("--min-value", type=float, default=0.0, help="DOT edge threshold")
        p.add_argument("--tolerance", type=float, default=0.0, help="weighted tie tolerance")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--backend", default=None, help="|".join(BACKENDS))

    for name in ("compute", "export-dot"):
        common(sub.add_parser(name, formatter_class=argparse.ArgumentDefaultsHelpFormatter))
    p = sub.add_parser("oracle", formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    common(p)
    p.add_argument("--force", action="store_true", help="bypass the oracle size guard")

    p = sub.add_parser("bench", formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--model", default="er", help="er|ba|tree")
    p.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    p.add_argument("--mean-degree", type=float, default=6.0)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")

    p = sub.add_parser("fixtures")
    p.add_argument("action", choices=["list", "emit"])
    p.add_argument("name", nargs="?")
    p.add_argument("--output")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    opts = vars(args)
    opts.pop("verbose")
    if args.command == "fixtures":
        opts["fixture_action"] = opts.pop("action")
        opts["fixture_name"] = opts.pop("name")
    opts["min_value"] = opts.pop("min_value", 0.0)
    return run(RunConfig(**opts))


if __name__ == "__main__":
    sys.exit(main())
