"""Command line entry point: ``semclasses <stage> [options]``.

Exit status is 0 on success, 1 for usage or configuration problems and 2
for bad input data. Outputs of a failed run are removed.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import os
import sys
from pathlib import Path

from .classes import LabelingParams, SemanticClass, read_classes, write_classes
from .classes import induce_classes
from .denoise import enhance, read_hypernym_db, write_relations
from .ego import CoherenceParams, read_ego_networks, write_ego_networks
from .global_graph import GlobalGraphParams, read_noun_lexicon
from .gold import hpc_avg, read_gold, write_report
from .graph import CwParams
from .pipeline import coherent_ego_networks, global_graph, label_classes
from .sense_inventory import ParseError, read_inventory
from .taxonomy import DomainSpec, domain_classes, expand_vocabulary, induce_taxonomy, read_seeds, write_semeval

log = logging.getLogger("semclasses")

STAGES = ("ego", "cluster", "label", "denoise", "taxonomy", "eval", "pipeline")

# Defaults follow the best coarse-grained configuration (t=100, log, nouns, tf-idf).
DEFAULTS = {
    "seed": 0,
    "threads": 1,
    "strict": False,
    "max_iterations": 20,
    "coherence": 0.8,
    "n_limit": 200,
    "min_weight": 100.0,
    "edge_scaling": "log",
    "nouns_only": True,
    "noun_lexicon": None,
    "weighting": "tfidf",
    "top_n": 5,
    "k_common": 5,
    "root": None,
    "inventory": None,
    "ego_networks": None,
    "classes": None,
    "hypernym_db": None,
    "seeds": None,
    "gold_synsets": None,
    "gold_edges": None,
    "graph_dump": None,
    "output": None,
}
PATH_KEYS = {
    "noun_lexicon", "inventory", "ego_networks", "classes", "hypernym_db",
    "seeds", "gold_synsets", "gold_edges", "graph_dump", "output",
}
OUTPUT_KEYS = {"output", "graph_dump"}
# Keys left out of the manifest because they cannot change results.
NOT_ECHOED = {"threads"}

REQUIRED = {
    "ego": ("inventory", "output"),
    "cluster": ("ego_networks", "output"),
    "label": ("classes", "inventory", "output"),
    "denoise": ("classes", "hypernym_db", "output"),
    "taxonomy": ("classes", "inventory", "seeds", "root", "output"),
    "eval": ("classes", "gold_synsets", "gold_edges", "output"),
    "pipeline": ("inventory", "output"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _bool(text: str) -> bool:
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _convert(key: str, value):
    default = DEFAULTS[key]
    if isinstance(default, bool):
        return _bool(value)
    if isinstance(default, int):
        return int(value)
    if isinstance(default, float):
        return float(value)
    return str(value)


def read_config(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment. Relative paths are taken
    relative to the config file."""
    base = Path(path).parent
    out = {}
    with open(path, encoding="utf-8") as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in DEFAULTS:
                raise UsageError(f"{path}:{lineno}: unknown or malformed setting {line!r}")
            try:
                value = _convert(key, value.strip())
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: {exc}") from None
            if key in PATH_KEYS:
                value = str(base / value)
            out[key] = value
    return out


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = _Parser(add_help=False)
    common.add_argument("--config", default=S, help="key = value settings file; flags take precedence")
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--threads", type=int, default=S, help="worker processes")
    common.add_argument("--strict", action=argparse.BooleanOptionalAction, default=S,
                        help="fail on the first malformed input line")
    common.add_argument("--max-iterations", type=int, default=S, help="Chinese Whispers iterations")
    common.add_argument("--output", "-o", default=S)
    common.add_argument("-v", "--verbose", action="store_true", default=S)

    def opt(p, *names, **kw):
        p.add_argument(*names, default=S, **kw)

    parser = _Parser(prog="semclasses", description="Sense-aware semantic classes and hypernym denoising.")
    sub = parser.add_subparsers(dest="stage", required=True, parser_class=_Parser)
    parsers = {name: sub.add_parser(name, parents=[common]) for name in STAGES}

    for name in ("ego", "label", "taxonomy", "pipeline"):
        opt(parsers[name], "--inventory")
    for name in ("ego", "pipeline"):
        opt(parsers[name], "--coherence", type=float, help="min. share of nodes in the ego's cluster")
        opt(parsers[name], "--n-limit", type=int, help="neighbours followed per list; 0 = all")
    opt(parsers["cluster"], "--ego-networks")
    for name in ("cluster", "pipeline"):
        p = parsers[name]
        opt(p, "--min-weight", type=float)
        opt(p, "--edge-scaling", choices=("count", "log"))
        opt(p, "--nouns-only", action=argparse.BooleanOptionalAction)
        opt(p, "--noun-lexicon")
        opt(p, "--graph-dump")
    for name in ("label", "denoise", "taxonomy", "eval"):
        opt(parsers[name], "--classes")
    for name in ("label", "pipeline"):
        opt(parsers[name], "--weighting", choices=("tf", "tfidf"))
        opt(parsers[name], "--top-n", type=int)
    for name in ("denoise", "pipeline"):
        opt(parsers[name], "--hypernym-db")
    for name in ("taxonomy", "pipeline"):
        opt(parsers[name], "--seeds")
        opt(parsers[name], "--root")
        opt(parsers[name], "--k-common", type=int)
    for name in ("eval", "pipeline"):
        opt(parsers[name], "--gold-synsets")
        opt(parsers[name], "--gold-edges")
    return parser


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fp:
        for block in iter(lambda: fp.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


class Run:
    """Tracks the files a run creates so a failed run can remove them."""

    def __init__(self, stage: str, cfg: dict):
        self.stage = stage
        self.cfg = cfg
        self.created: list[Path] = []
        self.inputs: list[str] = []

    def input(self, key: str):
        path = self.cfg[key]
        if path not in self.inputs:
            self.inputs.append(path)
        return path

    def open(self, path):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.created.append(path)
        return open(path, "w", encoding="utf-8", newline="\n")

    def cleanup(self) -> None:
        for path in reversed(self.created):
            try:
                path.unlink()
            except FileNotFoundError:
                pass
        out = self.cfg.get("output")
        if self.stage == "pipeline" and out and os.path.isdir(out) and not os.listdir(out):
            os.rmdir(out)

    def write_manifest(self) -> None:
        out = Path(self.cfg["output"])
        path = out.parent / (out.name + ".manifest.tsv")
        rows = [f"stage\t{self.stage}"]
        for key in sorted(self.cfg):
            if key in NOT_ECHOED or key in PATH_KEYS:
                continue
            rows.append(f"config\t{key}\t{self.cfg[key]}")
        for p in self.inputs:
            rows.append(f"input\t{p}\t{_sha256(p)}")
        for p in self.created:
            rows.append(f"output\t{p}\t{_sha256(p)}")
        with self.open(path) as fp:
            fp.write("\n".join(rows) + "\n")


def _params(cfg: dict):
    cw = CwParams(cfg["max_iterations"], cfg["seed"])
    return {
        "cw": cw,
        "coherence": CoherenceParams(cfg["coherence"], cw),
        "graph": GlobalGraphParams(cfg["min_weight"], cfg["edge_scaling"], cfg["nouns_only"]),
        "labeling": LabelingParams(cfg["weighting"], cfg["top_n"]),
        "n_limit": cfg["n_limit"] or None,
    }


def _load_inventory(run: Run):
    inv = read_inventory(run.input("inventory"), strict=run.cfg["strict"])
    for err in inv.parse_errors:
        log.warning("skipped %s", err)
    log.info("inventory: %d senses", len(inv))
    return inv


def _cluster(run: Run, nets, prm) -> list[SemanticClass]:
    cfg = run.cfg
    nouns = None
    if cfg["nouns_only"]:
        nouns = read_noun_lexicon(run.input("noun_lexicon"))
    g = global_graph(nets, prm["graph"], nouns)
    log.info("global graph: %d nodes, %d edges", len(g), g.num_edges())
    if cfg["graph_dump"]:
        with run.open(cfg["graph_dump"]) as fp:
            g.write_tsv(fp)
    classes = induce_classes(g, prm["cw"])
    log.info("%d classes", len(classes))
    return classes


def _write_classes(run: Run, path, classes) -> None:
    with run.open(path) as fp:
        write_classes(fp, classes)


def _denoise(run: Run, classes, path) -> None:
    db = read_hypernym_db(run.input("hypernym_db"), strict=run.cfg["strict"])
    for err in db.parse_errors:
        log.warning("skipped %s", err)
    with run.open(path) as fp:
        write_relations(fp, enhance(db, classes))


def _taxonomy(run: Run, classes, inv, path) -> None:
    spec = DomainSpec(run.cfg["root"], read_seeds(run.input("seeds")), run.cfg["k_common"])
    vocab = expand_vocabulary(spec, inv)
    domain = domain_classes(classes, vocab)
    log.info("domain: %d seeds, %d expanded terms, %d classes", len(spec.seeds), len(vocab), len(domain))
    with run.open(path) as fp:
        write_semeval(fp, induce_taxonomy(domain, spec))


def _eval(run: Run, classes, path) -> None:
    gold = read_gold(run.input("gold_synsets"), run.input("gold_edges"))
    avg, scores = hpc_avg(gold, classes)
    log.info("hpc_avg %.6f", avg)
    with run.open(path) as fp:
        write_report(fp, avg, scores)


def execute(run: Run) -> None:
    cfg = run.cfg
    prm = _params(cfg)
    threads = cfg["threads"]
    stage = run.stage
    out = cfg["output"]

    if stage == "ego":
        inv = _load_inventory(run)
        nets = coherent_ego_networks(inv, prm["coherence"], prm["n_limit"], threads)
        with run.open(out) as fp:
            n = write_ego_networks(fp, nets)
        log.info("%d coherent ego networks", n)
    elif stage == "cluster":
        with open(run.input("ego_networks"), encoding="utf-8") as fp:
            classes = _cluster(run, read_ego_networks(fp, source=cfg["ego_networks"]), prm)
        _write_classes(run, out, classes)
    elif stage == "label":
        classes = read_classes(run.input("classes"))
        inv = _load_inventory(run)
        _write_classes(run, out, label_classes(classes, inv, prm["labeling"], threads))
    elif stage == "denoise":
        _denoise(run, read_classes(run.input("classes")), out)
    elif stage == "taxonomy":
        classes = read_classes(run.input("classes"))
        _taxonomy(run, classes, _load_inventory(run), out)
    elif stage == "eval":
        _eval(run, read_classes(run.input("classes")), out)
    elif stage == "pipeline":
        outdir = Path(out)
        inv = _load_inventory(run)
        nets = coherent_ego_networks(inv, prm["coherence"], prm["n_limit"], threads)
        with run.open(outdir / "ego_networks.tsv") as fp:

            def written(nets=nets):
                for net in nets:
                    write_ego_networks(fp, [net])
                    yield net

            classes = _cluster(run, written(), prm)
        _write_classes(run, outdir / "classes.tsv", classes)
        labeled = label_classes(classes, inv, prm["labeling"], threads)
        _write_classes(run, outdir / "labeled_classes.tsv", labeled)
        if cfg["hypernym_db"]:
            _denoise(run, labeled, outdir / "relations.tsv")
        if cfg["seeds"]:
            _taxonomy(run, labeled, inv, outdir / "taxonomy.tsv")
        if cfg["gold_synsets"] or cfg["gold_edges"]:
            _eval(run, labeled, outdir / "eval.tsv")
    run.write_manifest()


def resolve_config(stage: str, given: dict) -> dict:
    cfg = dict(DEFAULTS)
    if "config" in given:
        if not os.path.isfile(given["config"]):
            raise UsageError(f"config file not found: {given['config']}")
        cfg.update(read_config(given["config"]))
    cfg.update({k.replace("-", "_"): v for k, v in given.items() if k in DEFAULTS})
    if stage == "pipeline" and cfg["seeds"] and not cfg["root"]:
        raise UsageError("--seeds needs --root")
    if stage == "pipeline" and bool(cfg["gold_synsets"]) != bool(cfg["gold_edges"]):
        raise UsageError("--gold-synsets and --gold-edges go together")
    if stage in ("cluster", "pipeline") and cfg["nouns_only"] and not cfg["noun_lexicon"]:
        raise UsageError("nouns-only mode needs --noun-lexicon (or --no-nouns-only)")
    for key in REQUIRED[stage]:
        if cfg[key] in (None, ""):
            raise UsageError(f"missing required setting --{key.replace('_', '-')}")
    for key in PATH_KEYS - OUTPUT_KEYS:
        if cfg[key] and not os.path.isfile(cfg[key]):
            raise UsageError(f"input file not found: {cfg[key]}")
    if cfg["threads"] < 1:
        raise UsageError("--threads must be >= 1")
    return cfg


def main(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    stage = args.pop("stage")
    logging.basicConfig(
        level=logging.INFO if args.pop("verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = resolve_config(stage, args)
        _params(cfg)
    except (UsageError, ValueError) as exc:
        print(f"semclasses: error: {exc}", file=sys.stderr)
        return 1

    run = Run(stage, cfg)
    try:
        execute(run)
    except (ParseError, ValueError, KeyError) as exc:
        run.cleanup()
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"semclasses: data error: {msg}", file=sys.stderr)
        return 2
    except BaseException:
        run.cleanup()
        raise
    return 0


if __name__ == "__main__":
    sys.exit(main())
