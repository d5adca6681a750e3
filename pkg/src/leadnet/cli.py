"""Command line front end.

Subcommands cover the full pipeline: ``synth`` writes a seeded corpus,
``ingest`` validates and summarizes logs, ``rank``/``topics``/``analytics``
compute one artifact family each, ``export-graph`` dumps the network, and
``all`` produces every artifact in one pass.

Option values resolve with precedence: command line flag, then
``LEADNET_<NAME>`` environment variable, then a ``--config`` JSON file,
then the built-in default.  Every run writes ``manifest.json`` recording
the tool version, resolved semantic options, input digests and artifact
names; it deliberately excludes timestamps, paths and worker counts so
reruns of the same inputs produce byte-identical output trees.

Exit codes: 0 on success, 1 on runtime failures (unreadable or corrupt
inputs, non-convergence), 2 on bad usage or bad option values.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .analytics import (
    active_user_indices,
    homophily,
    response_stats,
    role_subgraph,
    top_mass,
)
from .export import (
    analytics_rows,
    write_analytics_csv,
    write_edges_csv,
    write_graph_dot,
    write_rankings_csv,
)
from .ingest import (
    Corpus,
    IngestError,
    Role,
    WindowConfig,
    WindowSlice,
    build_corpus,
    decode_role,
    format_timestamp,
    parse_ratings,
    parse_thread_log,
    whole_span_slice,
    window_partition,
    write_ratings_jsonl,
    write_threads_jsonl,
)
from .multiplex import LAYER_NAMES, build_tensor
from .rank import ConvergenceError, MprParams, brokerage, multiplex_pagerank
from .synth import (
    SyntheticSpec,
    generate,
    write_lexicon_tsv,
    write_stopwords_txt,
)
from .topics import (
    TopicConfig,
    chain_streams,
    load_lexicon,
    topic_network,
    topics_in_window,
    write_topics_json,
)

ENV_PREFIX = "LEADNET_"


class UsageError(Exception):
    """Bad flags, bad option values, or missing required inputs."""


# ---------------------------------------------------------------------------
# option resolution

def _int(value: object) -> int:
    try:
        return int(str(value))
    except ValueError as exc:
        raise UsageError(f"expected an integer, got {value!r}") from exc


def _float(value: object) -> float:
    try:
        return float(str(value))
    except ValueError as exc:
        raise UsageError(f"expected a number, got {value!r}") from exc


def _str(value: object) -> str:
    return str(value)


def _window(value: object) -> str:
    try:
        WindowConfig.from_string(str(value))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return str(value)


def _format(value: object) -> str:
    text = str(value)
    if text not in ("jsonl", "csv"):
        raise UsageError(f"format must be jsonl or csv, got {text!r}")
    return text


def _alpha(value: object) -> tuple[float, float, float]:
    if isinstance(value, (list, tuple)):
        parts = [str(v) for v in value]
    else:
        parts = [p.strip() for p in str(value).split(",") if p.strip()]
    vals = [_float(p) for p in parts]
    if len(vals) == 1:
        vals = vals * 3
    if len(vals) != 3:
        raise UsageError("alpha takes one value or three comma-separated values")
    return (vals[0], vals[1], vals[2])


def _layer_order(value: object) -> tuple[str, ...]:
    if isinstance(value, (list, tuple)):
        names = [str(v) for v in value]
    else:
        names = [p.strip() for p in str(value).split(",") if p.strip()]
    if sorted(names) != sorted(LAYER_NAMES):
        raise UsageError(
            f"layer order must be a permutation of {', '.join(LAYER_NAMES)}"
        )
    return tuple(names)


def _roles(value: object) -> tuple[Role, ...]:
    if isinstance(value, (list, tuple)):
        names = [str(v) for v in value]
    else:
        names = [p.strip() for p in str(value).split(",") if p.strip()]
    roles = []
    for name in names:
        role = decode_role(name)
        if role is None or role is Role.unknown:
            raise UsageError(f"unknown role {name!r}")
        roles.append(role)
    if not roles:
        raise UsageError("role filter must name at least one role")
    return tuple(roles)


# name -> (caster, default); every option flows through this table so the
# flag > environment > config file > default precedence is uniform.
SETTINGS: dict[str, tuple[Callable[[object], object], object]] = {
    "input": (_str, None),
    "ratings": (_str, None),
    "lexicon": (_str, None),
    "stopwords": (_str, None),
    "out": (_str, None),
    "format": (_format, "jsonl"),
    "window": (_window, "month"),
    "alpha": (_alpha, (0.85, 0.85, 0.85)),
    "beta": (_float, 1.0),
    "gamma": (_float, 1.0),
    "layer_order": (_layer_order, LAYER_NAMES),
    "tol": (_float, 1e-9),
    "max_iter": (_int, 1000),
    "min_freq": (_int, 3),
    "theta_v": (_float, 0.5),
    "theta_h": (_float, 0.3),
    "top_k": (_int, None),
    "role": (_roles, None),
    "seed": (_int, 42),
    "jobs": (_int, 1),
    "window_index": (_int, None),
    "stream": (_str, None),
    "n_users": (_int, 120),
    "n_threads": (_int, 500),
    "comments_mean": (_float, 3.0),
    "gender_prior_w": (_float, 0.24),
    "homophily_p_ww": (_float, 0.48),
    "uplift": (_float, 1.0),
    "manager_latency_factor": (_float, 0.5),
    "reply_latency_mean_s": (_float, 14400.0),
    "like_rate": (_float, 0.15),
    "dislike_rate": (_float, 0.05),
    "span_days": (_int, 56),
}


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file {path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config file {path}: expected a JSON object")
    unknown = sorted(set(data) - set(SETTINGS))
    if unknown:
        raise UsageError(f"config file {path}: unknown options {unknown}")
    return data


def resolve_settings(args: argparse.Namespace) -> dict:
    config_path = getattr(args, "config", None) \
        or os.environ.get(ENV_PREFIX + "CONFIG")
    file_values = _load_config_file(config_path)
    resolved = {}
    for name, (caster, default) in SETTINGS.items():
        value = getattr(args, name, None)
        if value is None:
            value = os.environ.get(ENV_PREFIX + name.upper())
        if value is None:
            value = file_values.get(name)
        if value is None:
            resolved[name] = default
        else:
            try:
                resolved[name] = caster(value)
            except UsageError as exc:
                raise UsageError(
                    f"--{name.replace('_', '-')}: {exc}") from exc
    return resolved


def _require(cfg: dict, name: str) -> str:
    value = cfg.get(name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return value


# ---------------------------------------------------------------------------
# run context and manifest

class RunContext:
    """Tracks artifacts under the output directory; a failed run removes
    whatever it had already written."""

    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.artifacts: list[str] = []

    def path(self, name: str) -> Path:
        if name not in self.artifacts:
            self.artifacts.append(name)
        return self.out_dir / name

    def discard_partial(self) -> None:
        for name in self.artifacts:
            target = self.out_dir / name
            if target.exists():
                target.unlink()


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 16), b""):
            digest.update(block)
    return digest.hexdigest()


def _json_ready(value: object) -> object:
    if isinstance(value, tuple):
        return [_json_ready(v) for v in value]
    if isinstance(value, Role):
        return value.value
    return value


# semantic options recorded per command; worker counts and paths stay out
# so identical inputs yield identical manifests.
_SYNTH_KEYS = ("seed", "n_users", "n_threads", "comments_mean",
               "gender_prior_w", "homophily_p_ww", "uplift",
               "manager_latency_factor", "reply_latency_mean_s",
               "like_rate", "dislike_rate", "span_days")
_RANK_KEYS = ("alpha", "beta", "gamma", "layer_order", "tol", "max_iter")
MANIFEST_KEYS = {
    "synth": _SYNTH_KEYS,
    "ingest": ("format", "window"),
    "rank": ("format", "window") + _RANK_KEYS,
    "topics": ("format", "window", "min_freq", "theta_v", "theta_h",
               "stream", "window_index"),
    "analytics": ("format", "window", "top_k") + _RANK_KEYS,
    "export-graph": ("format", "window", "window_index", "role"),
    "all": ("format", "window", "min_freq", "theta_v", "theta_h",
            "top_k") + _RANK_KEYS,
}


def write_manifest(ctx: RunContext, command: str, cfg: dict) -> None:
    inputs = {}
    for key in ("input", "ratings", "lexicon", "stopwords"):
        value = cfg.get(key)
        if value is not None:
            inputs[Path(value).name] = _sha256(value)
    manifest = {
        "tool": "leadnet",
        "version": __version__,
        "command": command,
        "config": {key: _json_ready(cfg[key]) for key in MANIFEST_KEYS[command]},
        "inputs": inputs,
        "artifacts": sorted(self_name for self_name in ctx.artifacts
                            if self_name != "manifest.json"),
    }
    with open(ctx.path("manifest.json"), "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")


# ---------------------------------------------------------------------------
# shared pipeline pieces

def _load_corpus(cfg: dict) -> tuple[Corpus, list[str]]:
    threads, diags = parse_thread_log(_require(cfg, "input"),
                                      format=cfg["format"])
    ratings = []
    if cfg["ratings"] is not None:
        ratings, rating_diags = parse_ratings(cfg["ratings"])
        diags.extend(rating_diags)
    corpus, corpus_diags = build_corpus(threads, ratings)
    diags.extend(corpus_diags)
    return corpus, diags


def _slices(corpus: Corpus, cfg: dict) -> list[WindowSlice]:
    return window_partition(corpus, WindowConfig.from_string(cfg["window"]))


def _mpr_params(cfg: dict) -> MprParams:
    try:
        return MprParams(
            alpha=cfg["alpha"],
            beta=cfg["beta"],
            gamma=cfg["gamma"],
            layer_order=cfg["layer_order"],
            tol=cfg["tol"],
            max_iter=cfg["max_iter"],
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _map_windows(fn: Callable, slices: Sequence[WindowSlice], jobs: int) -> list:
    if jobs <= 1 or len(slices) <= 1:
        return [fn(s) for s in slices]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, slices))


def _print_diags(diags: Sequence[str]) -> None:
    for line in diags:
        print(f"note: {line}", file=sys.stderr)


# ---------------------------------------------------------------------------
# commands

def cmd_synth(cfg: dict, ctx: RunContext) -> None:
    spec = SyntheticSpec(
        n_users=cfg["n_users"],
        n_threads=cfg["n_threads"],
        gender_prior_w=cfg["gender_prior_w"],
        comments_mean=cfg["comments_mean"],
        homophily_p_ww=cfg["homophily_p_ww"],
        women_activity_uplift=cfg["uplift"],
        manager_latency_factor=cfg["manager_latency_factor"],
        reply_latency_mean_s=cfg["reply_latency_mean_s"],
        like_rate=cfg["like_rate"],
        dislike_rate=cfg["dislike_rate"],
        span_days=cfg["span_days"],
        seed=cfg["seed"],
    )
    corpus = generate(spec)
    write_threads_jsonl(corpus.threads, ctx.path("threads.jsonl"))
    write_ratings_jsonl(corpus.ratings, ctx.path("ratings.jsonl"))
    write_lexicon_tsv(ctx.path("lexicon.tsv"))
    write_stopwords_txt(ctx.path("stopwords.txt"))
    payload = {
        "n_users": spec.n_users,
        "n_threads": spec.n_threads,
        "gender_prior_w": spec.gender_prior_w,
        "role_weights": [[name, weight] for name, weight in spec.role_weights],
        "comments_mean": spec.comments_mean,
        "homophily_p_ww": spec.homophily_p_ww,
        "women_activity_uplift": spec.women_activity_uplift,
        "manager_latency_factor": spec.manager_latency_factor,
        "reply_latency_mean_s": spec.reply_latency_mean_s,
        "like_rate": spec.like_rate,
        "dislike_rate": spec.dislike_rate,
        "start": format_timestamp(spec.start),
        "span_days": spec.span_days,
        "seed": spec.seed,
    }
    with open(ctx.path("synth_spec.json"), "w", encoding="utf-8") as handle:
        json.dump(payload, handle, indent=2, sort_keys=True)
        handle.write("\n")


def cmd_ingest(cfg: dict, ctx: RunContext) -> None:
    corpus, diags = _load_corpus(cfg)
    slices = _slices(corpus, cfg)
    span = whole_span_slice(corpus)
    summary = {
        "users": len(corpus.users),
        "threads": len(corpus.threads),
        "comments": sum(len(t.comments) for t in corpus.threads),
        "ratings": len(corpus.ratings),
        "span": {
            "start": format_timestamp(span.start),
            "end": format_timestamp(span.end),
        },
        "windows": [
            {
                "index": s.index,
                "start": format_timestamp(s.start),
                "end": format_timestamp(s.end),
                "threads": len(s.threads),
                "ratings": len(s.ratings),
            }
            for s in slices
        ],
        "diagnostics": len(diags),
    }
    with open(ctx.path("corpus_summary.json"), "w", encoding="utf-8") as handle:
        json.dump(summary, handle, indent=2, sort_keys=True)
        handle.write("\n")
    with open(ctx.path("diagnostics.txt"), "w", encoding="utf-8") as handle:
        for line in diags:
            handle.write(line + "\n")


def _write_window_rankings(ctx, corpus, slices, params, jobs):
    def work(window_slice):
        tensor = build_tensor(window_slice, corpus)
        return multiplex_pagerank(tensor, params), brokerage(tensor)

    results = _map_windows(work, slices, jobs)
    for window_slice, (result, broker) in zip(slices, results):
        name = f"rankings_w{window_slice.index:03d}.csv"
        write_rankings_csv(ctx.path(name), corpus, result, broker)
    return results


def cmd_rank(cfg: dict, ctx: RunContext) -> None:
    corpus, diags = _load_corpus(cfg)
    _print_diags(diags)
    _write_window_rankings(ctx, corpus, _slices(corpus, cfg),
                           _mpr_params(cfg), cfg["jobs"])


def _topic_streams(corpus, slices, cfg, jobs):
    lexicon = load_lexicon(_require(cfg, "lexicon"), cfg["stopwords"])
    topic_cfg = TopicConfig(
        min_freq=cfg["min_freq"],
        theta_v=cfg["theta_v"],
        theta_h=cfg["theta_h"],
    )
    per_window = _map_windows(
        lambda s: topics_in_window(s, lexicon, topic_cfg), slices, jobs,
    )
    return chain_streams(per_window, topic_cfg.theta_h), lexicon, topic_cfg


def cmd_topics(cfg: dict, ctx: RunContext) -> None:
    corpus, diags = _load_corpus(cfg)
    _print_diags(diags)
    slices = _slices(corpus, cfg)
    streams, lexicon, topic_cfg = _topic_streams(corpus, slices, cfg,
                                                 cfg["jobs"])
    write_topics_json(streams, ctx.path("topics.json"))
    if cfg["stream"] is None:
        return
    if cfg["window_index"] is None:
        raise UsageError("--stream needs --window-index")
    index = cfg["window_index"]
    if not 0 <= index < len(slices):
        raise UsageError(
            f"window index {index} out of range (have {len(slices)} windows)"
        )
    wanted = [s for s in streams if s.stream_id == cfg["stream"]]
    if not wanted:
        raise UsageError(f"no stream named {cfg['stream']!r}")
    try:
        filtered = topic_network(wanted[0], slices[index], lexicon, topic_cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    tensor = build_tensor(filtered, corpus)
    name = f"stream_{cfg['stream']}_w{index:03d}_edges.csv"
    write_edges_csv(ctx.path(name), tensor, corpus)


def _analytics_for_windows(corpus, slices, params, top_k, jobs):
    def work(window_slice):
        tensor = build_tensor(window_slice, corpus)
        result = multiplex_pagerank(tensor, params)
        active = active_user_indices(window_slice, corpus)
        top = top_mass(result.leadership, corpus, active, top_k)
        return analytics_rows(
            format_timestamp(window_slice.start),
            homophily(window_slice),
            top,
            response_stats(window_slice, "author_role"),
            response_stats(window_slice, "author_gender"),
        )

    rows = []
    for window_rows in _map_windows(work, slices, jobs):
        rows.extend(window_rows)
    return rows


def cmd_analytics(cfg: dict, ctx: RunContext) -> None:
    corpus, diags = _load_corpus(cfg)
    _print_diags(diags)
    rows = _analytics_for_windows(corpus, _slices(corpus, cfg),
                                  _mpr_params(cfg), cfg["top_k"], cfg["jobs"])
    write_analytics_csv(ctx.path("analytics.csv"), rows)


def cmd_export_graph(cfg: dict, ctx: RunContext) -> None:
    corpus, diags = _load_corpus(cfg)
    _print_diags(diags)
    if cfg["window_index"] is None:
        window_slice = whole_span_slice(corpus)
    else:
        slices = _slices(corpus, cfg)
        index = cfg["window_index"]
        if not 0 <= index < len(slices):
            raise UsageError(
                f"window index {index} out of range (have {len(slices)} windows)"
            )
        window_slice = slices[index]
    tensor = build_tensor(window_slice, corpus)
    write_edges_csv(ctx.path("edges.csv"), tensor, corpus)
    write_graph_dot(ctx.path("graph.dot"), tensor, corpus)
    if cfg["role"] is not None:
        subgraph, warnings = role_subgraph(tensor, corpus, cfg["role"])
        for line in warnings:
            print(f"warning: {line}", file=sys.stderr)
        lines = ["graph leadnet_roles {"]
        for i in subgraph.nodes:
            lines.append(f'  "{corpus.users[i].user_id}";')
        for i, j in subgraph.edges:
            lines.append(
                f'  "{corpus.users[i].user_id}" -- "{corpus.users[j].user_id}";'
            )
        lines.append("}")
        ctx.path("role_graph.dot").write_text("\n".join(lines) + "\n",
                                              encoding="utf-8")


def cmd_all(cfg: dict, ctx: RunContext) -> None:
    corpus, diags = _load_corpus(cfg)
    _print_diags(diags)
    slices = _slices(corpus, cfg)
    params = _mpr_params(cfg)
    jobs = cfg["jobs"]
    _write_window_rankings(ctx, corpus, slices, params, jobs)
    rows = _analytics_for_windows(corpus, slices, params, cfg["top_k"], jobs)
    write_analytics_csv(ctx.path("analytics.csv"), rows)
    if cfg["lexicon"] is not None:
        streams, _lexicon, _topic_cfg = _topic_streams(corpus, slices, cfg,
                                                       jobs)
        write_topics_json(streams, ctx.path("topics.json"))
    tensor = build_tensor(whole_span_slice(corpus), corpus)
    write_edges_csv(ctx.path("edges.csv"), tensor, corpus)
    write_graph_dot(ctx.path("graph.dot"), tensor, corpus)


COMMANDS = {
    "synth": cmd_synth,
    "ingest": cmd_ingest,
    "rank": cmd_rank,
    "topics": cmd_topics,
    "analytics": cmd_analytics,
    "export-graph": cmd_export_graph,
    "all": cmd_all,
}


# ---------------------------------------------------------------------------
# parser

def _add_options(parser: argparse.ArgumentParser, names: Sequence[str]) -> None:
    helps = {
        "input": "thread log to read (JSONL, or CSV with --format csv)",
        "ratings": "ratings log to read (JSONL)",
        "lexicon": "concept lexicon TSV (surface, concept id, language)",
        "stopwords": "stopword list, one token per line",
        "out": "output directory (created if missing)",
        "config": "JSON file supplying defaults for any option",
        "format": "thread log format: jsonl or csv",
        "window": "window length: week, month, or days:N",
        "alpha": "damping per layer: one value or three comma-separated",
        "beta": "exponent coupling the walk to the previous layer",
        "gamma": "exponent coupling teleportation to the previous layer",
        "layer_order": "comma-separated layer evaluation order",
        "tol": "convergence threshold on the L1 step change",
        "max_iter": "maximum iterations per layer",
        "min_freq": "minimum n-gram frequency for topic vertices",
        "theta_v": "cosine threshold for merging topics within a window",
        "theta_h": "cosine threshold for chaining topics across windows",
        "top_k": "head size for concentration stats (default: decile)",
        "role": "comma-separated role filter",
        "seed": "random seed",
        "jobs": "worker threads for per-window stages",
        "window_index": "window to operate on (0-based)",
        "stream": "topic stream id to export a network for",
        "n_users": "synthetic corpus: number of users",
        "n_threads": "synthetic corpus: number of threads",
        "comments_mean": "synthetic corpus: mean comments per thread",
        "gender_prior_w": "synthetic corpus: share of women among users",
        "homophily_p_ww": "synthetic corpus: p(reply target is a woman | "
                          "replier is a woman)",
        "uplift": "synthetic corpus: women's thread-authoring uplift",
        "manager_latency_factor": "synthetic corpus: reply latency scale "
                                  "for manager threads",
        "reply_latency_mean_s": "synthetic corpus: mean reply latency "
                                "in seconds",
        "like_rate": "synthetic corpus: p(message receives a like)",
        "dislike_rate": "synthetic corpus: p(message receives a dislike)",
        "span_days": "synthetic corpus: days covered by the corpus",
    }
    for name in names:
        flag = "--" + name.replace("_", "-")
        parser.add_argument(flag, default=None, help=helps[name])


_INPUT_OPTS = ("input", "ratings", "format")
_RANK_OPTS = ("alpha", "beta", "gamma", "layer_order", "tol", "max_iter")
_TOPIC_OPTS = ("lexicon", "stopwords", "min_freq", "theta_v", "theta_h")
_COMMON = ("out", "config")

COMMAND_OPTIONS = {
    "synth": _COMMON + ("seed",) + _SYNTH_KEYS[1:],
    "ingest": _COMMON + _INPUT_OPTS + ("window",),
    "rank": _COMMON + _INPUT_OPTS + ("window", "jobs") + _RANK_OPTS,
    "topics": _COMMON + _INPUT_OPTS + ("window", "jobs") + _TOPIC_OPTS
              + ("stream", "window_index"),
    "analytics": _COMMON + _INPUT_OPTS + ("window", "jobs") + _RANK_OPTS
                 + ("top_k",),
    "export-graph": _COMMON + _INPUT_OPTS + ("window", "window_index", "role"),
    "all": _COMMON + _INPUT_OPTS + ("window", "jobs") + _RANK_OPTS
           + _TOPIC_OPTS + ("top_k",),
}

_SUMMARIES = {
    "synth": "write a seeded synthetic corpus with planted effects",
    "ingest": "validate logs and summarize the corpus and its windows",
    "rank": "write per-window leadership rankings",
    "topics": "extract topic cliques and chain them into streams",
    "analytics": "write gender and role analytics per window",
    "export-graph": "dump network edges and a DOT rendering",
    "all": "run the whole pipeline into one output directory",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leadnet",
        description="Multiplex leadership and topic analysis for "
                    "enterprise discussion logs.",
    )
    parser.add_argument("--version", action="version",
                        version=f"leadnet {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, options in COMMAND_OPTIONS.items():
        sub = subparsers.add_parser(command, help=_SUMMARIES[command])
        _add_options(sub, options)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_settings(args)
        out_dir = Path(_require(cfg, "out"))
        out_dir.mkdir(parents=True, exist_ok=True)
        ctx = RunContext(out_dir)
        try:
            COMMANDS[args.command](cfg, ctx)
            write_manifest(ctx, args.command, cfg)
        except Exception:
            ctx.discard_partial()
            raise
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (IngestError, ConvergenceError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
