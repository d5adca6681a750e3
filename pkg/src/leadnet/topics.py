"""Mixed-lingual topic extraction from thread texts.

A hand-maintained lexicon maps surface forms (possibly multiword, any
language) to concept ids, plus a stopclass of connector tokens such as
prepositions and determiners.  Extraction lowercases, tokenizes and
longest-matches the lexicon; adjacent concepts, allowing intervening
stopclass tokens, join into "_"-separated n-grams, so "analisi delle
performance" and "digital marketing" each come out as one n-gram.

Per window, n-grams occurring at least min_freq times become vertices of
a co-occurrence graph (an edge means two n-grams appeared in the same
thread); maximal cliques of that graph are topics; near-duplicate topics
merge when their frequency-vector cosine reaches theta_v; topics of
consecutive windows chain into streams when the cosine reaches theta_h.
"""

from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Mapping, Sequence

from .ingest import ThreadRecord, WindowSlice

TOKEN = re.compile(r"\w+", re.UNICODE)


@dataclass(frozen=True)
class TopicConfig:
    min_freq: int = 3
    theta_v: float = 0.5
    theta_h: float = 0.3
    max_ngram: int = 4

    def __post_init__(self) -> None:
        if self.min_freq < 1:
            raise ValueError("min_freq must be >= 1")
        if not 0.0 <= self.theta_v <= 1.0 or not 0.0 <= self.theta_h <= 1.0:
            raise ValueError("theta_v and theta_h must be in [0, 1]")
        if self.max_ngram < 1:
            raise ValueError("max_ngram must be >= 1")


@dataclass(frozen=True)
class ConceptLexicon:
    """entries: lowercased surface token tuple -> concept id.
    stopclass: language -> connector tokens (matched as a single union)."""

    entries: dict[tuple[str, ...], str]
    stopclass: dict[str, frozenset[str]]

    def __post_init__(self) -> None:
        for surface in self.entries:
            if not surface or any(not t for t in surface):
                raise ValueError("lexicon surfaces must be non-empty token tuples")

    @property
    def stop_tokens(self) -> frozenset[str]:
        tokens: set[str] = set()
        for group in self.stopclass.values():
            tokens |= group
        return frozenset(tokens)

    @property
    def max_surface_len(self) -> int:
        return max((len(s) for s in self.entries), default=0)


def tokenize(text: str) -> list[str]:
    return TOKEN.findall(text.lower())


def load_lexicon(
    lexicon_source: str | Path | IO[str],
    stopwords_source: str | Path | IO[str] | None = None,
) -> ConceptLexicon:
    """Read the TSV lexicon (surface_form<TAB>concept_id<TAB>language) and
    the stopclass file (one token per line, optional <TAB>language).
    Duplicate surfaces keep the lexicographically smallest concept id."""
    entries: dict[tuple[str, ...], str] = {}
    for line in _read_lines(lexicon_source):
        parts = line.split("\t")
        if len(parts) < 2:
            raise ValueError(f"bad lexicon line {line!r}: expected surface<TAB>concept_id")
        surface = tuple(tokenize(parts[0]))
        concept_id = parts[1].strip()
        if not surface or not concept_id:
            raise ValueError(f"bad lexicon line {line!r}")
        if surface in entries:
            entries[surface] = min(entries[surface], concept_id)
        else:
            entries[surface] = concept_id

    stopclass: dict[str, set[str]] = defaultdict(set)
    if stopwords_source is not None:
        for line in _read_lines(stopwords_source):
            parts = line.split("\t")
            token = parts[0].strip().lower()
            lang = parts[1].strip() if len(parts) > 1 and parts[1].strip() else "any"
            if token:
                stopclass[lang].add(token)
    return ConceptLexicon(
        entries=entries,
        stopclass={lang: frozenset(tokens) for lang, tokens in stopclass.items()},
    )


def _read_lines(source: str | Path | IO[str]) -> Iterable[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as stream:
            lines = stream.read().splitlines()
    else:
        lines = source.read().splitlines()
    for line in lines:
        line = line.rstrip("\n")
        if line.strip() and not line.lstrip().startswith("#"):
            yield line


def extract_concepts(
    text: str, lexicon: ConceptLexicon, max_ngram: int = 4
) -> list[str]:
    """Concept n-grams occurring in the text, in occurrence order.

    Lexicon surfaces are longest-matched over the token stream.  Each
    maximal run of concepts (stopclass tokens may sit between them, any
    other token breaks the run) is emitted joined by "_", including the
    connectors, followed by each member concept alone.  Runs longer than
    max_ngram concepts are chunked greedily left to right.
    """
    if max_ngram < 1:
        raise ValueError("max_ngram must be >= 1")
    tokens = tokenize(text)
    stop_tokens = lexicon.stop_tokens
    longest = lexicon.max_surface_len

    # runs hold (gap_before_concept, concept_tokens) pairs
    runs: list[list[tuple[list[str], tuple[str, ...]]]] = []
    current: list[tuple[list[str], tuple[str, ...]]] = []
    gap: list[str] = []
    i = 0
    while i < len(tokens):
        matched = None
        for length in range(min(longest, len(tokens) - i), 0, -1):
            candidate = tuple(tokens[i : i + length])
            if candidate in lexicon.entries:
                matched = candidate
                break
        if matched is not None:
            current.append((gap if current else [], matched))
            gap = []
            i += len(matched)
        elif tokens[i] in stop_tokens and current:
            gap.append(tokens[i])
            i += 1
        else:
            if current:
                runs.append(current)
                current = []
            gap = []
            i += 1
    if current:
        runs.append(current)

    grams: list[str] = []
    for run in runs:
        for at in range(0, len(run), max_ngram):
            chunk = run[at : at + max_ngram]
            if len(chunk) > 1:
                joined: list[str] = []
                for pos, (gap_tokens, concept_tokens) in enumerate(chunk):
                    if pos > 0:
                        joined.extend(gap_tokens)
                    joined.extend(concept_tokens)
                grams.append("_".join(joined))
            for _gap_tokens, concept_tokens in chunk:
                grams.append("_".join(concept_tokens))
    return grams


def thread_grams(
    thread: ThreadRecord, lexicon: ConceptLexicon, max_ngram: int = 4
) -> list[str]:
    """Concept n-grams of a whole thread: title, description and every
    comment, extracted separately so runs never span message boundaries."""
    parts = [thread.title, thread.description]
    parts.extend(c.text for c in thread.comments)
    grams: list[str] = []
    for part in parts:
        grams.extend(extract_concepts(part, lexicon, max_ngram))
    return grams


@dataclass(frozen=True)
class CooccurrenceGraph:
    """freq: window occurrence count of each kept n-gram.
    adj: undirected adjacency among kept n-grams (same-thread edges)."""

    freq: dict[str, int]
    adj: dict[str, set[str]]


def cooccurrence_graph(
    slice: WindowSlice, lexicon: ConceptLexicon, cfg: TopicConfig = TopicConfig()
) -> CooccurrenceGraph:
    per_thread = [thread_grams(t, lexicon, cfg.max_ngram) for t in slice.threads]
    freq = Counter()
    for grams in per_thread:
        freq.update(grams)
    kept = {gram for gram, count in freq.items() if count >= cfg.min_freq}
    adj: dict[str, set[str]] = {gram: set() for gram in kept}
    for grams in per_thread:
        present = sorted(set(grams) & kept)
        for a_pos, a in enumerate(present):
            for b in present[a_pos + 1 :]:
                adj[a].add(b)
                adj[b].add(a)
    return CooccurrenceGraph(
        freq={gram: freq[gram] for gram in sorted(kept)}, adj=adj
    )


def bron_kerbosch(adj: Mapping[str, set[str]]) -> list[tuple[str, ...]]:
    """All maximal cliques of size >= 2, with pivoting; each clique is
    sorted and the list is sorted, so output order is canonical."""
    cliques: list[tuple[str, ...]] = []

    def expand(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            if len(r) >= 2:
                cliques.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    return sorted(cliques)


@dataclass(frozen=True)
class Topic:
    """A clique of co-occurring concept n-grams inside one window.
    members maps each n-gram to its occurrence count in the window."""

    topic_id: str
    window: int
    members: dict[str, int]

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ValueError("a topic needs at least two n-grams")


@dataclass(frozen=True)
class TopicStream:
    """One topic chained through consecutive windows."""

    stream_id: str
    entries: tuple[tuple[int, Topic], ...]

    def topic_at(self, window: int) -> Topic | None:
        for w, topic in self.entries:
            if w == window:
                return topic
        return None


def cosine(a: Mapping[str, float], b: Mapping[str, float]) -> float:
    """Cosine similarity over the union n-gram space; 0 for empty input."""
    dot = sum(value * b[key] for key, value in a.items() if key in b)
    norm_a = sum(value * value for value in a.values()) ** 0.5
    norm_b = sum(value * value for value in b.values()) ** 0.5
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


def topics_in_window(
    slice: WindowSlice, lexicon: ConceptLexicon, cfg: TopicConfig = TopicConfig()
) -> list[Topic]:
    """Cliques of the window's co-occurrence graph, vertically merged.
    Topic ids are canonical: w<window>.t<position in clique order>."""
    graph = cooccurrence_graph(slice, lexicon, cfg)
    topics = [
        Topic(
            topic_id=f"w{slice.index:03d}.t{position:03d}",
            window=slice.index,
            members={gram: graph.freq[gram] for gram in clique},
        )
        for position, clique in enumerate(bron_kerbosch(graph.adj))
    ]
    return merge_vertical(topics, cfg.theta_v)


def merge_vertical(topics: Sequence[Topic], theta_v: float) -> list[Topic]:
    """Greedy single-link merging: repeatedly merge the pair with the
    highest cosine >= theta_v (ties to the lexicographically smallest id
    pair), summing frequency maps; the smaller id survives."""
    pool = {t.topic_id: t for t in topics}
    while len(pool) > 1:
        best: tuple[float, str, str] | None = None
        ids = sorted(pool)
        for a_pos, a in enumerate(ids):
            for b in ids[a_pos + 1 :]:
                sim = cosine(pool[a].members, pool[b].members)
                if sim >= theta_v and (best is None or sim > best[0]):
                    best = (sim, a, b)
        if best is None:
            break
        _, a, b = best
        merged = Counter(pool[a].members)
        merged.update(pool[b].members)
        window = pool[a].window
        del pool[b]
        pool[a] = Topic(topic_id=a, window=window, members=dict(merged))
    return [pool[topic_id] for topic_id in sorted(pool)]


def chain_streams(
    topics_per_window: Sequence[Sequence[Topic]], theta_h: float
) -> list[TopicStream]:
    """Greedy best-match chaining between consecutive windows.

    Pairs (topic of window w, stream that last grew at window w-1) with
    cosine >= theta_h are taken in descending cosine order (ties by
    topic id then stream id); each stream claims at most one topic per
    window and each topic joins at most one stream.  Leftover topics
    start new streams, numbered in creation order.
    """
    streams: list[dict] = []
    counter = 0
    for window, window_topics in enumerate(topics_per_window):
        open_streams = [
            s for s in streams if s["entries"][-1][0] == window - 1
        ]
        candidates = []
        for topic in sorted(window_topics, key=lambda t: t.topic_id):
            for stream in open_streams:
                sim = cosine(topic.members, stream["entries"][-1][1].members)
                if sim >= theta_h:
                    candidates.append((sim, topic.topic_id, stream["id"], topic, stream))
        candidates.sort(key=lambda item: (-item[0], item[1], item[2]))
        claimed_topics: set[str] = set()
        claimed_streams: set[str] = set()
        for sim, topic_id, stream_id, topic, stream in candidates:
            if topic_id in claimed_topics or stream_id in claimed_streams:
                continue
            stream["entries"].append((window, topic))
            claimed_topics.add(topic_id)
            claimed_streams.add(stream_id)
        for topic in sorted(window_topics, key=lambda t: t.topic_id):
            if topic.topic_id not in claimed_topics:
                streams.append({"id": f"s{counter:04d}", "entries": [(window, topic)]})
                counter += 1
    return [
        TopicStream(stream_id=s["id"], entries=tuple(s["entries"]))
        for s in streams
    ]


def topic_network(
    stream: TopicStream,
    slice: WindowSlice,
    lexicon: ConceptLexicon,
    cfg: TopicConfig = TopicConfig(),
) -> WindowSlice:
    """The sub-slice of threads mentioning at least one n-gram of the
    stream's topic in this window."""
    topic = stream.topic_at(slice.index)
    if topic is None:
        raise ValueError(
            f"stream {stream.stream_id} has no topic in window {slice.index}"
        )
    members = set(topic.members)
    threads = tuple(
        t for t in slice.threads
        if members & set(thread_grams(t, lexicon, cfg.max_ngram))
    )
    message_ids = {t.thread_id for t in threads}
    message_ids.update(c.comment_id for t in threads for c in t.comments)
    ratings = tuple(r for r in slice.ratings if r.target_message_id in message_ids)
    return WindowSlice(index=slice.index, start=slice.start, end=slice.end,
                       threads=threads, ratings=ratings)


def streams_to_rows(streams: Sequence[TopicStream]) -> list[dict]:
    """JSON-ready rows: one per (window, topic), sorted by window then
    topic id, members sorted by n-gram."""
    rows = []
    for stream in streams:
        for window, topic in stream.entries:
            rows.append({
                "window": window,
                "topic_id": topic.topic_id,
                "stream_id": stream.stream_id,
                "members": [
                    {"ngram": gram, "freq": topic.members[gram]}
                    for gram in sorted(topic.members)
                ],
            })
    rows.sort(key=lambda row: (row["window"], row["topic_id"]))
    return rows


def write_topics_json(streams: Sequence[TopicStream], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as out:
        json.dump(streams_to_rows(streams), out, sort_keys=True,
                  ensure_ascii=False, indent=2)
        out.write("\n")
