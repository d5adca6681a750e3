"""Discussion-log ingestion: record types, parsers, corpus assembly, windowing.

Canonical input is JSON Lines.  ``threads.jsonl`` holds one thread per line:

    {"thread_id": "t00001", "title": "...", "description": "...",
     "published_at": "2014-01-02T13:41:20Z", "tags": ["km42", "mockup"],
     "author": {"user_id": "b80a4fcb", "role": "consultant", "gender": 1},
     "comments": [{"comment_id": "c00001x01", "text": "...",
                   "created_at": "2014-01-02T14:00:00Z",
                   "author": {"user_id": "ddd22ccb", "role": "manager",
                              "gender": 0}}]}

``ratings.jsonl`` holds one like/dislike event per line:

    {"rater_id": "b80a4fcb", "target_id": "c00001x01", "value": 1}

Gender is encoded 0 (male), 1 (female) or "unknown"; roles are strings
normalized against a fixed set.  A flat CSV importer is also provided,
see ``parse_thread_log``.  All timestamps are UTC, second precision.

Parsers do not raise on a bad record: the record is skipped and a
human-readable diagnostic naming the line number and cause is returned
alongside the good records.  Only an unreadable stream, or an input
where more than half of the records are malformed, is fatal.
"""

from __future__ import annotations

import csv
import enum
import json
import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import IO, Iterable


class IngestError(Exception):
    """Base class for fatal ingestion failures."""


class CorruptInputError(IngestError):
    """More than half of the records in an input could not be parsed."""


class CorpusError(IngestError):
    """The parsed records cannot be assembled into a usable corpus."""


class Gender(enum.Enum):
    male = 0
    female = 1
    unknown = "unknown"


class Role(enum.Enum):
    manager = "manager"
    director = "director"
    consultant = "consultant"
    senior_consultant = "senior_consultant"
    partner = "partner"
    external = "external"
    unknown = "unknown"


KNOWN_ROLES = frozenset(r for r in Role if r is not Role.unknown)


@dataclass(frozen=True)
class UserRef:
    user_id: str
    role: Role = Role.unknown
    gender: Gender = Gender.unknown

    def __post_init__(self) -> None:
        if not self.user_id:
            raise ValueError("user_id must be non-empty")


@dataclass(frozen=True)
class CommentRecord:
    comment_id: str
    text: str
    created_at: datetime
    author: UserRef
    order_k: int

    def __post_init__(self) -> None:
        if self.order_k < 1:
            raise ValueError("order_k starts at 1")


@dataclass(frozen=True)
class ThreadRecord:
    thread_id: str
    title: str
    description: str
    published_at: datetime
    tags: tuple[str, ...]
    author: UserRef
    comments: tuple[CommentRecord, ...]


@dataclass(frozen=True)
class RatingEvent:
    rater: UserRef
    target_message_id: str
    value: int

    def __post_init__(self) -> None:
        if self.value not in (-1, 1):
            raise ValueError("rating value must be -1 or +1")


@dataclass(frozen=True)
class Corpus:
    """An immutable, validated snapshot of one discussion log.

    ``users`` is sorted by user_id and ``user_index`` maps user_id to the
    position in that order; every author and rater appearing anywhere in
    the corpus is present.  Matrix-valued results elsewhere in the package
    index users by ``user_index``.
    """

    users: tuple[UserRef, ...]
    user_index: dict[str, int]
    threads: tuple[ThreadRecord, ...]
    ratings: tuple[RatingEvent, ...]

    @property
    def n_users(self) -> int:
        return len(self.users)


@dataclass(frozen=True)
class WindowConfig:
    """Tiling of the corpus time span into analysis windows.

    ``length`` is one of "week", "month" or "days"; ``days`` is required
    for the "days" form.  ``origin`` anchors the grid phase for "week"
    and "days" windows; when omitted the grid starts at the ISO week
    (Monday 00:00 UTC) or calendar day containing the earliest thread.
    "month" windows are calendar months and ignore ``origin``.
    """

    length: str
    days: int | None = None
    origin: datetime | None = None

    def __post_init__(self) -> None:
        if self.length not in ("week", "month", "days"):
            raise ValueError(f"unknown window length {self.length!r}")
        if self.length == "days":
            if self.days is None or self.days < 1:
                raise ValueError("days windows need days >= 1")
        elif self.days is not None:
            raise ValueError("days only applies to days windows")
        if self.origin is not None and self.origin.tzinfo is None:
            raise ValueError("origin must be timezone-aware")

    @classmethod
    def from_string(cls, text: str, origin: datetime | None = None) -> WindowConfig:
        """Parse the CLI form: "week", "month" or "days:N"."""
        if text in ("week", "month"):
            return cls(length=text, origin=origin)
        if text.startswith("days:"):
            return cls(length="days", days=int(text.split(":", 1)[1]), origin=origin)
        raise ValueError(f"bad window spec {text!r}; expected week|month|days:N")


@dataclass(frozen=True)
class WindowSlice:
    """One half-open window [start, end) with its threads and ratings.

    A thread belongs wholly to the window containing its published_at;
    ratings are attached to the window holding their target message.
    Empty windows inside the corpus span are kept.
    """

    index: int
    start: datetime
    end: datetime
    threads: tuple[ThreadRecord, ...]
    ratings: tuple[RatingEvent, ...]


# ---------------------------------------------------------------------------
# timestamps

UTC = timezone.utc


def parse_timestamp(text: str) -> datetime:
    """ISO-8601 to an aware UTC datetime, truncated to whole seconds."""
    if not isinstance(text, str) or not text:
        raise ValueError("timestamp must be a non-empty string")
    raw = text.strip()
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=UTC)
    return dt.astimezone(UTC).replace(microsecond=0)


def format_timestamp(dt: datetime) -> str:
    return dt.astimezone(UTC).strftime("%Y-%m-%dT%H:%M:%SZ")


# ---------------------------------------------------------------------------
# field decoding

def decode_gender(value: object) -> Gender | None:
    """0/1/"unknown"/None to Gender; None return means unrecognized."""
    if value is None or value == "unknown":
        return Gender.unknown
    if value == 0 or value == 1:
        return Gender(int(value))
    return None


def encode_gender(gender: Gender) -> int | str:
    return gender.value


def decode_role(value: object) -> Role | None:
    if value is None or value == "":
        return Role.unknown
    if not isinstance(value, str):
        return None
    name = value.strip().lower().replace(" ", "_").replace("-", "_")
    try:
        return Role(name)
    except ValueError:
        return None


def _decode_user(obj: object, lineno: int, diags: list[str], where: str) -> UserRef | None:
    """Decode an author object; None means the record/comment is unusable."""
    if not isinstance(obj, dict) or not obj.get("user_id"):
        diags.append(f"missing author_id at line {lineno}{where}")
        return None
    user_id = obj["user_id"]
    if not isinstance(user_id, str):
        diags.append(f"invalid author_id at line {lineno}{where}")
        return None
    gender = decode_gender(obj.get("gender"))
    if gender is None:
        diags.append(f"unrecognized gender {obj.get('gender')!r} at line {lineno}{where}")
        gender = Gender.unknown
    role = decode_role(obj.get("role"))
    if role is None:
        diags.append(f"unrecognized role {obj.get('role')!r} at line {lineno}{where}")
        role = Role.unknown
    return UserRef(user_id=user_id, role=role, gender=gender)


# ---------------------------------------------------------------------------
# thread log parsing

def _open_maybe(source: str | Path | IO[str]) -> tuple[IO[str], bool]:
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8"), True
    return source, False


def parse_thread_log(
    source: str | Path | IO[str], format: str = "jsonl"
) -> tuple[list[ThreadRecord], list[str]]:
    """Parse a thread log into validated records plus diagnostics.

    Malformed records are skipped with a diagnostic naming the line and
    cause.  Raises CorruptInputError when more than 50% of the records
    are malformed, and propagates I/O errors from unreadable sources.
    """
    stream, owned = _open_maybe(source)
    try:
        if format == "jsonl":
            return _parse_threads_jsonl(stream)
        if format == "csv":
            return _parse_threads_csv(stream)
        raise ValueError(f"unknown thread log format {format!r}")
    finally:
        if owned:
            stream.close()


def _finish_comments(
    thread_id: str,
    published_at: datetime,
    raw_comments: list[tuple[str, str, datetime, UserRef, int]],
    diags: list[str],
) -> tuple[CommentRecord, ...]:
    """Clamp, order and number a thread's comments.

    Comments predating the thread are clamped to published_at with a
    diagnostic; order_k then follows (created_at, comment_id) order.
    """
    clamped: list[tuple[str, str, datetime, UserRef]] = []
    seen_ids: set[str] = set()
    for comment_id, text, created_at, author, lineno in raw_comments:
        if comment_id in seen_ids:
            diags.append(f"duplicate comment_id {comment_id} at line {lineno}; skipped")
            continue
        seen_ids.add(comment_id)
        if created_at < published_at:
            diags.append(
                f"comment {comment_id} predates thread {thread_id} at line {lineno};"
                " clamped to published_at"
            )
            created_at = published_at
        clamped.append((comment_id, text, created_at, author))
    clamped.sort(key=lambda c: (c[2], c[0]))
    return tuple(
        CommentRecord(comment_id=cid, text=text, created_at=at, author=author, order_k=k)
        for k, (cid, text, at, author) in enumerate(clamped, start=1)
    )


def _parse_threads_jsonl(stream: IO[str]) -> tuple[list[ThreadRecord], list[str]]:
    threads: list[ThreadRecord] = []
    diags: list[str] = []
    seen_threads: set[str] = set()
    total = 0
    malformed = 0

    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        total += 1
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            diags.append(f"invalid JSON at line {lineno}")
            malformed += 1
            continue
        record = _decode_thread_obj(obj, lineno, diags)
        if record is None:
            malformed += 1
            continue
        if record.thread_id in seen_threads:
            diags.append(f"duplicate thread_id {record.thread_id} at line {lineno}; skipped")
            malformed += 1
            continue
        seen_threads.add(record.thread_id)
        threads.append(record)

    if total and malformed * 2 > total:
        raise CorruptInputError(
            f"corrupt input: {malformed} of {total} records malformed"
        )
    return threads, diags


def _decode_thread_obj(obj: object, lineno: int, diags: list[str]) -> ThreadRecord | None:
    if not isinstance(obj, dict):
        diags.append(f"record is not an object at line {lineno}")
        return None
    thread_id = obj.get("thread_id")
    if not thread_id or not isinstance(thread_id, str):
        diags.append(f"missing thread_id at line {lineno}")
        return None
    author = _decode_user(obj.get("author"), lineno, diags, "")
    if author is None:
        return None
    if "published_at" not in obj:
        diags.append(f"missing published_at at line {lineno}")
        return None
    try:
        published_at = parse_timestamp(obj["published_at"])
    except (ValueError, TypeError):
        diags.append(f"invalid published_at at line {lineno}")
        return None

    title = obj.get("title", "")
    description = obj.get("description", "")
    tags = obj.get("tags", [])
    if not isinstance(title, str) or not isinstance(description, str):
        diags.append(f"invalid title/description at line {lineno}")
        return None
    if not isinstance(tags, list) or not all(isinstance(t, str) for t in tags):
        diags.append(f"invalid tags at line {lineno}")
        return None

    comments = obj.get("comments", [])
    if not isinstance(comments, list):
        diags.append(f"invalid comments at line {lineno}")
        return None
    raw_comments: list[tuple[str, str, datetime, UserRef, int]] = []
    for idx, c in enumerate(comments):
        where = f" (comment {idx})"
        if not isinstance(c, dict) or not c.get("comment_id"):
            diags.append(f"missing comment_id at line {lineno}{where}; comment skipped")
            continue
        where = f" (comment {c['comment_id']})"
        c_author = _decode_user(c.get("author"), lineno, diags, where)
        if c_author is None:
            continue
        try:
            created_at = parse_timestamp(c.get("created_at"))
        except (ValueError, TypeError):
            diags.append(f"invalid created_at at line {lineno}{where}; comment skipped")
            continue
        text = c.get("text", "")
        if not isinstance(text, str):
            diags.append(f"invalid text at line {lineno}{where}; comment skipped")
            continue
        raw_comments.append((c["comment_id"], text, created_at, c_author, lineno))

    return ThreadRecord(
        thread_id=thread_id,
        title=title,
        description=description,
        published_at=published_at,
        tags=tuple(tags),
        author=author,
        comments=_finish_comments(thread_id, published_at, raw_comments, diags),
    )


CSV_COLUMNS = [
    "thread_id", "title", "description", "published_at", "tags",
    "author_id", "author_role", "author_gender",
    "comment_id", "comment_text", "comment_created_at",
    "comment_author_id", "comment_author_role", "comment_author_gender",
]


def _csv_user(user_id: object, role: object, gender_text: object,
              lineno: int, diags: list[str], where: str) -> UserRef | None:
    gender: object = gender_text
    if isinstance(gender_text, str):
        g = gender_text.strip()
        gender = int(g) if g in ("0", "1") else (g or None)
    return _decode_user({"user_id": user_id, "role": role or None, "gender": gender},
                        lineno, diags, where)


def _parse_threads_csv(stream: IO[str]) -> tuple[list[ThreadRecord], list[str]]:
    """Flat CSV importer.

    One row per thread (comment columns empty) and one row per comment
    (comment columns filled, thread columns repeated).  Multiple tags are
    separated by "|" inside the tags cell.  Thread rows must precede
    their comment rows.
    """
    diags: list[str] = []
    reader = csv.DictReader(stream)
    missing = [c for c in CSV_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise CorruptInputError(f"corrupt input: CSV header missing {', '.join(missing)}")

    total = 0
    malformed = 0
    order: list[str] = []
    heads: dict[str, dict] = {}
    pending: dict[str, list[tuple[str, str, datetime, UserRef, int]]] = {}

    for row in reader:
        lineno = reader.line_num
        total += 1
        thread_id = (row.get("thread_id") or "").strip()
        if not thread_id:
            diags.append(f"missing thread_id at line {lineno}")
            malformed += 1
            continue
        if not (row.get("comment_id") or "").strip():
            if thread_id in heads:
                diags.append(f"duplicate thread_id {thread_id} at line {lineno}; skipped")
                malformed += 1
                continue
            author = _csv_user(row.get("author_id", "").strip(), row.get("author_role"),
                               row.get("author_gender"), lineno, diags, "")
            if author is None:
                malformed += 1
                continue
            try:
                published_at = parse_timestamp(row.get("published_at", ""))
            except (ValueError, TypeError):
                diags.append(f"invalid published_at at line {lineno}")
                malformed += 1
                continue
            tags = tuple(t.strip() for t in (row.get("tags") or "").split("|") if t.strip())
            heads[thread_id] = {
                "published_at": published_at,
                "title": row.get("title") or "",
                "description": row.get("description") or "",
                "tags": tags,
                "author": author,
            }
            pending[thread_id] = []
            order.append(thread_id)
        else:
            comment_id = row["comment_id"].strip()
            where = f" (comment {comment_id})"
            if thread_id not in heads:
                diags.append(f"comment for unknown thread {thread_id} at line {lineno}; skipped")
                malformed += 1
                continue
            author = _csv_user(row.get("comment_author_id", "").strip(),
                               row.get("comment_author_role"),
                               row.get("comment_author_gender"), lineno, diags, where)
            if author is None:
                malformed += 1
                continue
            try:
                created_at = parse_timestamp(row.get("comment_created_at", ""))
            except (ValueError, TypeError):
                diags.append(f"invalid created_at at line {lineno}{where}")
                malformed += 1
                continue
            pending[thread_id].append(
                (comment_id, row.get("comment_text") or "", created_at, author, lineno)
            )

    if total and malformed * 2 > total:
        raise CorruptInputError(f"corrupt input: {malformed} of {total} records malformed")

    threads = []
    for thread_id in order:
        head = heads[thread_id]
        threads.append(ThreadRecord(
            thread_id=thread_id,
            title=head["title"],
            description=head["description"],
            published_at=head["published_at"],
            tags=head["tags"],
            author=head["author"],
            comments=_finish_comments(thread_id, head["published_at"],
                                      pending[thread_id], diags),
        ))
    return threads, diags


# ---------------------------------------------------------------------------
# ratings parsing

def parse_ratings(source: str | Path | IO[str]) -> tuple[list[RatingEvent], list[str]]:
    """Parse like/dislike events; duplicates per (rater, target) collapse
    to the last occurrence and value 0 ("no opinion") is skipped."""
    stream, owned = _open_maybe(source)
    try:
        diags: list[str] = []
        total = 0
        malformed = 0
        events: dict[tuple[str, str], RatingEvent] = {}
        for lineno, line in enumerate(stream, start=1):
            if not line.strip():
                continue
            total += 1
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                diags.append(f"invalid JSON at line {lineno}")
                malformed += 1
                continue
            if not isinstance(obj, dict):
                diags.append(f"record is not an object at line {lineno}")
                malformed += 1
                continue
            rater_id = obj.get("rater_id")
            target_id = obj.get("target_id")
            value = obj.get("value")
            if not rater_id or not isinstance(rater_id, str):
                diags.append(f"missing rater_id at line {lineno}")
                malformed += 1
                continue
            if not target_id or not isinstance(target_id, str):
                diags.append(f"missing target_id at line {lineno}")
                malformed += 1
                continue
            if not isinstance(value, int) or isinstance(value, bool) or value not in (-1, 0, 1):
                diags.append(f"invalid rating value {value!r} at line {lineno}")
                malformed += 1
                continue
            if value == 0:
                diags.append(f"rating value 0 (no opinion) at line {lineno}; skipped")
                continue
            events[(rater_id, target_id)] = RatingEvent(
                rater=UserRef(user_id=rater_id),
                target_message_id=target_id,
                value=value,
            )
        if total and malformed * 2 > total:
            raise CorruptInputError(f"corrupt input: {malformed} of {total} records malformed")
        return list(events.values()), diags
    finally:
        if owned:
            stream.close()


# ---------------------------------------------------------------------------
# corpus assembly

def _merge_attrs(
    attrs: dict[str, tuple[Role, Gender]], ref: UserRef, diags: list[str]
) -> None:
    """Field-wise merge: the first known role/gender for a user_id wins;
    later conflicting known values are reported and ignored."""
    role, gender = attrs.get(ref.user_id, (Role.unknown, Gender.unknown))
    if ref.role is not Role.unknown:
        if role is Role.unknown:
            role = ref.role
        elif role is not ref.role:
            diags.append(
                f"conflicting role for {ref.user_id}: keeping {role.value},"
                f" saw {ref.role.value}"
            )
    if ref.gender is not Gender.unknown:
        if gender is Gender.unknown:
            gender = ref.gender
        elif gender is not ref.gender:
            diags.append(
                f"conflicting gender for {ref.user_id}: keeping {gender.value},"
                f" saw {ref.gender.value}"
            )
    attrs[ref.user_id] = (role, gender)


def build_corpus(
    threads: Iterable[ThreadRecord], ratings: Iterable[RatingEvent] = ()
) -> tuple[Corpus, list[str]]:
    """Assemble validated records into a Corpus.

    Every author and rater is mapped to a single canonical UserRef;
    ratings whose target is not a known message are dropped with a
    diagnostic.  Zero valid threads is fatal.
    """
    threads = list(threads)
    ratings = list(ratings)
    if not threads:
        raise CorpusError("no valid threads; cannot build corpus")

    diags: list[str] = []
    attrs: dict[str, tuple[Role, Gender]] = {}
    for thread in threads:
        _merge_attrs(attrs, thread.author, diags)
        for comment in thread.comments:
            _merge_attrs(attrs, comment.author, diags)
    for event in ratings:
        _merge_attrs(attrs, event.rater, diags)

    canonical = {
        user_id: UserRef(user_id=user_id, role=role, gender=gender)
        for user_id, (role, gender) in attrs.items()
    }
    users = tuple(canonical[user_id] for user_id in sorted(canonical))
    user_index = {ref.user_id: i for i, ref in enumerate(users)}

    fixed_threads = []
    message_ids: set[str] = set()
    for thread in threads:
        message_ids.add(thread.thread_id)
        comments = []
        for c in thread.comments:
            if c.comment_id in message_ids:
                diags.append(
                    f"duplicate message id {c.comment_id} in thread {thread.thread_id};"
                    " comment kept, rating targets resolve to the first occurrence"
                )
            message_ids.add(c.comment_id)
            comments.append(CommentRecord(
                comment_id=c.comment_id, text=c.text, created_at=c.created_at,
                author=canonical[c.author.user_id], order_k=c.order_k,
            ))
        fixed_threads.append(ThreadRecord(
            thread_id=thread.thread_id, title=thread.title,
            description=thread.description, published_at=thread.published_at,
            tags=thread.tags, author=canonical[thread.author.user_id],
            comments=tuple(comments),
        ))

    fixed_ratings = []
    for event in ratings:
        if event.target_message_id not in message_ids:
            diags.append(
                f"rating by {event.rater.user_id} targets unknown message"
                f" {event.target_message_id}; dropped"
            )
            continue
        fixed_ratings.append(RatingEvent(
            rater=canonical[event.rater.user_id],
            target_message_id=event.target_message_id,
            value=event.value,
        ))

    corpus = Corpus(
        users=users,
        user_index=user_index,
        threads=tuple(fixed_threads),
        ratings=tuple(fixed_ratings),
    )
    return corpus, diags


def message_author_map(threads: Iterable[ThreadRecord]) -> dict[str, UserRef]:
    """Map every message id (thread or comment) to its author.

    On duplicate ids the first occurrence wins, matching build_corpus.
    """
    authors: dict[str, UserRef] = {}
    for thread in threads:
        authors.setdefault(thread.thread_id, thread.author)
        for comment in thread.comments:
            authors.setdefault(comment.comment_id, comment.author)
    return authors


# ---------------------------------------------------------------------------
# windowing

def _month_start(dt: datetime) -> datetime:
    return datetime(dt.year, dt.month, 1, tzinfo=UTC)


def _next_month(dt: datetime) -> datetime:
    if dt.month == 12:
        return datetime(dt.year + 1, 1, 1, tzinfo=UTC)
    return datetime(dt.year, dt.month + 1, 1, tzinfo=UTC)


def _grid_start(first: datetime, cfg: WindowConfig) -> datetime:
    if cfg.length == "month":
        return _month_start(first)
    if cfg.length == "week":
        width = timedelta(days=7)
        anchor = cfg.origin
        if anchor is None:
            day = first.astimezone(UTC).replace(hour=0, minute=0, second=0, microsecond=0)
            anchor = day - timedelta(days=day.weekday())
    else:
        width = timedelta(days=cfg.days or 1)
        anchor = cfg.origin
        if anchor is None:
            anchor = first.astimezone(UTC).replace(hour=0, minute=0, second=0, microsecond=0)
    steps = math.floor((first - anchor) / width)
    return anchor + steps * width


def window_partition(corpus: Corpus, cfg: WindowConfig) -> list[WindowSlice]:
    """Tile [min published_at, max published_at] into disjoint contiguous
    windows; windows with no threads are kept so gaps stay visible."""
    times = [t.published_at for t in corpus.threads]
    first, last = min(times), max(times)

    bounds: list[tuple[datetime, datetime]] = []
    start = _grid_start(first, cfg)
    while start <= last:
        end = _next_month(start) if cfg.length == "month" else (
            start + timedelta(days=7 if cfg.length == "week" else (cfg.days or 1))
        )
        bounds.append((start, end))
        start = end

    by_window: list[list[ThreadRecord]] = [[] for _ in bounds]
    for thread in corpus.threads:
        for idx, (lo, hi) in enumerate(bounds):
            if lo <= thread.published_at < hi:
                by_window[idx].append(thread)
                break

    slices = []
    for idx, (lo, hi) in enumerate(bounds):
        threads = tuple(by_window[idx])
        message_ids = {t.thread_id for t in threads}
        message_ids.update(c.comment_id for t in threads for c in t.comments)
        ratings = tuple(r for r in corpus.ratings if r.target_message_id in message_ids)
        slices.append(WindowSlice(index=idx, start=lo, end=hi, threads=threads,
                                  ratings=ratings))
    return slices


def whole_span_slice(corpus: Corpus) -> WindowSlice:
    """The corpus as a single window covering its whole span."""
    times = [t.published_at for t in corpus.threads]
    return WindowSlice(index=0, start=min(times), end=max(times) + timedelta(seconds=1),
                       threads=corpus.threads, ratings=corpus.ratings)


# ---------------------------------------------------------------------------
# canonical serialization (round-trips through parse_thread_log/parse_ratings)

def user_to_dict(ref: UserRef) -> dict:
    return {"user_id": ref.user_id, "role": ref.role.value,
            "gender": encode_gender(ref.gender)}


def thread_to_dict(thread: ThreadRecord) -> dict:
    return {
        "thread_id": thread.thread_id,
        "title": thread.title,
        "description": thread.description,
        "published_at": format_timestamp(thread.published_at),
        "tags": list(thread.tags),
        "author": user_to_dict(thread.author),
        "comments": [
            {
                "comment_id": c.comment_id,
                "text": c.text,
                "created_at": format_timestamp(c.created_at),
                "author": user_to_dict(c.author),
            }
            for c in thread.comments
        ],
    }


def rating_to_dict(event: RatingEvent) -> dict:
    return {"rater_id": event.rater.user_id,
            "target_id": event.target_message_id,
            "value": event.value}


def write_threads_jsonl(threads: Iterable[ThreadRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as out:
        for thread in threads:
            out.write(json.dumps(thread_to_dict(thread), sort_keys=True,
                                 ensure_ascii=False))
            out.write("\n")


def write_ratings_jsonl(ratings: Iterable[RatingEvent], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as out:
        for event in ratings:
            out.write(json.dumps(rating_to_dict(event), sort_keys=True,
                                 ensure_ascii=False))
            out.write("\n")
