"""Shared factories for building small corpora by hand in tests."""

from __future__ import annotations

import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from leadnet.ingest import (
    CommentRecord,
    Corpus,
    Gender,
    RatingEvent,
    Role,
    ThreadRecord,
    UserRef,
    whole_span_slice,
)

T0 = datetime(2014, 1, 6, tzinfo=timezone.utc)

TRAILING_PUNCT = ".,;:!?)('\"`>]}"


def make_corpus(thread_specs, rating_specs=(), users=None):
    """Build a corpus plus its whole-span slice from compact specs.

    thread_specs: [(thread_id, author_id, [(commenter_id, text), ...])].
    rating_specs: [(rater_id, message_id, value)].
    Comment k of a thread gets id f"{thread_id}m{k}" and a timestamp k
    minutes after the thread; thread i is published i hours after T0.
    Users not in ``users`` default to consultants of unknown gender.
    """
    users = dict(users or {})

    def ref(uid: str) -> UserRef:
        if uid not in users:
            users[uid] = UserRef(user_id=uid, role=Role.consultant,
                                 gender=Gender.unknown)
        return users[uid]

    threads = []
    for ti, (thread_id, author_id, comments) in enumerate(thread_specs):
        published = T0 + timedelta(hours=ti)
        author = ref(author_id)
        records = tuple(
            CommentRecord(
                comment_id=f"{thread_id}m{k}",
                text=text,
                created_at=published + timedelta(minutes=k),
                author=ref(commenter_id),
                order_k=k,
            )
            for k, (commenter_id, text) in enumerate(comments, start=1)
        )
        threads.append(ThreadRecord(
            thread_id=thread_id, title="", description="",
            published_at=published, tags=(), author=author,
            comments=records,
        ))
    ratings = tuple(
        RatingEvent(rater=ref(rater_id), target_message_id=message_id,
                    value=value)
        for rater_id, message_id, value in rating_specs
    )
    ordered = tuple(sorted(users.values(), key=lambda u: u.user_id))
    corpus = Corpus(
        users=ordered,
        user_index={u.user_id: i for i, u in enumerate(ordered)},
        threads=tuple(threads),
        ratings=ratings,
    )
    return corpus, whole_span_slice(corpus)


def random_corpus(rng, n_users=8, n_threads=6, max_comments=6,
                  p_mention=0.3):
    """A random corpus with mentions and ratings, plus the raw event
    lists the reference implementations consume."""
    uids = [f"u{i}" for i in range(n_users)]
    thread_specs = []
    rating_specs = []
    message_authors = []  # (message_id, author_id)
    for t in range(n_threads):
        author = uids[rng.randrange(n_users)]
        thread_id = f"t{t}"
        message_authors.append((thread_id, author))
        participants = [author]
        comments = []
        for k in range(1, rng.randrange(max_comments + 1) + 1):
            commenter = uids[rng.randrange(n_users)]
            text = f"msg {t} {k}"
            if rng.random() < p_mention:
                target = participants[rng.randrange(len(participants))]
                text = f"@{target}, {text}"
            if rng.random() < 0.1:
                text = f"@ghost {text}"
            comments.append((commenter, text))
            if commenter not in participants:
                participants.append(commenter)
            message_authors.append((f"{thread_id}m{k}", commenter))
        thread_specs.append((thread_id, author, comments))
    for _ in range(rng.randrange(3 * n_threads + 1)):
        rater = uids[rng.randrange(n_users)]
        message_id, target_author = message_authors[
            rng.randrange(len(message_authors))
        ]
        value = rng.choice([-1, 1])
        rating_specs.append((rater, message_id, value))
    corpus, window_slice = make_corpus(thread_specs, rating_specs)
    thread_events = [
        (author, list(comments)) for _tid, author, comments in thread_specs
    ]
    author_of = dict(message_authors)
    rating_events = [
        (rater, author_of[message_id], value)
        for rater, message_id, value in rating_specs
    ]
    return corpus, window_slice, thread_events, rating_events


def resolve_like_package(text, author, prior):
    """Mention resolution mirroring the collaboration layer: the first
    @token matching a prior participant (after progressively stripping
    trailing punctuation) wins, else the thread author."""
    for token in text.split():
        if not token.startswith("@"):
            continue
        candidate = token[1:]
        while candidate:
            if candidate in prior:
                return candidate
            stripped = candidate.rstrip(TRAILING_PUNCT)
            if stripped == candidate:
                break
            candidate = stripped
    return author
