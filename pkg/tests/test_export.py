"""File writers: exact rendering, ordering and escaping."""

import csv

import numpy as np
import pytest

from conftest import make_corpus
from leadnet.analytics import (
    active_user_indices,
    homophily,
    response_stats,
    top_mass,
)
from leadnet.export import (
    analytics_rows,
    render,
    write_analytics_csv,
    write_edges_csv,
    write_graph_dot,
    write_rankings_csv,
)
from leadnet.ingest import Gender, Role, UserRef
from leadnet.multiplex import build_tensor
from leadnet.rank import MprParams, brokerage, multiplex_pagerank


class TestRender:
    def test_none_becomes_the_empty_string(self):
        assert render(None) == ""

    def test_floats_round_trip_through_repr(self):
        value = 1.0 / 3.0
        assert float(render(value)) == value
        assert render(0.5) == "0.5"

    def test_other_values_pass_through(self):
        assert render(7) == "7"
        assert render("k=3") == "k=3"


@pytest.fixture()
def ranked(tmp_path):
    users = {
        "a": UserRef(user_id="a", role=Role.manager, gender=Gender.female),
        "b": UserRef(user_id="b", role=Role.consultant, gender=Gender.male),
    }
    corpus, window = make_corpus(
        [("t0", "a", [("b", "x"), ("c", "y")]), ("t1", "c", [("a", "z")])],
        [("b", "t0", 1)],
        users=users,
    )
    tensor = build_tensor(window, corpus)
    result = multiplex_pagerank(tensor, MprParams())
    return corpus, window, tensor, result


class TestRankingsCsv:
    def test_rows_sorted_by_leadership_then_id(self, ranked, tmp_path):
        corpus, _window, tensor, result = ranked
        path = tmp_path / "rankings.csv"
        write_rankings_csv(path, corpus, result, brokerage(tensor))
        with open(path, newline="") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == corpus.n_users
        scores = [float(r["leadership"]) for r in rows]
        assert scores == sorted(scores, reverse=True)
        for first, second in zip(rows, rows[1:]):
            if first["leadership"] == second["leadership"]:
                assert first["user_id"] < second["user_id"]
        assert sum(scores) == pytest.approx(1.0)
        by_id = {r["user_id"]: r for r in rows}
        assert by_id["a"]["gender"] == "female"
        assert by_id["a"]["role"] == "manager"
        assert by_id["c"]["gender"] == "unknown"
        parsed = float(by_id["a"]["r_empowerment"])
        index = corpus.user_index["a"]
        assert parsed == result.empowerment.scores[index]


class TestAnalyticsCsv:
    def test_row_layout_and_none_rendering(self, ranked, tmp_path):
        corpus, window, _tensor, result = ranked
        top = top_mass(result.leadership, corpus,
                       active_user_indices(window, corpus), 2)
        rows = analytics_rows(
            "2014-01-06T00:00:00Z",
            homophily(window),
            top,
            response_stats(window, "author_role"),
            response_stats(window, "author_gender"),
        )
        path = tmp_path / "analytics.csv"
        write_analytics_csv(path, rows)
        with open(path, newline="") as handle:
            read = list(csv.DictReader(handle))
        metrics = [r["metric"] for r in read]
        assert metrics[:5] == ["homophily_p_ww", "homophily_p_mm",
                               "prior_w", "prior_m", "top_mass_w"]
        by_metric = {r["metric"]: r for r in read}
        assert by_metric["homophily_p_mm"]["value"] == "0.0"
        assert by_metric["top_mass_w"]["group"] == "k=2"
        assert by_metric["top_mass_w"]["count"] == "3"
        groups = {r["group"] for r in read
                  if r["metric"] == "response_latency_mean_s"}
        assert groups == {"role:manager", "role:consultant",
                          "gender:female"}

    def test_empty_rates_render_as_empty_cells(self, tmp_path):
        corpus, window = make_corpus([("t0", "a", [])])
        rows = analytics_rows(
            "2014-01-06T00:00:00Z",
            homophily(window),
            top_mass(
                multiplex_pagerank(build_tensor(window, corpus),
                                   MprParams()).leadership,
                corpus,
            ),
            response_stats(window, "author_role"),
            response_stats(window, "author_gender"),
        )
        path = tmp_path / "analytics.csv"
        write_analytics_csv(path, rows)
        with open(path, newline="") as handle:
            read = {r["metric"]: r for r in csv.DictReader(handle)}
        assert read["homophily_p_ww"]["value"] == ""
        assert read["prior_w"]["value"] == ""
        assert read["prior_w"]["count"] == "0"


class TestEdgesCsv:
    def test_grouped_by_layer_then_sorted(self, ranked, tmp_path):
        corpus, _window, tensor, _result = ranked
        path = tmp_path / "edges.csv"
        write_edges_csv(path, tensor, corpus)
        with open(path, newline="") as handle:
            rows = list(csv.DictReader(handle))
        layers = [r["layer"] for r in rows]
        assert layers == sorted(
            layers, key=["empowerment", "collaboration",
                         "credibility"].index)
        for row in rows:
            weight = float(row["weight"])
            assert 0.0 < weight <= 1.0
        empowerment = [(r["src"], r["dst"]) for r in rows
                       if r["layer"] == "empowerment"]
        assert empowerment == sorted(empowerment)


class TestGraphDot:
    def test_nodes_carry_attributes_and_quoting_escapes(self, tmp_path):
        users = {'we"ird': UserRef(user_id='we"ird', role=Role.partner,
                                   gender=Gender.unknown)}
        corpus, window = make_corpus(
            [("t0", 'we"ird', [("b", "x")])], users=users)
        tensor = build_tensor(window, corpus)
        path = tmp_path / "graph.dot"
        write_graph_dot(path, tensor, corpus)
        text = path.read_text()
        assert text.startswith("digraph leadnet {")
        assert text.endswith("}\n")
        assert '"we\\"ird" [gender="unknown", role="partner"];' in text
        assert '"we\\"ird" -> "b" [layer="empowerment", weight="1.0"];' \
            in text
        assert '"b" -> "we\\"ird" [layer="collaboration"' in text
