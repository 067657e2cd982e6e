import pytest

from bookramsey.errors import ParseError
from bookramsey.graph import complete_graph
from bookramsey.io import (
    atomic_write,
    format_coloring,
    format_graph,
    load_coloring,
    load_graph,
    parse_coloring,
    parse_graph,
)
from bookramsey.sampler import Seed, sample_gnp, sample_uniform_coloring


class TestGraphFormat:
    def test_roundtrip(self):
        g = sample_gnp(12, 0.5, Seed(3))
        assert parse_graph(format_graph(g)) == g

    def test_comments_and_blanks(self):
        text = "# a triangle\n3\n\n0 1\n# middle\n1 2\n0 2\n"
        assert parse_graph(text) == complete_graph(3)

    def test_empty_file(self):
        with pytest.raises(ParseError):
            parse_graph("# nothing\n")

    def test_bad_header(self):
        with pytest.raises(ParseError):
            parse_graph("3 4\n0 1\n")

    def test_bad_edge_line(self):
        with pytest.raises(ParseError):
            parse_graph("3\n0 x\n")

    def test_out_of_range_edge(self):
        with pytest.raises(ParseError):
            parse_graph("3\n0 5\n")

    def test_load(self, tmp_path):
        path = tmp_path / "g.txt"
        atomic_write(path, format_graph(complete_graph(4)))
        assert load_graph(path) == complete_graph(4)


class TestColoringFormat:
    def test_roundtrip(self):
        g = sample_gnp(10, 0.6, Seed(4))
        c = sample_uniform_coloring(g, Seed(5))
        back = parse_coloring(format_coloring(c))
        assert back.host == g and back.red_edges == c.red_edges

    def test_bad_color_tag(self):
        with pytest.raises(ParseError):
            parse_coloring("2\n0 1 x\n")

    def test_inconsistent_recolor(self):
        with pytest.raises(ParseError):
            parse_coloring("2\n0 1 r\n1 0 b\n")

    def test_reversed_endpoints_normalized(self):
        c = parse_coloring("3\n1 0 r\n1 2 b\n")
        assert c.is_red(0, 1) and not c.is_red(1, 2)

    def test_load(self, tmp_path):
        g = complete_graph(4)
        c = sample_uniform_coloring(g, Seed(6))
        path = tmp_path / "c.txt"
        atomic_write(path, format_coloring(c))
        assert load_coloring(path).red_edges == c.red_edges


class TestAtomicWrite:
    def test_no_partial_file_on_success(self, tmp_path):
        path = tmp_path / "out.txt"
        atomic_write(path, "hello\n")
        assert path.read_text() == "hello\n"
        leftovers = [p for p in tmp_path.iterdir() if p != path]
        assert leftovers == []

    def test_overwrites_existing(self, tmp_path):
        path = tmp_path / "out.txt"
        path.write_text("old")
        atomic_write(path, "new")
        assert path.read_text() == "new"
