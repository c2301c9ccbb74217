import pytest
from hypothesis import given
from hypothesis import strategies as st

from evident.graphs import (
    BUILTIN,
    GraphFormatError,
    GroundTruth,
    Network,
    builtin,
    dump_gml,
    load_edge_list,
    load_gml,
    parse_gml,
    save_gml,
)


@pytest.mark.parametrize(
    "name, N, n, sizes",
    [("karate", 34, 2, [17, 17]), ("dolphins", 62, 2, [21, 41]), ("polbooks", 105, 3, [43, 13, 49])],
)
def test_builtin_counts(name, N, n, sizes):
    network, truth = builtin(name)
    assert network.N == truth.N == N
    assert truth.n == n
    assert truth.sizes() == sizes


def test_karate_has_78_edges():
    network, _ = builtin("karate")
    assert len(network.edges) == 78


def test_polbooks_leaning_codes_map_to_fixed_classes():
    _, truth = builtin("polbooks")
    assert truth.names == ("l", "n", "c")


def test_unknown_builtin_lists_valid_names():
    with pytest.raises(KeyError) as err:
        builtin("karat")
    assert all(name in str(err.value) for name in BUILTIN)


@pytest.mark.parametrize("name", BUILTIN)
def test_bundled_round_trip(tmp_path, name):
    network, truth = builtin(name)
    save_gml(tmp_path / "g.gml", network, truth)
    again, truth2 = load_gml(tmp_path / "g.gml")
    assert again == network
    assert truth2.classes == truth.classes


def test_gml_with_string_classes():
    text = """graph [
      node [ id 10 label "a" value "x" ]
      node [ id 20 label "b" value "y" ]
      node [ id 30 label "c" value "x" ]
      edge [ source 10 target 30 ]
    ]"""
    network, truth = parse_gml(text)
    assert network.labels == ("a", "b", "c")
    assert network.edges == ((0, 2),)
    assert truth.classes == (1, 2, 1)


def test_gml_without_classes():
    network, truth = parse_gml("graph [ node [ id 0 ] node [ id 1 ] ]")
    assert network.N == 2 and truth is None


@pytest.mark.parametrize(
    "text, line",
    [
        ("graph [\n node [ id 0 ]\n node [ id 0 ]\n]", 3),
        ("graph [\n node [ id 0 ]\n edge [ source 0 target 7 ]\n]", 3),
        ("graph [\n node [ id 0 \n", 2),
        ("graph [\n node [ id 0 ] ] ]", 2),
        ("graph [\n node [ id 0 ]\n @ \n]", 3),
    ],
)
def test_gml_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as err:
        parse_gml(text, "bad.gml")
    assert err.value.line == line
    assert f"bad.gml:{line}:" in str(err.value)


def test_edge_list_triangle(tmp_path):
    (tmp_path / "e.txt").write_text("1 2\n2 3\n# comment\n1 3\n")
    (tmp_path / "l.txt").write_text("1 1\n2 1\n3 2\n")
    network, truth = load_edge_list(tmp_path / "e.txt", tmp_path / "l.txt")
    assert network.N == 3 and truth.n == 2
    assert network.edges == ((0, 1), (0, 2), (1, 2))


def test_edge_list_may_be_empty(tmp_path):
    (tmp_path / "e.txt").write_text("")
    (tmp_path / "l.txt").write_text("a x\nb y\n")
    network, truth = load_edge_list(tmp_path / "e.txt", tmp_path / "l.txt")
    assert network.N == 2 and network.edges == () and truth.n == 2


def test_edge_list_missing_label(tmp_path):
    (tmp_path / "e.txt").write_text("1 2\n")
    (tmp_path / "l.txt").write_text("1 1\n")
    with pytest.raises(GraphFormatError, match="no label"):
        load_edge_list(tmp_path / "e.txt", tmp_path / "l.txt")


def test_ground_truth_needs_contiguous_classes():
    with pytest.raises(ValueError):
        GroundTruth((1, 3))
    assert GroundTruth((2, 1, 2)).members(2) == [0, 2]


def test_network_rejects_bad_edges():
    with pytest.raises(GraphFormatError):
        Network(("a", "b"), ((1, 0),))
    with pytest.raises(GraphFormatError):
        Network(("a", "a"), ())
    assert Network.from_pairs(("a", "b"), [(1, 0), (0, 1), (1, 1)]).edges == ((0, 1),)


@given(st.integers(1, 12).flatmap(
    lambda N: st.tuples(
        st.just(N),
        st.lists(st.tuples(st.integers(0, N - 1), st.integers(0, N - 1)), max_size=30),
        st.lists(st.integers(1, 3), min_size=N, max_size=N),
    )
))
def test_round_trip_property(case):
    N, pairs, raw = case
    # relabel raw classes to 1..n without gaps
    order = {c: i + 1 for i, c in enumerate(sorted(set(raw)))}
    truth = GroundTruth(tuple(order[c] for c in raw))
    network = Network.from_pairs([f"v{i}" for i in range(N)], pairs)
    again, truth2 = parse_gml(dump_gml(network, truth))
    assert again == network and truth2.classes == truth.classes
    # classes partition the nodes
    members = [set(truth.members(c)) for c in range(1, truth.n + 1)]
    assert set().union(*members) == set(range(N))
    assert sum(map(len, members)) == N
