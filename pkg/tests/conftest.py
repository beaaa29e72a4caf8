import networkx as nx
import pytest
from hypothesis import settings

from uppertail import graph as g

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")


def _corpus():
    out = {}
    for k in range(3, 7):
        out[f"K{k}"] = g.clique(k)
    for k in range(3, 13):
        out[f"C{k}"] = g.cycle(k)
    for k in range(1, 5):
        for l in range(k, 5):
            out[f"K{k},{l}"] = g.complete_bipartite(k, l)
    for h in range(2, 5):
        out[f"T{h}"] = g.binary_tree(h)
    for k in range(2, 9):
        out[f"P{k}"] = g.path(k)
    for k in range(2, 6):
        out[f"S{k}"] = g.star(k)
    out["Petersen"] = g.petersen()
    return out


CORPUS = _corpus()


def atlas(max_nodes=7, connected=None):
    """Graphs from the networkx atlas (one per isomorphism class, up to 7 vertices)."""
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0 or n > max_nodes:
            continue
        if connected is not None and nx.is_connected(G) != connected:
            continue
        yield g.Graph.from_edges(G.edges(), n)


@pytest.fixture(params=sorted(CORPUS), ids=str)
def corpus_graph(request):
    return request.param, CORPUS[request.param]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(VERDICTS):
            terminalreporter.write_line(VERDICTS[num])
