import pytest
from hypothesis import HealthCheck, settings

from planarcut.embedding import PlanarEmbeddedGraph

settings.register_profile(
    "ci",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("ci")


class TreeBuilder:
    """Incremental tree host builder; vertex 0 is the root/center."""

    def __init__(self):
        self.rot = {0: []}
        self.nid = 1

    def chain(self, frm: int, length: int) -> int:
        prev = frm
        for _ in range(length):
            w = self.nid
            self.nid += 1
            self.rot.setdefault(prev, []).append(w)
            self.rot.setdefault(w, []).append(prev)
            prev = w
        return prev

    def graph(self) -> PlanarEmbeddedGraph:
        return PlanarEmbeddedGraph(self.rot, (0, self.rot[0][0]))


@pytest.fixture
def tree_builder():
    return TreeBuilder


def naive_bfs(g, source):
    """Independent plain-dict BFS oracle used to cross-check distances."""
    adj = {int(v): g.neighbors(int(v)) for v in g.vertex_ids}
    dist = {int(source): 0}
    frontier = [int(source)]
    while frontier:
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


@pytest.fixture
def bfs_oracle():
    return naive_bfs
