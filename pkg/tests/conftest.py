import functools

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

BIG = settings(max_examples=10_000, deadline=None, suppress_health_check=list(HealthCheck))

SURFACES = {"disk": 1, "cylinder": 2, "pants": 3}


@functools.lru_cache(maxsize=None)
def all_codes(max_points=6):
    """Every enumerated Morse flow code up to ``max_points``: (holes, n, code)."""
    from morseflow.enumeration import morse_codes
    out = []
    for holes in (1, 2, 3):
        for n in range(2, max_points + 1):
            out += [(holes, n, c) for c in morse_codes(holes, n)]
    return tuple(out)


def nx_graph(code, base=None, mirror=False):
    """Coloured directed graph of a compact code, built with networkx only.

    Cycle arcs keep the stored direction (all reversed for ``mirror``); each
    separatrix becomes a middle node joined to both ends.  The rotation at a
    vertex (in-arc, separatrix, out-arc) is then forced, so a colour
    preserving digraph isomorphism is an orientation respecting one.
    """
    import networkx as nx
    from morseflow.diagram import DistinguishingGraph
    g = DistinguishingGraph.from_compact(code)
    ck = {}
    for k, _, seq in g.cycles:
        for v in seq:
            ck[v] = k
    G = nx.DiGraph()
    for v, col in enumerate(g.vertex_color):
        tok = g.vertex_token[v]
        side = tok if tok < 0 else None
        if mirror and side is not None:
            side = {-1: -2, -2: -1}[side]
        G.add_node(v, c=(col, ck[v], side, v == base))
    for i, (col, u, w) in enumerate(g.edges):
        if col == "Separatrix":
            m = ("sep", i)
            G.add_node(m, c=("sep",))
            for x in (u, w):
                G.add_edge(m, x, c="sep")
                G.add_edge(x, m, c="sep")
        else:
            a, b = (w, u) if mirror else (u, w)
            G.add_edge(a, b, c=col)
    return G


def nx_iso(c1, c2, base1=None, base2=None, reflect=False):
    import networkx as nx
    eq = lambda a, b: a["c"] == b["c"]
    G1 = nx_graph(c1, base1)
    if nx.is_isomorphic(G1, nx_graph(c2, base2), node_match=eq, edge_match=eq):
        return True
    return reflect and nx.is_isomorphic(G1, nx_graph(c2, base2, mirror=True), node_match=eq, edge_match=eq)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
