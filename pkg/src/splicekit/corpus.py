"""Builders for the bundled example graphs and diagrams.

Running ``python -m splicekit.corpus [DIR]`` regenerates the data files
(default: the package's ``data`` directory).
"""

import itertools
import sys
from math import prod
from pathlib import Path

from .graph import PlumbingGraph, build_star_graph, format_graph
from .splice import SpliceDiagram, format_splice, one_node_diagram

DATA_DIR = Path(__file__).parent / "data"


def two_node_zhs():
    """Resolution graph whose splice diagram is (2,3,7) spliced to (2,5,11).

    Leaves carry the display names X, Y, Z, W.
    """
    return PlumbingGraph(
        [("L", -1), ("x1", -2), ("x2", -3), ("m", -17), ("R", -1), ("x3", -2), ("u", -3), ("x4", -2)],
        [("L", "x1"), ("L", "x2"), ("L", "m"), ("m", "R"), ("R", "x3"), ("R", "u"), ("u", "x4")],
        {"x1": "X", "x2": "Y", "x3": "Z", "x4": "W"},
    )


def string_graph(selfints, prefix="s"):
    names = [f"{prefix}{i}" for i in range(1, len(selfints) + 1)]
    return PlumbingGraph(list(zip(names, selfints)), list(zip(names, names[1:])))


def a_n(n):
    return string_graph([-2] * n)


def d_n(n):
    """D_n (n >= 4): centre -2 with two single -2 arms and a -2 string of length n-3."""
    return build_star_graph(2, [(2, 1), (2, 1), (n - 2, n - 3)])


def e_n(n):
    """E_6, E_7, E_8: centre -2 with arms of lengths 1, 2 and n-4."""
    return build_star_graph(2, [(2, 1), (3, 2), (n - 3, n - 4)])


def brieskorn_star(p, q, r):
    """Star graph of the Brieskorn sphere Sigma(p,q,r), with central curve -1 or -2.

    Arms ``(n, q_i)`` are chosen so that the determinant is +-1; raises
    ValueError when no such choice with centre -1 or -2 exists.
    """
    ns = (p, q, r)
    N = prod(ns)
    for d in (1, 2):
        for qs in itertools.product(*(range(1, n) for n in ns)):
            num = d * N - sum(qi * N // ni for qi, ni in zip(qs, ns))
            if num == 1:
                return build_star_graph(d, list(zip(ns, qs)))
    raise ValueError(f"no unimodular star for {ns}")


def quotient_cusp(es):
    """Quotient-cusp graph: string -e_1, ..., -e_k with two -2 leaves at each end."""
    k = len(es)
    if k < 2:
        raise ValueError("need k >= 2")
    vertices = [(f"c{i}", -e) for i, e in enumerate(es, 1)]
    vertices += [("a1", -2), ("a2", -2), ("b1", -2), ("b2", -2)]
    edges = [(f"c{i}", f"c{i + 1}") for i in range(1, k)]
    edges += [("c1", "a1"), ("c1", "a2"), (f"c{k}", "b1"), (f"c{k}", "b2")]
    return PlumbingGraph(vertices, edges)


def quotient_cusp_family(max_k=4, values=(2, 3)):
    for k in range(2, max_k + 1):
        for es in itertools.product(values, repeat=k):
            if any(e > 2 for e in es):
                yield es, quotient_cusp(es)


def semigroup_failure_diagram():
    """Two nodes (2,3,1 | 2,3,37): a valid diagram where the semigroup condition fails."""
    return SpliceDiagram(
        ["L", "R"], ["y1", "y2", "y3", "y4"],
        [("L", "y1", 2, None), ("L", "y2", 3, None), ("L", "R", 1, 37),
         ("R", "y3", 2, None), ("R", "y4", 3, None)],
    )


def zhs_two_node_diagram():
    return SpliceDiagram(
        ["L", "R"], ["x1", "x2", "x3", "x4"],
        [("L", "x1", 2, None), ("L", "x2", 3, None), ("L", "R", 7, 11),
         ("R", "x3", 2, None), ("R", "x4", 5, None)],
        {"x1": "X", "x2": "Y", "x3": "Z", "x4": "W"},
    )


def congruence_failure():
    """Two-node QHS graph where the semigroup conditions hold but no node
    admits a common character."""
    vertices = [("L", -4), ("R", -1), ("p1", -4), ("p2", -2), ("q1", -4), ("q2", -2),
                ("r1", -4), ("s1", -3), ("s2", -5)]
    edges = [("L", "R"), ("L", "p1"), ("p1", "p2"), ("L", "q1"), ("q1", "q2"),
             ("R", "r1"), ("R", "s1"), ("s1", "s2")]
    return PlumbingGraph(vertices, edges)


def graphs():
    """All bundled plumbing graphs, keyed by file stem."""
    out = {
        "two_node_zhs": two_node_zhs(),
        "sigma235": e_n(8),
        "sigma237": brieskorn_star(2, 3, 7),
        "star_2357": build_star_graph(2, [(2, 1), (3, 1), (5, 1), (7, 1)]),
        "d4": d_n(4), "d5": d_n(5), "d6": d_n(6),
        "e6": e_n(6), "e7": e_n(7), "e8": e_n(8),
        "no_congruence": congruence_failure(),
    }
    for n in range(1, 6):
        out[f"a{n}"] = a_n(n)
    for es, g in quotient_cusp_family():
        out["qc_" + "".join(map(str, es))] = g
    return out


def diagrams():
    return {
        "q237_q2337": semigroup_failure_diagram(),
        "zhs_237_2511": zhs_two_node_diagram(),
        "one_node_237": one_node_diagram([2, 3, 7]),
        "one_node_2511": one_node_diagram([2, 5, 11]),
        "one_node_235": one_node_diagram([2, 3, 5]),
        "one_node_247": one_node_diagram([2, 4, 7]),
    }


def ade_stars():
    """The ADE graphs that have a node (A_n strings excluded)."""
    return {k: g for k, g in graphs().items() if k in ("d4", "d5", "d6", "e6", "e7", "e8")}


def write_corpus(directory=DATA_DIR):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, g in graphs().items():
        (directory / f"{name}.graph").write_text(format_graph(g))
    for name, d in diagrams().items():
        (directory / f"{name}.splice").write_text(format_splice(d))


if __name__ == "__main__":
    write_corpus(sys.argv[1] if len(sys.argv) > 1 else DATA_DIR)
