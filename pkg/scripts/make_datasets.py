"""Regenerate the bundled GML files in src/evident/data.

Karate needs networkx (not a package dependency). The dolphins and polbooks
files hold ground truth only; see src/evident/data/PROVENANCE.md.
"""

from pathlib import Path

from evident.graphs import GroundTruth, Network, dump_gml

DATA = Path(__file__).resolve().parents[1] / "src" / "evident" / "data"


def karate() -> str:
    import networkx as nx

    g = nx.karate_club_graph()
    classes = [1 if g.nodes[v]["club"] == "Mr. Hi" else 2 for v in g]
    network = Network.from_pairs([str(v) for v in g], g.edges())
    return dump_gml(network, GroundTruth(classes))


def dolphins() -> str:
    sizes = (21, 41)
    classes = [c for c, size in enumerate(sizes, 1) for _ in range(size)]
    return dump_gml(Network.from_pairs([f"d{v:02d}" for v in range(62)], []), GroundTruth(classes))


def polbooks() -> str:
    # raw leaning codes, mapped to classes by the loader
    codes = ["l"] * 43 + ["n"] * 13 + ["c"] * 49
    out = ["graph [", "  directed 0"]
    for v, code in enumerate(codes):
        out += ["  node [", f"    id {v}", f'    label "b{v:03d}"', f'    value "{code}"', "  ]"]
    return "\n".join(out + ["]"]) + "\n"


if __name__ == "__main__":
    for name, make in (("karate", karate), ("dolphins", dolphins), ("polbooks", polbooks)):
        (DATA / f"{name}.gml").write_text(make(), encoding="utf-8")
        print("wrote", DATA / f"{name}.gml")
