"""Smoke test for the latkit Python module.

Build and install first, e.g.

    pip install maturin
    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/latkit-*.whl
    python python/smoke_test.py
"""

import itertools
import math
import sys

import latkit

N5 = {"size": 5, "pairs": [[0, 1], [1, 2], [2, 4], [0, 3], [3, 4]]}


def powerset_leq(a, b):
    return a & ~b == 0


def brute_convex_embeddings(x, y):
    """Convex-range order embeddings P(x) -> P(y) by trying every map."""
    dom, cod = range(1 << x), range(1 << y)
    found = []
    for img in itertools.product(cod, repeat=len(dom)):
        if any(powerset_leq(p, q) != powerset_leq(img[p], img[q]) for p in dom for q in dom):
            continue
        rng = set(img)
        if all(r in rng for p in rng for q in rng if powerset_leq(p, q)
               for r in cod if powerset_leq(p, r) and powerset_leq(r, q)):
            found.append(list(img))
    return found


def main():
    got = latkit.embeddings({"powerset": 2}, {"powerset": 3}, filter="convex")
    assert sorted(got) == brute_convex_embeddings(2, 3), got
    assert len(got) == math.perm(3, 2) * 2 ** (3 - 2)

    n5 = latkit.classify(N5)
    assert n5["lattice"] and not n5["distributive"]

    props = latkit.subset_properties(N5, [0, 2])
    assert not props["convex"]["holds"]

    m = latkit.map_properties({"dom": {"powerset": 2}, "cod": {"powerset": 3}, "image": [0, 1, 2, 7]})
    assert m["embedding"] and not m["convex_range"]

    assert [len(latkit.posets(n)) for n in range(5)] == [1, 1, 2, 5, 16]
    assert [len(latkit.posets(n, lattices_only=True)) for n in range(1, 6)] == [1, 1, 1, 2, 5]
    assert len(latkit.topologies(3)) == 29

    space = latkit.topology_properties({"points": 2, "opens": [[1]]})
    assert space["baire"] and space["largest_open_meager"] == []

    for name in ["powerset-form", "cat-ro-iso", "group-completion", "monoid-laws", "convex-preregular"]:
        report = latkit.run_verifier(name)
        assert report["passed"], (name, report["violations"])

    try:
        latkit.embeddings({"powerset": 3}, {"powerset": 4}, budget=3)
    except latkit.BudgetExceeded:
        pass
    else:
        raise AssertionError("budget was not enforced")

    try:
        latkit.classify({"size": 2, "pairs": [[0, 9]]})
    except ValueError:
        pass
    else:
        raise AssertionError("bad poset accepted")

    print("python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
