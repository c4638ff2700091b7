#!/usr/bin/env python3
"""Smoke test for the sylowgraph_py extension module.

Builds the cdylib if needed, stages it under an importable name, and
exercises the main types and operations end to end.
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> Path:
    lib = ROOT / "target" / "release" / "libsylowgraph_py.so"
    if not lib.exists():
        print("building sylowgraph-py (release)...")
        subprocess.run(
            ["cargo", "build", "--release", "-p", "sylowgraph-py"],
            cwd=ROOT,
            check=True,
        )
    stage = Path(tempfile.mkdtemp(prefix="sylowgraph_py_"))
    shutil.copy2(lib, stage / "sylowgraph_py.so")
    return stage


def main() -> None:
    sys.path.insert(0, str(stage_module()))
    import sylowgraph_py as sg

    # Permutation algebra, left-first composition.
    a = sg.Permutation("(1,2)", 3)
    b = sg.Permutation("(2,3)", 3)
    assert str(a * b) == "(1,3,2)"
    assert (a * a).order() == 1
    assert sg.Permutation("(1,2,3,4,5)", 5).order() == 5

    # Groups and exact orders.
    s5 = sg.group("S5")
    assert s5.order() == 120
    a8 = sg.group("A8")
    assert a8.order() == 20160
    assert a8.contains(sg.Permutation("(1,2,3)", 8))
    assert not a8.contains(sg.Permutation("(1,2)", 8))
    m11 = sg.group("M11")
    assert m11.order() == 7920 and m11.is_transitive()
    assert sg.group("PSL2(27):3").order() == 29484

    # Subgroup operations.
    psl27 = sg.group("PSL2(7)")
    assert psl27.sylow_order(7) == 7
    assert psl27.sylow_normalizer_order(7) == 21
    assert a8.automiser_order(7) == 3
    a7 = sg.group("A7")
    assert not a7.is_real(sg.Permutation("(1,2,3,4,5,6,7)", 7))
    assert sg.group("S7").is_real(sg.Permutation("(1,2,3,4,5,6,7)", 7))

    # The A8 Sylow graph.
    g = a8.sylow_graph()
    assert g.vertices() == [2, 3, 5, 7]
    assert [(f, t) for f, t, _ in g.arrows()] == [(3, 2), (5, 2), (7, 3)]
    assert g.connected() and g.diameter() == 3
    assert g.distance(7, 2) == 2
    report = json.loads(g.to_json())
    assert report["order"] == "20160" and report["diameter"] == 3

    # Arithmetic layer.
    assert sg.zsigmondy(2, 6) is None
    assert sg.zsigmondy(3, 2) is None
    assert sg.zsigmondy(2, 4) == 5
    assert sg.zsigmondy_exists(2, 11)
    assert sg.weyl_order("A", 4) == 120
    assert sg.weyl_order("2E6", 6) == 1152
    assert sg.order_e6(2, "+") % (2**4 + 1) == 0
    assert not sg.is_fine("E6", 6, 4)
    assert sg.is_fine("2E6", 6, 4)

    # Predictor: L4(2) arrows match the A8 graph exactly.
    predicted = sorted((f, t) for f, t, _ in sg.predicted_edges("A", 4, 2))
    assert predicted == [(3, 2), (5, 2), (7, 3)]

    print("sylowgraph_py smoke test: all assertions passed")


if __name__ == "__main__":
    main()
