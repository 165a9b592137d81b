"""Regenerate the shipped algebra presets from supermatrix realizations."""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from superdirac.lie import from_supermatrices  # noqa: E402

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "superdirac", "presets")


def e(n, i, j, c=1):
    m = [[0] * n for _ in range(n)]
    m[i][j] = c
    return m


def add(*ms):
    n = len(ms[0])
    return [[sum(m[i][j] for m in ms) for j in range(n)] for i in range(n)]


def main():
    sl2 = from_supermatrices(["E", "H", "F"], [e(2, 0, 1), add(e(2, 0, 0), e(2, 1, 1, -1)), e(2, 1, 0)],
                             [0, 0], name="sl2", triple={"E": "E", "H": "H", "F": "F"})
    # gl(2|1) with rows 1, 2 even and row 3 odd
    osp = from_supermatrices(
        ["E", "e", "H", "f", "F"],
        [e(3, 0, 1), add(e(3, 0, 2), e(3, 2, 1)), add(e(3, 0, 0), e(3, 1, 1, -1)),
         add(e(3, 2, 0), e(3, 1, 2, -1)), e(3, 1, 0)],
        [0, 0, 1], name="osp(1|2)", triple={"E": "E", "e": "e", "H": "H", "f": "f", "F": "F"})
    for g, fn in ((sl2, "sl2.json"), (osp, "osp12.json")):
        assert g.is_valid(), g.validate()
        with open(os.path.join(OUT, fn), "w") as fh:
            json.dump(g.to_json(), fh, indent=1)
            fh.write("\n")


if __name__ == "__main__":
    main()
