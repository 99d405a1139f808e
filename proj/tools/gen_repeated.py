#!/usr/bin/env python3
# Copyright 2026 The hyperindex Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the twice-repeated stage games of the corpus."""

import argparse
import pathlib

FIG6 = {
    "rows": ["A", "B", "C"],
    "cols": ["A", "B", "C"],
    "pay": [[(4, 4), (0, 0), (0, 0)],
            [(0, 0), (3, 1), (0, 0)],
            [(2, 2), (0, 0), (1, 3)]],
}

FIG8 = {
    "rows": ["T", "B"],
    "cols": ["L", "R"],
    "pay": [[(4, 1), (0, 0)],
            [(0, 0), (1, 4)]],
}


def value(constant, eps_coeff):
    if eps_coeff == 0:
        return str(constant)
    return f"{constant}-$eps"


def repeated(stage, eps_cell=None):
    rows, cols, pay = stage["rows"], stage["cols"], stage["pay"]
    out = []
    if eps_cell is not None:
        out.append("param eps = 1/100\n")
    out.append("player 1 infoset first {\n")
    for i, a in enumerate(rows):
        out.append(f"  {a}: player 2 infoset first2 {{\n")
        for j, b in enumerate(cols):
            h = a + b
            u1, u2 = pay[i][j]
            eps = 1 if eps_cell == (i, j) else 0
            out.append(f"    {b}: player 1 infoset s{h} {{\n")
            for k, c in enumerate(rows):
                cells = []
                for m, d in enumerate(cols):
                    v1, v2 = pay[k][m]
                    cells.append(f"{d}: ({u1 + v1}, {value(u2 + v2, eps)})")
                out.append(f"      {c}: player 2 infoset t{h} {{ "
                           + "  ".join(cells) + " }\n")
            out.append("    }\n")
        out.append("  }\n")
    out.append("}\n")
    return "".join(out)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(
        pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    header6 = ("# Twice-repeated stage game with player-specific punishments.\n"
               "# eps lowers player 2's first-stage payoff at (C, C).\n")
    (out / "repeated_fig6.game").write_text(header6 + repeated(FIG6, (2, 2)))
    header8 = "# Twice-repeated coordination game.\n"
    (out / "repeated_fig8.game").write_text(header8 + repeated(FIG8))


if __name__ == "__main__":
    main()
