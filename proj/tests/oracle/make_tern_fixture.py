"""Writes the committed "tern vs swan" toy-world fixture.

A 300x100 tern image whose left part is an orange beak. The beak feature
has cosine exactly 0.72 with the swan description "orange beak"; the rest
of the bird is a mix of black cap, grey wing and forked tail, which
together match the tern description.
"""
import json
import math
import os
import sys

from PIL import Image

DIM = 16
TOKENS = ["orange", "beak", "black", "cap", "grey", "wing", "forked", "tail",
          "white", "feathers", "swan", "tern", "long", "neck"]
BEAK_COLS = 16
COLORS = {"sky": (135, 190, 235), "orange-beak": (240, 140, 30),
          "black-cap": (20, 20, 20), "grey-wing": (150, 150, 155),
          "forked-tail": (230, 230, 230)}


def basis(i):
    v = [0.0] * DIM
    v[i] = 1.0
    return v


def lexicon():
    lex = {t: basis(i) for i, t in enumerate(TOKENS)}
    r = 1.0 / math.sqrt(2.0)
    beak = [0.0] * DIM
    beak[0] = beak[1] = 0.72 * r
    beak[14] = math.sqrt(1.0 - 0.72 * 0.72)
    lex["orange-beak"] = beak
    lex["black-cap"] = [r if i in (2, 3) else 0.0 for i in range(DIM)]
    lex["grey-wing"] = [r if i in (4, 5) else 0.0 for i in range(DIM)]
    lex["forked-tail"] = [r if i in (6, 7) else 0.0 for i in range(DIM)]
    lex["sky"] = basis(15)
    return lex


def grid():
    g = [["sky"] * 30 for _ in range(10)]
    parts = ["black-cap", "grey-wing", "forked-tail"]
    for r in range(1, 9):
        for c in range(30):
            g[r][c] = "orange-beak" if c < BEAK_COLS else parts[(c - BEAK_COLS) * 3 // (30 - BEAK_COLS)]
    return g


def main(out_dir):
    g = grid()
    with open(os.path.join(out_dir, "world.json"), "w") as f:
        json.dump({"dim": DIM, "lexicon": lexicon(), "grid": {"tern": g}}, f, indent=1, sort_keys=True)
        f.write("\n")
    with open(os.path.join(out_dir, "descriptions.json"), "w") as f:
        json.dump({"swan": ["orange beak"], "tern": ["black cap grey wing forked tail"]}, f, indent=1)
        f.write("\n")
    img = Image.new("RGB", (300, 100))
    px = img.load()
    for y in range(100):
        for x in range(300):
            px[x, y] = COLORS[g[y * 10 // 100][x * 30 // 300]]
    img.save(os.path.join(out_dir, "tern.png"))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else ".")
