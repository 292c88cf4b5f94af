"""Writes the three-image toy manifest used by the CLI tests."""
import json
import os

from PIL import Image

HERE = os.path.dirname(os.path.abspath(__file__))

# Each animal owns two distinctive feature tokens; "grass" is shared background.
ANIMALS = {
    "cat": ("whiskers", "pointed-ears"),
    "dog": ("floppy-ears", "wet-nose"),
    "owl": ("round-eyes", "talons"),
}
COLORS = {"cat": (200, 120, 40), "dog": (120, 80, 40), "owl": (90, 90, 120)}


def grid_for(animal, rows=6, cols=8):
    a, b = ANIMALS[animal]
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            if r == 0 or c < 2:
                row.append("grass")
            elif r < 3:
                row.append(a)
            else:
                row.append(b)
        out.append(row)
    return out


def main():
    lexicon = {"grass": 101}
    for i, (a, b) in enumerate(ANIMALS.values()):
        lexicon[a] = 1000 + 2 * i
        lexicon[b] = 1001 + 2 * i
    world = {"dim": 24, "lexicon": lexicon, "grid": {}}
    descriptions = {}
    entries = []
    for animal, (a, b) in ANIMALS.items():
        image_id = animal + "_01"
        world["grid"][image_id] = grid_for(animal)
        descriptions[animal] = [a.replace("-", " ") + " " + a, b, a + " and " + b]
        Image.new("RGB", (64, 48), COLORS[animal]).save(os.path.join(HERE, image_id + ".png"))
        entries.append({"image": image_id + ".png", "label": animal})
    with open(os.path.join(HERE, "world.json"), "w") as f:
        json.dump(world, f, indent=1)
    with open(os.path.join(HERE, "descriptions.json"), "w") as f:
        json.dump(descriptions, f, indent=1)
    with open(os.path.join(HERE, "manifest.json"), "w") as f:
        json.dump({"descriptions": "descriptions.json", "entries": entries}, f, indent=1)


if __name__ == "__main__":
    main()
