"""Regenerate the committed golden fixtures in tests/data/.

Run from the repository root:  python scripts/make_fixtures.py
"""
import json
from pathlib import Path

from fingertrace.geometry import Side
from fingertrace.pipeline import detect
from fingertrace.raster import save_ppm
from fingertrace.synth import SyntheticHandSpec, generate_hand

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"

UPRIGHT3 = SyntheticHandSpec(
    frame_size=(320, 240),
    wrist_side=Side.BOTTOM,
    finger_count=3,
    finger_length=(52, 56),
    finger_width=(9, 13),
    palm_width=110,
    palm_height=88,
    forearm_length=60,
    seed=7,
)


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    image, truth = generate_hand(UPRIGHT3)
    save_ppm(DATA / "upright3.ppm", image)
    (DATA / "upright3_truth.json").write_text(json.dumps(truth.to_record("upright3.ppm")) + "\n")
    for k in range(4):
        result = detect(image.rotate(k))
        name = f"upright3_rot{k * 90}_golden.json"
        (DATA / name).write_text(json.dumps(result.to_record("upright3.ppm"), indent=1) + "\n")
        print(name, [(t.x, t.y) for t in result.tips])
    print("truth", truth.tips)


if __name__ == "__main__":
    main()
