"""Regenerate the shipped fixtures under fixtures/."""

from pathlib import Path

from tritile.constructors import (
    bisect_isosceles,
    biquadratic_tiling,
    glue_append_similar,
    hexagonal_tiling,
    quadratic_tiling,
    tri_306090_tiling,
)
from tritile.geometry import verify
from tritile.kernel import QuadVal
from tritile.tiling_io import save_tiling

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def fixtures():
    right = quadratic_tiling([(0, 0), (4, 0), (0, 3)], 2)
    return {
        "quadratic_4": quadratic_tiling([(0, 0), (5, 0), (3, 4)], 2),
        "right_quadratic_4": right,
        "glue_mirror_8": glue_append_similar(right, 2),
        "bisect_equilateral": bisect_isosceles(2, QuadVal(0, 1, 3)),
        "hexagonal_k2": hexagonal_tiling(2),
        "biquadratic_3_2": biquadratic_tiling(3, 2),
        "biquadratic_5_7": biquadratic_tiling(5, 7),
        "tri306090_k1": tri_306090_tiling(1),
    }


if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, t in fixtures().items():
        assert verify(t).valid, name
        save_tiling(t, OUT / f"{name}.tiling.json")
        print(f"{name}: {t.n_tiles} tiles")
