"""Write the unit-ball pictures: sections, the d3 sphere mesh and the three geodesic types."""

import argparse
from pathlib import Path

from pansu_rate.render import RenderSpec, render


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--resolution", type=int, default=256)
    args = ap.parse_args()
    out = Path(args.out)

    specs = [
        RenderSpec("d3", "mesh", resolution=96, out=str(out / "d3_sphere.obj")),
        RenderSpec("d3", "section", "y=0", args.resolution, str(out / "d3_section_y0.svg")),
        RenderSpec("d3", "section", "z=0", args.resolution, str(out / "d3_section_z0.svg")),
        RenderSpec("dinf", "section", "y=0", args.resolution, str(out / "dinf_section_y0.svg")),
    ]
    for name, p in [("staircase", (1, 1, 0.3)), ("three_sided", (1, 0.2, 0.5)), ("four_sided", (0.3, 0.2, 1))]:
        specs.append(RenderSpec(mode="geodesic", point=p, out=str(out / f"geodesic_{name}.svg")))
    for spec in specs:
        render(spec)
        print(spec.out)


if __name__ == "__main__":
    main()
