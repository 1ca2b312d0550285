"""Walk through the degree-3 bifurcation of W_3 + mu Z_3.

Below mu = sqrt(2) the nodal set is one closed curve and the sphere splits
into two nodal domains. At mu = sqrt(2) six critical zeros appear, the curve
pinches into a network and the count jumps to eight. Past it the pinches
open the other way.

Run ``python3 demos/bifurcation_degree_three.py [output-dir]``; SVG figures
of the three regimes are written there (default: the current directory).
"""

import math
import sys
import warnings
from pathlib import Path

from sternsphere import (
    OddStern,
    build_checkerboard,
    count_nodal_domains,
    critical_mus_odd,
    critical_zeros_odd,
    extract_nodal_set,
    sample_sign_grid,
)
from sternsphere.nodal import CriticalParameterWarning
from sternsphere.render import render_svg

GRID = (1024, 2048)


def main(out_dir="."):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    rep = critical_mus_odd(3)
    print(f"critical values of mu for l = 3: {[round(c.value, 12) for c in rep.mus]}")
    print("critical zeros at mu = sqrt(2):")
    for z in critical_zeros_odd(3, math.sqrt(2)):
        print(f"  theta = {z.theta:.6f}   phi = {math.degrees(z.phi):6.1f} deg")

    for label, mu in (("below", 1.0), ("critical", math.sqrt(2)), ("above", 2.0)):
        fam = OddStern(3, mu)
        grid = sample_sign_grid(fam, *GRID)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CriticalParameterWarning)
            ns = extract_nodal_set(fam, grid)
        domains = count_nodal_domains(grid)
        note = "components not meaningful" if ns.diagnostics["at_critical"] else \
            f"{ns.n_components} component(s)"
        print(f"mu = {mu:.6f} ({label}): {domains} nodal domains, {note}")
        path = out / f"degree3_{label}.svg"
        render_svg(ns, build_checkerboard(fam), path=path, title=f"l=3 mu={mu:.6g}")
        print(f"  figure: {path}")


if __name__ == "__main__":
    main(*sys.argv[1:])
