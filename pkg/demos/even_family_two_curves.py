"""The even family W - mu V_alpha in degree 4 has exactly three nodal domains.

For small mu the nodal set consists of two closed curves, one through each
pole. Each stays in one closed hemisphere bounded by the great circle
through longitude alpha, and the antipodal map swaps them.

Run ``python3 demos/even_family_two_curves.py [output-dir]``.
"""

import sys
from pathlib import Path

from sternsphere import EvenStern
from sternsphere.critical import critical_mus_even
from sternsphere.nodal import analyze
from sternsphere.harmonics import build_checkerboard
from sternsphere.render import render_svg


def main(out_dir="."):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for r in (2, 3):
        fam0 = EvenStern(r, 0.4)
        mu_c = critical_mus_even(r, fam0.alpha).mu_c
        fam = fam0.with_mu(min(1e-3, mu_c / 2))
        rep, ns, _ = analyze(fam)
        print(f"degree {2 * r}: mu_c = {mu_c:.6g}, using mu = {fam.mu:.6g}")
        print(f"  components {rep.n_components}, domains {rep.n_domains}, "
              f"inclusion violations {rep.inclusion_violations}")
        print(f"  hemisphere of each component: {rep.hemisphere_sides}")
        print(f"  antipodal partner of each component: {rep.antipodal_partners}")
        print(f"  separation profiles all as predicted: {rep.separation_ok}")
        path = out / f"even_degree{2 * r}.svg"
        render_svg(ns, build_checkerboard(fam), path=path,
                   title=f"even family r={r} epsilon=0.4 mu={fam.mu:g}")
        print(f"  figure: {path}")


if __name__ == "__main__":
    main(*sys.argv[1:])
