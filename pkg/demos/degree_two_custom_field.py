"""Counting nodal domains of any field on the sphere with ``Custom``.

The degree-2 harmonic x y + mu (2 z^2 - x^2 - y^2) with small mu > 0 has
three nodal domains: two negative caps centred on the equator at longitudes
135 and 315 degrees, and one positive region holding both poles. At mu = 0
the great circles x = 0 and y = 0 cross at the poles and there are four.

Run ``python3 demos/degree_two_custom_field.py``.
"""

from sternsphere import Custom, count_nodal_domains, extract_nodal_set, sample_sign_grid


def field(mu):
    return Custom.from_cartesian(lambda x, y, z: x * y + mu * (2 * z * z - x * x - y * y),
                                 name=f"xy + {mu}(2z^2 - x^2 - y^2)")


def main():
    for mu in (0.0, 0.05, 0.2):
        fam = field(mu)
        grid = sample_sign_grid(fam, 512, 1024)
        ns = extract_nodal_set(fam, grid)
        print(f"mu = {mu:4.2f}: {count_nodal_domains(grid)} nodal domains, "
              f"{ns.n_components} nodal component(s)")


if __name__ == "__main__":
    main()
