"""Dimension bookkeeping for the moduli loci swept out by the constructions.

The ambient moduli space of principally polarized abelian varieties of
dimension g has dimension g(g+1)/2, while the Jacobian locus has dimension
3g - 3: quotient constructions can only sweep out low-dimensional loci when
g grows.  The tables below track, in closed form, the dimensions of the
quotient-of-Jacobian and cyclic-cover families, the genus of the covers,
and the known bounds on the genus of a curve representing m times the
minimal class.
"""

from symplat import genus_bounds, locus_dimensions, two_minimal_locus_dim


def table(g_values, m, r=0):
    header = f"{'g':>3} {'dim A_g':>8} {'dim M_g':>8} {'dim R':>6} " \
             f"{'cover genus':>12} {'prym dim':>9} {'family genus':>13}"
    print(f"m = {m}, r = {r}")
    print(header)
    for g in g_values:
        rep = locus_dimensions(g, m, r)
        print(f"{g:>3} {rep.dim_Ag:>8} {rep.dim_Mg:>8} {rep.dim_R_gmr:>6} "
              f"{rep.cover_genus:>12} {rep.prym_dim:>9} "
              f"{rep.genus_family_lower_bound:>13}")
    print()


if __name__ == "__main__":
    print(__doc__)
    for m in (2, 3, 5):
        table(range(2, 9), m)

    print("Genus bounds for an m-minimal curve on a g-dimensional ppav")
    print(f"{'g':>3} {'m':>3} {'lower':>6} {'upper':>8} {'family':>7}")
    for g in (2, 4, 6):
        for m in (1, 2, 3):
            lower, upper, family = genus_bounds(g, m)
            print(f"{g:>3} {m:>3} {lower:>6} {str(upper if upper is not None else 'open'):>8} {family:>7}")
    print()
    print("Dimension of the locus of 2-minimal ppav (attained by unramified Pryms):")
    for g in range(2, 7):
        print(f"   g = {g}: {two_minimal_locus_dim(g)} = 3g")
