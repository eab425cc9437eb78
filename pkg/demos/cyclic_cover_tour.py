"""A tour of cyclic unramified covers built from voltage ribbon graphs.

The genus-g surface is a one-vertex ribbon graph with 2g loops; assigning
the voltage 1 to the loop a_1 produces the standard connected m-sheeted
cyclic cover.  The derived graph carries a lifted ribbon structure, so the
cover's homology, intersection form, deck action sigma, norm (pushforward)
and transfer all come out as exact integer matrices, and the classical
identities are certified on the nose.
"""

from symplat import (
    eta_class,
    norm_component_group,
    prym_sublattice,
    standard_cover,
)
from symplat.matrix import Mat


def tour(g, m):
    cov = standard_cover(g, m)
    print(f"degree-{m} cover of a genus-{g} surface")
    print(f"   cover genus  : {cov.cover_genus}  (= mg - m + 1 = {m*g - m + 1})")
    S = cov.sigma.matrix
    n = cov.total.ambient_dim
    power = Mat.identity(n)
    for _ in range(m):
        power = power * S
    print(f"   deck action  : sigma^{m} = 1: {power == Mat.identity(n)}, "
          f"symplectic: {S.T * cov.total.form * S == cov.total.form}")
    down, up = cov.pushforward.matrix, cov.transfer.matrix
    print(f"   norm/transfer: Nm ∘ tr = [{m}]: "
          f"{down * up == Mat.identity(2 * g) * m}")
    sub_A, sub_B = prym_sublattice(cov)
    print(f"   Prym lattice : rank {sub_A.rank} = 2(g' - g); "
          f"transfer image rank {sub_B.rank}")
    if m > 1:
        group, _ = norm_component_group(cov)
        eta = eta_class(cov)
        print(f"   pi_0(ker Nm) : cyclic of order {group.order}")
        print(f"   eta          : the order-{eta.order()} torsion class of the base "
              f"attached to the cover")
    print()


if __name__ == "__main__":
    print(__doc__)
    for g, m in [(1, 2), (2, 2), (2, 3), (3, 2), (2, 4)]:
        tour(g, m)
