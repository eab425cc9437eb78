"""Complementary pairs and the Welters construction.

Inside a principal lattice (JN at the homology level), a nondegenerate
saturated sublattice B determines its orthogonal complement A, the finite
intersection A ∩ B = ker λ_A = ker λ_B, and the endomorphism j acting as 1
on A and 1-m on B.  Choosing a maximal totally isotropic subgroup K of
ker μ_B produces a principal lattice X = B̂/K together with maps u, u^t
satisfying u∘u^t = [m] and u^t∘u = 1-j; those identities are certified
exactly on every run.
"""

from fractions import Fraction

from .errors import CertificationError, DomainError, IsotropyError
from .finquot import (
    FiniteQuotient,
    PairingOnQuotient,
    enumerate_mti,
    is_maximal_isotropic,
)
from .lattice import Lattice, kernel_lattice, lattice_sum, saturate
from .matrix import Mat
from .pollat import (
    LatticeMap,
    PolarizedLattice,
    adjoint_map,
    dual_lattice,
    ker_lambda,
    polarization_type,
)

__all__ = [
    "ComplementaryPair",
    "WeltersOutput",
    "complement",
    "j_endomorphism",
    "ker_mu_of_pair",
    "orthogonal_projection",
    "welters_construct",
    "preset_m2",
    "M2_PRESETS",
]


class ComplementaryPair:
    """A pair (A, B) of orthogonal-complementary sublattices of a principal one."""

    __slots__ = ("ambient", "sub_B", "sub_A", "intersection")

    def __init__(self, ambient, sub_B, sub_A, intersection):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "sub_B", sub_B)
        object.__setattr__(self, "sub_A", sub_A)
        object.__setattr__(self, "intersection", intersection)

    def __setattr__(self, name, value):
        raise AttributeError("ComplementaryPair is immutable")

    def restricted(self, sub):
        """The polarized lattice (sub, E|span(sub))."""
        return PolarizedLattice(sub, self.ambient.form)

    def swapped(self):
        return ComplementaryPair(self.ambient, self.sub_A, self.sub_B, self.intersection)

    def __repr__(self):
        return (
            f"ComplementaryPair(rank_A={self.sub_A.rank}, rank_B={self.sub_B.rank}, "
            f"|A∩B|={self.intersection.order})"
        )


class WeltersOutput:
    """The certified output (X, u, u^t, j) of the Welters construction."""

    __slots__ = ("X", "u", "u_t", "j", "pair", "m", "K", "certificate")

    def __init__(self, X, u, u_t, j, pair, m, K, certificate):
        for name, value in [
            ("X", X), ("u", u), ("u_t", u_t), ("j", j),
            ("pair", pair), ("m", m), ("K", K), ("certificate", certificate),
        ]:
            object.__setattr__(self, name, value)

    def __setattr__(self, name, value):
        raise AttributeError("WeltersOutput is immutable")

    def __repr__(self):
        return f"WeltersOutput(dim X={self.X.dim}, m={self.m})"


def complement(ambient, sub_B):
    """The complementary pair determined by B inside a principal lattice.

    A is the saturated E-orthogonal complement of B; the intersection A ∩ B
    is presented as the finite group Λ/(Λ_A ⊕ Λ_B) (the kernel of the sum
    isogeny A x B → JN, which consists of the pairs (x, -x) with x in A ∩ B).
    Certifies |A ∩ B| = |ker λ_A| = |ker λ_B|.
    """
    if not polarization_type(ambient).is_principal:
        raise DomainError("complementary pairs require a principal ambient lattice")
    if not ambient.lattice.contains_lattice(sub_B):
        raise DomainError("B is not a sublattice of the ambient lattice")
    if saturate(sub_B.basis.columns(), ambient.lattice) != sub_B:
        raise DomainError("B must be saturated in the ambient lattice")
    gram_B = sub_B.basis.T * ambient.form * sub_B.basis
    if sub_B.rank % 2 != 0 or (sub_B.rank > 0 and gram_B.det() == 0):
        raise DomainError(
            "the form degenerates on B: not (the lattice of) an abelian subvariety"
        )

    conditions = (ambient.form * sub_B.basis).T
    sub_A = kernel_lattice(conditions, ambient.lattice)
    if sub_A.rank + sub_B.rank != ambient.rank:
        raise CertificationError("complement rank count failed", ["complement-rank"])

    intersection = FiniteQuotient(lattice_sum(sub_A, sub_B), ambient.lattice)
    pair = ComplementaryPair(ambient, sub_B, sub_A, intersection)

    orders = {
        "A∩B": intersection.order,
        "ker λ_A": ker_lambda(pair.restricted(sub_A))[0].order if sub_A.rank else 1,
        "ker λ_B": ker_lambda(pair.restricted(sub_B))[0].order if sub_B.rank else 1,
    }
    if len(set(orders.values())) != 1:
        raise CertificationError(
            f"order identity |A∩B| = |ker λ_A| = |ker λ_B| failed: {orders}",
            ["pair-order-identity"],
        )
    return pair


def orthogonal_projection(pair):
    """The E-orthogonal projection of the ambient span onto span(B) along span(A)."""
    A, B = pair.sub_A.basis, pair.sub_B.basis
    n = pair.ambient.ambient_dim
    block = A.hstack(B)
    zero_then_B = Mat.zero(n, A.ncols).hstack(B)
    return zero_then_B * block.inverse()


def j_endomorphism(pair, m):
    """The endomorphism j = 1 - m*pr_B, certified against its identities.

    j acts as 1 on A and as 1-m on B, satisfies the Prym-Tjurin relation
    (j-1)(j+m-1) = 0, has ker(1-j) saturated equal to A and ker(j+m-1) equal
    to B, and is E-self-adjoint through 1-j = m*pr_B.
    """
    if m % pair.intersection.exponent != 0:
        raise DomainError("exponent of A∩B must divide m")
    n = pair.ambient.ambient_dim
    pr_B = orthogonal_projection(pair)
    j = Mat.identity(n) - pr_B * m
    lam = pair.ambient.lattice
    coords = lam.coords_matrix(j * lam.basis)
    if not coords.is_integral():
        raise CertificationError(
            "j does not preserve the lattice (inconsistent pair)", ["j-integrality"]
        )
    failures = []
    one = Mat.identity(n)
    if (j - one) * (j + one * (m - 1)) != Mat.zero(n, n):
        failures.append("prym-tjurin")
    if kernel_lattice(one - j, lam) != pair.sub_A:
        failures.append("ker(1-j)=A")
    if kernel_lattice(j + one * (m - 1), lam) != pair.sub_B:
        failures.append("ker(j+m-1)=B")
    E = pair.ambient.form
    if (one - j).T * E != E * (one - j):
        failures.append("pr_B-self-adjoint")
    if failures:
        raise CertificationError(f"j identities failed: {failures}", failures)
    return LatticeMap(j, lam, lam)


def ker_mu_of_pair(pair, m):
    """ker μ_B = ((1/m)Λ_B)/Λ_B^† with the pairing of form m*E."""
    PB = pair.restricted(pair.sub_B)
    dualB = dual_lattice(PB)
    if not pair.sub_B.contains_lattice(dualB.scaled(m)):
        raise DomainError(
            f"the type of E|B must divide m={m} (condition ker λ_B ⊆ m-torsion)"
        )
    Q = FiniteQuotient(dualB, pair.sub_B.scaled(Fraction(1, m)))
    return Q, PairingOnQuotient(Q, pair.ambient.form * m)


def welters_construct(ambient, sub_B, K, m, extra_identities=()):
    """Run the full construction (Λ, Λ_B, K) → (X, u, u^t, j) and certify it.

    ``K`` is a maximal totally isotropic subgroup of ker μ_B (a FiniteQuotient
    presented over the dual lattice of B).  The returned certificate records
    every identity checked; any failure raises CertificationError naming it.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    pair = complement(ambient, sub_B)
    Qmu, pmu = ker_mu_of_pair(pair, m)
    if K.lower != Qmu.lower or not K.is_subgroup_of(Qmu):
        raise DomainError("K is not presented as a subgroup of ker μ_B")
    if not is_maximal_isotropic(K, pmu):
        raise IsotropyError("K is not maximal totally isotropic in ker μ_B")

    j_map = j_endomorphism(pair, m)
    pr_B = orthogonal_projection(pair)
    lam = ambient.lattice
    dualB = Qmu.lower

    certificate = {}

    def check(name, ok):
        certificate[name] = bool(ok)

    # The identification JN/A ≅ B̂ at lattice level.
    check("pr_B(Λ) = Λ_B^†", Lattice(lam.ambient_dim, pr_B * lam.basis) == dualB)

    X = PolarizedLattice(K.upper, ambient.form * m)
    check("X principal", polarization_type(X).is_principal)

    u = LatticeMap(pr_B, lam, X.lattice)
    u_t = adjoint_map(u, ambient, X)

    BX = X.lattice.basis
    check("u∘u_t = [m]", u.matrix * u_t.matrix * BX == BX * m)
    check("u_t∘u = 1 - j", u_t.matrix * u.matrix == Mat.identity(lam.ambient_dim) - j_map.matrix)
    one = Mat.identity(lam.ambient_dim)
    check(
        "(j-1)(j+m-1) = 0",
        (j_map.matrix - one) * (j_map.matrix + one * (m - 1))
        == Mat.zero(lam.ambient_dim, lam.ambient_dim),
    )
    orders = {
        pair.intersection.order,
        ker_lambda(pair.restricted(pair.sub_A))[0].order if pair.sub_A.rank else 1,
        ker_lambda(pair.restricted(pair.sub_B))[0].order if pair.sub_B.rank else 1,
    }
    check("|A∩B| = |ker λ_A| = |ker λ_B|", len(orders) == 1)
    for name, ok in extra_identities:
        check(name, ok)

    failures = [name for name, ok in certificate.items() if not ok]
    if failures:
        raise CertificationError(f"welters certification failed: {failures}", failures)
    return WeltersOutput(X, u, u_t, j_map, pair, m, K, certificate)


M2_PRESETS = ("jacobian_quotient", "prym_quotient", "pullback_quotient")


def preset_m2(kind, fixture, K=None):
    """The three m = 2 construction families, dispatched on ``kind``.

    - jacobian_quotient: fixture is a principal PolarizedLattice; B is the
      whole lattice and K a maximal isotropic subgroup of the 2-torsion.
    - prym_quotient: fixture is a CoverHomology of a double cover; B is the
      Prym sublattice (the saturated kernel of the norm).
    - pullback_quotient: fixture is the same cover; B is the saturated
      transfer image (the roles of A and B exchanged).

    When K is omitted the first maximal totally isotropic subgroup in
    canonical order is used.
    """
    if kind not in M2_PRESETS:
        raise DomainError(f"unknown preset {kind!r}; expected one of {M2_PRESETS}")
    m = 2
    if kind == "jacobian_quotient":
        ambient = fixture if isinstance(fixture, PolarizedLattice) else fixture.total
        sub_B = ambient.lattice
    else:
        cov = fixture
        if cov.m != m:
            raise DomainError("prym/pullback presets need a degree-2 cover fixture")
        ambient = cov.total
        prym, pullback = cov.prym_sublattice()
        sub_B = prym if kind == "prym_quotient" else pullback
    if K is None:
        pair = complement(ambient, sub_B)
        Qmu, pmu = ker_mu_of_pair(pair, m)
        K = enumerate_mti(Qmu, pmu)[0]
    return welters_construct(ambient, sub_B, K, m)
