"""Lattices in an ambient rational vector space.

A lattice is a discrete subgroup of Q^n given by a basis matrix whose columns
are the basis vectors; the rank may be smaller than the ambient dimension.
Every lattice is stored in a canonical form (scaled column Hermite form), so
equality of lattices is equality of their basis matrices.

The operations here -- saturation, kernels, indices, sums, preimages -- are
the exact-arithmetic substrate for all polarization and isogeny computations.
"""

from fractions import Fraction
from math import gcd

from .errors import DomainError
from .matrix import Mat, hermite_column_form, integer_kernel, smith_normal_form

__all__ = [
    "Lattice",
    "saturate",
    "kernel_lattice",
    "index",
    "lattice_sum",
    "lattice_intersection",
    "congruence_kernel",
    "preimage_lattice",
]


class Lattice:
    """A full-column-rank basis matrix up to unimodular column equivalence."""

    __slots__ = ("ambient_dim", "basis", "_hash")

    def __init__(self, ambient_dim, basis, _canonical=False):
        if basis.nrows != ambient_dim:
            raise DomainError("basis rows must match ambient dimension")
        if not _canonical:
            basis = _canonical_basis(basis)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Lattice is immutable")

    @staticmethod
    def standard(n):
        """Z^n inside Q^n."""
        return Lattice(n, Mat.identity(n), _canonical=True)

    @staticmethod
    def from_generators(ambient_dim, vectors):
        """The lattice generated by the given (possibly redundant) vectors."""
        cols = [tuple(v) for v in vectors]
        if any(len(c) != ambient_dim for c in cols):
            raise DomainError("generator length must match ambient dimension")
        return Lattice(ambient_dim, Mat.from_columns(cols, nrows=ambient_dim))

    @property
    def rank(self):
        return self.basis.ncols

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ambient_dim, self.basis)))
        return self._hash

    def __repr__(self):
        return f"Lattice(dim={self.ambient_dim}, rank={self.rank})"

    # -- membership and coordinates ----------------------------------------

    def coords_of(self, vector):
        """Rational coordinates of a span vector in this basis."""
        try:
            sol = self.basis.solve(Mat.column(vector))
        except DomainError:
            raise DomainError("vector is not in the span of the lattice")
        return sol.column_vector()

    def coords_matrix(self, M):
        """Coordinates of the columns of M (all must lie in the span)."""
        try:
            return self.basis.solve(M)
        except DomainError:
            raise DomainError("columns are not in the span of the lattice")

    def span_contains(self, vector):
        try:
            self.coords_of(vector)
            return True
        except DomainError:
            return False

    def contains_vector(self, vector):
        try:
            coords = self.coords_of(vector)
        except DomainError:
            return False
        return all(isinstance(c, int) or c.denominator == 1 for c in coords)

    def contains_lattice(self, other):
        if other.ambient_dim != self.ambient_dim:
            return False
        try:
            return self.coords_matrix(other.basis).is_integral()
        except DomainError:
            return False

    def same_span(self, other):
        return (
            self.ambient_dim == other.ambient_dim
            and self.rank == other.rank
            and all(self.span_contains(other.basis.col(j)) for j in range(other.rank))
        )

    # -- constructions -------------------------------------------------------

    def scaled(self, c):
        return Lattice(self.ambient_dim, self.basis * Fraction(c))

    def transformed(self, M):
        """Image lattice M * self (M must be injective on the span)."""
        img = M * self.basis
        if img.rank() != self.rank:
            raise DomainError("map is not injective on the lattice span")
        return Lattice(M.nrows, img)

    def canonical_representative(self, vector):
        """The canonical representative of ``vector`` modulo this lattice.

        The vector must lie in the span; coordinates are reduced into [0, 1).
        """
        coords = self.coords_of(vector)
        frac = [Fraction(c) - (Fraction(c).numerator // Fraction(c).denominator) for c in coords]
        return self.basis.apply(frac)


def _canonical_basis(basis):
    d = basis.denominator_lcm()
    scaled = basis * d if d != 1 else basis
    H = hermite_column_form(Mat(scaled.rows, ncols=scaled.ncols))
    return H * Fraction(1, d) if d != 1 else H


def saturate(vectors, L):
    """The saturated sublattice L ∩ span(vectors).

    ``vectors`` is an iterable of rational vectors inside span(L); the result
    is saturated in L (the quotient by it is torsion-free) and depends only on
    the span of the vectors.
    """
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        return Lattice(L.ambient_dim, Mat.from_columns([], nrows=L.ambient_dim))
    S = Mat.from_columns(vecs, nrows=L.ambient_dim)
    for j in range(S.ncols):
        if not L.span_contains(S.col(j)):
            raise DomainError("spanning vector outside the span of the lattice")
    # annihilator rows of span(S): kernel of S^T
    ann = S.T.kernel_basis()
    return kernel_lattice(ann.T, L)


def kernel_lattice(f, L):
    """The saturated sublattice {x in L : f(x) = 0} for a rational matrix f."""
    if f.ncols != L.ambient_dim:
        raise DomainError("map not defined on the ambient space of the lattice")
    composed = f * L.basis
    d = composed.denominator_lcm()
    K = integer_kernel(composed * d if d != 1 else composed)
    return Lattice(L.ambient_dim, L.basis * K, _canonical=False)


def index(L, Lp):
    """The index [Lp : L] of nested lattices of equal span."""
    if not Lp.same_span(L):
        raise DomainError("index requires equal rational spans")
    T = Lp.coords_matrix(L.basis)
    if not T.is_integral():
        raise DomainError("index requires containment L ⊆ Lp")
    det = T.det()
    if det == 0:
        raise DomainError("degenerate inclusion")
    return abs(det)


def lattice_sum(L1, L2):
    if L1.ambient_dim != L2.ambient_dim:
        raise DomainError("ambient dimension mismatch in lattice sum")
    return Lattice(L1.ambient_dim, L1.basis.hstack(L2.basis))


def lattice_intersection(L1, L2):
    """The intersection of two lattices in the same ambient space."""
    if L1.ambient_dim != L2.ambient_dim:
        raise DomainError("ambient dimension mismatch in intersection")
    if L1.rank == 0 or L2.rank == 0:
        return Lattice(L1.ambient_dim, Mat.from_columns([], nrows=L1.ambient_dim))
    stacked = L1.basis.hstack(-L2.basis)
    d = stacked.denominator_lcm()
    K = integer_kernel(stacked * d if d != 1 else stacked)
    first = Mat(tuple(K.rows[: L1.rank]), ncols=K.ncols)
    return Lattice(L1.ambient_dim, L1.basis * first)


def congruence_kernel(A, d):
    """Basis of {c in Z^n : A c ≡ 0 (mod d)} for an integer matrix A."""
    if not A.is_integral():
        raise DomainError("congruence_kernel requires an integer matrix")
    _, D, V = smith_normal_form(A)
    n = A.ncols
    scale = []
    for i in range(n):
        di = D.rows[i][i] if i < D.nrows else 0
        scale.append(d // gcd(di, d))
    return V * Mat.diagonal(scale)


def preimage_lattice(M, target, source_dim=None):
    """The lattice {x : M x in target} for an injective rational matrix M.

    The columns of M must land in the span of ``target``.
    """
    source_dim = M.ncols if source_dim is None else source_dim
    if M.ncols != source_dim:
        raise DomainError("matrix shape disagrees with source dimension")
    if M.rank() != M.ncols:
        raise DomainError("preimage_lattice requires an injective matrix")
    W = target.coords_matrix(M)  # target-basis coordinates of M's columns
    d = W.denominator_lcm()
    A = W * d
    _, D, V = smith_normal_form(Mat(A.rows, ncols=A.ncols))
    scale = []
    for i in range(source_dim):
        di = D.rows[i][i] if i < D.nrows else 0
        if di == 0:
            raise DomainError("preimage_lattice requires an injective matrix")
        scale.append(Fraction(d, di))
    return Lattice(source_dim, V * Mat.diagonal(scale))
