"""Finite abelian groups presented as quotients L'/L of equal-span lattices.

This is where torsion subgroups, kernels of polarization maps and their
Q/Z-valued pairings live, together with exhaustive subgroup enumeration and
the maximal-totally-isotropic (m.t.i.) machinery that drives every isogeny
quotient in the package.
"""

from fractions import Fraction
from itertools import product
from math import lcm

from .errors import BudgetError, DomainError
from .lattice import Lattice, congruence_kernel, lattice_sum
from .matrix import Mat, smith_normal_form

__all__ = [
    "FiniteQuotient",
    "QuotientElement",
    "PairingOnQuotient",
    "group_invariants",
    "enumerate_subgroups",
    "enumerate_mti",
    "is_isotropic",
    "orthogonal_subgroup",
    "is_maximal_isotropic",
    "preimage_under_mult",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 2**16


class FiniteQuotient:
    """The finite abelian group upper/lower for nested equal-span lattices."""

    __slots__ = ("lower", "upper", "_snf", "_hash")

    def __init__(self, lower, upper):
        if lower.ambient_dim != upper.ambient_dim:
            raise DomainError("quotient lattices live in different ambient spaces")
        if lower.rank != upper.rank or not upper.same_span(lower):
            raise DomainError("quotient lattices must have equal rational span")
        if not upper.contains_lattice(lower):
            raise DomainError("lower lattice is not contained in the upper one")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "_snf", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteQuotient is immutable")

    def _adapted(self):
        """(W, diag): a basis W of `upper` with lower = W * diag(d1..dr)."""
        if self._snf is None:
            T = self.upper.coords_matrix(self.lower.basis)
            U, D, _ = smith_normal_form(T)
            W = self.upper.basis * U.inverse()
            diag = tuple(D.rows[i][i] for i in range(D.nrows))
            object.__setattr__(self, "_snf", (W, diag))
        return self._snf

    @property
    def order(self):
        _, diag = self._adapted()
        n = 1
        for d in diag:
            n *= d
        return n

    @property
    def invariants(self):
        """Elementary divisors > 1, in ascending divisibility order."""
        _, diag = self._adapted()
        return tuple(d for d in diag if d > 1)

    @property
    def exponent(self):
        inv = self.invariants
        return inv[-1] if inv else 1

    def is_trivial(self):
        return self.order == 1

    def __eq__(self, other):
        return (
            isinstance(other, FiniteQuotient)
            and self.lower == other.lower
            and self.upper == other.upper
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.lower, self.upper)))
        return self._hash

    def __repr__(self):
        inv = self.invariants
        desc = " x ".join(f"Z/{d}" for d in inv) if inv else "0"
        return f"FiniteQuotient({desc})"

    # -- elements ------------------------------------------------------------

    def element(self, vector):
        return QuotientElement(self, vector)

    def zero(self):
        return QuotientElement(self, (0,) * self.lower.ambient_dim)

    def elements(self, budget=DEFAULT_BUDGET):
        """All elements, in a deterministic order."""
        if self.order > budget:
            raise BudgetError(f"group of order {self.order} exceeds budget {budget}")
        W, diag = self._adapted()
        out = []
        for ks in product(*(range(d) for d in diag)):
            vec = W.apply(ks)
            out.append(QuotientElement(self, vec))
        return out

    def contains_element(self, elt):
        """Whether an element of an overgroup (same lower) lies in this one."""
        return self.upper.contains_vector(elt.rep)

    def subgroup(self, elements):
        """The subgroup generated by the given elements (or raw vectors)."""
        vecs = [e.rep if isinstance(e, QuotientElement) else tuple(e) for e in elements]
        enlarged = lattice_sum(self.lower, Lattice.from_generators(self.lower.ambient_dim, vecs)) \
            if vecs else self.lower
        if not self.upper.contains_lattice(enlarged):
            raise DomainError("generators do not lie in the quotient")
        return FiniteQuotient(self.lower, enlarged)

    def is_subgroup_of(self, other):
        return (
            self.lower == other.lower
            and other.upper.contains_lattice(self.upper)
        )


class QuotientElement:
    """An element of a FiniteQuotient, stored by its canonical representative."""

    __slots__ = ("parent", "rep")

    def __init__(self, parent, vector):
        vector = tuple(vector)
        if not parent.upper.contains_vector(vector):
            raise DomainError("representative does not lie in the upper lattice")
        rep = parent.lower.canonical_representative(vector)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "rep", tuple(rep))

    def __setattr__(self, name, value):
        raise AttributeError("QuotientElement is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, QuotientElement)
            and self.parent == other.parent
            and self.rep == other.rep
        )

    def __hash__(self):
        return hash((self.parent, self.rep))

    def __add__(self, other):
        if self.parent != other.parent:
            raise DomainError("elements of different quotients")
        return QuotientElement(self.parent, tuple(a + b for a, b in zip(self.rep, other.rep)))

    def __neg__(self):
        return QuotientElement(self.parent, tuple(-a for a in self.rep))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return QuotientElement(self.parent, tuple(k * a for a in self.rep))

    __rmul__ = __mul__

    def is_zero(self):
        return all(a == 0 for a in self.rep)

    def order(self):
        coords = self.parent.lower.coords_of(self.rep)
        return lcm(*(Fraction(c).denominator for c in coords)) if coords else 1

    def __repr__(self):
        return f"QuotientElement({self.rep})"


class PairingOnQuotient:
    """A Q/Z-valued pairing on a FiniteQuotient, given by an alternating form.

    Well-definedness requires form(upper, lower) ⊆ Z, which makes the value
    on representatives independent of the chosen lifts.
    """

    __slots__ = ("quotient", "form")

    def __init__(self, quotient, form):
        if form.nrows != quotient.lower.ambient_dim or not form.is_square():
            raise DomainError("pairing form has the wrong shape")
        if not form.is_alternating():
            raise DomainError("pairing form must be alternating")
        check = quotient.upper.basis.T * form * quotient.lower.basis
        if not check.is_integral():
            raise DomainError("pairing is not well-defined: form(upper, lower) not integral")
        object.__setattr__(self, "quotient", quotient)
        object.__setattr__(self, "form", form)

    def __setattr__(self, name, value):
        raise AttributeError("PairingOnQuotient is immutable")

    def value(self, x, y):
        """The pairing value x^T * form * y in Q/Z, reduced into [0, 1)."""
        xv = x.rep if isinstance(x, QuotientElement) else tuple(x)
        yv = y.rep if isinstance(y, QuotientElement) else tuple(y)
        raw = Fraction(sum(a * b for a, b in zip(xv, self.form.apply(yv))))
        return raw - (raw.numerator // raw.denominator)

    def is_nondegenerate(self):
        rad = orthogonal_subgroup(self.quotient, self, ambient_quotient=self.quotient)
        return rad.upper == self.quotient.lower


def group_invariants(Q):
    """Elementary divisors > 1 of the quotient, ascending; product = order."""
    return Q.invariants


def preimage_under_mult(S, m):
    """The preimage of the subgroup S under multiplication by m on the torus."""
    if m < 1:
        raise DomainError("multiplication level must be >= 1")
    return FiniteQuotient(S.lower, S.upper.scaled(Fraction(1, m)))


def is_isotropic(S, p):
    """True iff the pairing vanishes on S x S (checked on lattice generators)."""
    B = S.upper.basis
    vals = B.T * p.form * B
    return all(Fraction(x).denominator == 1 for row in vals.rows for x in row)


def orthogonal_subgroup(S, p, ambient_quotient=None):
    """The orthogonal S^perp = {x in Q : p(x, S) = 0} as a subgroup of Q."""
    Q = p.quotient if ambient_quotient is None else ambient_quotient
    if S.lower != Q.lower:
        raise DomainError("subgroup does not share the quotient's lower lattice")
    C = Q.upper.basis.T * p.form * S.upper.basis
    d = C.denominator_lcm()
    A = (C * d).T
    K = congruence_kernel(Mat(A.rows, ncols=A.ncols), d)
    perp = Lattice(Q.lower.ambient_dim, Q.upper.basis * K)
    # perp contains Q.lower: form(upper, lower) ⊆ Z makes lower coords solve
    # the congruence, so this is a genuine subgroup presentation.
    return FiniteQuotient(Q.lower, perp)


def is_maximal_isotropic(S, p):
    """Maximal totally isotropic test: S isotropic and S^perp ⊆ S.

    For an alternating pairing, an isotropic S with S^perp ⊆ S equals its own
    orthogonal, and no isotropic subgroup properly contains such an S.
    """
    if not is_isotropic(S, p):
        return False
    perp = orthogonal_subgroup(S, p)
    return S.upper.contains_lattice(perp.upper)


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def _intermediate_normal_forms(diag):
    """All canonical lower-triangular bases H of lattices between diag(Z) and Z^k.

    H has positive diagonal h_j | d_j, entries H[j][i] in [0, h_j) for i < j,
    and diag(d) Z^k ⊆ H Z^k (checked by exact forward substitution).  Each
    intermediate lattice has exactly one such H.
    """
    k = len(diag)
    if k == 0:
        yield Mat.identity(0)
        return
    rows = [[0] * k for _ in range(k)]
    # partial[t][j] = coefficient c_j in H c = d_t e_t, built row by row
    partial = [[0] * k for _ in range(k)]

    def recurse(j):
        if j == k:
            yield Mat([tuple(r) for r in rows], ncols=k)
            return
        for h in _divisors(diag[j]):
            for offs in product(*(range(h) for _ in range(j))):
                ok = True
                coeffs = []
                for t in range(k):
                    num = (diag[j] if t == j else 0) - sum(
                        offs[i] * partial[t][i] for i in range(j)
                    )
                    if num % h != 0:
                        ok = False
                        break
                    coeffs.append(num // h)
                if not ok:
                    continue
                for i in range(j):
                    rows[j][i] = offs[i]
                for i in range(j + 1, k):
                    rows[j][i] = 0
                rows[j][j] = h
                for t in range(k):
                    partial[t][j] = coeffs[t]
                yield from recurse(j + 1)
        return

    yield from recurse(0)


def enumerate_subgroups(Q, budget=DEFAULT_BUDGET):
    """All subgroups of Q, each as a FiniteQuotient between Q.lower and Q.upper.

    Deterministic canonical order: sorted by (order, canonical basis matrix of
    the intermediate lattice).
    """
    if Q.order > budget:
        raise BudgetError(f"group of order {Q.order} exceeds budget {budget}")
    W, diag = Q._adapted()
    nontrivial = [i for i, d in enumerate(diag) if d > 1]
    trivial_cols = [W.col(i) for i, d in enumerate(diag) if d == 1]
    sub_diag = [diag[i] for i in nontrivial]
    Wsub = Mat.from_columns([W.col(i) for i in nontrivial], nrows=W.nrows) \
        if nontrivial else None
    out = []
    for H in _intermediate_normal_forms(sub_diag):
        cols = (Wsub * H).columns() if nontrivial else []
        gens = cols + trivial_cols
        # gens span an intermediate lattice containing Q.lower by construction
        M = Lattice.from_generators(Q.lower.ambient_dim, gens) if gens else Q.lower
        out.append(FiniteQuotient(Q.lower, M))
    out.sort(key=lambda S: (S.order, S.upper.basis.rows))
    return out


def enumerate_mti(Q, p, budget=DEFAULT_BUDGET):
    """All maximal totally isotropic subgroups of Q under p, canonical order."""
    return [S for S in enumerate_subgroups(Q, budget=budget) if is_maximal_isotropic(S, p)]
