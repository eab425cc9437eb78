"""Shared fixtures and independent oracles for the test suite.

The oracles deliberately avoid the library's own algorithms: Smith invariants
via determinantal divisors, subgroup enumeration via closure BFS over group
elements, and maximality of isotropic subgroups via exhaustive extension.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from symplat.covers import standard_cover
from symplat.matrix import Mat


# -- cover fixtures shared across modules ------------------------------------

@pytest.fixture(scope="session")
def cover22():
    return standard_cover(2, 2)


@pytest.fixture(scope="session")
def cover23():
    return standard_cover(2, 3)


@pytest.fixture(scope="session")
def cover32():
    return standard_cover(3, 2)


@pytest.fixture(scope="session")
def cover24():
    return standard_cover(2, 4)


# -- oracle: Smith invariants via determinantal divisors ---------------------

def minor_gcd_invariants(M):
    """Invariant factors of an integer matrix via gcds of k x k minors.

    d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}.
    Independent of any elimination strategy.
    """
    m, n = M.nrows, M.ncols
    rank_cap = min(m, n)
    prev = 1
    out = []
    for k in range(1, rank_cap + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                sub = Mat([[M.rows[i][j] for j in cols] for i in rows], ncols=k)
                g = gcd(g, int(sub.det()))
        if g == 0:
            out.extend([0] * (rank_cap - len(out)))
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


# -- oracle: finite abelian group as explicit element tuples -----------------

class GroupTable:
    """A finite abelian group as tuples modulo a diagonal, for brute force."""

    def __init__(self, diag):
        self.diag = tuple(int(d) for d in diag)

    def elements(self):
        from itertools import product

        return [tuple(t) for t in product(*(range(d) for d in self.diag))]

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.diag))

    def close(self, gens):
        zero = tuple(0 for _ in self.diag)
        seen = {zero}
        frontier = [zero]
        gens = [tuple(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def all_subgroups(self):
        """Closure BFS: repeatedly extend known subgroups by single elements."""
        elements = self.elements()
        trivial = self.close([])
        found = {trivial}
        frontier = [trivial]
        while frontier:
            S = frontier.pop()
            for x in elements:
                if x not in S:
                    T = self.close(list(S) + [x])
                    if T not in found:
                        found.add(T)
                        frontier.append(T)
        return found


def quotient_as_table(Q):
    """(GroupTable, element-of map) for a FiniteQuotient, via its SNF basis."""
    W, diag = Q._adapted()
    table = GroupTable(diag)

    def to_tuple(elt):
        coords = W.solve(Mat.column(elt.rep)).column_vector()
        return tuple(int(Fraction(c)) % d for c, d in zip(coords, diag))

    return table, to_tuple


def pairing_table(Q, p):
    """The pairing on GroupTable coordinates, as exact fractions in [0,1)."""
    W, diag = Q._adapted()

    def value(xt, yt):
        xv = W.apply(xt)
        yv = W.apply(yt)
        raw = Fraction(sum(a * b for a, b in zip(xv, p.form.apply(yv))))
        return raw - (raw.numerator // raw.denominator)

    return value


def brute_force_mti(Q, p):
    """All maximal totally isotropic subgroups, as frozensets of tuples.

    Isotropy by pairwise evaluation over all element pairs; maximality by
    attempted extension with every outside element.
    """
    table, _ = quotient_as_table(Q)
    value = pairing_table(Q, p)
    subgroups = table.all_subgroups()
    isotropic = [
        S for S in subgroups if all(value(x, y) == 0 for x in S for y in S)
    ]
    iso_set = set(isotropic)
    out = []
    for S in isotropic:
        extendable = any(
            x not in S and all(value(x, s) == 0 for s in S)
            for x in table.elements()
        )
        if not extendable:
            out.append(S)
    assert all(S in iso_set for S in out)
    return set(out)


def library_subgroup_as_set(S, Q):
    """A library subgroup (FiniteQuotient) as a frozenset of oracle tuples."""
    _, to_tuple = quotient_as_table(Q)
    return frozenset(to_tuple(e) for e in S_elements(S, Q))


def S_elements(S, Q):
    """Elements of the subgroup S inside Q, as QuotientElements of Q."""
    W, diag = S._adapted()
    from itertools import product

    out = []
    for ks in product(*(range(d) for d in diag)):
        out.append(Q.element(W.apply(ks)))
    return out
