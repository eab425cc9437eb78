"""Cyclic unramified covers of surfaces, built combinatorially.

A closed oriented surface is modeled by a ribbon graph (a graph with cyclic
orderings of the half-edge darts at each vertex); its first homology carries
the intersection form, computed exactly by contracting a spanning tree to a
single vertex and counting signed chord crossings in the merged rotation.

A Z/m voltage assignment on the edges produces the derived covering graph
with its lifted ribbon structure, hence the homology of an m-fold cyclic
unramified cover together with the deck action, the norm (pushforward) and
the transfer.  The classical facts about such covers -- the Prym pair, the
component group of the norm kernel, the torsion class attached to the
cover, the classification of maximal isotropic subgroups of ker mu and the
birationality predicate -- are all certified here by exact lattice
computations rather than assumed.
"""

from math import gcd

from .comppair import complement, ker_mu_of_pair, orthogonal_projection
from .errors import CertificationError, DomainError
from .finquot import (
    FiniteQuotient,
    enumerate_mti,
    is_maximal_isotropic,
    preimage_under_mult,
)
from .lattice import (
    Lattice,
    kernel_lattice,
    lattice_sum,
    preimage_lattice,
    saturate,
)
from .matrix import Mat, smith_normal_form
from .pollat import LatticeMap, PolarizedLattice, polarization_type

__all__ = [
    "RibbonGraph",
    "VoltageAssignment",
    "CoverHomology",
    "surface_ribbon",
    "homology_with_form",
    "cyclic_cover",
    "standard_cover",
    "prym_sublattice",
    "norm_component_group",
    "eta_class",
    "ker_mu_basis",
    "classify_mti_K",
    "birational_predicate",
    "verify_kernel_identification",
]


class RibbonGraph:
    """A graph with a rotation system: edge e has darts 2e (tail), 2e+1 (head).

    ``rotations`` is one tuple of darts per vertex, in counterclockwise order;
    together they partition all darts.  Faces are the orbits of the
    next-along-boundary permutation d -> rotation-successor(partner(d)).
    """

    __slots__ = ("n_edges", "rotations", "vertex_of")

    def __init__(self, n_edges, rotations):
        rotations = tuple(tuple(r) for r in rotations)
        darts = [d for rot in rotations for d in rot]
        if sorted(darts) != list(range(2 * n_edges)):
            raise DomainError("rotations must partition the darts 0..2E-1")
        vertex_of = {}
        for v, rot in enumerate(rotations):
            for d in rot:
                vertex_of[d] = v
        object.__setattr__(self, "n_edges", n_edges)
        object.__setattr__(self, "rotations", rotations)
        object.__setattr__(self, "vertex_of", vertex_of)

    def __setattr__(self, name, value):
        raise AttributeError("RibbonGraph is immutable")

    @property
    def n_vertices(self):
        return len(self.rotations)

    @property
    def n_darts(self):
        return 2 * self.n_edges

    @staticmethod
    def partner(d):
        return d ^ 1

    def edge_of(self, d):
        return d // 2

    def tail_vertex(self, e):
        return self.vertex_of[2 * e]

    def head_vertex(self, e):
        return self.vertex_of[2 * e + 1]

    def rotation_successor(self, d):
        rot = self.rotations[self.vertex_of[d]]
        i = rot.index(d)
        return rot[(i + 1) % len(rot)]

    def faces(self):
        """Face boundaries as dart orbits of d -> successor(partner(d))."""
        seen = set()
        out = []
        for start in range(self.n_darts):
            if start in seen:
                continue
            orbit = []
            d = start
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                d = self.rotation_successor(self.partner(d))
            out.append(tuple(orbit))
        return out

    def face_vectors(self):
        """Each face boundary as an edge-space vector (+tail dart, -head dart)."""
        vecs = []
        for orbit in self.faces():
            v = [0] * self.n_edges
            for d in orbit:
                v[d // 2] += 1 if d % 2 == 0 else -1
            vecs.append(tuple(v))
        return vecs

    def euler_characteristic(self):
        return self.n_vertices - self.n_edges + len(self.faces())

    def genus(self):
        chi = self.euler_characteristic()
        if chi % 2 != 0 or chi > 2:
            raise DomainError("rotation system does not define a closed surface")
        return (2 - chi) // 2

    def is_connected(self):
        if self.n_vertices == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for d in self.rotations[v]:
                w = self.vertex_of[self.partner(d)]
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices


class VoltageAssignment:
    """A Z/m value per edge; reversing an edge negates its voltage."""

    __slots__ = ("modulus", "values")

    def __init__(self, modulus, values):
        if modulus < 1:
            raise DomainError("voltage modulus must be >= 1")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "values", tuple(v % modulus for v in values))

    def __setattr__(self, name, value):
        raise AttributeError("VoltageAssignment is immutable")


def surface_ribbon(g):
    """The one-vertex ribbon graph of a genus-g surface.

    Edges a_1, b_1, ..., a_g, b_g (a_i = edge 2i, b_i = edge 2i+1) with the
    rotation (a_i tail, b_i tail, a_i head, b_i head) per handle; this yields
    a single face whose boundary word is the product of commutators, so the
    filled surface is closed of genus g.
    """
    if g < 1:
        raise DomainError("surface_ribbon needs genus >= 1")
    rot = []
    for i in range(g):
        a, b = 2 * i, 2 * i + 1
        rot.extend([2 * a, 2 * b, 2 * a + 1, 2 * b + 1])
    R = RibbonGraph(2 * g, [rot])
    if len(R.faces()) != 1 or R.genus() != g:
        raise CertificationError("standard surface rotation failed", ["surface-ribbon"])
    return R


class _Homology:
    """First homology of the filled surface of a ribbon graph.

    Carries the chosen cycle section and the projection from graph cycles to
    homology coordinates, so chain-level maps (deck actions, pushforwards,
    transfers) can be transported to H_1 exactly.
    """

    __slots__ = ("graph", "polarized", "fund_cycles", "nontree", "proj", "section")

    def __init__(self, graph, polarized, fund_cycles, nontree, proj, section):
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "polarized", polarized)
        object.__setattr__(self, "fund_cycles", fund_cycles)
        object.__setattr__(self, "nontree", nontree)
        object.__setattr__(self, "proj", proj)
        object.__setattr__(self, "section", section)

    def __setattr__(self, name, value):
        raise AttributeError("_Homology is immutable")

    def cycle_to_homology(self, edge_vec):
        """Homology coordinates of a 1-cycle given as an edge-space vector."""
        coords = tuple(edge_vec[f] for f in self.nontree)
        if self.fund_cycles.apply(coords) != tuple(edge_vec):
            raise DomainError("edge vector is not a cycle of the graph")
        return self.proj.apply(coords)

    def homology_to_edges(self):
        """Representative edge vectors (columns) of the homology basis."""
        return self.fund_cycles * self.section


def _spanning_tree(R):
    """BFS spanning tree from vertex 0; returns (tree edge set, parent darts).

    parent[v] is the dart at v's parent whose edge leads down to v.
    """
    if not R.is_connected():
        raise DomainError("ribbon graph is not connected")
    parent_edge = {0: None}
    order = [0]
    tree = []
    queue = [0]
    while queue:
        v = queue.pop(0)
        for d in R.rotations[v]:
            w = R.vertex_of[R.partner(d)]
            if w not in parent_edge:
                parent_edge[w] = d // 2
                tree.append(d // 2)
                order.append(w)
                queue.append(w)
    return set(tree), parent_edge, order


def _tree_chain_to_root(R, tree, parent_edge):
    """For each vertex v, the tree chain from v to the root as an edge vector."""
    chains = {0: tuple([0] * R.n_edges)}

    def chain(v):
        if v in chains:
            return chains[v]
        e = parent_edge[v]
        # edge e connects v to its parent; orient the step from v to parent
        up = list(chain(R.tail_vertex(e) if R.head_vertex(e) == v else R.head_vertex(e)))
        if R.head_vertex(e) == v:
            up[e] -= 1  # traverse e against its orientation: v -> tail
        else:
            up[e] += 1
        return tuple(up)

    for v in range(R.n_vertices):
        chains[v] = chain(v)
    return chains


def _contract_tree(R, tree):
    """Contract the tree edges; returns the merged rotation (list of darts)."""
    rotations = {v: list(rot) for v, rot in enumerate(R.rotations)}
    vertex_of = dict(R.vertex_of)
    for e in sorted(tree):
        d_t, d_h = 2 * e, 2 * e + 1
        u, v = vertex_of[d_t], vertex_of[d_h]
        if u == v:
            raise CertificationError("tree edge became a loop", ["tree-contract"])
        rot_u, rot_v = rotations[u], rotations[v]
        iu, iv = rot_u.index(d_t), rot_v.index(d_h)
        merged = rot_u[iu + 1:] + rot_u[:iu] + rot_v[iv + 1:] + rot_v[:iv]
        rotations[u] = merged
        del rotations[v]
        for d in merged:
            vertex_of[d] = u
    if len(rotations) != 1:
        raise CertificationError("tree contraction left several vertices", ["tree-contract"])
    return next(iter(rotations.values()))


def _chord_sign(pos, n, f, g):
    """Signed crossing of the oriented chords of loops f and g.

    Loop e enters the merged vertex disk at its head dart and leaves at its
    tail dart; two chords cross iff their endpoints interleave, with sign +1
    when the order around the disk is (f in, g in, f out, g out).
    """
    in_f, out_f = pos[2 * f + 1], pos[2 * f]
    in_g, out_g = pos[2 * g + 1], pos[2 * g]
    t_out = (out_f - in_f) % n
    t_gin = (in_g - in_f) % n
    t_gout = (out_g - in_f) % n
    if t_gin < t_out < t_gout:
        return 1
    if t_gout < t_out < t_gin:
        return -1
    return 0


def homology_with_form(R):
    """H_1 of the closed surface of R, as a principal polarized lattice."""
    return _build_homology(R).polarized


def _build_homology(R):
    tree, parent_edge, _ = _spanning_tree(R)
    nontree = [e for e in range(R.n_edges) if e not in tree]
    chains = _tree_chain_to_root(R, tree, parent_edge)

    cycles = []
    for f in nontree:
        vec = [0] * R.n_edges
        vec[f] = 1
        head = R.head_vertex(f)
        tail = R.tail_vertex(f)
        for e, c in enumerate(chains[head]):
            vec[e] += c
        for e, c in enumerate(chains[tail]):
            vec[e] -= c
        cycles.append(tuple(vec))
    L = len(nontree)
    fund_cycles = Mat.from_columns(cycles, nrows=R.n_edges)

    merged_rot = _contract_tree(R, tree)
    pos = {d: i for i, d in enumerate(merged_rot)}
    n_pos = len(merged_rot)
    gram = Mat(
        [
            [
                0 if fi == gi else _chord_sign(pos, n_pos, nontree[fi], nontree[gi])
                for gi in range(L)
            ]
            for fi in range(L)
        ],
        ncols=L,
    )

    faces = R.face_vectors()
    face_coords = Mat.from_columns(
        [tuple(fv[e] for e in nontree) for fv in faces], nrows=L
    )
    # faces are cycles and lie in the radical of the chord pairing
    for k, fv in enumerate(faces):
        if fund_cycles.apply(face_coords.col(k)) != tuple(fv):
            raise CertificationError("face boundary is not a cycle", ["face-cycle"])
    if not (gram * face_coords).is_zero():
        raise CertificationError(
            "face boundaries do not lie in the radical of the intersection pairing",
            ["face-radical"],
        )

    U, D, _ = smith_normal_form(face_coords)
    r = sum(1 for i in range(min(D.nrows, D.ncols)) if D.rows[i][i] != 0)
    if r != len(faces) - 1:
        raise CertificationError("face relations have unexpected rank", ["face-rank"])
    if any(D.rows[i][i] != 1 for i in range(r)):
        raise CertificationError("face boundary lattice is not saturated", ["face-saturated"])
    h = L - r
    expected_h = 2 * R.genus()
    if h != expected_h:
        raise CertificationError("homology rank disagrees with the genus", ["h1-rank"])

    Uinv = U.inverse()
    proj = Mat(U.rows[r:], ncols=L) if h else Mat.zero(0, L)
    section = Uinv.take_columns(range(r, L))

    form = section.T * gram * section
    P = PolarizedLattice(Lattice.standard(h), form)
    if not polarization_type(P).is_principal:
        raise CertificationError("surface intersection form is not unimodular", ["h1-principal"])
    return _Homology(R, P, fund_cycles, nontree, proj, section)


class CoverHomology:
    """Homology data of an m-fold cyclic unramified cover N -> N0.

    Bundles the base and total principal lattices, the deck action on H_1 of
    the total space, the pushforward (norm) and the transfer, plus the
    combinatorial input needed to rebuild everything from scratch.
    """

    __slots__ = (
        "base_graph", "voltages", "m", "g", "cover_graph",
        "base", "total", "sigma", "pushforward", "transfer",
        "_base_h", "_total_h", "_pair", "_cache",
    )

    def __init__(self, base_graph, voltages, m, cover_graph,
                 base_h, total_h, sigma, pushforward, transfer):
        object.__setattr__(self, "base_graph", base_graph)
        object.__setattr__(self, "voltages", voltages)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "g", base_graph.genus())
        object.__setattr__(self, "cover_graph", cover_graph)
        object.__setattr__(self, "base", base_h.polarized)
        object.__setattr__(self, "total", total_h.polarized)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "pushforward", pushforward)
        object.__setattr__(self, "transfer", transfer)
        object.__setattr__(self, "_base_h", base_h)
        object.__setattr__(self, "_total_h", total_h)
        object.__setattr__(self, "_pair", None)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("CoverHomology is immutable")

    @property
    def cover_genus(self):
        return self.total.dim

    def prym_sublattice(self):
        return prym_sublattice(self)

    def pair(self):
        """The complementary pair (A = Prym, B = transfer image) in the total."""
        if self._pair is None:
            _, sub_B = prym_sublattice(self)
            object.__setattr__(self, "_pair", complement(self.total, sub_B))
        return self._pair

    def voltage_functional(self):
        """The monodromy functional on base homology (Z/m valued on H_1)."""
        reps = self._base_h.homology_to_edges()
        w_edges = Mat([self.voltages.values], ncols=self.base_graph.n_edges)
        return w_edges * reps

    def __repr__(self):
        return f"CoverHomology(g={self.g}, m={self.m}, cover_genus={self.cover_genus})"


def cyclic_cover(R, voltages, m):
    """The derived m-sheeted cover of the ribbon graph R, fully certified.

    Voltages must generate Z/m (connected cover) and every face must have
    zero total voltage (unramified cover of closed surfaces).  The returned
    CoverHomology carries exact matrices for the deck action sigma, the
    pushforward pi_* and the transfer pi^*, certified to satisfy
    sigma symplectic, sigma^m = 1, pi_* pi^* = m, pi^* pi_* = sum sigma^i,
    and E_N(pi^* x, pi^* y) = m E_0(x, y); the cover genus is mg - m + 1.
    """
    if isinstance(voltages, (list, tuple)):
        voltages = VoltageAssignment(m, voltages)
    if voltages.modulus != m:
        raise DomainError("voltage modulus disagrees with the cover degree")
    if m < 1:
        raise DomainError("cover degree must be >= 1")
    if len(voltages.values) != R.n_edges:
        raise DomainError("one voltage per edge required")

    for orbit in R.faces():
        total = sum(
            voltages.values[d // 2] * (1 if d % 2 == 0 else -1) for d in orbit
        )
        if total % m != 0:
            raise DomainError(
                "face has nonzero total voltage: the cover would be ramified"
            )

    base_h = _build_homology(R)
    g = R.genus()

    # Derived graph: edge (e, s) runs from (tail(e), s) to (head(e), s + v(e)).
    E, V = R.n_edges, R.n_vertices
    cov_edge = lambda e, s: e * m + s
    rotations = []
    for v in range(V):
        for s in range(m):
            rot = []
            for d in R.rotations[v]:
                e = d // 2
                if d % 2 == 0:
                    rot.append(2 * cov_edge(e, s))
                else:
                    rot.append(2 * cov_edge(e, (s - voltages.values[e]) % m) + 1)
            rotations.append(rot)
    cover = RibbonGraph(E * m, rotations)
    if not cover.is_connected():
        raise DomainError("voltages do not generate Z/m: the cover is disconnected")

    total_h = _build_homology(cover)
    g_cover = cover.genus()
    if g_cover != m * g - m + 1:
        raise CertificationError(
            f"cover genus {g_cover} differs from mg-m+1 = {m * g - m + 1}",
            ["cover-genus"],
        )

    # Chain-level matrices on edge spaces.
    n_ce = E * m
    sigma_edges = Mat.from_columns(
        [tuple(1 if i == cov_edge(e, (s + 1) % m) else 0 for i in range(n_ce))
         for e in range(E) for s in range(m)],
        nrows=n_ce,
    )
    down_edges = Mat.from_columns(
        [tuple(1 if i == e else 0 for i in range(E)) for e in range(E) for s in range(m)],
        nrows=E,
    )
    up_edges = Mat.from_columns(
        [tuple(1 if i // m == e else 0 for i in range(n_ce)) for e in range(E)],
        nrows=n_ce,
    )

    reps = total_h.homology_to_edges()
    base_reps = base_h.homology_to_edges()

    def transport_total(chain_map_times_reps):
        cols = []
        for j in range(chain_map_times_reps.ncols):
            cols.append(total_h.cycle_to_homology(chain_map_times_reps.col(j)))
        return Mat.from_columns(cols, nrows=total_h.polarized.rank)

    sigma_mat = transport_total(sigma_edges * reps)
    transfer_mat = transport_total(up_edges * base_reps)
    push_cols = [base_h.cycle_to_homology((down_edges * reps).col(j)) for j in range(reps.ncols)]
    push_mat = Mat.from_columns(push_cols, nrows=base_h.polarized.rank)

    lam_total = total_h.polarized.lattice
    lam_base = base_h.polarized.lattice
    sigma = LatticeMap(sigma_mat, lam_total, lam_total)
    pushforward = LatticeMap(push_mat, lam_total, lam_base)
    transfer = LatticeMap(transfer_mat, lam_base, lam_total)

    failures = []
    EN, E0 = total_h.polarized.form, base_h.polarized.form
    if sigma_mat.T * EN * sigma_mat != EN:
        failures.append("sigma-symplectic")
    power = sigma_mat
    sum_sigma = Mat.identity(lam_total.ambient_dim)
    for _ in range(m - 1):
        sum_sigma = sum_sigma + power
        power = power * sigma_mat
    if power != Mat.identity(lam_total.ambient_dim):
        failures.append("sigma-order-m")
    if m > 1 and 2 * (m * g - m + 1 - g) > 0 and sigma_mat == Mat.identity(lam_total.ambient_dim):
        failures.append("sigma-nontrivial")
    if push_mat * transfer_mat != Mat.identity(lam_base.ambient_dim) * m:
        failures.append("pushforward-transfer-m")
    if transfer_mat * push_mat != sum_sigma:
        failures.append("transfer-pushforward-sum-sigma")
    if transfer_mat.T * EN * transfer_mat != E0 * m:
        failures.append("transfer-multiplies-form")
    if failures:
        raise CertificationError(f"cover certification failed: {failures}", failures)

    return CoverHomology(
        R, voltages, m, cover, base_h, total_h, sigma, pushforward, transfer
    )


def standard_cover(g, m):
    """The fixture cover: voltage 1 on a_1, zero elsewhere."""
    R = surface_ribbon(g)
    volts = [0] * R.n_edges
    if m > 1:
        volts[0] = 1
    return cyclic_cover(R, VoltageAssignment(m, volts), m)


def prym_sublattice(cov):
    """(sub_A, sub_B): the saturated kernel of the norm and the transfer image."""
    lam = cov.total.lattice
    sub_A = kernel_lattice(cov.pushforward.matrix, lam)
    image = cov.transfer.matrix * cov.base.lattice.basis
    sub_B = saturate(
        [image.col(j) for j in range(image.ncols)], lam
    )
    return sub_A, sub_B


def norm_component_group(cov):
    """pi_0 of the kernel of the norm map, with the component index.

    Returns (base/pi_*(total) as a FiniteQuotient, component_index) where
    component_index maps a rational point x of ker Nm (pi_* x integral) to
    its component label in Z/m via the voltage functional.
    """
    pushed = Lattice(cov.base.ambient_dim, cov.pushforward.matrix * cov.total.lattice.basis)
    group = FiniteQuotient(pushed, cov.base.lattice)
    if group.order != cov.m:
        raise CertificationError(
            f"component group has order {group.order}, expected m = {cov.m}",
            ["component-group-order"],
        )
    w = cov.voltage_functional()

    def component_index(x):
        y = cov.pushforward.matrix.apply(tuple(x))
        if not cov.base.lattice.contains_vector(y):
            raise DomainError("point is not in the kernel of the norm map")
        val = sum(a * b for a, b in zip(w.rows[0], y))
        return int(val) % cov.m

    return group, component_index


def eta_class(cov):
    """The m-torsion class of the base attached to the cover: ker pi^*.

    Computes (pi^*)^{-1}(Lambda_N) / Lambda_0, certifies it cyclic of order
    m, and returns a deterministic generator.
    """
    if cov.m < 2:
        raise DomainError("eta is defined for covers of degree >= 2")
    upper = preimage_lattice(cov.transfer.matrix, cov.total.lattice)
    Q = FiniteQuotient(cov.base.lattice, upper)
    if Q.order != cov.m or len(Q.invariants) != 1:
        raise CertificationError(
            f"ker pi^* is {Q!r}, not cyclic of order {cov.m}", ["ker-transfer-cyclic"]
        )
    W, diag = Q._adapted()
    gen_col = next(i for i, d in enumerate(diag) if d == cov.m)
    eta = Q.element(W.col(gen_col))
    if eta.order() != cov.m:
        raise CertificationError("eta does not have order m", ["eta-order"])
    return eta


def _ker_mu_data(cov):
    """(ker mu_B quotient, pairing, pr_B) for B = the transfer image."""
    cache = cov._cache
    if "ker_mu" not in cache:
        pair = cov.pair()
        Q, p = ker_mu_of_pair(pair, cov.m)
        cache["ker_mu"] = (Q, p, orthogonal_projection(pair))
    return cache["ker_mu"]


def ker_mu_basis(cov):
    """Generators (xi_bar, P_1) of ker mu_B, certified to span (Z/m)^2.

    xi is a deterministic rational solution of Nm(xi) = eta; xi_bar is its
    image in B-hat = span(B)/pr_B(Lambda).  P_1 is the generator of
    ker(Nm-bar) whose component index is 1.
    """
    cache = cov._cache
    if "ker_mu_basis" in cache:
        return cache["ker_mu_basis"]
    if cov.m < 2:
        raise DomainError("ker mu basis needs a cover of degree >= 2")
    Q, p, pr_B = _ker_mu_data(cov)
    m = cov.m

    eta = eta_class(cov)
    xi = cov.pushforward.matrix.solve(Mat.column(eta.rep)).column_vector()
    xi_bar = Q.element(pr_B.apply(xi))

    # ker(Nm-bar) inside B-hat: {y in span B : pi_* y integral} / dual(B)
    dualB = Q.lower
    WB = dualB.basis
    pushed = cov.pushforward.matrix * WB
    c_lattice = preimage_lattice(pushed, cov.base.lattice, source_dim=WB.ncols)
    ker_nm_bar = FiniteQuotient(dualB, Lattice(dualB.ambient_dim, WB * c_lattice.basis))
    if ker_nm_bar.order != m or len(ker_nm_bar.invariants) != 1:
        raise CertificationError(
            f"ker Nm-bar is {ker_nm_bar!r}, not cyclic of order m", ["ker-nmbar-cyclic"]
        )
    W, diag = ker_nm_bar._adapted()
    gen = ker_nm_bar.element(W.col(next(i for i, d in enumerate(diag) if d == m)))

    _, component_index = norm_component_group(cov)
    c = component_index(gen.rep)
    if gcd(c, m) != 1:
        raise CertificationError("generator has non-unit component index", ["p1-index"])
    P1 = Q.element((pow(c, -1, m) * gen).rep)

    checks = {
        "ker-mu-order": Q.order == m * m,
        "ker-mu-invariants": Q.invariants == (m, m) if m > 1 else True,
        "xi-order": xi_bar.order() == m,
        "p1-order": P1.order() == m,
        "generate": Q.subgroup([xi_bar, P1]).upper == Q.upper,
        "p1-in-ker-nmbar": ker_nm_bar.upper.contains_vector(P1.rep),
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise CertificationError(f"ker mu basis certification failed: {bad}", bad)
    cache["ker_mu_basis"] = (xi_bar, P1, checks)
    return xi_bar, P1, checks


def classify_mti_K(cov):
    """Labeled maximal totally isotropic subgroups <a xi_bar + b P_1>.

    Returns a list of ((a, b), K) over canonical labels with gcd(a, b, m) = 1,
    one per distinct subgroup, each certified maximal totally isotropic.  For
    prime m the list is exactly the m + 1 subgroups of ker mu_B and is
    cross-checked against the exhaustive enumeration.
    """
    Q, p, _ = _ker_mu_data(cov)
    xi_bar, P1, _ = ker_mu_basis(cov)
    m = cov.m
    out = []
    seen = set()
    for a in range(m):
        for b in range(m):
            if gcd(gcd(a, b), m) != 1:
                continue
            K = Q.subgroup([a * xi_bar + b * P1])
            if K.upper in seen:
                continue
            seen.add(K.upper)
            if not is_maximal_isotropic(K, p):
                raise CertificationError(
                    f"<{a} xi + {b} P1> failed the m.t.i. certification",
                    ["classify-mti"],
                )
            out.append(((a, b), K))
    out.sort(key=lambda t: t[0])
    if _is_prime(m):
        expected = enumerate_mti(Q, p)
        if sorted(K.upper.basis.rows for _, K in out) != sorted(
            S.upper.basis.rows for S in expected
        ):
            raise CertificationError(
                "classified subgroups disagree with exhaustive enumeration",
                ["classify-crosscheck"],
            )
    return out


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def birational_predicate(K, p1):
    """True iff l * P_1 lies outside K for every l = 1, ..., m-1.

    This is the exact condition for the curve map into B-hat/K to be
    birational onto its image.
    """
    m = p1.order()
    for ell in range(1, m):
        if K.upper.contains_vector((ell * p1).rep):
            return False
    return True


def verify_kernel_identification(cov, K):
    """Certify the identification of X = B-hat/K as a quotient of the base.

    Exact identities checked, all as subgroups of the rational torus of the
    base (lower lattice Lambda_0):

    * the kernel D of the composite JN_0 -> B -> B-hat -> B-hat/K = X is
      {x : pi^* x in Lambda_X}/Lambda_0 and has order m^(2g) (the degree of
      the composite isogeny);
    * [m]^{-1}(Nm-bar(K)) equals the kernel of JN_0 -> B-hat/(K + ker Nm-bar):
      preimages under the composite saturate K by ker(Nm-bar) = <P_1>, so D
      equals [m]^{-1}(Nm-bar(K)) exactly when P_1 in K, and sits inside it
      with index m otherwise (the birational case);
    * for prime m and birational K, Nm-bar(K) = <eta>, so
      [m]^{-1}(Nm-bar(K)) = [m]^{-1}<eta>, of order m^(2g) * m.

    Returns (ok, identified_order) with identified_order the order of
    [m]^{-1}(Nm-bar(K)).  A failure of any identity raises no exception but
    returns ok = False (test failure, not recoverable).
    """
    m = cov.m
    g = cov.g
    lam0 = cov.base.lattice
    _, P1, _ = ker_mu_basis(cov)
    Q, _, _ = _ker_mu_data(cov)

    direct = FiniteQuotient(lam0, preimage_lattice(cov.transfer.matrix, K.upper))

    pushedK = Lattice(lam0.ambient_dim, cov.pushforward.matrix * K.upper.basis)
    nm_of_K = FiniteQuotient(lam0, lattice_sum(lam0, pushedK))
    via_norm = preimage_under_mult(nm_of_K, m)

    # K + <P_1> inside ker mu_B, and the direct kernel of the saturated quotient
    K_sat = Q.subgroup([Q.element(c) for c in K.upper.basis.columns()] + [P1])
    saturated = FiniteQuotient(lam0, preimage_lattice(cov.transfer.matrix, K_sat.upper))

    ok = (
        direct.order == m ** (2 * g)
        and via_norm.upper == saturated.upper
        and via_norm.upper.contains_lattice(direct.upper)
        and via_norm.order == direct.order * (K_sat.order // K.order)
    )
    if ok and K.upper.contains_vector(P1.rep):
        ok = via_norm.upper == direct.upper
    if ok and _is_prime(m) and birational_predicate(K, P1):
        eta = eta_class(cov)
        eta_group = FiniteQuotient(
            lam0,
            lattice_sum(lam0, Lattice.from_generators(lam0.ambient_dim, [eta.rep])),
        )
        ok = via_norm.upper == preimage_under_mult(eta_group, m).upper
        ok = ok and via_norm.order == m ** (2 * g) * m
    return ok, via_norm.order
