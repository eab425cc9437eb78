"""Lossless JSON serialization of lattices, forms, covers and certificates.

Schema "ppav-lattice/1": every matrix entry, rational or integer, is written
as a decimal string ("17", "-3/4"), so round-trips are bit-exact across
languages.  Dumps are canonical (sorted keys, fixed separators), which makes
repeated runs byte-identical.
"""

import json
from fractions import Fraction

from .covers import RibbonGraph, VoltageAssignment, cyclic_cover
from .errors import DomainError
from .lattice import Lattice
from .matrix import Mat
from .pollat import PolarizedLattice

SCHEMA = "ppav-lattice/1"

__all__ = [
    "SCHEMA",
    "frac_to_str",
    "frac_from_str",
    "mat_to_obj",
    "mat_from_obj",
    "lattice_to_obj",
    "lattice_from_obj",
    "polarized_to_obj",
    "polarized_from_obj",
    "cover_to_obj",
    "cover_from_obj",
    "welters_report",
    "dumps_canonical",
]


def frac_to_str(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def frac_from_str(s):
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return int(s)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"malformed exact number {s!r}")


def mat_to_obj(M):
    return {"rows": [[frac_to_str(x) for x in row] for row in M.rows], "ncols": M.ncols}


def mat_from_obj(obj):
    try:
        return Mat([[frac_from_str(x) for x in row] for row in obj["rows"]], ncols=obj["ncols"])
    except (KeyError, TypeError):
        raise DomainError("malformed matrix object")


def lattice_to_obj(L):
    return {
        "ambient_dim": L.ambient_dim,
        "basis": [[frac_to_str(x) for x in L.basis.col(j)] for j in range(L.rank)],
    }


def lattice_from_obj(obj):
    try:
        dim = obj["ambient_dim"]
        cols = [[frac_from_str(x) for x in col] for col in obj["basis"]]
    except (KeyError, TypeError):
        raise DomainError("malformed lattice object")
    return Lattice(dim, Mat.from_columns(cols, nrows=dim))


def polarized_to_obj(P):
    return {
        "ambient_dim": P.ambient_dim,
        "basis": lattice_to_obj(P.lattice)["basis"],
        "form": [[frac_to_str(x) for x in row] for row in P.form.rows],
    }


def polarized_from_obj(obj):
    try:
        dim = obj["ambient_dim"]
        cols = [[frac_from_str(x) for x in col] for col in obj["basis"]]
        form = Mat([[frac_from_str(x) for x in row] for row in obj["form"]], ncols=dim)
    except (KeyError, TypeError):
        raise DomainError("malformed polarized lattice object")
    return PolarizedLattice(Lattice(dim, Mat.from_columns(cols, nrows=dim)), form)


def cover_to_obj(cov):
    """The full cover fixture: combinatorial input plus all derived matrices."""
    return {
        "schema": SCHEMA,
        "kind": "cover-fixture",
        "g": cov.g,
        "m": cov.m,
        "base_rotations": [list(rot) for rot in cov.base_graph.rotations],
        "n_edges": cov.base_graph.n_edges,
        "voltages": list(cov.voltages.values),
        "base": polarized_to_obj(cov.base),
        "total": polarized_to_obj(cov.total),
        "sigma": mat_to_obj(cov.sigma.matrix),
        "pushforward": mat_to_obj(cov.pushforward.matrix),
        "transfer": mat_to_obj(cov.transfer.matrix),
    }


def cover_from_obj(obj):
    """Rebuild a cover from its fixture and cross-check the stored matrices."""
    try:
        if obj.get("kind") != "cover-fixture":
            raise DomainError("not a cover fixture")
        R = RibbonGraph(obj["n_edges"], [tuple(r) for r in obj["base_rotations"]])
        volts = VoltageAssignment(obj["m"], obj["voltages"])
        m = obj["m"]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed cover fixture: {exc}")
    cov = cyclic_cover(R, volts, m)
    for key, matrix in [
        ("sigma", cov.sigma.matrix),
        ("pushforward", cov.pushforward.matrix),
        ("transfer", cov.transfer.matrix),
    ]:
        if mat_from_obj(obj[key]) != matrix:
            raise DomainError(f"fixture matrix {key!r} disagrees with the rebuilt cover")
    if polarized_from_obj(obj["total"]) != cov.total:
        raise DomainError("fixture total lattice disagrees with the rebuilt cover")
    if polarized_from_obj(obj["base"]) != cov.base:
        raise DomainError("fixture base lattice disagrees with the rebuilt cover")
    return cov


def welters_report(out):
    """The full certification report of a WeltersOutput, JSON-ready.

    Serializes the inputs (ambient lattice, B, K), each asserted identity
    with its pass/fail flag, and the polarization types at every stage.
    """
    from .pollat import polarization_type

    pair = out.pair
    return {
        "schema": SCHEMA,
        "kind": "welters-certificate",
        "m": out.m,
        "inputs": {
            "ambient": polarized_to_obj(pair.ambient),
            "sub_B": lattice_to_obj(pair.sub_B),
            "K": lattice_to_obj(out.K.upper),
        },
        "identities": {name: bool(ok) for name, ok in out.certificate.items()},
        "types": {
            "ambient": [str(d) for d in polarization_type(pair.ambient)],
            "restricted_to_B": [
                str(d) for d in polarization_type(pair.restricted(pair.sub_B))
            ],
            "restricted_to_A": [
                str(d)
                for d in (
                    polarization_type(pair.restricted(pair.sub_A))
                    if pair.sub_A.rank
                    else ()
                )
            ],
            "X": [str(d) for d in polarization_type(out.X)],
        },
        "orders": {
            "A∩B": str(pair.intersection.order),
            "K": str(out.K.order),
        },
        "maps": {
            "u": mat_to_obj(out.u.matrix),
            "u_t": mat_to_obj(out.u_t.matrix),
            "j": mat_to_obj(out.j.matrix),
        },
    }


def dumps_canonical(obj):
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
