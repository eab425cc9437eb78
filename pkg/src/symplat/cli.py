"""Command-line front end: constructions, censuses, certifications.

Four subcommands::

    symplat quotient --g 2 --m 2 --mode all     # isogeny-quotient census
    symplat cover    --g 2 --m 3 --out fix.json # cover certification + fixture
    symplat welters  fix.json --K 1:0           # Welters run on a fixture
    symplat dims     --g 5 --m 2 --r 0          # dimension table

Reports are canonical JSON on stdout (byte-identical across runs); ``--out``
additionally writes the payload to a file.  Exit codes: 0 success, 1
certification failure, 2 enumeration budget exceeded, 3 input validation.
"""

import argparse
import sys

from .comppair import welters_construct
from .covers import (
    birational_predicate,
    classify_mti_K,
    eta_class,
    ker_mu_basis,
    norm_component_group,
    prym_sublattice,
    standard_cover,
    verify_kernel_identification,
)
from .errors import BudgetError, CertificationError, DomainError, SymplatError
from .finquot import DEFAULT_BUDGET, enumerate_mti
from .jsonio import (
    SCHEMA,
    cover_from_obj,
    cover_to_obj,
    dumps_canonical,
    lattice_to_obj,
    welters_report,
)
from .moduli import locus_dimensions
from .pollat import (
    polarization_type,
    principal_quotient,
    standard_principal,
    torsion_subgroup,
)

EXIT_OK = 0
EXIT_CERTIFICATION = 1
EXIT_BUDGET = 2
EXIT_VALIDATION = 3


class _Parser(argparse.ArgumentParser):
    """argparse that signals validation problems instead of exiting with 2."""

    def error(self, message):
        raise DomainError(message)


def build_parser():
    parser = _Parser(prog="symplat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quotient", help="census of quotients by maximal isotropic torsion")
    q.add_argument("--g", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--mode", choices=("one", "all"), default="all")
    q.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    c = sub.add_parser("cover", help="build and certify the standard cyclic cover")
    c.add_argument("--g", type=int, required=True)
    c.add_argument("--m", type=int, required=True)

    w = sub.add_parser("welters", help="run the Welters construction on a cover fixture")
    w.add_argument("fixture", help="path to a cover fixture JSON file")
    w.add_argument("--K", default="1:0", help="label a:b of the isotropic subgroup")

    d = sub.add_parser("dims", help="dimension table for the moduli loci")
    d.add_argument("--g", type=int, required=True)
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--r", type=int, default=0)

    for p in (q, c, w, d):
        p.add_argument("--out", default=None, help="also write the payload to this file")
        p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def cmd_quotient(g, m, mode="all", budget=DEFAULT_BUDGET):
    if g < 1 or m < 1:
        raise DomainError("quotient census needs g >= 1 and m >= 1")
    P = standard_principal(g)
    tors, pairing = torsion_subgroup(P, m)
    subgroups = enumerate_mti(tors, pairing, budget=budget)
    if mode == "one":
        subgroups = subgroups[:1]
    entries = []
    for K in subgroups:
        X = principal_quotient(P, K, m)
        entries.append(
            {
                "K_basis": lattice_to_obj(K.upper)["basis"],
                "K_order": str(K.order),
                "type": [str(d) for d in polarization_type(X)],
                "principal": polarization_type(X).is_principal,
            }
        )
    return {
        "schema": SCHEMA,
        "command": "quotient",
        "g": g,
        "m": m,
        "mode": mode,
        "count": len(entries),
        "quotients": entries,
    }


def cmd_cover(g, m):
    if g < 1 or m < 1:
        raise DomainError("cover needs g >= 1 and m >= 1")
    cov = standard_cover(g, m)
    cert = {
        "cover_genus": cov.cover_genus,
        "identities": {
            "genus = mg-m+1": True,
            "sigma symplectic": True,
            "sigma^m = 1": True,
            "pushforward∘transfer = m": True,
            "transfer∘pushforward = sum of deck powers": True,
            "transfer multiplies the form by m": True,
        },
    }
    if m >= 2:
        group, _ = norm_component_group(cov)
        eta = eta_class(cov)
        xi_bar, P1, checks = ker_mu_basis(cov)
        labeled = classify_mti_K(cov)
        cert["component_group_order"] = str(group.order)
        cert["ker_transfer_order"] = str(eta.order())
        cert["ker_mu_invariants"] = [str(d) for d in _ker_mu_invs(cov)]
        cert["ker_mu_basis_checks"] = checks
        cert["subgroups"] = []
        for (a, b), K in labeled:
            ok, order = verify_kernel_identification(cov, K)
            cert["subgroups"].append(
                {
                    "label": f"{a}:{b}",
                    "birational": birational_predicate(K, P1),
                    "kernel_identification": ok,
                    "identified_order": str(order),
                }
            )
    else:
        cert["degenerate"] = True
    return {
        "schema": SCHEMA,
        "command": "cover",
        "g": g,
        "m": m,
        "fixture": cover_to_obj(cov),
        "certificate": cert,
    }


def _ker_mu_invs(cov):
    from .covers import _ker_mu_data

    Q, _, _ = _ker_mu_data(cov)
    return Q.invariants


def cmd_welters(fixture_path, K_label="1:0"):
    import json

    try:
        with open(fixture_path) as fh:
            payload = json.load(fh)
    except (OSError, ValueError) as exc:
        raise DomainError(f"cannot read fixture: {exc}")
    obj = payload.get("fixture", payload) if isinstance(payload, dict) else None
    if obj is None:
        raise DomainError("fixture file does not contain an object")
    cov = cover_from_obj(obj)
    label = _parse_label(K_label, cov.m)
    labeled = dict(classify_mti_K(cov))
    if label not in labeled:
        raise DomainError(
            f"no subgroup labeled {label}; available: {sorted(labeled)}"
        )
    K = labeled[label]
    _, sub_B = prym_sublattice(cov)
    out = welters_construct(cov.total, sub_B, K, cov.m)
    _, P1, _ = ker_mu_basis(cov)
    return {
        "schema": SCHEMA,
        "command": "welters",
        "g": cov.g,
        "m": cov.m,
        "K_label": f"{label[0]}:{label[1]}",
        "birational": birational_predicate(K, P1),
        "X_dim": out.X.dim,
        "X_type": [str(d) for d in polarization_type(out.X)],
        "certificate": welters_report(out),
    }


def _parse_label(text, m):
    raw = text.strip().lstrip("(").rstrip(")")
    parts = raw.split(":")
    if len(parts) != 2:
        raise DomainError(f"malformed K label {text!r}; expected a:b")
    try:
        a, b = (int(p) % m for p in parts)
    except ValueError:
        raise DomainError(f"malformed K label {text!r}; expected integers a:b")
    return (a, b)


def cmd_dims(g, m, r=0):
    report = locus_dimensions(g, m, r)
    payload = {"schema": SCHEMA, "command": "dims"}
    payload.update(
        {
            k: (v if isinstance(v, int) or v is None else v)
            for k, v in report.to_json_obj().items()
        }
    )
    return payload


def _render_text(payload):
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k in sorted(value):
                walk(prefix + (str(k),), value[k])
        elif isinstance(value, list):
            lines.append(f"{'.'.join(prefix)} = [{len(value)} entries]")
        else:
            lines.append(f"{'.'.join(prefix)} = {value}")

    walk((), payload)
    return "\n".join(lines) + "\n"


def run(argv=None):
    """Parse arguments, run the command, return (exit_code, output_text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "quotient":
            payload = cmd_quotient(args.g, args.m, args.mode, args.budget)
        elif args.command == "cover":
            payload = cmd_cover(args.g, args.m)
        elif args.command == "welters":
            payload = cmd_welters(args.fixture, args.K)
        else:
            payload = cmd_dims(args.g, args.m, args.r)
        text = dumps_canonical(payload) if args.format == "json" else _render_text(payload)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(dumps_canonical(payload))
        return EXIT_OK, text
    except BudgetError as exc:
        return EXIT_BUDGET, f"budget error: {exc}\n"
    except CertificationError as exc:
        return EXIT_CERTIFICATION, f"certification failure: {exc}\n"
    except (DomainError, SymplatError) as exc:
        return EXIT_VALIDATION, f"invalid input: {exc}\n"


def main(argv=None):
    code, text = run(argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
