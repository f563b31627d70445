"""Command-line interface wiring all modules with machine-readable output.

Subcommands: verify, derive, higgs, spectrum, oracle, oscillator, figure,
conjecture-check.  Every JSON document carries {schema_version, command,
inputs, results} and is byte-deterministic for identical inputs; rationals
are emitted as exact strings, floats with 17 significant digits.  Exact
coefficients are given as strings like "2i", "-1", "3/7i", "1+2i"; decimal
literals are parsed as floats and routed only to numeric-mode commands.
QZERNIKE_THREADS > 1 parallelizes embarrassingly parallel loops without
changing output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import sympy as sp

from . import SCHEMA_VERSION
from .higgs import (
    build_k_triple,
    build_ladder,
    ladder_commutator_polynomial,
    structure_function,
    verify_conjecture1,
)
from .oracle import build_matrix, oracle_spectrum, type_I_energy_exact
from .oscillators import (
    FIGURES,
    NoBoundStatesError,
    OscillatorSpec,
    energy_levels,
    figure_data,
    map_params,
    n_max,
    perturbation_class,
    phi_positivity,
)
from .scalars import GaussianRational
from .spectrum import (
    filter_well_defined,
    solve_constraints,
    spectrum_table,
    verify_conjecture2_identities,
)
from .symmetries import (
    HamiltonianSpec,
    build_angular_momentum,
    build_hamiltonian,
    check_dependence_relation,
    paper_symmetries,
    solve_symmetry_ansatz,
)
from .weyl import commutator

__all__ = ["main", "report_schema_version", "parse_exact_gamma", "parse_number"]


def report_schema_version() -> str:
    return SCHEMA_VERSION


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QZERNIKE_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    t = _threads()
    if t <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=t) as pool:
        return list(pool.map(fn, items))


def parse_exact_gamma(text: str) -> GaussianRational:
    """Parse exact coefficient strings: '2i', '-1', '3/7i', '1+2i', '-i'."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty coefficient")
    if not t.endswith("i"):
        return GaussianRational(Fraction(t), 0)
    body = t[:-1]
    re_part = Fraction(0)
    im_text = body
    for idx in range(len(body) - 1, 0, -1):  # interior sign splits re/im
        if body[idx] in "+-":
            re_part = Fraction(body[:idx])
            im_text = body[idx:]
            break
    if im_text in ("", "+"):
        im_part = Fraction(1)
    elif im_text == "-":
        im_part = Fraction(-1)
    else:
        im_part = Fraction(im_text)
    return GaussianRational(re_part, im_part)


def _is_decimal(text: str) -> bool:
    return any(ch in text for ch in ".eE") and not text.strip().endswith("i") or (
        "." in text
    )


def parse_number(text: str):
    """Fraction for exact literals, float for decimals."""
    t = text.strip()
    if "." in t or "e" in t or "E" in t:
        return float(t)
    return Fraction(t)


def parse_gammas(text: str, exact_required: bool):
    """Comma-separated coefficient list; exact strings or decimals."""
    out = []
    any_float = False
    for part in text.split(","):
        p = part.strip()
        if "." in p or "e" in p.replace("i", "") or "E" in p:
            any_float = True
            if p.endswith("i"):
                out.append(complex(0, float(p[:-1] or "1")))
            else:
                out.append(complex(float(p), 0))
        else:
            out.append(parse_exact_gamma(p))
    if any_float and exact_required:
        raise ValueError("this command needs exact coefficients, not decimals")
    if any_float:
        out = [complex(g) if isinstance(g, GaussianRational) else g for g in out]
    return out


def parse_range(text: str) -> list[int]:
    t = text.strip()
    if ".." in t:
        a, b = t.split("..")
        return list(range(int(a), int(b) + 1))
    return [int(t)]


def _j(value):
    """JSON-encodable form with exact strings and round-trip floats."""
    if isinstance(value, GaussianRational):
        return str(value)
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else str(value.numerator)
    if isinstance(value, float):
        return float(format(value, ".17g"))
    if isinstance(value, complex):
        return {"re": float(format(value.real, ".17g")), "im": float(format(value.imag, ".17g"))}
    if isinstance(value, sp.Expr):
        return sp.sstr(value)
    if isinstance(value, dict):
        return {str(k): _j(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_j(v) for v in value]
    return value


def _emit(doc: dict, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _document(command: str, inputs: dict, results: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": _j(inputs),
        "results": _j(results),
    }


def _spec_from(N: int, gammas) -> HamiltonianSpec:
    if gammas is None:
        return HamiltonianSpec.symbolic(N)
    return HamiltonianSpec.numeric(gammas)


# ---- subcommands ----
def _cmd_verify(args) -> tuple[dict, int]:
    gammas = parse_gammas(args.gammas, exact_required=True) if args.gammas else None
    pair = paper_symmetries(args.N, gammas)
    H = build_hamiltonian(HamiltonianSpec(args.N, pair.params))
    C = build_angular_momentum()
    rI, rIp = pair.commutator_residuals()
    rC = commutator(C, H)
    dep = check_dependence_relation(args.N, pair)
    results = {
        "commutator_I_zero": rI.is_zero(),
        "commutator_Iprime_zero": rIp.is_zero(),
        "commutator_C_zero": rC.is_zero(),
        "dependence_residual_zero": dep.is_zero(),
    }
    ok = all(results.values())
    results["all_checks_passed"] = ok
    return (
        _document("verify", {"N": args.N, "gammas": args.gammas}, results),
        0 if ok else 1,
    )


def _cmd_derive(args) -> tuple[dict, int]:
    gammas = parse_gammas(args.gammas, exact_required=True) if args.gammas else None
    spec = _spec_from(args.N, gammas)
    space = solve_symmetry_ansatz(spec, leading=args.leading)
    results = {
        "leading": space.leading,
        "rank": space.rank,
        "kernel_dim": space.kernel_dim,
        "particular": {
            "I": str(space.particular.I),
            "Iprime": str(space.particular.Iprime),
        },
        "homogeneous_basis": [str(op) for op in space.homogeneous_basis],
    }
    return _document("derive", {"N": args.N, "gammas": args.gammas, "leading": args.leading}, results), 0


def _cmd_higgs(args) -> tuple[dict, int]:
    gammas = parse_gammas(args.gammas, exact_required=True) if args.gammas else None
    pair = paper_symmetries(args.N, gammas)
    triple = build_k_triple(pair)
    ladder = build_ladder(args.N, triple)
    sf = structure_function(args.N, ladder)
    if args.emit == "phi":
        results = {
            "phi1": [[h, k, str(c)] for (h, k), c in sf.phi1.sorted_items()],
            "phi2": [[h, k, str(c)] for (h, k), c in sf.phi2.sorted_items()],
        }
    else:
        diff = ladder_commutator_polynomial(sf)
        results = {
            "k_triple": {
                "K1": str(triple.k1),
                "K2": str(triple.k2),
                "K3": str(triple.k3),
            },
            "ladder_commutator_hk": [[h, k, str(c)] for (h, k), c in diff.sorted_items()],
            "algebra_order": diff.degree_k(),
        }
    return _document("higgs", {"N": args.N, "emit": args.emit, "gammas": args.gammas}, results), 0


def _cmd_spectrum(args) -> tuple[dict, int]:
    inputs = {
        "N": args.N,
        "gammas": args.gammas,
        "n": args.n,
        "symbolic": args.symbolic,
        "vanish_set": args.vanish_set,
    }
    vanish = (
        {int(v) for v in args.vanish_set.split(",")} if args.vanish_set else None
    )
    if args.symbolic:
        gammas = (
            parse_gammas(args.gammas, exact_required=True) if args.gammas else None
        )
        sols = solve_constraints(args.N, gammas, mode="symbolic")
        if vanish is not None or args.filter:
            sols = filter_well_defined(sols, vanish)
        sol_docs = []
        for s in sols:
            doc = {
                "type": s.type_label,
                "branch": list(s.branch),
                "u": sp.sstr(s.u_of_n) if s.u_of_n is not None else None,
                "E": sp.sstr(s.E_of_n) if s.E_of_n is not None else None,
                "limit_valid": {str(k): v for k, v in s.limit_valid.items()},
            }
            if s.phi_factors is not None:
                doc["phi_factors"] = [sp.sstr(f) for f in s.phi_factors]
            if s.is_descriptor():
                doc["root_poly_ascending"] = [sp.sstr(c) for c in s.root_poly]
            sol_docs.append(doc)
        tables = []
        if gammas is not None and args.n:
            ns = parse_range(args.n)
            for s in sols:
                if s.type_label in ("I", "II", "III", "IV"):
                    tab = spectrum_table(s, gammas, ns)
                    tables.append(
                        {
                            "type": s.type_label,
                            "rows": [
                                {
                                    "n": r["n"],
                                    "E": sp.sstr(sp.nsimplify(r["E"])),
                                    "unitary": r["unitary"],
                                }
                                for r in tab.rows
                            ],
                        }
                    )
        results = {"mode": "symbolic", "solutions": sol_docs, "tables": tables}
    else:
        if not args.gammas or not args.n:
            raise ValueError("numeric mode needs --gammas and --n")
        gammas = parse_gammas(args.gammas, exact_required=False)
        ns = parse_range(args.n)

        def solve_one(nv):
            sols = solve_constraints(args.N, gammas, n=nv, mode="numeric")
            return [
                {
                    "n": nv,
                    "type": s.type_label,
                    "branch": list(s.branch),
                    "u": _j(s.u_value),
                    "E": _j(s.E_value),
                    "newton_correction": _j(s.newton_correction),
                }
                for s in sols
            ]

        per_n = _pmap(solve_one, ns)
        sol_docs = [d for docs in per_n for d in docs]
        results = {"mode": "numeric", "solutions": sol_docs, "tables": []}
    doc = _document("spectrum", inputs, results)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "E", "unitary"])
        if args.symbolic:
            for tab in results["tables"]:
                for row in tab["rows"]:
                    writer.writerow([row["n"], row["E"], row["unitary"]])
        else:
            for s in results["solutions"]:
                writer.writerow([s["n"], s["E"], ""])
        return {"csv": buf.getvalue(), "doc": doc}, 0
    return doc, 0


def _cmd_oracle(args) -> tuple[dict, int]:
    gammas = parse_gammas(args.gammas, exact_required=True)
    spec = HamiltonianSpec.numeric(gammas)
    M = build_matrix(spec, args.max_degree)
    report = oracle_spectrum(M, eigenvectors=args.eigenvectors)
    rows = []
    matches = True
    for row in report.rows:
        expected = type_I_energy_exact(gammas, row["degree"])
        match = expected == row["eigenvalue"]
        matches = matches and match
        doc = {
            "degree": row["degree"],
            "eigenvalue": str(row["eigenvalue"]),
            "multiplicity": row["multiplicity"],
            "resonant": row["resonant"],
            "matches_type_I_formula": match,
        }
        if args.eigenvectors and "eigenvectors" in row:
            doc["eigenvectors"] = [
                [[list(mono), str(c)] for mono, c in vec] for vec in row["eigenvectors"]
            ]
        rows.append(doc)
    results = {"rows": rows, "all_match_type_I": matches}
    return (
        _document(
            "oracle",
            {"N": args.N, "gammas": args.gammas, "max_degree": args.max_degree},
            results,
        ),
        0 if matches else 1,
    )


def _parse_phys(text: str):
    return parse_number(text)


def _cmd_oscillator(args) -> tuple[dict, int]:
    spec = OscillatorSpec(
        kappa=_parse_phys(args.kappa),
        beta=_parse_phys(args.beta),
        mu=_parse_phys(args.mu),
        nu=_parse_phys(args.nu),
    )
    inputs = {"kappa": args.kappa, "beta": args.beta, "mu": args.mu, "nu": args.nu, "n": args.n}
    ns = parse_range(args.n)
    try:
        nm = n_max(spec)
    except NoBoundStatesError as exc:
        return (
            _document("oscillator", inputs, {"error": str(exc), "no_bound_states": True}),
            1,
        )
    table = energy_levels(spec, ns)
    results = {
        "gammas": [str(g) if isinstance(g, GaussianRational) else _j(g) for g in map_params(spec)],
        "n_max": "unbounded" if nm is None else nm,
        "perturbation_class": perturbation_class(spec),
        "levels": [
            {"n": r["n"], "E": _j(r["E"]), "dE": _j(r["dE"]), "bound": r["bound"]}
            for r in table.rows
        ],
    }
    if nm is not None:
        pos = phi_positivity(spec, nm)
        results["phi_positive_up_to_n_max"] = pos["ok"]
    doc = _document("oscillator", inputs, results)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "E", "dE", "bound"])
        for r in results["levels"]:
            writer.writerow([r["n"], r["E"], r["dE"], r["bound"]])
        return {"csv": buf.getvalue(), "doc": doc}, 0
    return doc, 0


def _cmd_figure(args) -> tuple[dict, int]:
    rows = figure_data(args.id)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["series", "n", "E"])
    for series, nv, E in rows:
        writer.writerow([series, nv, _j(E) if isinstance(E, float) else str(E)])
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        return (
            _document(
                "figure",
                {"id": args.id, "out": args.out},
                {"rows": len(rows), "description": FIGURES[args.id]["description"]},
            ),
            0,
        )
    return {"csv": text, "doc": None}, 0


def _cmd_conjecture_check(args) -> tuple[dict, int]:
    rep = verify_conjecture1(args.N)
    c2 = verify_conjecture2_identities(args.N)
    sols = solve_constraints(args.N, mode="symbolic")
    # "hold for any values of the coefficients": every parameter may vanish
    kept = filter_well_defined(sols, set(range(1, args.N + 1)))
    labels = sorted(s.type_label for s in kept)
    results = {
        "conjecture1": {
            "commutators_zero": rep.commutators_zero,
            "algebraically_independent": rep.independent,
            "ladder_relations": rep.ladder_relations,
            "factorization_exact": rep.factorization_exact,
            "updown_consistent": rep.updown_consistent,
            "measured_algebra_order": rep.measured_algebra_order,
            "expected_algebra_order": 2 * args.N - 1,
        },
        "conjecture2": {
            "constraint_identities": c2,
            "surviving_types": labels,
        },
    }
    ok = (
        rep.ok
        and c2
        and labels == ["I", "II"]
        and rep.measured_algebra_order == 2 * args.N - 1
    )
    results["all_checks_passed"] = ok
    return _document("conjecture-check", {"N": args.N}, results), 0 if ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qzernike",
        description="Exact symmetries and algebraic spectra of generalized quantum Zernike Hamiltonians",
    )
    parser.add_argument("--out", help="write the JSON/CSV document to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check symmetry commutators and dependence relations")
    p.add_argument("--N", type=int, required=True, choices=(2, 3, 4, 5))
    p.add_argument("--gammas", help="comma-separated exact coefficients (default symbolic)")

    p = sub.add_parser("derive", help="derive symmetries from the grade-zero ansatz")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--gammas")
    p.add_argument("--leading", choices=("p1", "p2"), default="p2")

    p = sub.add_parser("higgs", help="polynomial algebra relations and structure function")
    p.add_argument("--N", type=int, required=True, choices=(2, 3, 4, 5))
    p.add_argument("--gammas")
    p.add_argument("--emit", choices=("relations", "phi"), default="relations")

    p = sub.add_parser("spectrum", help="solve the representation constraints")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--gammas")
    p.add_argument("--n")
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--filter", action="store_true", help="apply the vanish-limit filter")
    p.add_argument("--vanish-set", help="comma-separated k with g_k -> 0 (implies --filter)")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("oracle", help="exact graded-matrix spectrum")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--gammas", required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--eigenvectors", action="store_true")

    p = sub.add_parser("oscillator", help="curved/perturbed oscillator levels")
    p.add_argument("--kappa", default="0")
    p.add_argument("--beta", default="-2")
    p.add_argument("--mu", default="0")
    p.add_argument("--nu", default="0")
    p.add_argument("--n", required=True, help="range a..b or single n")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("figure", help="emit plotted values of figures 1..5 as CSV")
    p.add_argument("--id", type=int, required=True, choices=(1, 2, 3, 4, 5))

    p = sub.add_parser("conjecture-check", help="verify both conjectures at order N")
    p.add_argument("--N", type=int, required=True, choices=(2, 3, 4, 5))
    return parser


_HANDLERS = {
    "verify": _cmd_verify,
    "derive": _cmd_derive,
    "higgs": _cmd_higgs,
    "spectrum": _cmd_spectrum,
    "oracle": _cmd_oracle,
    "oscillator": _cmd_oscillator,
    "figure": _cmd_figure,
    "conjecture-check": _cmd_conjecture_check,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        result, code = _HANDLERS[args.command](args)
    except Exception as exc:  # structured error document, nonzero exit
        _emit(
            {
                "schema_version": SCHEMA_VERSION,
                "command": args.command,
                "error": {"type": type(exc).__name__, "message": str(exc)},
            },
            args.out,
        )
        return 1
    if isinstance(result, dict) and "csv" in result:
        if args.out:
            with open(args.out, "w", newline="") as fh:
                fh.write(result["csv"])
        else:
            sys.stdout.write(result["csv"])
        return code
    _emit(result, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
