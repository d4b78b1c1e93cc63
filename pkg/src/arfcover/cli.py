"""Command-line entry point: ``arfcover <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Sequence

from . import congruence as cg
from . import fox
from .covering import QuadraticSection, SpecialCovering, omega_of, orbits
from .gf2 import BitMatrix
from .quadform import arf
from .report import ReportDocument, Verdict
from .stabilizers import cover_witness, sp_generators, sp_subgroup
from .symplectic import MAX_ENUMERATION_GENUS, classical_order, group_closure, standard_generators
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _genus(g: int) -> int:
    if not 1 <= g <= MAX_ENUMERATION_GENUS:
        raise InputError(f"genus must be between 1 and {MAX_ENUMERATION_GENUS}, got {g}")
    return g


def _section(args, g: int) -> QuadraticSection:
    if args.johnson:
        return QuadraticSection.johnson(g)
    if args.section is None:
        return QuadraticSection.zero(g)
    s = QuadraticSection.from_bits(args.section)
    if s.g != g:
        raise InputError(f"section needs {2 * g} bits, got {len(args.section)}")
    return s


def _covering(bits: str, q: int, g: int | None) -> SpecialCovering:
    if not bits or set(bits) - {"0", "1"}:
        raise InputError(f"covering must be a string of 0/1 bits, got {bits!r}")
    phi = SpecialCovering.from_bits(bits, q)
    if g is not None and phi.g != g:
        raise InputError(f"covering needs {2 * g} bits for g={g}, got {len(bits)}")
    return phi


def _matrix_rows(m) -> list[list[str]]:
    if isinstance(m, BitMatrix):
        return [[str(x) for x in row] for row in m.to_lists()]
    return [[str(x) for x in row] for row in m.to_entries()]


# --- commands -----------------------------------------------------------------


def cmd_orbits(args, doc: ReportDocument) -> None:
    g = _genus(args.genus)
    s = _section(args, g)
    doc.parameters.update(g=g, q=args.chern, section=str(s))
    part = orbits(g, args.chern, s)
    doc.results["orbits"] = {
        f"arf{k}": {"size": len(cls), "coverings": [str(p) for p in cls]}
        for k, cls in ((0, part.arf0), (1, part.arf1))
    }
    doc.results["cross_checked_by_action"] = g <= 2
    expected = (2 ** (g - 1) * (2**g + 1), 2 ** (g - 1) * (2**g - 1))
    bad = None if part.sizes == expected else {"sizes": list(part.sizes), "expected": list(expected)}
    doc.verdicts.append(Verdict.of("two orbits of sizes 2^(g-1)(2^g+1), 2^(g-1)(2^g-1)", bad))


def cmd_fox(args, doc: ReportDocument) -> None:
    phi = _covering(args.covering, args.chern, args.genus)
    _genus(phi.g)
    kind = args.kind or "integral"
    doc.parameters.update(g=phi.g, q=phi.q, covering=str(phi), kind=kind)
    if kind == "integral":
        doc.results["matrix"] = _matrix_rows_z(fox.derived_matrix(phi))
    elif kind == "mod2":
        doc.results["matrix"] = _matrix_rows(fox.derived_matrix_mod2(phi))
    else:
        doc.results["matrix"] = _matrix_rows(fox.vq_normal_form(phi))
        ms = fox.module_structure(phi)
        doc.results["module"] = {"integral": ms.integral_str(), "mod2": ms.mod2_str()}


def _matrix_rows_z(m: fox.DerivedMatrixZ) -> list[list[str]]:
    k = m.size
    return [[str(m.entry(i, j)) for j in range(1, k + 1)] for i in range(1, k + 1)]


def cmd_congruent(args, doc: ReportDocument) -> None:
    phi = _covering(args.phi, args.chern, args.genus)
    phi2 = _covering(args.phi2, args.chern, phi.g)
    g = _genus(phi.g)
    s = _section(args, g)
    doc.parameters.update(g=g, q=phi.q, section=str(s), phi=str(phi), phi2=str(phi2))
    w = cg.congruent(phi, phi2, s)
    arfs = [arf(omega_of(phi, s)), arf(omega_of(phi2, s))]
    doc.results["arf"] = arfs
    doc.results["congruent"] = w is not None
    if w is not None:
        doc.results["witness"] = {
            "a": _matrix_rows(w.a),
            "psi": _matrix_rows(w.psi_matrix),
            "theta": _matrix_rows(w.theta_matrix),
        }
        ok = cg.diagram_commutes(w.a, w.theta_matrix, phi, phi2, s)
        doc.results["derived_matrices"] = {"M": _matrix_rows(fox.derived_matrix_mod2(phi)),
                                           "M'": _matrix_rows(fox.derived_matrix_mod2(phi2))}
        doc.verdicts.append(Verdict.of("psi M = M' theta by multiplication", None if ok else {"a": w.a.to_str()}))


def cmd_sp(args, doc: ReportDocument) -> None:
    g = _genus(args.genus)
    doc.parameters.update(g=g)
    group = group_closure(standard_generators(g), n=2 * g, parallel=args.parallel)
    doc.results["Sp"] = {"order": len(group), "classical_order": classical_order(g),
                         "generators": [m.to_str() for m in standard_generators(g)]}
    for which in (0, 1):
        sub = sp_subgroup(which, g, parallel=args.parallel)
        doc.results[f"Sp{which}"] = {"order": len(sub), "generators": [m.to_str() for m in sp_generators(which, g)]}
    bad = None if len(group) == classical_order(g) else {"closure": len(group)}
    doc.verdicts.append(Verdict.of("closure order equals the classical formula", bad))


def cmd_witness(args, doc: ReportDocument) -> None:
    bits = args.matrix
    if not bits or set(bits) - {"0", "1"}:
        raise InputError(f"matrix must be a string of 0/1 bits, got {bits!r}")
    n = round(len(bits) ** 0.5)
    if n * n != len(bits) or n % 2:
        raise InputError(f"need (2g)^2 bits, got {len(bits)}")
    if args.genus is not None and n != 2 * args.genus:
        raise InputError(f"g={args.genus} needs {(2 * args.genus) ** 2} bits")
    a = BitMatrix.from_str(bits, n, n)
    doc.parameters.update(g=n // 2, matrix=bits)
    w = cover_witness(a)
    doc.results["witness"] = {"which": w.which, "y": str(w.y), "fixed_form": str(w.fixed_form),
                              "conjugate": w.conjugate.to_str()}
    doc.verdicts.append(Verdict.of("T_y a T_y fixes the reference form", None))


def _genus_range(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = (int(x) for x in text.split("..", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"bad genus range {text!r}; use N or LO..HI") from None
    if lo > hi:
        raise InputError(f"empty genus range {text!r}")
    return [_genus(g) for g in range(lo, hi + 1)]


def cmd_verify(args, doc: ReportDocument) -> None:
    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    genera = _genus_range(args.g_range)
    doc.parameters.update(suite=args.suite, g=genera)
    doc.verdicts.extend(run_suite(args.suite, genera))
    first = doc.first_failure()
    if first is not None:
        doc.results["first_counterexample"] = {"verdict": first.name, "counterexample": first.counterexample}


COMMANDS = {
    "orbits": cmd_orbits,
    "fox": cmd_fox,
    "congruent": cmd_congruent,
    "sp": cmd_sp,
    "witness": cmd_witness,
    "verify": cmd_verify,
}


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--parallel", action="store_true", help="threaded group closure (same results)")
    common.add_argument("--timing", action="store_true", help="add wall-clock timing to the document")

    section = argparse.ArgumentParser(add_help=False)
    grp = section.add_mutually_exclusive_group()
    grp.add_argument("--section", metavar="BITS", help="section bits r_1..r_2g (default all zero)")
    grp.add_argument("--johnson", action="store_true", help="all-one section")

    p = argparse.ArgumentParser(prog="arfcover", description="Special 2-fold coverings of circle bundles over surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    o = sub.add_parser("orbits", parents=[common, section], help="orbit census of E(q)")
    o.add_argument("-g", "--genus", type=int, required=True)
    o.add_argument("-q", "--chern", type=int, required=True)

    f = sub.add_parser("fox", parents=[common], help="derived matrix of a covering")
    f.add_argument("covering", help="bits n_1..n_2g")
    f.add_argument("-g", "--genus", type=int)
    f.add_argument("-q", "--chern", type=int, required=True)
    kind = f.add_mutually_exclusive_group()
    for k in ("integral", "mod2", "vq"):
        kind.add_argument(f"--{k}", dest="kind", action="store_const", const=k)

    c = sub.add_parser("congruent", parents=[common, section], help="congruence witness for two coverings")
    c.add_argument("phi")
    c.add_argument("phi2")
    c.add_argument("-g", "--genus", type=int)
    c.add_argument("-q", "--chern", type=int, required=True)

    s = sub.add_parser("sp", parents=[common], help="orders and generators of Sp, Sp_0, Sp_1")
    s.add_argument("-g", "--genus", type=int, required=True)

    w = sub.add_parser("witness", parents=[common], help="conjugacy certificate T_y a T_y in Sp_which")
    w.add_argument("matrix", help="2g x 2g bits, row-major")
    w.add_argument("-g", "--genus", type=int)

    v = sub.add_parser("verify", parents=[common], help="run invariant suites")
    v.add_argument("suite", help=", ".join(list(SUITES) + ["all"]))
    v.add_argument("-g", "--g", "--genus", dest="g_range", default="1..2", metavar="RANGE",
                   help="genus or range LO..HI (default 1..2)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    doc = ReportDocument(command=["arfcover", *argv])
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, doc)
    except (ValueError, ArithmeticError) as exc:
        print(f"arfcover: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        doc.timing = {"total": round(time.perf_counter() - start, 6)}
    sys.stdout.write(doc.to_json() + "\n" if args.format == "json" else doc.to_table())
    return EXIT_OK if doc.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
