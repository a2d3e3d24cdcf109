"""Command-line front end.

    sccheck check SYSTEM.json [--method pbh|kalman|matroid|all] [--partition SPEC]
                              [--json] [--cert-out CERT.json]
                              [--seed N] [--max-bases N] [--max-columns N]
    sccheck compose SYS1.json SYS2.json ... -o OUT.json
    sccheck verify SYSTEM.json CERT.json [--seed N]

Exit status contract (shared by all subcommands):

    0  CONTROLLABLE or CERTIFIED
    1  NOT_CONTROLLABLE (exact tests only; certificate search never says this)
    2  INCONCLUSIVE
    3  input error (bad file, bad expression, bad flags, shape mismatch)

Output is deterministic: fixed default seed, fixed search orders, and every
verdict names the method that produced it, so a CERTIFIED (sufficient)
answer is never conflated with CONTROLLABLE (exact).
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from .checker import (
    RowPartition,
    Status,
    Verdict,
    certificate_failures,
    certificate_search,
    compose_parallel,
    kalman_check,
    pbh_check,
)
from .expr import ParseError, render
from .field import probabilistic_zero_test
from .linalg import DEFAULT_MAX_COLUMNS
from .matroid import DEFAULT_MAX_BASES
from .systemfile import (
    SystemFileError,
    certificate_to_dict,
    load_certificate,
    load_system,
    save_certificate,
    save_system,
)

EXIT_POSITIVE = 0
EXIT_NOT_CONTROLLABLE = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3

_STATUS_EXIT = {
    Status.CONTROLLABLE: EXIT_POSITIVE,
    Status.CERTIFIED: EXIT_POSITIVE,
    Status.NOT_CONTROLLABLE: EXIT_NOT_CONTROLLABLE,
    Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sccheck",
        description="Exact structural-controllability checks for systems over F(z).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run controllability checks on a system file")
    check.add_argument("path", help="system definition (JSON)")
    check.add_argument("--method", choices=["pbh", "kalman", "matroid", "all"],
                       default="all", help="which check(s) to run (default: all)")
    check.add_argument("--partition", metavar="SPEC", default=None,
                       help="row partition for the matroid certificate, 1-based, "
                            "e.g. \"1,2;3,4,5\" (default: singleton rows)")
    check.add_argument("--json", action="store_true", help="emit a JSON report")
    check.add_argument("--cert-out", metavar="PATH", default=None,
                       help="write the found certificate to this file")
    check.add_argument("--seed", type=int, default=0,
                       help="seed for the probabilistic evaluation fast path; "
                            "verdicts never depend on it (default: 0)")
    check.add_argument("--max-bases", type=int, default=DEFAULT_MAX_BASES,
                       help=f"cap on enumerated bases per matroid "
                            f"(default: {DEFAULT_MAX_BASES})")
    check.add_argument("--max-columns", type=int, default=DEFAULT_MAX_COLUMNS,
                       help=f"cap on pencil columns for full minor enumeration "
                            f"(default: {DEFAULT_MAX_COLUMNS})")

    compose = sub.add_parser("compose", help="write the parallel composite of system files")
    compose.add_argument("paths", nargs="+", help="subsystem definitions (JSON)")
    compose.add_argument("-o", "--output", required=True, help="output system file")

    verify = sub.add_parser("verify", help="verify an exported certificate against a system")
    verify.add_argument("system", help="system definition (JSON)")
    verify.add_argument("certificate", help="certificate file (JSON)")
    verify.add_argument("--seed", type=int, default=0,
                        help="seed for the probabilistic witness screen (default: 0)")
    return parser


def _fail(message: str) -> int:
    print(f"error: {message}", file=_sys.stderr)
    return EXIT_INPUT_ERROR


def _overall_exit(verdicts: list[Verdict]) -> int:
    statuses = {v.status for v in verdicts}
    if Status.NOT_CONTROLLABLE in statuses:
        return EXIT_NOT_CONTROLLABLE
    if Status.CONTROLLABLE in statuses or Status.CERTIFIED in statuses:
        return EXIT_POSITIVE
    return EXIT_INCONCLUSIVE


def _verdict_to_dict(v: Verdict) -> dict:
    doc = {"method": v.method, "status": v.status.value, "evidence": v.evidence}
    if v.gcd is not None:
        doc["gcd"] = str(v.gcd)
    if v.certificate is not None:
        doc["certificate"] = certificate_to_dict(v.certificate)
    return doc


def _print_certificate(v: Verdict) -> None:
    cert = v.certificate
    for block, base in zip(cert.partition.blocks, cert.bases):
        rows = ",".join(str(i + 1) for i in block)
        labels = ", ".join(base.labels)
        print(f"  block rows {rows}: base {{{labels}}}, witness {render(base.witness)}")


def cmd_check(args) -> int:
    try:
        system = load_system(args.path)
    except (SystemFileError, ParseError) as e:
        return _fail(str(e))

    partition = None
    if args.partition is not None:
        try:
            partition = RowPartition.from_spec(args.partition, system.n)
        except ValueError as e:
            return _fail(str(e))

    methods = ["pbh", "kalman", "matroid"] if args.method == "all" else [args.method]
    verdicts: list[Verdict] = []
    for method in methods:
        if method == "pbh":
            verdicts.append(pbh_check(system, max_columns=args.max_columns))
        elif method == "kalman":
            verdicts.append(kalman_check(system))
        else:
            verdicts.append(certificate_search(system, partition, max_bases=args.max_bases))

    # Belt and braces on the gcd evidence: the Schwartz-Zippel screen may
    # prove it nonzero fast, but only the exact zero test is trusted.
    for v in verdicts:
        if v.gcd is not None and not probabilistic_zero_test(v.gcd, 1, args.seed):
            assert not v.gcd.is_zero()

    status = _overall_exit(verdicts)

    cert_verdict = next((v for v in verdicts if v.certificate is not None), None)
    if args.cert_out:
        if cert_verdict is None:
            return _fail("no certificate found to export (matroid search did not certify)")
        save_certificate(cert_verdict.certificate, args.cert_out, system.name)

    if args.json:
        report = {
            "system": system.name,
            "n": system.n,
            "m": system.m,
            "results": [_verdict_to_dict(v) for v in verdicts],
            "status": status,
        }
        print(json.dumps(report, indent=2))
    else:
        print(f"system: {system.name} (n={system.n}, m={system.m})")
        for v in verdicts:
            print(str(v))
            if v.certificate is not None:
                _print_certificate(v)
        if args.cert_out and cert_verdict is not None:
            print(f"certificate written to {args.cert_out}")
        print(f"exit status: {status}")
    return status


def cmd_compose(args) -> int:
    try:
        subs = [load_system(p) for p in args.paths]
    except (SystemFileError, ParseError) as e:
        return _fail(str(e))
    try:
        composite = compose_parallel(subs)
    except ValueError as e:
        return _fail(str(e))
    save_system(composite, args.output)
    print(f"wrote composite {composite.name!r} (n={composite.n}, m={composite.m}) "
          f"to {args.output}")
    return EXIT_POSITIVE


def cmd_verify(args) -> int:
    try:
        system = load_system(args.system)
        cert = load_certificate(args.certificate, system.space)
    except (SystemFileError, ParseError) as e:
        return _fail(str(e))

    # Fast nonzero screen of the stored witnesses; the exact checks below
    # decide, and any "probably zero" screen answer defers to them.
    for base in cert.bases:
        probabilistic_zero_test(base.witness.num, 1, args.seed)

    try:
        failures = certificate_failures(system, cert)
    except ValueError as e:
        return _fail(str(e))

    for block, base in zip(cert.partition.blocks, cert.bases):
        rows = ",".join(str(i + 1) for i in block)
        labels = ", ".join(base.labels)
        print(f"block rows {rows}: base {{{labels}}}, witness {render(base.witness)}")
    if not failures:
        print(f"certificate verified against {system.name!r}: "
              f"all witnesses are nonzero, s-free and disjoint")
        return EXIT_POSITIVE
    for failure in failures:
        print(f"FAILED: {failure}")
    return EXIT_NOT_CONTROLLABLE


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors; fold the latter
        # into the documented input-error status.
        return EXIT_POSITIVE if e.code == 0 else EXIT_INPUT_ERROR
    if args.command == "check":
        return cmd_check(args)
    if args.command == "compose":
        return cmd_compose(args)
    return cmd_verify(args)


def main(argv: list[str] | None = None) -> None:
    _sys.exit(run(argv))


if __name__ == "__main__":
    main()
