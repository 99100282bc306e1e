"""Command-line client for the trace/basis service.

By default the service runs in-process (no network); --base-url points the
client at a remote instance instead.  Exit codes: 0 success, 2 usage error,
3 verification mismatch, 4 internal inconsistency.
"""

import argparse
import json
import os
import sys

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3
EXIT_INTERNAL = 4

CLASS_CACHE_ENV = "TWISTMIN_CLASS_CACHE"


def _client(base_url):
    if base_url:
        import httpx

        return httpx.Client(base_url=base_url)
    from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _parser():
    p = argparse.ArgumentParser(
        prog="twistmin",
        description="Exact traces of Hecke operators on twist-minimal, "
                    "newform, and full spaces of cusp forms.")
    p.add_argument("--base-url", default=None,
                   help="remote service URL (default: run in-process)")
    sub = p.add_subparsers(dest="command", required=True)

    def add_space(sp):
        sp.add_argument("--level", type=int, required=True)
        sp.add_argument("--weight", type=int, required=True)
        sp.add_argument("--character", required=True,
                        help="Conrey label, e.g. 11.1")
        sp.add_argument("--kind", choices=["min", "new", "full"],
                        default="min")

    def add_format(sp):
        sp.add_argument("--format", choices=["json", "csv"], default="json")

    sp = sub.add_parser("trace", help="traces of T_1..T_nmax")
    add_space(sp)
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--verify", action="store_true",
                    help="also run the independent path; fail on mismatch")
    add_format(sp)

    sp = sub.add_parser("dim", help="dimension of the space (trace of T_1)")
    add_space(sp)

    sp = sub.add_parser("basis", help="rank-certified q-expansion basis")
    add_space(sp)
    sp.add_argument("--truncation", type=int, default=None,
                    help="number of coefficients (default: Sturm bound)")

    sp = sub.add_parser("newform-coeffs",
                        help="coefficients of the twist of an eigenform")
    add_space(sp)
    sp.add_argument("--psi", required=True,
                    help="Conrey label of a primitive character")
    sp.add_argument("--nmax", type=int, required=True)
    add_format(sp)

    sp = sub.add_parser("class-numbers",
                        help="class numbers of fundamental discriminants")
    sp.add_argument("--min", dest="min_d", type=int, required=True,
                    help="smallest (most negative) discriminant, exclusive")
    sp.add_argument("--cache", default=None,
                    help="cache file path (default: $%s)" % CLASS_CACHE_ENV)

    sp = sub.add_parser("selftest", help="run the built-in check battery")
    sp.add_argument("--max-level", type=int, default=20)
    sp.add_argument("--weights", default="2,3,4",
                    help="comma-separated list of weights")
    sp.add_argument("--nmax", type=int, default=10)
    return p


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _post(client, path, payload):
    resp = client.post(path, json=payload)
    if resp.status_code == 422:
        detail = resp.json().get("detail")
        print("error: %s" % detail, file=sys.stderr)
        raise SystemExit(EXIT_USAGE)
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail")
        except Exception:
            detail = resp.text
        print("error: %s" % detail, file=sys.stderr)
        raise SystemExit(EXIT_INTERNAL)
    return resp.json()


def _space_payload(args):
    return {"level": args.level, "weight": args.weight,
            "character": args.character, "kind": args.kind}


def _csv_records(records, out):
    from .schemas import CycloJSON, pretty
    from .cyclo import CycloNumber
    from fractions import Fraction

    out.write("n,value_pretty,order,coeffs\n")
    for rec in records:
        v = rec["value"]
        num = CycloNumber(v["order"],
                          tuple(Fraction(a, b) for a, b in v["coeffs"]))
        coeffs = ";".join("%d/%d" % (a, b) for a, b in v["coeffs"])
        out.write("%d,%s,%d,%s\n" % (rec["n"], pretty(num), v["order"], coeffs))


def _cmd_trace(client, args):
    data = _post(client, "/trace", {
        "space": _space_payload(args), "nmax": args.nmax,
        "verify": args.verify})
    if args.format == "csv":
        _csv_records(data["records"], sys.stdout)
    else:
        print(_dump(data))
    if args.verify and data.get("verified") is False:
        print("error: dual-path verification failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_dim(client, args):
    data = _post(client, "/dim", {"space": _space_payload(args)})
    print(data["dimension"])
    return EXIT_OK


def _cmd_basis(client, args):
    data = _post(client, "/basis", {
        "space": _space_payload(args), "truncation": args.truncation})
    print(_dump(data))
    return EXIT_OK


def _cmd_newform_coeffs(client, args):
    data = _post(client, "/newform-coeffs", {
        "space": _space_payload(args), "psi": args.psi, "nmax": args.nmax})
    if args.format == "csv":
        _csv_records(data["records"], sys.stdout)
    else:
        print(_dump(data))
    return EXIT_OK


def _cmd_class_numbers(client, args):
    data = _post(client, "/class-numbers", {"min_d": args.min_d})
    lines = {e["d"]: (e["h"], e["w"]) for e in data["entries"]}
    path = args.cache or os.environ.get(CLASS_CACHE_ENV)
    if path:
        if os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if line and not line.startswith("#"):
                        d, h, w = (int(x) for x in line.split(","))
                        lines.setdefault(d, (h, w))
        with open(path, "w") as fh:
            for d in sorted(lines, key=lambda d: -d):
                fh.write("%d,%d,%d\n" % (d, lines[d][0], lines[d][1]))
    for d in sorted(lines, key=lambda d: -d):
        print("%d,%d,%d" % (d, lines[d][0], lines[d][1]))
    return EXIT_OK


def _cmd_selftest(client, args):
    weights = [int(w) for w in args.weights.split(",")]
    data = _post(client, "/selftest", {
        "max_level": args.max_level, "weights": weights, "nmax": args.nmax})
    status = "PASS" if data["passed"] else "FAIL"
    print("%s: %d checks, %d failures"
          % (status, data["checks"], len(data["failures"])))
    for msg in data["failures"]:
        print("  %s" % msg)
    return EXIT_OK if data["passed"] else EXIT_VERIFY


_COMMANDS = {
    "trace": _cmd_trace,
    "dim": _cmd_dim,
    "basis": _cmd_basis,
    "newform-coeffs": _cmd_newform_coeffs,
    "class-numbers": _cmd_class_numbers,
    "selftest": _cmd_selftest,
}


def main(argv=None):
    args = _parser().parse_args(argv)
    client = _client(args.base_url)
    try:
        return _COMMANDS[args.command](client, args)
    except SystemExit as exc:
        return exc.code
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
