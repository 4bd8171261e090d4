"""Command-line front end: build matrices, compute spectra and rates, search,
sweep surveys, scan the tent eigenvalue region, tabulate correlation decay,
and run the verification suites.

Exit codes: 0 success, 1 verification failure, 2 domain/usage error,
3 capacity error.  All numeric output is printed to 12 significant digits and
the JSON mirror of a CSV carries the same field names and the same rounded
values.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from math import gcd

from . import acceptance
from .correlations import (
    StepObservable,
    correlation,
    decay_rate,
    eigenvector_observable,
    monte_carlo_correlation,
)
from .errors import CapacityError, DomainError, StructuralError
from .formulas import sf_worst_rate, tent_region_contains, zigzag_worst_rate
from .maps import (
    ComposedMap,
    IntervalPermutation,
    SlopeSignature,
    canonical_signatures,
)
from .matrices import (
    IntMatrix,
    backwards_identity,
    block_permutation_matrix,
    fine_markov,
    folded_circulant,
    matrix_to_csv,
    permutation_matrix,
    reduced_markov,
    symmetric_circulant,
)
from .search import Strategy, mixing_compositions, worst_mixing_rate
from .spectra import connectivity, mixing_rate, spectrum, spectrum_to_csv


def _fmt(x) -> str:
    return format(float(x), ".12g")


def _out(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_table(meta: str | None, header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    if meta is not None:
        buf.write(meta + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_table(meta: dict, header: list[str], rows: list[list[str]]) -> str:
    def convert(value: str):
        try:
            return int(value)
        except ValueError:
            pass
        try:
            return float(value)
        except ValueError:
            return value

    payload = {**meta, "rows": [dict(zip(header, map(convert, row))) for row in rows]}
    return json.dumps(payload, indent=2) + "\n"


def _parse_map(args) -> ComposedMap:
    if not args.signature:
        raise DomainError("--signature is required")
    sig = SlopeSignature.from_text(args.signature)
    if args.m is not None and args.m != sig.m:
        raise DomainError(f"--m {args.m} disagrees with signature length {sig.m}")
    if args.perm:
        perm = IntervalPermutation.from_text(args.perm)
        if args.N is not None and perm.n != args.N:
            raise DomainError(f"--N {args.N} disagrees with permutation length {perm.n}")
    elif args.N is not None:
        perm = IntervalPermutation.identity(args.N)
    else:
        raise DomainError("either --perm or --N is required")
    return ComposedMap(sig, perm)


def _parse_strategy(args, n: int) -> Strategy:
    name = args.strategy
    if name == "auto":
        name = "exhaustive" if n <= 7 else "sampled"
    if name == "exhaustive":
        return Strategy.exhaustive()
    if name == "sampled":
        return Strategy.sampled(args.samples, args.seed)
    if name == "shortcut":
        return Strategy.symmetric_shortcut()
    raise DomainError(f"unknown strategy {name!r}")


def _closed_form_prediction(sig: SlopeSignature, n: int) -> float | None:
    canon = canonical_signatures(sig.m)
    if sig == canon.sf:
        return sf_worst_rate(sig.m, n)
    if sig in (canon.zigzag, canon.inverted_zigzag):
        return zigzag_worst_rate(sig.m, n)
    return None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_matrix(args) -> int:
    kind = args.kind.upper()
    if kind in ("A", "B"):
        g = _parse_map(args)
        mat = reduced_markov(g) if kind == "A" else fine_markov(g)
    elif kind == "P":
        mat = permutation_matrix(IntervalPermutation.from_text(args.perm))
    elif kind == "Q":
        if args.m is None:
            raise DomainError("kind Q needs --m")
        mat = block_permutation_matrix(IntervalPermutation.from_text(args.perm), args.m)
    elif kind == "J":
        if args.N is None:
            raise DomainError("kind J needs --N")
        mat = backwards_identity(args.N)
    elif kind in ("C", "D"):
        if args.m is None or args.N is None:
            raise DomainError(f"kind {kind} needs --m and --N")
        mat = symmetric_circulant(args.m, args.N) if kind == "C" else folded_circulant(args.m, args.N)
    else:
        raise DomainError(f"unknown matrix kind {args.kind!r}")
    if args.format == "json":
        rs = mat.row_sum
        payload = {"n": mat.n, "rowsum": rs, "rows": mat.a.tolist()}
        _out(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _out(matrix_to_csv(mat), args.out)
    return 0


def _cmd_spectrum(args) -> int:
    kind = args.kind.upper()
    if kind == "A":
        mat = reduced_markov(_parse_map(args))
    elif kind == "B":
        mat = fine_markov(_parse_map(args))
    elif kind in ("C", "D"):
        if args.m is None or args.N is None:
            raise DomainError(f"kind {kind} needs --m and --N")
        mat = symmetric_circulant(args.m, args.N) if kind == "C" else folded_circulant(args.m, args.N)
    else:
        raise DomainError(f"unknown matrix kind for spectrum: {args.kind!r}")
    spec = spectrum(mat)
    if args.format == "json":
        vals = sorted(spec.eigenvalues, key=lambda z: (-abs(z), -z.real))
        payload = {
            "order": spec.order,
            "rowsum": float(_fmt(spec.leading.real)),
            "tau": float(_fmt(spec.tau)),
            "eigenvalues": [
                {"re": float(_fmt(z.real)), "im": float(_fmt(z.imag))} for z in vals
            ],
        }
        _out(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        _out(spectrum_to_csv(spec), args.out)
    return 0


def _cmd_rate(args) -> int:
    g = _parse_map(args)
    rate = mixing_rate(g)
    mixing = connectivity(fine_markov(g)).primitive
    if args.format == "json":
        payload = {"tau": float(_fmt(rate)), "topologically_mixing": mixing}
        _out(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [f"tau = {_fmt(rate)}"]
        if not mixing:
            lines.append("not topologically mixing")
        _out("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_worst(args) -> int:
    if not args.signature:
        raise DomainError("--signature is required")
    sig = SlopeSignature.from_text(args.signature)
    if args.N is None:
        raise DomainError("--N is required")
    strategy = _parse_strategy(args, args.N)
    res = worst_mixing_rate(sig, args.N, mode=args.mode, strategy=strategy)
    predicted = _closed_form_prediction(sig, args.N) if args.mode == "all" else None
    if args.format == "json":
        payload = {
            "value": float(_fmt(res.value)),
            "argmax": res.argmax.to_text(),
            "strategy": str(res.strategy),
            "evaluated": res.evaluated,
            "mode": args.mode,
        }
        if predicted is not None:
            payload["predicted"] = float(_fmt(predicted))
        _out(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [
            f"value = {_fmt(res.value)}",
            f"argmax = {res.argmax.to_text()}",
            f"strategy = {res.strategy}",
            f"evaluated = {res.evaluated}",
        ]
        if predicted is not None:
            lines.append(f"predicted = {_fmt(predicted)}")
        _out("\n".join(lines) + "\n", args.out)
    return 0


_SURVEY_HEADER = ["m", "N", "signature", "mode", "strategy", "value", "argmax", "evaluated", "wall_ms"]


def _parse_grid(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if ":" in part:
            lo, hi = part.split(":")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _cmd_survey(args) -> int:
    ms = _parse_grid(args.m_grid)
    ns = _parse_grid(args.n_grid)
    rows: list[list[str]] = []
    for m in ms:
        canon = canonical_signatures(m)
        if args.signatures == "canonical":
            sigs = [canon.sf, canon.zigzag]
        elif args.signatures == "orbits":
            from .maps import orbit_representatives

            sigs = list(orbit_representatives(m))
        else:
            sigs = [SlopeSignature.from_text(s) for s in args.signatures.split(",")]
        for sig in sigs:
            for n in ns:
                if n < m:
                    continue
                strategy = _parse_strategy(args, n)
                t0 = time.perf_counter()
                res = worst_mixing_rate(sig, n, mode=args.mode, strategy=strategy)
                wall = (time.perf_counter() - t0) * 1e3
                rows.append([
                    str(m), str(n), sig.to_text(), args.mode, str(res.strategy),
                    _fmt(res.value), res.argmax.to_text(), str(res.evaluated), _fmt(wall),
                ])
                predicted = _closed_form_prediction(sig, n)
                if predicted is not None and args.mode == "all":
                    rows.append([
                        str(m), str(n), sig.to_text(), args.mode, "closed_form",
                        _fmt(predicted), "", "0", "0",
                    ])
    if args.format == "json":
        _out(_json_table({}, _SURVEY_HEADER, rows), args.out)
    else:
        _out(_csv_table(None, _SURVEY_HEADER, rows), args.out)
    return 0


_REGION_HEADER = ["N", "sigma", "re", "im", "modulus", "in_region", "active_constraint"]


def _cmd_region(args) -> int:
    n = args.N
    if n is None or n < 3 or n % 2 == 0:
        raise DomainError("region scan needs an odd --N >= 3")
    tent = canonical_signatures(2).zigzag
    rows: list[list[str]] = []
    for perm, eigs in mixing_compositions(tent, n):
        for lam in sorted(eigs, key=lambda z: (-abs(z), -z.real)):
            half = lam / 2
            check = tent_region_contains(half, n)
            rows.append([
                str(n), perm.to_text(), _fmt(half.real), _fmt(half.imag),
                _fmt(abs(half)), "true" if check.inside else "false",
                check.active_constraint,
            ])
    if args.format == "json":
        _out(_json_table({"N": n}, _REGION_HEADER, rows), args.out)
    else:
        _out(_csv_table(f"N={n}", _REGION_HEADER, rows), args.out)
    return 0


_DECAY_HEADER = ["n", "C_exact", "C_mc", "mc_se"]


def _cmd_correlate(args) -> int:
    g = _parse_map(args)
    size = g.n * g.m
    if args.observable == "eigenvector":
        phi = psi = eigenvector_observable(g)
    elif args.observable.startswith("indicator:"):
        cells = [int(c) for c in args.observable.split(":", 1)[1].split("+")]
        phi = psi = StepObservable.indicator(g.n, cells)
    elif args.observable.startswith("values:"):
        vals = [float(v) for v in args.observable.split(":", 1)[1].split(",")]
        level = len(vals)
        if level not in (g.n, size):
            raise DomainError(f"need {g.n} or {size} values, got {level}")
        phi = psi = StepObservable(level, tuple(vals))
    else:
        raise DomainError(f"unknown observable spec {args.observable!r}")
    fit = decay_rate(g, phi, psi, max(args.nmax, 4))
    rows: list[list[str]] = []
    for n in range(args.nmax + 1):
        exact = correlation(g, phi, psi, n)
        mc = monte_carlo_correlation(g, phi, psi, n, samples=args.samples, seed=args.seed + n)
        rows.append([str(n), _fmt(exact), _fmt(mc.value), _fmt(mc.std_error)])
    meta = (
        f"g={g.describe()},phi={phi.content_hash()},psi={psi.content_hash()},"
        f"fitted_rate={_fmt(fit.fitted_rate)}"
    )
    if args.format == "json":
        meta_json = {
            "g": g.describe(),
            "phi": phi.content_hash(),
            "psi": psi.content_hash(),
            "fitted_rate": float(_fmt(fit.fitted_rate)),
        }
        _out(_json_table(meta_json, _DECAY_HEADER, rows), args.out)
    else:
        _out(_csv_table(meta, _DECAY_HEADER, rows), args.out)
    return 0


def _cmd_verify(args) -> int:
    keys = list(acceptance.SUITES) if args.suite == "all" else [args.suite]
    results = []
    for key in keys:
        if key not in acceptance.SUITES:
            raise DomainError(f"unknown suite {key!r}; choose from {sorted(acceptance.SUITES)} or 'all'")
        results.append(acceptance.run_suite(key, full=args.full))
    if args.format == "json":
        payload = {
            "passed": all(r.passed for r in results),
            "suites": [
                {
                    "key": r.key,
                    "title": r.title,
                    "passed": r.passed,
                    "wall_ms": float(_fmt(r.wall_ms)),
                    "items": [
                        {"label": line.label, "passed": line.passed, "detail": line.detail}
                        for line in r.lines
                    ],
                }
                for r in results
            ],
        }
        _out(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        text = "\n\n".join(acceptance.format_result(r) for r in results) + "\n"
        _out(text, args.out)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, with_map: bool = True) -> None:
    if with_map:
        parser.add_argument("--m", type=int, default=None, help="branch count")
        parser.add_argument("--N", type=int, default=None, help="cell count")
        parser.add_argument("--signature", type=str, default=None, help="sign text, e.g. +-+")
        parser.add_argument("--perm", type=str, default=None, help="one-based images, e.g. 2,3,1")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", type=str, default=None, help="output path (default stdout)")
    parser.add_argument("--workers", type=int, default=0,
                        help="parallel chunking hint; results are identical for any value")


def _add_search_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=("all", "mixing_only"), default="all")
    parser.add_argument("--strategy", choices=("auto", "exhaustive", "sampled", "shortcut"),
                        default="auto")
    parser.add_argument("--samples", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permix",
        description="Mixing rates of slope-(+-m) interval maps composed with interval exchanges",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="emit a transition or structured matrix as CSV")
    p.add_argument("--kind", required=True, help="A, B, P, Q, J, C, or D")
    _add_common(p)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("spectrum", help="emit the eigenvalues of a built matrix")
    p.add_argument("--kind", default="A", help="A, B, C, or D")
    _add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("rate", help="mixing rate of one composition")
    _add_common(p)
    p.set_defaults(func=_cmd_rate)

    p = sub.add_parser("worst", help="maximise the rate over interval exchanges")
    _add_common(p)
    _add_search_flags(p)
    p.set_defaults(func=_cmd_worst)

    p = sub.add_parser("survey", help="sweep a (m, N) grid into the survey CSV")
    p.add_argument("--m", dest="m_grid", type=str, required=True, help="e.g. 2,3 or 2:5")
    p.add_argument("--N", dest="n_grid", type=str, required=True, help="e.g. 4:7")
    p.add_argument("--signatures", type=str, default="canonical",
                   help="'canonical', 'orbits', or comma-separated sign texts")
    _add_common(p, with_map=False)
    _add_search_flags(p)
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("region", help="tent-map eigenvalue region scan for odd N")
    _add_common(p)
    p.set_defaults(func=_cmd_region)

    p = sub.add_parser("correlate", help="exact and Monte Carlo correlation decay table")
    _add_common(p)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--observable", type=str, default="eigenvector",
                   help="'eigenvector', 'indicator:<cells like 1+2>', or 'values:v1,v2,...'")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", type=str, default="all",
                   help="suite key or 'all'; keys: " + ", ".join(acceptance.SUITES))
    p.add_argument("--full", action="store_true", help="include the slow report-only extras")
    _add_common(p, with_map=False)
    p.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3


def entry() -> None:  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
