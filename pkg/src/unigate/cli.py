"""Command-line front end.

Exit codes: 0 success, 2 parse/usage errors on inputs, 3 non-unitary
input, 4 I/O failures.  Every randomized command takes an explicit --seed;
outputs are byte-identical for any --threads value, and timestamps are
omitted under --deterministic.
"""

import argparse
import datetime
import json
import sys

import numpy as np

from . import canonical, channels, ensembles, gates, linalg, schmidt

EXIT_PARSE = 2
EXIT_NONUNITARY = 3
EXIT_IO = 4


def _fail(code: int, msg: str):
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(code)


def _load_matrix(path):
    try:
        return linalg.load_matrix(path)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot read {path}: {exc}")
    except ValueError as exc:
        _fail(EXIT_PARSE, str(exc))


def _write_json(path, doc):
    try:
        if path is None:
            json.dump(doc, sys.stdout, indent=2)
            print()
        else:
            with open(path, "w") as fh:
                json.dump(doc, fh, indent=2)
    except OSError as exc:
        _fail(EXIT_IO, f"cannot write {path}: {exc}")


def _stamp(doc, args):
    if not args.deterministic:
        doc["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return doc


def _parse_dims(text, n):
    if text:
        parts = text.split(",")
        if len(parts) != 2:
            _fail(EXIT_PARSE, "--dims expects A,B")
        return int(parts[0]), int(parts[1])
    root = int(round(np.sqrt(n)))
    if root * root != n:
        _fail(EXIT_PARSE, f"size {n} is not a perfect square; pass --dims")
    return root, root


def cmd_analyze(args):
    U, dims = _load_matrix(args.input)
    if U.shape[0] != U.shape[1]:
        _fail(EXIT_PARSE, "gate must be square")
    if args.dims:
        dims = _parse_dims(args.dims, U.shape[0])
    elif dims is None:
        dims = _parse_dims(None, U.shape[0])
    residual = linalg.unitarity_residual(U)
    if residual > 1e-8:
        _fail(EXIT_NONUNITARY, f"input is not unitary (residual {residual:.3e})")
    doc = {"dims": list(dims), "unitarity_residual": residual}
    if U.shape == (4, 4) and dims == (2, 2):
        doc.update(canonical.gate_report(U))
        ch = channels.channel_from_unitary(U, dims)
        _, eta_bloch = channels.bloch_map(ch)
        verdict = channels.is_unistochastic(eta_bloch)
        doc["channel"] = {
            "choi_eigenvalues": [float(x) for x in np.linalg.eigvalsh(ch.choi)[::-1]],
            "eta_bloch": [float(x) for x in eta_bloch],
            "unistochastic": bool(verdict.verdict),
        }
    else:
        if dims[0] != dims[1]:
            _fail(EXIT_PARSE, "analysis needs a square N x N bipartition")
        spec = schmidt.schmidt_spectrum(U, dims)
        doc.update(
            {
                "Lambda": [float(x) for x in spec.Lambda],
                "schmidt_rank": schmidt.schmidt_rank(spec),
                "entropy": {
                    "S": schmidt.shannon_entropy(spec),
                    "S2": schmidt.renyi_entropy(spec, 2),
                    "S4": schmidt.renyi_entropy(spec, 4),
                },
                "purity": schmidt.purity(spec).r,
                "warning": "dimension is not 4; canonical-form fields omitted",
            }
        )
    _write_json(args.output, _stamp(doc, args))


def cmd_table1(args):
    rows = gates.table1()
    doc = {"rows": []}
    for row in rows:
        doc["rows"].append(
            {
                "name": row.name,
                "alpha": [float(x) for x in row.alpha],
                "delta": [float(x) for x in row.delta],
                "Lambda": [float(x) for x in row.Lambda],
                "schmidt_rank": row.schmidt_rank,
                "eta": [float(x) for x in row.eta],
                "pe_class": row.pe_class,
                "notes": row.notes,
            }
        )
        flag = f"  [{row.notes}]" if row.notes else ""
        a = np.array2string(row.alpha / (np.pi / 8), precision=4, suppress_small=True)
        lam = np.array2string(row.Lambda, precision=6, suppress_small=True)
        eta = np.array2string(row.eta, precision=6, suppress_small=True)
        print(
            f"{row.name:10s} alpha/(pi/8)={a:18s} Lambda={lam:30s} rank={row.schmidt_rank} "
            f"eta={eta:24s} pe={row.pe_class}{flag}"
        )
    if args.output:
        _write_json(args.output, _stamp(doc, args))


def cmd_sample(args):
    spec = ensembles.EnsembleSpec(kind=args.ensemble, dim=args.dim, count=args.count, seed=args.seed)
    records = ensembles.gate_records(spec, threads=args.threads)
    try:
        ensembles.write_sample_csv(args.output, records)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    mean_r = float(np.mean(records["r"]))
    print(f"samples={spec.count} mean_r={mean_r:.6f} output={args.output}")


def cmd_pe_volume(args):
    est = ensembles.mc_pe_fraction(args.samples, args.seed, threads=args.threads)
    print(f"mc_fraction={est.mean:.6f} std_error={est.std_error:.6f} samples={est.samples}")
    if not args.skip_quadrature:
        vols = ensembles.integrate_volumes()
        print(f"quad_V_w={vols['V_w']:.8f} quad_V_pe={vols['V_pe']:.8f} quad_ratio={vols['ratio']:.8f}")
    print(f"reference=8/(3*pi)={8 / (3 * np.pi):.8f}")


def _parse_range(text):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def cmd_mean_entropy(args):
    ns = _parse_range(args.n)
    qs = [float(x) for x in args.q.split(",")]
    rows = []
    for n in ns:
        for q in qs:
            est = ensembles.mc_mean_entropy(n, q, args.samples, args.seed, threads=args.threads)
            rows.append((n, q, est))
            print(f"n={n} q={q} mean={est.mean:.6f} std_error={est.std_error:.6f}")
    if args.output:
        try:
            ensembles.write_mean_entropy_csv(args.output, rows)
        except OSError as exc:
            _fail(EXIT_IO, str(exc))


def cmd_check_unistochastic(args):
    eta = np.array([float(x) for x in args.eta.split(",")])
    if eta.shape != (3,):
        _fail(EXIT_PARSE, "--eta expects three comma-separated reals")
    if not channels.is_cp(eta):
        print("cp=no unistochastic=n/a")
        return
    verdict = channels.is_unistochastic(eta)
    print(f"cp=yes unistochastic={'yes' if verdict.verdict else 'no'}")
    if verdict.verdict and args.output:
        try:
            linalg.save_matrix(args.output, verdict.witness, dims=(2, 2))
        except OSError as exc:
            _fail(EXIT_IO, str(exc))
        print(f"witness={args.output}")


def cmd_channel_apply(args):
    U, udims = _load_matrix(args.input)
    rho, _ = _load_matrix(args.state)
    dims = _parse_dims(args.dims, U.shape[0]) if args.dims else udims
    if dims is None:
        _fail(EXIT_PARSE, "pass --dims N,M for the system/environment split")
    try:
        out = channels.env_channel_apply(U, rho, dims)
    except ValueError as exc:
        _fail(EXIT_NONUNITARY if "unitary" in str(exc) else EXIT_PARSE, str(exc))
    try:
        linalg.save_matrix(args.output, out)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    print(f"output={args.output} trace={np.trace(out).real:.12f}")


def cmd_sv_hist(args):
    spec = ensembles.EnsembleSpec(kind=args.ensemble, dim=args.dim, count=args.count, seed=args.seed)
    N = int(round(np.sqrt(args.dim)))
    if N * N != args.dim:
        _fail(EXIT_PARSE, "sv-hist needs a square dimension")

    def block(a, b):
        Us = ensembles.sample_block(spec, a, b)
        R = Us.reshape(-1, N, N, N, N).transpose(0, 1, 3, 2, 4).reshape(-1, N * N, N * N)
        return np.linalg.svd(R, compute_uv=False).ravel()

    sv = np.concatenate(ensembles._map_blocks(spec, block, args.threads))
    hist = ensembles.Histogram.from_samples(sv, bins=args.bins, lo=0.0, hi=float(sv.max()) * 1.0001)
    try:
        ensembles.write_histogram_csv(args.output, hist)
    except OSError as exc:
        _fail(EXIT_IO, str(exc))
    print(f"singular_values={len(sv)} output={args.output}")


def build_parser():
    p = argparse.ArgumentParser(prog="unigate", description=__doc__)
    p.add_argument("--deterministic", action="store_true", help="omit timestamps from reports")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="canonical-form report for a gate file")
    a.add_argument("--input", required=True)
    a.add_argument("--dims")
    a.add_argument("--output")
    a.set_defaults(fn=cmd_analyze)

    t = sub.add_parser("table1", help="invariants of the named reference gates")
    t.add_argument("--output")
    t.set_defaults(fn=cmd_table1)

    s = sub.add_parser("sample", help="stream per-sample invariants to CSV")
    s.add_argument("--ensemble", default="scue", choices=["cue", "scue", "coe"])
    s.add_argument("--dim", type=int, default=4)
    s.add_argument("--count", "--samples", dest="count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--output", required=True)
    s.set_defaults(fn=cmd_sample)

    v = sub.add_parser("pe-volume", help="perfect-entangler volume (MC + quadrature)")
    v.add_argument("--samples", type=int, required=True)
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--skip-quadrature", action="store_true")
    v.set_defaults(fn=cmd_pe_volume)

    m = sub.add_parser("mean-entropy", help="mean Renyi entropies over CUE(N^2)")
    m.add_argument("--n", required=True, help="e.g. 2..5 or 2,3,4")
    m.add_argument("--q", default="1", help="comma-separated Renyi orders")
    m.add_argument("--samples", type=int, required=True)
    m.add_argument("--seed", type=int, required=True)
    m.add_argument("--threads", type=int, default=1)
    m.add_argument("--output")
    m.set_defaults(fn=cmd_mean_entropy)

    c = sub.add_parser("check-unistochastic", help="CP / unistochasticity verdict for a damping vector")
    c.add_argument("--eta", required=True)
    c.add_argument("--output", help="write the witness gate here when one exists")
    c.set_defaults(fn=cmd_check_unistochastic)

    ch = sub.add_parser("channel-apply", help="apply the induced channel to a state")
    ch.add_argument("--input", required=True, help="gate matrix file")
    ch.add_argument("--state", required=True, help="density matrix file")
    ch.add_argument("--dims", help="N,M system/environment split")
    ch.add_argument("--output", required=True)
    ch.set_defaults(fn=cmd_channel_apply)

    sv = sub.add_parser("sv-hist", help="histogram of reshuffled singular values")
    sv.add_argument("--ensemble", default="cue", choices=["cue", "scue", "coe"])
    sv.add_argument("--dim", type=int, required=True)
    sv.add_argument("--count", "--samples", dest="count", type=int, required=True)
    sv.add_argument("--seed", type=int, required=True)
    sv.add_argument("--bins", type=int, default=50)
    sv.add_argument("--threads", type=int, default=1)
    sv.add_argument("--output", required=True)
    sv.set_defaults(fn=cmd_sv_hist)
    return p


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    # allow "--eta -0.3,..." (argparse would read the value as an option)
    merged = []
    i = 0
    while i < len(argv):
        if argv[i] == "--eta" and i + 1 < len(argv):
            merged.append(f"--eta={argv[i + 1]}")
            i += 2
        else:
            merged.append(argv[i])
            i += 1
    args = build_parser().parse_args(merged)
    try:
        args.fn(args)
    except ValueError as exc:
        _fail(EXIT_PARSE, str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
