"""Command-line front end: one subcommand per library surface.

Inputs are JSON documents, inline or ``@path``.  Every stochastic
subcommand requires an explicit ``--seed`` and its result envelope
carries (estimate, standard error, n_samples, seed).  Output is a JSON
envelope; ``--out csv`` emits tabular traces for the few subcommands
that produce them.

Exit codes: 0 success, 2 input error (schema violations name the
offending key), 3 numeric failure (a tolerance that could not be
reached).  A failing selftest exits 1 naming the first failed criterion.

Payload determinism contract: the ``payload`` object is serialized
canonically (sorted keys, no volatile fields), so identical invocations
with identical seeds produce byte-identical payloads.  Wall time and
other volatile data live outside the payload.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from typing import Any

import numpy as np

from . import bohr, gaussian, jsonio, kernels, measure_core, selftest, support, transform
from .errors import InputError, NumericError
from .sequences import FiniteSequence

__all__ = ["main", "build_envelope", "run_payload"]


def _load_json_arg(raw: str, what: str) -> Any:
    text = raw
    if raw.startswith("@"):
        try:
            with open(raw[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"{what}: cannot read {raw[1:]}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc})") from None


def _parse_vectors(raw: str) -> tuple[list[FiniteSequence], Any]:
    """Comma-separated basis tokens like ``e1,e1,e2`` or a JSON array."""
    if raw.lstrip().startswith("["):
        doc = _load_json_arg(raw, "vectors")
        vecs = [jsonio.decode_finite_sequence(d, f"vectors[{i}]") for i, d in enumerate(doc)]
        return vecs, doc
    vecs = []
    for i, token in enumerate(raw.split(",")):
        token = token.strip()
        if not token.startswith("e"):
            raise InputError(f"vectors[{i}]: expected a basis token like e1, got {token!r}")
        try:
            index = int(token[1:])
        except ValueError:
            raise InputError(f"vectors[{i}]: expected a basis token like e1, got {token!r}") from None
        vecs.append(FiniteSequence.basis(index))
    return vecs, raw


def _check_tol(value: float | None) -> float | None:
    if value is not None and value <= 0:
        raise InputError(f"tolerance override must be positive, got {value}")
    return value


# ---------------------------------------------------------------------------
# payload builders (one per subcommand)


def _payload_sample(args) -> tuple[dict, Any, list[str]]:
    cov_doc = _load_json_arg(args.cov, "--cov")
    cov = jsonio.decode_decay(cov_doc, "cov")
    out = gaussian.sample(cov, args.n, args.seed)
    payload = {
        "values": jsonio.encode_value(out.values),
        "truncation": out.truncation,
        "seed": args.seed,
    }
    return payload, {"cov": cov_doc, "n": args.n, "seed": args.seed}, ["seeded gaussian sampler"]


def _payload_chi(args) -> tuple[dict, Any, list[str]]:
    cov_doc = _load_json_arg(args.cov, "--cov")
    xi_doc = _load_json_arg(args.xi, "--xi")
    cov = jsonio.decode_decay(cov_doc, "cov")
    xi = jsonio.decode_finite_sequence(xi_doc, "xi")
    return (
        {"chi": gaussian.chi(xi, cov), "inner": gaussian.inner(xi, xi, cov)},
        {"cov": cov_doc, "xi": xi_doc},
        ["closed-form characteristic function"],
    )


def _payload_moment(args) -> tuple[dict, Any, list[str]]:
    cov_doc = _load_json_arg(args.cov, "--cov")
    cov = jsonio.decode_decay(cov_doc, "cov")
    vectors, vec_echo = _parse_vectors(args.vectors)
    value = gaussian.wick_moment(cov, vectors)
    payload: dict[str, Any] = {"moment": value, "n_vectors": len(vectors)}
    provenance = ["pairing-sum evaluation"]
    if args.mc_samples is not None:
        if args.seed is None:
            raise InputError("--mc-samples needs an explicit --seed")
        dim = max((v.max_index for v in vectors), default=1)
        rng = np.random.default_rng(args.seed)
        x = gaussian.draw_coordinates(cov, dim, args.mc_samples, rng)
        prods = np.prod(
            np.stack([x @ v.as_vector(dim) for v in vectors], axis=1), axis=1
        )
        payload["mc"] = {
            "estimate": float(prods.mean()),
            "standard_error": float(prods.std(ddof=1) / np.sqrt(args.mc_samples)),
            "n_samples": args.mc_samples,
            "seed": args.seed,
        }
        provenance.append("monte carlo product-moment oracle")
    return payload, {"cov": cov_doc, "vectors": vec_echo}, provenance


def _payload_rn_density(args) -> tuple[dict, Any, list[str]]:
    cov_doc = _load_json_arg(args.cov, "--cov")
    shift_doc = _load_json_arg(args.shift, "--shift")
    x_doc = _load_json_arg(args.x, "--x")
    cov = jsonio.decode_decay(cov_doc, "cov")
    shift = jsonio.decode_finite_sequence(shift_doc, "shift")
    if not isinstance(x_doc, list):
        raise InputError("--x: expected a JSON array of coordinates")
    x = np.asarray([float(v) for v in x_doc])
    value = transform.rn_density(x, shift, cov)
    return (
        {"density": float(value), "truncation": len(x_doc)},
        {"cov": cov_doc, "shift": shift_doc, "x": x_doc},
        ["closed-form shift density"],
    )


def _payload_shift_admissible(args) -> tuple[dict, Any, list[str]]:
    cov_doc = _load_json_arg(args.cov, "--cov")
    shift_doc = _load_json_arg(args.shift, "--shift")
    cov = jsonio.decode_decay(cov_doc, "cov")
    shift = jsonio.decode_shift(shift_doc, "shift")
    return (
        {"admissible": transform.shift_admissible(shift, cov)},
        {"cov": cov_doc, "shift": shift_doc},
        ["symbolic series decision"],
    )


def _payload_equivalence(args) -> tuple[dict, Any, list[str]]:
    a_doc = _load_json_arg(args.cov_a, "--cov-a")
    b_doc = _load_json_arg(args.cov_b, "--cov-b")
    verdict = transform.equivalence_classify(
        jsonio.decode_decay(a_doc, "cov-a"), jsonio.decode_decay(b_doc, "cov-b")
    )
    return (
        jsonio.encode_value(verdict),
        {"cov_a": a_doc, "cov_b": b_doc},
        ["symbolic ratio classification"],
    )


def _payload_support(args) -> tuple[dict, Any, list[str]]:
    cov_doc = _load_json_arg(args.cov, "--cov")
    w_doc = _load_json_arg(args.weights, "--weights")
    cov = jsonio.decode_decay(cov_doc, "cov")
    weights = jsonio.decode_decay(w_doc, "weights")
    report = support.weighted_support_check(cov, weights)
    payload: dict[str, Any] = {"report": jsonio.encode_value(report)}
    provenance = ["symbolic weighted-series decision"]
    inputs: dict[str, Any] = {"cov": cov_doc, "weights": w_doc}
    if args.mc is not None:
        if args.seed is None:
            raise InputError("--mc needs an explicit --seed")
        n_coords, n_samples = args.mc
        growth = support.mc_tail_growth(cov, weights, n_coords, n_samples, args.seed)
        payload["mc"] = jsonio.encode_value(growth)
        provenance.append("monte carlo tail-growth oracle")
        inputs["mc"] = {"n_coords": n_coords, "n_samples": n_samples, "seed": args.seed}
    return payload, inputs, provenance


def _payload_hs_check(args) -> tuple[dict, Any, list[str]]:
    w_doc = _load_json_arg(args.weights, "--weights")
    h = jsonio.decode_decay(w_doc, "weights")
    return (
        {"hilbert_schmidt": support.hilbert_schmidt_check(h)},
        {"weights": w_doc},
        ["symbolic series decision"],
    )


def _payload_kernel(args) -> tuple[dict, Any, list[str]]:
    modes = (
        args.at is not None,
        args.bilinear is not None,
        bool(args.regularity),
        args.fourier is not None,
    )
    if sum(modes) != 1:
        raise InputError(
            "kernel needs exactly one of --at, --bilinear, --regularity, --fourier"
        )
    if args.fourier is not None:
        m, x = args.fourier
        res = kernels.kernel_fourier_quadrature(
            m, x, p_cutoff=args.cutoff, tol=args.tol if args.tol else 1e-6
        )
        return (
            jsonio.encode_value(res),
            {"fourier": {"m": m, "x": x, "cutoff": args.cutoff}},
            ["adaptive fourier quadrature"],
        )
    if args.spec is None:
        raise InputError("kernel needs --spec for --at, --bilinear, --regularity")
    spec_doc = _load_json_arg(args.spec, "--spec")
    spec = jsonio.decode_kernel(spec_doc, "spec")
    if args.at is not None:
        return (
            {"value": kernels.kernel_eval(spec, args.at), "x": args.at},
            {"spec": spec_doc, "at": args.at},
            ["closed-form kernel evaluation"],
        )
    if args.bilinear is not None:
        f_doc = _load_json_arg(args.bilinear[0], "--bilinear f")
        g_doc = _load_json_arg(args.bilinear[1], "--bilinear g")
        f = jsonio.decode_grid_function(f_doc, "f")
        g = jsonio.decode_grid_function(g_doc, "g")
        return (
            {"value": kernels.covariance_bilinear(spec, f, g)},
            {"spec": spec_doc, "f": f_doc, "g": g_doc},
            ["trapezoid double quadrature"],
        )
    return (
        {"regularity": kernels.support_regularity_flag(spec).value},
        {"spec": spec_doc},
        ["continuity classification"],
    )


def _payload_bohr(args) -> tuple[dict, Any, list[str]]:
    try:
        freqs = bohr.FrequencySet(tuple(float(v) for v in args.freqs.split(",")))
    except ValueError as exc:
        raise InputError(f"--freqs: {exc}") from None
    inputs: dict[str, Any] = {"freqs": list(freqs.freqs)}
    actions = [
        args.check_independence is not None,
        args.integral is not None,
        args.sample,
    ]
    if sum(actions) != 1:
        raise InputError("bohr needs exactly one of --check-independence, --integral, --sample")
    if args.check_independence is not None:
        res = bohr.independence_check(freqs, args.check_independence)
        inputs["check_independence"] = args.check_independence
        return jsonio.encode_value(res), inputs, ["bounded integer-relation search"]
    if args.sample:
        if args.seed is None:
            raise InputError("bohr --sample needs an explicit --seed")
        s = bohr.haar_sample(freqs, args.seed)
        inputs["seed"] = args.seed
        return (
            {"phases": jsonio.encode_value(s.phases), "seed": args.seed},
            inputs,
            ["seeded haar sampler"],
        )
    f = _integrand_from_catalog(args.integral, freqs.n)
    inputs["integral"] = args.integral
    if args.mc is not None:
        if args.seed is None:
            raise InputError("bohr --mc needs an explicit --seed")
        method: bohr.Method = bohr.MCMethod(args.mc, args.seed)
        inputs["mc"] = {"n_samples": args.mc, "seed": args.seed}
        provenance = ["monte carlo haar integral"]
    else:
        method = bohr.QuadratureMethod(args.quad_points)
        inputs["quad_points"] = args.quad_points
        provenance = ["periodic trapezoid quadrature"]
    res = bohr.haar_cylinder_integral(freqs, f, method)
    return jsonio.encode_value(res), inputs, provenance


def _integrand_from_catalog(name: str, n_axes: int):
    """Named integrands: ``one``, ``char:m1,...,mn``, ``cos:m1,...,mn``."""
    if name == "one":
        return lambda th: np.ones(th.shape[0] if th.ndim == 2 else 1, dtype=complex)
    for prefix, builder in (
        ("char:", lambda m: (lambda th: np.exp(1j * (th @ m)))),
        ("cos:", lambda m: (lambda th: np.cos(th @ m).astype(complex))),
    ):
        if name.startswith(prefix):
            try:
                m = np.asarray([int(v) for v in name[len(prefix):].split(",")], dtype=float)
            except ValueError:
                raise InputError(f"--integral: bad mode list in {name!r}") from None
            if len(m) != n_axes:
                raise InputError(
                    f"--integral: {name!r} has {len(m)} modes for {n_axes} frequencies"
                )
            return builder(m)
    raise InputError(f"--integral: unknown integrand {name!r}; use one, char:..., cos:...")


def _payload_product(args) -> tuple[dict, Any, list[str]]:
    spec_doc = _load_json_arg(args.spec, "--spec")
    spec = jsonio.decode_measure_spec(spec_doc, "rule")
    if (args.cylinder is None) == (args.tail is None and args.prefix is None):
        raise InputError("product needs either --cylinder or a --prefix/--tail pair")
    if args.cylinder is not None:
        cyl_doc = _load_json_arg(args.cylinder, "--cylinder")
        cyl = jsonio.decode_cylinder(cyl_doc, "cylinder")
        return (
            {"probability": measure_core.cylinder_measure(spec, cyl)},
            {"rule": spec_doc, "cylinder": cyl_doc},
            ["finite product of component probabilities"],
        )
    prefix_doc = _load_json_arg(args.prefix, "--prefix") if args.prefix else {"base": []}
    tail_doc = _load_json_arg(args.tail, "--tail") if args.tail else {"full": {}}
    constraints = measure_core.TailConstraints(
        prefix=jsonio.decode_cylinder(prefix_doc, "prefix"),
        tail=jsonio.decode_tail_rule(tail_doc, "tail"),
    )
    report = measure_core.countable_product_measure(spec, constraints, n_max=args.n_max)
    return (
        jsonio.encode_value(report),
        {"rule": spec_doc, "prefix": prefix_doc, "tail": tail_doc},
        ["monotone partial products"],
    )


def _payload_consistency(args) -> tuple[dict, Any, list[str]]:
    doc = _load_json_arg(args.marginals, "--marginals")
    tables = jsonio.decode_marginal_tables(doc, "marginals")
    res = measure_core.consistency_check(tables, tol=args.tol if args.tol else 1e-12)
    return jsonio.encode_value(res), {"marginals": doc}, ["chain marginalization"]


_BUILDERS = {
    "sample": _payload_sample,
    "chi": _payload_chi,
    "moment": _payload_moment,
    "rn-density": _payload_rn_density,
    "shift-admissible": _payload_shift_admissible,
    "equivalence": _payload_equivalence,
    "support": _payload_support,
    "hs-check": _payload_hs_check,
    "kernel": _payload_kernel,
    "bohr": _payload_bohr,
    "product": _payload_product,
    "consistency": _payload_consistency,
}


def run_payload(args) -> tuple[dict, Any, list[str]]:
    """Dispatch to exactly one module operation; returns (payload, inputs, notes)."""
    return _BUILDERS[args.subcommand](args)


def build_envelope(args) -> dict:
    start = time.perf_counter()
    payload, inputs, provenance = run_payload(args)
    digest = hashlib.sha256(
        json.dumps(inputs, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    return {
        "subcommand": args.subcommand,
        "inputs": inputs,
        "inputs_digest": digest,
        "payload": payload,
        "provenance": provenance,
        "wall_time_s": time.perf_counter() - start,
    }


def _emit(envelope: dict, out_format: str) -> str:
    if out_format == "json":
        # canonical payload bytes: sorted keys, stable separators
        return json.dumps(envelope, sort_keys=True, separators=(",", ":"))
    payload = envelope["payload"]
    rows = _tabulate(payload)
    if rows is None:
        raise InputError(
            f"subcommand {envelope['subcommand']!r} has no tabular trace for CSV output"
        )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(row)
    return buf.getvalue().rstrip("\n")


def _tabulate(payload: dict) -> list[list] | None:
    if "values" in payload and isinstance(payload["values"], list):
        return [["index", "value"]] + [
            [i + 1, v] for i, v in enumerate(payload["values"])
        ]
    if "phases" in payload and isinstance(payload["phases"], list):
        return [["axis", "phase"]] + [[i + 1, v] for i, v in enumerate(payload["phases"])]
    mc = payload.get("mc")
    if isinstance(mc, dict) and "checkpoints" in mc:
        return [["n", "mean_partial_sum"]] + [list(row) for row in mc["checkpoints"]]
    return None


def _add_common(parser: argparse.ArgumentParser, seed_required: bool) -> None:
    parser.add_argument("--seed", type=int, required=seed_required, default=None,
                        help="64-bit seed (required for stochastic subcommands)")
    parser.add_argument("--out", choices=("json", "csv"), default="json")
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cylmeasure",
        description="Desk-scale measure theory on sequence spaces.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("sample", help="draw a truncated gaussian sample")
    p.add_argument("--cov", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p, seed_required=True)

    p = sub.add_parser("chi", help="characteristic function at a test vector")
    p.add_argument("--cov", required=True)
    p.add_argument("--xi", required=True)
    _add_common(p, seed_required=False)

    p = sub.add_parser("moment", help="gaussian moment by the pairing rule")
    p.add_argument("--cov", required=True)
    p.add_argument("--vectors", required=True,
                   help="basis tokens e1,e2,... or a JSON array of sequences")
    p.add_argument("--mc-samples", type=int, default=None)
    _add_common(p, seed_required=False)

    p = sub.add_parser("rn-density", help="shift density at a point")
    p.add_argument("--cov", required=True)
    p.add_argument("--shift", required=True)
    p.add_argument("--x", required=True, help="JSON array of truncated coordinates")
    _add_common(p, seed_required=False)

    p = sub.add_parser("shift-admissible", help="is a shift admissible for a covariance")
    p.add_argument("--cov", required=True)
    p.add_argument("--shift", required=True)
    _add_common(p, seed_required=False)

    p = sub.add_parser("equivalence", help="equivalent / singular classification")
    p.add_argument("--cov-a", required=True)
    p.add_argument("--cov-b", required=True)
    _add_common(p, seed_required=False)

    p = sub.add_parser("support", help="weighted-subspace support verdict")
    p.add_argument("--cov", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--mc", type=int, nargs=2, metavar=("N_COORDS", "N_SAMPLES"),
                   default=None, help="add the tail-growth oracle (needs --seed)")
    _add_common(p, seed_required=False)

    p = sub.add_parser("hs-check", help="hilbert-schmidt check for a diagonal operator")
    p.add_argument("--weights", required=True)
    _add_common(p, seed_required=False)

    p = sub.add_parser("kernel", help="covariance kernel operations")
    p.add_argument("--spec", default=None)
    p.add_argument("--at", type=float, default=None)
    p.add_argument("--bilinear", nargs=2, metavar=("F", "G"), default=None)
    p.add_argument("--regularity", action="store_true")
    p.add_argument("--fourier", type=float, nargs=2, metavar=("M", "X"), default=None)
    p.add_argument("--cutoff", type=float, default=1e7)
    _add_common(p, seed_required=False)

    p = sub.add_parser("bohr", help="torus family: independence, sampling, integrals")
    p.add_argument("--freqs", required=True, help="comma-separated frequencies")
    p.add_argument("--check-independence", type=int, default=None, metavar="BOUND")
    p.add_argument("--integral", default=None, metavar="EXPR_ID")
    p.add_argument("--quad-points", type=int, default=16)
    p.add_argument("--mc", type=int, default=None, metavar="N_SAMPLES")
    p.add_argument("--sample", action="store_true")
    _add_common(p, seed_required=False)

    p = sub.add_parser("product", help="cylinder or countable product probability")
    p.add_argument("--spec", required=True)
    p.add_argument("--cylinder", default=None)
    p.add_argument("--prefix", default=None)
    p.add_argument("--tail", default=None)
    p.add_argument("--n-max", type=int, default=None)
    _add_common(p, seed_required=False)

    p = sub.add_parser("consistency", help="marginal self-consistency check")
    p.add_argument("--marginals", required=True)
    _add_common(p, seed_required=False)

    p = sub.add_parser("selftest", help="run the release-gate criteria")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    _add_common(p, seed_required=False)

    return parser


def _run_selftest(args) -> int:
    seed = args.seed if args.seed is not None else selftest.DEFAULT_SEED
    results = selftest.run_selftest(args.level, seed)
    for res in results:
        print(f"[{'PASS' if res.passed else 'FAIL'}] {res.criterion}: {res.detail}")
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"selftest failed at criterion {failed[0].criterion!r}", file=sys.stderr)
        return 1
    print(f"selftest {args.level}: all {len(results)} criteria passed")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        _check_tol(args.tol)
        if args.subcommand == "selftest":
            return _run_selftest(args)
        envelope = build_envelope(args)
        print(_emit(envelope, args.out))
        return 0
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        detail = f" ({exc.context})" if exc.context else ""
        print(f"numeric failure: {exc}{detail}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
