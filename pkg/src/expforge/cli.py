"""forge: command-line surface for building and certifying expander sets.

Subcommands:

* run        build one generating set, its graph, and the requested
             certifications; write a JSON report bundle (stdout or --json),
             optionally a CSV row and an edge-list export.
* scan       run a family (one comma-separated parameter list) and emit
             one CSV row per member; rows are isolated, a failing member
             records its error and the scan continues.
* decompose  bounded-product and bounded-generation reports.

A run is a pure function of its RunConfig: identical configs produce
byte-identical bundles except for the runtime_ms field.  Exit codes:
0 success, 2 certification threshold failed, 1 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import decomp, gensets, spectral
from .cayley import build_cayley_on, build_schreier_from_perms, export_edges
from .errors import TooLarge
from .ffield import make_field
from .groups import VectorDomain, act_on_points, enumerate_group

SCAN_COLUMNS = (
    "recipe",
    "params",
    "n",
    "degree",
    "lambda2",
    "gap",
    "diameter",
    "runtime_ms",
    "seed",
    "error",
)
SCAN_HEADER = "# forge-scan-v1 columns=" + ",".join(SCAN_COLUMNS)

DEFAULT_TRIALS = {"torus-conj": 200, "ros-sl2": 12}


@dataclass
class RunConfig:
    recipe: str
    p: int = 2
    k: int = 1
    d: int | None = None
    m: int | None = None
    s: int | None = None
    trials: int | None = None
    seed: int = 0
    tol: float = 1e-10
    max_iter: int = 20000
    cert: list = field(default_factory=list)
    assert_lambda_below: float | None = None
    cap: int = 1 << 24
    export_edges: str | None = None

    def to_json(self) -> dict:
        return asdict(self)

    def params_string(self) -> str:
        parts = [f"p={self.p}", f"k={self.k}"]
        for name in ("d", "m", "s", "trials"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        return ";".join(parts)


def field_spec(config: RunConfig):
    return make_field(config.p, config.k)


def _build_recipe(config: RunConfig):
    """Returns (genset, group_or_None, graph, aux) for the configured recipe."""
    name = config.recipe
    aux = {}
    trials = config.trials if config.trials is not None else DEFAULT_TRIALS.get(name, 200)
    if name == "sl2-standard":
        genset = gensets.sl2_standard(field_spec(config))
    elif name == "torus-conj":
        spec = field_spec(config)
        d = config.d or 2
        torus = gensets.nonsplit_torus(spec, d)
        aux["torus_order"] = len(torus)
        found = gensets.search_conjugator(torus, trials=trials, seed=config.seed)
        aux["search"] = found.to_json()
        # certify on the full ambient group, not on <S'>: a conjugate set
        # that fails to generate must show up as a disconnected graph
        genset = found.genset
        graph = build_cayley_on(found.ambient, genset)
        return genset, found.ambient, graph, aux
    elif name == "ros-sl2":
        spec = field_spec(config)
        genset = gensets.sl2_over_extension_plus_conjugator(
            spec, config.m or 1, trials=trials, seed=config.seed
        )
    elif name == "elementary":
        genset = gensets.elementary_set(config.d or 3, field_spec(config))
    elif name == "el3-power":
        genset = gensets.power_generators(config.k, config.s or 1)
    elif name == "cube":
        if config.d is not None:
            cube = gensets.CubeSpec.reduced_spec(d=config.d, m=config.m or 2)
            base_gens, domain = gensets.alt_base_action(config.d)
        else:
            m = config.m if config.m is not None else 6
            if m == 6:
                cube = gensets.CubeSpec.paper(config.k)
            else:
                cube = gensets.CubeSpec.reduced_spec(d=2 ** (3 * config.k) - 1, m=m, k=config.k)
            base_gens, domain = gensets.cube_base_action(config.k)
        built = gensets.cube_embeddings(cube, base_gens, domain)
        aux["cube"] = {"d": cube.d, "m": cube.m, "n": cube.n, "reduced": cube.reduced}
        genset = built.genset
    else:
        raise ValueError(f"unknown recipe {name!r}; choose from {gensets.RECIPE_NAMES}")

    if name == "cube":
        graph = build_schreier_from_perms([g for _, g in genset.symmetrized()])
        group = None
    else:
        closed = genset.symmetrized()
        group = enumerate_group(closed.members(), cap=config.cap)
        graph = build_cayley_on(group, closed)
        genset = closed
    return genset, group, graph, aux


def _natural_domain(config: RunConfig, genset):
    if genset.ambient.kind != "SL":
        raise ValueError("schreier certification needs a matrix ambient with a vector action")
    return VectorDomain(genset.ambient.field, genset.ambient.degree)


def execute_run(config: RunConfig) -> dict:
    """Run the pipeline for one config; returns the report bundle."""
    t0 = time.monotonic()
    genset, group, graph, aux = _build_recipe(config)
    from .groups import identity_like

    ident = identity_like(genset.elements[0][1])
    if any(g == ident for _, g in genset):
        sys.stderr.write("warning: identity generator present; graph has self-loops\n")
    reports = {}
    certs = list(config.cert)
    lambda2 = None
    for cert in certs:
        if cert == "spectrum":
            rep = spectral.spectral_report(
                graph, tol=config.tol, max_iter=config.max_iter, seed=config.seed
            )
            lambda2 = rep.lambda2
            reports["spectrum"] = rep.to_json()
        elif cert == "expansion":
            if graph.n <= spectral.EXACT_SCAN_BUDGET:
                vrep = spectral.vertex_expansion_exact(graph)
                erep = spectral.edge_expansion_exact(graph)
                reports["expansion"] = {
                    "epsilon_vertex": vrep.epsilon_vertex,
                    "h_edge": erep.h_edge,
                    "witness_vertex": list(vrep.witness_subset),
                    "witness_edge": list(erep.witness_subset),
                    "exact": True,
                }
            else:
                if lambda2 is None:
                    lambda2 = spectral.spectral_report(
                        graph, tol=config.tol, max_iter=config.max_iter, seed=config.seed
                    ).lambda2
                reports["expansion"] = spectral.expansion_bounds(graph, lambda2).to_json()
        elif cert == "diameter":
            reports["diameter"] = spectral.diameter(graph, seed=config.seed).to_json()
        elif cert == "schreier":
            if config.recipe == "cube":
                reports["schreier"] = {"note": "cube graph is already a Schreier graph"}
            else:
                domain = _natural_domain(config, genset)
                perms = [act_on_points(g, domain) for _, g in genset]
                sgraph = build_schreier_from_perms(perms)
                srep = spectral.spectral_report(
                    sgraph, tol=config.tol, max_iter=config.max_iter, seed=config.seed
                )
                reports["schreier"] = {"n": sgraph.n, "degree": sgraph.degree, **srep.to_json()}
        elif cert == "class-average":
            if group is None:
                raise TooLarge("class-average needs an enumerated group")
            rep_el = next(g for _, g in genset if g != group.identity)
            reports["class_average"] = spectral.class_average_spectrum(group, rep_el).to_json()
        else:
            raise ValueError(f"unknown certification {cert!r}")

    if config.export_edges:
        export_edges(graph, config.export_edges)

    bundle = {
        "config": config.to_json(),
        "genset": {
            "ambient": genset.ambient.to_json(),
            "size": len(genset),
            "labels": [lab for lab, _ in genset],
        },
        "graph": {"n": graph.n, "degree": graph.degree, "kind": graph.kind},
        "reports": reports,
        "aux": aux,
        "runtime_ms": int((time.monotonic() - t0) * 1000),
    }
    threshold = config.assert_lambda_below
    bundle["certified"] = True
    if threshold is not None:
        if lambda2 is None:
            rep = spectral.spectral_report(
                graph, tol=config.tol, max_iter=config.max_iter, seed=config.seed
            )
            lambda2 = rep.lambda2
            bundle["reports"]["spectrum"] = rep.to_json()
        bundle["certified"] = bool(lambda2 < threshold)
    return bundle


# ---------------------------------------------------------------------------
# CLI plumbing


def _add_common(parser):
    parser.add_argument("--recipe", required=True)
    parser.add_argument("--p", default="2")
    parser.add_argument("--k", default="1")
    parser.add_argument("--d", default=None)
    parser.add_argument("--m", default=None)
    parser.add_argument("--s", default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--max-iter", type=int, default=20000)
    parser.add_argument("--cert", default="")
    parser.add_argument("--assert-lambda-below", type=float, default=None)
    parser.add_argument("--cap", type=int, default=1 << 24)
    parser.add_argument("--export-edges", default=None)
    parser.add_argument("--csv", default=None)
    parser.add_argument("--json", dest="json_path", default=None)
    parser.add_argument("--config", default=None)


def build_parser():
    parser = argparse.ArgumentParser(prog="forge")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="one construction + certifications")
    _add_common(run_p)
    scan_p = sub.add_parser("scan", help="family scan, one CSV row per member")
    _add_common(scan_p)
    dec_p = sub.add_parser("decompose", help="bounded product / generation reports")
    dec_p.add_argument("--target", required=True, choices=["sl3", "sl4", "alt", "elementary-words"])
    dec_p.add_argument("--factors", default=None,
                       choices=[None, "five-sl2", "sl3-blocks", "windows"],
                       help="factor family for product covers (default per target)")
    dec_p.add_argument("--p", type=int, default=2)
    dec_p.add_argument("--k", type=int, default=1)
    dec_p.add_argument("--d", type=int, default=3)
    dec_p.add_argument("--n", type=int, default=6)
    dec_p.add_argument("--n-k", type=int, default=5)
    dec_p.add_argument("--max-rounds", type=int, default=16)
    dec_p.add_argument("--json", dest="json_path", default=None)
    return parser


def _merge_config_file(args):
    if not getattr(args, "config", None):
        return args
    with open(args.config) as fh:
        data = json.load(fh)
    parser_defaults = {
        "p": "2", "k": "1", "d": None, "m": None, "s": None, "trials": None,
        "seed": 0, "tol": 1e-10, "max_iter": 20000, "cert": "",
        "assert_lambda_below": None, "cap": 1 << 24, "export_edges": None,
        "csv": None, "json_path": None,
    }
    for key, value in data.items():
        attr = key.replace("-", "_")
        if attr == "cert" and isinstance(value, list):
            value = ",".join(value)
        if hasattr(args, attr) and getattr(args, attr) == parser_defaults.get(attr, None):
            setattr(args, attr, str(value) if attr in ("p", "k", "d", "m", "s") else value)
    return args


def _int_list(text):
    return [int(x) for x in str(text).split(",") if x != ""]


def _configs_from_args(args):
    """One config for run; the family list for scan (exactly one list param)."""
    certs = [c for c in str(args.cert).split(",") if c]
    lists = {}
    for name in ("p", "k", "d", "m", "s"):
        raw = getattr(args, name)
        if raw is None:
            lists[name] = [None]
        else:
            lists[name] = _int_list(raw)
    if any(len(vals) == 0 for vals in lists.values()):
        return []  # empty family
    varying = [name for name, vals in lists.items() if len(vals) > 1]
    if len(varying) > 1:
        raise ValueError(f"only one parameter may be a list, got {varying}")

    base = dict(
        recipe=args.recipe,
        trials=args.trials,
        seed=args.seed,
        tol=args.tol,
        max_iter=args.max_iter,
        cert=certs,
        assert_lambda_below=args.assert_lambda_below,
        cap=args.cap,
        export_edges=args.export_edges,
    )
    configs = []
    name = varying[0] if varying else None
    count = len(lists[name]) if name else 1
    for idx in range(count):
        values = {key: (vals[idx] if key == name else vals[0]) for key, vals in lists.items()}
        configs.append(
            RunConfig(
                p=values["p"] if values["p"] is not None else 2,
                k=values["k"] if values["k"] is not None else 1,
                d=values["d"],
                m=values["m"],
                s=values["s"],
                **base,
            )
        )
    return configs


def _bundle_text(bundle) -> str:
    return json.dumps(bundle, sort_keys=True, indent=2) + "\n"


def _csv_row(config: RunConfig, bundle, aux_params: str, error: str = "") -> str:
    if error:
        fields = [config.recipe, aux_params, "", "", "", "", "", "", str(config.seed), error]
        return ",".join(fields)
    spectrum = bundle["reports"].get("spectrum", {})
    diam = bundle["reports"].get("diameter", {})
    fields = [
        config.recipe,
        aux_params,
        str(bundle["graph"]["n"]),
        str(bundle["graph"]["degree"]),
        repr(spectrum["lambda2"]) if "lambda2" in spectrum else "",
        repr(spectrum["gap"]) if "gap" in spectrum else "",
        str(diam["value"]) if "value" in diam else "",
        str(bundle["runtime_ms"]),
        str(config.seed),
        "",
    ]
    return ",".join(fields)


def _aux_params(config: RunConfig, bundle) -> str:
    parts = config.params_string()
    aux = bundle.get("aux", {}) if bundle else {}
    if "torus_order" in aux:
        parts += f";torus_order={aux['torus_order']}"
    if "cube" in aux:
        parts += f";cube_n={aux['cube']['n']}"
    return parts


def _thread_count() -> int:
    raw = os.environ.get("FORGE_THREADS", "")
    if raw.strip():
        return max(1, int(raw))
    return min(4, os.cpu_count() or 1)


def cmd_run(args) -> int:
    configs = _configs_from_args(args)
    if len(configs) != 1:
        raise ValueError("run takes scalar parameters; use scan for families")
    bundle = execute_run(configs[0])
    text = _bundle_text(bundle)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.csv:
        row = _csv_row(configs[0], bundle, _aux_params(configs[0], bundle))
        _append_csv(args.csv, [row])
    return 0 if bundle["certified"] else 2


def _append_csv(path, rows):
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a") as fh:
        if fresh:
            fh.write(SCAN_HEADER + "\n")
            fh.write(",".join(SCAN_COLUMNS) + "\n")
        for row in rows:
            fh.write(row + "\n")


def cmd_scan(args) -> int:
    configs = _configs_from_args(args)

    def run_one(idx_config):
        idx, config = idx_config
        try:
            bundle = execute_run(config)
            return idx, _csv_row(config, bundle, _aux_params(config, bundle)), bundle
        except Exception as exc:  # per-row isolation
            return idx, _csv_row(config, None, config.params_string(), error=repr(exc)), None

    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        results = list(pool.map(run_one, enumerate(configs)))
    results.sort(key=lambda r: r[0])
    rows = [row for _, row, _ in results]
    if args.csv:
        _append_csv(args.csv, rows)
    else:
        sys.stdout.write(SCAN_HEADER + "\n" + ",".join(SCAN_COLUMNS) + "\n")
        for row in rows:
            sys.stdout.write(row + "\n")
    ok = all(bundle is None or bundle["certified"] for _, _, bundle in results)
    return 0 if ok else 2


def cmd_decompose(args) -> int:
    spec = make_field(args.p, args.k)
    defaults = {"sl3": "five-sl2", "sl4": "sl3-blocks", "alt": "windows"}
    factors = args.factors or defaults.get(args.target)
    if args.target == "sl3":
        if factors != "five-sl2":
            raise ValueError(f"target sl3 supports --factors five-sl2, got {factors!r}")
        host = enumerate_group(gensets.elementary_set(3, spec).members())
        report = decomp.product_cover_depth(
            host, decomp.sl3_five_sl2_factors(spec), max_rounds=args.max_rounds,
            target_name=f"SL(3, {spec!r})",
        )
    elif args.target == "sl4":
        if factors != "sl3-blocks":
            raise ValueError(f"target sl4 supports --factors sl3-blocks, got {factors!r}")
        host = enumerate_group(gensets.elementary_set(4, spec).members())
        report = decomp.product_cover_depth(
            host, decomp.sl4_block_sl3_factors(spec), max_rounds=args.max_rounds,
            target_name=f"SL(4, {spec!r})",
        )
    elif args.target == "alt":
        if factors != "windows":
            raise ValueError(f"target alt supports --factors windows, got {factors!r}")
        report = decomp.alt_product_cover(args.n, args.n_k, max_rounds=args.max_rounds)
    else:
        report = decomp.elementary_word_length_max(args.d, spec)
    text = json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command in ("run", "scan"):
            args = _merge_config_file(args)
        if args.command == "run":
            return cmd_run(args)
        if args.command == "scan":
            return cmd_scan(args)
        return cmd_decompose(args)
    except BrokenPipeError:  # pragma: no cover
        return 1
    except Exception as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
