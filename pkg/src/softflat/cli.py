"""``softflat`` command line: generate, reduce, trace-plot.

Exit codes: 0 success, 2 usage or configuration error, 3 unreadable input,
4 divergence.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import sys
from dataclasses import fields

from . import __version__, _backend
from .datasets import SurfaceSpec, format_csv, generate, load_csv
from .deform import DeformConfig, DeformTrace
from .errors import ConfigError, DivergenceError, IngestionError
from .neighborhood import format_edges
from .pipeline import reduce
from .spectral import DEFAULT_RATIO_THRESHOLD, component_ratio_trace, format_embedding
from .svg import embedding_svg, ratio_trace_svg

log = logging.getLogger("softflat")

EXIT_OK, EXIT_CONFIG, EXIT_INGEST, EXIT_DIVERGED = 0, 2, 3, 4

def _bool(s):
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _opt(parse):
    return lambda s: None if s.strip().lower() in ("", "none", "auto") else parse(s)


# config-file / manifest key -> (DeformConfig field or None, parser)
RUN_KEYS = {
    "k": ("k", _opt(int)),
    "alpha1-amplitude": ("alpha1_amplitude", float),
    "period": ("period", int),
    "alpha2": ("alpha2", float),
    "clamp-alpha1": ("clamp_alpha1_nonnegative", _bool),
    "epsilon": ("epsilon", _opt(float)),
    "max-steps": ("max_steps", int),
    "trace-pca-every": ("trace_pca_every", int),
    "ratio-threshold": (None, float),
    "dim": (None, _opt(int)),
}
# manifest keys that describe a run rather than configure it
_INFO_KEYS = {"tool-version", "backend", "input", "input-sha256"}


def read_config_file(path) -> dict:
    """Parse ``key=value`` lines into {flag-name: value}; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key in _INFO_KEYS or key.startswith(("result.", "output.")):
            continue
        if key not in RUN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = RUN_KEYS[key][1](val)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def _fmt_value(v):
    if v is None:
        return "auto"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def build_parser():
    p = argparse.ArgumentParser(prog="softflat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic surface as CSV")
    g.add_argument("--kind", required=True, choices=["half-cylinder", "gaussian"])
    g.add_argument("--out", required=True)
    g.add_argument("--grid-u", type=int, default=12)
    g.add_argument("--grid-v", type=int, default=10)
    g.add_argument("--radius", type=float, default=1.0)
    g.add_argument("--height", type=float, default=2.5)
    g.add_argument("--variance", type=float, default=6.0)
    g.add_argument("--amplitude", type=float, default=3.0, help="Gaussian peak height")
    g.add_argument("--half-width", type=float, default=5.0)
    g.add_argument("--jitter", type=float, default=0.0, help="fraction of grid spacing")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--header", action="store_true", help="write an x,y,z header row")

    r = sub.add_parser("reduce", help="flatten a CSV point cloud and export the embedding")
    r.add_argument("input")
    r.add_argument("--out", required=True, help="output prefix")
    r.add_argument("--config", help="key=value file; flags take precedence")
    r.add_argument("--svg", action="store_true", help="also render <prefix>.svg")
    r.add_argument("--k", type=int)
    r.add_argument("--alpha1-amplitude", type=float)
    r.add_argument("--period", type=int)
    r.add_argument("--alpha2", type=float)
    r.add_argument("--clamp-alpha1", action=argparse.BooleanOptionalAction, default=None)
    r.add_argument("--epsilon", type=float)
    r.add_argument("--max-steps", type=int)
    r.add_argument("--trace-pca-every", type=int)
    r.add_argument("--ratio-threshold", type=float)
    r.add_argument("--dim", type=int, help="embedding dimension (default: estimated)")

    t = sub.add_parser("trace-plot", help="plot PCA component ratios from a trace file")
    t.add_argument("trace")
    t.add_argument("--out", required=True)
    t.add_argument("--components", type=int, default=6)
    return p


def cmd_generate(args):
    spec = SurfaceSpec(
        kind="half_cylinder" if args.kind == "half-cylinder" else "gaussian_surface",
        grid_u=args.grid_u,
        grid_v=args.grid_v,
        radius=args.radius,
        height=args.height,
        variance=args.variance,
        amplitude=args.amplitude,
        half_width=args.half_width,
        jitter=args.jitter,
        seed=args.seed,
    )
    cloud = generate(spec)
    _write(args.out, format_csv(cloud, header=("x", "y", "z") if args.header else None))
    print(f"wrote {cloud.N} points in R^{cloud.n} to {args.out}")
    return EXIT_OK


def resolve_run_settings(args):
    settings = {key: None for key in RUN_KEYS}
    settings["ratio-threshold"] = DEFAULT_RATIO_THRESHOLD
    for f in fields(DeformConfig):
        key = next(k for k, (name, _) in RUN_KEYS.items() if name == f.name)
        settings[key] = f.default
    if args.config:
        settings.update(read_config_file(args.config))
    for key in RUN_KEYS:
        v = getattr(args, key.replace("-", "_"))
        if v is not None:
            settings[key] = v
    cfg = DeformConfig(**{RUN_KEYS[k][0]: v for k, v in settings.items() if RUN_KEYS[k][0]})
    cfg.validate()
    thr = settings["ratio-threshold"]
    if not 0 < thr < 1:
        raise ConfigError(f"ratio threshold must lie in (0, 1), got {thr}")
    return settings, cfg


def cmd_reduce(args):
    settings, cfg = resolve_run_settings(args)
    cloud = load_csv(args.input)
    if cloud.N < 2:
        raise ConfigError("reduce needs at least 2 points")
    cfg = cfg.resolved(cloud.N)
    settings["k"], settings["epsilon"] = cfg.k, cfg.epsilon
    log.info("reducing %d points in R^%d (backend %s)", cloud.N, cloud.n, _backend.BACKEND)
    red = reduce(cloud, cfg, settings["ratio-threshold"], settings["dim"])
    emb = red.embedding

    paths = {
        "embedding": f"{args.out}.embedding.csv",
        "edges": f"{args.out}.edges.csv",
        "trace": f"{args.out}.trace.csv",
        "manifest": f"{args.out}.manifest",
    }
    if args.svg:
        paths["svg"] = f"{args.out}.svg"
    _write(paths["embedding"], format_embedding(emb.coordinates))
    _write(paths["edges"], format_edges(red.deformation.state.neighborhoods))
    _write(paths["trace"], red.deformation.trace.format())
    if args.svg:
        _write(paths["svg"], embedding_svg(emb.coordinates, emb.edges))

    with open(args.input, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    lines = [
        "# softflat run manifest; usable as --config to repeat the run",
        f"tool-version={__version__}",
        f"backend={_backend.BACKEND}",
        f"input={args.input}",
        f"input-sha256={digest}",
    ]
    lines += [f"{k}={_fmt_value(v)}" for k, v in settings.items()]
    lines += [
        f"result.stop-reason={red.deformation.stop_reason}",
        f"result.steps={red.deformation.steps}",
        f"result.intrinsic-dimension={emb.intrinsic_dimension}",
        "result.ratios=" + " ".join(repr(float(x)) for x in emb.ratios),
    ]
    lines += [f"output.{k}={v}" for k, v in paths.items() if k != "manifest"]
    _write(paths["manifest"], "\n".join(lines) + "\n")

    print(
        f"intrinsic dimension {emb.intrinsic_dimension}; stopped on {red.deformation.stop_reason} "
        f"after {red.deformation.steps} steps"
    )
    print("ratios " + " ".join(f"{x:.4f}" for x in emb.ratios))
    return EXIT_OK


def cmd_trace_plot(args):
    try:
        with open(args.trace, encoding="utf-8") as fh:
            text = fh.read()
        trace = DeformTrace.parse(text)
    except (OSError, ValueError) as exc:
        raise IngestionError(str(exc)) from None
    recs = trace.pca_records()
    if not recs:
        raise IngestionError(
            f"{args.trace} has no PCA ratio records; rerun reduce with --trace-pca-every N"
        )
    series = component_ratio_trace(trace, args.components)
    _write(args.out, ratio_trace_svg([r.step for r in recs], series))
    print(f"plotted {series.shape[1]} components over {len(recs)} records to {args.out}")
    return EXIT_OK


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None


COMMANDS = {"generate": cmd_generate, "reduce": cmd_reduce, "trace-plot": cmd_trace_plot}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"softflat: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IngestionError as exc:
        print(f"softflat: input error: {exc}", file=sys.stderr)
        return EXIT_INGEST
    except DivergenceError as exc:
        print(f"softflat: {exc}", file=sys.stderr)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
