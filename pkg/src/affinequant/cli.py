"""Command-line surface: expression parsing, configuration, datasets.

Subcommands
-----------
repr          matrix of the group representation at one group element
trace-u       regularized trace of the representation vs its closed form
constants     derived constants of a weight function
quantize      operator matrix of a parsed observable
wigner        quasi-distribution of a half-oscillator eigenstate
acs-density   coherent-state density of a half-oscillator eigenstate
lower-symbol  semi-classical portrait of an observable
halfosc       figure bundle for a half-oscillator eigenstate
verify        run the end-to-end check suite

Configuration can come from a JSON file (``--config``); command-line
flags override file values, which override built-in defaults.  Every
numeric CSV value is printed with 17 significant digits, so repeated
runs with identical configuration emit byte-identical files.  Exit
status: 0 on success, 1 on computation failure, 2 on usage or
configuration errors; ``--json-errors`` mirrors failures as one-line
JSON on stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__, acceptance, halfosc, phase_space, quantize, weights
from .affine_group import GroupElement
from .errors import (AffineQuantError, ConfigurationError,
                     ObservableSyntaxError)
from .representation import (BasisSpec, laguerre_ground, matrix_u, trace_u,
                             trace_u_closed, trace_u_series_limit)

__all__ = ["parse_observable", "RunConfig", "main"]

MAX_MOMENTUM_POWER = 8

_NUMBER_RE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")


# ---------------------------------------------------------------------------
# Observable expressions


class _Scanner:
    """Cursor over the raw expression; columns are 1-based and refer to
    the original text, so whitespace skipping never shifts reported
    positions."""

    def __init__(self, text):
        self.text = text
        self.i = 0
        self.n = len(text)

    def skip_ws(self):
        while self.i < self.n and self.text[self.i].isspace():
            self.i += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.i] if self.i < self.n else ""

    @property
    def column(self):
        return self.i + 1

    def fail(self, message, column=None):
        raise ObservableSyntaxError(
            f"{message} at column {column or self.column}",
            position=column or self.column)

    def read_number(self, what="a number"):
        self.skip_ws()
        m = _NUMBER_RE.match(self.text, self.i)
        if m is None:
            self.fail(f"expected {what}")
        self.i = m.end()
        return float(m.group()), m.start() + 1


def _parse_term(sc):
    coeff = 1.0
    beta = 0.0
    power = 0
    seen_q = seen_p = False
    while True:
        ch = sc.peek()
        just_read_q = False
        if ch and (ch.isdigit() or ch == "."):
            value, _ = sc.read_number()
            coeff *= value
        elif ch == "q":
            if seen_q:
                sc.fail("duplicate q factor")
            seen_q = True
            just_read_q = True
            sc.i += 1
            beta = 1.0
            if sc.peek() == "^":
                sc.i += 1
                beta, _ = sc.read_number("an exponent")
                just_read_q = False
        elif ch == "p":
            if seen_p:
                sc.fail("duplicate p factor")
            seen_p = True
            sc.i += 1
            power = 1
            if sc.peek() == "^":
                sc.i += 1
                value, col = sc.read_number("an exponent")
                if value < 0 or value != int(value):
                    sc.fail("momentum power must be a nonnegative integer",
                            col)
                if value > MAX_MOMENTUM_POWER:
                    sc.fail(f"momentum power {int(value)} exceeds the "
                            f"supported maximum {MAX_MOMENTUM_POWER}", col)
                power = int(value)
        else:
            sc.fail("expected a number, q, or p")
        nxt = sc.peek()
        if nxt == "*":
            sc.i += 1
            continue
        if nxt == "p" and just_read_q:
            continue  # the qp juxtaposition
        if nxt in ("", "+", "-"):
            return coeff, beta if seen_q else 0.0, power, seen_q, seen_p
        sc.fail("expected '*', '+', '-', or end of expression")


def parse_observable(text):
    """Parse ``c*q^B*p^N`` terms joined by + or - into an Observable.

    Whitespace is ignored everywhere; B is a real literal, N a
    nonnegative integer at most 8.  The bare expression ``qp`` (or
    ``q*p``) maps to the dilation observable and a bare ``p^N`` to the
    momentum power; everything else becomes a monomial sum.  Syntax
    errors carry the 1-based column of the offending character.
    """
    if text is None or not text.strip():
        raise ObservableSyntaxError("empty observable expression", position=1)
    sc = _Scanner(text)
    terms = []
    sign = -1.0 if sc.peek() == "-" else 1.0
    if sc.peek() in ("+", "-"):
        sc.i += 1
    while True:
        coeff, beta, power, seen_q, seen_p = _parse_term(sc)
        terms.append((sign * coeff, beta, power, seen_q, seen_p))
        ch = sc.peek()
        if ch == "":
            break
        sign = 1.0 if ch == "+" else -1.0
        sc.i += 1
        if sc.peek() == "":
            sc.fail("expected a term")
    if len(terms) == 1:
        coeff, beta, power, seen_q, seen_p = terms[0]
        if coeff == 1.0 and seen_q and seen_p and beta == 1.0 and power == 1:
            return quantize.Observable.dilation()
        if coeff == 1.0 and seen_p and not seen_q:
            return quantize.Observable.momentum_power(power)
    return quantize.Observable.monomial_sum(
        [(c, b, n) for c, b, n, _, _ in terms])


# ---------------------------------------------------------------------------
# Configuration


_DEFAULTS = {
    "alpha": 2.0,
    "n_max": 40,
    "weight": "aw",
    "t": 0.5,
    "f": None,
    "tol": None,
    "out": "affinequant-out",
    "qmin": 0.05, "qmax": 8.0, "nq": 120,
    "pmin": -8.0, "pmax": 8.0, "np": 160,
}

_CONFIG_KEYS = set(_DEFAULTS) | {"grid"}


@dataclass
class RunConfig:
    """Effective run configuration after merging defaults, file, flags."""

    alpha: float = 2.0
    n_max: int = 40
    weight: str = "aw"
    t: float = 0.5
    f: str | None = None
    tol: float | None = None
    out: str = "affinequant-out"
    qmin: float = 0.05
    qmax: float = 8.0
    nq: int = 120
    pmin: float = -8.0
    pmax: float = 8.0
    np: int = 160
    json_errors: bool = False
    sources: dict = field(default_factory=dict)

    def make_weight(self):
        if self.weight == "aw":
            return weights.builtin("aw")
        if self.weight == "acs":
            return weights.builtin("acs", alpha=self.alpha)
        if self.weight == "thermal":
            return weights.builtin("thermal", alpha=self.alpha, t=self.t)
        raise ConfigurationError(
            f"unknown weight kind {self.weight!r}; choose aw, acs, thermal")

    def make_basis(self):
        return BasisSpec(alpha=self.alpha, n_max=self.n_max)

    def make_grid(self):
        return phase_space.PhaseSpaceGrid(
            q_nodes=np.geomspace(self.qmin, self.qmax, self.nq),
            p_nodes=np.linspace(self.pmin, self.pmax, self.np))

    def public_dict(self):
        return {
            "alpha": self.alpha, "n_max": self.n_max, "weight": self.weight,
            "t": self.t, "f": self.f, "tol": self.tol, "out": self.out,
            "grid": {"qmin": self.qmin, "qmax": self.qmax, "nq": self.nq,
                     "pmin": self.pmin, "pmax": self.pmax, "np": self.np},
        }


def _load_config_file(path):
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config file is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigurationError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigurationError(
            f"unknown config keys {sorted(unknown)}; "
            f"allowed: {sorted(_CONFIG_KEYS)}")
    grid = data.pop("grid", {})
    if not isinstance(grid, dict):
        raise ConfigurationError("config key 'grid' must hold an object")
    unknown = set(grid) - {"qmin", "qmax", "nq", "pmin", "pmax", "np"}
    if unknown:
        raise ConfigurationError(f"unknown grid keys {sorted(unknown)}")
    data.update(grid)
    return data


def _build_config(args):
    values = dict(_DEFAULTS)
    sources = {k: "default" for k in values}
    if getattr(args, "config", None):
        for k, v in _load_config_file(args.config).items():
            values[k] = v
            sources[k] = "config"
    for k in _DEFAULTS:
        flag = getattr(args, k.replace("-", "_"), None)
        if flag is not None:
            values[k] = flag
            sources[k] = "flag"
    values["n_max"] = int(values["n_max"])
    values["nq"] = int(values["nq"])
    values["np"] = int(values["np"])
    return RunConfig(json_errors=bool(getattr(args, "json_errors", False)),
                     sources=sources, **values)


# ---------------------------------------------------------------------------
# Output helpers


def _fmt(x):
    return "%.17g" % float(x)


def _sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _write_lines(path, lines):
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def _write_matrix_csv(path, entries):
    lines = ["m,n,re,im"]
    for m in range(entries.shape[0]):
        for n in range(entries.shape[1]):
            z = entries[m, n]
            lines.append("%d,%d,%s,%s" % (m, n, _fmt(z.real), _fmt(z.imag)))
    _write_lines(path, lines)


def _write_manifest(out_dir, name, command, cfg, tolerances, files,
                    extra=None):
    manifest = {
        "command": command,
        "version": __version__,
        "config": cfg.public_dict(),
        "tolerances": tolerances,
        "files": {os.path.basename(p): _sha256(p) for p in files},
    }
    if extra:
        manifest.update(extra)
    path = os.path.join(out_dir, name)
    with open(path, "w") as f:
        json.dump(manifest, f, indent=1, sort_keys=True)
        f.write("\n")
    return path


def _complex_dict(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_repr(cfg, args):
    g = GroupElement(q=args.q, p=args.p)
    mat = matrix_u(cfg.make_basis(), g)
    os.makedirs(cfg.out, exist_ok=True)
    csv_path = os.path.join(cfg.out, "repr_matrix.csv")
    _write_matrix_csv(csv_path, mat.entries)
    tol = {"tol": cfg.tol}
    manifest = _write_manifest(
        cfg.out, "repr_manifest.json", "repr", cfg, tol, [csv_path],
        extra={"g": {"q": args.q, "p": args.p},
               "border_norm": mat.border_norm()})
    print(f"wrote {csv_path} and {manifest}")
    return 0


def _cmd_trace_u(cfg, args):
    g = GroupElement(q=args.q, p=args.p)
    basis = cfg.make_basis()
    tol = cfg.tol if cfg.tol is not None else 1e-5
    raw = complex(trace_u(basis, g, tol=tol))
    # The diagonal series limit differs from the kernel trace by the
    # known edge factor max(q,1/q)^(-alpha/2); divide it back out so the
    # printed value is comparable with the closed form.
    deficit = trace_u_series_limit(basis, g) / trace_u_closed(g)
    corrected = raw.real / deficit
    closed = trace_u_closed(g)
    print(f"series (Abel)              {_fmt(raw.real)}")
    print(f"edge-corrected             {_fmt(corrected)}")
    print(f"closed form sqrt(q)/|q-1|  {_fmt(closed)}")
    if args.out is not None:
        os.makedirs(cfg.out, exist_ok=True)
        path = os.path.join(cfg.out, "trace_u.json")
        with open(path, "w") as f:
            json.dump({"command": "trace-u", "config": cfg.public_dict(),
                       "tolerances": {"tol": tol},
                       "g": {"q": args.q, "p": args.p},
                       "series": _complex_dict(raw),
                       "edge_corrected": corrected,
                       "closed_form": closed},
                      f, indent=1, sort_keys=True)
            f.write("\n")
        print(f"wrote {path}")
    return 0


def _cmd_constants(cfg, args):
    w = cfg.make_weight()
    betas = sorted(set([-1.0, 0.0, 1.0] + [float(b) for b in args.beta]))
    consts = weights.compute_constants(w, betas=betas)
    trace = weights.trace_condition(w)
    payload = {
        "command": "constants",
        "config": cfg.public_dict(),
        "tolerances": {"tol": cfg.tol},
        "weight": w.label,
        "c_M": consts.c_M,
        "omega_deriv1": _complex_dict(consts.omega_deriv1),
        "omega_deriv2": _complex_dict(consts.omega_deriv2),
        "d_beta": {str(b): _complex_dict(v)
                   for b, v in sorted(consts.d_values.items())},
        "divergent_betas": {str(b): msg
                            for b, msg in sorted(consts.divergence.items())},
        "trace": {"fourier_route": _complex_dict(trace.fourier_route),
                  "principal_route": _complex_dict(trace.principal_route),
                  "discrepancy": trace.discrepancy},
    }
    text = json.dumps(payload, indent=1, sort_keys=True)
    if args.out is not None:
        os.makedirs(cfg.out, exist_ok=True)
        path = os.path.join(cfg.out, "constants.json")
        with open(path, "w") as f:
            f.write(text + "\n")
        print(f"wrote {path}")
    else:
        print(text)
    return 0


def _serializable_closed_form(closed_form):
    out = {}
    for key, value in closed_form.items():
        if callable(value):
            continue
        if key == "terms":
            out[key] = [{"coeff": _complex_dict(c), "xpow": b, "k": k}
                        for c, b, k in value]
        elif isinstance(value, complex):
            out[key] = _complex_dict(value)
        else:
            out[key] = value
    return out


def _require_f(cfg):
    if not cfg.f:
        raise ConfigurationError(
            "this subcommand needs an observable: pass --f <expr>")
    return parse_observable(cfg.f)


def _cmd_quantize(cfg, args):
    obs = _require_f(cfg)
    w = cfg.make_weight()
    basis = cfg.make_basis()
    op = quantize.quantize(w, obs, basis)
    os.makedirs(cfg.out, exist_ok=True)
    csv_path = os.path.join(cfg.out, "operator_matrix.csv")
    _write_matrix_csv(csv_path, op.matrix.entries)
    extra = {"observable": cfg.f,
             "closed_form": _serializable_closed_form(op.closed_form),
             "asymmetry": op.matrix.asymmetry(),
             "border_norm": op.matrix.border_norm()}
    if op.series_tail is not None:
        extra["series_tail"] = op.series_tail
    manifest = _write_manifest(cfg.out, "operator_manifest.json", "quantize",
                               cfg, {"tol": cfg.tol}, [csv_path], extra=extra)
    print(f"wrote {csv_path} and {manifest}")
    return 0


def _cmd_wigner(cfg, args):
    phi = halfosc.eigenstate_analytic(args.n).wavefunction
    tol = cfg.tol if cfg.tol is not None else 1e-8
    dist = phase_space.wigner_aw(phi, cfg.make_grid(), tol=tol)
    os.makedirs(cfg.out, exist_ok=True)
    files = dist.write(cfg.out, f"wigner_phi{args.n}",
                       tolerances={"tol": tol})
    manifest = _write_manifest(cfg.out, f"wigner_phi{args.n}_manifest.json",
                               "wigner", cfg, {"tol": tol}, files,
                               extra={"n": args.n})
    print(f"wrote {len(files)} files and {manifest}")
    return 0


def _cmd_acs_density(cfg, args):
    phi = halfosc.eigenstate_analytic(args.n).wavefunction
    fiducial = laguerre_ground(cfg.alpha)
    dist = phase_space.acs_density(phi, fiducial, cfg.make_grid())
    os.makedirs(cfg.out, exist_ok=True)
    files = dist.write(cfg.out, f"acs_density_phi{args.n}",
                       tolerances={"tol": cfg.tol})
    manifest = _write_manifest(
        cfg.out, f"acs_density_phi{args.n}_manifest.json", "acs-density",
        cfg, {"tol": cfg.tol}, files,
        extra={"n": args.n, "fiducial_alpha": cfg.alpha})
    print(f"wrote {len(files)} files and {manifest}")
    return 0


def _cmd_lower_symbol(cfg, args):
    obs = _require_f(cfg)
    w = cfg.make_weight()
    if (args.q is None) != (args.p is None):
        raise ConfigurationError("pass both --q and --p for a point value")
    if args.q is not None:
        value = phase_space.lower_symbol(w, obs, GroupElement(args.q, args.p),
                                         method=args.method)
        print(_fmt(value))
        return 0
    grid = cfg.make_grid()
    lines = ["q,p,value"]
    for q in grid.q_nodes:
        for p in grid.p_nodes:
            value = phase_space.lower_symbol(
                w, obs, GroupElement(float(q), float(p)), method=args.method)
            lines.append("%s,%s,%s" % (_fmt(q), _fmt(p), _fmt(value)))
    os.makedirs(cfg.out, exist_ok=True)
    csv_path = os.path.join(cfg.out, "lower_symbol.csv")
    _write_lines(csv_path, lines)
    manifest = _write_manifest(
        cfg.out, "lower_symbol_manifest.json", "lower-symbol", cfg,
        {"tol": cfg.tol}, [csv_path],
        extra={"observable": cfg.f, "method": args.method})
    print(f"wrote {csv_path} and {manifest}")
    return 0


def _cmd_halfosc(cfg, args):
    members = None
    if args.emit != "all":
        members = {"wigner": ["wigner"], "acs": ["acs_density"],
                   "wavelet": ["wavelet"], "density": ["density"],
                   "reconstructed": ["reconstructed_density"],
                   "momentum": ["momentum_density"]}[args.emit]
    bundle = halfosc.figure_data(args.n, cfg.make_grid())
    manifest = halfosc.write_figure_bundle(
        bundle, cfg.out, tolerances={"tol": cfg.tol}, members=members)
    print(f"wrote bundle for level {args.n}; manifest {manifest}")
    return 0


def _cmd_verify(cfg, args):
    numbers = None
    if args.only:
        try:
            numbers = {int(tok) for tok in args.only.split(",") if tok}
        except ValueError:
            raise ConfigurationError(
                f"--only expects comma-separated integers, got {args.only!r}")
        known = {num for num, _, _ in acceptance.ALL_CHECKS}
        if not numbers or not numbers <= known:
            raise ConfigurationError(
                f"--only entries must be check numbers {sorted(known)}")
    results, ok = acceptance.run_all(numbers=numbers, emit=print)
    print("verify: %d/%d checks passed"
          % (sum(r.passed for r in results), len(results)))
    if args.out is not None:
        os.makedirs(cfg.out, exist_ok=True)
        path = os.path.join(cfg.out, "verify.json")
        with open(path, "w") as f:
            json.dump({"command": "verify", "config": cfg.public_dict(),
                       "tolerances": {"tol": cfg.tol},
                       "passed": ok,
                       "checks": [{"number": r.number, "name": r.name,
                                   "passed": r.passed, "detail": r.detail,
                                   "runtime_s": round(r.runtime, 3)}
                                  for r in results]},
                      f, indent=1, sort_keys=True)
            f.write("\n")
        print(f"wrote {path}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Parser and entry point


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_common(parser):
    parser.add_argument("--config", help="JSON config file; flags override")
    parser.add_argument("--json-errors", action="store_true",
                        help="mirror failures as JSON on stderr")
    parser.add_argument("--alpha", type=float, help="basis/weight exponent")
    parser.add_argument("--n-max", type=int, help="basis truncation size")
    parser.add_argument("--weight", choices=("aw", "acs", "thermal"),
                        help="weight kind")
    parser.add_argument("--t", type=float, help="thermal parameter in [0,1)")
    parser.add_argument("--f", help="observable expression, e.g. '0.5*p^2+0.5*q^2'")
    parser.add_argument("--tol", type=float, help="target tolerance")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--qmin", type=float, help="grid: smallest q")
    parser.add_argument("--qmax", type=float, help="grid: largest q")
    parser.add_argument("--nq", type=int, help="grid: number of q nodes")
    parser.add_argument("--pmin", type=float, help="grid: smallest p")
    parser.add_argument("--pmax", type=float, help="grid: largest p")
    parser.add_argument("--np", type=int, help="grid: number of p nodes")


def _build_parser():
    parser = _Parser(prog="affinequant",
                     description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version",
                        version=f"affinequant {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    sp = sub.add_parser("repr", help="representation matrix at one element")
    _add_common(sp)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--p", type=float, default=0.0)
    sp.set_defaults(runner=_cmd_repr)

    sp = sub.add_parser("trace-u", help="regularized trace vs closed form")
    _add_common(sp)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--p", type=float, default=0.0)
    sp.set_defaults(runner=_cmd_trace_u)

    sp = sub.add_parser("constants", help="derived constants of a weight")
    _add_common(sp)
    sp.add_argument("--beta", type=float, action="append", default=[],
                    help="extra beta values for d_beta (repeatable)")
    sp.set_defaults(runner=_cmd_constants)

    sp = sub.add_parser("quantize", help="operator matrix of an observable")
    _add_common(sp)
    sp.set_defaults(runner=_cmd_quantize)

    sp = sub.add_parser("wigner", help="quasi-distribution of an eigenstate")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=1, help="eigenstate index >= 1")
    sp.set_defaults(runner=_cmd_wigner)

    sp = sub.add_parser("acs-density",
                        help="coherent-state density of an eigenstate")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=1, help="eigenstate index >= 1")
    sp.set_defaults(runner=_cmd_acs_density)

    sp = sub.add_parser("lower-symbol",
                        help="semi-classical portrait of an observable")
    _add_common(sp)
    sp.add_argument("--q", type=float, help="evaluate at one point: q")
    sp.add_argument("--p", type=float, help="evaluate at one point: p")
    sp.add_argument("--method", choices=("closed", "convolution"),
                    default="closed")
    sp.set_defaults(runner=_cmd_lower_symbol)

    sp = sub.add_parser("halfosc", help="figure bundle for an eigenstate")
    _add_common(sp)
    sp.add_argument("--n", type=int, default=1, help="eigenstate index >= 1")
    sp.add_argument("--emit", default="all",
                    choices=("all", "density", "wigner", "acs", "wavelet",
                             "reconstructed", "momentum"))
    sp.set_defaults(runner=_cmd_halfosc)

    sp = sub.add_parser("verify", help="run the end-to-end check suite")
    _add_common(sp)
    sp.add_argument("--only", help="comma-separated check numbers")
    sp.set_defaults(runner=_cmd_verify)

    return parser


def _report_error(exc, code, json_errors):
    if json_errors:
        payload = {"error": type(exc).__name__, "message": str(exc),
                   "exit_code": code}
        position = getattr(exc, "position", None)
        if position is not None:
            payload["position"] = position
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    else:
        print(f"affinequant: error: {exc}", file=sys.stderr)
    return code


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    json_errors = "--json-errors" in argv
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _report_error(exc, 2, json_errors)
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return 2
    try:
        cfg = _build_config(args)
        obs_probe = cfg.f
        if obs_probe is not None:
            parse_observable(obs_probe)  # usage-stage syntax validation
    except (ConfigurationError, ObservableSyntaxError) as exc:
        return _report_error(exc, 2, json_errors)
    try:
        return args.runner(cfg, args)
    except (ConfigurationError, ObservableSyntaxError) as exc:
        return _report_error(exc, 2, json_errors)
    except AffineQuantError as exc:
        return _report_error(exc, 1, json_errors)
    except OSError as exc:
        return _report_error(exc, 1, json_errors)


if __name__ == "__main__":
    sys.exit(main())
