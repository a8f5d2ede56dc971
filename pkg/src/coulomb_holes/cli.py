"""Command-line front end.

    python3 -m coulomb_holes constant --potential ginibre --region disk:a=0.5 --beta 2
    python3 -m coulomb_holes series --family T --v 0 --alpha 1.7
    python3 -m coulomb_holes verify --potential ml:b=2 --region ellipse:a=0.3,c=0.5 --nmax 8
    python3 -m coulomb_holes regression

Exit codes: 0 success, 2 invalid input, 3 a tolerance was not met.
"""

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, fields
from importlib import resources

import numpy as np

from . import balayage as bal
from . import constants as cst
from .identities import T_direct, T_recursive, d_coeffs
from .model import (
    Annulus, Cardioid, Disk, DiskComplement, Ellipse, EllipseComplement, EllipticGinibre,
    EquilateralTriangle, Ginibre, InvalidRegion, MittagLeffler, Rectangle, Sector, Spherical,
    Square,
)
from .oracle import FeketeConfig, QuadratureError, fekete_minimize, verify_moments
from .specialfn import DomainError

EXIT_OK, EXIT_INVALID, EXIT_TOLERANCE = 0, 2, 3


class ValidationError(ValueError):
    pass


class ToleranceFailure(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# potential / region specs
# ---------------------------------------------------------------------------

POTENTIALS = {
    "ginibre": ((), lambda: Ginibre()),
    "ml": (("b",), lambda b: MittagLeffler(b)),
    "mittag-leffler": (("b",), lambda b: MittagLeffler(b)),
    "eg": (("tau",), lambda tau: EllipticGinibre(tau)),
    "elliptic-ginibre": (("tau",), lambda tau: EllipticGinibre(tau)),
    "spherical": ((), lambda: Spherical()),
}

_C = lambda d: complex(d.get("x0", 0.0), d.get("y0", 0.0))
REGIONS = {
    "disk": (("a",), ("x0", "y0"), lambda d: Disk(d["a"], _C(d))),
    "annulus": (("rho1", "rho2"), (), lambda d: Annulus(d["rho1"], d["rho2"])),
    "disk-complement": (("a",), ("x0", "y0"), lambda d: DiskComplement(d["a"], _C(d))),
    "sector": (("a", "p"), ("x0", "y0", "rotation"),
               lambda d: Sector(d["a"], d["p"], _C(d), d.get("rotation", 0.0))),
    "ellipse": (("a", "c"), ("x0", "y0", "rotation"),
                lambda d: Ellipse(d["a"], d["c"], _C(d), d.get("rotation", 0.0))),
    "ellipse-complement": (("a", "c"), (), lambda d: EllipseComplement(d["a"], d["c"])),
    "rectangle": (("a1", "a2", "c1", "c2"), (), lambda d: Rectangle(d["a1"], d["a2"], d["c1"], d["c2"])),
    "square": (("c",), ("x0", "y0"), lambda d: Square(d["c"], _C(d))),
    "triangle": (("a",), ("x0", "y0", "rotation"),
                 lambda d: EquilateralTriangle(d["a"], _C(d), d.get("rotation", 0.0))),
    "cardioid": (("a", "c"), ("x0", "y0", "rotation"),
                 lambda d: Cardioid(d["a"], d["c"], _C(d), d.get("rotation", 0.0))),
}


def parse_mini(text):
    """'name:key=val,key=val' -> {'name': name, key: float, ...}"""
    name, _, rest = text.strip().partition(":")
    out = {"name": name.strip().lower()}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        k, eq, v = item.partition("=")
        if not eq:
            raise ValidationError(f"expected key=value, got {item!r}")
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise ValidationError(f"{k.strip()} must be a number, got {v!r}") from None
    return out


def _check_keys(d, required, optional, what):
    extra = set(d) - {"name"} - set(required) - set(optional)
    missing = [k for k in required if k not in d]
    if extra:
        raise ValidationError(f"unknown {what} field(s) {sorted(extra)} for {d['name']}")
    if missing:
        raise ValidationError(f"{what} {d['name']} needs {missing}")


def build_potential(d):
    if d is None:
        raise ValidationError("a potential is required")
    if d.get("name") not in POTENTIALS:
        raise ValidationError(f"unknown potential {d.get('name')!r}; known: {sorted(POTENTIALS)}")
    keys, make = POTENTIALS[d["name"]]
    _check_keys(d, keys, (), "potential")
    return make(*(d[k] for k in keys))


def build_region(d):
    if d is None:
        return None
    if d.get("name") not in REGIONS:
        raise ValidationError(f"unknown region {d.get('name')!r}; known: {sorted(REGIONS)}")
    req, opt, make = REGIONS[d["name"]]
    _check_keys(d, req, opt, "region")
    return make(d)


# ---------------------------------------------------------------------------
# job spec
# ---------------------------------------------------------------------------

COMMANDS = ("constant", "density", "verify", "fekete", "series", "regression")


@dataclass
class JobSpec:
    command: str
    potential: dict = None
    region: dict = None
    beta: float = 2.0
    out: str = None
    tol: float = None
    seed: int = 0
    nmax: int = 8
    sweep: str = None
    format: str = "json"
    family: str = "T"
    v: list = None
    alpha: list = None
    samples: int = 64
    n_points: int = 256
    max_iter: int = 2000
    step: float = 0.05
    matrix: str = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise ValidationError("format must be json or csv")
        if not (isinstance(self.beta, (int, float)) and self.beta > 0):
            raise ValidationError("beta must be positive")
        if self.tol is not None and not self.tol > 0:
            raise ValidationError("tol must be positive")
        if self.command in ("constant", "density", "verify", "fekete"):
            build_potential(self.potential)
        if self.command in ("constant", "density", "verify"):
            if self.region is None:
                raise ValidationError(f"{self.command} needs a region")
            build_region(self.region)
        return self

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ValidationError(f"unknown JobSpec field(s) {sorted(extra)}")
        if "command" not in d:
            raise ValidationError("JobSpec needs a command")
        return cls(**d).validate()

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"bad JSON spec: {e}") from None
        if not isinstance(d, dict):
            raise ValidationError("a JSON spec must be an object")
        return cls.from_dict(d)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def fmt(x):
    return format(float(x), ".17g")


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)) or obj is None or isinstance(obj, str):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [_Num(obj.real), _Num(obj.imag)]
    if isinstance(obj, (float, np.floating)):
        return _Num(obj)
    return str(obj)


class _Num(float):
    pass


def dumps(obj):
    """JSON with every float at 17 significant digits (nan/inf as null)."""
    def enc(o, ind=""):
        nxt = ind + "  "
        if isinstance(o, _Num):
            return fmt(o) if math.isfinite(o) else "null"
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f'{nxt}{json.dumps(k)}: {enc(v, nxt)}' for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + ind + "}"
        if isinstance(o, list):
            if all(isinstance(v, _Num) for v in o) and len(o) <= 4:
                return "[" + ", ".join(enc(v) for v in o) + "]"
            if not o:
                return "[]"
            return "[\n" + ",\n".join(nxt + enc(v, nxt) for v in o) + "\n" + ind + "]"
        return json.dumps(o)
    return enc(_to_jsonable(obj)) + "\n"


def csv_text(header, rows, preamble=None):
    buf = io.StringIO()
    if preamble is not None:
        buf.write("# " + json.dumps(json.loads(dumps(preamble))) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def emit(spec, text, stdout):
    if spec.out:
        write_atomic(spec.out, text)
    else:
        stdout.write(text)


def workers():
    try:
        return max(1, int(os.environ.get("COULOMB_HOLE_THREADS", "1")))
    except ValueError:
        raise ValidationError("COULOMB_HOLE_THREADS must be an integer") from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _parse_sweep(text):
    m = re.fullmatch(r"\s*(\w+)\s*=\s*([^:]+):([^:]+):(\d+)\s*", text or "")
    if not m:
        raise ValidationError("--sweep wants key=start:stop:count")
    key, lo, hi, n = m.group(1), float(m.group(2)), float(m.group(3)), int(m.group(4))
    if n < 1:
        raise ValidationError("sweep count must be positive")
    return key, np.linspace(lo, hi, n)


def compute_constant(spec):
    pot, region = build_potential(spec.potential), build_region(spec.region)
    h = cst.hole_constant(pot, region, spec.beta)
    out = h.as_dict()
    if spec.tol is not None and h.method != "generic-quadrature":
        g = cst.c_generic(pot, region, spec.beta)
        rel = abs(g.C - h.C) / max(abs(h.C), 1e-300)
        out["generic_C"], out["generic_rel_diff"] = g.C, rel
        if rel > spec.tol:
            raise ToleranceFailure(f"closed form and generic quadrature differ by {rel:.3e} > {spec.tol}")
    return out


def cmd_constant(spec, stdout):
    if not spec.sweep:
        emit(spec, dumps(compute_constant(spec)), stdout)
        return EXIT_OK
    key, grid = _parse_sweep(spec.sweep)
    if key not in spec.region and key not in REGIONS[spec.region["name"]][1] and key != "beta":
        raise ValidationError(f"cannot sweep {key!r} for region {spec.region['name']}")

    def one(x):
        s = JobSpec(**{**asdict(spec), "sweep": None})
        if key == "beta":
            s.beta = float(x)
        else:
            s.region = {**spec.region, key: float(x)}
        try:
            d = compute_constant(s)
            return [float(x), d["C"], d["method"], ""]
        except (InvalidRegion, ValueError) as e:
            return [float(x), float("nan"), "", str(e)]

    with ThreadPoolExecutor(workers()) as ex:
        rows = list(ex.map(one, grid))
    if spec.format == "csv":
        emit(spec, csv_text([key, "C", "method", "error"], rows), stdout)
    else:
        emit(spec, dumps([dict(zip([key, "C", "method", "error"], r)) for r in rows]), stdout)
    return EXIT_OK


def cmd_density(spec, stdout):
    pot, region = build_potential(spec.potential), build_region(spec.region)
    nu = bal.balayage(pot, region)
    rows = []
    for seg in nu.segments:
        ch = seg.chart
        t = ch.t0 + (ch.t1 - ch.t0) * (np.arange(spec.samples) + 0.5) / spec.samples
        z = np.asarray(ch.point(t), dtype=complex)
        dens = np.broadcast_to(np.asarray(seg.density(t), dtype=float), t.shape)
        rows += [[ch.name, ti, zi.real, zi.imag, di, ch.kind] for ti, zi, di in zip(t, z, dens)]
    meta = {k: v for k, v in nu.meta.items() if isinstance(v, (int, float, str, tuple, list))}
    header = {"total_mass": nu.total_mass, "potential": spec.potential, "region": spec.region,
              "samples_per_chart": spec.samples, "truncation": meta}
    cols = ["chart_id", "t", "x", "y", "density", "measure_kind"]
    if spec.format == "json":
        emit(spec, dumps({"header": header, "rows": [dict(zip(cols, r)) for r in rows]}), stdout)
    else:
        emit(spec, csv_text(cols, rows, header), stdout)
    return EXIT_OK


def cmd_verify(spec, stdout):
    pot, region = build_potential(spec.potential), build_region(spec.region)
    nu = bal.balayage(pot, region)
    c_u = None if region.bounded else cst.c_U_mu(pot, region)
    rep = verify_moments(pot, region, nu, spec.nmax, c_u)
    tol = spec.tol if spec.tol is not None else (1e-6 if region.bounded else 1e-5)
    out = {**rep.as_dict(), "tol": tol, "passed": rep.max_abs_residual <= tol}
    emit(spec, dumps(out), stdout)
    if not out["passed"]:
        raise ToleranceFailure(f"max moment residual {rep.max_abs_residual:.3e} > {tol}")
    return EXIT_OK


def cmd_fekete(spec, stdout):
    pot, region = build_potential(spec.potential), build_region(spec.region)
    cfg = FeketeConfig(spec.n_points, spec.max_iter, spec.step, spec.seed)
    cloud = fekete_minimize(pot, region, cfg)
    side = {**cloud.as_dict(), "seed": spec.seed}
    rows = [[z.real, z.imag] for z in cloud.points]
    if spec.out:
        write_atomic(spec.out, csv_text(["x", "y"], rows))
        write_atomic(spec.out + ".json", dumps(side))
    else:
        stdout.write(csv_text(["x", "y"], rows, side))
    return EXIT_OK


def _floats(xs, default):
    return [float(x) for x in (xs if xs is not None else default)]


def series_rows(spec):
    if spec.family == "T":
        rows = []
        for v in _floats(spec.v, [0, 2, 4, 6, 8, 10]):
            for a in _floats(spec.alpha, [0.5, 1, 2, 3]):
                d = T_direct(v, a).value
                d = d.real if isinstance(d, complex) and v % 2 == 0 else d
                r = T_recursive(int(v), a) if v.is_integer() and int(v) % 2 == 0 else float("nan")
                rows.append([v, a, d, r, abs(d - r) if r == r else float("nan")])
        return ["v", "alpha", "direct", "recursive", "abs_diff"], rows
    if spec.family == "d":
        rows = []
        for b in [int(x) for x in _floats(spec.v, [1, 2, 3, 4])]:
            for k in range(b):
                for ell, val in enumerate(d_coeffs(b, k), start=k):
                    rows.append([b, k, ell, val])
        return ["b", "k", "l", "d"], rows
    raise ValidationError("family must be T or d")


def cmd_series(spec, stdout):
    cols, rows = series_rows(spec)
    if spec.format == "json":
        emit(spec, dumps([dict(zip(cols, r)) for r in rows]), stdout)
    else:
        emit(spec, csv_text(cols, rows), stdout)
    tol = spec.tol if spec.tol is not None else 1e-11
    if spec.family == "T" and any(r[4] > tol for r in rows if r[4] == r[4]):
        raise ToleranceFailure(f"direct and recursive T disagree beyond {tol}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# regression matrix
# ---------------------------------------------------------------------------

def load_matrix(path=None):
    if path is None:
        text = resources.files(__package__).joinpath("regression_matrix.json").read_text()
    else:
        with open(path) as f:
            text = f.read()
    rows = json.loads(text)
    if not isinstance(rows, list):
        raise ValidationError("a regression matrix is a JSON list of rows")
    return rows


def _eval_expected(x):
    # expected values may be written as arithmetic in pi, log, sqrt
    if isinstance(x, (int, float)):
        return float(x)
    env = {"pi": math.pi, "log": math.log, "sqrt": math.sqrt, "__builtins__": {}}
    if not re.fullmatch(r"[0-9eE+\-*/(). a-z]*", x):
        raise ValidationError(f"bad expression {x!r}")
    return float(eval(x, env))


def run_row(row):
    known = {"name", "job", "quantity", "expected", "scale", "rel_tol", "abs_tol"}
    if set(row) - known or "job" not in row or "expected" not in row:
        raise ValidationError(f"bad regression row {row.get('name')!r}")
    job = JobSpec.from_dict(row["job"])
    if job.command == "constant":
        value = compute_constant(job)[row.get("quantity", "C")]
    elif job.command == "series":
        cols, rows = series_rows(job)
        value = rows[0][cols.index(row.get("quantity", "recursive"))]
    else:
        raise ValidationError("regression rows run constant or series jobs")
    value /= _eval_expected(row.get("scale", 1.0))
    exp = _eval_expected(row["expected"])
    dev = abs(value - exp)
    if "abs_tol" in row:
        ok = dev <= row["abs_tol"]
    else:
        ok = dev <= row.get("rel_tol", 1e-10) * abs(exp)
    return {"name": row.get("name", ""), "measured": value, "expected": exp, "deviation": dev, "passed": ok}


def cmd_regression(spec, stdout):
    rows = load_matrix(spec.matrix)

    def safe(row):
        try:
            return run_row(row)
        except (ValidationError, InvalidRegion, ValueError, QuadratureError) as e:
            return {"name": row.get("name", ""), "measured": float("nan"), "expected": float("nan"),
                    "deviation": float("nan"), "passed": False, "error": str(e)}

    with ThreadPoolExecutor(workers()) as ex:
        results = list(ex.map(safe, rows))
    cols = ["name", "measured", "expected", "deviation", "passed"]
    if spec.format == "csv":
        emit(spec, csv_text(cols, [[r[c] for c in cols] for r in results]), stdout)
    else:
        emit(spec, dumps({"rows": results, "n_rows": len(results),
                          "n_failed": sum(not r["passed"] for r in results)}), stdout)
    if not all(r["passed"] for r in results):
        raise ToleranceFailure(f"{sum(not r['passed'] for r in results)} regression row(s) failed")
    return EXIT_OK


HANDLERS = {"constant": cmd_constant, "density": cmd_density, "verify": cmd_verify,
            "fekete": cmd_fekete, "series": cmd_series, "regression": cmd_regression}


# ---------------------------------------------------------------------------
# argv
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message)


def make_parser():
    p = _Parser(prog="coulomb-holes", description="Hole constants and balayage measures for 2D Coulomb gases.")
    sub = p.add_subparsers(dest="command", required=True)
    common = _Parser(add_help=False)
    common.add_argument("--spec", help="JSON JobSpec file; flags given on the command line override it")
    common.add_argument("--potential", help="e.g. ginibre, ml:b=2, eg:tau=0.3, spherical")
    common.add_argument("--region", help="e.g. disk:a=0.5, sector:a=0.4,p=3, rectangle:a1=-.2,a2=.2,c1=-.1,c2=.1")
    common.add_argument("--beta", type=float)
    common.add_argument("--out")
    common.add_argument("--tol", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--nmax", type=int)
    common.add_argument("--format", choices=("json", "csv"))
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "constant":
            sp.add_argument("--sweep", help="key=start:stop:count over a region parameter or beta")
        if name == "density":
            sp.add_argument("--samples", type=int)
        if name == "fekete":
            sp.add_argument("--n-points", dest="n_points", type=int)
            sp.add_argument("--max-iter", dest="max_iter", type=int)
            sp.add_argument("--step", type=float)
        if name == "series":
            sp.add_argument("--family", choices=("T", "d"))
            sp.add_argument("--v", type=float, nargs="+")
            sp.add_argument("--alpha", type=float, nargs="+")
        if name == "regression":
            sp.add_argument("--matrix", help="JSON list of rows; defaults to the built-in matrix")
    return p


def spec_from_argv(argv):
    ns = make_parser().parse_args(argv)
    base = {}
    if ns.spec:
        try:
            with open(ns.spec) as f:
                base = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"cannot read spec {ns.spec}: {e}") from None
        if not isinstance(base, dict):
            raise ValidationError("a JSON spec must be an object")
    flags = {k: v for k, v in vars(ns).items() if v is not None and k != "spec"}
    for key in ("potential", "region"):
        if key in flags:
            flags[key] = None if flags[key] == "none" else parse_mini(flags[key])
    if "command" in base and base["command"] != flags["command"]:
        raise ValidationError("spec command and subcommand differ")
    return JobSpec.from_dict({**base, **flags})


def run(argv=None, stdout=None, stderr=None):
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    try:
        spec = spec_from_argv(argv if argv is not None else sys.argv[1:])
        return HANDLERS[spec.command](spec, stdout)
    except ToleranceFailure as e:
        print(f"tolerance failure: {e}", file=stderr)
        return EXIT_TOLERANCE
    except QuadratureError as e:
        print(f"quadrature failure: {e}", file=stderr)
        return EXIT_TOLERANCE
    except (ValidationError, InvalidRegion, DomainError, ValueError, TypeError) as e:
        print(f"invalid input: {e}", file=stderr)
        return EXIT_INVALID


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
