"""Command-line front end: ``drkit build`` and ``drkit verify``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on a
configuration or usage error.  Reports are JSON lines: a config record, one
record per check in suite order, and a summary record.  Timing goes to the
console only, so the same config and seed always give the same report bytes.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import sympy as sp

from . import damek_ricci as dr
from . import einstein as ein
from . import geodesy as geo
from . import octonion as octo
from . import two_stein as ts
from .clifford import IRREDUCIBLE_DIM, build_irreducible, build_module, clifford_residuals
from .errors import ConfigError, DRKitError
from .exact import random_rational, sample_rng, unit_vectors

SUITES = ("clifford", "curvature", "geodesy", "cayley", "einstein", "twostein")
CONFIG_FIELDS = {"type", "m", "mult_plus", "mult_minus", "class", "epsilon"}
PRESETS = {"example33": {"type": "damek_ricci", "m": 6, "mult_plus": 1, "mult_minus": 0}}
DEFAULT_TOL = 1e-9


# -- configuration ----------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    type: str = "damek_ricci"
    m: int = 6
    mult_plus: int = 1
    mult_minus: int = 0
    epsilon: int = 1
    samples: int = 200
    seed: int = 0
    mode: str = "exact"
    tol: float | None = None

    def tolerance(self, default: float = DEFAULT_TOL) -> float:
        return default if self.tol is None else self.tol

    def space(self) -> dr.DRSpace:
        return dr.DRSpace(build_module(self.m, self.mult_plus, self.mult_minus))


def _field(data: dict, name: str, kind, source: str):
    v = data[name]
    if kind is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise ConfigError(f"{source}: field '{name}' must be an integer, got {v!r}")
    if kind is str and not isinstance(v, str):
        raise ConfigError(f"{source}: field '{name}' must be a string, got {v!r}")
    return v


def parse_config(data: dict, source: str = "config") -> dict:
    """Validate a descriptor dict and return the RunConfig fields it sets."""
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: top level must be an object")
    unknown = sorted(set(data) - CONFIG_FIELDS)
    if unknown:
        raise ConfigError(f"{source}: unknown field(s) {', '.join(unknown)}")
    out: dict = {}
    kind = data.get("type", "damek_ricci")
    if kind not in ("damek_ricci", "cayley"):
        raise ConfigError(f"{source}: field 'type' must be 'damek_ricci' or 'cayley', got {kind!r}")
    out["type"] = kind
    if "epsilon" in data:
        eps = _field(data, "epsilon", int, source)
        if eps not in (1, -1):
            raise ConfigError(f"{source}: field 'epsilon' must be 1 or -1")
        out["epsilon"] = eps
    if kind == "cayley":
        return out
    if "m" not in data:
        raise ConfigError(f"{source}: field 'm' is required for a damek_ricci space")
    m = _field(data, "m", int, source)
    if m not in IRREDUCIBLE_DIM:
        raise ConfigError(f"{source}: field 'm' must be in 1..8, got {m}")
    plus = _field(data, "mult_plus", int, source) if "mult_plus" in data else None
    minus = _field(data, "mult_minus", int, source) if "mult_minus" in data else 0
    if "class" in data:  # a single irreducible of the given class
        cls = _field(data, "class", int, source)
        if cls not in (1, -1):
            raise ConfigError(f"{source}: field 'class' must be 1 or -1")
        if plus is not None or "mult_minus" in data:
            raise ConfigError(f"{source}: give either 'class' or multiplicities, not both")
        plus, minus = (1, 0) if cls == 1 else (0, 1)
    if plus is None:
        plus = 1
    if plus < 0 or minus < 0 or plus + minus == 0:
        raise ConfigError(f"{source}: multiplicities must be non-negative with a positive sum")
    if minus and m % 4 != 3:
        raise ConfigError(f"{source}: field 'mult_minus' must be 0 for m = {m}")
    out.update(m=m, mult_plus=plus, mult_minus=minus)
    return out


def load_config(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_config(data, path)


# -- records ----------------------------------------------------------------------

def format_number(x):
    """JSON form of a number; exact algebraic values carry a (rational, radical, coefficient) triple."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, (int, np.integer)):
        x = Fraction(int(x))
    if isinstance(x, sp.Basic):
        a, d, b = ein.algebraic_triple(x)
        return {"triple": [str(a), d, str(b)], "decimal": f"{float(sp.N(x, 30)):.17g}"}
    if isinstance(x, Fraction):
        return {"triple": [str(x), 1, "0"], "decimal": f"{float(x):.17g}"}
    return {"decimal": f"{float(x):.17g}"}


@dataclass
class Check:
    name: str
    passed: bool
    residual: object
    identity: str
    value: object = None

    def record(self, suite: str) -> dict:
        return {"suite": suite, "name": self.name, "status": "pass" if self.passed else "fail",
                "residual": format_number(self.residual), "identity": self.identity,
                "value": format_number(self.value)}


def _below(x, tol) -> bool:
    if isinstance(x, Fraction) or isinstance(x, int):
        return x == 0
    if isinstance(x, sp.Basic):
        return sp.simplify(x) == 0
    return float(x) <= tol


def _check(name, residual, identity, tol, value=None) -> Check:
    return Check(name, _below(residual, tol), residual, identity, value)


@dataclass
class Report:
    suite: str
    config: dict
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [json.dumps({"config": self.config}, sort_keys=True)]
        out += [json.dumps(c.record(self.suite), sort_keys=True) for c in self.checks]
        npass = sum(c.passed for c in self.checks)
        out.append(json.dumps({"summary": {"suite": self.suite, "passed": npass,
                                           "failed": len(self.checks) - npass}}, sort_keys=True))
        return out


# -- suites -------------------------------------------------------------------------

def _bianchi_vectors(rng, dim, exact):
    """Three rational test vectors, cast to float in float mode."""
    vs = [random_rational(rng, dim) for _ in range(3)]
    return vs if exact else [v.astype(float) for v in vs]


def suite_clifford(cfg: RunConfig) -> list[Check]:
    reps = [(f"irreducible_m{m}", build_irreducible(m)) for m in IRREDUCIBLE_DIM]
    reps += [(f"irreducible_m{m}_minus", build_irreducible(m, -1)) for m in (3, 7)]
    if cfg.type == "damek_ricci":
        reps.append(("configured_module", build_module(cfg.m, cfg.mult_plus, cfg.mult_minus)))
    out = []
    for name, rep in reps:
        res = clifford_residuals(rep)
        out.append(_check(name, Fraction(sum(res.values())),
                          "J_i^2 = -id, J_i J_j + J_j J_i = 0, J_i skew, dim_v from the table",
                          0, value=rep.dim_v))
    return out


def suite_curvature(cfg: RunConfig) -> list[Check]:
    space = cfg.space()
    tol = cfg.tolerance()
    spec = dr.jacobi_spectra(space, cfg.samples, cfg.seed)
    excess = max(float(spec.max()), float(-1 - spec.min()), 0.0)
    probe = dr.two_stein_probe(space, cfg.samples, cfg.seed)
    c1 = dr.einstein_c1(space)
    rng = sample_rng(cfg.seed, 0)
    X, Y, Z = _bianchi_vectors(rng, space.dim, cfg.mode == "exact")
    bianchi = dr.curvature(space, X, Y, Z) + dr.curvature(space, Y, Z, X) + dr.curvature(space, Z, X, Y)
    return [
        _check("jacobi_range", excess, "Jacobi eigenvalues lie in [-1, 0]", tol),
        _check("two_stein", probe.maxdev, "Tr R_T and Tr R_T^2 constant on unit T", tol,
               value=probe.c2),
        _check("c1_trace", abs(probe.c1 - float(c1)), "Tr R_T = -(dim_v/4 + m) |T|^2", tol, value=c1),
        _check("first_bianchi", max(abs(x) for x in bianchi), "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", tol),
    ]


def suite_geodesy(cfg: RunConfig) -> list[Check]:
    tol = cfg.tolerance(1e-12)
    exact = cfg.mode == "exact"
    out = []
    if cfg.type == "damek_ricci" and (cfg.m, cfg.mult_plus, cfg.mult_minus) == (6, 1, 0):
        for eps in (1, -1):
            ex = geo.build_example_15d(eps=eps, exact=exact)
            ok, worst = geo.is_minus_one_subspace(ex.L, tol=tol)
            out.append(_check(f"minus_one_subspace_eps{eps:+d}", abs(worst + 1),
                              "every 2-plane of L has sectional curvature -1", tol))
            out.append(_check(f"r_invariance_eps{eps:+d}", geo.r_invariance_residual(ex.L),
                              "R(L, L)L in L", tol))
            out.append(_check(f"nabla_r_invariance_eps{eps:+d}", geo.nabla_r_invariance_residual(ex.L),
                              "(nabla R)(L, L, L)L in L", tol))
    space = cfg.space()
    if space.m >= 2:
        worst = 0.0
        for T in unit_vectors(cfg.seed, min(cfg.samples, 50), space.dim):
            V, Y, _ = space.split(T)
            pairs = geo.k2_eigenpairs(space, V, Y)
            mu, X = next((p for p in pairs if abs(p[0] + 1) > 1e-6), (None, None))
            if X is None:
                continue
            for e in geo.eigen_E(space, T, X, mu):
                worst = max(worst, e.residual)
        out.append(_check("eigen_E", worst, "R_T E = kappa E for the constructed eigenvectors", 1e-8))
    return out


def suite_cayley(cfg: RunConfig) -> list[Check]:
    eps = cfg.epsilon
    tol = cfg.tolerance()
    exact = cfg.mode == "exact"
    spec = octo.xi_jacobi_spectrum(eps)
    want = {Fraction(0): 1, Fraction(eps): 7, Fraction(eps, 4): 8}
    lo, hi = (0.25, 1.0) if eps == 1 else (-1.0, -0.25)
    ks = octo.sectional_samples(eps, max(cfg.samples, 1), cfg.seed)
    excess = max(float(lo - ks.min()), float(ks.max() - hi), 0.0)
    perp = octo.perp_xi_checks(eps, samples=min(cfg.samples, 50), seed=cfg.seed, exact=exact)
    rng = sample_rng(cfg.seed, 1)
    X, Y, Z = _bianchi_vectors(rng, 16, exact)
    out = [
        Check("xi_spectrum", spec == want, Fraction(0) if spec == want else Fraction(1),
              "spectrum of R_xi is {0, eps x 7, eps/4 x 8}"),
        _check("sectional_range", excess, "sectional curvature between eps/4 and eps", tol),
    ]
    for k in ("eps_eps_eps", "quarter_eps_eps", "quarter_quarter_quarter"):
        out.append(_check(f"perp_xi_{k}", perp[k], "R(L, L)L is orthogonal to xi on eigenspace triples", tol))
    out.append(_check("first_bianchi", octo.bianchi_residual(X, Y, Z, eps),
                      "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", tol))
    if eps == -1:
        n78 = sum(c.eps == -1 for c in ein.solve_case_78())
        n717 = sum(c.eps == -1 for c in ein.solve_case_717())
        out.append(Check("no_einstein_78", n78 == 0, Fraction(n78),
                         "no real solution of the (7, 8) principal-curvature system", n78))
        out.append(Check("no_einstein_717", n717 == 0, Fraction(n717),
                         "no real solution of the (7, 1, 7) principal-curvature system", n717))
    return out


def suite_einstein(cfg: RunConfig) -> list[Check]:
    tol = cfg.tolerance(1e-12)
    cot = ein.sphere_einstein_radius()
    exact_cot = ein.COT_R0
    r0 = float(sp.acot(exact_cot) + sp.pi)  # cot is negative: r0 in (pi/2, pi)
    sphere = ein.SphereModel(r0)
    scan = ein.jacobi_focal_scan(np.linspace(1e-3, np.pi - 1e-3, 20001))
    a1, a3 = sphere.principal
    out = [
        _check("cot_r0", abs(cot - float(exact_cot)), "cot r0 of the Einstein geodesic sphere", tol,
               value=exact_cot),
        _check("gauss_einstein_r0", ein.gauss_einstein_residual(sphere.hypersurface()),
               "-lambda^2 + H lambda + C = Jacobi eigenvalue on both blocks", tol),
        _check("focal_radius", abs(scan.cot - float(exact_cot)),
               "the Jacobi coefficients of both blocks vanish together at the same radius", 1e-9),
        _check("alpha_cross_check", max(abs(a1 - float(exact_cot)), abs(a3 - np.sqrt(6) / 8)),
               "principal curvatures cot r0 and cot(r0/2)/2", tol),
    ]
    for label, solve, names in (("78", ein.solve_case_78, ("alpha1", "alpha3")),
                                ("717", ein.solve_case_717, ("alpha1", "alpha3", "alpha4"))):
        sols = solve()
        for eps in (1, -1):
            branch = [s for s in sols if s.eps == eps]
            if eps == -1:
                out.append(Check(f"case{label}_eps-1_empty", not branch, Fraction(len(branch)),
                                 "no real solution in the hyperbolic dual", len(branch)))
                continue
            for s in branch:
                res = ein.gauss_einstein_residual(s.hypersurface())
                tag = f"case{label}_eps+1_sign{s.eps_prime:+d}"
                out.append(_check(f"{tag}_gauss", res, "block values solve the Gauss system exactly", 0))
                for k in names:
                    out.append(Check(f"{tag}_{k}", True, Fraction(0), "exact block value", s.alphas[k]))
                out.append(Check(f"{tag}_H", True, Fraction(0), "mean curvature", s.H))
    c717 = next(s for s in ein.solve_case_717() if s.eps == 1)
    system = ein.difgauss_system(c717.alphas["alpha1"], c717.alphas["alpha3"], c717.alphas["alpha4"], c717.H)
    q = ein.q_matrix_report(system)
    out.append(Check("q_system", bool(q.system_matches_printed), Fraction(0 if q.system_matches_printed else 1),
                     "differentiated Gauss system equals the integer matrix over 364"))
    out.append(Check("q_det_nonzero", q.nonzero, Fraction(0 if q.nonzero else 1),
                     "the 3x3 connection system is nondegenerate", q.det_entry_scale))
    out.append(Check("q_det_printed", True, q.det_entry_scale - q.det_printed_value,
                     "recomputed determinant minus the printed -39051/16562 (informational)",
                     q.det_printed_value))
    return out


def suite_twostein(cfg: RunConfig) -> list[Check]:
    tol = cfg.tolerance()
    exact = cfg.mode == "exact"
    out = []
    sphere = ts.cayley_sphere_frame()
    n = min(cfg.samples, 50)
    est = ts.estimate_c2(sphere, samples=n, seed=cfg.seed)
    sphere.c2 = est.mid  # best constant; the t0 residual is then half the spread
    worst = ts.max_identity_residuals(sphere, samples=n, seed=cfg.seed)
    for k in ts.IDENTITIES + ("trace",):
        out.append(_check(f"sphere_{k}", worst[k], ts.IDENTITY_TAGS[k], tol))
    rho = Fraction(2) if exact else 2.0
    flat = ts.space_form_frame(7, rho)
    worst = ts.max_identity_residuals(flat, samples=5, seed=cfg.seed)
    for k in ts.IDENTITIES + ("trace",):
        out.append(_check(f"geodesic_hyperplane_{k}", worst[k], ts.IDENTITY_TAGS[k], tol))
    h = Fraction(3) if exact else 3.0
    for r in (rho, -rho, 0 * rho):
        v = ts.rank_sh_conclusion(ts.developable_frame(7, r, h))
        out.append(Check(f"rank_sh_developable_rho{float(r):+g}", v.holds, Fraction(int(not v.holds)),
                         "Sh^2 = (Tr Sh) Sh and rank Sh <= 1", v.rank))
    try:
        Sh = np.diag([h, h] + [0 * h] * 4)
        ts.rank_sh_conclusion(ts.space_form_frame(7, rho, Sh))
        rejected = False
    except DRKitError:
        rejected = True
    out.append(Check("rank_sh_rejects_rank2", rejected, Fraction(0 if rejected else 1),
                     "Sh = diag(h, h, 0, ...) violates the constraint set"))
    cs = ts.cauchy_schwarz_constant_curvature(Fraction(9), Fraction(15, 2), 16)
    out.append(Check("cauchy_schwarz_cayley", not cs, Fraction(int(cs)),
                     "(n-1) c~2 = c~1^2 fails for the Cayley plane"))
    return out


SUITE_FUNCS = {
    "clifford": suite_clifford,
    "curvature": suite_curvature,
    "geodesy": suite_geodesy,
    "cayley": suite_cayley,
    "einstein": suite_einstein,
    "twostein": suite_twostein,
}


def run_suite(name: str, cfg: RunConfig) -> Report:
    names = SUITES if name == "all" else (name,)
    rep = Report(name, asdict(cfg))
    for n in names:
        for c in SUITE_FUNCS[n](cfg):
            if name == "all":
                c.name = f"{n}.{c.name}"
            rep.checks.append(c)
    return rep


# -- commands -----------------------------------------------------------------------

def cmd_build(args) -> int:
    fields = load_config(args.config)
    cfg = RunConfig(**fields)
    if cfg.type == "cayley":
        plane = octo.CayleyPlane(cfg.epsilon)
        print(f"cayley eps={cfg.epsilon:+d}")
        print(f"dim {plane.dim}, c1 = {9 * cfg.epsilon}")
        return 0
    space = cfg.space()
    res = clifford_residuals(space.rep)
    ok = not any(res.values())
    print(f"damek_ricci m={space.m} mult=({cfg.mult_plus}, {cfg.mult_minus}) dim_v={space.dim_v}")
    print(f"dim {space.dim}, c1 = {dr.einstein_c1(space)}")
    print(f"clifford axioms: {'ok' if ok else 'FAILED ' + json.dumps(res)}")
    return 0 if ok else 1


def _verify_config(args) -> RunConfig:
    fields: dict = {}
    if args.config and args.space:
        raise ConfigError("give either --config or --space")
    if args.config:
        fields = load_config(args.config)
    elif args.space:
        fields = dict(PRESETS[args.space])
    if args.epsilon is not None:
        fields["epsilon"] = args.epsilon
    if args.samples is not None:
        if args.seed is None:
            raise ConfigError("--samples requires an explicit --seed")
        if args.samples < 2:
            raise ConfigError("--samples must be at least 2")
        fields["samples"] = args.samples
    if args.seed is not None:
        fields["seed"] = args.seed
    if args.tol is not None:
        if not args.tol > 0:
            raise ConfigError("--tol must be positive")
        fields["tol"] = args.tol
    fields["mode"] = args.mode
    return RunConfig(**fields)


def cmd_verify(args) -> int:
    cfg = _verify_config(args)
    start = time.perf_counter()
    rep = run_suite(args.suite, cfg)
    elapsed = time.perf_counter() - start
    lines = rep.lines()
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n")
    for c in rep.checks:
        r = format_number(c.residual)
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<40} residual {r['decimal']}")
    npass = sum(c.passed for c in rep.checks)
    print(f"{args.suite}: {npass}/{len(rep.checks)} passed in {elapsed:.2f} s")
    return 0 if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="drkit", description="Damek-Ricci and Cayley-plane curvature checks")
    sub = p.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", help="build a space from a descriptor and summarize it")
    b.add_argument("--config", required=True)
    b.set_defaults(func=cmd_build)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--config")
    v.add_argument("--space", choices=sorted(PRESETS))
    v.add_argument("--epsilon", type=int, choices=(1, -1))
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--mode", choices=("exact", "float"), default="exact")
    v.add_argument("--tol", type=float)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DRKitError) as exc:
        print(f"drkit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
