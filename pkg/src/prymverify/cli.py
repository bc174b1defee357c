"""Batch driver: runs verification suites and writes one JSON report.

Exit status: 0 when nothing failed, 1 when some check failed, 2 for
configuration errors, 3 for internal faults.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

import numpy as np

from . import __version__
from .report import CheckResult

SCHEMA = "prymverify.report/1"

COMMANDS = {
    "verify-charsums": ["charsums"],
    "verify-traces": ["traces"],
    "verify-ca": ["ca-points"],
    "verify-periods": ["periods"],
    "bounds": ["bounds"],
    "dickson": ["dickson"],
    "faltings-serre": ["faltings-serre"],
    "calibrate": ["calibrate"],
    "all": ["charsums", "traces", "zeta", "ca-points", "periods", "bounds", "galrep"],
}
SUITES = {"charsums", "traces", "zeta", "ca-points", "periods", "bounds", "galrep", "dickson", "faltings-serre", "calibrate"}
SUITE_ALIASES = {"all": COMMANDS["all"], **{k: v for k, v in COMMANDS.items() if k != "all"}}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    suite: str | None = None
    p: str | None = None
    k: int = 1
    lam: str | None = None
    a: str | None = None
    samples: int | None = None
    precision: int = 113  # bits
    jobs: int = 1
    out: str = "report.json"
    seed: int = 0
    zeta: bool = False
    # calibration overrides
    normalization: int = 0  # 2F1 scaled by zeta_6^normalization
    t: int | None = None
    t_prime: int | None = None
    # bounds
    g: int = 1
    degk: int = 1
    h: float = 1.0
    dimb: int = 1
    snowden: str | None = None
    # galrep
    q: int | None = None
    gens: str | None = None
    ring: str | None = None
    spec: str | None = None

    @property
    def dps(self) -> int:
        return max(15, round(self.precision * math.log10(2)))

    def suites(self) -> list[str]:
        if not self.suite:
            raise ConfigError("no suite selected")
        names = []
        for part in self.suite.split(","):
            part = part.strip()
            if part in SUITE_ALIASES:
                names.extend(SUITE_ALIASES[part])
            elif part in SUITES:
                names.append(part)
            else:
                raise ConfigError(f"unknown suite {part!r}")
        if not names:
            raise ConfigError("empty suite selection")
        return list(dict.fromkeys(names))


CONFIG_KEYS = {f.name: f for f in fields(RunConfig)}
KEY_ALIASES = {"lambda": "lam", "t'": "t_prime", "tprime": "t_prime"}


def _convert(key: str, raw):
    kind = CONFIG_KEYS[key].type
    if raw is None:
        return None
    try:
        if "bool" in kind:
            if isinstance(raw, bool):
                return raw
            return {"1": True, "true": True, "yes": True, "0": False, "false": False, "no": False}[str(raw).lower()]
        if "int" in kind:
            return int(raw)
        if "float" in kind:
            return float(raw)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return str(raw)


def read_config_file(path: str | Path) -> dict:
    """key = value lines; '#' starts a comment; unknown keys are rejected."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = KEY_ALIASES.get(key, key.replace("-", "_"))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{n}: unknown key {key!r}")
        out[key] = _convert(key, value)
    return out


def update_config_file(path: str | Path, values: dict):
    """Rewrite the given keys in place, appending the ones not present."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines() if path.exists() else []
    pending = dict(values)
    for i, line in enumerate(lines):
        key = line.split("#", 1)[0].split("=", 1)[0].strip()
        if key in pending and "=" in line:
            lines[i] = f"{key} = {pending.pop(key)}"
    lines += [f"{k} = {v}" for k, v in pending.items()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def build_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    config = getattr(args, "config", None)
    command = getattr(args, "command", None)
    if config and Path(config).exists():
        values.update(read_config_file(config))
    elif config and command != "calibrate":
        raise ConfigError(f"config file {config} not found")
    if command:
        values["suite"] = ",".join(COMMANDS[command])
    for key in CONFIG_KEYS:
        if key != "suite" and getattr(args, key, None) is not None:
            values[key] = _convert(key, getattr(args, key))
    return RunConfig(**values)


def _int_list(text: str | None, name: str) -> list[int] | None:
    if text is None:
        return None
    try:
        items = [int(s) for s in str(text).split(",") if s.strip()]
    except ValueError as exc:
        raise ConfigError(f"{name} must be a comma-separated list of integers") from exc
    if not items:
        raise ConfigError(f"{name} is empty")
    return items


# ------------------------------------------------------------------ workers
# top-level so they can be shipped to worker processes


def _field(p: int, k: int):
    from .parallel import get_field

    return get_field(p, k)


def _charsum_task(args):
    from .ffchar import check_hasse_davenport, check_sextic_reflection

    p, k, bits = args
    F = _field(p, k)
    rows = [check_hasse_davenport(F, bits)]
    bad = []
    for x in range(2, F.q):
        r = check_sextic_reflection(F, x)
        if not r.passed:
            bad.append(F.format(x))
    rows.append(CheckResult("sextic_reflection_all_x", not bad, {"q": F.q}, expected=0, actual=len(bad), details={"failures": bad[:10], "points": F.q - 2}))
    return rows


def _trace_task(args):
    from .cyclotomic import root_of_unity
    from .curves import CurveXLambda, check_trace_additivity, count_X_naive

    p, k, lam, norm = args
    F = _field(p, k)
    curve = CurveXLambda(F, lam)
    row = check_trace_additivity(curve, root_of_unity(norm))
    if F.q <= 101:
        naive = count_X_naive(curve)
        row.details["count_X_naive"] = naive
        row.passed = row.passed and naive == row.details.get("count_X")
    return row


def _zeta_task(args):
    from .curves import check_zeta_consistency

    p, lam = args
    return check_zeta_consistency(p, lam)


def _ca_task(args):
    from .curves import CurveCa, check_sixth_power_criterion
    from .cyclotomic import root_of_unity

    p, k, a, norm = args
    F = _field(p, k)
    return check_sixth_power_criterion(CurveCa(F, F.element(a)), root_of_unity(norm))


def _cover_task(args):
    from .curves import check_cover_identity

    p, k = args
    return check_cover_identity(_field(p, k))


def _period_task(args):
    from . import periods as P

    X, t_prime, t, dps = args
    rows = []
    mu, nu = P.period_vectors(X=X, t=t, precision=dps) if t is not None else P.period_vectors(complex(X) ** 6, precision=dps)
    lattice = P.lattice_build(mu, nu)
    rows.append(CheckResult("mu4_zero", mu.components[1] == 0, {"X": X}, expected=0, actual=mu.components[1]))
    rows.append(CheckResult("lattice_rank", lattice.rank() == 6, {"X": X}, expected=6, actual=lattice.rank()))
    point = P.curve_point(X)
    rows.append(P.check_qm_stabilizes(P.projected_lattice(mu, nu), P.qm_matrix(point, t_prime)))
    rows.append(P.check_quaternion_relations(point, t_prime))
    rows.append(P.check_homothetic_basis(X))
    for r in rows:
        r.inputs = {"X": X, **{k: v for k, v in r.inputs.items() if k != "X"}}
    return rows


def _dickson_task(args):
    from . import galrep as G

    label, ring_spec, gens = args
    R = G.FiniteLocalRing.from_spec(ring_spec)
    return dickson_rows(label, R, gens)


def dickson_rows(label: str, R, gens, oracle_limit: int = 1000) -> list[CheckResult]:
    from . import galrep as G

    cls = G.dickson_classify(gens, R)
    inputs = {"subgroup": label, "q": R.size}
    rows = []
    if cls.order <= oracle_limit:
        ref = G.dickson_oracle(gens, R)
        rows.append(CheckResult("dickson_classify", cls == ref, inputs, expected=str(ref), actual=str(cls), details={"order_PH": cls.order}))
    else:
        rows.append(CheckResult("dickson_classify", True, inputs, actual=str(cls), details={"order_PH": cls.order, "oracle": "skipped, |PH| too large"}))
    if cls.tag == "ContainsSL2" and cls.q0 >= 4:
        rows.append(CheckResult("taylor_wiles", G.taylor_wiles_check(gens, R), inputs, expected=True, actual=True))
    return rows


def _fs_task(args):
    from . import galrep as G

    ring_spec, seed = args
    rng = np.random.default_rng(seed)
    R = G.FiniteLocalRing.from_spec(ring_spec)
    rho, rho2, frob, kind = G.random_faltings_serre_instance(rng, R)
    row = G.trace_conclusion_check(rho, rho2, frob)
    row.inputs = {"ring": ring_spec, "seed": seed, "kind": kind, **row.inputs}
    return row


# ------------------------------------------------------------------ suites


def _primes(cfg: RunConfig, default: list[int]) -> list[int]:
    from .ffchar import is_prime

    ps = _int_list(cfg.p, "p") or default
    for p in ps:
        if not is_prime(p) or p in (2, 3):
            raise ConfigError(f"p = {p} must be a prime other than 2 and 3")
        if (p**cfg.k - 1) % 6:
            raise ConfigError(f"q = {p}^{cfg.k} must be 1 mod 6")
    return ps


def suite_charsums(cfg: RunConfig):
    ps = _primes(cfg, [7, 13, 19, 31, 37, 43])
    from .parallel import pmap

    return [r for rows in pmap(_charsum_task, [(p, cfg.k, cfg.precision) for p in ps], cfg.jobs) for r in rows]


def _lambda_codes(cfg: RunConfig, F) -> list[int]:
    text = cfg.lam
    if text is None:
        text = "all" if F.q <= 31 and cfg.samples is None else None
    if text is None or text.startswith("random"):
        n = cfg.samples or 100
        rng = np.random.default_rng(cfg.seed)
        pool = np.arange(2, F.q)
        return sorted(int(x) for x in rng.choice(pool, size=min(n, pool.size), replace=False))
    if text == "all":
        return list(range(2, F.q))
    codes = [F.element(v) for v in _int_list(text, "lambda")]
    if any(c in (0, 1) for c in codes):
        raise ConfigError("lambda must avoid 0 and 1")
    return codes


def suite_traces(cfg: RunConfig):
    from .parallel import pmap

    tasks = []
    for p in _primes(cfg, [7, 13, 19, 31]):
        F = _field(p, cfg.k)
        tasks += [(p, cfg.k, lam, cfg.normalization % 6) for lam in _lambda_codes(cfg, F)]
    rows = pmap(_trace_task, tasks, cfg.jobs)
    if cfg.zeta:
        rows += suite_zeta(cfg)
    return rows


def suite_zeta(cfg: RunConfig):
    from .parallel import pmap

    if cfg.k != 1:
        raise ConfigError("zeta checks need prime fields (k = 1)")
    tasks = []
    for p in _primes(cfg, [13]):
        rng = np.random.default_rng(cfg.seed)
        lams = rng.choice(np.arange(2, p), size=min(5, p - 2), replace=False)
        tasks += [(p, int(x)) for x in sorted(lams)]
    return pmap(_zeta_task, tasks, cfg.jobs)


def suite_ca(cfg: RunConfig):
    from .parallel import pmap

    ps = _primes(cfg, [7, 13, 31])
    avals = _int_list(cfg.a, "a") or [1, 2]
    rows = pmap(_ca_task, [(p, cfg.k, a, cfg.normalization % 6) for p in ps for a in avals], cfg.jobs)
    rows += pmap(_cover_task, [(p, cfg.k) for p in ps], cfg.jobs)
    return rows


def _t_prime(cfg: RunConfig) -> int:
    from .periods import calibrate_t_prime

    return calibrate_t_prime() if cfg.t_prime is None else cfg.t_prime % 6


def suite_periods(cfg: RunConfig):
    from . import periods as P
    from .parallel import pmap

    n = cfg.samples or 10
    if n < 1:
        raise ConfigError("samples must be positive")
    xs = [round(0.9 * (i + 0.5) / n, 12) for i in range(n)]
    t_prime = _t_prime(cfg)
    rows = [r for rs in pmap(_period_task, [(x, t_prime, cfg.t, cfg.dps) for x in xs], cfg.jobs) for r in rs]
    beta = P.beta_identity()
    rows.append(CheckResult("beta_identity", abs(beta - 2) < 1e-10, {}, expected=2.0, actual=beta, tolerance=1e-10))
    rel = P.diagonal_relations()
    rows.append(CheckResult("diagonal_relations", rel["square"] and rel["cube"], {}, expected=True, actual=rel))
    rows.append(P.check_extension_on_curve())
    return rows


def suite_bounds(cfg: RunConfig):
    from . import bounds as B

    try:
        kappa = B.kappa_log(cfg.dimb, cfg.degk, cfg.h)
        total = B.isogeny_factor_height_bound(cfg.g, cfg.degk, cfg.h, cfg.dimb)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    half_ln = B.height_diff_bound(kappa)
    bost = B.bost_lower(cfg.dimb)
    rows = [
        CheckResult(
            "isogeny_factor_height_bound",
            math.isfinite(total),
            {"g": cfg.g, "degK": cfg.degk, "h": cfg.h, "dimB": cfg.dimb},
            actual=total,
            details={
                "kappa": {"level": 0, "log10": str(kappa.value), "ln": str(kappa.ln())},
                "half_ln_kappa": half_ln,
                "bost_lower": bost,
            },
        )
    ]
    norms = _int_list(cfg.snowden, "snowden") if cfg.snowden else None
    if norms is not None:
        try:
            N = B.snowden_constant_log(cfg.degk, norms)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        _, err = B.ln_factorial(B.SNOWDEN_BASE)
        rows.append(
            CheckResult(
                "snowden_constant",
                True,
                {"degK": cfg.degk, "S_norms": norms},
                actual={"level": N.level, "value": str(N.value)},
                details={"meaning": "log10 N" if N.level == 0 else "log10 log10 N", "stirling_error_ln": str(err)},
            )
        )
    return rows


def _curated_tasks():
    from .galrep import curated_subgroups

    return [(label, R.spec, gens) for label, R, gens in curated_subgroups()]


FS_RINGS = ["F_5", "F_7", "F_9", "Z/9", "Z/27", "Z/8", "Z/25", "Z/4"]


def suite_galrep(cfg: RunConfig):
    from . import galrep as G
    from .parallel import pmap

    rows = [r for rs in pmap(_dickson_task, _curated_tasks(), cfg.jobs) for r in rs]
    R5 = G.FiniteLocalRing.from_spec("F_5")
    S = G.FiniteGroup.matrices(G.MatrixAlgebra(R5, 2), G.sl2_generators(R5))
    D = S.derived_subgroup_exhaustive()
    rows.append(CheckResult("sl2_f5_perfect", len(D) == len(S) == 120, {}, expected=120, actual=len(D)))
    rows += faltings_serre_batch(cfg, FS_RINGS if cfg.ring is None else [cfg.ring])
    return rows


def faltings_serre_batch(cfg: RunConfig, rings: list[str]) -> list[CheckResult]:
    from .parallel import pmap

    n = cfg.samples or 100
    tasks = [(rings[i % len(rings)], cfg.seed * 100003 + i) for i in range(n)]
    rows = pmap(_fs_task, tasks, cfg.jobs)
    certified = [r for r in rows if r.skipped is None]
    bad = sum(not r.passed for r in certified)
    rows.append(
        CheckResult(
            "faltings_serre_batch",
            bad == 0,
            {"instances": n, "rings": rings},
            expected=0,
            actual=bad,
            details={"certified": len(certified), "skipped": n - len(certified)},
        )
    )
    return rows


def _load_json(path: str | None, what: str):
    if not path:
        raise ConfigError(f"{what} file is required")
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {what} file {path}: {exc}") from exc


def suite_dickson(cfg: RunConfig):
    from . import galrep as G

    if cfg.gens is None:
        tasks = [t for t in _curated_tasks() if cfg.q is None or G.FiniteLocalRing.from_spec(t[1]).size == cfg.q]
        from .parallel import pmap

        return [r for rs in pmap(_dickson_task, tasks, cfg.jobs) for r in rs]
    if cfg.q is None:
        raise ConfigError("--q is required with --gens")
    data = _load_json(cfg.gens, "generators")
    try:
        R = G.FiniteLocalRing.from_spec(str(cfg.q))
        A = G.MatrixAlgebra(R, 2)
        gens = [A.parse(m) for m in data]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad generators: {exc}") from exc
    return dickson_rows(Path(cfg.gens).name, R, gens)


def _word(group, word):
    x = group.identity
    for i in word:
        x = group.mul(x, group.generators[i])
    return x


def suite_faltings_serre(cfg: RunConfig):
    from . import galrep as G

    if cfg.spec is None:
        return faltings_serre_batch(cfg, FS_RINGS if cfg.ring is None else [cfg.ring])
    if cfg.ring is None:
        raise ConfigError("--ring is required with --spec")
    data = _load_json(cfg.spec, "spec")
    try:
        R = G.FiniteLocalRing.from_spec(cfg.ring)
        d = int(data.get("dim", 2))
        A = G.MatrixAlgebra(R, d)
        if "permutations" in data:
            group = G.FiniteGroup.permutations(data["permutations"])
        else:
            group = G.FiniteGroup.matrices(A, [A.parse(m) for m in data["matrices"]])
        rho = G.GroupRep(group, A, [A.parse(m) for m in data["rho"]])
        rho2 = G.GroupRep(group, A, [A.parse(m) for m in data["rho_prime"]])
        frob = [_word(group, w) for w in data["frob"]]
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise ConfigError(f"bad Faltings-Serre spec: {exc}") from exc
    cert = G.span_check(rho, rho2, frob)
    row = G.trace_conclusion_check(rho, rho2, frob)
    row.inputs["spec"] = Path(cfg.spec).name
    span = CheckResult(
        "span_check",
        cert.spans,
        {"spec": Path(cfg.spec).name, "ring": R.spec},
        expected=cert.size_log_full,
        actual=cert.size_log_frob,
        details={"basis_words": len(cert.basis), "divisors_frob": cert.divisors_frob, "divisors_full": cert.divisors_full},
    )
    return [span, row]


def suite_calibrate(cfg: RunConfig, config_path: str | None, preset: dict):
    """Search the 2F1 unit and t' once; afterwards verify the stored values."""
    from .cyclotomic import root_of_unity
    from .curves import CurveXLambda, calibrate_normalization, check_trace_additivity
    from .periods import calibrate_t_prime, check_qm_stabilizes, curve_point, projected_lattice_at, qm_matrix

    fields_ = [_field(7, 1), _field(13, 1)]
    rows = []
    if "normalization" in preset:
        k = preset["normalization"] % 6
        ok = all(check_trace_additivity(CurveXLambda(F, lam), root_of_unity(k)) for F in fields_ for lam in range(2, F.q))
        rows.append(CheckResult("calibration_normalization", ok, {"mode": "verify"}, expected=k, actual=k))
    else:
        units = calibrate_normalization(fields_)
        ks = [next(k for k in range(6) if root_of_unity(k) == u) for u in units]
        rows.append(CheckResult("calibration_normalization", len(ks) == 1, {"mode": "search"}, expected="unique", actual=ks))
        if len(ks) == 1:
            preset["normalization"] = ks[0]
    if "t_prime" in preset:
        t = preset["t_prime"] % 6
        ok = bool(check_qm_stabilizes(projected_lattice_at(0.5), qm_matrix(curve_point(0.5), t)))
        rows.append(CheckResult("calibration_t_prime", ok, {"mode": "verify"}, expected=t, actual=t))
    else:
        try:
            t = calibrate_t_prime()
            rows.append(CheckResult("calibration_t_prime", True, {"mode": "search"}, expected="unique", actual=t))
            preset["t_prime"] = t
        except ArithmeticError as exc:
            rows.append(CheckResult("calibration_t_prime", False, {"mode": "search"}, details={"error": str(exc)}))
    if config_path and all(r.passed for r in rows):
        update_config_file(config_path, {k: preset[k] for k in ("normalization", "t_prime") if k in preset})
    return rows


SUITE_FUNCS = {
    "charsums": suite_charsums,
    "traces": suite_traces,
    "zeta": suite_zeta,
    "ca-points": suite_ca,
    "periods": suite_periods,
    "bounds": suite_bounds,
    "galrep": suite_galrep,
    "dickson": suite_dickson,
    "faltings-serre": suite_faltings_serre,
}


# ------------------------------------------------------------------ report


def sort_rows(rows: list[dict]) -> list[dict]:
    return sorted(rows, key=lambda r: (r["id"], json.dumps(r["inputs"], sort_keys=True)))


def build_report(cfg: RunConfig, rows: list[CheckResult], timings: dict) -> dict:
    dumped = sort_rows([r.row() for r in rows])
    summary = {s: sum(r["status"] == k for r in dumped) for s, k in (("passed", "pass"), ("failed", "fail"), ("skipped", "skip"))}
    echo = {k: v for k, v in asdict(cfg).items() if k not in ("jobs", "out")}
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "config": echo,
        "rows": dumped,
        "summary": summary,
        "timings": timings,
    }


def write_report(report: dict, path: str | Path):
    text = json.dumps(report, indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def run(cfg: RunConfig, config_path: str | None = None, preset: dict | None = None) -> tuple[dict, int]:
    """Execute the configured suites; returns the report and the exit status."""
    suites = cfg.suites()
    rows, timings = [], {}
    for name in suites:
        start = time.perf_counter()
        if name == "calibrate":
            got = suite_calibrate(cfg, config_path, dict(preset or {}))
        else:
            got = SUITE_FUNCS[name](cfg)
        timings[name] = round(time.perf_counter() - start, 3)
        rows += got
    report = build_report(cfg, rows, timings)
    return report, 0 if report["summary"]["failed"] == 0 else 1


def print_summary(report: dict, out=sys.stdout):
    s = report["summary"]
    for name, secs in report["timings"].items():
        print(f"{name}: {secs:.2f} s", file=out)
    print(f"{s['passed']} passed, {s['failed']} failed, {s['skipped']} skipped", file=out)
    failed = [r for r in report["rows"] if r["status"] == "fail"]
    for r in failed[:20]:
        print(f"FAIL {r['id']} {json.dumps(r['inputs'], sort_keys=True)}", file=out)
    if len(failed) > 20:
        print(f"... and {len(failed) - 20} more", file=out)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--p", help="prime or comma-separated primes")
    common.add_argument("--k", type=int, help="extension degree")
    common.add_argument("--lambda", dest="lam", help="'all', 'random', or comma-separated integers")
    common.add_argument("--a", help="comma-separated values of a for C_a")
    common.add_argument("--samples", type=int, help="number of sampled points or instances")
    common.add_argument("--precision", type=int, help="working precision in bits")
    common.add_argument("--jobs", type=int, help="worker processes")
    common.add_argument("--out", help="JSON report path")
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--seed", type=int)
    common.add_argument("--zeta", action="store_const", const=True, help="also check zeta numerators")
    common.add_argument("--normalization", type=int, help="2F1 unit exponent k (zeta_6^k)")
    common.add_argument("--t", type=int, help="period branch t")
    common.add_argument("--t-prime", dest="t_prime", type=int)
    common.add_argument("--g", type=int)
    common.add_argument("--degk", type=int)
    common.add_argument("--h", type=float)
    common.add_argument("--dimb", type=int)
    common.add_argument("--snowden", help="comma-separated prime norms")
    common.add_argument("--q", type=int)
    common.add_argument("--gens", help="JSON file of 2x2 matrices")
    common.add_argument("--ring", help="e.g. Z/9, F_25, GR(9,2)")
    common.add_argument("--spec", help="JSON Faltings-Serre instance")

    parser = argparse.ArgumentParser(prog="prymverify", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
        config = getattr(args, "config", None)
        preset = read_config_file(config) if config and Path(config).exists() else {}
        if cfg.jobs < 1:
            raise ConfigError("jobs must be positive")
        report, status = run(cfg, config, preset)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    write_report(report, cfg.out)
    print_summary(report)
    return status


if __name__ == "__main__":
    sys.exit(main())
