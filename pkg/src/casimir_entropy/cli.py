"""Command-line harness: scenario sweeps, data tables and analytic-vs-oracle reports.

Every subcommand writes one table, either CSV (header row, 17 significant
digits, LF line endings) or JSON (``{"config", "columns", "rows"}``).
Options may come from a flat ``key = value`` file given with ``--config``;
flags on the command line win.  Exit status is 0 on success, 2 for an
invalid configuration and 3 for a numerical failure or a violated invariant.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import dce1d, dcend, gaussian, oracle

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

SCENARIOS = ("dce1d", "dce-nd", "oracle1d", "mathieu", "lyapunov", "sumrules", "compare")
INVARIANT_TOL = 1e-9


class ConfigError(ValueError):
    """Invalid or inconsistent configuration (exit 2)."""


class InvariantError(ArithmeticError):
    """An emitted value breaks the invariant it reports (exit 3)."""


# --------------------------------------------------------------------------
# Configuration
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    """``start:stop:count`` (inclusive, ``count >= 2``) or an explicit comma list."""

    text: str

    def values(self) -> np.ndarray:
        t = self.text.strip()
        if ":" in t:
            parts = t.split(":")
            if len(parts) != 3:
                raise ConfigError(f"grid {t!r} must be start:stop:count")
            try:
                a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ConfigError(f"bad grid {t!r}: {exc}") from None
            if n < 2:
                raise ConfigError(f"grid {t!r} needs at least 2 points")
            if not b > a:
                raise ConfigError(f"grid {t!r} must have stop > start")
            return np.linspace(a, b, n)
        try:
            vals = np.array([float(v) for v in t.split(",") if v.strip()])
        except ValueError as exc:
            raise ConfigError(f"bad value list {t!r}: {exc}") from None
        if vals.size == 0:
            raise ConfigError("empty value list")
        return vals


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


@dataclass(frozen=True)
class ScenarioConfig:
    """All knobs of a run.  Values are kept as canonical strings of their parsed form."""

    scenario: str
    lengths: tuple[float, ...] = (1.0, 1.0)
    epsilon: float | None = None
    tau: str | None = None
    time: str | None = None
    nmax: tuple[int, ...] = (dce1d.DEFAULT_NMAX,)
    cutoffs: tuple[int, ...] = (15,)
    tau_max: float = 0.3
    spectator: int = 1
    trials: int = 20
    beta_sign: int = 1
    seed: int = 0
    output: str = "csv"

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        if self.output not in ("csv", "json"):
            raise ConfigError(f"output must be csv or json, got {self.output!r}")
        if self.epsilon is not None and not 0 <= self.epsilon < 1:
            raise ConfigError("epsilon must lie in [0, 1)")
        if any(L <= 0 for L in self.lengths):
            raise ConfigError("lengths must be positive")
        if any(n < 1 for n in self.nmax) or any(n < 2 for n in self.cutoffs):
            raise ConfigError("cutoffs out of range")
        if self.beta_sign not in (1, -1):
            raise ConfigError("beta_sign must be 1 or -1")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if self.tau_max <= 0:
            raise ConfigError("tau_max must be positive")

    def eps(self, default: float) -> float:
        return default if self.epsilon is None else self.epsilon

    def to_text(self) -> str:
        """Serialise to ``key = value`` lines (round-trips through :meth:`from_text`)."""
        lines = []
        for k, v in self.as_dict().items():
            lines.append(f"{k} = {v}")
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict[str, str]:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            out[f.name] = _format_value(v)
        return out

    @classmethod
    def from_text(cls, text: str) -> "ScenarioConfig":
        return cls.from_mapping(parse_config_text(text))

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "ScenarioConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(mapping) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "scenario" not in mapping:
            raise ConfigError("no scenario given")
        kw: dict[str, Any] = {}
        for key, raw in mapping.items():
            kw[key] = _PARSERS[key](str(raw).strip())
        return cls(**kw)


def _format_value(v) -> str:
    if isinstance(v, tuple):
        return ",".join(_format_value(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"expected an integer, got {text!r}") from None


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"expected a number, got {text!r}") from None


_PARSERS: dict[str, Callable[[str], Any]] = {
    "scenario": str,
    "lengths": _floats,
    "epsilon": _float,
    "tau": str,
    "time": str,
    "nmax": _ints,
    "cutoffs": _ints,
    "tau_max": _float,
    "spectator": _int,
    "trials": _int,
    "beta_sign": _int,
    "seed": _int,
    "output": str,
}


def parse_config_text(text: str) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` starts a comment, blank lines are skipped."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


# --------------------------------------------------------------------------
# Output
# --------------------------------------------------------------------------


@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _json_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    return v


def render(table: Table, config: ScenarioConfig) -> str:
    if config.output == "json":
        doc = {
            "config": config.as_dict(),
            "columns": table.columns,
            "rows": [[_json_cell(v) for v in row] for row in table.rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_cell(v) for v in row) + "\n")
    return buf.getvalue()


# --------------------------------------------------------------------------
# Scenarios
# --------------------------------------------------------------------------


def worker_count() -> int:
    raw = os.environ.get("CASIMIR_THREADS", "")
    try:
        n = int(raw) if raw else (os.cpu_count() or 1)
    except ValueError:
        raise ConfigError(f"CASIMIR_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def ordered_map(fn: Callable, items: Sequence) -> list:
    """``map`` over a thread pool; results come back in input order."""
    n = min(worker_count(), max(1, len(items)))
    if n == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _require(cond: bool, message: str):
    if not cond:
        raise InvariantError(message)


def _grid(cfg: ScenarioConfig, name: str, default: str | None = None) -> np.ndarray:
    text = getattr(cfg, name) or default
    if text is None:
        raise ConfigError(f"scenario {cfg.scenario} needs --{name}")
    return Grid(text).values()


def _geometry(cfg: ScenarioConfig, default_eps: float) -> dcend.CavityGeometry:
    if len(cfg.lengths) < 2:
        raise ConfigError("need at least two lengths (--L 1,1)")
    return dcend.CavityGeometry(cfg.lengths, cfg.eps(default_eps))


def run_dce1d(cfg: ScenarioConfig) -> Table:
    taus = _grid(cfg, "tau", "0:6:600")
    if np.any(taus < 0):
        raise ConfigError("tau must be non-negative")

    def row(tau):
        c = dce1d.covariance_1d(tau)
        R = gaussian.renyi_entropy(c.matrix)
        S = gaussian.entropy_from_renyi_single_mode(R)
        _require(c.minus_det >= 1.0 - INVARIANT_TOL, f"-det G_A < 1 at tau={tau}")
        _require(S >= R - INVARIANT_TOL, f"S_A < R_A at tau={tau}")
        a1 = dce1d.renyi_asymp1(tau) if tau > 0 else float("nan")
        a2 = dce1d.renyi_asymp2(tau) if tau > 0 else float("nan")
        sa = dce1d.entropy_asymp(tau) if tau > 0 else float("nan")
        return [tau, R, a1, a2, S, sa]

    cols = ["tau", "renyi_exact", "renyi_asymp1", "renyi_asymp2", "entropy_exact", "entropy_asymp"]
    return Table(cols, ordered_map(row, list(taus)))


def run_dce_nd(cfg: ScenarioConfig) -> Table:
    geom = _geometry(cfg, 0.01)
    params = dcend.resonance_gamma(geom)
    ts = _grid(cfg, "time", "0:2000:400")
    if np.any(ts < 0):
        raise ConfigError("time must be non-negative")
    n_modes = max(4, cfg.spectator + 1)

    def row(t):
        m = dcend.mixed_subsystem_entropies(params, t, cfg.spectator, n_modes, cfg.beta_sign)
        _require(m.renyi >= 0 and m.entropy >= m.renyi - INVARIANT_TOL, f"entropy ordering broken at t={t}")
        G = dcend.evolved_state(params, t, n_modes, 0, cfg.beta_sign)
        _require(gaussian.purity_defect(G, relative=True) < INVARIANT_TOL, f"impure state at t={t}")
        return [t, params.rate * t, m.renyi, m.entropy, m.renyi_asymptote, m.entropy_asymptote]

    cols = ["t", "x", "R_A", "S_A", "R_asymptote", "S_asymptote"]
    return Table(cols, ordered_map(row, list(ts)))


def _oracle_run(eps: float, N: int, tau_max: float):
    traj = oracle.MirrorTrajectory(epsilon=eps, n_periods=0)
    per_period = 0.5 * eps * math.pi * traj.period / traj.L1 if eps > 0 else 0.0
    periods = max(1, math.ceil(tau_max / per_period - 1e-9)) if per_period > 0 else 1
    traj = oracle.MirrorTrajectory(epsilon=eps, n_periods=periods)
    run = oracle.integrate_modes(oracle.TruncatedSystem(N), traj)
    alpha, beta = oracle.bogoliubov_history(run)
    return run, alpha, beta


def run_oracle1d(cfg: ScenarioConfig) -> Table:
    eps = cfg.eps(0.005)
    N = cfg.cutoffs[0]
    run, alpha, beta = _oracle_run(eps, N, cfg.tau_max)
    taus = run.tau
    N1 = oracle.particle_numbers(beta)[:, 0]
    rows = []
    for i, tau in enumerate(taus):
        a_ref, b_ref = dce1d.alpha_beta_11(float(tau), 0)
        defect = oracle.symplectic_defect(alpha[i], beta[i])
        _require(defect < 1e-6, f"oracle map not symplectic at tau={tau} ({defect:.2e})")
        rows.append([
            float(run.t[i]), float(tau),
            float(alpha[i, 0, 0].real), float(alpha[i, 0, 0].imag),
            float(beta[i, 0, 0].real), float(beta[i, 0, 0].imag),
            float(N1[i]), a_ref.value, b_ref.value,
            dce1d.particle_number_closed_form(float(tau)), defect,
        ])
    cols = ["t", "tau", "alpha11_re", "alpha11_im", "beta11_re", "beta11_im", "N1",
            "alpha11_analytic", "beta11_analytic", "N1_analytic", "symplectic_defect"]
    return Table(cols, rows)


def run_mathieu(cfg: ScenarioConfig) -> Table:
    geom = _geometry(cfg, 0.01)
    params = dcend.resonance_gamma(geom)
    drive = dcend.mathieu_drive_amplitude(geom)
    if cfg.time is None:
        t_end = 3.0 / params.rate if params.rate > 0 else 100.0
        samples = None
    else:
        samples = _grid(cfg, "time")
        t_end = float(samples[-1])
    run = oracle.integrate_mathieu(params.omega_r, drive, t_end, samples)
    rows = []
    for t, a, b in zip(run.t, run.alpha, run.beta):
        x = params.rate * t
        _require(abs(abs(a) ** 2 - abs(b) ** 2 - 1.0) < 1e-6 * max(1.0, abs(a) ** 2), f"|a|^2-|b|^2 != 1 at t={t}")
        rows.append([float(t), x, abs(a), abs(b), math.cosh(x), math.sinh(x)])
    return Table(["t", "x", "abs_alpha", "abs_beta", "cosh_x", "sinh_x"], rows)


def _exponent_rows(cfg: ScenarioConfig) -> list[list[Any]]:
    geom = _geometry(cfg, 0.01)
    params = dcend.resonance_gamma(geom)
    rate = params.rate
    n = max(4, cfg.spectator + 1)
    drive = dcend.mathieu_drive_amplitude(geom)
    mu = dcend.mathieu_floquet_mu(params.omega_r, drive)
    K = dcend.lift_generator(dcend.resonant_flow(params, 0.0, cfg.beta_sign).generator, n)
    spectrum = dcend.lyapunov_spectrum(K)

    def ratio(v):
        return v / rate if rate > 0 else float("nan")

    rows: list[list[Any]] = [
        ["omega_r_gamma", rate, 1.0, True],
        ["mathieu_mu", mu, ratio(mu), True],
        ["lambda_1", float(spectrum[0]), ratio(spectrum[0]), True],
        ["lambda_2", float(spectrum[-1]), ratio(spectrum[-1]), True],
    ]
    growth = dcend.flow_growth_rate(params, beta_sign=cfg.beta_sign)
    rows.append(["flow_growth_rate", growth, ratio(growth), True])
    mixed = dcend.generic_subsystem(
        dcend.mode_subsystem(n, [0], gaussian.beam_splitter(n, 0, cfg.spectator)), K)
    alone = dcend.generic_subsystem(dcend.mode_subsystem(n, [0]), K)
    for name, sub in (("Lambda_mixed", mixed), ("Lambda_resonant_alone", alone)):
        lam = dcend.subsystem_exponent(sub, params, beta_sign=cfg.beta_sign)
        rows.append([name, lam, ratio(lam), sub.generic])

    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)

    def trial(ss):
        rng = np.random.default_rng(ss)
        sub = dcend.generic_subsystem(dcend.random_subsystem(n, [0, cfg.spectator], rng), K)
        return dcend.subsystem_exponent(sub, params, beta_sign=cfg.beta_sign), sub.generic

    for i, (lam, gen) in enumerate(ordered_map(trial, seeds)):
        rows.append([f"Lambda_random_{i}", lam, ratio(lam), gen])
    return rows


def run_lyapunov(cfg: ScenarioConfig) -> Table:
    return Table(["quantity", "value", "ratio_to_omega_r_gamma", "generic"], _exponent_rows(cfg))


def run_sumrules(cfg: ScenarioConfig) -> Table:
    taus = Grid(cfg.tau or "0.5").values()
    if np.any(taus < 0):
        raise ConfigError("tau must be non-negative")
    nmax = cfg.nmax if cfg.nmax != (dce1d.DEFAULT_NMAX,) else (11, 21, 41)
    jobs = [(float(t), n) for t in taus for n in nmax]

    def row(job):
        tau, n = job
        r = dce1d.sum_rule_residuals(dce1d.build_ladder(tau, n))
        return [tau, n, *r.as_tuple()]

    cols = ["tau", "n_max", "residual_alpha_alpha_dot", "residual_beta_beta_dot", "residual_alpha_beta_dot"]
    return Table(cols, ordered_map(row, jobs))


def _deviation(name: str, num, ref) -> list[Any]:
    """Max absolute, median and max relative deviation.

    Relative deviations use ``max(|ref|, 1e-3 max|ref|)`` so points where the
    reference is still near zero do not dominate.
    """
    num, ref = np.asarray(num, complex), np.asarray(ref, complex)
    d = np.abs(num - ref)
    floor = 1e-3 * float(np.max(np.abs(ref))) if np.any(ref != 0) else 1.0
    rel = d / np.maximum(np.abs(ref), floor)
    return [name, float(d.max()), float(np.median(rel)), float(rel.max())]


def run_compare(cfg: ScenarioConfig) -> Table:
    cols = ["quantity", "max_abs_deviation", "median_rel_deviation", "max_rel_deviation"]
    if len(cfg.lengths) >= 2 and cfg.tau is None and cfg.time is not None:
        return _compare_mathieu(cfg, cols)
    if cfg.time is not None:
        raise ConfigError("compare takes --tau-max for the 1-D oracle or --time for the resonant oscillator, not both")
    eps = cfg.eps(0.005)
    rows = []
    for i, N in enumerate(cfg.cutoffs):
        run, alpha, beta = _oracle_run(eps, N, cfg.tau_max)
        taus = run.tau
        sel = taus <= cfg.tau_max + 1e-12
        ref = [dce1d.alpha_beta_11(float(t), 0) for t in taus[sel]]
        a_ref = np.array([r[0].value for r in ref])
        b_ref = np.array([r[1].value for r in ref])
        suffix = "" if i == 0 else f"@N={N}"
        N1 = oracle.particle_numbers(beta)[sel, 0]
        R_num = np.array([gaussian.renyi_entropy(oracle.mode_covariance(alpha[j], beta[j]))
                          for j in np.flatnonzero(sel)])
        R_ref = np.array([dce1d.renyi_1d(float(t)) for t in taus[sel]])
        S_num = np.array([gaussian.entropy_from_renyi_single_mode(r) for r in R_num])
        S_ref = np.array([gaussian.entropy_from_renyi_single_mode(r) for r in R_ref])
        rows += [
            _deviation(f"alpha11{suffix}", alpha[sel, 0, 0], a_ref),
            _deviation(f"beta11{suffix}", beta[sel, 0, 0], b_ref),
            _deviation(f"N1{suffix}", N1, [dce1d.particle_number_closed_form(float(t)) for t in taus[sel]]),
            _deviation(f"renyi{suffix}", R_num, R_ref),
            _deviation(f"entropy{suffix}", S_num, S_ref),
            [f"symplectic_defect{suffix}", max(oracle.symplectic_defect(alpha[j], beta[j]) for j in range(len(taus))),
             float("nan"), float("nan")],
        ]
    return Table(cols, rows)


def _compare_mathieu(cfg: ScenarioConfig, cols: list[str]) -> Table:
    geom = _geometry(cfg, 0.01)
    params = dcend.resonance_gamma(geom)
    ts = _grid(cfg, "time")
    run = oracle.integrate_mathieu(params.omega_r, dcend.mathieu_drive_amplitude(geom), float(ts[-1]), ts)
    x = params.rate * run.t
    rows = [
        _deviation("abs_beta_vs_sinh", np.abs(run.beta), np.sinh(x)),
        _deviation("abs_alpha_vs_cosh", np.abs(run.alpha), np.cosh(x)),
    ]
    rate = params.rate
    three_way = ("mathieu_mu", "lambda_1", "flow_growth_rate", "Lambda_mixed")
    for name, value, ratio, _ in _exponent_rows(cfg):
        if name in three_way:
            rows.append([f"{name}_vs_omega_r_gamma", abs(value - rate), abs(ratio - 1.0), abs(ratio - 1.0)])
    return Table(cols, rows)


RUNNERS: dict[str, Callable[[ScenarioConfig], Table]] = {
    "dce1d": run_dce1d,
    "dce-nd": run_dce_nd,
    "oracle1d": run_oracle1d,
    "mathieu": run_mathieu,
    "lyapunov": run_lyapunov,
    "sumrules": run_sumrules,
    "compare": run_compare,
}


def run(config: ScenarioConfig) -> str:
    """Execute a scenario and return the rendered table."""
    table = RUNNERS[config.scenario](config)
    return render(table, config)


# --------------------------------------------------------------------------
# Argument parsing
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="casimir-entropy", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="scenario", required=True, parser_class=_Parser)
    helps = {
        "dce1d": "closed-form entropies of the lowest mode in one dimension",
        "dce-nd": "mixed-subsystem entropies at resonance in d >= 2 dimensions",
        "oracle1d": "brute-force integration of the truncated 1-D mode equations",
        "mathieu": "resonant oscillator integrated with its time-dependent frequency",
        "lyapunov": "Floquet, Lyapunov and subsystem exponents",
        "sumrules": "truncation residuals of the ladder sum rules",
        "compare": "analytic vs oracle deviation report",
    }
    for name in SCENARIOS:
        s = sub.add_parser(name, help=helps[name])
        s.add_argument("--config", help="key = value file; flags override its entries")
        s.add_argument("--out", help="write the table here instead of stdout")
        s.add_argument("--output", choices=("csv", "json"), help="table format (default csv)")
        s.add_argument("--seed", type=int)
        s.add_argument("--epsilon", type=float)
        s.add_argument("--L", dest="lengths", help="cavity lengths, comma separated")
        s.add_argument("--tau", help="slow-time grid start:stop:count or list")
        s.add_argument("--time", help="time grid start:stop:count or list")
        s.add_argument("--nmax", help="ladder cutoffs, comma separated")
        s.add_argument("--N", dest="cutoffs", help="oracle mode cutoffs, comma separated")
        s.add_argument("--tau-max", dest="tau_max", type=float)
        s.add_argument("--spectator", type=int)
        s.add_argument("--trials", type=int)
        s.add_argument("--beta-sign", dest="beta_sign", type=int, choices=(1, -1))
    return p


def config_from_args(ns: argparse.Namespace) -> ScenarioConfig:
    mapping: dict[str, str] = {}
    if ns.config:
        try:
            with open(ns.config, encoding="utf-8") as fh:
                mapping.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
    if mapping.get("scenario", ns.scenario) != ns.scenario:
        raise ConfigError(f"config file is for scenario {mapping['scenario']!r}, not {ns.scenario!r}")
    mapping["scenario"] = ns.scenario
    for key in _PARSERS:
        if key == "scenario":
            continue
        v = getattr(ns, key, None)
        if v is not None:
            mapping[key] = str(v)
    return ScenarioConfig.from_mapping(mapping)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text = run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvariantError, gaussian.UnphysicalStateError, gaussian.PrecisionLossError,
            oracle.IntegrationError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        # domain errors raised by the library for out-of-range parameters
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head)
            devnull = os.open(os.devnull, os.O_WRONLY)
            os.dup2(devnull, sys.stdout.fileno())
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
