"""Field sweeps producing one record per (field, separation)."""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .discord import discord
from .errors import ConfigError, SpinChainError
from .jw_chain import ChainSpec, ground_sector, pair_densities
from .lmg import lmg_pair_density, lmg_sectors
from .mixture import epsilon_overlap, mixture_state, mixture_state_coherent
from .pair_state import XState, concurrence, eof

MODELS = ("nn", "lmg", "mixture", "mixture_coherent")
OUTPUTS = ("D", "E", "C", "I", "elements", "parity", "energy")
DEFAULT_OUTPUTS = ("D", "E", "C", "I", "elements", "parity")
FORMAT_VERSION = "v1"
# Irrational offset keeps uniform grids away from exact parity-crossing fields.
GRID_OFFSET = (math.sqrt(5.0) - 2.0) * 1e-3


@dataclass(frozen=True)
class SweepConfig:
    model: str = "nn"
    n: int = 10
    jx: float = 1.0
    chi: float = 0.5
    b_min: float = GRID_OFFSET
    b_max: float = 1.25 + GRID_OFFSET
    b_steps: int = 251
    separations: tuple[int, ...] = (1,)
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS
    format: str = "csv"
    side_limit_delta: float | None = None
    side_limits: bool = False
    workers: int = 1

    @property
    def jy(self) -> float:
        return self.chi * self.jx

    @property
    def delta(self) -> float:
        return 1e-6 * abs(self.jx) if self.side_limit_delta is None else self.side_limit_delta

    def validate(self) -> "SweepConfig":
        if self.model not in MODELS:
            raise ConfigError(f"model: expected one of {MODELS}, got {self.model!r}")
        if self.n < 3:
            raise ConfigError(f"n: must be >= 3, got {self.n}")
        if self.b_steps < 2:
            raise ConfigError(f"b_steps: must be >= 2, got {self.b_steps}")
        if not self.b_max >= self.b_min:
            raise ConfigError(f"b_max: {self.b_max} is below b_min {self.b_min}")
        if self.jx == 0.0 or not math.isfinite(self.jx) or not math.isfinite(self.chi):
            raise ConfigError("jx/chi: couplings must be finite with jx != 0")
        if not self.separations:
            raise ConfigError("separations: at least one separation is required")
        if self.model == "nn":
            bad = [L for L in self.separations if not 1 <= L <= self.n // 2]
            if bad:
                raise ConfigError(f"separations: {bad} outside 1..{self.n // 2}")
        unknown = [o for o in self.outputs if o not in OUTPUTS]
        if unknown:
            raise ConfigError(f"outputs: unknown {unknown}, expected a subset of {OUTPUTS}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format: expected csv or json, got {self.format!r}")
        if self.side_limits and not 0.0 < self.chi < 1.0:
            raise ConfigError(f"side_limits: need 0 < chi < 1 for a factorizing field, got chi={self.chi}")
        if self.workers < 1:
            raise ConfigError(f"workers: must be >= 1, got {self.workers}")
        return self

    def fields_grid(self) -> list[float]:
        step = (self.b_max - self.b_min) / (self.b_steps - 1)
        grid = [self.b_min + k * step for k in range(self.b_steps)]
        if self.side_limits:
            bs = math.sqrt(self.chi) * abs(self.jx)
            grid += [bs - self.delta, bs + self.delta]
        return sorted(set(grid))

    def describe(self) -> str:
        return (
            f"n={self.n}, jx={self.jx!r}, chi={self.chi!r}, b_min={self.b_min!r}, b_max={self.b_max!r}, "
            f"b_steps={self.b_steps}, L={'/'.join(map(str, self.separations))}, "
            f"side_limits={self.side_limits}, delta={self.delta!r}"
        )


@dataclass(frozen=True)
class SweepRecord:
    b: float
    L: int
    parity: int
    discord: float
    eof: float
    concurrence: float
    concurrence_kind: str
    mutual_information: float
    a: float
    b_el: float
    c: float
    cp: float
    alpha: float
    beta: float
    energy: float = math.nan
    crossing: bool = False


def _record(b: float, L: int, parity: int, state: XState, energy: float, crossing: bool) -> SweepRecord:
    res = discord(state)
    conc, kind = concurrence(state)
    return SweepRecord(
        b=b,
        L=L,
        parity=parity,
        discord=res.discord,
        eof=eof(conc),
        concurrence=conc,
        concurrence_kind=kind,
        mutual_information=res.mutual_information,
        a=state.a,
        b_el=state.b,
        c=state.c,
        cp=state.cp,
        alpha=state.alpha,
        beta=state.beta,
        energy=energy,
        crossing=crossing,
    )


def _lmg_choice(config: SweepConfig, b: float):
    sectors = lmg_sectors(config.n, config.jx, config.jy, b)
    plus, minus = sectors[1].energy, sectors[-1].energy
    crossing = abs(plus - minus) < 1e-11 * config.n * abs(config.jx)
    return (sectors[1] if plus <= minus else sectors[-1]), crossing


def records_at_field(config: SweepConfig, b: float) -> list[SweepRecord]:
    """All records of one field value."""
    out = []
    if config.model == "nn":
        spec = ChainSpec(config.n, config.jx, config.jy, b)
        choice = ground_sector(spec)
        states = pair_densities(spec, config.separations, choice.parity)
        for L in config.separations:
            out.append(_record(b, L, choice.parity, states[L], choice.energy, choice.crossing))
        return out
    if config.model == "lmg":
        ground, crossing = _lmg_choice(config, b)
        state = lmg_pair_density(ground)
        return [_record(b, L, ground.parity, state, ground.energy, crossing) for L in config.separations]
    # mean-field mixtures: cos(theta) = |B|/J_x, zero beyond the critical field
    ratio = min(abs(b / config.jx), 1.0)
    theta = math.acos(ratio)
    if config.model == "mixture":
        state, parity, crossing = mixture_state(theta), 0, False
    else:
        # parity of the coherent mixture follows the exact collective ground state
        ground, crossing = _lmg_choice(config, b)
        parity = ground.parity
        eps = epsilon_overlap(theta, config.n, "+" if parity == 1 else "-")
        state = mixture_state_coherent(theta, eps)
    return [_record(b, L, parity, state, math.nan, crossing) for L in config.separations]


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Evaluate every field of the configured grid, sorted by (field, separation)."""
    config.validate()
    grid = config.fields_grid()
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(records_at_field, [config] * len(grid), grid))
    else:
        chunks = [records_at_field(config, b) for b in grid]
    records = [r for chunk in chunks for r in chunk]
    return sorted(records, key=lambda r: (r.b, r.L))


_COLUMN_GROUPS = {
    "parity": [("parity", "parity")],
    "D": [("D", "discord")],
    "E": [("E", "eof")],
    "C": [("C", "concurrence"), ("kind", "concurrence_kind")],
    "I": [("I", "mutual_information")],
    "elements": [("a", "a"), ("b_el", "b_el"), ("c", "c"), ("cp", "cp"), ("alpha", "alpha"), ("beta", "beta")],
    "energy": [("energy", "energy"), ("crossing", "crossing")],
}
_GROUP_ORDER = ("parity", "D", "E", "C", "I", "elements", "energy")


def columns(outputs: Sequence[str]) -> list[tuple[str, str]]:
    cols = [("b", "b"), ("L", "L")]
    for group in _GROUP_ORDER:
        if group in outputs:
            cols += _COLUMN_GROUPS[group]
    return cols


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def header_line(model: str, params: str) -> str:
    return f"# spinchain-discord {FORMAT_VERSION}, model={model}, params={params}"


def to_csv(records: Iterable[SweepRecord], outputs: Sequence[str], header: str) -> str:
    cols = columns(outputs)
    buf = io.StringIO()
    buf.write(header + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([name for name, _ in cols])
    for rec in records:
        writer.writerow([_fmt(getattr(rec, attr)) for _, attr in cols])
    return buf.getvalue()


def to_json(records: Iterable[SweepRecord], outputs: Sequence[str], header: str) -> str:
    cols = columns(outputs)
    rows = [{name: getattr(rec, attr) for name, attr in cols} for rec in records]
    return json.dumps({"header": header, "version": __version__, "records": rows}, indent=1) + "\n"


def read_csv(text: str) -> tuple[str, list[dict[str, str]]]:
    """Parse text written by :func:`to_csv` into (header, rows of strings)."""
    lines = text.splitlines()
    header = lines[0]
    rows = list(csv.DictReader(lines[1:]))
    return header, rows


def write_sweep(config: SweepConfig, records: Sequence[SweepRecord], out: Path) -> Path:
    header = header_line(config.model, config.describe())
    if config.format == "csv":
        text = to_csv(records, config.outputs, header)
    else:
        text = to_json(records, config.outputs, header)
    out = Path(out)
    if out.suffix == "":
        out.mkdir(parents=True, exist_ok=True)
        out = out / f"sweep_{config.model}_n{config.n}.{config.format}"
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    return out


_INT_KEYS = {"n", "b_steps", "workers"}
_FLOAT_KEYS = {"jx", "jy", "chi", "b_min", "b_max", "side_limit_delta"}


def parse_config_file(path: Path) -> dict:
    """Read ``key = value`` lines (an optional ``[sweep]`` section is allowed)."""
    text = Path(path).read_text()
    if not text.lstrip().startswith("["):
        text = "[sweep]\n" + text
        offset = 1
    else:
        offset = 0
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        lineno = getattr(exc, "lineno", None)
        where = f" line {lineno - offset}" if lineno else ""
        raise ConfigError(f"{path}{where}: {exc.message if hasattr(exc, 'message') else exc}") from exc
    if not parser.has_section("sweep"):
        raise ConfigError(f"{path}: missing [sweep] section")
    raw = dict(parser.items("sweep"))
    lines = text.splitlines()
    return {key: _convert(key, value, path, _line_of(lines, key) - offset) for key, value in raw.items()}


def _line_of(lines: list[str], key: str) -> int:
    for k, line in enumerate(lines, start=1):
        if line.strip().replace("-", "_").startswith(key):
            return k
    return 0


def _convert(key: str, value: str, path, lineno: int):
    key_n = key.replace("-", "_")
    where = f"{path} line {lineno}, field {key_n}"
    try:
        if key_n in _INT_KEYS:
            return int(value)
        if key_n in _FLOAT_KEYS:
            return float(value)
        if key_n in ("separations", "l"):
            return tuple(int(v) for v in value.replace(" ", "").split(",") if v)
        if key_n == "outputs":
            return tuple(v for v in value.replace(" ", "").split(",") if v)
        if key_n == "side_limits":
            return value.strip().lower() in ("1", "true", "yes", "on")
        if key_n in ("model", "format"):
            return value.strip()
    except ValueError as exc:
        raise ConfigError(f"{where}: cannot parse {value!r} ({exc})") from exc
    raise ConfigError(f"{where}: unknown key")


def build_config(file_values: dict, overrides: dict) -> SweepConfig:
    """Merge config-file values with command-line overrides (overrides win)."""
    merged = {}
    for source in (file_values, overrides):
        for key, value in source.items():
            if value is None:
                continue
            key = key.replace("-", "_")
            key = "separations" if key == "l" else key
            merged[key] = value
    jy = merged.pop("jy", None)
    if jy is not None and overrides.get("chi") is None:
        merged["chi"] = jy / merged.get("jx", 1.0)
    known = {f.name for f in fields(SweepConfig)}
    unknown = sorted(set(merged) - known)
    if unknown:
        raise ConfigError(f"unknown config fields: {unknown}")
    try:
        return SweepConfig(**merged).validate()
    except SpinChainError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc

