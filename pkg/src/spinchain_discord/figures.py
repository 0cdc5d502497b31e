"""Tabular data behind each published figure, written as CSV files."""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError
from .mixture import (
    concurrence_coherent,
    discord_closed_form,
    discord_closed_form_coherent,
    measured_conditional_entropy,
    unmeasured_conditional_entropy,
)
from .pair_state import eof
from .sweep import SweepConfig, header_line, run_sweep, to_csv

FIGURES = ("fig2", "fig3", "fig4", "fig5", "fig6")
THETA_POINTS = 201


def _table(header: str, names: Sequence[str], rows) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row in rows:
        writer.writerow([format(float(v), ".17g") for v in row])
    return buf.getvalue()


def _theta_grid() -> np.ndarray:
    return np.linspace(0.0, 0.5 * math.pi, THETA_POINTS)


def _fig2() -> dict[str, str]:
    rows = [
        (t, discord_closed_form(t), measured_conditional_entropy(t), unmeasured_conditional_entropy(t))
        for t in _theta_grid()
    ]
    header = header_line("mixture", f"theta=0..pi/2, points={THETA_POINTS}")
    return {"fig2_mixture_discord.csv": _table(header, ["theta", "D", "S_measured", "S_unmeasured"], rows)}


def _fig3() -> dict[str, str]:
    out = {}
    for eps in (0.2, 0.0, -0.2):
        rows = [
            (t, discord_closed_form_coherent(t, eps), eof(concurrence_coherent(t, eps)))
            for t in _theta_grid()
        ]
        header = header_line("mixture_coherent", f"epsilon={eps!r}, theta=0..pi/2, points={THETA_POINTS}")
        out[f"fig3_theta_eps{eps:+.1f}.csv"] = _table(header, ["theta", "D", "E"], rows)
    theta = 0.25 * math.pi
    rows = [
        (e, discord_closed_form_coherent(theta, e), eof(concurrence_coherent(theta, e)))
        for e in np.linspace(-1.0, 1.0, THETA_POINTS)
    ]
    header = header_line("mixture_coherent", f"theta=pi/4, epsilon=-1..1, points={THETA_POINTS}")
    out["fig3_epsilon.csv"] = _table(header, ["epsilon", "D", "E"], rows)
    return out


def _sweep_file(name: str, config: SweepConfig) -> tuple[str, str]:
    records = run_sweep(config)
    return name, to_csv(records, config.outputs, header_line(config.model, config.describe()))


_OUTPUTS = ("D", "E", "C", "I", "elements", "parity", "energy")


def _fig4() -> dict[str, str]:
    base = dict(model="nn", n=100, jx=1.0, chi=0.5, outputs=_OUTPUTS)
    return dict(
        [
            _sweep_file("fig4_nn_n100_L1.csv", SweepConfig(**base, b_steps=251, separations=(1,))),
            _sweep_file("fig4_nn_n100_allL.csv", SweepConfig(**base, b_steps=51, separations=tuple(range(1, 51)))),
        ]
    )


def _fig5() -> dict[str, str]:
    config = SweepConfig(
        model="nn", n=10, chi=0.5, b_steps=501, separations=(1, 2, 3, 4, 5), outputs=_OUTPUTS, side_limits=True
    )
    return dict([_sweep_file("fig5_nn_n10.csv", config)])


def _fig6() -> dict[str, str]:
    out = {}
    for n in (100, 10):
        common = dict(n=n, chi=0.5, b_steps=251, outputs=_OUTPUTS)
        out.update(
            [
                _sweep_file(f"fig6_lmg_n{n}.csv", SweepConfig(model="lmg", **common)),
                _sweep_file(f"fig6_nn_n{n}_half.csv", SweepConfig(model="nn", separations=(n // 2,), **common)),
                _sweep_file(f"fig6_mixture_n{n}.csv", SweepConfig(model="mixture", **common)),
                _sweep_file(f"fig6_mixture_coherent_n{n}.csv", SweepConfig(model="mixture_coherent", **common)),
            ]
        )
    return out


_BUILDERS: dict[str, Callable[[], dict[str, str]]] = {
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
}


def figure_tables(name: str) -> dict[str, str]:
    """File name to CSV text for one figure."""
    if name not in _BUILDERS:
        raise ConfigError(f"figure: expected one of {FIGURES}, got {name!r}")
    return _BUILDERS[name]()


def figure(name: str, out_dir: Path) -> list[Path]:
    """Write every panel of figure ``name`` into ``out_dir``."""
    tables = figure_tables(name)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for fname, text in sorted(tables.items()):
        path = out_dir / fname
        path.write_text(text)
        paths.append(path)
    return paths

