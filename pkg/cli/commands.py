# cli/commands.py
"""
Pipeline commands behind the CLI verbs.

Each command reads a RunConfig, writes its files into an OutputStage and
returns the report text that main() prints.
"""

from __future__ import annotations

import logging
import os
import shutil
import tempfile
from pathlib import Path
from typing import Callable

import numpy as np

from ..atom_light.coupling import potential_field
from ..atom_light.raman_nath import raman_nath_report
from ..common.config import RunConfig
from ..common.errors import ParameterError
from ..common.field_io import write_field
from ..common.grid import ComplexField2D
from ..common.rendering import render_image
from ..diffraction.ferris import ferris_density, superpose_orders
from ..diffraction.orders import decompose_orders, find_order, order_populations, phase_imprint
from ..diffraction.packet import initial_packet
from ..diffraction.second_imprint import PhysicalSecondImprint, apply_physical_imprint, second_imprint_ideal
from ..optics.mask import mask_intensity
from ..propagation.focus import SCAN_HEADER, predicted_focus, scan_order

logger = logging.getLogger(__name__)

FIGURES = {"fig1": "mask", "fig3": "ferris", "fig4": "ferris"}


class OutputStage:
    """Collects a command's files in a hidden directory and publishes them on success."""

    def __init__(self, out_dir: str | Path):
        self.out_dir = Path(out_dir)
        self.names: list[str] = []
        self.tmp: Path | None = None

    def __enter__(self) -> "OutputStage":
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.tmp = Path(tempfile.mkdtemp(prefix=".staging-", dir=self.out_dir))
        return self

    def path(self, name: str) -> Path:
        self.names.append(name)
        return self.tmp / name

    def __exit__(self, exc_type, exc, tb) -> bool:
        try:
            if exc_type is None:
                for name in self.names:
                    os.replace(self.tmp / name, self.out_dir / name)
                logger.info(f"wrote {len(self.names)} file(s) to {self.out_dir}")
        finally:
            shutil.rmtree(self.tmp, ignore_errors=True)
        return False

    @property
    def published(self) -> list[Path]:
        return [self.out_dir / name for name in self.names]


def emit_field(stage: OutputStage, cfg: RunConfig, name: str, F: ComplexField2D, image: ComplexField2D | None = None) -> None:
    """Write F as CSV, plus images of `image` (default F) when the format asks for them."""
    write_field(F, stage.path(f"{name}.csv"))
    fmt = cfg.output.format
    if fmt == "csv":
        return
    picture = image if image is not None else F
    if not picture.is_real:
        picture = picture.density()
    render_image(picture, stage.path(f"{name}.pgm"), gamma=cfg.output.gamma, fmt="pgm")
    if fmt == "csv+png":
        render_image(picture, stage.path(f"{name}.png"), colormap=cfg.output.colormap, gamma=cfg.output.gamma, fmt="png")


def emit_text(stage: OutputStage, name: str, text: str) -> None:
    stage.path(name).write_text(text + "\n", encoding="utf-8")


def run_mask(cfg: RunConfig, stage: OutputStage, **_) -> str:
    atom_is = cfg.atom.saturation_intensity if cfg.output.in_saturation_units else None
    F = mask_intensity(
        cfg.lg_beam(),
        cfg.gaussian_beam(),
        cfg.lens(),
        cfg.grid_spec(),
        z=cfg.optics.z,
        in_saturation_units=cfg.output.in_saturation_units,
        saturation_intensity=atom_is,
    )
    emit_field(stage, cfg, "mask_intensity", F)
    values = F.values
    return f"mask intensity: min {values.min():.6g} {F.units}, max {values.max():.6g} {F.units}"


def run_potential(cfg: RunConfig, stage: OutputStage, **_) -> str:
    U = potential_field(cfg.rabi_config(), cfg.grid_spec())
    emit_field(stage, cfg, "dipole_potential", U)
    return f"dipole potential: min {U.values.min():.6g} J, max {U.values.max():.6g} J"


def run_imprint(cfg: RunConfig, stage: OutputStage, **_) -> str:
    params = cfg.imprint_params()
    psi0 = initial_packet(params.require_packet(), cfg.grid_spec())
    psi = phase_imprint(psi0, params.rabi, params.tau, gamma=params.gamma)
    support = np.abs(psi0.values) > 1e-12 * np.abs(psi0.values).max()
    phase = np.where(support, np.angle(psi.values * np.conj(psi0.values)), 0.0)
    emit_field(stage, cfg, "imprinted_wavefunction", psi, image=psi.with_values(phase, quantity="imprint_phase", units="rad"))
    return (
        f"phase imprint: tau = {params.tau:.6g} s, max |E tau| = {params.max_modulation():.6g} rad, "
        f"auto m_max = {params.auto_m_max()}"
    )


def _populations_table(rows: list[tuple[int, float]]) -> str:
    lines = [f"{'m':>4}  {'P_m':>22}"]
    lines += [f"{m:>4d}  {p:>22.15e}" for m, p in rows]
    lines.append(f"{'sum':>4}  {sum(p for _, p in rows):>22.15e}")
    return "\n".join(lines)


def run_orders(cfg: RunConfig, stage: OutputStage, **_) -> str:
    params = cfg.imprint_params()
    psi0 = initial_packet(params.require_packet(), cfg.grid_spec())
    orders = decompose_orders(psi0, params, cfg.m_max())
    for order in orders:
        if abs(order.m) <= cfg.imprint.report_orders:
            emit_field(stage, cfg, f"order_{order.m:+d}", order.field)
    table = _populations_table(order_populations(params, max(abs(o.m) for o in orders)))
    emit_text(stage, "populations.txt", table)
    return table


def run_ferris(cfg: RunConfig, stage: OutputStage, m: int | None = None, **_) -> str:
    m = cfg.ferris.m if m is None else m
    if m == 0:
        raise ParameterError("cli", "ferris needs a non-zero order m")
    params = cfg.imprint_params()
    spec = cfg.grid_spec()
    closed = ferris_density(params, m, spec)
    emit_field(stage, cfg, f"ferris_density_m{abs(m)}", closed)

    psi0 = initial_packet(params.require_packet(), spec)
    m_max = max(cfg.m_max() or params.auto_m_max(), abs(m))
    orders = decompose_orders(psi0, params, m_max)
    two_path = superpose_orders(second_imprint_ideal(orders, m), m)
    emit_field(stage, cfg, f"ferris_two_path_m{abs(m)}", two_path)
    mismatch = float(np.max(np.abs(two_path.values - closed.values)) / np.max(closed.values))
    lines = [
        f"Ferris wheel m=+/-{abs(m)}, l={params.ell}: {2 * abs(m * params.ell)} petals expected",
        f"closed form vs two-path construction: max relative difference {mismatch:.3e}",
    ]

    second = cfg.second_imprint
    if second.mode == "physical":
        imprint = PhysicalSecondImprint(
            s=second.s,
            delta0=second.require("delta0"),
            omega_prime0=second.require("omega_prime0"),
            dt=second.require("dt"),
            atom=cfg.two_level_atom(),
            r_core=second.r_core or spec.dx,
            waist=second.waist or None,
        )
        physical = superpose_orders(apply_physical_imprint(orders, imprint), m)
        emit_field(stage, cfg, f"ferris_physical_m{abs(m)}", physical)
        sigma = params.require_packet().sigma
        radii = np.linspace(imprint.r_core, sigma, 64)
        ratio = imprint.selectivity_ratio(abs(m), radii)
        lines.append(
            f"physical second imprint: phase(+{abs(m)})/phase(-{abs(m)}) between "
            f"{ratio.min():.6g} and {ratio.max():.6g} for r in [{imprint.r_core:.3g}, {sigma:.3g}] m"
        )
    return "\n".join(lines)


def run_propagate(cfg: RunConfig, stage: OutputStage, **_) -> str:
    params = cfg.imprint_params()
    packet = params.require_packet()
    prop = cfg.propagation
    if prop.max_order < 1:
        raise ParameterError("cli", f"[propagation] max_order must be >= 1, got {prop.max_order}")
    psi0 = initial_packet(packet, cfg.grid_spec())
    m_max = max(cfg.m_max() or params.auto_m_max(), prop.max_order)
    orders = decompose_orders(psi0, params, m_max)
    k_optical = params.rabi.k
    f = params.rabi.lens.f

    rows = []
    for m in [*range(1, prop.max_order + 1), -1]:
        rows.append(
            scan_order(
                find_order(orders, m).field,
                m,
                packet.k_db,
                k_optical,
                f,
                prop.z_start_fraction,
                prop.z_end_fraction,
                prop.n_planes,
                prop.apodization_margin,
            )
        )
    lines = [
        f"focal scan, K = {packet.k_db:.6g} 1/m, k = {k_optical:.6g} 1/m, f = {f:.6g} m",
        SCAN_HEADER,
        *(row.row() for row in rows),
    ]
    focused = {row.m: row.measured for row in rows if row.measured is not None}
    if 1 in focused and 2 in focused:
        lines.append(f"z(m=2) / z(m=1) = {focused[2] / focused[1]:.6f} (geometric 0.5)")
    lines.append(f"geometric focus of m=1: {predicted_focus(packet.k_db, k_optical, f, 1):.6g} m")
    text = "\n".join(lines)
    emit_text(stage, "focal_scan.txt", text)
    return text


def run_validate(cfg: RunConfig, stage: OutputStage, **_) -> str:
    report = raman_nath_report(cfg.rabi_config(), cfg.two_level_atom(), cfg.wave_packet(), cfg.grid_spec())
    text = report.summary()
    emit_text(stage, "raman_nath_report.txt", text)
    return text


COMMANDS: dict[str, Callable[..., str]] = {
    "mask": run_mask,
    "potential": run_potential,
    "imprint": run_imprint,
    "orders": run_orders,
    "ferris": run_ferris,
    "propagate": run_propagate,
    "validate": run_validate,
}


def run(command: str, cfg: RunConfig, out_dir: str | Path, **options) -> tuple[str, list[Path]]:
    """Run one command; files appear in out_dir only if it succeeds."""
    try:
        handler = COMMANDS[command]
    except KeyError:
        raise ParameterError("cli", f"unknown command {command!r}") from None
    logger.info(f"running {command} ({cfg.source or 'no config file'})")
    with OutputStage(out_dir) as stage:
        report = handler(cfg, stage, **options)
    return report, stage.published
