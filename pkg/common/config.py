# common/config.py
"""
Run configuration: an INI file of flat scalar sections, optionally
overridden from the environment (FERRIS_<SECTION>__<KEY>) and then by
command-line flags.
"""

from __future__ import annotations

import configparser
import dataclasses
import logging
import os
import types
import typing
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Union

from dotenv import load_dotenv

from .errors import ConfigError
from .grid import GridSpec

logger = logging.getLogger(__name__)

MODULE = "config"
ENV_PREFIX = "FERRIS_"
PRESET_DIR = Path(__file__).resolve().parent.parent / "presets"
OUTPUT_FORMATS = ("csv", "csv+pgm", "csv+png")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _target_type(hint: Any) -> type:
    origin = typing.get_origin(hint)
    if origin is Union or origin is types.UnionType:
        args = [arg for arg in typing.get_args(hint) if arg is not type(None)]
        return args[0]
    return hint


def _coerce(section: str, key: str, raw: str, hint: Any) -> Any:
    kind = _target_type(hint)
    try:
        if kind is bool:
            return _parse_bool(raw)
        if kind is int:
            return int(raw.strip())
        if kind is float:
            return float(raw.strip())
        return raw.strip()
    except ValueError as exc:
        raise ConfigError(MODULE, f"[{section}] {key} = {raw!r}: {exc}") from None


class _Section:
    """Mixin giving section dataclasses a strict from_section constructor."""

    section_name: typing.ClassVar[str] = ""

    @classmethod
    def from_section(cls, values: Mapping[str, str]):
        hints = typing.get_type_hints(cls)
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(values) - names)
        if unknown:
            raise ConfigError(MODULE, f"unknown key(s) in [{cls.section_name}]: {', '.join(unknown)}")
        kwargs = {key: _coerce(cls.section_name, key, raw, hints[key]) for key, raw in values.items()}
        return cls(**kwargs)

    def require(self, key: str) -> Any:
        value = getattr(self, key)
        if value is None:
            raise ConfigError(MODULE, f"missing required key [{self.section_name}] {key}")
        return value


@dataclass
class GridSection(_Section):
    section_name: typing.ClassVar[str] = "grid"
    nx: int = 256
    ny: int | None = None
    half_extent: float = 540e-6
    half_extent_y: float | None = None


@dataclass
class OpticsSection(_Section):
    section_name: typing.ClassVar[str] = "optics"
    wavelength: float | None = None
    w0: float | None = None
    ell: int | None = None
    p: int = 0
    lg_power: float | None = None
    gaussian_power: float | None = None
    lens_n: float | None = None
    lens_d: float | None = None
    lens_f: float | None = None
    z: float = 0.0


@dataclass
class AtomSection(_Section):
    section_name: typing.ClassVar[str] = "atom"
    lambda0: float | None = None
    gamma: float | None = None
    mass: float | None = None
    saturation_intensity: float | None = None


@dataclass
class RabiSection(_Section):
    """Peak Rabi frequencies and detuning in units of Gamma."""

    section_name: typing.ClassVar[str] = "rabi"
    omega_g0: float | None = None
    omega_gl0: float | None = None
    detuning: float | None = None


@dataclass
class ImprintSection(_Section):
    section_name: typing.ClassVar[str] = "imprint"
    tau: float | None = None  # in 1/Gamma
    m_max: int = 0  # 0 selects the order count automatically
    report_orders: int = 2


@dataclass
class PacketSection(_Section):
    section_name: typing.ClassVar[str] = "packet"
    sigma: float | None = None
    k_db: float | None = None


@dataclass
class FerrisSection(_Section):
    section_name: typing.ClassVar[str] = "ferris"
    m: int = 1


@dataclass
class SecondImprintSection(_Section):
    section_name: typing.ClassVar[str] = "second_imprint"
    mode: str = "ideal"
    s: int = 1
    delta0: float | None = None
    omega_prime0: float | None = None
    dt: float | None = None
    r_core: float = 0.0  # 0 means one grid spacing
    waist: float = 0.0  # 0 means a uniform second field

    def __post_init__(self) -> None:
        if self.mode not in ("ideal", "physical"):
            raise ConfigError(MODULE, f"[second_imprint] mode must be ideal or physical, got {self.mode!r}")


@dataclass
class PropagationSection(_Section):
    section_name: typing.ClassVar[str] = "propagation"
    max_order: int = 2
    z_start_fraction: float = 0.2
    z_end_fraction: float = 2.0
    n_planes: int = 64
    apodization_margin: float = 0.1


@dataclass
class OutputSection(_Section):
    section_name: typing.ClassVar[str] = "output"
    format: str = "csv+pgm"
    colormap: str = "viridis"
    gamma: float = 1.0
    in_saturation_units: bool = False

    def __post_init__(self) -> None:
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(MODULE, f"[output] format must be one of {', '.join(OUTPUT_FORMATS)}, got {self.format!r}")
        if not self.gamma > 0:
            raise ConfigError(MODULE, f"[output] gamma must be > 0, got {self.gamma!r}")


SECTIONS: dict[str, type[_Section]] = {
    cls.section_name: cls
    for cls in (
        GridSection,
        OpticsSection,
        AtomSection,
        RabiSection,
        ImprintSection,
        PacketSection,
        FerrisSection,
        SecondImprintSection,
        PropagationSection,
        OutputSection,
    )
}


def _env_overrides(environ: Mapping[str, str]) -> dict[str, dict[str, str]]:
    overrides: dict[str, dict[str, str]] = {}
    for name, value in environ.items():
        if not name.startswith(ENV_PREFIX):
            continue
        section, sep, key = name[len(ENV_PREFIX):].lower().partition("__")
        if not sep or not key:
            raise ConfigError(MODULE, f"environment override {name} must look like {ENV_PREFIX}SECTION__KEY")
        overrides.setdefault(section, {})[key] = value
        logger.debug(f"environment override [{section}] {key} = {value}")
    return overrides


def _read_ini(path: Path) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except configparser.Error as exc:
        raise ConfigError(MODULE, f"cannot parse {path}: {exc}") from None
    return {name: dict(parser[name]) for name in parser.sections()}


@dataclass
class RunConfig:
    grid: GridSection = field(default_factory=GridSection)
    optics: OpticsSection = field(default_factory=OpticsSection)
    atom: AtomSection = field(default_factory=AtomSection)
    rabi: RabiSection = field(default_factory=RabiSection)
    imprint: ImprintSection = field(default_factory=ImprintSection)
    packet: PacketSection = field(default_factory=PacketSection)
    ferris: FerrisSection = field(default_factory=FerrisSection)
    second_imprint: SecondImprintSection = field(default_factory=SecondImprintSection)
    propagation: PropagationSection = field(default_factory=PropagationSection)
    output: OutputSection = field(default_factory=OutputSection)
    source: str | None = None

    @classmethod
    def from_mapping(cls, raw: Mapping[str, Mapping[str, str]], source: str | None = None) -> "RunConfig":
        unknown = sorted(set(raw) - set(SECTIONS))
        if unknown:
            raise ConfigError(MODULE, f"unknown section(s): {', '.join(unknown)}")
        kwargs = {name: SECTIONS[name].from_section(values) for name, values in raw.items()}
        return cls(**kwargs, source=source)

    @classmethod
    def load(
        cls,
        path: str | Path | None = None,
        overrides: Mapping[str, Mapping[str, str]] | None = None,
        environ: Mapping[str, str] | None = None,
    ) -> "RunConfig":
        """File < environment < explicit overrides; a .env file is read first."""
        if environ is None:
            load_dotenv()
            environ = os.environ
        raw: dict[str, dict[str, str]] = {}
        if path is not None:
            raw = _read_ini(Path(path))
            logger.info(f"loaded configuration from {path}")
        for layer in (_env_overrides(environ), overrides or {}):
            for section, values in layer.items():
                raw.setdefault(section, {}).update({k: str(v) for k, v in values.items()})
        return cls.from_mapping(raw, source=None if path is None else str(path))

    @classmethod
    def from_preset(cls, name: str, **kwargs) -> "RunConfig":
        return cls.load(preset_path(name), **kwargs)

    # Domain records. Imports stay local so the shared package does not depend
    # on the physics subpackages at import time.

    def grid_spec(self) -> GridSpec:
        g = self.grid
        return GridSpec(
            nx=g.nx,
            ny=g.nx if g.ny is None else g.ny,
            half_extent_x=g.half_extent,
            half_extent_y=g.half_extent if g.half_extent_y is None else g.half_extent_y,
        )

    def lg_beam(self):
        from ..optics.beams import LGBeamParams

        o = self.optics
        return LGBeamParams(
            ell=o.require("ell"),
            p=o.p,
            w0=o.require("w0"),
            wavelength=o.require("wavelength"),
            power=o.require("lg_power"),
        )

    def gaussian_beam(self):
        from ..optics.beams import GaussianBeamParams

        o = self.optics
        return GaussianBeamParams(
            w0=o.require("w0"),
            wavelength=o.require("wavelength"),
            power=o.require("gaussian_power"),
        )

    def lens(self):
        from ..optics.beams import ThinLens

        o = self.optics
        return ThinLens(n=o.require("lens_n"), d=o.require("lens_d"), f=o.require("lens_f"))

    def two_level_atom(self):
        from ..atom_light.coupling import TwoLevelAtom

        a = self.atom
        return TwoLevelAtom(
            lambda0=a.require("lambda0"),
            gamma=a.require("gamma"),
            mass=a.require("mass"),
            saturation_intensity=a.require("saturation_intensity"),
        )

    def rabi_config(self):
        from ..atom_light.coupling import RabiConfig

        r, o = self.rabi, self.optics
        return RabiConfig.from_gamma_units(
            gamma=self.atom.require("gamma"),
            omega_g0=r.require("omega_g0"),
            omega_gl0=r.require("omega_gl0"),
            detuning=r.require("detuning"),
            ell=o.require("ell"),
            p=o.p,
            w0=o.require("w0"),
            lens=self.lens(),
            wavelength=o.require("wavelength"),
        )

    def wave_packet(self):
        from ..diffraction.packet import WavePacket

        return WavePacket(sigma=self.packet.require("sigma"), k_db=self.packet.require("k_db"))

    def tau_seconds(self) -> float:
        return self.imprint.require("tau") / self.atom.require("gamma")

    def imprint_params(self):
        from ..diffraction.orders import ImprintParams

        return ImprintParams(
            rabi=self.rabi_config(),
            tau=self.tau_seconds(),
            packet=self.wave_packet(),
            gamma=self.atom.require("gamma"),
        )

    def m_max(self) -> int | None:
        return self.imprint.m_max or None


def preset_names() -> list[str]:
    return sorted(p.stem for p in PRESET_DIR.glob("*.ini"))


def preset_path(name: str) -> Path:
    path = PRESET_DIR / f"{name}.ini"
    if not path.is_file():
        raise ConfigError(MODULE, f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return path
