"""Scenario configuration files (JSON, versioned schema)."""

import json
import math
import re
from dataclasses import dataclass
from importlib import resources

from .errors import ValidationError

__all__ = ["SCHEMA", "ScenarioConfig", "ConfigError", "load_config", "parse_config", "preset_path", "PRESETS"]

SCHEMA = "framehomodyne.scenario/1"
PRESETS = ("fig7", "fig8", "fig9", "fig10")
_PI_EXPR = re.compile(r"^\s*(?P<num>[0-9.]*)\s*\*?\s*pi\s*(?:/\s*(?P<den>[0-9.]+))?\s*$")


class ConfigError(ValidationError):
    """Invalid configuration; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    scenario: str
    a: float
    center: float
    width: float
    offset: float
    beta_abs: float
    psi: float
    omega_min: float
    omega_max: float
    n_omega: int
    n_phi: int
    delay: float
    oracle_enabled: bool
    oracle_modes: int
    lo_amplitude: float

    @property
    def resolved_omega_max(self):
        return self.omega_max if self.omega_max is not None else 20.0 * max(self.a, self.center)


def _angle(value, field):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        m = _PI_EXPR.match(value)
        if m:
            num = float(m.group("num")) if m.group("num") else 1.0
            den = float(m.group("den")) if m.group("den") else 1.0
            return num * math.pi / den
    raise ConfigError(field, f"expected radians or an expression like 'pi/3', got {value!r}")


def _get(d, key, path, required=True, default=None):
    if not isinstance(d, dict):
        raise ConfigError(path, "expected an object")
    if key not in d:
        if required:
            raise ConfigError(f"{path}.{key}" if path else key, "required field is missing")
        return default
    return d[key]


def _number(value, field, positive=False, nonneg=False, allow_none=False):
    if value is None and allow_none:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(field, f"expected a finite number, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(field, "must be positive")
    if nonneg and value < 0:
        raise ConfigError(field, "must be non-negative")
    return float(value)


def _integer(value, field, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(field, f"expected an integer >= {minimum}, got {value!r}")
    return value


def parse_config(data, name="scenario"):
    """Validate a decoded JSON object and return a ScenarioConfig.

    Raises
    ------
    ConfigError
        Naming the first invalid or missing field.
    """
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    schema = _get(data, "schema", "")
    if schema != SCHEMA:
        raise ConfigError("schema", f"unsupported schema {schema!r} (expected {SCHEMA!r})")
    scenario = _get(data, "scenario", "")
    if scenario not in ("minkowski_to_rindler", "rindler_to_delayed"):
        raise ConfigError("scenario", f"unknown scenario {scenario!r}")

    wp = _get(data, "wavepacket", "")
    sig = _get(data, "signal", "")
    cut = _get(data, "cutoffs", "")
    grid = _get(data, "grid", "", required=False, default={})
    orc = _get(data, "oracle", "", required=False, default={})

    omega_min = _number(_get(cut, "omega_min", "cutoffs"), "cutoffs.omega_min", positive=True)
    omega_max = _number(_get(cut, "omega_max", "cutoffs", False), "cutoffs.omega_max", positive=True,
                        allow_none=True)
    if omega_max is not None and omega_max <= omega_min:
        raise ConfigError("cutoffs.omega_max", "must exceed cutoffs.omega_min")

    delay = None
    if scenario == "rindler_to_delayed":
        delay = _number(_get(data, "delay", ""), "delay", positive=True)

    return ScenarioConfig(
        name=str(data.get("name", name)),
        scenario=scenario,
        a=_number(_get(data, "a", ""), "a", positive=True),
        center=_number(_get(wp, "center", "wavepacket"), "wavepacket.center", positive=True),
        width=_number(_get(wp, "width", "wavepacket"), "wavepacket.width", positive=True),
        offset=_number(_get(wp, "offset", "wavepacket"), "wavepacket.offset"),
        beta_abs=_number(_get(sig, "beta_abs", "signal"), "signal.beta_abs", nonneg=True),
        psi=_angle(_get(sig, "psi", "signal"), "signal.psi"),
        omega_min=omega_min,
        omega_max=omega_max,
        n_omega=_integer(grid.get("n_omega", 2048), "grid.n_omega", 8),
        n_phi=_integer(grid.get("n_phi", 256), "grid.n_phi", 4),
        delay=delay,
        oracle_enabled=bool(orc.get("enabled", True)),
        oracle_modes=_integer(orc.get("n_modes", 128), "oracle.n_modes", 16),
        lo_amplitude=_number(orc.get("lo_amplitude", 1e3), "oracle.lo_amplitude", positive=True),
    )


def preset_path(name):
    """Path of a bundled preset (``fig7`` ... ``fig10``)."""
    if name not in PRESETS:
        raise ConfigError("preset", f"unknown preset {name!r}")
    return resources.files("framehomodyne") / "presets" / f"{name}.json"


def load_config(path):
    """Read a JSON config file; a bare preset name is also accepted."""
    if str(path) in PRESETS:
        path = preset_path(str(path))
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("<file>", f"not valid JSON ({exc})") from exc
    except OSError as exc:
        raise ConfigError("<file>", f"cannot read {path} ({exc.strerror})") from exc
    stem = getattr(path, "stem", None) or str(path).rsplit("/", 1)[-1].rsplit(".", 1)[0]
    return parse_config(data, name=stem)
