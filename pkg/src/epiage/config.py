"""Run-configuration text: sectioned key-value format.

Sections: [parameters], [grid], [initial], [output], and optionally
[sweep].  Rate values are a plain number (constant profile), inline
knots ``age:value, age:value, ...``, or ``@path.csv`` pointing at a
two-column age,value file.  Example::

    [parameters]
    mu = 0.0125
    beta = 60
    phi = 60
    gamma = 13
    rho = 76.65
    contact = 1
    birth_rate = 1.0

    [grid]
    age_max = 200
    time_max = 10
    age_steps = 4000
    time_steps = auto
    mixing = stationary

    [initial]
    kind = bump
    amplitude = 0.9
    center = 50
    width = 50

    [output]
    stride = auto
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, ModelError
from .grids import GridSpec
from .parameters import ConstantRates, ParameterSet
from .profiles import AgeProfile
from .transport import stable_timestep

_RATE_KEYS = ("mu", "beta", "phi", "gamma", "rho", "contact")
_KNOWN_KEYS = {
    "parameters": set(_RATE_KEYS) | {"birth_rate"},
    "grid": {"age_max", "time_max", "age_steps", "time_steps", "mixing"},
    "initial": {"kind", "amplitude", "center", "width", "i0", "r0"},
    "output": {"stride", "directory"},
    "sweep": {"param", "values", "probe"},
}
_TIME_SAFETY = 0.9  # fraction of the largest stable dt used by time_steps=auto


@dataclass(frozen=True)
class InitialSpec:
    """Initial infected/recovered fractions; susceptible takes the rest."""

    kind: str  # "zero" | "bump" | "table"
    amplitude: float = 0.0
    center: float = 0.0
    width: float = 0.0
    i0: AgeProfile | None = None
    r0: AgeProfile | None = None

    def rows(self, ages: np.ndarray):
        if self.kind == "zero":
            i0 = np.zeros_like(ages)
            r0 = np.zeros_like(ages)
        elif self.kind == "bump":
            i0 = cosine_bump(ages, self.amplitude, self.center, self.width)
            r0 = np.zeros_like(ages)
        else:
            i0 = np.asarray(self.i0(ages), dtype=float)
            r0 = (
                np.asarray(self.r0(ages), dtype=float)
                if self.r0 is not None
                else np.zeros_like(ages)
            )
        return 1.0 - i0 - r0, i0, r0


def cosine_bump(ages, amplitude, center, width):
    """Compactly supported cos^2 bump on [center - width, center + width].

    Vanishes identically outside the support, so i0(0) is exactly zero
    whenever center >= width.
    """
    ages = np.asarray(ages, dtype=float)
    out = np.zeros_like(ages)
    inside = np.abs(ages - center) < width
    out[inside] = (
        amplitude * np.cos(np.pi * (ages[inside] - center) / (2.0 * width)) ** 2
    )
    return out


@dataclass(frozen=True)
class RunConfig:
    params: ParameterSet
    rates: ConstantRates | None  # set when every rate is constant
    grid: GridSpec
    mixing: str
    initial: InitialSpec
    stride: str | int = "auto"
    directory: str | None = None
    sweep_param: str | None = None
    sweep_values: tuple = ()
    sweep_probe: bool = False


def _parse_float(text, line):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}", line) from None


def _parse_profile(value, line, base_dir):
    value = value.strip()
    if value.startswith("@"):
        path = Path(base_dir or ".") / value[1:]
        if not path.exists():
            raise ConfigError(f"profile file not found: {path}", line)
        pairs = []
        with open(path, newline="") as handle:
            for row in csv.reader(handle):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    pairs.append((float(row[0]), float(row[1])))
                except (ValueError, IndexError):
                    if not pairs:  # tolerate one header row
                        continue
                    raise ConfigError(f"bad row in {path}: {row!r}", line) from None
        try:
            return AgeProfile.from_table(pairs)
        except ModelError as exc:
            raise ConfigError(f"{path}: {exc}", line) from None
    if ":" in value:
        pairs = []
        for item in value.split(","):
            age_text, _, value_text = item.partition(":")
            pairs.append((_parse_float(age_text, line), _parse_float(value_text, line)))
        try:
            return AgeProfile.from_table(pairs)
        except ModelError as exc:
            raise ConfigError(str(exc), line) from None
    return AgeProfile.constant(_parse_float(value, line))


def _split_sections(text):
    sections = {}
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            if current not in _KNOWN_KEYS:
                raise ConfigError(f"unknown section [{current}]", number)
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"expected key = value, got {line!r}", number)
        if current is None:
            raise ConfigError("key outside any [section]", number)
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in _KNOWN_KEYS[current]:
            raise ConfigError(f"unknown key {key!r} in [{current}]", number)
        if key in sections[current]:
            raise ConfigError(f"duplicate key {key!r} in [{current}]", number)
        sections[current][key] = (value.strip(), number)
    return sections


def parse_config(text: str, base_dir=None) -> RunConfig:
    """Parse and validate; raises ConfigError with the offending line."""
    sections = _split_sections(text)
    for required in ("parameters", "grid"):
        if required not in sections:
            raise ConfigError(f"missing [{required}] section")

    pars = sections["parameters"]
    profiles = {}
    for key in _RATE_KEYS:
        if key not in pars:
            raise ConfigError(f"[parameters] missing {key!r}")
        profiles[key] = _parse_profile(*pars[key], base_dir=base_dir)
    birth = (
        _parse_float(*pars["birth_rate"]) if "birth_rate" in pars else 1.0
    )
    try:
        params = ParameterSet(birth_rate=birth, **profiles)
    except ModelError as exc:
        raise ConfigError(str(exc)) from None
    rates = None
    if all(profiles[k].is_constant for k in _RATE_KEYS):
        try:
            rates = ConstantRates(
                *(profiles[k].values[0] for k in ("mu", "beta", "phi", "gamma", "rho"))
            )
        except ModelError:
            rates = None

    gsec = sections["grid"]
    for key in ("age_max", "time_max", "age_steps"):
        if key not in gsec:
            raise ConfigError(f"[grid] missing {key!r}")
    age_max = _parse_float(*gsec["age_max"])
    time_max = _parse_float(*gsec["time_max"])
    n_age_text, n_age_line = gsec["age_steps"]
    try:
        n_age = int(n_age_text)
    except ValueError:
        raise ConfigError("age_steps must be an integer", n_age_line) from None
    mixing = gsec.get("mixing", ("stationary", 0))[0]
    if mixing not in ("stationary", "full"):
        raise ConfigError(
            f"mixing must be stationary or full, got {mixing!r}",
            gsec.get("mixing", (None, 0))[1],
        )
    steps_text, steps_line = gsec.get("time_steps", ("auto", 0))
    if steps_text == "auto":
        probe = GridSpec(age_max, time_max, n_age, max(2, 10 ** 6))
        gate = stable_timestep(params, probe)
        n_time = max(2, int(np.ceil(time_max / (_TIME_SAFETY * gate.dt_max))))
    else:
        try:
            n_time = int(steps_text)
        except ValueError:
            raise ConfigError("time_steps must be an integer or auto", steps_line) from None
    try:
        grid = GridSpec(age_max, time_max, n_age, n_time)
    except ModelError as exc:
        raise ConfigError(str(exc)) from None

    initial = _parse_initial(sections.get("initial", {}), base_dir)
    stride, directory = "auto", None
    if "output" in sections:
        osec = sections["output"]
        if "stride" in osec:
            stride_text, stride_line = osec["stride"]
            if stride_text != "auto":
                try:
                    stride = int(stride_text)
                except ValueError:
                    raise ConfigError("stride must be an integer or auto", stride_line) from None
            else:
                stride = "auto"
        if "directory" in osec:
            directory = osec["directory"][0]

    sweep_param, sweep_values, sweep_probe = None, (), False
    if "sweep" in sections:
        ssec = sections["sweep"]
        if "param" not in ssec or "values" not in ssec:
            raise ConfigError("[sweep] needs both param and values")
        sweep_param, param_line = ssec["param"]
        if sweep_param not in ("mu", "beta", "phi", "gamma", "rho"):
            raise ConfigError(f"cannot sweep {sweep_param!r}", param_line)
        values_text, values_line = ssec["values"]
        sweep_values = tuple(
            _parse_float(item, values_line) for item in values_text.split(",")
        )
        if "probe" in ssec:
            probe_text, probe_line = ssec["probe"]
            if probe_text.lower() not in ("true", "false"):
                raise ConfigError("probe must be true or false", probe_line)
            sweep_probe = probe_text.lower() == "true"

    config = RunConfig(
        params=params,
        rates=rates,
        grid=grid,
        mixing=mixing,
        initial=initial,
        stride=stride,
        directory=directory,
        sweep_param=sweep_param,
        sweep_values=sweep_values,
        sweep_probe=sweep_probe,
    )
    _validate_initial(config)
    return config


def _parse_initial(section, base_dir):
    if not section:
        return InitialSpec(kind="zero")
    kind = section.get("kind", ("zero", 0))[0]
    if kind == "zero":
        return InitialSpec(kind="zero")
    if kind == "bump":
        values = {}
        for key in ("amplitude", "center", "width"):
            if key not in section:
                raise ConfigError(f"[initial] bump needs {key!r}")
            values[key] = _parse_float(*section[key])
        if values["width"] <= 0:
            raise ConfigError("bump width must be positive", section["width"][1])
        if values["center"] < values["width"]:
            raise ConfigError(
                "bump must vanish at age 0: require center >= width",
                section["center"][1],
            )
        return InitialSpec(kind="bump", **values)
    if kind == "table":
        if "i0" not in section:
            raise ConfigError("[initial] table needs i0")
        i0 = _parse_profile(*section["i0"], base_dir=base_dir)
        r0 = (
            _parse_profile(*section["r0"], base_dir=base_dir)
            if "r0" in section
            else None
        )
        return InitialSpec(kind="table", i0=i0, r0=r0)
    raise ConfigError(
        f"initial kind must be zero, bump, or table, got {kind!r}",
        section.get("kind", (None, 0))[1],
    )


def _validate_initial(config: RunConfig):
    ages = config.grid.age_nodes()
    s0, i0, r0 = config.initial.rows(ages)
    if i0[0] > 1e-12 or r0[0] > 1e-12:
        raise ConfigError("initial i0(0) and r0(0) must vanish (inflow boundary)")
    if s0.min() < -1e-13:
        raise ConfigError("initial fractions exceed 1 somewhere (s0 < 0)")


def _format_profile(profile: AgeProfile) -> str:
    if profile.values.size == 1:
        return f"{profile.values[0]:.17g}"
    return ", ".join(
        f"{a:.17g}:{v:.17g}" for a, v in zip(profile.ages, profile.values)
    )


def render_config(config: RunConfig) -> str:
    """Text that parses back to an equivalent RunConfig (lossless floats)."""
    lines = ["[parameters]"]
    for key in _RATE_KEYS:
        lines.append(f"{key} = {_format_profile(getattr(config.params, key))}")
    lines.append(f"birth_rate = {config.params.birth_rate:.17g}")
    lines += [
        "",
        "[grid]",
        f"age_max = {config.grid.age_max:.17g}",
        f"time_max = {config.grid.time_max:.17g}",
        f"age_steps = {config.grid.n_age}",
        f"time_steps = {config.grid.n_time}",
        f"mixing = {config.mixing}",
        "",
        "[initial]",
        f"kind = {config.initial.kind}",
    ]
    if config.initial.kind == "bump":
        lines += [
            f"amplitude = {config.initial.amplitude:.17g}",
            f"center = {config.initial.center:.17g}",
            f"width = {config.initial.width:.17g}",
        ]
    elif config.initial.kind == "table":
        lines.append(f"i0 = {_format_profile(config.initial.i0)}")
        if config.initial.r0 is not None:
            lines.append(f"r0 = {_format_profile(config.initial.r0)}")
    lines += ["", "[output]", f"stride = {config.stride}"]
    if config.directory:
        lines.append(f"directory = {config.directory}")
    if config.sweep_param:
        lines += [
            "",
            "[sweep]",
            f"param = {config.sweep_param}",
            "values = " + ", ".join(f"{v:.17g}" for v in config.sweep_values),
            f"probe = {'true' if config.sweep_probe else 'false'}",
        ]
    return "\n".join(lines) + "\n"
