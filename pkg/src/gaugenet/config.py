"""
Suite configuration: defaults, validation and the flat ``key = value`` file format.

Keys are the field names of :class:`SuiteConfig`; tolerance overrides use
``tol.<check name> = <value>``. Lines starting with ``#`` or ``;`` are
comments.
"""

import configparser
import re
from dataclasses import asdict, dataclass, field, fields, replace

from .lattice import Region, SampledManifold

PLANTS = {"none": "none", "A": "A", "heart": "A", "spade": "A", "b": "b", "supp_b": "b", "mix": "mix", "invariance": "mix"}
SUITES = ("typeS", "cocycle", "energy", "gaussian", "localnet", "modular")


class ConfigError(ValueError):
    """Invalid configuration; carries the offending key and file line if known."""

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{': '.join(where)}: {message}" if where else message)


@dataclass(frozen=True)
class SuiteConfig:
    topology: str = "circle"
    sites: tuple = (32,)
    torus_sites: tuple = (8, 8)
    small_sites: int = 4
    group: int = 2
    metric_weight: float = 1.0
    region: str = "0-7"
    seed: int = 20240611
    epsilon: float = 0.2
    mc_samples: int = 100_000
    n_triples: int = 100
    n_pairs: int = 100
    n_dexp: int = 50
    fd_step: float = 1e-5
    ergodic_min: int = 8
    ergodic_max: int = 512
    factor_m: int = 32
    max_orbit: int = 64
    n_generators: int = 8
    totality_max: int = 8
    modular_pairs: int = 20
    modular_dim: int = 4
    plant: str = "none"
    plant_size: float = 1e-3
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        validate(self)

    def manifold(self):
        return SampledManifold(self.topology, self.sites, self.group, self.metric_weight)

    def torus(self):
        return SampledManifold("torus", self.torus_sites, self.group, self.metric_weight)

    def small(self):
        return SampledManifold("circle", (self.small_sites,), self.group, self.metric_weight)

    def tol(self, name, default):
        return float(self.tolerances.get(name, default))

    def as_dict(self):
        d = asdict(self)
        d["sites"] = list(self.sites)
        d["torus_sites"] = list(self.torus_sites)
        d["tolerances"] = dict(sorted(self.tolerances.items()))
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        for key in ("sites", "torus_sites"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)


def _range(key, value, lo=None, hi=None):
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        raise ConfigError(f"value {value!r} outside [{lo}, {hi}]", key)


def validate(cfg):
    if cfg.topology not in ("circle", "torus"):
        raise ConfigError("topology must be circle or torus", "topology")
    want = 1 if cfg.topology == "circle" else 2
    if len(cfg.sites) != want:
        raise ConfigError(f"{cfg.topology} needs {want} site count(s)", "sites")
    for s in cfg.sites:
        _range("sites", s, 4 if want == 1 else 2, 4096)
    if len(cfg.torus_sites) != 2:
        raise ConfigError("torus_sites needs two counts", "torus_sites")
    for s in cfg.torus_sites:
        _range("torus_sites", s, 2, 256)
    _range("small_sites", cfg.small_sites, 4, 16)
    if cfg.group not in (2, 3):
        raise ConfigError("group must be su2 or su3", "group")
    _range("metric_weight", cfg.metric_weight, 1e-6, 1e6)
    _range("epsilon", cfg.epsilon, 1e-6, 1.0)
    _range("mc_samples", cfg.mc_samples, 100, 10**8)
    for key in ("n_triples", "n_pairs", "n_dexp", "modular_pairs", "n_generators"):
        _range(key, getattr(cfg, key), 1, 10**5)
    _range("fd_step", cfg.fd_step, 1e-10, 1e-1)
    _range("ergodic_min", cfg.ergodic_min, 1, 10**5)
    _range("ergodic_max", cfg.ergodic_max, cfg.ergodic_min + 2, 10**5)
    _range("factor_m", cfg.factor_m, 1, 10**5)
    _range("max_orbit", cfg.max_orbit, 1, 4096)
    _range("totality_max", cfg.totality_max, 1, 64)
    _range("modular_dim", cfg.modular_dim, 1, 64)
    _range("plant_size", cfg.plant_size, 0.0, 1.0)
    _range("seed", cfg.seed, 0, 2**63 - 1)
    if cfg.plant not in PLANTS.values():
        raise ConfigError(f"plant must be one of {sorted(set(PLANTS))}", "plant")
    M = cfg.manifold()
    if cfg.totality_max > M.n_sites:
        raise ConfigError("totality_max exceeds the number of sites", "totality_max")
    try:
        O = Region.parse(M, cfg.region)
    except ValueError as exc:
        raise ConfigError(str(exc), "region") from None
    if not O.is_proper:
        raise ConfigError("region must be a proper nonempty site set", "region")


# parsing of individual values; each returns the typed value or raises ValueError


def parse_sites(text):
    parts = [p for p in re.split(r"[x,\s]+", str(text).strip()) if p]
    if not parts:
        raise ValueError("empty site count")
    return tuple(int(p) for p in parts)


def parse_group(text):
    t = str(text).strip().lower().replace("(", "").replace(")", "")
    table = {"su2": 2, "2": 2, "su3": 3, "3": 3}
    if t not in table:
        raise ValueError(f"unknown group {text!r}")
    return table[t]


def parse_plant(text):
    t = str(text).strip()
    if t not in PLANTS:
        raise ValueError(f"unknown plant {text!r}")
    return PLANTS[t]


def _parse_value(name, text):
    kinds = {f.name: f.type for f in fields(SuiteConfig)}
    if name in ("sites", "torus_sites"):
        return parse_sites(text)
    if name == "group":
        return parse_group(text)
    if name == "plant":
        return parse_plant(text)
    kind = kinds[name]
    if kind is int:
        return int(text)
    if kind is float:
        return float(text)
    return str(text).strip()


def _line_of(lines, key):
    pat = re.compile(rf"^\s*{re.escape(key)}\s*[=:]")
    for i, line in enumerate(lines, 1):
        if pat.match(line):
            return i
    return None


def parse_config_text(text, base=None):
    """Parse flat ``key = value`` text into a :class:`SuiteConfig`.

    Raises
    ------
    ConfigError
        With the line number and key of the first problem.
    """
    lines = text.splitlines()
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"), inline_comment_prefixes=("#",))
    parser.optionxform = str
    try:
        parser.read_string("[suite]\n" + text)
    except configparser.DuplicateOptionError as exc:
        raise ConfigError("duplicate key", exc.option, exc.lineno - 1) from None
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] - 1 if exc.errors else None
        raise ConfigError("expected 'key = value'", None, lineno) from None
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0]) from None
    known = {f.name for f in fields(SuiteConfig)} - {"tolerances"}
    values = {}
    base = SuiteConfig() if base is None else base
    tols = dict(base.tolerances)
    for key, raw in parser.items("suite"):
        line = _line_of(lines, key)
        try:
            if key.startswith("tol."):
                if key[4:].split(".")[0] not in SUITES:
                    raise ConfigError("tolerance keys are tol.<suite>.<check>", key, line)
                tols[key[4:]] = float(raw)
            elif key in known:
                values[key] = _parse_value(key, raw)
            else:
                raise ConfigError("unknown key", key, line)
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad value {raw!r} ({exc})", key, line) from None
    if "sites" in values and "topology" not in values:
        values["topology"] = "circle" if len(values["sites"]) == 1 else "torus"
    try:
        return replace(base, tolerances=tols, **values)
    except ConfigError as exc:
        raise ConfigError(str(exc).split(": ", 1)[-1], exc.key, _line_of(lines, exc.key or "")) from None
