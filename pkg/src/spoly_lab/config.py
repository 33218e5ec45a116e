"""Experiment configuration: parsing, validation and construction of inputs.

A config is a JSON object.  Every field has a default except
``experiment``; :meth:`ExperimentConfig.resolved` returns the complete
dictionary that is echoed into ``report.json``.  Validation errors raise
:class:`ConfigError` naming the offending field.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

import numpy as np

from .errors import ConfigError, SpolyError
from .exponent_geometry import (
    ConcaveHypograph,
    ExponentSet,
    QuarterDisc,
    RationalPolytope,
    exponent_set_from_json,
    standard_simplex,
)
from .samples import WeightedSampleSet, circle, disc_grid, segment, torus

EXPERIMENTS = ("gap", "delta", "hull", "approx-rate", "siciak-field")
SOLVERS = ("lp", "lawson", "both")

_BUILTIN_SETS: dict[str, Callable[[], ExponentSet]] = {
    "sigma1": lambda: standard_simplex(1),
    "sigma2": lambda: standard_simplex(2),
    "sigma3": lambda: standard_simplex(3),
    "quarter-disc": lambda: QuarterDisc(1),
    "example-polytope": lambda: RationalPolytope([(0, 0), (1, 0), (0, 1), ("3/4", "3/4")]),
}
_HYPOGRAPH = re.compile(r"^hypograph\(\s*([^,]+)\s*,\s*([^)]+)\s*\)$")


def builtin_set_names() -> tuple[str, ...]:
    return tuple(_BUILTIN_SETS) + ("hypograph(b,c)",)


def parse_set(spec: Any, base: Path | None = None) -> ExponentSet:
    """A builtin name, ``hypograph(b,c)``, a serialized set, or a path to one."""
    try:
        if isinstance(spec, dict):
            return exponent_set_from_json(spec)
        if isinstance(spec, str):
            if spec in _BUILTIN_SETS:
                return _BUILTIN_SETS[spec]()
            mt = _HYPOGRAPH.match(spec)
            if mt:
                return ConcaveHypograph(float(mt.group(1)), float(mt.group(2)))
            path = _resolve(spec, base)
            if path.is_file():
                return exponent_set_from_json(json.loads(path.read_text()))
    except ConfigError:
        raise
    except (SpolyError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError("set", str(exc)) from exc
    raise ConfigError("set", f"not a builtin ({', '.join(builtin_set_names())}), serialized set or file: {spec!r}")


def _resolve(path: str, base: Path | None) -> Path:
    p = Path(path)
    if not p.is_absolute() and base is not None:
        p = base / p
    return p


def _load_columns(path: Path, fieldname: str) -> np.ndarray:
    try:
        return np.atleast_2d(np.loadtxt(path, delimiter=",", comments="#", ndmin=2))
    except (OSError, ValueError) as exc:
        raise ConfigError(fieldname, f"cannot read {path}: {exc}") from exc


@dataclass
class ExperimentConfig:
    experiment: str
    set: Any = "sigma1"
    compact: Any = field(default_factory=lambda: {"generator": "circle", "n_points": 256})
    weight: Any = "zero"
    m_min: int = 1
    m_max: int | None = None
    m_list: list[int] | None = None
    function: Any = None
    R: float | None = None
    grid: Any = None
    directions: int = 32
    solver: str = "lp"
    max_iter: int = 500
    tol: float = 1e-10
    seed: int = 0
    threads: int = 1
    output: str = "out"
    base_dir: Path | None = field(default=None, repr=False)

    # ------------------------------------------------------------ parsing

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path | None = None) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError("config", "top level must be a JSON object")
        known = {f for f in cls.__dataclass_fields__ if f != "base_dir"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(unknown[0], "unknown field")
        if "experiment" not in data:
            raise ConfigError("experiment", "missing")
        cfg = cls(**data, base_dir=base_dir)
        cfg.validate()
        return cfg

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError("config", f"cannot read {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"invalid JSON: {exc}") from exc
        return cls.from_dict(data, base_dir=path.parent)

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ConfigError("experiment", f"must be one of {', '.join(EXPERIMENTS)}")
        for name in ("m_min", "directions", "max_iter", "seed", "threads"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(name, "must be an integer")
        if self.m_max is not None and (not isinstance(self.m_max, int) or isinstance(self.m_max, bool)):
            raise ConfigError("m_max", "must be an integer")
        if self.directions < 3:
            raise ConfigError("directions", "need at least 3 polygon directions")
        if self.max_iter < 1:
            raise ConfigError("max_iter", "must be positive")
        if not (isinstance(self.tol, (int, float)) and self.tol > 0):
            raise ConfigError("tol", "must be a positive number")
        if self.threads < 1:
            raise ConfigError("threads", "must be at least 1")
        if self.solver not in SOLVERS:
            raise ConfigError("solver", f"must be one of {', '.join(SOLVERS)}")
        if self.m_list is not None:
            if not isinstance(self.m_list, list) or not all(isinstance(m, int) and m >= 1 for m in self.m_list):
                raise ConfigError("m_list", "must be a list of positive integers")
            if not self.m_list:
                raise ConfigError("m_list", "is empty")
        if self.experiment != "delta":
            self.ms()  # raises on an empty m range
        if self.experiment == "siciak-field":
            if self.grid is None:
                raise ConfigError("grid", "siciak-field needs a grid")
            if self.R is not None and not (isinstance(self.R, (int, float)) and self.R > 0):
                raise ConfigError("R", "must be positive")
        if self.experiment in ("approx-rate",) and self.function is None:
            raise ConfigError("function", "approx-rate needs a function")
        self.exponent_set()

    def ms(self) -> list[int]:
        if self.m_list is not None:
            return sorted(set(self.m_list))
        if self.m_max is None:
            raise ConfigError("m_max", "missing (or give m_list)")
        if self.m_min < 1:
            raise ConfigError("m_min", "must be at least 1")
        if self.m_max < self.m_min:
            raise ConfigError("m_max", f"empty m range [{self.m_min}, {self.m_max}]")
        return list(range(self.m_min, self.m_max + 1))

    def resolved(self) -> dict:
        d = asdict(self)
        d.pop("base_dir")
        d["set"] = self.exponent_set().to_json()
        if self.experiment != "delta":
            d["m_values"] = self.ms()
        return d

    # ------------------------------------------------------------ builders

    def exponent_set(self) -> ExponentSet:
        return parse_set(self.set, self.base_dir)

    def samples(self) -> WeightedSampleSet:
        pts = self._points()
        q = self._weights(pts)
        return WeightedSampleSet(pts, q, label=json.dumps(self.compact, sort_keys=True))

    def _points(self) -> np.ndarray:
        spec = self.compact
        if isinstance(spec, str):
            spec = {"file": spec}
        if not isinstance(spec, dict):
            raise ConfigError("compact", "must be a generator object or a file path")
        if "file" in spec:
            cols = _load_columns(_resolve(spec["file"], self.base_dir), "compact")
            if cols.shape[1] % 2:
                raise ConfigError("compact", "point files need re,im column pairs")
            return cols[:, 0::2] + 1j * cols[:, 1::2]
        gen = spec.get("generator")
        try:
            if gen == "circle":
                s = circle(int(spec.get("n_points", 256)), float(spec.get("radius", 1.0)))
            elif gen == "torus":
                s = torus(int(spec.get("n1", 16)), int(spec.get("n2", 16)), tuple(spec.get("radii", (1.0, 1.0))))
            elif gen == "segment":
                s = segment(int(spec.get("n_points", 128)), float(spec.get("a", -1.0)), float(spec.get("b", 1.0)))
            elif gen == "disc-grid":
                s = disc_grid(int(spec.get("n_points", 256)), float(spec.get("radius", 1.0)))
            else:
                raise ConfigError("compact", f"unknown generator {gen!r} (circle, torus, segment, disc-grid)")
        except (ValueError, TypeError) as exc:
            raise ConfigError("compact", str(exc)) from exc
        return s.points

    def _weights(self, pts: np.ndarray) -> np.ndarray:
        spec = self.weight
        if spec == "zero" or spec is None:
            return np.zeros(pts.shape[0])
        if isinstance(spec, (int, float)) and not isinstance(spec, bool):
            return np.full(pts.shape[0], float(spec))
        if isinstance(spec, str):
            spec = {"file": spec}
        if not isinstance(spec, dict):
            raise ConfigError("weight", "must be 'zero', a number, or an object")
        kind = spec.get("kind", "file" if "file" in spec else None)
        if kind == "zero":
            return np.zeros(pts.shape[0])
        if kind == "constant":
            return np.full(pts.shape[0], float(spec["c"]))
        if kind == "radial":
            return float(spec["alpha"]) * np.sum(np.abs(pts) ** 2, axis=1)
        if kind == "file":
            vals = _load_columns(_resolve(spec["file"], self.base_dir), "weight").ravel()
            if vals.shape[0] != pts.shape[0]:
                raise ConfigError("weight", f"{vals.shape[0]} weights for {pts.shape[0]} points")
            return vals
        raise ConfigError("weight", f"unknown weight kind {kind!r} (zero, constant, radial, file)")

    def target(self, samples: WeightedSampleSet) -> np.ndarray:
        """Values of f at the sample points."""
        spec = self.function
        if not isinstance(spec, dict):
            raise ConfigError("function", "must be an object with a 'kind'")
        kind = spec.get("kind")
        z = samples.points
        try:
            if kind == "poles":
                poles = [complex(*p) if isinstance(p, list) else complex(p) for p in spec["poles"]]
                if len(poles) != z.shape[1]:
                    raise ConfigError("function", f"need one pole per variable ({z.shape[1]})")
                return 1.0 / np.prod(z - np.array(poles)[None, :], axis=1)
            if kind == "polynomial":
                out = np.zeros(z.shape[0], dtype=complex)
                for t in spec["terms"]:
                    coef = complex(t.get("re", 0.0), t.get("im", 0.0))
                    out += coef * np.prod(z ** np.array(t["alpha"])[None, :], axis=1)
                return out
            if kind == "file":
                cols = _load_columns(_resolve(spec["file"], self.base_dir), "function")
                vals = cols[:, 0] + 1j * (cols[:, 1] if cols.shape[1] > 1 else 0.0)
                if vals.shape[0] != z.shape[0]:
                    raise ConfigError("function", f"{vals.shape[0]} values for {z.shape[0]} points")
                return vals
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("function", str(exc)) from exc
        raise ConfigError("function", f"unknown function kind {kind!r} (poles, polynomial, file)")

    def grid_points(self) -> np.ndarray:
        spec = self.grid
        if isinstance(spec, dict) and "file" in spec:
            cols = _load_columns(_resolve(spec["file"], self.base_dir), "grid")
            return cols[:, 0::2] + 1j * cols[:, 1::2]
        if not isinstance(spec, dict):
            raise ConfigError("grid", "must be an object")
        try:
            re_lo, re_hi = (float(v) for v in spec.get("re", (-3, 3)))
            im_lo, im_hi = (float(v) for v in spec.get("im", (-3, 3)))
            step = float(spec.get("step", 0.05))
        except (TypeError, ValueError) as exc:
            raise ConfigError("grid", str(exc)) from exc
        if not step > 0 or re_hi < re_lo or im_hi < im_lo:
            raise ConfigError("grid", "need step > 0 and nonempty ranges")
        xs = re_lo + step * np.arange(int(math.floor((re_hi - re_lo) / step + 1e-9)) + 1)
        ys = im_lo + step * np.arange(int(math.floor((im_hi - im_lo) / step + 1e-9)) + 1)
        return (xs[:, None] + 1j * ys[None, :]).reshape(-1, 1)
