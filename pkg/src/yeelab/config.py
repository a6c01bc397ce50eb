"""Flat ``key = value`` run configuration for the command line.

Keys
----
kind               dielectric | magnetic
eps, mu            one value (shared) or two comma-separated values (medium 1, 2)
nlambda            grid points per vacuum wavelength
courant            standard | optimal | a number
source_gap         cells from TFSF source to interface
probe_offset       cells from source/interface to the probes
n_warmup_periods, n_measure_periods, ramp_periods, ramp_shape, amplitude
snapshot_every, snapshot_path

Blank lines and ``#`` comments are ignored. Later assignments win.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Mapping

from .dispersion import WaveDiscretization
from .fresnel import InterfaceCase, InterfaceKind
from .yee_sim import SimConfig


class UnknownKey(ValueError):
    pass


def _floats(text: str) -> tuple[float, ...]:
    vals = tuple(float(v) for v in text.split(",") if v.strip())
    if not 1 <= len(vals) <= 2:
        raise ValueError(f"expected one or two comma-separated numbers, got {text!r}")
    return vals


def _fmt_floats(vals: tuple[float, ...]) -> str:
    return ",".join(repr(v) for v in vals)


@dataclass(frozen=True)
class RunConfig:
    kind: str = "dielectric"
    eps: tuple[float, ...] = (1.0,)
    mu: tuple[float, ...] = (1.0,)
    nlambda: float = 20.0
    courant: str = "standard"
    source_gap: int = 20
    probe_offset: int = 5
    n_warmup_periods: float = 10.0
    n_measure_periods: int = 10
    ramp_periods: float = 5.0
    ramp_shape: str = "erf"
    amplitude: float = 1.0
    snapshot_every: int = 0
    snapshot_path: str = ""

    _PARSERS = {
        "eps": _floats,
        "mu": _floats,
        "nlambda": float,
        "source_gap": int,
        "probe_offset": int,
        "n_warmup_periods": float,
        "n_measure_periods": int,
        "ramp_periods": float,
        "amplitude": float,
        "snapshot_every": int,
    }

    @classmethod
    def keys(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def with_overrides(self, overrides: Mapping[str, str]) -> "RunConfig":
        changes = {}
        known = set(self.keys())
        for key, text in overrides.items():
            if key not in known:
                raise UnknownKey(f"unknown config key {key!r}; known keys: {', '.join(sorted(known))}")
            parse = self._PARSERS.get(key, str)
            try:
                changes[key] = parse(text.strip())
            except ValueError as exc:
                raise ValueError(f"bad value for {key}: {exc}") from None
        return replace(self, **changes)

    @classmethod
    def parse(cls, text: str, base: "RunConfig | None" = None) -> "RunConfig":
        pairs = {}
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key = value, got {raw!r}")
            key, value = line.split("=", 1)
            pairs[key.strip()] = value.strip()
        return (base or cls()).with_overrides(pairs)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def dump(self) -> str:
        out = []
        for key in self.keys():
            val = getattr(self, key)
            if isinstance(val, tuple):
                val = _fmt_floats(val)
            elif isinstance(val, float):
                val = repr(val)
            out.append(f"{key} = {val}")
        return "\n".join(out) + "\n"

    def interface(self) -> InterfaceCase:
        kind = InterfaceKind(self.kind)
        if kind is InterfaceKind.DIELECTRIC:
            if len(self.mu) != 1:
                raise ValueError("a dielectric interface takes one shared mu")
            e1, e2 = self.eps if len(self.eps) == 2 else self.eps * 2
            return InterfaceCase.dielectric(e1, e2, self.mu[0])
        if len(self.eps) != 1:
            raise ValueError("a magnetic interface takes one shared eps")
        m1, m2 = self.mu if len(self.mu) == 2 else self.mu * 2
        return InterfaceCase.magnetic(m1, m2, self.eps[0])

    def courant_number(self, ic: InterfaceCase | None = None) -> float:
        ic = ic or self.interface()
        if self.courant == "standard":
            return 1.0
        if self.courant == "optimal":
            return ic.optimal_courant()
        try:
            return float(self.courant)
        except ValueError:
            raise ValueError(f"courant must be standard, optimal or a number, got {self.courant!r}") from None

    def discretization(self) -> WaveDiscretization:
        return WaveDiscretization(self.nlambda, self.courant_number())

    def sim_config(self) -> SimConfig:
        ic = self.interface()
        cfg = SimConfig.auto(
            ic,
            WaveDiscretization(self.nlambda, self.courant_number(ic)),
            source_gap=self.source_gap,
            probe_offset=self.probe_offset,
            n_warmup_periods=self.n_warmup_periods,
            n_measure_periods=self.n_measure_periods,
            ramp_periods=self.ramp_periods,
            ramp_shape=self.ramp_shape,
            amplitude=self.amplitude,
            snapshot_every=self.snapshot_every,
            snapshot_path=self.snapshot_path or None,
        )
        cfg.validate()
        return cfg
