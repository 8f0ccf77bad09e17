"""JSON descriptors for metrics, diffeomorphisms and analytic maps, and scenarios.

Descriptor kinds
----------------
``fourier_sigma``       ``{"coeffs": [[k, a_k, b_k], ...], "c0": 0.0}``; a metric
``lift_sine``           ``{"amp": 0.5, "k": 1}``; lift ``theta + amp sin(k theta) / k``
``fourier_lift``        ``{"coeffs": [[k, a_k, b_k], ...]}``; lift ``theta + sum ...``
``moebius``             ``{"a": [re, im], "b": [re, im]}``
``blaschke``            ``{"zeros": [[re, im], ...]}``
``piecewise_moebius``   ``{"breakpoints": [...], "pieces": [{"a": .., "b": ..}, ...]}``
                        or ``{"breakpoints": [...], "jumps": [...], "seed": {"a", "b"}}``
``power``               ``{"n": 2}``; the analytic map ``z^n``
``exp_odd``             ``{"eps": 0.5}``; the analytic map ``z exp(eps (z - 1/z) / 2)``
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boundary import BoundaryMetric, CircleDiffeo, pushforward_metric
from .distortion import AnalyticCircleMap
from .errors import DescriptorError, EpsteinError
from .hyperbolic import MoebiusDisk
from .piecewise import PiecewiseMoebiusDiffeo, build_piecewise

SCHEMA = "epstein-action/1"
OPERATIONS = ("action", "epstein", "foliate", "excess", "bilocal", "reconstruct",
              "piecewise", "nfold", "dual", "distort")
KINDS = ("fourier_sigma", "lift_sine", "fourier_lift", "moebius", "blaschke",
         "piecewise_moebius", "power", "exp_odd")


@dataclass
class Subject:
    """Everything a descriptor determines; fields not applicable are ``None``."""

    kind: str
    descriptor: dict
    metric: BoundaryMetric | None = None
    diffeo: CircleDiffeo | None = None
    analytic: AnalyticCircleMap | None = None

    @property
    def piecewise(self) -> PiecewiseMoebiusDiffeo | None:
        return self.diffeo if isinstance(self.diffeo, PiecewiseMoebiusDiffeo) else None

    def require(self, what: str):
        value = getattr(self, what)
        if value is None:
            raise DescriptorError(f"descriptor kind {self.kind!r} does not provide a {what}")
        return value


def _field(d: dict, name: str, default=None):
    if name in d:
        return d[name]
    if default is None:
        raise DescriptorError(f"descriptor of kind {d.get('kind')!r} lacks field {name!r}")
    return default


def _complex(v, name: str) -> complex:
    try:
        if isinstance(v, (int, float)):
            return complex(float(v), 0.0)
        re, im = v
        return complex(float(re), float(im))
    except (TypeError, ValueError):
        raise DescriptorError(f"field {name!r} must be [re, im]") from None


def _rows(v, name: str) -> np.ndarray:
    try:
        arr = np.asarray(v, dtype=float).reshape(-1, 3)
    except (TypeError, ValueError):
        raise DescriptorError(f"field {name!r} must be a list of [k, a_k, b_k] rows") from None
    if np.any(arr[:, 0] < 1) or np.any(arr[:, 0] != np.round(arr[:, 0])):
        raise DescriptorError(f"mode numbers in {name!r} must be positive integers")
    return arr


def _moebius(d: dict) -> MoebiusDisk:
    return MoebiusDisk(_complex(_field(d, "a"), "a"), _complex(_field(d, "b"), "b"))


def _build(d: dict) -> Subject:
    kind = d.get("kind")
    if kind not in KINDS:
        raise DescriptorError(f"unknown descriptor kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "fourier_sigma":
        h = BoundaryMetric.fourier_sigma(_rows(_field(d, "coeffs"), "coeffs"), float(d.get("c0", 0.0)))
        if d.get("normalize", False):
            h = h.normalized()
        return Subject(kind, d, metric=h)
    if kind == "lift_sine":
        phi = CircleDiffeo.lift_sine(float(_field(d, "amp")), int(d.get("k", 1)))
    elif kind == "fourier_lift":
        phi = CircleDiffeo.fourier_lift(_rows(_field(d, "coeffs"), "coeffs"))
    elif kind == "moebius":
        m = _moebius(d)
        return Subject(kind, d, pushforward_metric(CircleDiffeo.moebius(m)), CircleDiffeo.moebius(m),
                       AnalyticCircleMap.moebius(m))
    elif kind == "blaschke":
        zeros = [_complex(z, "zeros") for z in _field(d, "zeros")]
        phi = CircleDiffeo.blaschke(zeros)
        f = AnalyticCircleMap.blaschke(zeros)
        return Subject(kind, d, pushforward_metric(phi) if phi.degree == 1 else None, phi, f)
    elif kind == "piecewise_moebius":
        bp = np.asarray(_field(d, "breakpoints"), dtype=float)
        if "pieces" in d:
            phi = PiecewiseMoebiusDiffeo(bp, [_moebius(p) for p in d["pieces"]])
        else:
            seed = _moebius(d["seed"]) if "seed" in d else None
            phi = build_piecewise(bp, _field(d, "jumps"), seed)
        # the pushed-forward metric is only C^1, so no smooth metric is attached
        return Subject(kind, d, diffeo=phi)
    elif kind == "power":
        f = AnalyticCircleMap.power(int(_field(d, "n")))
        return Subject(kind, d, diffeo=f.to_diffeo(), analytic=f)
    else:  # exp_odd
        f = AnalyticCircleMap.exp_odd(float(_field(d, "eps")))
        phi = f.to_diffeo()
        return Subject(kind, d, pushforward_metric(phi), phi, f)
    return Subject(kind, d, pushforward_metric(phi), phi)


def load_descriptor(source) -> Subject:
    """Build a :class:`Subject` from a dict, a JSON string or a path.

    Raises
    ------
    DescriptorError
        For malformed JSON, unknown kinds, missing fields, or values that do
        not define a valid object.
    """
    d = read_json(source)
    if not isinstance(d, dict):
        raise DescriptorError("descriptor must be a JSON object")
    try:
        return _build(d)
    except DescriptorError:
        raise
    except (EpsteinError, TypeError, ValueError, KeyError) as exc:
        raise DescriptorError(f"invalid {d.get('kind')!r} descriptor: {exc}") from exc


def read_json(source):
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise DescriptorError(f"cannot read {source}: {exc}") from exc
    else:
        text = source
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"malformed JSON: {exc}") from exc


def metric_descriptor(h_coeffs, c0: float = 0.0) -> dict:
    return {"kind": "fourier_sigma", "coeffs": [list(map(float, r)) for r in h_coeffs], "c0": float(c0)}


# scenarios ------------------------------------------------------------------------

def parse_t_range(text) -> np.ndarray:
    """``"a:b:step"`` (inclusive of ``b``), a single number, or a list of numbers."""
    if isinstance(text, (int, float)):
        return np.array([float(text)])
    if isinstance(text, (list, tuple)):
        return np.asarray(text, dtype=float)
    parts = str(text).split(":")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise DescriptorError(f"bad t-range {text!r}") from None
    if len(vals) == 1:
        return np.array(vals)
    if len(vals) != 3 or vals[2] <= 0 or vals[1] < vals[0]:
        raise DescriptorError(f"t-range must be a:b:step with step > 0, got {text!r}")
    a, b, step = vals
    count = int(np.floor((b - a) / step + 1e-9)) + 1
    return a + step * np.arange(count)


@dataclass
class Scenario:
    operation: str
    input: dict
    grid: int = 2048
    t: object = None
    depth: int = 5
    tol: float | None = None
    outputs: dict = field(default_factory=dict)
    render: dict = field(default_factory=dict)
    n: tuple = (2, 3, 5)

    def __post_init__(self):
        if self.operation not in OPERATIONS:
            raise DescriptorError(f"unknown operation {self.operation!r}")
        g = int(self.grid)
        if g < 64 or g > 1 << 16 or g & (g - 1):
            raise DescriptorError("grid size must be a power of two between 64 and 65536")
        if not isinstance(self.input, dict):
            self.input = read_json(self.input)

    @property
    def subject(self) -> Subject:
        return load_descriptor(self.input)

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "operation": self.operation, "input": self.input, "grid": self.grid,
               "depth": self.depth, "outputs": self.outputs, "render": self.render, "n": list(self.n)}
        if self.t is not None:
            out["t"] = self.t
        if self.tol is not None:
            out["tol"] = self.tol
        return out


def load_scenario(source) -> Scenario:
    d = read_json(source)
    if not isinstance(d, dict) or d.get("schema") != SCHEMA:
        raise DescriptorError(f"scenario must declare \"schema\": \"{SCHEMA}\"")
    try:
        return Scenario(
            operation=d["operation"], input=d["input"], grid=d.get("grid", 2048), t=d.get("t"),
            depth=int(d.get("depth", 5)), tol=d.get("tol"), outputs=dict(d.get("outputs", {})),
            render=dict(d.get("render", {})), n=tuple(d.get("n", (2, 3, 5))))
    except KeyError as exc:
        raise DescriptorError(f"scenario lacks field {exc.args[0]!r}") from None
