"""Reading experiments, parameter sweeps, and tabular output.

Every computed quantity has an analytic route and, where meaningful, an
independent Fock-space route. With ``backend="both"`` each row carries the
two values and the run aborts with :class:`CrossCheckError` if they differ
by more than ``cross_tol``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Literal, Optional, Sequence

import numpy as np

from . import fock
from .channels import encode_bit
from .coherent import as_amplitude
from .detection import (
    BinaryEnsemble,
    DetectionResult,
    coherent_qfi,
    helstrom_error,
    helstrom_pure,
    homodyne_error,
    pure_overlap,
    qfi_cat,
    qfi_pure_phase,
)
from .errors import CrossCheckError, DomainError
from .quasibell import (
    INDICES,
    closed_form_entropy_of,
    entanglement_entropy,
    gram_matrix,
    gram_matrix_fock,
    make_quasi_bell,
)

Backend = Literal["analytic", "fock", "both"]
BACKENDS = ("analytic", "fock", "both")
VARIABLES = ("alpha", "theta", "prior0")
QUANTITIES = (
    "ecs_overlap",
    "coherent_overlap",
    "pe_coherent",
    "pe_ecs",
    "pe_homodyne",
    "reading",
)

DEFAULT_CROSS_TOL = 1e-8
DEFAULT_ALPHA_GRID = tuple(np.linspace(0.1, 3.0, 30))
DEFAULTS = {"alpha": 1.0, "theta": math.pi, "prior0": 0.5}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    points: int = 30
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise DomainError(f"variable must be one of {VARIABLES}, got {self.variable!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise DomainError("sweep bounds must be finite")
        if not self.start < self.stop:
            raise DomainError(f"need start < stop, got {self.start} >= {self.stop}")
        if int(self.points) != self.points or self.points < 2:
            raise DomainError(f"points must be an integer >= 2, got {self.points!r}")
        unknown = set(self.fixed) - set(VARIABLES)
        if unknown:
            raise DomainError(f"unknown fixed parameters: {sorted(unknown)}")
        if self.variable in self.fixed:
            raise DomainError(f"{self.variable!r} is swept and cannot also be fixed")
        p0 = self.fixed.get("prior0", 0.5)
        if not 0.0 <= p0 <= 1.0:
            raise DomainError(f"prior0 must lie in [0, 1], got {p0}")
        if self.variable == "prior0" and (self.start < 0.0 or self.stop > 1.0):
            raise DomainError("a prior0 sweep must stay within [0, 1]")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.points))


@dataclass
class ResultRow:
    """One output record. ``outputs`` may hold real or complex values."""

    inputs: dict
    outputs: dict
    backend: str = "analytic"

    def flat(self) -> dict:
        """Flatten to scalar columns; complex values become ``<name>_re``/``<name>_im``."""
        out: dict[str, Any] = {}
        for k, v in self.inputs.items():
            out[k] = v
        for k, v in self.outputs.items():
            if isinstance(v, complex) or np.iscomplexobj(v):
                out[f"{k}_re"] = float(np.real(v))
                out[f"{k}_im"] = float(np.imag(v))
            else:
                out[k] = v
        out["backend"] = self.backend
        return out


def _check_backend(backend: str):
    if backend not in BACKENDS:
        raise DomainError(f"backend must be one of {BACKENDS}, got {backend!r}")


def _cross_check(name: str, analytic: complex, numeric: complex, tol: float, point: dict):
    diff = abs(analytic - numeric)
    if not diff <= tol:
        raise CrossCheckError(
            f"{name}: analytic {analytic!r} vs fock {numeric!r} differ by {diff:.3e} "
            f"(tol {tol:.1e}) at {point}"
        )


def _merge(outputs: dict, name: str, analytic, numeric, backend: str, tol: float, point: dict):
    """Place analytic and/or Fock values of ``name`` according to ``backend``."""
    if backend == "analytic":
        outputs[name] = analytic
    elif backend == "fock":
        outputs[name] = numeric
    else:
        _cross_check(name, analytic, numeric, tol, point)
        outputs[name] = analytic
        outputs[f"{name}_fock"] = numeric


# -- state preparation ------------------------------------------------------


def ecs_pair(alpha, theta: float):
    """Analytic (Psi_2, channel image) for a memory bit 1 at phase ``theta``."""
    psi = make_quasi_bell(2, alpha)
    return psi, encode_bit(psi, 1, theta)


def ecs_pair_fock(alpha, theta: float, tail_tol: float):
    """Fock images; the channel is applied by ``phase_shift_fock``, not relabeling."""
    psi = make_quasi_bell(2, alpha)
    v = fock.cat_to_fock(psi, fock.cutoff_for(psi, tail_tol))
    return v, fock.phase_shift_fock(v, theta, "B")


def coherent_pair_fock(alpha, theta: float, tail_tol: float):
    v = fock.coherent_to_fock(alpha, fock.cutoff_for(as_amplitude(alpha), tail_tol))
    return v, fock.phase_shift_fock(v, theta, "A")


def homodyne_amplitude(alpha, theta: float) -> float:
    """Half the separation of the two coherent labels, |a (1 - e^{-i theta})| / 2.

    For theta = pi this is |a|.
    """
    a = as_amplitude(alpha)
    return abs(a - encode_bit(a, 1, theta)) / 2.0


# -- scalar quantities ------------------------------------------------------


def _overlap_values(kind: str, alpha, theta, backend, tail_tol):
    """<probe|channel image> for the ``"ecs"`` or ``"coherent"`` probe.

    Returns ``(analytic, fock)``; the Fock value is ``None`` for analytic runs.
    """
    a = as_amplitude(alpha)
    if kind == "ecs":
        x, y = ecs_pair(a, theta)
        pair_fock = ecs_pair_fock
    else:
        x, y = a, encode_bit(a, 1, theta)
        pair_fock = coherent_pair_fock
    an = pure_overlap(x, y)
    num = None
    if backend != "analytic":
        num = pure_overlap(*pair_fock(a, theta, tail_tol))
    return an, num


# -- reading table ----------------------------------------------------------


def _reading_ensembles(a: complex, theta: float, prior0: float, backend: str, tail_tol: float):
    """Yield (probe name, analytic ensemble, Fock ensemble or None)."""
    x, y = ecs_pair(a, theta)
    pairs = {
        "coherent": ((a, encode_bit(a, 1, theta)), coherent_pair_fock),
        "ecs": ((x, y), ecs_pair_fock),
    }
    for probe, (states, pair_fock) in pairs.items():
        num = None
        if backend != "analytic":
            num = BinaryEnsemble(*pair_fock(a, theta, tail_tol), prior0)
        yield probe, BinaryEnsemble(*states, prior0), num


def run_reading(
    alpha: float = 1.0,
    theta: float = math.pi,
    prior0: float = 0.5,
    *,
    backend: Backend = "analytic",
    tail_tol: float = fock.DEFAULT_TAIL_TOL,
    cross_tol: float = DEFAULT_CROSS_TOL,
) -> list[ResultRow]:
    """Error probability of reading one bit with each probe and receiver.

    Returns three rows: coherent probe with the Helstrom receiver, the
    entangled Psi_2 probe with the Helstrom receiver, and coherent probe with
    a homodyne receiver.
    """
    _check_backend(backend)
    alpha = float(alpha)
    if not alpha > 0.0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    a = as_amplitude(alpha)
    inputs = {"alpha": alpha, "theta": float(theta), "prior0": float(prior0)}
    rows = []
    for probe, ens, ens_fock in _reading_ensembles(a, theta, prior0, backend, tail_tol):
        res = helstrom_pure(ens)
        res_fock = None if ens_fock is None else helstrom_pure(ens_fock)
        outputs: dict[str, Any] = {}
        for name in ("error_prob", "overlap_magnitude"):
            _merge(outputs, name, getattr(res, name),
                   None if res_fock is None else getattr(res_fock, name),
                   backend, cross_tol, inputs)
        rows.append(ResultRow({"probe": probe, "method": res.method.value, **inputs},
                              outputs, backend))
    hom = homodyne_error(homodyne_amplitude(a, theta), prior0)
    rows.append(
        ResultRow(
            {"probe": "coherent", "method": hom.method.value, **inputs},
            {"error_prob": hom.error_prob, "overlap_magnitude": None},
            "analytic",
        )
    )
    return rows


def reading_results(
    alpha: float = 1.0, theta: float = math.pi, prior0: float = 0.5
) -> dict[str, DetectionResult]:
    """The analytic reading table as DetectionResults keyed ``probe/receiver``."""
    a = as_amplitude(alpha)
    out = {}
    for probe, ens, _ in _reading_ensembles(a, theta, prior0, "analytic", fock.DEFAULT_TAIL_TOL):
        out[f"{probe}/helstrom"] = helstrom_pure(ens)
    out["coherent/homodyne"] = homodyne_error(homodyne_amplitude(a, theta), prior0)
    return out


# -- sweeps -----------------------------------------------------------------


def _point_outputs(quantity, alpha, theta, prior0, backend, tail_tol, cross_tol, point):
    p1 = 1.0 - prior0
    outputs: dict[str, Any] = {}

    def pe(kind, name):
        an, num = _overlap_values(kind, alpha, theta, backend, tail_tol)
        _merge(
            outputs,
            name,
            helstrom_error(prior0, p1, abs(an)),
            None if num is None else helstrom_error(prior0, p1, abs(num)),
            backend,
            cross_tol,
            point,
        )

    if quantity in ("ecs_overlap", "coherent_overlap"):
        kind = quantity.split("_")[0]
        an, num = _overlap_values(kind, alpha, theta, backend, tail_tol)
        _merge(outputs, "overlap", an, num, backend, cross_tol, point)
        _merge(outputs, "overlap_magnitude", abs(an), None if num is None else abs(num),
               backend, cross_tol, point)
    elif quantity == "pe_coherent":
        pe("coherent", "pe_coherent")
    elif quantity == "pe_ecs":
        pe("ecs", "pe_ecs")
    elif quantity == "pe_homodyne":
        outputs["pe_homodyne"] = homodyne_error(homodyne_amplitude(alpha, theta), prior0).error_prob
    elif quantity == "reading":
        pe("coherent", "pe_coherent")
        pe("ecs", "pe_ecs")
        outputs["pe_homodyne"] = homodyne_error(homodyne_amplitude(alpha, theta), prior0).error_prob
    else:
        raise DomainError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    return outputs


def run_sweep(
    spec: SweepSpec,
    quantity: str,
    *,
    backend: Backend = "analytic",
    tail_tol: float = fock.DEFAULT_TAIL_TOL,
    cross_tol: float = DEFAULT_CROSS_TOL,
) -> list[ResultRow]:
    """Evaluate ``quantity`` along the sweep grid, in ascending order.

    Points where the quantity is undefined (e.g. the entangled probe at
    alpha = 0) become rows with an ``error`` field. A backend disagreement
    raises :class:`CrossCheckError`.
    """
    _check_backend(backend)
    if quantity not in QUANTITIES:
        raise DomainError(f"quantity must be one of {QUANTITIES}, got {quantity!r}")
    rows = []
    for value in spec.grid():
        params = {**DEFAULTS, **spec.fixed, spec.variable: float(value)}
        point = {"alpha": params["alpha"], "theta": params["theta"], "prior0": params["prior0"]}
        try:
            outputs = _point_outputs(
                quantity, params["alpha"], params["theta"], params["prior0"],
                backend, tail_tol, cross_tol, point,
            )
            rows.append(ResultRow({"quantity": quantity, **point}, outputs, backend))
        except CrossCheckError:
            raise
        except DomainError as exc:
            rows.append(ResultRow({"quantity": quantity, **point}, {"error": str(exc)}, backend))
    return rows


# -- other tables -----------------------------------------------------------


def gram_rows(
    alphas: Iterable[float],
    *,
    backend: Backend = "analytic",
    tail_tol: float = fock.DEFAULT_TAIL_TOL,
    cross_tol: float = DEFAULT_CROSS_TOL,
) -> list[ResultRow]:
    """One row per Gram entry (i, j), i and j in 1..4."""
    _check_backend(backend)
    rows = []
    for alpha in alphas:
        g = gram_matrix(alpha)
        gf = gram_matrix_fock(alpha, tail_tol) if backend != "analytic" else None
        for i in INDICES:
            for j in INDICES:
                point = {"alpha": float(alpha), "i": i, "j": j}
                out: dict[str, Any] = {}
                _merge(out, "value", g.entry(i, j), None if gf is None else gf.entry(i, j),
                       backend, cross_tol, point)
                rows.append(ResultRow(point, out, backend))
    return rows


def entropy_rows(
    alphas: Iterable[float],
    *,
    backend: Backend = "analytic",
    tail_tol: float = fock.DEFAULT_TAIL_TOL,
    cross_tol: float = DEFAULT_CROSS_TOL,
) -> list[ResultRow]:
    """Entanglement of Psi_1..Psi_4: closed form (analytic) and reduced-state entropy (fock)."""
    _check_backend(backend)
    rows = []
    for alpha in alphas:
        for i in INDICES:
            point = {"alpha": float(alpha), "state": i}
            try:
                closed = closed_form_entropy_of(i, alpha)
                num = None
                if backend != "analytic":
                    num = entanglement_entropy(make_quasi_bell(i, alpha), tail_tol)
                out: dict[str, Any] = {}
                _merge(out, "entropy_bits", closed, num, backend, cross_tol, point)
            except CrossCheckError:
                raise
            except DomainError as exc:
                out = {"error": str(exc)}
            rows.append(ResultRow(point, out, backend))
    return rows


def _qfi_pair(probe: str, a: complex, backend: str, tail_tol: float):
    if probe == "coherent":
        num = None
        if backend != "analytic":
            num = qfi_pure_phase(fock.coherent_to_fock(a, fock.cutoff_for(a, tail_tol)), "A")
        return coherent_qfi(a), num
    psi = make_quasi_bell(int(probe[-1]), a)
    num = None
    if backend != "analytic":
        num = qfi_pure_phase(fock.cat_to_fock(psi, fock.cutoff_for(psi, tail_tol)), "B")
    return qfi_cat(psi, "B"), num


def qfi_rows(
    alphas: Iterable[float],
    *,
    backend: Backend = "analytic",
    tail_tol: float = fock.DEFAULT_TAIL_TOL,
    cross_tol: float = DEFAULT_CROSS_TOL,
) -> list[ResultRow]:
    """Phase QFI on the memory-facing mode for the coherent probe and each quasi-Bell state."""
    _check_backend(backend)
    rows = []
    for alpha in alphas:
        a = as_amplitude(alpha)
        for probe in ("coherent", "psi1", "psi2", "psi3", "psi4"):
            point = {"alpha": float(alpha), "probe": probe,
                     "mode": "A" if probe == "coherent" else "B"}
            try:
                an, num = _qfi_pair(probe, a, backend, tail_tol)
                out: dict[str, Any] = {}
                _merge(out, "qfi", an, num, backend, cross_tol, point)
            except CrossCheckError:
                raise
            except DomainError as exc:
                out = {"error": str(exc)}
            rows.append(ResultRow(point, out, backend))
    return rows


# -- serialization ----------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _columns(flat_rows: Sequence[dict]) -> list[str]:
    cols: list[str] = []
    for r in flat_rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    return cols


def _json_value(v):
    if isinstance(v, (np.floating,)):
        return float(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def render(rows: Sequence[ResultRow], fmt: str = "csv") -> str:
    """Serialize rows as CSV (header row, 17 significant digits) or a JSON array."""
    if not rows:
        raise DomainError("nothing to emit")
    flat = [r.flat() for r in rows]
    cols = _columns(flat)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in flat:
            w.writerow([_fmt(r.get(c)) for c in cols])
        return buf.getvalue()
    if fmt == "json":
        objs = [{c: _json_value(r.get(c)) for c in cols} for r in flat]
        return json.dumps(objs, indent=1) + "\n"
    raise DomainError(f"format must be 'csv' or 'json', got {fmt!r}")


def emit(rows: Sequence[ResultRow], fmt: str = "csv", destination: Optional[str | Path] = None):
    """Write rows to ``destination``; ``None`` or ``"-"`` means standard output."""
    text = render(rows, fmt)
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise DomainError(f"cannot write {destination}: {exc}") from exc


def _parse_cell(s: str):
    if s == "":
        return None
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def parse(text: str, fmt: str = "csv") -> list[dict]:
    """Inverse of :func:`render`, returning flat dictionaries."""
    if fmt == "json":
        return json.loads(text)
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        return [{k: _parse_cell(v) for k, v in row.items()} for row in reader]
    raise DomainError(f"format must be 'csv' or 'json', got {fmt!r}")
