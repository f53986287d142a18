"""Probe absorption/dispersion spectra and their analysis.

A sweep solves the steady state at each probe detuning and records the
probe coherence and populations.  Absorption is ``+Im rho31`` and
dispersion ``Re rho31`` of the reported coherence, which is referenced to
the probe phase (``rho31 * exp(i phi13)``) so that tables depend on the
drive phases only through the gauge-invariant loop phase.  For every run
with phi13 = 0 (all stock configurations) the reported value is the raw
steady-state matrix element.

Analysis tools: extremum finding with parabolic refinement and a
window/classification heuristic, a numerical principal-value Hilbert
transform for causality (Kramers-Kronig) checks, the closed-form weak-
coherence approximation of the probe response, and population-inversion
scans.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atom import Decoherence, DriveSet, global_phase, rotating_hamiltonian
from .errors import (
    InsufficientResolution,
    SingularDenominator,
    ValidationError,
    WindowTooNarrow,
)
from .lindblad import build_liouvillian, steady_state

CLASSIFICATIONS = ("EIT", "LWI", "EITA", "ABSORPTION", "AMPLIFICATION_WINDOW")

#: An extremum counts as a peak if its |height| is at least this fraction
#: of the largest |absorption| in the table.
PEAK_SIGNIFICANCE = 1e-3

#: Two flanking maxima are treated as a symmetric pair when their heights
#: agree within this factor; a dominant/minor pair falls through to the
#: one-absorption-one-gain analysis instead.
FLANK_COMPARABLE_FACTOR = 3.0

#: Endpoint condition for Kramers-Kronig sweeps: |Im| at the grid edges
#: must not exceed this fraction of its maximum.
KK_ENDPOINT_FRACTION = 0.05


@dataclass(frozen=True)
class SpectrumPoint:
    """Steady-state response at one probe detuning."""

    delta13: float
    rho31: complex
    pop1: float
    pop2: float
    pop3: float
    inversion: float

    def __post_init__(self):
        total = self.pop1 + self.pop2 + self.pop3
        if abs(total - 1.0) > 1e-9:
            raise ValidationError(f"populations sum to {total}, not 1")
        for p in (self.pop1, self.pop2, self.pop3):
            if p < -1e-9 or p > 1.0 + 1e-9:
                raise ValidationError(f"population {p} outside [0, 1]")


@dataclass(frozen=True)
class SpectrumTable:
    """Ordered sweep results plus the parameters that produced them."""

    points: tuple[SpectrumPoint, ...]
    drives: DriveSet
    dec: Decoherence

    def __post_init__(self):
        d = np.array([p.delta13 for p in self.points])
        if d.size and np.any(np.diff(d) <= 0.0):
            raise ValidationError("detuning grid must be strictly increasing")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def detunings(self) -> np.ndarray:
        return np.array([p.delta13 for p in self.points])

    @property
    def rho31(self) -> np.ndarray:
        return np.array([p.rho31 for p in self.points])

    @property
    def absorption(self) -> np.ndarray:
        return self.rho31.imag

    @property
    def dispersion(self) -> np.ndarray:
        return self.rho31.real

    @property
    def populations(self) -> np.ndarray:
        return np.array([[p.pop1, p.pop2, p.pop3] for p in self.points])

    @property
    def inversions(self) -> np.ndarray:
        return np.array([p.inversion for p in self.points])

    @property
    def loop_phase(self) -> float:
        return global_phase(self.drives)

    def susceptibility(self, scale: float = 1.0) -> np.ndarray:
        """Probe susceptibility in units of rho31/Omega13.

        The dipole/field prefactor is not modeled; fold it into ``scale``.
        Requires a nonzero probe magnitude.
        """
        omega13 = self.drives.d13.magnitude
        if omega13 <= 0.0:
            raise ValidationError("susceptibility needs a nonzero probe magnitude")
        return scale * self.rho31 / omega13


@dataclass(frozen=True)
class PeakReport:
    """Extrema, transparency-window geometry and profile classification."""

    peak_positions: tuple[float, ...]
    peak_heights: tuple[float, ...]
    window_center: float
    fwhm: float
    classification: str

    def __post_init__(self):
        if list(self.peak_positions) != sorted(self.peak_positions):
            raise ValidationError("peak positions must be sorted")
        if self.fwhm < 0.0:
            raise ValidationError("fwhm must be >= 0")
        if self.classification not in CLASSIFICATIONS:
            raise ValidationError(f"unknown classification {self.classification!r}")


def default_detuning_grid() -> np.ndarray:
    """801 uniform points on [-4, 4] (resolves a unit-width window)."""
    return np.linspace(-4.0, 4.0, 801)


def kramers_kronig_grid() -> np.ndarray:
    """4001 uniform points on [-20, 20], wide enough for tail decay."""
    return np.linspace(-20.0, 20.0, 4001)


def probe_response(drives: DriveSet, dec: Decoherence, delta13: float) -> SpectrumPoint:
    """Steady-state response at one probe detuning.

    Sets the probe detuning (delta12 re-derives), builds the rotating-frame
    Hamiltonian and Liouvillian, and solves for the steady state.  The
    reported coherence is rho31 * exp(i phi13).  A zero probe magnitude is
    allowed: the loop drives still generate a coherence at the probe
    frequency (the gain-without-probe configuration).
    """
    d = drives.with_probe_detuning(delta13)
    lv = build_liouvillian(rotating_hamiltonian(d), dec)
    rho = steady_state(lv)
    pops = np.diag(rho).real
    rho31 = rho[2, 0] * np.exp(1j * d.d13.phase)
    return SpectrumPoint(
        delta13=float(delta13),
        rho31=complex(rho31),
        pop1=float(pops[0]),
        pop2=float(pops[1]),
        pop3=float(pops[2]),
        inversion=float(pops[0] - pops[2]),
    )


def sweep_detuning(drives: DriveSet, dec: Decoherence, grid) -> SpectrumTable:
    """Probe sweep over a strictly increasing detuning grid.

    Grid points are independent steady-state solves; failures re-raise
    with the offending detuning attached.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValidationError("detuning grid must be a nonempty 1-d sequence")
    if np.any(np.diff(grid) <= 0.0):
        raise ValidationError("detuning grid must be strictly increasing")
    points = []
    for d in grid:
        try:
            points.append(probe_response(drives, dec, d))
        except Exception as exc:
            exc.args = (f"at delta13={d:g}: {exc}",)
            raise
    return SpectrumTable(points=tuple(points), drives=drives, dec=dec)


def sweep_phase(drives: DriveSet, dec: Decoherence, grid, phases) -> list[SpectrumTable]:
    """One detuning sweep per loop phase.

    Each phase Phi is applied as phi12 = Phi with phi13 = phi23 = 0; any
    gauge-equivalent assignment would give the same tables.
    """
    return [sweep_detuning(drives.with_loop_phase(phi), dec, grid) for phi in phases]


def analytic_rho31(omega12: float, omega13: float, omega23: float,
                   phases: tuple[float, float, float], delta13: float,
                   gamma12: float, big_gamma3: float,
                   pops: tuple[float, float, float]) -> complex:
    """Closed-form probe coherence in the small-rho23 approximation.

    With F = 4 (i d13 - Gamma3)(i d13 - gamma12/2) + Omega23^2 and
    Phi = phi12 + phi23 - phi13:

        rho31 = -exp(-i phi13) [ 2i Omega13 (p1 - p3)(i d13 - gamma12/2)
                                 + Omega23 Omega12 exp(-i Phi) (p1 - p2) ] / F

    Raises SingularDenominator when |F| < 1e-12.
    """
    phi12, phi13, phi23 = phases
    p1, p2, p3 = pops
    f = 4.0 * (1j * delta13 - big_gamma3) * (1j * delta13 - 0.5 * gamma12) + omega23 ** 2
    if abs(f) < 1e-12:
        raise SingularDenominator(f"|F| = {abs(f):.3e} at delta13 = {delta13}")
    loop = phi12 + phi23 - phi13
    num = (2j * omega13 * (p1 - p3) * (1j * delta13 - 0.5 * gamma12)
           + omega23 * omega12 * np.exp(-1j * loop) * (p1 - p2))
    return complex(-np.exp(-1j * phi13) * num / f)


def _refine(x: np.ndarray, y: np.ndarray, i: int) -> tuple[float, float]:
    """Parabolic refinement of an interior grid extremum."""
    denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
    if denom == 0.0:
        return float(x[i]), float(y[i])
    shift = 0.5 * (y[i - 1] - y[i + 1]) / denom
    shift = float(np.clip(shift, -1.0, 1.0))
    pos = x[i] + shift * (x[i] - x[i - 1])
    height = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift
    return float(pos), float(height)


def _extrema(x: np.ndarray, y: np.ndarray) -> list[tuple[int, float, float]]:
    """Significant interior extrema as (index, refined position, height)."""
    scale = np.max(np.abs(y))
    if scale == 0.0:
        return []
    out = []
    for i in range(1, len(y) - 1):
        if (y[i] > y[i - 1] and y[i] > y[i + 1]) or (y[i] < y[i - 1] and y[i] < y[i + 1]):
            pos, height = _refine(x, y, i)
            if abs(height) >= PEAK_SIGNIFICANCE * scale:
                out.append((i, pos, height))
    return out


def _crossing(x: np.ndarray, y: np.ndarray, lo: float, hi: float) -> float | None:
    """Zero crossing of y on (lo, hi) by sign change + linear interpolation,
    choosing the crossing nearest zero detuning when there are several."""
    mask = (x >= lo) & (x <= hi)
    idx = np.where(mask)[0]
    if idx.size < 2:
        return None
    best = None
    for k in idx[:-1]:
        if y[k] == 0.0:
            c = float(x[k])
        elif y[k] * y[k + 1] < 0.0:
            c = float(x[k] - y[k] * (x[k + 1] - x[k]) / (y[k + 1] - y[k]))
        else:
            continue
        if best is None or abs(c) < abs(best):
            best = c
    return best


def _abs_threshold_span(x: np.ndarray, y: np.ndarray, center: float,
                        lo: float, hi: float, thr: float) -> float:
    """Width of the contiguous region around ``center`` inside [lo, hi]
    where |y| <= thr, with linear interpolation at the boundary crossings."""
    a = np.abs(y)
    i0 = int(np.argmin(np.abs(x - center)))
    if a[i0] > thr:
        # center sample sits above threshold; no measurable window
        return 0.0
    left = lo
    for k in range(i0, 0, -1):
        if x[k - 1] < lo:
            left = lo
            break
        if a[k - 1] > thr:
            frac = (a[k - 1] - thr) / (a[k - 1] - a[k])
            left = x[k - 1] + frac * (x[k] - x[k - 1])
            break
    else:
        left = max(lo, float(x[0]))
    right = hi
    for k in range(i0, len(x) - 1):
        if x[k + 1] > hi:
            right = hi
            break
        if a[k + 1] > thr:
            frac = (a[k + 1] - thr) / (a[k + 1] - a[k])
            right = x[k + 1] - frac * (x[k + 1] - x[k])
            break
    else:
        right = min(hi, float(x[-1]))
    return max(0.0, float(right - left))


def _lobe_fwhm(x: np.ndarray, y: np.ndarray, sign: float) -> tuple[float, float]:
    """(center, FWHM) of the dominant single lobe of sign ``sign``."""
    ys = sign * y
    i0 = int(np.argmax(ys))
    half = 0.5 * ys[i0]
    left = float(x[0])
    for k in range(i0, 0, -1):
        if ys[k - 1] < half:
            frac = (half - ys[k - 1]) / (ys[k] - ys[k - 1])
            left = x[k - 1] + frac * (x[k] - x[k - 1])
            break
    right = float(x[-1])
    for k in range(i0, len(x) - 1):
        if ys[k + 1] < half:
            frac = (ys[k] - half) / (ys[k] - ys[k + 1])
            right = x[k] + frac * (x[k + 1] - x[k])
            break
    pos = _refine(x, y, i0)[0] if 0 < i0 < len(x) - 1 else float(x[i0])
    return pos, max(0.0, right - left)


def find_peaks(table: SpectrumTable) -> PeakReport:
    """Locate absorption extrema and classify the spectral profile.

    Local extrema of Im rho31 come from a 3-point discrete test with
    parabolic refinement; extrema below ``PEAK_SIGNIFICANCE`` of the
    global |maximum| are ignored, and extrema closer than 3 grid points
    raise InsufficientResolution.

    The window and classification logic, in order:

    * two comparable positive maxima whose interior dips below zero
      -> AMPLIFICATION_WINDOW (gain window between absorption flanks);
    * two comparable positive maxima whose interior dips to half the mean
      flank height -> EIT (transparency window); if the dip never reaches
      half-flank depth the structure is a single broad lobe -> ABSORPTION;
    * a dominant extremum with an adjacent opposite-sign partner -> EITA
      (absorption on one side of the window, gain on the other), window
      center at the zero crossing between them;
    * all-positive extrema -> ABSORPTION; all-negative -> LWI (gain with
      no transparency window).

    The transparency-window FWHM is the width of the region between the
    two flanking extrema where |Im rho31| stays at or below half the mean
    flanking |extremum|; for windowless (ABSORPTION / LWI) profiles it is
    the half-maximum width of the dominant lobe.
    """
    x = table.detunings
    y = table.absorption
    if len(x) < 3:
        raise InsufficientResolution("need at least 3 grid points")
    ext = _extrema(x, y)
    for (i1, _, _), (i2, _, _) in zip(ext, ext[1:]):
        if i2 - i1 < 3:
            raise InsufficientResolution(
                f"extrema at grid indices {i1} and {i2} span fewer than 3 points")
    positions = tuple(e[1] for e in ext)
    heights = tuple(e[2] for e in ext)

    if not ext:
        return PeakReport(positions, heights, 0.0, 0.0, "ABSORPTION")

    maxima = [e for e in ext if e[2] > 0.0]
    minima = [e for e in ext if e[2] < 0.0]

    pair = None
    if len(maxima) >= 2:
        tallest = sorted(maxima, key=lambda e: -e[2])[:2]
        hi_h, lo_h = tallest[0][2], tallest[1][2]
        if hi_h <= FLANK_COMPARABLE_FACTOR * lo_h:
            pair = sorted(tallest, key=lambda e: e[1])

    if pair is not None:
        (il, pl, hl), (ir, pr, hr) = pair
        inner = slice(il + 1, ir)
        if ir - il < 3:
            raise InsufficientResolution("window between flanks spans fewer than 3 points")
        thr = 0.25 * (abs(hl) + abs(hr))
        k = il + 1 + int(np.argmin(y[inner]))
        dip_pos, dip_val = _refine(x, y, k)
        if dip_val < 0.0:
            fwhm = _abs_threshold_span(x, y, dip_pos, pl, pr, thr)
            return PeakReport(positions, heights, dip_pos, fwhm, "AMPLIFICATION_WINDOW")
        if dip_val <= thr:
            fwhm = _abs_threshold_span(x, y, dip_pos, pl, pr, thr)
            return PeakReport(positions, heights, dip_pos, fwhm, "EIT")
        center, fwhm = _lobe_fwhm(x, y, +1.0)
        return PeakReport(positions, heights, center, fwhm, "ABSORPTION")

    if maxima and minima:
        dominant = max(ext, key=lambda e: abs(e[2]))
        others = sorted((e for e in ext if np.sign(e[2]) != np.sign(dominant[2])),
                        key=lambda e: abs(e[1] - dominant[1]))
        partner = others[0]
        lo, hi = sorted((dominant[1], partner[1]))
        center = _crossing(x, y, lo, hi)
        if center is None:
            center = 0.5 * (lo + hi)
        thr = 0.25 * (abs(dominant[2]) + abs(partner[2]))
        fwhm = _abs_threshold_span(x, y, center, lo, hi, thr)
        return PeakReport(positions, heights, center, fwhm, "EITA")

    if maxima:
        center, fwhm = _lobe_fwhm(x, y, +1.0)
        return PeakReport(positions, heights, center, fwhm, "ABSORPTION")
    center, fwhm = _lobe_fwhm(x, y, -1.0)
    return PeakReport(positions, heights, center, fwhm, "LWI")


def hilbert_transform(values, grid) -> np.ndarray:
    """Principal-value Hilbert transform (1/pi) PV int y(t)/(t - x) dt.

    Trapezoidal quadrature on a uniform grid; the singular sample is
    replaced by the symmetric average of its neighbours, which converges
    to the local PV contribution y'(x).  With this sign convention the
    dispersion of a causal response equals the transform of its
    absorption, e.g. Im = g/(d^2+g^2) pairs with Re = -d/(d^2+g^2).
    """
    y = np.asarray(values, dtype=float)
    x = np.asarray(grid, dtype=float)
    n = len(x)
    if n < 3 or y.shape != x.shape:
        raise ValidationError("grid and values must be equal-length, n >= 3")
    h = np.diff(x)
    if not np.allclose(h, h[0], rtol=1e-8, atol=0.0):
        raise ValidationError("Hilbert transform requires a uniform grid")
    w = np.full(n, h[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    out = np.empty(n)
    for i in range(n):
        dx = x - x[i]
        g = np.empty(n)
        np.divide(y, dx, out=g, where=(dx != 0.0))
        if 0 < i < n - 1:
            g[i] = 0.5 * (g[i - 1] + g[i + 1])
        else:
            g[i] = g[1] if i == 0 else g[n - 2]
        out[i] = np.dot(w, g)
    return out / np.pi


def kramers_kronig_residual(table: SpectrumTable) -> float:
    """Causality check: how far dispersion deviates from the Hilbert
    transform of absorption.

    Returns max|Re - H(Im) - c| / max|Re| with c the constant offset that
    minimizes the maximum deviation.  Raises WindowTooNarrow when |Im| at
    either grid end exceeds 5% of its maximum (tails not contained).
    """
    x = table.detunings
    im = table.absorption
    re = table.dispersion
    peak = np.max(np.abs(im))
    if peak == 0.0:
        return 0.0
    if abs(im[0]) > KK_ENDPOINT_FRACTION * peak or abs(im[-1]) > KK_ENDPOINT_FRACTION * peak:
        raise WindowTooNarrow(
            f"|Im| at endpoints ({abs(im[0]):.3e}, {abs(im[-1]):.3e}) exceeds "
            f"{KK_ENDPOINT_FRACTION:.0%} of max {peak:.3e}")
    transform = hilbert_transform(im, x)
    dev = re - transform
    offset = 0.5 * (np.max(dev) + np.min(dev))
    return float(np.max(np.abs(dev - offset)) / np.max(np.abs(re)))


def population_inversion_scan(table: SpectrumTable) -> tuple[float, float]:
    """Minimum of pop1 - pop3 over the sweep and the detuning where it occurs."""
    if len(table) == 0:
        raise ValidationError("empty spectrum table")
    inv = table.inversions
    k = int(np.argmin(inv))
    return float(inv[k]), float(table.detunings[k])


def autler_townes_positions(omega23: float) -> tuple[float, float]:
    """Standard strong-pump splitting estimate, peaks at +-Omega23/2."""
    return (-0.5 * abs(omega23), 0.5 * abs(omega23))


def transparency_fwhm_estimate(dec: Decoherence, omega23: float) -> float:
    """Narrow-window width estimate gamma12 + gphi2 + Omega23^2 / (2 Gamma3).

    Valid in the overdamped (weak-pump) regime Omega23 < Gamma3 where the
    window is an unsplit dip; quoted for reporting alongside measured
    widths.
    """
    return dec.gamma12 + dec.gphi2 + omega23 ** 2 / (2.0 * dec.big_gamma3)


def write_spectrum_csv(table: SpectrumTable, path, extra_metadata: dict | None = None) -> None:
    """Write a sweep as CSV with a ``#`` metadata preamble.

    Columns: delta13, re_rho31, im_rho31, pop1, pop2, pop3, inversion.
    """
    meta = {
        "omega12": table.drives.d12.magnitude,
        "phi12": table.drives.d12.phase,
        "omega13": table.drives.d13.magnitude,
        "phi13": table.drives.d13.phase,
        "omega23": table.drives.d23.magnitude,
        "phi23": table.drives.d23.phase,
        "delta23": table.drives.d23.detuning,
        "gamma12": table.dec.gamma12,
        "gamma13": table.dec.gamma13,
        "gamma23": table.dec.gamma23,
        "gphi2": table.dec.gphi2,
        "gphi3": table.dec.gphi3,
        "loop_phase": table.loop_phase,
    }
    if extra_metadata:
        meta.update(extra_metadata)
    lines = [f"# {key} = {value!r}" for key, value in meta.items()]
    lines.append("delta13,re_rho31,im_rho31,pop1,pop2,pop3,inversion")
    for p in table.points:
        lines.append(
            f"{p.delta13!r},{p.rho31.real!r},{p.rho31.imag!r},"
            f"{p.pop1!r},{p.pop2!r},{p.pop3!r},{p.inversion!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
