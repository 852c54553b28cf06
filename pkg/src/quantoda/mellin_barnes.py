"""Iterated contour-integral evaluation of Whittaker and spherical functions.

The wave function is a multiple Fourier-type integral over a triangular
array of spectral variables: the kernel is a product over adjacent levels of
Gamma factors divided by within-level Gamma factors, times the exponential
carrying the coordinates.  Levels n = 1..N-1 are integrated, the top level
carries the spectral parameters.

Whittaker contours run parallel to the real axis with level offsets
h_n decreasing in n (level n strictly above level n+1), which keeps every
numerator Gamma argument at positive real part.  Spherical contours are
real; the kernel there pairs Gamma(d/(2i)+1/4) with its reflection, and
within-level coincidences annihilate the integrand through the denominator.

Quadrature is a truncated uniform grid per dimension (spectrally accurate
for these analytic, exponentially decaying integrands).  N <= 3.  The
3-dimensional sums never materialize a 3-D array: the integrand factorizes
into 1-D and 2-D pieces and the node sum is a matrix contraction.

Normalization: 1/(2 pi) per integration variable, which makes N = 1 return
exactly e^{i alpha x}; all cross-checks against oracles are ratio-based.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .gz import TriangularArray
from .separation import sep_measure, sep_wavefunction
from .specfun import log_gamma, log_gamma_array

TWO_PI = 2.0 * math.pi
LEVEL_OFFSET_STEP = 0.5   # h_n = (N - n) * step
POLE_STRIP = 0.25         # distance heuristic for the node-spacing estimate
MIN_NODES = 64
COINCIDENT_TOL = 1e-6


class DimensionError(ValueError):
    """Requested lattice size outside the supported range."""


class ContourError(ValueError):
    """Contour violates the level-ordering condition or hits a pole."""


@dataclass(frozen=True)
class ContourSpec:
    """Per-level imaginary offsets h_n (level n integrates over t + i h_n)."""

    offsets: tuple
    half_width: float
    nodes_per_dim: int

    def __init__(self, offsets: Sequence[float], half_width: float,
                 nodes_per_dim: int):
        offs = tuple(float(h) for h in offsets)
        for n in range(len(offs) - 1):
            if offs[n] <= offs[n + 1]:
                raise ContourError(
                    f"offsets must strictly decrease: h_{n+1}={offs[n]} "
                    f"<= h_{n+2}={offs[n+1]}")
        if offs and offs[-1] != 0.0:
            raise ContourError("top-level offset must be 0")
        if half_width <= 0 or nodes_per_dim < 2:
            raise ContourError("invalid quadrature extents")
        object.__setattr__(self, "offsets", offs)
        object.__setattr__(self, "half_width", float(half_width))
        object.__setattr__(self, "nodes_per_dim", int(nodes_per_dim))


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error_estimate: float
    evaluations: int


def default_contour(N: int, alpha: Sequence[float], tol: float) -> ContourSpec:
    """Offsets h_n = (N-n)/2; truncation and node count from decay estimates.

    Truncation: the kernel decays like e^{-pi |t|} in each variable, so T
    is set from e^{-pi T} < tol/10 plus a margin covering the spread of the
    spectral parameters.  Node spacing: the trapezoid error for a strip of
    analyticity of width d behaves like e^{-2 pi d / dt}.
    """
    amax = max((abs(float(a)) for a in alpha), default=1.0)
    budget = math.log(10.0 / tol)
    T = budget / math.pi + 2.0 + 2.0 * amax
    dt = TWO_PI * POLE_STRIP / budget
    nodes = max(MIN_NODES, int(math.ceil(2.0 * T / dt)))
    offsets = tuple((N - n) * LEVEL_OFFSET_STEP for n in range(1, N + 1))
    return ContourSpec(offsets, T, nodes)


# ---------------------------------------------------------------------------
# Scalar integrand (reference path, any N)
# ---------------------------------------------------------------------------


def mb_integrand(arr: TriangularArray, x: Sequence[float], which: str) -> complex:
    """Kernel times coordinate exponential at one point of the array.

    which = 'whittaker': numerator Gamma((lam_{nk}-lam_{n+1,m})/i) over
    adjacent levels; 'spherical': the paired Gamma(d/(2i)+1/4) factors.
    Both share the within-level denominator Gamma((lam_{ns}-lam_{np})/i).
    """
    if which not in ("whittaker", "spherical"):
        raise ValueError(f"unknown kernel {which!r}")
    N = arr.N
    if len(x) != N:
        raise ValueError("x must have one entry per level")
    total = 0.0 + 0.0j
    for n in range(1, N):
        for k in range(1, n + 1):
            for m in range(1, n + 2):
                d = complex(arr.get(n, k) - arr.get(n + 1, m))
                if which == "whittaker":
                    total += log_gamma(-1j * d)
                else:
                    total += log_gamma(d / 2j + 0.25) + log_gamma(-d / 2j + 0.25)
        for s in range(1, n + 1):
            for p in range(1, n + 1):
                if s != p:
                    total -= log_gamma(-1j * complex(arr.get(n, s) - arr.get(n, p)))
    for n in range(1, N + 1):
        rown = arr.level(n)
        prev = arr.level(n - 1) if n > 1 else ()
        total += 1j * x[n - 1] * (sum(rown) - sum(prev))
    return cmath.exp(total)


# ---------------------------------------------------------------------------
# Vectorized kernel pieces
# ---------------------------------------------------------------------------


def _adjacent_log(av, bv, which: str):
    """log of the adjacent-level factor linking one variable to another."""
    d = np.subtract.outer(av, bv)
    if which == "whittaker":
        return log_gamma_array(-1j * d)
    return log_gamma_array(d / 2j + 0.25) + log_gamma_array(-d / 2j + 0.25)


def _inv_denominator(sv):
    """exp(-logGamma(-i(s1-s2)) - logGamma(-i(s2-s1))); zero on the diagonal."""
    d = np.subtract.outer(sv, sv)
    with np.errstate(all="ignore"):
        lg = log_gamma_array(-1j * d) + log_gamma_array(1j * d)
        out = np.exp(-lg)
    np.fill_diagonal(out, 0.0)
    return out


def _strided_variants(n: int):
    """Index sets for the full grid and its stride-2 subgrid."""
    return [(slice(None), 1.0), (slice(0, n, 2), 2.0)]


# ---------------------------------------------------------------------------
# Direct evaluation
# ---------------------------------------------------------------------------


def _whittaker_values_n2(alpha, us: np.ndarray, contour: ContourSpec,
                         which: str = "whittaker", top=None):
    """For each u = x1 - x2, the 1-D node sums (full grid and stride-2)."""
    h1 = contour.offsets[0]
    t = np.linspace(-contour.half_width, contour.half_width, contour.nodes_per_dim)
    lam = t + 1j * h1
    top = alpha if top is None else top
    logk = sum(_adjacent_log(lam, a, which).reshape(-1) for a in top)
    phase = np.exp(np.multiply.outer(us, 1j * lam))        # (nu, nt)
    kern = np.exp(logk)
    dt = t[1] - t[0]
    out = []
    for sl, fac in _strided_variants(len(t)):
        out.append((phase[:, sl] @ kern[sl]) * (dt * fac) / TWO_PI)
    return out[0], out[1]


def _whittaker_values_n3(alpha, us: np.ndarray, vs: np.ndarray,
                         contour: ContourSpec, which: str = "whittaker"):
    """F[u,v] with u = x1-x2, v = x2-x3, via matrix contraction per v.

    Returns (full, halved) arrays of shape (len(us), len(vs)).
    """
    h1, h2 = contour.offsets[0], contour.offsets[1]
    t = np.linspace(-contour.half_width, contour.half_width, contour.nodes_per_dim)
    a = t + 1j * h1          # level-1 variable
    b = t + 1j * h2          # level-2 variables (both run over the same nodes)
    A = np.exp(_adjacent_log(a, b, which))                 # (na, nb)
    wtop = np.exp(sum(_adjacent_log(b, al, which).reshape(-1) for al in alpha))
    D = _inv_denominator(b)
    dt = t[1] - t[0]
    results = []
    for sl, fac in _strided_variants(len(t)):
        Asl, Dsl, wsl = A[sl][:, sl], D[sl][:, sl], wtop[sl]
        bsl, asl = b[sl], a[sl]
        phase_b = np.exp(np.multiply.outer(1j * bsl, vs))   # (nb, nv)
        phase_a = np.exp(np.multiply.outer(us, 1j * asl))   # (nu, na)
        vals = np.empty((len(us), len(vs)), dtype=complex)
        for iv in range(len(vs)):
            B = Asl * (wsl * phase_b[:, iv])[None, :]
            val_a = np.einsum("ab,ab->a", B @ Dsl, B)
            vals[:, iv] = phase_a @ val_a
        results.append(vals * (dt * fac) ** 3 / TWO_PI ** 3)
    return results[0], results[1]


def _check_n(N: int):
    if not 1 <= N <= 3:
        raise DimensionError(f"N={N} unsupported (1 <= N <= 3)")


def whittaker_eval(N: int, alpha: Sequence[float], x: Sequence[float],
                   tol: float = 1e-6, contour: ContourSpec | None = None) -> QuadratureResult:
    """Direct tensor-quadrature evaluation of the wave function at one x."""
    _check_n(N)
    if len(alpha) != N or len(x) != N:
        raise ValueError("alpha and x must have length N")
    sigma1 = float(sum(alpha))
    if N == 1:
        return QuadratureResult(cmath.exp(1j * alpha[0] * x[0]), 0.0, 1)
    contour = contour or default_contour(N, alpha, tol)
    M = contour.nodes_per_dim
    if N == 2:
        full, half = _whittaker_values_n2(alpha, np.array([x[0] - x[1]]), contour)
        carrier = cmath.exp(1j * sigma1 * x[1])
        evals = M
    else:
        full, half = _whittaker_values_n3(
            alpha, np.array([x[0] - x[1]]), np.array([x[1] - x[2]]), contour)
        carrier = cmath.exp(1j * sigma1 * x[2])
        evals = M ** 3
    v = complex(full.reshape(-1)[0]) * carrier
    vh = complex(half.reshape(-1)[0]) * carrier
    return QuadratureResult(v, abs(v - vh), evals)


def whittaker_on_grid(N: int, alpha: Sequence[float], axes: Sequence[np.ndarray],
                      tol: float = 1e-6, contour: ContourSpec | None = None) -> np.ndarray:
    """Wave function on a full tensor grid of coordinates.

    Exploits that the integrand depends on x only through the successive
    differences, so the quadrature is contracted once per distinct
    difference value rather than once per grid point.
    """
    _check_n(N)
    sigma1 = float(sum(alpha))
    axes = [np.asarray(ax, dtype=float) for ax in axes]
    if N == 1:
        return np.exp(1j * alpha[0] * axes[0])
    contour = contour or default_contour(N, alpha, tol)
    if N == 2:
        u = np.subtract.outer(axes[0], axes[1]).reshape(-1)
        uu, inv = np.unique(np.round(u, 12), return_inverse=True)
        full, _ = _whittaker_values_n2(alpha, uu, contour)
        vals = full[inv].reshape(len(axes[0]), len(axes[1]))
        return vals * np.exp(1j * sigma1 * axes[1])[None, :]
    u = np.subtract.outer(axes[0], axes[1]).reshape(-1)
    v = np.subtract.outer(axes[1], axes[2]).reshape(-1)
    uu, uinv = np.unique(np.round(u, 12), return_inverse=True)
    vv, vinv = np.unique(np.round(v, 12), return_inverse=True)
    F, _ = _whittaker_values_n3(alpha, uu, vv, contour)
    uinv = uinv.reshape(len(axes[0]), len(axes[1]))
    vinv = vinv.reshape(len(axes[1]), len(axes[2]))
    vals = F[uinv[:, :, None], vinv[None, :, :]]
    return vals * np.exp(1j * sigma1 * axes[2])[None, None, :]


# ---------------------------------------------------------------------------
# Recursive evaluation (separation-kernel route)
# ---------------------------------------------------------------------------


def whittaker_recursive(N: int, alpha: Sequence[float], x: Sequence[float],
                        tol: float = 1e-6) -> QuadratureResult:
    """Level-by-level route: outer integral over the separated variables of
    the separation kernel and measure times the cached rank-(N-1) function.

    The total-momentum delta factor collapses the momentum integral, so the
    x_N dependence enters through e^{i(sigma1 - sum lam) x_N}.
    """
    _check_n(N)
    if N == 1:
        return whittaker_eval(N, alpha, x, tol)
    sigma1 = float(sum(alpha))
    contour = default_contour(N, alpha, tol)
    h = contour.offsets[0]
    t = np.linspace(-contour.half_width, contour.half_width, contour.nodes_per_dim)
    dt = t[1] - t[0]
    lam = t + 1j * h

    if N == 2:
        # inner function is the plane wave e^{i lam x1}
        inner = np.exp(1j * lam * x[0])
        kern = np.array([sep_wavefunction(alpha, [l]) for l in lam])
        mu = np.ones_like(lam)
    else:
        # inner rank-2 function cached on all (l1, l2) level-2 node pairs,
        # evaluated vectorized over its own contour, one offset step above
        # the separated variables so the Gamma arguments stay off the poles
        l1 = lam[:, None]
        l2 = lam[None, :]
        hin = h + LEVEL_OFFSET_STEP
        tin = np.linspace(-contour.half_width, contour.half_width,
                          contour.nodes_per_dim)
        mu_in = tin + 1j * hin
        lg = (log_gamma_array(-1j * (mu_in[:, None, None] - l1[None, :, :]))
              + log_gamma_array(-1j * (mu_in[:, None, None] - l2[None, :, :]))
              + 1j * (mu_in[:, None, None] * (x[0] - x[1])))
        dt_in = tin[1] - tin[0]
        inner = (np.exp(lg).sum(axis=0) * dt_in / TWO_PI
                 * np.exp(1j * (l1 + l2) * x[1]))
        kern = np.exp(
            log_gamma_array(-1j * np.subtract.outer(lam, np.asarray(alpha, float)))
            .sum(axis=1))
        kern = kern[:, None] * kern[None, :]
        with np.errstate(all="ignore"):
            mu = np.exp(-(log_gamma_array(-1j * (l1 - l2))
                          + log_gamma_array(-1j * (l2 - l1))))
        np.fill_diagonal(mu, 0.0)

    if N == 2:
        integ = kern * mu * inner * np.exp(1j * (sigma1 - lam) * x[1])
        full = integ.sum() * dt / TWO_PI
        halved = integ[::2].sum() * 2 * dt / TWO_PI
        evals = len(t)
    else:
        lam_sum = lam[:, None] + lam[None, :]
        integ = kern * mu * inner * np.exp(1j * (sigma1 - lam_sum) * x[2])
        full = integ.sum() * dt ** 2 / TWO_PI ** 2
        halved = integ[::2, ::2].sum() * (2 * dt) ** 2 / TWO_PI ** 2
        evals = len(t) ** 2 * contour.nodes_per_dim
    return QuadratureResult(complex(full), abs(full - halved), evals)


# ---------------------------------------------------------------------------
# Spherical functions
# ---------------------------------------------------------------------------


def spherical_eval(N: int, lam_top: Sequence[float], x: Sequence[float],
                   tol: float = 1e-6) -> QuadratureResult:
    """Spherical-kernel integral over real contours."""
    _check_n(N)
    lam_top = [float(v) for v in lam_top]
    for i in range(N):
        for j in range(i + 1, N):
            if abs(lam_top[i] - lam_top[j]) < COINCIDENT_TOL:
                raise ContourError("coincident top-level spectral parameters")
    sigma1 = float(sum(lam_top))
    if N == 1:
        return QuadratureResult(cmath.exp(1j * lam_top[0] * x[0]), 0.0, 1)
    base = default_contour(N, lam_top, tol)
    M = base.nodes_per_dim
    t = np.linspace(-base.half_width, base.half_width, M)
    dt = t[1] - t[0]
    if N == 2:
        logk = sum(_adjacent_log(t, a, "spherical") for a in lam_top)
        with np.errstate(all="ignore"):
            kern = np.exp(logk)
        phase = np.exp(1j * t * (x[0] - x[1]))
        full = (kern * phase).sum() * dt / TWO_PI
        halved = (kern * phase)[::2].sum() * 2 * dt / TWO_PI
        carrier = cmath.exp(1j * sigma1 * x[1])
        evals = M
    else:
        A = np.exp(_adjacent_log(t, t, "spherical"))
        wtop = np.exp(sum(_adjacent_log(t, a, "spherical").reshape(-1)
                          for a in lam_top))
        D = _inv_denominator(t.astype(complex))
        u, v = x[0] - x[1], x[1] - x[2]
        vals = []
        for sl, fac in _strided_variants(M):
            Asl, Dsl = A[sl][:, sl], D[sl][:, sl]
            B = Asl * (wtop[sl] * np.exp(1j * t[sl] * v))[None, :]
            val_a = np.einsum("ab,ab->a", B @ Dsl, B)
            vals.append((np.exp(1j * t[sl] * u) @ val_a)
                        * (dt * fac) ** 3 / TWO_PI ** 3)
        full, halved = vals
        carrier = cmath.exp(1j * sigma1 * x[2])
        evals = M ** 3
    value = complex(full) * carrier
    return QuadratureResult(value, abs(complex(full) - complex(halved)), evals)


# ---------------------------------------------------------------------------
# Grid scan
# ---------------------------------------------------------------------------


def grid_scan(which: str, N: int, params: Sequence[float], axis: int,
              start: float, stop: float, steps: int,
              x_base: Sequence[float] | None = None,
              tol: float = 1e-6) -> List[dict]:
    """Sweep one coordinate; rows carry value, modulus and error estimate."""
    if not 0 <= axis < N:
        raise ValueError("axis out of range")
    x0 = list(x_base) if x_base is not None else [0.0] * N
    rows = []
    for xv in np.linspace(start, stop, steps):
        x = list(x0)
        x[axis] = float(xv)
        if which == "whittaker":
            res = whittaker_eval(N, params, x, tol)
        elif which == "spherical":
            res = spherical_eval(N, params, x, tol)
        else:
            raise ValueError(f"unknown function {which!r}")
        row = {f"x{k+1}": x[k] for k in range(N)}
        row.update(re=res.value.real, im=res.value.imag,
                   abs=abs(res.value), error_estimate=res.error_estimate)
        rows.append(row)
    return rows
