"""Least-squares polynomial fits, R^2, degree selection and dependence verdicts."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

MAX_DEGREE = 6
#: Fits whose adjusted R^2 is this close to the best count as ties.
PARSIMONY_WINDOW = 0.005
#: R^2 at or above this makes a sweep "Dependent" on its parameter.
DEPENDENCE_THRESHOLD = 0.8


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class PolyFit:
    degree: int
    coefficients: tuple[float, ...]  # raw x basis, ascending powers
    r_squared: float
    ss_res: float
    ss_tot: float
    n_points: int

    @property
    def adjusted_r_squared(self) -> float:
        dof = self.n_points - self.degree - 1
        if dof <= 0:
            return float("nan")
        return 1.0 - (1.0 - self.r_squared) * (self.n_points - 1) / dof

    def __call__(self, x):
        return predict(self, x)


def polyfit(xs: Sequence[float], ys: Sequence[float], degree: int) -> PolyFit:
    """Fit a polynomial of degree *degree* by least squares.

    The solve runs in a centred and scaled x basis, using a QR factorisation
    of the Vandermonde matrix.  The coefficients are then expanded back to
    powers of raw x.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise FitError("xs and ys must be 1-d and the same length")
    if not 1 <= degree <= MAX_DEGREE:
        raise FitError(f"degree must be in 1..{MAX_DEGREE}, got {degree}")
    if x.size < degree + 1:
        raise FitError(f"degree {degree} needs at least {degree + 1} points, got {x.size}")
    if np.unique(x).size != x.size:
        raise FitError("duplicate xs")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        raise FitError("zero variance")

    center = x.mean()
    scale = x.std()
    t = (x - center) / scale
    vander = np.vander(t, degree + 1, increasing=True)
    q, r = np.linalg.qr(vander)
    beta = np.linalg.solve(r, q.T @ y)
    fitted = vander @ beta
    ss_res = float(np.sum((y - fitted) ** 2))

    raw = Polynomial(beta)(Polynomial([-center / scale, 1.0 / scale]))
    coef = np.zeros(degree + 1)
    coef[: raw.coef.size] = raw.coef
    return PolyFit(
        degree=degree,
        coefficients=tuple(float(c) for c in coef),
        r_squared=1.0 - ss_res / ss_tot,
        ss_res=ss_res,
        ss_tot=ss_tot,
        n_points=int(x.size),
    )


def predict(fit: PolyFit, x):
    """Horner evaluation of the raw-basis polynomial (scalar or array)."""
    acc = np.zeros_like(np.asarray(x, dtype=float))
    for c in reversed(fit.coefficients):
        acc = acc * x + c
    return float(acc) if acc.ndim == 0 else acc


def select_degree(xs, ys, max_degree: int = 4) -> tuple[int, PolyFit]:
    """Smallest degree whose adjusted R^2 is within the parsimony window of
    the best adjusted R^2 among degrees 1..min(max_degree, n - 2)."""
    n = len(xs)
    top = min(max_degree, n - 2, MAX_DEGREE)
    if top < 1:
        raise FitError(f"degree selection needs at least 3 points, got {n}")
    fits = [polyfit(xs, ys, d) for d in range(1, top + 1)]
    best = max(f.adjusted_r_squared for f in fits)
    for f in fits:
        if f.adjusted_r_squared >= best - PARSIMONY_WINDOW:
            return f.degree, f
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class Dependent:
    degree: int
    r_squared: float

    def __str__(self):
        return f"Dependent(degree={self.degree}, R2={self.r_squared:.4f})"


@dataclass(frozen=True)
class Flat:
    r_squared: float | None = None  # of the selected fit; None for constant ys
    degree: int | None = None

    def __str__(self):
        if self.r_squared is None:
            return "Flat(constant)"
        return f"Flat(degree={self.degree}, R2={self.r_squared:.4f})"


Verdict = Union[Dependent, Flat]


def dependence_verdict(xs, ys, max_degree: int = 4,
                       threshold: float = DEPENDENCE_THRESHOLD) -> Verdict:
    if np.ptp(np.asarray(ys, dtype=float)) == 0:
        return Flat()
    degree, fit = select_degree(xs, ys, max_degree)
    if fit.r_squared >= threshold:
        return Dependent(degree, fit.r_squared)
    return Flat(fit.r_squared, degree)


def spearman_rho(xs, ys) -> float:
    from scipy.stats import spearmanr

    if np.ptp(np.asarray(ys, dtype=float)) == 0:
        return 0.0
    return float(spearmanr(xs, ys).statistic)


def format_fit_report(fit: PolyFit | None, verdict: Verdict | None = None) -> str:
    lines = []
    if fit is not None:
        lines += [
            f"degree: {fit.degree}",
            "coefficients: " + " ".join(f"{c:.12g}" for c in fit.coefficients),
            f"r_squared: {fit.r_squared:.12g}",
            f"adjusted_r_squared: {fit.adjusted_r_squared:.12g}",
            f"ss_res: {fit.ss_res:.12g}",
            f"ss_tot: {fit.ss_tot:.12g}",
            f"n_points: {fit.n_points}",
        ]
    if verdict is not None:
        lines.append(f"verdict: {verdict}")
    return "\n".join(lines) + "\n"


def fit_report_csv(fit: PolyFit | None, verdict: Verdict | None = None) -> str:
    degree = fit.degree if fit else 0
    header = ["degree", "r_squared", "adjusted_r_squared", "ss_res", "ss_tot", "verdict"]
    header += [f"c{i}" for i in range(degree + 1)] if fit else []
    if fit is None:
        row = ["", "", "", "", "", str(verdict or "")]
    else:
        row = [str(fit.degree), f"{fit.r_squared:.12g}", f"{fit.adjusted_r_squared:.12g}",
               f"{fit.ss_res:.12g}", f"{fit.ss_tot:.12g}", str(verdict or "")]
        row += [f"{c:.12g}" for c in fit.coefficients]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows([header, row])
    return buf.getvalue()


def read_fit_coefficients(path) -> tuple[float, ...]:
    """Coefficients from a report written by ``format_fit_report`` or
    ``fit_report_csv``."""
    with open(path, newline="") as fh:
        text = fh.read()
    if text.startswith("degree,"):
        row = next(csv.DictReader(text.splitlines()))
        return tuple(float(v) for k, v in row.items() if k.startswith("c") and v)
    for line in text.splitlines():
        if line.startswith("coefficients:"):
            return tuple(float(v) for v in line.split(":", 1)[1].split())
    raise FitError(f"{path}: no coefficients found")
