"""Exact arithmetic on truncated Fourier series.

A series is stored densely as complex coefficients ``A_n`` for
``n = -H..H`` with ``a(tau) = sum A_n exp(i n tau)``.  Coefficients live in
a :class:`~hbevent.jets.Jet`, so every operation here (sums, convolution
products, differentiation, evaluation, definite integrals over a partial
period) transparently propagates first and second derivatives with respect
to whatever scalars were seeded upstream.

Products return the full convolution order ``H_a + H_b``; nothing is
truncated silently.  Use :func:`truncate` at the single place a fixed
harmonic budget is imposed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateSeriesError
from .jets import Jet, asjet

__all__ = [
    "FourierSeries",
    "RootSet",
    "add",
    "multiply",
    "power",
    "differentiate",
    "evaluate",
    "definite_integral",
    "band_integrals",
    "truncate",
    "find_roots",
    "next_root_after",
]

TWO_PI = 2.0 * np.pi

# Defaults for the root pipeline; overridable per call.
UNIT_CIRCLE_TOL = 1e-8
ROOT_TOL = 1e-10
DEDUP_TOL = 1e-9
GRAZING_TOL = 1e-7
STRICT_GAP = 1e-8


class FourierSeries:
    """Truncated Fourier series with jet-valued coefficients.

    Parameters
    ----------
    coeffs : Jet or array_like
        Coefficients ``A_{-H} .. A_H`` (length ``2H+1``).
    real : bool or None
        Marks conjugate symmetry ``A_{-n} == conj(A_n)``.  ``None`` checks
        numerically; ``True`` validates and raises on violation.
    """

    __slots__ = ("order", "coeffs", "real")

    def __init__(self, coeffs, real=None):
        c = coeffs if isinstance(coeffs, Jet) else Jet(np.asarray(coeffs, dtype=complex))
        if c.val.dtype != complex:
            c = Jet(
                c.val.astype(complex),
                None if c.g is None else c.g.astype(complex),
                None if c.h is None else c.h.astype(complex),
            )
        n = c.val.shape[0]
        if n % 2 != 1:
            raise ValueError("coefficient array must have odd length 2H+1")
        self.order = (n - 1) // 2
        self.coeffs = c
        if real is None:
            real = bool(_symmetry_defect(c.val) <= 1e-14 * max(1.0, _scale(c.val)))
        elif real:
            defect = _symmetry_defect(c.val)
            if defect > 1e-14 * max(1.0, _scale(c.val)):
                raise ValueError(f"conjugate symmetry violated by {defect:.3e}")
        self.real = bool(real)

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zeros(order=0, real=True):
        return FourierSeries(np.zeros(2 * order + 1, dtype=complex), real=real)

    @staticmethod
    def constant(value):
        j = asjet(value)
        return FourierSeries(
            Jet(
                np.asarray([j.val], dtype=complex),
                None if j.g is None else np.asarray([j.g], dtype=complex),
                None if j.h is None else np.asarray([j.h], dtype=complex),
            )
        )

    @staticmethod
    def harmonic(n, amplitude=1.0):
        """Series with a single coefficient at harmonic `n`."""
        H = abs(int(n))
        c = np.zeros(2 * H + 1, dtype=complex)
        c[n + H] = amplitude
        return FourierSeries(c)

    @staticmethod
    def from_cosine(n, amplitude=1.0):
        """amplitude * cos(n tau)."""
        H = abs(int(n))
        c = np.zeros(2 * H + 1, dtype=complex)
        c[n + H] += amplitude / 2.0
        c[-n + H] += amplitude / 2.0
        return FourierSeries(c, real=True)

    # -- indexing --------------------------------------------------------------

    def coeff(self, n):
        """Coefficient A_n as a jet (zero jet outside the stored order)."""
        if abs(n) > self.order:
            return Jet(np.asarray(0.0 + 0.0j))
        return self.coeffs[n + self.order]

    @property
    def values(self):
        return self.coeffs.val

    def pad_to(self, order):
        if order < self.order:
            raise ValueError("pad_to cannot shrink a series")
        if order == self.order:
            return self
        k = order - self.order
        val = np.pad(self.coeffs.val, (k, k))
        g = None if self.coeffs.g is None else np.pad(self.coeffs.g, ((k, k), (0, 0)))
        h = (
            None
            if self.coeffs.h is None
            else np.pad(self.coeffs.h, ((k, k), (0, 0), (0, 0)))
        )
        return FourierSeries(Jet(val, g, h), real=self.real)

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FourierSeries):
            other = FourierSeries.constant(other)
        H = max(self.order, other.order)
        a, b = self.pad_to(H), other.pad_to(H)
        return FourierSeries(a.coeffs + b.coeffs, real=self.real and other.real or None)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, FourierSeries):
            other = FourierSeries.constant(other)
        return self + (-other)

    def __neg__(self):
        return FourierSeries(-self.coeffs, real=self.real)

    def __mul__(self, other):
        if isinstance(other, FourierSeries):
            return _convolve(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, factor):
        """Multiply by a scalar (number or jet)."""
        j = asjet(factor)
        real = self.real and not np.iscomplexobj(j.val) or None
        return FourierSeries(self.coeffs * j, real=real)

    def __pow__(self, p):
        return power(self, p)

    def differentiate(self):
        """d/dtau: A_n -> i n A_n."""
        n = np.arange(-self.order, self.order + 1)
        return FourierSeries(self.coeffs * (1j * n), real=self.real)

    def evaluate(self, tau):
        """Value at tau (tau may be a jet); returns a scalar jet."""
        n = np.arange(-self.order, self.order + 1)
        return (_cis(n, asjet(tau)) * self.coeffs).sum(axis=0)

    def evaluate_real(self, tau):
        """Real part of the value at numeric tau (vectorized over tau)."""
        tau = np.asarray(tau, dtype=float)
        scalar = tau.ndim == 0
        n = np.arange(-self.order, self.order + 1)
        basis = np.exp(1j * np.outer(np.atleast_1d(tau), n))
        out = (basis @ self.coeffs.val).real
        return out[0] if scalar else out

    def shift(self, delta):
        """Time shift tau -> tau + delta: A_n -> A_n exp(i n delta)."""
        n = np.arange(-self.order, self.order + 1)
        return FourierSeries(self.coeffs * np.exp(1j * n * delta), real=self.real)

    def conj_symmetrize(self):
        """Project onto the conjugate-symmetric (real-valued) subspace."""
        c = self.coeffs
        flipped = Jet(
            np.conj(c.val[::-1]),
            None if c.g is None else np.conj(c.g[::-1]),
            None if c.h is None else np.conj(c.h[::-1]),
        )
        return FourierSeries((c + flipped) * 0.5, real=True)

    def __repr__(self):
        return f"FourierSeries(order={self.order}, real={self.real})"


# -- module-level operation names -------------------------------------------------


def add(a, b):
    return a + b


def multiply(a, b):
    """Convolution product; result order is a.order + b.order."""
    return a * b


def power(a, p):
    if p < 0:
        raise ValueError("negative series powers are not defined")
    out = FourierSeries.constant(1.0)
    for _ in range(int(p)):
        out = out * a
    return out


def differentiate(a):
    return a.differentiate()


def evaluate(a, tau):
    return a.evaluate(tau)


def truncate(a, order):
    """Drop coefficients beyond `order` (pads if the series is shorter)."""
    if order >= a.order:
        return a.pad_to(order)
    k = a.order - order
    c = a.coeffs
    val = c.val[k:-k]
    g = None if c.g is None else c.g[k:-k]
    h = None if c.h is None else c.h[k:-k]
    return FourierSeries(Jet(val, g, h), real=a.real)


def _convolve(a, b):
    """Full convolution of coefficient jets (direct O(H^2), exact)."""
    ca, cb = a.coeffs, b.coeffs
    if ca.val.shape[0] > cb.val.shape[0]:
        a, b = b, a
        ca, cb = cb, ca
    L, M = ca.val.shape[0], cb.val.shape[0]
    n = L + M - 1
    val = np.convolve(ca.val, cb.val)
    m = max(ca.ndirs, cb.ndirs)
    g = None
    if ca.g is not None or cb.g is not None:
        g = np.zeros((n, m), dtype=complex)
        for i in range(L):
            if cb.g is not None:
                g[i : i + M] += ca.val[i] * cb.g
            if ca.g is not None:
                g[i : i + M] += cb.val[:, None] * ca.g[i]
    h = None
    if ca.h is not None or cb.h is not None or (ca.g is not None and cb.g is not None):
        h = np.zeros((n, m, m), dtype=complex)
        for i in range(L):
            if cb.h is not None:
                h[i : i + M] += ca.val[i] * cb.h
            if ca.h is not None:
                h[i : i + M] += cb.val[:, None, None] * ca.h[i]
            if ca.g is not None and cb.g is not None:
                cross = ca.g[i][None, :, None] * cb.g[:, None, :]
                h[i : i + M] += cross + np.swapaxes(cross, -1, -2)
    return FourierSeries(Jet(val, g, h), real=a.real and b.real or None)


def _cis(k, t):
    """Vector jet of exp(i k t) for integer array k and scalar jet t."""
    k = np.asarray(k)
    e = np.exp(1j * k * t.val)
    g = None if t.g is None else e[:, None] * (1j * k)[:, None] * t.g[None, :]
    h = None
    if t.h is not None:
        h = e[:, None, None] * (1j * k)[:, None, None] * t.h[None, :, :]
    if t.g is not None:
        outer = t.g[:, None] * t.g[None, :]
        term = e[:, None, None] * ((1j * k) ** 2)[:, None, None] * outer[None, :, :]
        h = term if h is None else h + term
    return Jet(e, g, h)


def definite_integral(a, n, tau_lo, tau_hi):
    """integral of a(tau) exp(-i n tau) dtau over [tau_lo, tau_hi].

    Closed form: ``(hi-lo) A_n + sum_{m != n} (e^{i(m-n)hi}-e^{i(m-n)lo})
    / (i(m-n)) A_m``; the ``m == n`` term is the linear-in-tau branch.
    Limits may be jets.
    """
    out = band_integrals(a, [int(n)], tau_lo, tau_hi)
    return out[0]


def band_integrals(a, n_list, tau_lo, tau_hi):
    """Vector of definite integrals for several projection harmonics.

    Returns a jet of shape ``(len(n_list),)``.
    """
    n_arr = np.asarray(list(n_list), dtype=int)
    lo, hi = asjet(tau_lo), asjet(tau_hi)
    H = a.order
    K = H + int(np.max(np.abs(n_arr))) if n_arr.size else H
    ks = np.arange(-K, K + 1)
    nonzero = ks != 0
    e_hi = _cis(ks, hi)
    e_lo = _cis(ks, lo)
    denom = np.where(nonzero, 1j * ks, 1.0)
    E = (e_hi - e_lo) * (nonzero / denom)
    # patch the k == 0 slot with (hi - lo)
    width = hi - lo
    m = max(E.ndirs, width.ndirs)
    E = E.with_order(2 if (E.h is not None or width.h is not None) else (1 if (E.g is not None or width.g is not None) else 0), m)
    E.val[K] = width.val
    if E.g is not None:
        E.g[K] = width.g if width.g is not None else 0.0
    if E.h is not None:
        E.h[K] = width.h if width.h is not None else 0.0
    # gather E_{m-n} into rows
    j = np.arange(2 * H + 1)
    kidx = j[None, :] - H - n_arr[:, None] + K
    X = E[kidx]
    return _contract(X, a.coeffs)


def _contract(X, A):
    """Row contraction out[n] = sum_j X[n, j] A[j] with product rule."""
    val = X.val @ A.val
    g = None
    if A.g is not None:
        g = X.val @ A.g
    if X.g is not None:
        t = np.einsum("njm,j->nm", X.g, A.val)
        g = t if g is None else g + t
    h = None
    if A.h is not None:
        h = np.einsum("nj,jab->nab", X.val, A.h)
    if X.h is not None:
        t = np.einsum("njab,j->nab", X.h, A.val)
        h = t if h is None else h + t
    if X.g is not None and A.g is not None:
        t = np.einsum("nja,jb->nab", X.g, A.g)
        t = t + np.swapaxes(t, -1, -2)
        h = t if h is None else h + t
    return Jet(val, g, h)


# -- root finding ------------------------------------------------------------------


@dataclass
class RootSet:
    """Roots of a real series on one period, sorted ascending."""

    roots: np.ndarray
    multiplicity_hint: np.ndarray
    residuals: np.ndarray
    grazing: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))

    def __len__(self):
        return len(self.roots)


def find_roots(
    a,
    tau0=0.0,
    unit_circle_tol=UNIT_CIRCLE_TOL,
    root_tol=ROOT_TOL,
    dedup_tol=DEDUP_TOL,
    grazing_tol=GRAZING_TOL,
):
    """All roots of a real-valued series in ``[tau0, tau0 + 2 pi)``.

    Substitutes ``z = exp(i tau)``, multiplies through by ``z^H`` and takes
    the eigenvalue-based roots of the resulting degree-2H polynomial.  Roots
    are kept when ``| |z| - 1 | <= unit_circle_tol``, mapped back to tau,
    polished by up to three safeguarded Newton steps and deduplicated.

    Raises
    ------
    DegenerateSeriesError
        If every coefficient is numerically zero.
    """
    if not a.real:
        raise ValueError("find_roots requires a real-valued series")
    c = a.coeffs.val
    scale = _scale(c)
    if scale < 1e-300:
        raise DegenerateSeriesError("series is numerically zero")

    # polynomial coefficients, highest power of z first
    poly = c[::-1].copy() / scale
    # strip negligible leading/trailing coefficients for conditioning
    tiny = 1e-14
    nz = np.nonzero(np.abs(poly) > tiny)[0]
    if nz.size == 0:
        # a nonzero constant term only: no roots
        return RootSet(
            np.zeros(0), np.zeros(0, dtype=int), np.zeros(0), np.zeros(0, dtype=bool)
        )
    poly = poly[nz[0] : nz[-1] + 1]
    if poly.size <= 1:
        return RootSet(
            np.zeros(0), np.zeros(0, dtype=int), np.zeros(0), np.zeros(0, dtype=bool)
        )
    z = np.roots(poly)
    on_circle = np.abs(np.abs(z) - 1.0) <= unit_circle_tol
    taus = np.angle(z[on_circle])

    deriv = a.differentiate()
    dscale = max(_scale(deriv.coeffs.val), 1e-300)

    polished = []
    for t in taus:
        t = _polish_root(a, deriv, float(t))
        polished.append(t)

    # fold into [tau0, tau0 + 2 pi)
    folded = np.sort(np.mod(np.asarray(polished, dtype=float) - tau0, TWO_PI) + tau0)

    clusters = []  # [tau of first member, member count]
    for t in folded:
        if clusters and t - clusters[-1][0] <= dedup_tol:
            clusters[-1][1] += 1
        else:
            clusters.append([t, 1])
    # wrap-around duplicate: first and last cluster may be the same point
    if len(clusters) > 1 and (clusters[0][0] + TWO_PI) - clusters[-1][0] <= dedup_tol:
        clusters[0][1] += clusters[-1][1]
        clusters.pop()

    roots, mult, resid, graze = [], [], [], []
    for t, count in clusters:
        r = abs(float(a.evaluate_real(t)))
        if r > root_tol * max(scale, 1.0):
            continue
        roots.append(t)
        mult.append(count)
        resid.append(r)
        graze.append(abs(float(deriv.evaluate_real(t))) < grazing_tol * dscale)
    return RootSet(
        np.asarray(roots),
        np.asarray(mult, dtype=int),
        np.asarray(resid),
        np.asarray(graze, dtype=bool),
    )


def _polish_root(a, deriv, t, max_steps=3, max_step=0.3):
    """Safeguarded Newton polish of a root estimate of the real series a."""
    f = float(a.evaluate_real(t))
    for _ in range(max_steps):
        d = float(deriv.evaluate_real(t))
        if d == 0.0:
            break
        step = -f / d
        if abs(step) > max_step:
            step = np.copysign(max_step, step)
        t_new = t + step
        f_new = float(a.evaluate_real(t_new))
        if abs(f_new) >= abs(f):
            break
        t, f = t_new, f_new
    return t


def next_root_after(a, tau, strict_gap=STRICT_GAP, **kwargs):
    """Smallest root strictly beyond ``tau + strict_gap``; None if none exist.

    A root inside the exclusion gap (the one just crossed) reappears one
    period later and is offered at ``tau_root + 2 pi``.
    """
    rs = find_roots(a, tau0=float(tau), **kwargs)
    if len(rs) == 0:
        return None
    roots = rs.roots.copy()
    wrapped = roots <= tau + strict_gap
    roots[wrapped] += TWO_PI
    order = np.argsort(roots)
    best = order[0]
    return float(roots[best]), bool(rs.grazing[best])


def root_jet(a, tau_star, regularity_tol=1e-8, require_regular=True):
    """Attach derivatives to a root of the series via implicit differentiation.

    The root satisfies ``a(tau*) = 0`` with coefficient jets carrying the
    dependence on upstream scalars.  Writing ``g`` for the condition,
    implicit differentiation gives

        dtau/dpsi      = -(dg/dtau)^-1 dg/dpsi
        d2tau/dphi dpsi = -(dg/dtau)^-1 [ g_pp + g_tp[phi] tau_psi
                           + g_tp[psi] tau_phi + g_tt tau_phi tau_psi ]

    with every partial evaluated at the root.  Raises
    :class:`GrazingTransitionError` when the slope is below
    ``regularity_tol`` times the derivative-series scale.
    """
    from .errors import GrazingTransitionError

    deriv = a.differentiate()
    slope = float(deriv.evaluate_real(tau_star))
    dscale = max(_scale(deriv.coeffs.val), 1e-300)
    if require_regular and abs(slope) < regularity_tol * dscale:
        raise GrazingTransitionError(
            f"transition slope {slope:.3e} below {regularity_tol:.1e} * {dscale:.3e}"
        )
    c = a.coeffs
    if c.g is None and c.h is None:
        return Jet(np.asarray(float(tau_star)))

    ev = a.evaluate(float(tau_star))  # jets of g at fixed tau
    tau_g = None
    if ev.g is not None:
        tau_g = -(ev.g.real) / slope
    tau_h = None
    if ev.h is not None:
        g_tt = float(deriv.differentiate().evaluate_real(tau_star))
        ev_d = deriv.evaluate(float(tau_star))
        g_tp = ev_d.g.real if ev_d.g is not None else np.zeros_like(tau_g)
        cross = g_tp[:, None] * tau_g[None, :]
        tau_h = -(ev.h.real + cross + cross.T + g_tt * np.outer(tau_g, tau_g)) / slope
    return Jet(np.asarray(float(tau_star)), tau_g, tau_h)


# -- small helpers -------------------------------------------------------------------


def _scale(c):
    return float(np.max(np.abs(c))) if c.size else 0.0


def _symmetry_defect(c):
    return float(np.max(np.abs(c - np.conj(c[::-1])))) if c.size else 0.0
