"""Forward-mode derivative carriers of order up to two.

A :class:`Jet` bundles an array value with optional first and second
directional derivatives along ``m`` seeded directions.  All series and
state-machine arithmetic in this package is written over jets, so residual
Jacobians and second-order sensitivities fall out of an ordinary evaluation
instead of a hand-derived formula.  ``g is None`` / ``h is None`` mean
"identically zero", which keeps constants cheap.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Jet", "asjet", "seeded_scalar"]


def _as_array(x):
    return np.asarray(x)


class Jet:
    """Array value with optional derivative blocks.

    Parameters
    ----------
    val : array_like
        Value, any shape (scalars become 0-d arrays).
    g : ndarray or None
        First derivatives, shape ``val.shape + (m,)``. ``None`` means zero.
    h : ndarray or None
        Second derivatives, shape ``val.shape + (m, m)``. ``None`` means zero.
    """

    __slots__ = ("val", "g", "h")

    def __init__(self, val, g=None, h=None):
        self.val = _as_array(val)
        self.g = g
        self.h = h

    # -- constructors -----------------------------------------------------

    @staticmethod
    def constant(val):
        return Jet(val)

    @property
    def ndirs(self):
        if self.g is not None:
            return self.g.shape[-1]
        if self.h is not None:
            return self.h.shape[-1]
        return 0

    @property
    def shape(self):
        return self.val.shape

    @property
    def value(self):
        """Plain value with 0-d arrays unwrapped to Python scalars."""
        return self.val[()] if self.val.ndim == 0 else self.val

    def copy(self):
        return Jet(
            self.val.copy(),
            None if self.g is None else self.g.copy(),
            None if self.h is None else self.h.copy(),
        )

    def detach(self):
        """Value-only view; used to freeze a quantity out of differentiation."""
        return Jet(self.val)

    def with_order(self, order, m):
        """Return self padded with explicit zero blocks up to `order`."""
        g, h = self.g, self.h
        if order >= 1 and g is None:
            g = np.zeros(self.val.shape + (m,), dtype=self.val.dtype)
        if order >= 2 and h is None:
            h = np.zeros(self.val.shape + (m, m), dtype=self.val.dtype)
        return Jet(self.val, g, h)

    # -- structural ops ----------------------------------------------------

    def __getitem__(self, idx):
        g = None if self.g is None else self.g[idx]
        h = None if self.h is None else self.h[idx]
        return Jet(self.val[idx], g, h)

    def reshape(self, *shape):
        m = self.ndirs
        g = None if self.g is None else self.g.reshape(*shape, m)
        h = None if self.h is None else self.h.reshape(*shape, m, m)
        return Jet(self.val.reshape(*shape), g, h)

    def sum(self, axis=0):
        if axis < 0:
            axis += self.val.ndim
        g = None if self.g is None else self.g.sum(axis=axis)
        h = None if self.h is None else self.h.sum(axis=axis)
        return Jet(self.val.sum(axis=axis), g, h)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return Jet(
            -self.val,
            None if self.g is None else -self.g,
            None if self.h is None else -self.h,
        )

    def __add__(self, other):
        o = asjet(other)
        return Jet(
            self.val + o.val,
            _add(self.g, o.g),
            _add(self.h, o.h),
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-asjet(other))

    def __rsub__(self, other):
        return (-self) + asjet(other)

    def __mul__(self, other):
        o = asjet(other)
        a, b = self, o
        val = a.val * b.val
        g = _add(_mulg(a.val, b.g), _mulg(b.val, a.g))
        h = _add(_mulh(a.val, b.h), _mulh(b.val, a.h))
        if a.g is not None and b.g is not None:
            cross = a.g[..., :, None] * b.g[..., None, :]
            h = _add(h, cross + np.swapaxes(cross, -1, -2))
        return Jet(val, g, h)

    __rmul__ = __mul__

    def reciprocal(self):
        inv = 1.0 / self.val
        inv2 = inv * inv
        g = None if self.g is None else -_mulg(inv2, self.g)
        h = None
        if self.h is not None:
            h = -_mulh(inv2, self.h)
        if self.g is not None:
            outer = self.g[..., :, None] * self.g[..., None, :]
            h = _add(h, _mulh(2.0 * inv2 * inv, outer))
        return Jet(inv, g, h)

    def __truediv__(self, other):
        o = asjet(other)
        if o.g is None and o.h is None:
            return self * (1.0 / o.val)
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return asjet(other) * self.reciprocal()

    def __pow__(self, p):
        if not isinstance(p, (int, np.integer)):
            raise TypeError("jet powers must be integers")
        if p < 0:
            return self.reciprocal() ** (-p)
        out = Jet(np.ones_like(self.val))
        base = self
        n = int(p)
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # -- transcendental / complex ------------------------------------------

    def exp(self):
        e = np.exp(self.val)
        g = _mulg(e, self.g)
        h = _mulh(e, self.h)
        if self.g is not None:
            outer = self.g[..., :, None] * self.g[..., None, :]
            h = _add(h, _mulh(e, outer))
        return Jet(e, g, h)

    def conj(self):
        return Jet(
            np.conj(self.val),
            None if self.g is None else np.conj(self.g),
            None if self.h is None else np.conj(self.h),
        )

    @property
    def real(self):
        return Jet(
            self.val.real,
            None if self.g is None else self.g.real,
            None if self.h is None else self.h.real,
        )

    @property
    def imag(self):
        return Jet(
            self.val.imag,
            None if self.g is None else self.g.imag,
            None if self.h is None else self.h.imag,
        )

    def __repr__(self):
        return f"Jet(val={self.val!r}, order={(self.h is not None) + (self.g is not None)})"


def asjet(x) -> Jet:
    return x if isinstance(x, Jet) else Jet(x)


def seeded_scalar(val, direction, m, order=1, dtype=float):
    """Scalar jet seeded with a unit derivative along `direction`."""
    g = np.zeros(m, dtype=dtype)
    g[direction] = 1.0
    h = np.zeros((m, m), dtype=dtype) if order >= 2 else None
    return Jet(np.asarray(val), g, h)


# -- None-aware kernels ------------------------------------------------------


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def _mulg(scalar, g):
    """scalar (value-shaped) times a gradient block; None stays None."""
    if g is None:
        return None
    return np.asarray(scalar)[..., None] * g


def _mulh(scalar, h):
    if h is None:
        return None
    return np.asarray(scalar)[..., None, None] * h
