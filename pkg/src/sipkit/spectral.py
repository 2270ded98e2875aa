"""1D discrete Fourier transform with an explicit exponent sign.

``fft(x, -1)`` is the forward transform ``X[k] = sum x[j] exp(-2*pi*i*j*k/n)``
with no scaling; ``fft(x, +1)`` flips the exponent sign and divides by n,
so the two compose to the identity. Power-of-two lengths run the
iterative radix-2 algorithm; other lengths fall back to the quadratic
direct sum (with a warning, since that is rarely what you want for large
inputs).
"""

from __future__ import annotations

import cmath
import warnings

import numpy as np


def _bit_reverse_permutation(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def _fft_radix2(x: np.ndarray, sign: int) -> np.ndarray:
    n = len(x)
    out = x[_bit_reverse_permutation(n)].astype(np.complex128)
    span = 1
    while span < n:
        step = cmath.exp(sign * 1j * cmath.pi / span)
        twiddles = step ** np.arange(span)
        for start in range(0, n, 2 * span):
            top = out[start : start + span]
            bot = out[start + span : start + 2 * span] * twiddles
            out[start : start + span] = top + bot
            out[start + span : start + 2 * span] = top - bot
        span *= 2
    return out


def _dft_direct(x: np.ndarray, sign: int) -> np.ndarray:
    n = len(x)
    j = np.arange(n)
    kernel = np.exp(sign * 2j * np.pi * np.outer(j, j) / n)
    return kernel @ x


def fft(x: np.ndarray, sign: int) -> np.ndarray:
    """Transform with exponent sign ``sign``; +1 also divides by n."""
    if sign not in (-1, 1):
        raise ValueError(f"sign must be -1 or +1, got {sign}")
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or len(arr) < 1:
        raise ValueError("input must be a non-empty 1D vector")
    n = len(arr)
    if n & (n - 1) == 0:
        out = _fft_radix2(arr, sign)
    else:
        warnings.warn(
            f"length {n} is not a power of two; using the O(n^2) direct sum",
            stacklevel=2,
        )
        out = _dft_direct(arr, sign)
    if sign == 1:
        out = out / n
    return out


def fftshift(x: np.ndarray) -> np.ndarray:
    """Rotate by floor(n/2) so bin 0 lands in the center."""
    arr = np.asarray(x)
    return np.roll(arr, len(arr) // 2)
