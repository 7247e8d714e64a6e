"""Multiset comparison of complex spectra.

Sorting complex eigenvalues by (Re, Im) is unstable when conjugate pairs sit
on top of rounding noise in the real parts, so equality of spectra is always
judged by greedy nearest-neighbor matching after the sort, never by paired
indexing.
"""

from __future__ import annotations

import numpy as np


def _lex_order(values: np.ndarray) -> np.ndarray:
    return np.lexsort((values.imag, values.real))


def greedy_match_distance(a, b) -> float:
    """Max matched distance between two equal-size complex multisets.

    Both sides are sorted by (Re, Im); each element of a, in order, is paired
    with the nearest not-yet-used element of b.  Symmetric in its arguments
    up to tie-breaking noise; zero for identical multisets.
    """
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.shape != b.shape:
        raise ValueError(f"multiset sizes differ: {a.shape[0]} vs {b.shape[0]}")
    a = a[_lex_order(a)]
    b = b[_lex_order(b)]
    free = np.ones(b.shape[0], dtype=bool)
    free_idx = np.arange(b.shape[0])
    worst = 0.0
    for x in a:
        live = free_idx[free[free_idx]] if free_idx.size else free_idx
        # compact the free list lazily
        if live.size * 2 < free_idx.size:
            free_idx = live
        d = np.abs(b[live] - x)
        j = int(np.argmin(d))
        worst = max(worst, float(d[j]))
        free[live[j]] = False
    return worst


def conjugate_pairing_defect(spectrum, im_cut: float = 1e-8) -> float:
    """Max distance from any genuinely complex level to the conjugate of another.

    For each E with |Im E| > im_cut, the nearest level to E* is found; the
    maximum of those distances is returned (0.0 if no level is complex).
    """
    ev = np.asarray(spectrum, dtype=complex).ravel()
    complex_levels = ev[np.abs(ev.imag) > im_cut]
    worst = 0.0
    for x in complex_levels:
        worst = max(worst, float(np.min(np.abs(ev - np.conj(x)))))
    return worst
