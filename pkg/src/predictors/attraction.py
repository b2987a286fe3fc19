from __future__ import annotations
import math
from typing import Tuple

import numpy as np
import scipy.sparse as ssp

from ..config import EtaVariant, KappaMode
from ..graph.core import DegreeTable, DirectedGraph, common_out_in


def popularity_vec(deg: DegreeTable, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
    """Normalized log-degree popularity of each (src[t], dst[t]) pair."""
    denom = np.log(deg.k_out_max + 1.0) + np.log(deg.k_in_max + 1.0)
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if denom == 0.0:
        return np.zeros(src.shape[0], dtype=np.float64)
    num = np.log(deg.k_out[src] + 1.0) + np.log(deg.k_in[dst] + 1.0)
    return num / denom


def popularity(deg: DegreeTable, i: int, j: int) -> float:
    return float(popularity_vec(deg, np.array([i]), np.array([j]))[0])


def attraction_factors(deg: DegreeTable, kappa: KappaMode) -> np.ndarray:
    """Per-node factor ``log(κ_k + 2) / log(κ_max + 2)`` in (0, 1]."""
    k = deg.kappa(kappa).astype(np.float64)
    return np.log(k + 2.0) / np.log(deg.kappa_max(kappa) + 2.0)


def _combine(eta_in: np.ndarray, eta_out: np.ndarray, variant: EtaVariant) -> np.ndarray:
    if variant is EtaVariant.PSEUDOCODE:
        eta_in = 1.0 - eta_in
        eta_out = 1.0 - eta_out
    return 1.0 - (eta_in * eta_out + eta_in + eta_out) / 3.0


def local_attraction(
    g: DirectedGraph,
    deg: DegreeTable,
    i: int,
    j: int,
    variant: EtaVariant = EtaVariant.EQUATIONS,
    kappa: KappaMode = KappaMode.SUM,
) -> float:
    """
    Local attraction of the ordered pair (i, j): products of the factors of
    the middle nodes of 2-paths i→k→j (outgoing side) and j→k→i (incoming
    side). Empty products are 1, which gives 0 with the default variant.
    """
    factors = attraction_factors(deg, kappa)
    eta_out = math.prod(float(factors[k]) for k in common_out_in(g, i, j))
    eta_in = math.prod(float(factors[k]) for k in common_out_in(g, j, i))
    return float(_combine(np.array([eta_in]), np.array([eta_out]), variant)[0])


class AttractionIndex:
    """
    Vectorized local attraction. Holds ``L = A · diag(log f) · A`` so that the
    product over the middles of i→k→j is ``exp(L[i, j])``; pairs without a
    2-path have no stored entry, i.e. an empty product of 1.
    """

    def __init__(
        self,
        g: DirectedGraph,
        deg: DegreeTable,
        variant: EtaVariant = EtaVariant.EQUATIONS,
        kappa: KappaMode = KappaMode.SUM,
    ):
        self.n = g.n
        self.variant = variant
        A = g.adjacency
        logf = np.log(attraction_factors(deg, kappa))
        L = ssp.csr_matrix(A @ ssp.diags(logf) @ A)
        L.sum_duplicates()
        L.sort_indices()
        coo = L.tocoo()
        self._codes = coo.row.astype(np.int64) * self.n + coo.col.astype(np.int64)
        order = np.argsort(self._codes, kind="stable")
        self._codes = self._codes[order]
        self._values = coo.data[order]

    def log_products(self, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
        codes = np.asarray(src, dtype=np.int64) * self.n + np.asarray(dst, dtype=np.int64)
        out = np.zeros(codes.shape[0], dtype=np.float64)
        if self._codes.size == 0 or codes.size == 0:
            return out
        pos = np.searchsorted(self._codes, codes)
        pos_clipped = np.minimum(pos, self._codes.size - 1)
        hit = self._codes[pos_clipped] == codes
        out[hit] = self._values[pos_clipped[hit]]
        return out

    def products(self, src: np.ndarray, dst: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(eta_in, eta_out) raw products for each pair."""
        eta_out = np.exp(self.log_products(src, dst))
        eta_in = np.exp(self.log_products(dst, src))
        return eta_in, eta_out

    def eta(self, src: np.ndarray, dst: np.ndarray) -> np.ndarray:
        eta_in, eta_out = self.products(src, dst)
        return _combine(eta_in, eta_out, self.variant)
