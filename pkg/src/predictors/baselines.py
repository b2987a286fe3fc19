from __future__ import annotations
import logging
import math

import numpy as np
import scipy.sparse as ssp

from ..config import KappaMode
from ..errors import UsageError
from ..graph.core import DegreeTable, DirectedGraph, common_out_in
from .methods import Method


logger = logging.getLogger(__name__)


def _require_baseline(method: Method) -> None:
    if not method.is_baseline:
        raise UsageError(f"{method.value} is not a neighborhood baseline")


def adamic_adar_weights(deg: DegreeTable, kappa: KappaMode = KappaMode.UNION) -> np.ndarray:
    """
    ``1 / log κ_k`` per node. Nodes with κ ≤ 1 only ever sit on i→k→i
    two-paths, which are not candidates, so they get weight 0.
    """
    # math.log, not np.log: the scalar score uses the same rounding
    return np.array([1.0 / math.log(k) if k >= 2 else 0.0 for k in deg.kappa(kappa).tolist()], dtype=np.float64)


def score_baseline(
    g: DirectedGraph,
    deg: DegreeTable,
    method: Method,
    i: int,
    j: int,
    kappa: KappaMode = KappaMode.UNION,
) -> float:
    """Score of the ordered pair (i, j) under one of the nine directed baselines."""
    _require_baseline(method)
    k_out_i = int(deg.k_out[i])
    k_in_j = int(deg.k_in[j])
    if method is Method.DPAT:
        return float(k_out_i * k_in_j)

    middles = common_out_in(g, i, j)
    c = len(middles)
    if c == 0:
        # 0/0 forms included: no evidence, no score
        return 0.0
    if method is Method.DADA:
        kap = deg.kappa(kappa)
        return math.fsum(1.0 / math.log(int(kap[k])) for k in middles)
    if method is Method.DCNE:
        return float(c)
    if method is Method.DHDI:
        return c / max(k_out_i, k_in_j)
    if method is Method.DHPI:
        return c / min(k_out_i, k_in_j)
    if method is Method.DJID:
        return c / (k_out_i + k_in_j - c)
    if method is Method.DLHN:
        return c / (k_out_i * k_in_j)
    if method is Method.DSAI:
        return c / math.sqrt(k_out_i * k_in_j)
    if method is Method.DSOI:
        return c / (k_out_i + k_in_j)
    raise UsageError(f"Unhandled baseline {method.value}")


def evidence_matrix(
    g: DirectedGraph, deg: DegreeTable, method: Method, kappa: KappaMode = KappaMode.UNION
) -> ssp.csr_matrix:
    """
    ``A·A`` (2-path counts) for the count-based indices, ``A·diag(1/log κ)·A``
    for DADA. Row i, column j aggregates the middles of every i→k→j.
    """
    _require_baseline(method)
    A = g.adjacency
    if method is Method.DADA:
        return _dada_evidence(g, adamic_adar_weights(deg, kappa))
    M = ssp.csr_matrix(A @ A)
    M.sum_duplicates()
    M.sort_indices()
    return M


def _dada_evidence(g: DirectedGraph, weights: np.ndarray) -> ssp.csr_matrix:
    """
    ``A·diag(1/log κ)·A`` with every entry a correctly rounded sum
    (``math.fsum``), bit-identical to :func:`score_baseline`.
    """
    n = g.n
    # Every 2-path i→k→j: one row per (edge i→k, out-neighbor j of k)
    first, middle = g.edge_sources, g.out_indices
    fan = np.diff(g.out_indptr)[middle]
    src = np.repeat(first, fan)
    mid = np.repeat(middle, fan)
    starts = np.repeat(g.out_indptr[middle], fan)
    offsets = np.arange(src.shape[0], dtype=np.int64) - np.repeat(np.cumsum(fan) - fan, fan)
    dst = g.out_indices[starts + offsets]

    keep = src != dst
    src, dst, terms = src[keep], dst[keep], weights[mid[keep]]
    if src.size == 0:
        return ssp.csr_matrix((n, n), dtype=np.float64)
    codes = src.astype(np.int64) * n + dst
    order = np.argsort(codes, kind="stable")
    codes, terms = codes[order], terms[order]
    uniq, bounds = np.unique(codes, return_index=True)
    sums = np.array([math.fsum(chunk.tolist()) for chunk in np.split(terms, bounds[1:])], dtype=np.float64)
    M = ssp.csr_matrix((sums, (uniq // n, uniq % n)), shape=(n, n))
    M.sort_indices()
    return M


def baseline_from_evidence(
    method: Method,
    evidence: np.ndarray,
    k_out_src: np.ndarray,
    k_in_dst: np.ndarray,
) -> np.ndarray:
    """
    Vectorized score of each pair given its evidence value (2-path count, or
    the DADA sum) and the two degrees involved.
    """
    evidence = np.asarray(evidence, dtype=np.float64)
    ko = np.asarray(k_out_src, dtype=np.float64)
    ki = np.asarray(k_in_dst, dtype=np.float64)
    if method is Method.DPAT:
        return ko * ki
    if method in (Method.DADA, Method.DCNE):
        return evidence.copy()

    if method is Method.DHDI:
        denom = np.maximum(ko, ki)
    elif method is Method.DHPI:
        denom = np.minimum(ko, ki)
    elif method is Method.DJID:
        denom = ko + ki - evidence
    elif method is Method.DLHN:
        denom = ko * ki
    elif method is Method.DSAI:
        denom = np.sqrt(ko * ki)
    elif method is Method.DSOI:
        denom = ko + ki
    else:
        raise UsageError(f"Unhandled baseline {method.value}")

    out = np.zeros_like(evidence)
    ok = evidence > 0
    out[ok] = evidence[ok] / denom[ok]
    zero_forms = int(np.count_nonzero(~ok & (denom == 0)))
    if zero_forms:
        logger.debug("%s: %d pair(s) with 0/0 form scored 0", method.value, zero_forms)
    return out
