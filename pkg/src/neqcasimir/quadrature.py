"""Gauss-Kronrod quadrature: fixed composite grids and an adaptive
panel-splitting driver for vector-valued integrands.

The 7-15 pair gives a 7-point Gauss estimate embedded in a 15-point
Kronrod estimate; their difference is a conservative error bound for
the Kronrod value.  The adaptive driver bisects the worst panel until
every output channel meets its tolerance, then sums panels in position
order with math.fsum so reruns are bit-identical.
"""

import heapq
import math

import numpy as np

from .errors import QuadratureError

# 15-point Kronrod nodes on [-1, 1] with Kronrod weights and the
# embedded 7-point Gauss weights (zero at Kronrod-only nodes).
_GK15 = [
    (+0.991455371120813, 0.000000000000000, 0.022935322010529),
    (-0.991455371120813, 0.000000000000000, 0.022935322010529),
    (+0.949107912342759, 0.129484966168870, 0.063092092629979),
    (-0.949107912342759, 0.129484966168870, 0.063092092629979),
    (+0.864864423359769, 0.000000000000000, 0.104790010322250),
    (-0.864864423359769, 0.000000000000000, 0.104790010322250),
    (+0.741531185599394, 0.279705391489277, 0.140653259715525),
    (-0.741531185599394, 0.279705391489277, 0.140653259715525),
    (+0.586087235467691, 0.000000000000000, 0.169004726639267),
    (-0.586087235467691, 0.000000000000000, 0.169004726639267),
    (+0.405845151377397, 0.381830050505119, 0.190350578064785),
    (-0.405845151377397, 0.381830050505119, 0.190350578064785),
    (+0.207784955007898, 0.000000000000000, 0.204432940075298),
    (-0.207784955007898, 0.000000000000000, 0.204432940075298),
    (0.000000000000000, 0.417959183673469, 0.209482141084728),
]

_order = np.argsort([row[0] for row in _GK15])
GK_NODES = np.array([_GK15[i][0] for i in _order])
GK_WEIGHTS_GAUSS = np.array([_GK15[i][1] for i in _order])
GK_WEIGHTS_KRONROD = np.array([_GK15[i][2] for i in _order])
N_GK = 15


def panel_nodes(a, b):
    """Kronrod nodes mapped to the interval (a, b).  All interior."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    return mid + half * GK_NODES


def panel_estimates(a, b, values):
    """Kronrod value and |Kronrod - Gauss| error for one panel.

    values has shape (15, ...) matching panel_nodes order.
    """
    half = 0.5 * (b - a)
    vk = half * np.tensordot(GK_WEIGHTS_KRONROD, values, axes=(0, 0))
    vg = half * np.tensordot(GK_WEIGHTS_GAUSS, values, axes=(0, 0))
    return vk, np.abs(vk - vg)


def composite_nodes(edges):
    """Kronrod nodes and weights for a composite rule over given panel
    edges (strictly increasing array).  Returns (nodes, weights), both
    of length 15 * (len(edges) - 1).  No error estimate; intended for
    inner integrals whose resolution is fixed per call.
    """
    edges = np.asarray(edges, dtype=float)
    nodes = []
    weights = []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        nodes.append(mid + half * GK_NODES)
        weights.append(half * GK_WEIGHTS_KRONROD)
    return np.concatenate(nodes), np.concatenate(weights)


def uniform_edges(a, b, n_panels):
    return np.linspace(a, b, n_panels + 1)


def adaptive_vector(f, a, b, rel_tol, seed_edges=None, max_panels=2000,
                    abs_floor=0.0):
    """Adaptively integrate a vector-valued function over [a, b].

    Parameters
    ----------
    f : callable
        f(x) with x shape (15,) returning shape (15, C): the integrand
        evaluated at one panel's nodes, C output channels.
    a, b : float
        Integration limits, a < b.
    rel_tol : float
        Target relative error per channel.  A channel much smaller than
        the largest channel is held to the larger channel's scale so a
        zero crossing cannot demand unbounded refinement.
    seed_edges : array_like, optional
        Initial panel boundaries (must start at a and end at b).
    max_panels : int
        Refinement budget; exceeded -> QuadratureError.
    abs_floor : float
        Absolute error floor added to every channel tolerance.

    Returns
    -------
    (value, error) : ndarrays of shape (C,)
    """
    if not b > a:
        raise ValueError("need b > a")
    if seed_edges is None:
        edges = np.array([a, b], dtype=float)
    else:
        edges = np.asarray(seed_edges, dtype=float)
        if edges[0] != a or edges[-1] != b or np.any(np.diff(edges) <= 0):
            raise ValueError("seed_edges must increase from a to b")

    def make_panel(lo, hi):
        vals = np.asarray(f(panel_nodes(lo, hi)), dtype=float)
        vk, err = panel_estimates(lo, hi, vals)
        return (lo, hi, vk, err)

    panels = [make_panel(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
    heap = []
    counter = 0
    for p in panels:
        heapq.heappush(heap, (-float(np.max(p[3])), counter, p))
        counter += 1

    while True:
        total = np.sum([p[2] for _, _, p in heap], axis=0)
        errs = np.sum([p[3] for _, _, p in heap], axis=0)
        scale = np.max(np.abs(total)) if heap else 0.0
        tol = rel_tol * np.maximum(np.abs(total), 0.01 * scale) + abs_floor
        if np.all(errs <= tol):
            break
        if len(heap) >= max_panels:
            worst = heap[0][2]
            raise QuadratureError(
                "no convergence after %d panels; worst panel [%g, %g] "
                "error %g" % (len(heap), worst[0], worst[1],
                              float(np.max(worst[3]))),
                worst_panel=(worst[0], worst[1], worst[2].tolist(),
                             worst[3].tolist()),
                reached=float(np.max(errs)),
                target=float(np.min(tol)))
        _, _, worst = heapq.heappop(heap)
        lo, hi, _, _ = worst
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            raise QuadratureError(
                "panel [%g, %g] cannot be split further" % (lo, hi),
                worst_panel=(lo, hi, worst[2].tolist(), worst[3].tolist()))
        for lo2, hi2 in ((lo, mid), (mid, hi)):
            p = make_panel(lo2, hi2)
            heapq.heappush(heap, (-float(np.max(p[3])), counter, p))
            counter += 1

    final = sorted((p for _, _, p in heap), key=lambda p: p[0])
    n_channels = final[0][2].shape[0]
    value = np.array([math.fsum(p[2][c] for p in final)
                      for c in range(n_channels)])
    error = np.array([math.fsum(p[3][c] for p in final)
                      for c in range(n_channels)])
    return value, error
