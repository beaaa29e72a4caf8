"""Plain Monte Carlo on G(n, p) with exact copy counts.

Samples are drawn in chunks; chunk j uses a Philox generator seeded from
SeedSequence(seed).spawn(...)[j], so results depend only on (inputs, seed,
chunk size). Counts in a chunk come from injective homomorphism counts, which
are a signed sum of ordinary homomorphism counts over vertex partitions, each
evaluated for the whole chunk with one einsum.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from ._config import UpperTailError, sig12
from .graph import (
    Graph,
    automorphism_count,
    count_copies,
    format_edge_list,
    independent_partitions,
    max_degree,
    partition_mobius,
    quotient_edges,
)

DEFAULT_CHUNK = 2048
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _generator(seed):
    return np.random.Generator(np.random.Philox(seed))


def _sample_upper(rng, n, p, size):
    m = n * (n - 1) // 2
    return rng.random((size, m)) < p


def sample_gnp(n, p, seed):
    """G(n, p) with a Philox (64-bit counter-based) generator keyed by `seed`."""
    if n < 1:
        raise UpperTailError("n must be >= 1")
    if not 0 <= p <= 1:
        raise UpperTailError("p must lie in [0, 1]")
    bits = _sample_upper(_generator(seed), n, p, 1)[0]
    iu, ju = np.triu_indices(n, 1)
    return Graph.from_edges(zip(iu[bits].tolist(), ju[bits].tolist()), n)


def count_copies_sample(H, G):
    """Number of subgraphs of G isomorphic to H."""
    return count_copies(H, G)


def expected_copies(H, n, p):
    """E[X_H] = (n)_k p^|E(H)| / |Aut(H)|."""
    return math.perm(n, H.n) * p**H.num_edges / automorphism_count(H)


class _BatchCounter:
    """Copies of H in a batch of adjacency matrices via Mobius inversion over partitions."""

    def __init__(self, H):
        if H.n > len(_LETTERS) - 1:
            raise UpperTailError("pattern graph too large for batched counting")
        self.aut = automorphism_count(H)
        terms = {}
        for labels in independent_partitions(H):
            q = max(labels) + 1
            edges = tuple(sorted(set(quotient_edges(H, labels))))
            key = (q, edges)
            terms[key] = terms.get(key, 0) + partition_mobius(labels)
        self.terms = [(q, edges, c) for (q, edges), c in sorted(terms.items()) if c]

    def __call__(self, A):
        """A: (batch, n, n) 0/1 float array. Returns exact integer counts."""
        b, n, _ = A.shape
        total = np.zeros(b, dtype=np.int64)
        for q, edges, coeff in self.terms:
            used = sorted({v for e in edges for v in e})
            iso = q - len(used)
            if edges:
                subs = ",".join("z" + _LETTERS[u] + _LETTERS[v] for u, v in edges) + "->z"
                hom = np.einsum(subs, *([A] * len(edges)), optimize="greedy")
                hom = np.rint(hom).astype(np.int64)
            else:
                hom = np.ones(b, dtype=np.int64)
            total += coeff * hom * n**iso
        return total // self.aut


@dataclass(frozen=True)
class SampleStats:
    n: int
    p: float
    h_spec: str
    num_samples: int
    seed: int
    mean_count: float
    variance: float
    expected_count: float
    tail_threshold: float
    tail_hits: int
    tail_estimate: float
    ci_halfwidth: float  # 95% normal-approximation half-width for mean_count
    tail_ci_halfwidth: float  # 95% for tail_estimate; rule of three (one-sided) when there are no hits
    normalized_exponent: float = None
    asymptotic_verified: bool = False
    counts: tuple = field(default=None, repr=False, compare=False)

    def to_dict(self):
        return {
            "n": self.n,
            "p": sig12(self.p),
            "h_spec": self.h_spec,
            "num_samples": self.num_samples,
            "seed": self.seed,
            "mean_count": sig12(self.mean_count),
            "variance": sig12(self.variance),
            "expected_count": sig12(self.expected_count),
            "tail_threshold": sig12(self.tail_threshold),
            "tail_hits": self.tail_hits,
            "tail_estimate": sig12(self.tail_estimate),
            "ci_halfwidth": sig12(self.ci_halfwidth),
            "tail_ci_halfwidth": sig12(self.tail_ci_halfwidth),
            "normalized_exponent": sig12(self.normalized_exponent),
            "asymptotic_verified": self.asymptotic_verified,
            "note": "normalized exponent is reported only; the asymptotic claim is not verified at this scale",
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def counts_csv(self):
        if self.counts is None:
            raise UpperTailError("per-sample counts were not kept (pass keep_counts=True)")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("sample", "count"))
        w.writerows(enumerate(self.counts))
        return buf.getvalue()


def estimate_upper_tail(H, n, p, delta, num_samples, seed, chunk=DEFAULT_CHUNK, keep_counts=False, h_spec=None):
    """Empirical P(X_H >= (1 + delta) E[X_H]) and mean copy count over independent G(n, p) samples."""
    if num_samples < 1:
        raise UpperTailError("num_samples must be >= 1")
    if n < 1 or not 0 <= p <= 1:
        raise UpperTailError("need n >= 1 and p in [0, 1]")
    if not delta > 0:
        raise UpperTailError("delta must be positive")
    if H.num_edges == 0:
        raise UpperTailError("pattern graph needs at least one edge")
    counter = _BatchCounter(H)
    iu, ju = np.triu_indices(n, 1)
    n_chunks = -(-num_samples // chunk)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    counts = np.empty(num_samples, dtype=np.int64)
    for j, ss in enumerate(streams):
        size = min(chunk, num_samples - j * chunk)
        bits = _sample_upper(_generator(ss), n, p, size).astype(float)
        A = np.zeros((size, n, n))
        A[:, iu, ju] = bits
        A[:, ju, iu] = bits
        counts[j * chunk:j * chunk + size] = counter(A)

    N = num_samples
    mean = float(counts.mean())
    var = float(counts.var(ddof=1)) if N > 1 else 0.0
    expected = expected_copies(H, n, p)
    threshold = (1 + delta) * expected
    hits = int(np.count_nonzero(counts >= threshold))
    est = hits / N
    tail_ci = 1.96 * math.sqrt(est * (1 - est) / N) if hits else 3.0 / N
    exponent = None
    if 0 < hits and 0 < p < 1:
        D = max_degree(H)
        exponent = -math.log(est) / (n * n * p**D * math.log(1 / p))
    return SampleStats(
        n=n,
        p=float(p),
        h_spec=h_spec or format_edge_list(H).strip().replace("\n", ";"),
        num_samples=N,
        seed=seed,
        mean_count=mean,
        variance=var,
        expected_count=expected,
        tail_threshold=threshold,
        tail_hits=hits,
        tail_estimate=est,
        ci_halfwidth=1.96 * math.sqrt(var / N),
        tail_ci_halfwidth=tail_ci,
        normalized_exponent=exponent,
        counts=tuple(int(c) for c in counts) if keep_counts else None,
    )
