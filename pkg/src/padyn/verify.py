"""Independent re-verification of Galois certificates from a serialized report.

For fields with a single coordinate (e = h = 1) the check is rebuilt from
plain integer lists with schoolbook arithmetic, sharing no code with the
kernels or the tower module. Other fields fall back to the library's own
quotient rings; the replay is still done from the serialized data.
"""

import hashlib
import json

from padyn.local_field import LocalFieldSpec
from padyn.series_ring import TruncatedSeries


def _pmul(a, b, m):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return out


def _prem(a, g, m):
    """Remainder of a modulo monic g."""
    k = len(g) - 1
    r = [c % m for c in a] + [0] * max(0, k - len(a))
    for i in range(len(r) - 1, k - 1, -1):
        c = r[i]
        if c:
            for j in range(k + 1):
                r[i - k + j] = (r[i - k + j] - c * g[j]) % m
    return r[:k]


def _compose(f, g, m):
    acc = [0]
    for c in reversed(f):
        acc = _pmul(acc, g, m)
        acc[0] = (acc[0] + c) % m
    return acc


def _relations(Qc, level, m):
    G = Qc[1:]
    inv = pow(G[-1], -1, m)
    G = [(c * inv) % m for c in G]
    for _ in range(level - 1):
        G = _compose(G, Qc, m)
        while len(G) > 1 and G[-1] == 0:
            G.pop()
        inv = pow(G[-1], -1, m)
        G = [(c * inv) % m for c in G]
    return G


def _series_coeffs(obj):
    coeffs = [c[0] if isinstance(c, list) else c for c in obj["coeffs"]]
    if obj.get("exact_degree") is not None:
        coeffs = coeffs[:obj["exact_degree"] + 1]
    return coeffs


def _scalar_replay(spec, Qc, gens, level, words, c):
    m = spec.p ** spec.digits
    G = _relations(Qc, level, m)
    N = len(G) - 1

    def ring_mul(x, y):
        return _prem(_pmul(x, y, m), G, m)

    def evaluate(f, x):
        acc = [0] * N
        for coef in reversed(f):
            acc = ring_mul(acc, x)
            acc[0] = (acc[0] + coef) % m
        return acc

    x = [0] * N
    if N > 1:
        x[1] = 1
    else:
        x = _prem([0, 1], G, m)
    roots = []
    for w in words:
        y = x
        for gi in w:
            y = evaluate(gens[gi], y)
        roots.append(y)
    one = [1] + [0] * (N - 1)
    prod = [one]
    for y in roots:
        ny = [(-v) % m for v in y]
        new = [[0] * N for _ in range(len(prod) + 1)]
        for k, coef in enumerate(prod):
            new[k + 1] = [(u + v) % m for u, v in zip(new[k + 1], coef)]
            t = ring_mul(coef, ny)
            new[k] = [(u + v) % m for u, v in zip(new[k], t)]
        prod = new
    mod_c = spec.p ** c
    reduced = [[[v % mod_c] for v in vec] for vec in prod]
    target = [[(G[k] % mod_c if j == 0 else 0) for j in range(N)] for k in range(N + 1)]
    matches = all([v[0] for v in vec] == tgt for vec, tgt in zip(reduced, target))
    return reduced, matches


def _library_replay(spec, Q, gens, level, words, c):
    from padyn.tower import QElement, product_of_linears, tower_build
    tower = tower_build(spec, Q, level)
    R = tower.ring(level)
    roots = []
    for w in words:
        y = R.gen()
        for gi in w:
            y = R.evaluate(gens[gi], y)
        roots.append(QElement(R, y.coeffs, c))
    prod = product_of_linears(R, roots)
    reduced = [[list(spec.canonical(x, c)) for x in vec] for vec in prod]
    G = tower.relations[level - 1]
    matches = all(
        tuple(spec.canonical(u, c) for u in vec) ==
        tuple(spec.canonical(u, c) for u in R.constant(G[k]).coeffs)
        for k, vec in enumerate(prod))
    return reduced, matches


def reverify_level(result, verdict):
    """Recompute one level's product congruence from report data.

    ``result`` is the CriterionReport JSON, ``verdict`` one entry of its
    condition-2 level list. Returns (digest matches, congruence holds).
    """
    qobj = result["condition1"]["Q"]
    spec = LocalFieldSpec.from_json(qobj["spec_ref"])
    level, words, c = verdict["level"], verdict["words"], verdict["precision"]
    if spec.e == 1 and spec.h == 1:
        Qc = _series_coeffs(qobj)
        gens = [_series_coeffs(g["series"]) for g in verdict["generators"]]
        reduced, matches = _scalar_replay(spec, Qc, gens, level, words, c)
    else:
        Q = TruncatedSeries.from_json(qobj, spec)
        gens = [TruncatedSeries.from_json(g["series"], spec) for g in verdict["generators"]]
        reduced, matches = _library_replay(spec, Q, gens, level, words, c)
    digest = hashlib.sha256(json.dumps(reduced, separators=(",", ":")).encode()).hexdigest()
    return digest == verdict["product_digest"], matches


def reverify_report(result):
    """Re-check every certified level; returns {level: (digest_ok, congruence_ok)}."""
    out = {}
    for v in result["condition2"]["levels"]:
        if v["verdict"] == "certified_galois":
            out[v["level"]] = reverify_level(result, v)
    return out
