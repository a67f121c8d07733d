"""QUBO solvers: restarted simulated annealing and exhaustive enumeration.

Both solvers are deterministic. Annealing restarts draw from independent
xoshiro256** streams keyed by (seed, restart index), so the merged result
does not depend on thread scheduling; SNAKEBOX_THREADS only caps how many
restarts run concurrently. Exhaustive enumeration walks a Gray code, one
bit flip per visited assignment, and breaks energy ties toward the
lexicographically smallest bit vector.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from collections import Counter
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import CapExceededError, ValidationError

EXACT_HARD_CAP = 30

_MASK64 = (1 << 64) - 1


def _splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x, z ^ (z >> 31)


def restart_rng_states(seed, restarts):
    """Initial xoshiro256** states, one row per restart.

    Row r is four splitmix64 outputs seeded from a fixed mix of (seed, r),
    so streams are reproducible and pairwise independent for practical
    purposes.
    """
    states = np.empty((restarts, 4), dtype=np.uint64)
    for r in range(restarts):
        x = (seed * 0x9E3779B97F4A7C15 + (r + 1) * 0xD1B54A32D192ED03) & _MASK64
        row = []
        for _ in range(4):
            x, z = _splitmix64(x)
            row.append(z)
        if not any(row):
            row[0] = 0x9E3779B97F4A7C15
        states[r] = row
    return states


@njit(cache=True, nogil=True, inline="always")
def _rng_next(s):
    # xoshiro256**
    x = s[1] * np.uint64(5)
    result = ((x << np.uint64(7)) | (x >> np.uint64(57))) * np.uint64(9)
    t = s[1] << np.uint64(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = (s[3] << np.uint64(45)) | (s[3] >> np.uint64(19))
    return result


_U01 = 1.0 / 9007199254740992.0  # 2^-53


@njit(cache=True, nogil=True)
def _anneal_kernel(nv, diag, indptr, indices, weights, betas, state):
    bits = np.zeros(nv, dtype=np.uint8)
    for k in range(nv):
        bits[k] = np.uint8(_rng_next(state) & np.uint64(1))
    h = diag.copy()
    for k in range(nv):
        if bits[k]:
            for t in range(indptr[k], indptr[k + 1]):
                h[indices[t]] += weights[t]
    cur = diag[0] - diag[0]  # zero of the weight dtype
    for k in range(nv):
        if bits[k]:
            cur += diag[k]
            for t in range(indptr[k], indptr[k + 1]):
                j = indices[t]
                if j > k and bits[j]:
                    cur += weights[t]
    best = cur
    best_bits = bits.copy()
    order = np.arange(nv, dtype=np.int64)
    for s in range(betas.shape[0]):
        beta = betas[s]
        for i in range(nv - 1, 0, -1):
            j = int(_rng_next(state) % np.uint64(i + 1))
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        for pos in range(nv):
            k = order[pos]
            delta = (1 - 2 * np.int64(bits[k])) * h[k]
            if delta <= 0:
                accept = True
            else:
                u = np.float64(_rng_next(state) >> np.uint64(11)) * _U01
                accept = u < math.exp(-beta * delta)
            if accept:
                bits[k] = 1 - bits[k]
                sgn = 2 * np.int64(bits[k]) - 1
                for t in range(indptr[k], indptr[k + 1]):
                    h[indices[t]] += sgn * weights[t]
                cur += delta
                if cur < best:
                    best = cur
                    best_bits[:] = bits
    return best, best_bits


@njit(cache=True, nogil=True)
def _gray_kernel(nv, diag, indptr, indices, weights, order):
    bits = np.zeros(nv, dtype=np.uint8)
    h = diag.copy()
    cur = diag[0] - diag[0]
    best = cur
    best_bits = bits.copy()
    count = 1
    total = np.int64(1) << np.int64(nv)
    for step in range(1, total):
        t = step
        z = 0
        while t & 1 == 0:
            t >>= 1
            z += 1
        k = order[z]
        delta = (1 - 2 * np.int64(bits[k])) * h[k]
        bits[k] = 1 - bits[k]
        cur += delta
        sgn = 2 * np.int64(bits[k]) - 1
        for p in range(indptr[k], indptr[k + 1]):
            h[indices[p]] += sgn * weights[p]
        if cur < best:
            best = cur
            count = 1
            best_bits[:] = bits
        elif cur == best:
            count += 1
            for i in range(nv):
                if bits[i] != best_bits[i]:
                    if bits[i] < best_bits[i]:
                        best_bits[:] = bits
                    break
    return best, best_bits, count


@dataclass(frozen=True)
class AnnealConfig:
    """Annealing schedule: geometric inverse temperature over full sweeps."""

    sweeps: int = 5000
    beta_hot: float = 0.05
    beta_cold: float = 20.0
    restarts: int = 32
    seed: int = 1

    def __post_init__(self):
        if not isinstance(self.sweeps, int) or isinstance(self.sweeps, bool) or self.sweeps < 1:
            raise ValidationError("sweeps must be an int >= 1")
        if not isinstance(self.restarts, int) or isinstance(self.restarts, bool) or self.restarts < 1:
            raise ValidationError("restarts must be an int >= 1")
        if not (0 < float(self.beta_hot) <= float(self.beta_cold)):
            raise ValidationError("need 0 < beta_hot <= beta_cold")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValidationError("seed must be an int")


@dataclass
class SolveResult:
    """best_energy, its bit vector, the restart that found it, and the
    histogram of per-restart best energies (for exhaustive solves: the
    minimum and how many assignments attain it)."""

    best_energy: object
    bits: list
    restart_of_best: int
    histogram: list

    def to_json_dict(self):
        return {
            "best_energy": self.best_energy,
            "bits": list(self.bits),
            "restart_of_best": self.restart_of_best,
            "histogram": [[e, c] for e, c in self.histogram],
        }

    @classmethod
    def from_json_dict(cls, d):
        try:
            return cls(best_energy=d["best_energy"], bits=list(d["bits"]),
                       restart_of_best=d["restart_of_best"],
                       histogram=[(e, c) for e, c in d["histogram"]])
        except (KeyError, TypeError) as exc:
            raise ValidationError("solve result JSON is malformed") from exc


def thread_count(restarts):
    """Worker cap for restart parallelism, honoring SNAKEBOX_THREADS."""
    env = os.environ.get("SNAKEBOX_THREADS")
    if env is not None:
        try:
            t = int(env)
        except ValueError:
            raise ValidationError("SNAKEBOX_THREADS must be a positive integer, got %r" % env)
        if t < 1:
            raise ValidationError("SNAKEBOX_THREADS must be a positive integer, got %r" % env)
    else:
        t = os.cpu_count() or 1
    return max(1, min(t, restarts))


def beta_schedule(config):
    """Geometric ramp from beta_hot to beta_cold, one value per sweep."""
    if config.sweeps == 1:
        return np.array([config.beta_hot], dtype=np.float64)
    return np.geomspace(config.beta_hot, config.beta_cold, config.sweeps)


def _finish(value, integral):
    return int(value) if integral else float(value)


def anneal(q, config=None):
    """Restarted single-flip Metropolis annealing.

    Reports the best energy ever visited across all restarts; ties between
    restarts break toward the lowest restart index. Deterministic for a
    fixed config regardless of SNAKEBOX_THREADS.
    """
    cfg = config if config is not None else AnnealConfig()
    if q.num_vars == 0:
        return SolveResult(q.offset, [], 0, [(q.offset, cfg.restarts)])
    diag, indptr, indices, weights, integral = q.solver_arrays()
    betas = beta_schedule(cfg)
    states = restart_rng_states(cfg.seed, cfg.restarts)

    def run(r):
        return _anneal_kernel(q.num_vars, diag, indptr, indices, weights,
                              betas, states[r].copy())

    workers = thread_count(cfg.restarts)
    if workers == 1:
        outcomes = [run(r) for r in range(cfg.restarts)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, range(cfg.restarts)))

    energies = [_finish(e, integral) + q.offset for e, _ in outcomes]
    best_r = min(range(cfg.restarts), key=lambda r: (energies[r], r))
    histogram = sorted(Counter(energies).items())
    bits = [int(b) for b in outcomes[best_r][1]]
    return SolveResult(energies[best_r], bits, best_r, histogram)


def exact_solve(q, max_vars=EXACT_HARD_CAP):
    """Exhaustive minimum by Gray-code walk over all 2^num_vars assignments.

    Flip positions are assigned to Gray counter bits in ascending degree
    order (the lowest counter bit flips every other step), which only
    changes visit order, never the set of visited assignments. Refuses
    instances above max_vars, which itself is capped at 30.
    """
    if not isinstance(max_vars, int) or isinstance(max_vars, bool) or max_vars < 0:
        raise ValidationError("max_vars must be an int >= 0")
    if max_vars > EXACT_HARD_CAP:
        raise ValidationError("max_vars cannot exceed %d" % EXACT_HARD_CAP)
    if q.num_vars > max_vars:
        raise CapExceededError(
            "exhaustive solve refused: %d variables exceeds max_vars=%d"
            % (q.num_vars, max_vars))
    if q.num_vars == 0:
        return SolveResult(q.offset, [], 0, [(q.offset, 1)])
    diag, indptr, indices, weights, integral = q.solver_arrays()
    degrees = np.diff(indptr)
    order = np.argsort(degrees, kind="stable").astype(np.int64)
    best, best_bits, count = _gray_kernel(q.num_vars, diag, indptr, indices,
                                          weights, order)
    energy = _finish(best, integral) + q.offset
    return SolveResult(energy, [int(b) for b in best_bits], 0, [(energy, count)])
