"""Sparse QUBO container.

Energies are offset + sum_{i<=j} c_ij * x_i * x_j over binary x. All builder
output is integer-valued and evaluated exactly; float coefficients are
accepted as an escape hatch but lose the exactness guarantee.
"""
from __future__ import annotations

import numbers

import numpy as np

from .errors import ValidationError

# Guard for the int64 fast paths: |offset| + sum |c_ij| must stay well below
# 2^63 so no partial sum can wrap.
_INT64_BUDGET = 1 << 62


def _is_int(x):
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


def _is_number(x):
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


class Qubo:
    """Mutable upper-triangular QUBO over variables 0..num_vars-1.

    Terms live in a dict keyed by (i, j) with i <= j; zero coefficients are
    pruned on write. Diagonal terms are linear terms since x * x = x.
    """

    __slots__ = ("num_vars", "offset", "_terms", "_cache")

    def __init__(self, num_vars, offset=0):
        if not _is_int(num_vars) or num_vars < 0:
            raise ValidationError("num_vars must be an int >= 0, got %r" % (num_vars,))
        if not _is_number(offset):
            raise ValidationError("offset must be a number, got %r" % (offset,))
        self.num_vars = num_vars
        self.offset = offset
        self._terms = {}
        self._cache = None

    def _check_index(self, i):
        if not _is_int(i) or not 0 <= i < self.num_vars:
            raise ValidationError("variable index %r out of range [0, %d)" % (i, self.num_vars))

    def add_term(self, i, j, coeff):
        """Accumulate coeff onto the monomial x_i * x_j (x_i itself if i == j)."""
        self._check_index(i)
        self._check_index(j)
        if not _is_number(coeff):
            raise ValidationError("coefficient must be a number, got %r" % (coeff,))
        if i > j:
            i, j = j, i
        key = (i, j)
        new = self._terms.get(key, 0) + coeff
        if new == 0:
            self._terms.pop(key, None)
        else:
            self._terms[key] = new
        self._cache = None

    def add_linear(self, i, coeff):
        self.add_term(i, i, coeff)

    def add_offset(self, value):
        if not _is_number(value):
            raise ValidationError("offset increment must be a number, got %r" % (value,))
        self.offset += value
        self._cache = None

    def add_square(self, constant, coeffs, weight=1):
        """Add weight * (constant + sum_k coeffs[k] * x_k)^2.

        Expansion uses x^2 = x, so each variable contributes
        weight * (a_k^2 + 2 * constant * a_k) on the diagonal and each pair
        contributes 2 * weight * a_k * a_l off the diagonal.
        """
        if not _is_number(constant) or not _is_number(weight):
            raise ValidationError("constant and weight must be numbers")
        ks = sorted(coeffs)
        self.add_offset(weight * constant * constant)
        for k in ks:
            a = coeffs[k]
            self.add_term(k, k, weight * (a * a + 2 * constant * a))
        for pos, k in enumerate(ks):
            ak = coeffs[k]
            for l in ks[pos + 1:]:
                self.add_term(k, l, 2 * weight * ak * coeffs[l])

    @property
    def num_terms(self):
        return len(self._terms)

    @property
    def terms(self):
        """Copy of the term dict, keyed by (i, j) with i <= j."""
        return dict(self._terms)

    @property
    def is_integral(self):
        if not _is_int(self.offset):
            return False
        return all(_is_int(c) for c in self._terms.values())

    # cached numpy views ---------------------------------------------------

    def _ensure_cache(self):
        if self._cache is not None:
            return self._cache
        integral = self.is_integral
        dtype = np.int64 if integral else np.float64
        items = sorted(self._terms.items())
        n = self.num_vars
        ti = np.fromiter((k[0] for k, _ in items), dtype=np.int64, count=len(items))
        tj = np.fromiter((k[1] for k, _ in items), dtype=np.int64, count=len(items))
        tc = np.fromiter((c for _, c in items), dtype=dtype, count=len(items))
        if integral:
            budget = abs(self.offset) + sum(abs(c) for c in self._terms.values())
            if budget >= _INT64_BUDGET:
                raise ValidationError("coefficient magnitudes exceed the exact int64 budget")

        diag = np.zeros(n, dtype=dtype)
        counts = np.zeros(n + 1, dtype=np.int64)
        for (i, j), c in items:
            if i == j:
                diag[i] = c
            else:
                counts[i + 1] += 1
                counts[j + 1] += 1
        indptr = np.cumsum(counts)
        indices = np.zeros(indptr[-1], dtype=np.int64)
        weights = np.zeros(indptr[-1], dtype=dtype)
        fill = indptr[:-1].copy()
        for (i, j), c in items:
            if i != j:
                indices[fill[i]] = j
                weights[fill[i]] = c
                fill[i] += 1
                indices[fill[j]] = i
                weights[fill[j]] = c
                fill[j] += 1
        self._cache = {
            "integral": integral,
            "ti": ti, "tj": tj, "tc": tc,
            "diag": diag, "indptr": indptr, "indices": indices, "weights": weights,
        }
        return self._cache

    def _bits_array(self, bits):
        b = np.asarray(bits, dtype=np.int64)
        if b.shape != (self.num_vars,):
            raise ValidationError("expected %d bits, got shape %r" % (self.num_vars, b.shape))
        if b.size and not np.logical_or(b == 0, b == 1).all():
            raise ValidationError("assignment entries must be 0 or 1")
        return b

    def energy(self, bits):
        """Exact energy of a 0/1 assignment (Python int when integral)."""
        c = self._ensure_cache()
        b = self._bits_array(bits)
        if c["tc"].size == 0:
            total = 0
        else:
            total = (c["tc"] * b[c["ti"]] * b[c["tj"]]).sum()
        value = self.offset + (int(total) if c["integral"] else float(total))
        return value

    def flip_delta(self, bits, k):
        """Energy change from flipping bit k, without copying the assignment."""
        c = self._ensure_cache()
        b = self._bits_array(bits)
        self._check_index(k)
        lo, hi = c["indptr"][k], c["indptr"][k + 1]
        local = c["diag"][k] + (c["weights"][lo:hi] * b[c["indices"][lo:hi]]).sum()
        sign = 1 - 2 * int(b[k])
        return sign * (int(local) if c["integral"] else float(local))

    def solver_arrays(self):
        """(diag, indptr, indices, weights, integral) views for solver kernels.

        The arrays are cached and shared; callers must not mutate them.
        """
        c = self._ensure_cache()
        return c["diag"], c["indptr"], c["indices"], c["weights"], c["integral"]

    # serialization --------------------------------------------------------

    def to_json_dict(self, meta=None):
        return {
            "num_vars": self.num_vars,
            "offset": self.offset,
            "terms": [[i, j, c] for (i, j), c in sorted(self._terms.items())],
            "meta": meta,
        }

    @classmethod
    def from_json_dict(cls, d):
        """Rebuild a Qubo from its JSON dict. Returns (qubo, meta)."""
        try:
            q = cls(d["num_vars"], d.get("offset", 0))
            terms = d["terms"]
        except (KeyError, TypeError) as exc:
            raise ValidationError("QUBO JSON needs num_vars and terms") from exc
        for entry in terms:
            if len(entry) != 3:
                raise ValidationError("term entries must be [i, j, coeff], got %r" % (entry,))
            i, j, c = entry
            q.add_term(i, j, c)
        return q, d.get("meta")

    def __repr__(self):
        return "Qubo(%d vars, %d terms, offset=%r)" % (self.num_vars, self.num_terms, self.offset)
