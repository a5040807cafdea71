"""scikit-learn style front end over the solvers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .bitlin import array_to_ints, ints_to_array
from .fpt import DEFAULT_BUDGET
from .model import Instance, default_names


def _binary_rows(X) -> np.ndarray:
    X = check_array(X, dtype=None, ensure_min_features=1)
    if not np.isin(X, (0, 1)).all():
        raise ValueError("genotype matrix entries must be 0 or 1")
    return X.astype(np.uint8)


class PPXHSolver(TransformerMixin, BaseEstimator):
    """Find a small haplotype set resolving the rows of a 0/1 genotype matrix.

    ``fit`` stores ``haplotypes_`` (one 0/1 row per haplotype) and
    ``resolution_``, the pair of haplotype indices resolving each input row.
    ``transform`` maps rows to resolving pairs, ``(-1, -1)`` when none exists.
    """

    def __init__(self, algo: str = "auto", perms: int = 10, seed: int = 0, budget: int = DEFAULT_BUDGET):
        self.algo = algo
        self.perms = perms
        self.seed = seed
        self.budget = budget

    def fit(self, X, y=None):
        from .cli import solve_instance

        X = _binary_rows(X)
        rows = array_to_ints(X)
        if not all(rows):
            raise ValueError("every genotype row needs at least one 1")
        distinct = list(dict.fromkeys(rows))
        instance = Instance(default_names(X.shape[1]), tuple(distinct))
        self.algorithm_, self.solution_ = solve_instance(instance, self.algo, self.seed, self.perms, self.budget)
        self.instance_ = instance
        self.n_features_in_ = X.shape[1]
        self.haplotypes_ = ints_to_array(self.solution_.haplotypes, X.shape[1])
        self.n_haplotypes_ = self.solution_.size
        pair_of = dict(zip(distinct, self.solution_.resolution))
        self.resolution_ = np.array([pair_of[g] for g in rows], dtype=np.int64).reshape(-1, 2)
        self._index = {h: i for i, h in enumerate(self.solution_.haplotypes)}
        return self

    def transform(self, X):
        check_is_fitted(self, "haplotypes_")
        X = _binary_rows(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        out = np.full((X.shape[0], 2), -1, dtype=np.int64)
        haps = self.solution_.haplotypes
        for r, g in enumerate(array_to_ints(X)):
            for i, h in enumerate(haps):
                j = self._index.get(h ^ g)
                if j is not None and j != i:
                    out[r] = (min(i, j), max(i, j))
                    break
        return out
