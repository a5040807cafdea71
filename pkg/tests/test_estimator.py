import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from ppxh.estimator import PPXHSolver

from conftest import WORKED_X, sets_to_bits


def test_fit_small():
    X = np.array([[1, 0], [0, 1], [1, 1]])
    est = PPXHSolver().fit(X)
    assert est.n_haplotypes_ == 3 and est.haplotypes_.shape == (3, 2)
    for row, (i, j) in zip(X, est.resolution_):
        assert ((est.haplotypes_[i] ^ est.haplotypes_[j]) == row).all()
    assert (est.transform(X) >= 0).all()
    assert (est.transform([[0, 0]]) == -1).all()


def test_worked_matrix():
    bits = sets_to_bits(WORKED_X)
    X = np.array([[(b >> j) & 1 for j in range(5)] for b in bits])
    est = PPXHSolver(algo="exact").fit(np.vstack([X, X[:2]]))
    assert est.n_haplotypes_ == 6 and est.algorithm_ == "exact"
    assert est.resolution_.shape == (9, 2)
    assert (est.resolution_[7] == est.resolution_[0]).all()


def test_params_and_errors():
    est = PPXHSolver(perms=3, seed=1)
    assert clone(est).get_params()["perms"] == 3
    with pytest.raises(NotFittedError):
        est.transform([[1]])
    with pytest.raises(ValueError):
        est.fit([[2, 0]])
    with pytest.raises(ValueError):
        est.fit([[0, 0], [1, 0]])
    est.fit([[1, 0]])
    with pytest.raises(ValueError):
        est.transform([[1, 0, 1]])
