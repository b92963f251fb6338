import numpy as np
import pytest

from cgf.fock import FockSpace, sector_basis, sector_of, total_quanta_basis
from cgf.hydrogenic import generator, s_state
from cgf.wick import mode


def test_basis_sizes():
    assert len(total_quanta_basis(0)) == 1
    assert len(total_quanta_basis(6)) == 210
    assert all(sector_of(o) == (0, 0) for o in sector_basis(0, 0, 10))
    assert len(sector_basis(0, 0, 10)) == 21


def test_number_operator_is_diagonal():
    space = FockSpace(total_quanta_basis(4))
    n2 = space.matrix(generator("Nplus2")).toarray()
    np.testing.assert_allclose(n2, np.diag([sum(o) + 2 for o in space.basis]))


def test_creation_matrix_element():
    space = FockSpace(total_quanta_basis(3))
    ad = space.matrix(mode("a1^"))
    i, j = space.index[(2, 0, 0, 0)], space.index[(1, 0, 0, 0)]
    assert ad[i, j] == pytest.approx(np.sqrt(2))


def test_state_vectors_are_normalised():
    for n in range(4):
        space = FockSpace(sector_basis(0, 0, 2 * n))
        vec = space.vector(s_state(n))
        assert np.vdot(vec, vec).real == pytest.approx(1.0)


def test_vector_outside_basis_raises():
    space = FockSpace(total_quanta_basis(2))
    with pytest.raises(ValueError):
        space.vector(s_state(2))
