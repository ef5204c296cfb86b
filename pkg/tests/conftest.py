import numpy as np
import pytest

from helpers import partial_fraction_residues

from zpreal.zero_pole import ZeroPoleData


def make_d1():
    # r(z) = (z - 1)/z: one pole at 0, one zero at 1
    return ZeroPoleData(
        poles=[0.0], zeros=[1.0],
        F_P=[[1.0]], G_P=[[-1.0]], F_N=[[1.0]], G_N=[[1.0]],
    )


def make_scalar_instance(poles, zeros):
    """k=1 instance from partial fractions of r = prod(z-mu)/prod(z-lam)."""
    xi = partial_fraction_residues(poles, zeros)
    eta = partial_fraction_residues(zeros, poles)
    n = len(poles)
    return ZeroPoleData(
        poles=poles, zeros=zeros,
        F_P=np.ones((1, n)), G_P=np.array(xi).reshape(n, 1),
        F_N=np.ones((1, n)), G_N=np.array(eta).reshape(n, 1),
    )


def make_d2():
    return make_scalar_instance([0.5, 2.0], [0.3, 3.0])


@pytest.fixture
def d1():
    return make_d1()


@pytest.fixture
def d2():
    return make_d2()
