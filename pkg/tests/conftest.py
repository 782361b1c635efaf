import pytest

from iquot import classes
from iquot.cli import demo_path
from iquot.config import read_config


def demo_window(name):
    return read_config(demo_path(name)).build_window()


@pytest.fixture(scope="session")
def bicyclic_S():
    return demo_window("bicyclic-n0")


@pytest.fixture(scope="session")
def z2_S():
    return demo_window("reilly-z2")


@pytest.fixture(scope="session")
def even_S():
    return demo_window("even-counterexample")


@pytest.fixture(scope="session")
def rightzero_S():
    return demo_window("rightzero-counterexample")


@pytest.fixture(scope="session")
def bicyclic_Q(bicyclic_S):
    return classes(bicyclic_S)


@pytest.fixture(scope="session")
def z2_Q(z2_S):
    return classes(z2_S)
