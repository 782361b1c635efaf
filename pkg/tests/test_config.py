import pytest
from hypothesis import given, strategies as st

from iquot.cli import demo_names, demo_path
from iquot.config import ProblemConfig, parse_config, read_config, serialize_config
from iquot.errors import ConfigError
from iquot.window import OVERFLOW


def test_bicyclic_demo_parses():
    cfg = read_config(demo_path("bicyclic-n0"))
    assert cfg.order == 1 and cfg.window == 20 and cfg.targets == 10
    assert (0, 0, 1) in cfg.generators


def test_z2_demo_parses():
    cfg = read_config(demo_path("reilly-z2"))
    assert cfg.order == 2 and cfg.endomorphism().map == (0, 1)
    assert {(0, 0, 1), (0, 1, 1)} <= set(cfg.generators)
    assert (cfg.window, cfg.targets) == (12, 6)


def test_empty_file():
    with pytest.raises(ConfigError, match=r"missing \[group\] section"):
        parse_config("")


def test_errors_carry_line_numbers():
    text = ("[group]\norder = 1\ntable = 0\nidentity = 0\n[subsemigroup]\n"
            "generators = (0,1)\n[run]\nwindow = x\n")
    with pytest.raises(ConfigError, match="line 8"):
        parse_config(text)
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("[group]\ncolour = red\n")


def test_semantic_errors_delegate():
    text = ("[group]\norder = 2\ntable = 0 1; 1 1\nidentity = 0\n[subsemigroup]\n"
            "generators = (0,0,0)\n[run]\nwindow = 2\n")
    with pytest.raises(ConfigError, match=r"line 3: inverse axiom violated at x=1"):
        parse_config(text)
    text = ("[group]\norder = 1\ntable = 0\nidentity = 0\n[subsemigroup]\nmode = abstract\n"
            "elements = u:(0,0) v:(0,1)\nu*u=u\nu*v=v\nv*u=u\nv*v=v\n[run]\nwindow = 2\n")
    with pytest.raises(ConfigError, match="profile mismatch"):
        parse_config(text)


def test_overflow_products():
    text = ("[group]\norder = 1\ntable = 0\nidentity = 0\n[subsemigroup]\nmode = abstract\n"
            "elements = e:(0,0) a:(0,1)\nproducts = e*e=e e*a=a a*e=a a*a=OVERFLOW\n"
            "[run]\nwindow = 1\n")
    S = parse_config(text).build_window()
    assert S.ext[1][1] == OVERFLOW


@pytest.mark.parametrize("name", demo_names())
def test_demo_round_trip(name):
    cfg = read_config(demo_path(name))
    assert parse_config(serialize_config(cfg)) == cfg


@given(order=st.integers(1, 5), k=st.integers(0, 4), window=st.integers(0, 9), data=st.data())
def test_round_trip_generated(order, k, window, data):
    table = tuple(tuple((i + j) % order for j in range(order)) for i in range(order))
    gens = tuple(data.draw(st.lists(st.tuples(st.integers(0, window), st.integers(0, order - 1),
                                              st.integers(0, window)), max_size=4)))
    cfg = ProblemConfig(order=order, table=table, identity=0, window=window,
                        targets=data.draw(st.integers(0, window)),
                        endo=tuple((k * g) % order for g in range(order)), generators=gens,
                        name=data.draw(st.sampled_from([None, "x", "demo-1"])))
    assert parse_config(serialize_config(cfg)) == cfg
