"""Line-oriented problem files.

::

    [group]
    order = 2
    table = 0 1; 1 0
    identity = 0

    [endo]
    map = 0 1

    [subsemigroup]
    mode = reference
    generators = (0,0,0) (0,1,0) (0,0,1)

    [run]
    window = 12
    targets = 6

Abstract mode replaces ``generators`` with ``elements = u:(0,0) v:(0,0)``
and product lines ``u*v=v`` (``u*v=OVERFLOW`` marks a product outside the
window), either after ``products =`` or on lines of their own.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ConfigError, InputError
from .group import Endomorphism, GroupTable, validate_endomorphism, validate_group
from .reilly import Reilly
from .window import ABSTRACT, OVERFLOW, REFERENCE, SWindow, close_generators, load_abstract

SECTIONS = {
    "group": {"order", "table", "identity", "inverse"},
    "endo": {"map"},
    "subsemigroup": {"mode", "generators", "elements", "products"},
    "run": {"window", "targets", "sample", "seed", "name"},
}
OVERFLOW_TOKEN = "OVERFLOW"
_PRODUCT = re.compile(r"([^\s*=]+)\*([^\s*=]+)=([^\s*=]+)")
_TUPLE = re.compile(r"\(\s*(\d+)\s*((?:,\s*\d+\s*){1,2})\)")
_ELEMENT = re.compile(r"([^\s:]+):\(\s*(\d+)\s*,\s*(\d+)\s*\)")


@dataclass
class ProblemConfig:
    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    window: int
    targets: int
    mode: str = REFERENCE
    inverse: tuple[int, ...] | None = None
    endo: tuple[int, ...] | None = None
    generators: tuple[tuple[int, int, int], ...] = ()
    elements: tuple[tuple[str, tuple[int, int]], ...] = ()
    products: tuple[tuple[str, str, str], ...] = ()
    sample: int | None = None
    seed: int = 0
    name: str | None = None

    def group(self) -> GroupTable:
        return validate_group(self.table, self.identity, self.inverse)

    def endomorphism(self) -> Endomorphism:
        g = self.group()
        m = self.endo if self.endo is not None else tuple(range(g.order))
        return validate_endomorphism(g, m)

    def reilly(self) -> Reilly:
        return Reilly(self.group(), self.endomorphism())

    def build_window(self) -> SWindow:
        if self.mode == REFERENCE:
            return close_generators(self.generators, self.reilly(), self.window)
        products = {(u, v): (OVERFLOW if c == OVERFLOW_TOKEN else c) for u, v, c in self.products}
        return load_abstract(self.elements, products, self.window)


def _ints(value: str, line: int) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in value.split())
    except ValueError:
        raise ConfigError(f"expected integers, got {value!r}", line) from None


def _int(value: str, line: int) -> int:
    vals = _ints(value, line)
    if len(vals) != 1:
        raise ConfigError(f"expected one integer, got {value!r}", line)
    return vals[0]


def _generators(value: str, line: int, order: int | None):
    out = []
    rest = _TUPLE.sub("", value).strip()
    if rest:
        raise ConfigError(f"cannot parse generators near {rest!r}", line)
    for m in _TUPLE.finditer(value):
        nums = [int(m.group(1))] + [int(v) for v in m.group(2).split(",") if v.strip()]
        if len(nums) == 2:
            if order != 1:
                raise ConfigError("pair generators (m,n) need a trivial group", line)
            nums = [nums[0], 0, nums[1]]
        out.append(tuple(nums))
    return tuple(out)


def parse_config(text: str) -> ProblemConfig:
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    products: list[tuple[str, str, str]] = []
    product_line = None
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {line!r}", lineno)
            current = line[1:-1].strip()
            if current not in SECTIONS:
                raise ConfigError(f"unknown section [{current}]", lineno)
            if current in sections:
                raise ConfigError(f"duplicate section [{current}]", lineno)
            sections[current] = {}
            continue
        if current is None:
            raise ConfigError("content before the first section", lineno)
        if current == "subsemigroup" and _PRODUCT.fullmatch(line.split()[0]):
            key, value = "products", line
        else:
            if "=" not in line:
                raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in SECTIONS[current]:
                raise ConfigError(f"unknown key {key!r} in [{current}]", lineno)
        if key == "products":
            for tok in value.split():
                m = _PRODUCT.fullmatch(tok)
                if not m:
                    raise ConfigError(f"malformed product {tok!r}", lineno)
                products.append(m.groups())
            product_line = product_line or lineno
            continue
        if key in sections[current]:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        sections[current][key] = (value, lineno)

    for name in ("group", "subsemigroup", "run"):
        if name not in sections:
            raise ConfigError(f"missing [{name}] section")

    def need(sec, key):
        if key not in sections[sec]:
            raise ConfigError(f"missing key {key!r} in [{sec}]")
        return sections[sec][key]

    g = sections["group"]
    order_v, order_line = need("group", "order")
    order = _int(order_v, order_line)
    table_v, table_line = need("group", "table")
    table = tuple(_ints(row, table_line) for row in table_v.split(";"))
    if len(table) != order or any(len(row) != order for row in table):
        raise ConfigError(f"table is not {order}x{order}", table_line)
    identity = _int(*need("group", "identity"))
    inverse = _ints(*g["inverse"]) if "inverse" in g else None
    try:
        validate_group(table, identity, inverse)
    except InputError as exc:
        raise ConfigError(str(exc), table_line) from None

    endo = None
    if "endo" in sections:
        map_v, map_line = need("endo", "map")
        endo = _ints(map_v, map_line)
        try:
            validate_endomorphism(validate_group(table, identity, inverse), endo)
        except InputError as exc:
            raise ConfigError(str(exc), map_line) from None

    run = sections["run"]
    window_v, window_line = need("run", "window")
    window = _int(window_v, window_line)
    if window < 0:
        raise ConfigError("window must be >= 0", window_line)
    if "targets" in run:
        targets = _int(*run["targets"])
        if not 0 <= targets <= window:
            raise ConfigError(f"targets must lie in [0, {window}]", run["targets"][1])
    else:
        targets = window // 2
    sample = _int(*run["sample"]) if "sample" in run else None
    seed = _int(*run["seed"]) if "seed" in run else 0
    name = run["name"][0] if "name" in run else None

    sub = sections["subsemigroup"]
    mode = sub.get("mode", (REFERENCE, 0))[0]
    cfg = ProblemConfig(order=order, table=table, identity=identity, inverse=inverse,
                        endo=endo, window=window, targets=targets, sample=sample,
                        seed=seed, name=name, mode=mode)
    if mode == REFERENCE:
        gen_v, gen_line = need("subsemigroup", "generators")
        cfg.generators = _generators(gen_v, gen_line, order)
        for gen in cfg.generators:
            if gen[0] > window or gen[2] > window:
                raise ConfigError(f"generator {gen} lies outside window {window}", gen_line)
            if not 0 <= gen[1] < order:
                raise ConfigError(f"generator {gen} has an invalid group element", gen_line)
        if products or "elements" in sub:
            raise ConfigError("reference mode takes generators only")
    elif mode == ABSTRACT:
        el_v, el_line = need("subsemigroup", "elements")
        rest = _ELEMENT.sub("", el_v).strip()
        if rest:
            raise ConfigError(f"cannot parse elements near {rest!r}", el_line)
        cfg.elements = tuple((m.group(1), (int(m.group(2)), int(m.group(3))))
                             for m in _ELEMENT.finditer(el_v))
        cfg.products = tuple(products)
        if "generators" in sub:
            raise ConfigError("abstract mode takes elements and products, not generators")
        try:
            cfg.build_window()
        except InputError as exc:
            raise ConfigError(str(exc), product_line or el_line) from None
    else:
        raise ConfigError(f"unknown mode {mode!r}", sub["mode"][1])
    return cfg


def read_config(path) -> ProblemConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def serialize_config(cfg: ProblemConfig) -> str:
    lines = ["[group]", f"order = {cfg.order}",
             "table = " + "; ".join(" ".join(map(str, row)) for row in cfg.table),
             f"identity = {cfg.identity}"]
    if cfg.inverse is not None:
        lines.append("inverse = " + " ".join(map(str, cfg.inverse)))
    if cfg.endo is not None:
        lines += ["", "[endo]", "map = " + " ".join(map(str, cfg.endo))]
    lines += ["", "[subsemigroup]", f"mode = {cfg.mode}"]
    if cfg.mode == REFERENCE:
        if cfg.order == 1:
            gens = " ".join(f"({m},{n})" for m, _, n in cfg.generators)
        else:
            gens = " ".join(f"({m},{g},{n})" for m, g, n in cfg.generators)
        lines.append(f"generators = {gens}")
    else:
        lines.append("elements = " + " ".join(f"{u}:({r},{l})" for u, (r, l) in cfg.elements))
        lines += [f"{u}*{v}={c}" for u, v, c in cfg.products]
    lines += ["", "[run]", f"window = {cfg.window}", f"targets = {cfg.targets}"]
    if cfg.sample is not None:
        lines.append(f"sample = {cfg.sample}")
    if cfg.seed:
        lines.append(f"seed = {cfg.seed}")
    if cfg.name is not None:
        lines.append(f"name = {cfg.name}")
    return "\n".join(lines) + "\n"
