"""Problem instances: customers, geometry, a seeded generator and the text file format."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class InstanceFormatError(ValueError):
    """Raised when an instance file cannot be parsed."""

    def __init__(self, message: str, lineno: int | None = None, path: str | None = None):
        self.message = message
        self.lineno = lineno
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if lineno is not None:
            where += f"line {lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)


@dataclass(frozen=True)
class Customer:
    id: int
    x: float
    y: float
    consumption: float
    initial_inventory: float

    def __post_init__(self):
        if not self.consumption > 0:
            raise ValueError(f"customer {self.id}: consumption must be > 0, got {self.consumption}")
        if not self.initial_inventory >= 0:
            raise ValueError(
                f"customer {self.id}: initial inventory must be >= 0, got {self.initial_inventory}"
            )

    @property
    def stockout_date(self) -> int:
        """First date whose consumption the initial inventory cannot cover."""
        return math.floor(self.initial_inventory / self.consumption) + 1


@dataclass(frozen=True)
class Instance:
    name: str
    horizon: int
    depot_x: float
    depot_y: float
    capacity: float
    customers: tuple[Customer, ...]

    def __post_init__(self):
        object.__setattr__(self, "customers", tuple(self.customers))
        if not self.customers:
            raise ValueError("instance needs at least one customer")
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if not self.capacity > 0:
            raise ValueError(f"capacity must be > 0, got {self.capacity}")
        for k, c in enumerate(self.customers, start=1):
            if c.id != k:
                raise ValueError(f"customer ids must be 1..n in order; position {k} has id {c.id}")

    @property
    def n(self) -> int:
        return len(self.customers)

    def customer(self, i: int) -> Customer:
        """Customer by 1-based index."""
        return self.customers[i - 1]

    def coordinates(self) -> np.ndarray:
        """(n+1, 2) array, row 0 is the depot."""
        pts = [(self.depot_x, self.depot_y)] + [(c.x, c.y) for c in self.customers]
        return np.array(pts, dtype=float)


def build_distance_matrix(inst: Instance) -> np.ndarray:
    """Euclidean distances between all nodes, depot at index 0. No rounding."""
    xy = inst.coordinates()
    m = len(xy)
    d = np.zeros((m, m))
    for a in range(m):
        for b in range(a + 1, m):
            d[a, b] = d[b, a] = math.sqrt((xy[a, 0] - xy[b, 0]) ** 2 + (xy[a, 1] - xy[b, 1]) ** 2)
    return d


@dataclass(frozen=True)
class GeneratorParams:
    """Knobs of the random instance generator.

    Coordinates are uniform in ``[0, side]^2`` with the depot at the centre;
    consumption is uniform in ``[consumption_low, consumption_high]``; initial
    inventory is uniform in ``[0, inventory_factor * u_i * H]``.
    """

    side: float = 100.0
    consumption_low: float = 1.0
    consumption_high: float = 10.0
    inventory_factor: float = 0.2
    capacity: float = 100.0

    def validate(self) -> None:
        if not 0 < self.consumption_low <= self.consumption_high:
            raise ValueError("need 0 < consumption_low <= consumption_high")
        if self.consumption_high > self.capacity:
            raise ValueError(
                f"consumption_high={self.consumption_high} exceeds capacity={self.capacity}: "
                "some customers would be unserviceable"
            )
        if self.side <= 0:
            raise ValueError("side must be > 0")
        if self.inventory_factor < 0:
            raise ValueError("inventory_factor must be >= 0")


def generate_instance(seed: int, n: int, H: int, params: GeneratorParams | None = None) -> Instance:
    if n < 1 or H < 1:
        raise ValueError(f"need n >= 1 and H >= 1, got n={n}, H={H}")
    params = params or GeneratorParams()
    params.validate()
    rng = np.random.default_rng(seed)
    xy = rng.uniform(0.0, params.side, size=(n, 2))
    u = rng.uniform(params.consumption_low, params.consumption_high, size=n)
    frac = rng.uniform(0.0, 1.0, size=n)
    customers = [
        Customer(
            id=k + 1,
            x=float(xy[k, 0]),
            y=float(xy[k, 1]),
            consumption=float(u[k]),
            initial_inventory=float(frac[k] * params.inventory_factor * u[k] * H),
        )
        for k in range(n)
    ]
    return Instance(
        name=f"rand-s{seed}-n{n}-h{H}",
        horizon=H,
        depot_x=params.side / 2,
        depot_y=params.side / 2,
        capacity=float(params.capacity),
        customers=tuple(customers),
    )


def format_instance(inst: Instance) -> str:
    lines = [
        f"NAME {inst.name}",
        f"N {inst.n}",
        f"H {inst.horizon}",
        f"CAPACITY {inst.capacity!r}",
        f"DEPOT {inst.depot_x!r} {inst.depot_y!r}",
    ]
    for c in inst.customers:
        lines.append(f"{c.id} {c.x!r} {c.y!r} {c.consumption!r} {c.initial_inventory!r}")
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(format_instance(inst), encoding="utf-8")


def _float(tok: str, lineno: int, what: str) -> float:
    try:
        return float(tok)
    except ValueError:
        raise InstanceFormatError(f"bad {what} {tok!r}", lineno) from None


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceFormatError(f"bad {what} {tok!r}", lineno) from None


def parse_instance(text: str) -> Instance:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line))

    header = {}
    keys = ["NAME", "N", "H", "CAPACITY", "DEPOT"]
    for key, (lineno, line) in zip(keys, rows):
        tag, _, rest = line.partition(" ")
        if tag != key:
            raise InstanceFormatError(f"expected {key}, got {tag!r}", lineno)
        if not rest.strip():
            raise InstanceFormatError(f"missing value for {key}", lineno)
        header[key] = (lineno, rest.strip())
    if len(header) < len(keys):
        missing = keys[len(header)]
        last = rows[-1][0] if rows else 0
        raise InstanceFormatError(f"missing {missing} line", last + 1)

    name = header["NAME"][1]
    n = _int(header["N"][1], header["N"][0], "N")
    H = _int(header["H"][1], header["H"][0], "H")
    Q = _float(header["CAPACITY"][1], header["CAPACITY"][0], "CAPACITY")
    lineno, depot = header["DEPOT"]
    dtoks = depot.split()
    if len(dtoks) != 2:
        raise InstanceFormatError("DEPOT needs two coordinates", lineno)
    dx, dy = (_float(t, lineno, "depot coordinate") for t in dtoks)

    body = rows[len(keys):]
    customers = []
    seen = set()
    for lineno, line in body:
        toks = line.split()
        if len(toks) != 5:
            raise InstanceFormatError(f"customer line needs 5 fields, got {len(toks)}", lineno)
        cid = _int(toks[0], lineno, "customer id")
        if cid in seen:
            raise InstanceFormatError(f"duplicate customer id {cid}", lineno)
        seen.add(cid)
        if cid != len(customers) + 1:
            raise InstanceFormatError(f"customer id {cid} out of order", lineno)
        x, y, u, inv = (_float(t, lineno, "customer field") for t in toks[1:])
        try:
            customers.append(Customer(cid, x, y, u, inv))
        except ValueError as exc:
            raise InstanceFormatError(str(exc), lineno) from None
    if len(customers) != n:
        last = rows[-1][0] if rows else 0
        raise InstanceFormatError(f"expected {n} customers, found {len(customers)}", last)
    try:
        return Instance(name, H, dx, dy, Q, tuple(customers))
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None


def read_instance(path) -> Instance:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_instance(text)
    except InstanceFormatError as exc:
        raise InstanceFormatError(exc.message, exc.lineno, str(path)) from None
