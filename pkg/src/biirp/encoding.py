"""Compact genotypes and their decoding into delivery schedules.

Two representations are supported. ``FREQUENCY`` keeps one visit period per
customer; the first visit is forced onto the stockout date. ``DATED`` adds a
start date per customer, and when the start lies after the stockout date a
single pre-start delivery bridges the gap. Delivery quantities are never
searched: an order-up-to rule fills each customer exactly until its next visit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .instance import Instance


class Representation(str, enum.Enum):
    FREQUENCY = "freq"
    DATED = "dated"

    def __str__(self) -> str:
        return self.value


class GenotypeError(ValueError):
    def __init__(self, message: str, customer: int | None = None):
        self.customer = customer
        super().__init__(message)


class UnserviceableCustomer(ValueError):
    pass


@dataclass(frozen=True)
class Genotype:
    kind: Representation
    periods: tuple[int, ...]
    starts: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Representation(self.kind))
        object.__setattr__(self, "periods", tuple(int(p) for p in self.periods))
        if self.starts is not None:
            object.__setattr__(self, "starts", tuple(int(s) for s in self.starts))
        if self.kind is Representation.DATED:
            if self.starts is None or len(self.starts) != len(self.periods):
                raise GenotypeError("dated genotype needs one start per period")
        elif self.starts is not None:
            raise GenotypeError("frequency-only genotype carries no starts")

    @property
    def n(self) -> int:
        return len(self.periods)

    def to_text(self) -> str:
        """``p1;...;pn`` or ``p1;...;pn|s1;...;sn``."""
        text = ";".join(map(str, self.periods))
        if self.starts is not None:
            text += "|" + ";".join(map(str, self.starts))
        return text

    @classmethod
    def from_text(cls, text: str) -> "Genotype":
        per, sep, st = text.strip().partition("|")
        periods = tuple(int(v) for v in per.split(";"))
        if sep:
            return cls(Representation.DATED, periods, tuple(int(v) for v in st.split(";")))
        return cls(Representation.FREQUENCY, periods)


@dataclass(frozen=True)
class DeliverySchedule:
    """Delivery quantities per customer.

    ``deliveries[i - 1]`` lists ``(date, quantity)`` pairs of customer ``i`` in
    date order; only strictly positive quantities are kept.
    """

    horizon: int
    deliveries: tuple[tuple[tuple[int, float], ...], ...]

    @property
    def n(self) -> int:
        return len(self.deliveries)

    def visit_dates(self, i: int) -> tuple[int, ...]:
        return tuple(t for t, _ in self.deliveries[i - 1])

    def quantity(self, i: int, t: int) -> float:
        for date, q in self.deliveries[i - 1]:
            if date == t:
                return q
        return 0.0

    def by_date(self) -> list[list[tuple[int, float]]]:
        """``out[t - 1]`` holds ``(customer, quantity)`` pairs for date ``t``, by customer index."""
        out: list[list[tuple[int, float]]] = [[] for _ in range(self.horizon)]
        for i, dels in enumerate(self.deliveries, start=1):
            for t, q in dels:
                out[t - 1].append((i, q))
        return out


def max_feasible_period(inst: Instance, i: int) -> int:
    c = inst.customer(i)
    if c.consumption > inst.capacity:
        raise UnserviceableCustomer(
            f"customer {i}: consumption {c.consumption} exceeds capacity {inst.capacity}"
        )
    return min(inst.horizon, math.floor(inst.capacity / c.consumption))


def prestart_quantity(inst: Instance, i: int, start: int) -> float:
    """Bridging delivery needed when the periodic sequence starts after the stockout date."""
    c = inst.customer(i)
    return (start - 1) * c.consumption - c.initial_inventory


def max_feasible_start(inst: Instance, i: int) -> int:
    """Largest start date in ``1..H`` whose pre-start delivery still fits one vehicle."""
    t_star = inst.customer(i).stockout_date
    s = inst.horizon
    while s > t_star and prestart_quantity(inst, i, s) > inst.capacity:
        s -= 1
    return s


def frequency_start(inst: Instance, i: int) -> int:
    """Start date implied by the frequency-only representation: ``min(t*, H + 1)``."""
    return min(inst.customer(i).stockout_date, inst.horizon + 1)


def validate_genotype(genotype: Genotype, inst: Instance) -> None:
    if genotype.n != inst.n:
        raise GenotypeError(f"genotype has {genotype.n} customers, instance has {inst.n}")
    H = inst.horizon
    for i, p in enumerate(genotype.periods, start=1):
        pmax = max_feasible_period(inst, i)
        if not 1 <= p <= pmax:
            raise GenotypeError(f"customer {i}: period {p} outside [1, {pmax}]", customer=i)
    if genotype.starts is None:
        return
    for i, s in enumerate(genotype.starts, start=1):
        # H + 1 encodes "no periodic visit", which is what the frequency-only
        # representation yields for customers never running out
        if not 1 <= s <= H + 1:
            raise GenotypeError(f"customer {i}: start {s} outside [1, {H}]", customer=i)
        t_star = inst.customer(i).stockout_date
        if t_star < s and prestart_quantity(inst, i, s) > inst.capacity:
            raise GenotypeError(
                f"customer {i}: start {s} needs a pre-start delivery above capacity", customer=i
            )


def decode_customer(u: float, inv0: float, period: int, start: int, H: int) -> tuple[tuple[int, float], ...]:
    """Deliveries of one customer for a periodic sequence beginning at ``start``."""
    t_star = math.floor(inv0 / u) + 1
    out = []
    on_hand = inv0 - (start - 1) * u
    if t_star < start:
        out.append((t_star, (start - 1) * u - inv0))
        on_hand = 0.0
    t = start
    while t <= H:
        nxt = min(t + period, H + 1)
        q = (nxt - t) * u - on_hand
        if q > 0:
            out.append((t, q))
            # order-up-to: the customer runs dry exactly before the next visit
            on_hand = 0.0
        else:
            on_hand = on_hand - (nxt - t) * u
        t = nxt
    return tuple(out)


def decode(genotype: Genotype, inst: Instance) -> DeliverySchedule:
    validate_genotype(genotype, inst)
    H = inst.horizon
    if genotype.kind is Representation.FREQUENCY:
        starts = [frequency_start(inst, i) for i in range(1, inst.n + 1)]
    else:
        starts = genotype.starts
    deliveries = tuple(
        decode_customer(c.consumption, c.initial_inventory, p, s, H)
        for c, p, s in zip(inst.customers, genotype.periods, starts)
    )
    return DeliverySchedule(H, deliveries)
