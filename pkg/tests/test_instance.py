import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biirp.instance import (
    Customer,
    GeneratorParams,
    Instance,
    InstanceFormatError,
    build_distance_matrix,
    format_instance,
    generate_instance,
    parse_instance,
    read_instance,
    write_instance,
)

from conftest import instances


def make(depot, *points):
    customers = tuple(Customer(k, x, y, 1.0, 0.0) for k, (x, y) in enumerate(points, start=1))
    return Instance("t", 5, depot[0], depot[1], 10.0, customers)


def test_distance_examples():
    d = build_distance_matrix(make((0, 0), (3, 4)))
    assert d[0, 1] == 5.0
    assert d[1, 1] == 0.0 and d[0, 0] == 0.0
    d = build_distance_matrix(make((0, 0), (1, 0), (0, 1)))
    assert d[1, 2] == math.sqrt(2)


@given(instances(max_n=8), st.data())
def test_distance_metric_properties(inst, data):
    d = build_distance_matrix(inst)
    m = inst.n + 1
    assert (d == d.T).all()
    assert (d.diagonal() == 0).all()
    a, b, c = (data.draw(st.integers(0, m - 1)) for _ in range(3))
    assert d[a, b] <= d[a, c] + d[c, b] + 1e-9


def test_generator_deterministic_and_seeded():
    a = generate_instance(5, 12, 30)
    assert format_instance(a) == format_instance(generate_instance(5, 12, 30))
    b = generate_instance(6, 12, 30)
    assert any((ca.x, ca.y) != (cb.x, cb.y) for ca, cb in zip(a.customers, b.customers))


def test_generator_single_customer():
    inst = generate_instance(1, 1, 10)
    assert inst.n == 1 and inst.customers[0].id == 1


def test_generator_respects_ranges():
    p = GeneratorParams(consumption_low=2, consumption_high=4, inventory_factor=0.5, capacity=20)
    inst = generate_instance(3, 50, 20, p)
    for c in inst.customers:
        assert 2 <= c.consumption <= 4 <= inst.capacity
        assert 0 <= c.initial_inventory <= 0.5 * c.consumption * 20
        assert 0 <= c.x <= p.side and 0 <= c.y <= p.side


def test_generator_rejects_unserviceable_ranges():
    with pytest.raises(ValueError, match="capacity"):
        generate_instance(1, 5, 10, GeneratorParams(consumption_high=50, capacity=20))
    with pytest.raises(ValueError):
        generate_instance(1, 0, 10)


@given(instances(max_n=10))
def test_round_trip_exact(inst):
    assert parse_instance(format_instance(inst)) == inst


def test_file_round_trip(tmp_path):
    inst = generate_instance(11, 9, 25)
    path = tmp_path / "x.irp"
    write_instance(inst, path)
    assert read_instance(path) == inst


def test_comments_and_blank_lines_ignored():
    text = "# header\nNAME a b\nN 1\n\nH 3\nCAPACITY 5.0\nDEPOT 0 0\n# c\n1 1.5 2 1 0\n"
    inst = parse_instance(text)
    assert inst.name == "a b" and inst.customers[0].x == 1.5


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("NAME a\nN 1\nH 3\nCAPACITY 5\nDEPOT 0 0\n1 1 2 1\n", 6),
        ("NAME a\nN 2\nH 3\nCAPACITY 5\nDEPOT 0 0\n1 1 2 1 0\n1 1 2 1 0\n", 7),
        ("NAME a\nN 1\nH x\nCAPACITY 5\nDEPOT 0 0\n1 1 2 1 0\n", 3),
        ("NAME a\nN 1\nCAPACITY 5\nDEPOT 0 0\n1 1 2 1 0\n", 3),
        ("NAME a\nN 1\nH 3\nCAPACITY 5\nDEPOT 0\n1 1 2 1 0\n", 5),
    ],
)
def test_parse_errors_name_line(text, lineno):
    with pytest.raises(InstanceFormatError) as info:
        parse_instance(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_read_error_names_path(tmp_path):
    path = tmp_path / "bad.irp"
    path.write_text("NAME a\nN 1\n")
    with pytest.raises(InstanceFormatError, match="bad.irp"):
        read_instance(path)


def test_instance_invariants():
    with pytest.raises(ValueError):
        Customer(1, 0, 0, 0.0, 0.0)
    with pytest.raises(ValueError):
        Customer(1, 0, 0, 1.0, -1.0)
    with pytest.raises(ValueError, match="ids"):
        Instance("x", 3, 0, 0, 5, (Customer(2, 0, 0, 1, 0),))
