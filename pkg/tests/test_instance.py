import json
from fractions import Fraction

import jsonschema
import pytest
from hypothesis import given, settings, strategies as st

from conftest import EXAMPLE_ROWS
from maxplus_extremal.core import BOTTOM, MaxPlusMatrix, MaxPlusVector, is_solution
from maxplus_extremal.extremality import check
from maxplus_extremal.instance import (
    InstanceFormatError,
    parse_instance,
    parse_vector,
    random_instance,
    verdict_schema,
    verdict_to_json,
    write_instance,
    write_vector,
)
from maxplus_extremal.witness import find_witness, verify_decomposition

EXAMPLE_TEXT = """5
-5 0 -inf -inf -inf
0 -inf -inf -inf -inf
0 -inf -inf -inf -inf
-inf -inf -3 -inf 0
-inf -inf -inf 0 -inf
"""


def test_parse_example():
    A, x = parse_instance(EXAMPLE_TEXT)
    assert x is None
    assert A == MaxPlusMatrix(EXAMPLE_ROWS)
    assert sum(a is not BOTTOM for r in A.rows() for a in r) == 7


def test_parse_with_vector():
    A, x = parse_instance("1\n0\n\n0\n")
    assert A == MaxPlusMatrix.identity(1)
    assert x == MaxPlusVector([0])
    _, y = parse_instance("2\n0 1/2\n-INF 0\n-3/4 -Inf")
    assert y == MaxPlusVector([Fraction(-3, 4), BOTTOM])


@pytest.mark.parametrize(
    "text",
    ["", "x\n", "0\n", "2\n0 0\n", "1\n5/0\n", "1\n0.5\n", "2\n0 0\n0\n", "1\n0\n\n0 0\n", "1\n0\n\n0\n1\n"],
)
def test_parse_errors(text):
    with pytest.raises(InstanceFormatError):
        parse_instance(text)


def test_vector_file():
    assert parse_vector("0 -inf 3/6\n") == MaxPlusVector([0, BOTTOM, Fraction(1, 2)])
    with pytest.raises(InstanceFormatError):
        parse_vector("0 0\n", 3)
    assert write_vector(MaxPlusVector([Fraction(-1, 2), BOTTOM])) == "-1/2 -inf\n"


tokens = st.one_of(
    st.just("-inf"),
    st.just("-INF"),
    st.integers(-20, 20).map(str),
    st.tuples(st.integers(-20, 20), st.integers(1, 9)).map(lambda t: f"{t[0]}/{t[1]}"),
)


@st.composite
def instance_texts(draw):
    n = draw(st.integers(1, 4))
    rows = [" ".join(draw(tokens) for _ in range(n)) for _ in range(n)]
    text = f"{n}\n" + "\n".join(rows) + "\n"
    if draw(st.booleans()):
        text += "\n" + "  ".join(draw(tokens) for _ in range(n)) + "\n"
    return text


@given(instance_texts())
def test_round_trip(text):
    A, x = parse_instance(text)
    normal = write_instance(A, x)
    assert parse_instance(normal) == (A, x)
    assert write_instance(*parse_instance(normal)) == normal


def test_generator_determinism():
    assert write_instance(*random_instance(6, 0.5, (-5, 5), 7)) == write_instance(*random_instance(6, 0.5, (-5, 5), 7))
    assert write_instance(*random_instance(6, 0.5, (-5, 5), 7)) != write_instance(*random_instance(6, 0.5, (-5, 5), 8))


def test_generator_single_node():
    for seed in range(50):
        A, x = random_instance(1, 0.5, (-5, 5), seed)
        assert A[0, 0] is not BOTTOM and A[0, 0] >= 0


def test_generator_always_solves():
    for k in range(1000):
        A, x = random_instance(1 + k % 8, (0.1, 0.3, 0.6, 1.0)[k % 4], (-5, 5), k)
        assert is_solution(A, x)
        assert len(x.support()) == len(x)


def test_generator_rejects_bad_parameters():
    for args in ((0, 0.5), (3, 0.0), (3, 1.5)):
        with pytest.raises(ValueError):
            random_instance(*args)
    with pytest.raises(ValueError):
        random_instance(3, 0.5, (2, 1))


def test_verdict_json_validates(example_A, x_one, x_two):
    schema = verdict_schema()
    for x in (x_one, x_two):
        v = check(example_A, x)
        pair = None if v.is_extremal else find_witness(example_A, x, v)
        doc = json.loads(json.dumps(verdict_to_json(v, pair, x.support())))
        jsonschema.validate(doc, schema)
    assert doc["condition"] == "ISOLATED_SUBSET"
    assert doc["evidence"]["isolated_set"] == [1, 2, 3]
    assert doc["evidence"]["complement"] == [4, 5]
    back = type(pair)(MaxPlusVector(doc["witness"]["x1"]), MaxPlusVector(doc["witness"]["x2"]))
    assert verify_decomposition(example_A, x_two, back)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.sampled_from([0.3, 0.6, 1.0]), st.integers(0, 10_000))
def test_random_verdicts_validate(n, density, seed):
    A, x = random_instance(n, density, (-5, 5), seed)
    v = check(A, x)
    pair = None if v.is_extremal else find_witness(A, x, v)
    doc = verdict_to_json(v, pair, x.support())
    jsonschema.validate(doc, verdict_schema())
    if pair is not None:
        again = type(pair)(MaxPlusVector(doc["witness"]["x1"]), MaxPlusVector(doc["witness"]["x2"]))
        assert verify_decomposition(A, x, again)
