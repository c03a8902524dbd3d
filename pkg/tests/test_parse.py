import pytest

from cousinet.acceptance import probe_corpus, rank1_corpus, rank2_corpus
from cousinet.adams import catalogue, catalogue_names
from cousinet.parse import (
    ParseError,
    parse_atom,
    parse_forms,
    parse_object,
    parse_subgroup,
    print_atom,
    print_object,
    same_object,
)

RANK1 = rank1_corpus(size=30) + [catalogue(n).obj for n in catalogue_names()]
RANK2 = rank2_corpus(size=12) + probe_corpus()


@pytest.mark.parametrize("i", range(len(RANK1)))
def test_rank1_round_trip(i):
    X = RANK1[i]
    text = print_object(X)
    Y = parse_object(text, rank=1)
    assert same_object(X, Y)
    assert print_object(Y) == text


@pytest.mark.parametrize("i", range(len(RANK2)))
def test_rank2_round_trip(i):
    X = RANK2[i]
    text = print_object(X)
    assert same_object(X, parse_object(text, rank=2))


@pytest.mark.parametrize(
    "text",
    ["cyc(3)", "cyc(-2,4)", "dual", "sum(cyc(0,2),susp(3,dual))", "susp(2,sum(k,dual))", "cyc(0,1)@a"],
)
def test_atom_round_trip(text):
    T = parse_atom(text)
    assert print_atom(parse_atom(print_atom(T))) == print_atom(T)


def test_short_forms_agree():
    assert same_object(parse_object("f(G,(Q^2))"), parse_object("f(G,(0:2))"))
    assert same_object(parse_object("f(1,(k))"), parse_object("f(1,(cyc(0,1)))"))
    assert same_object(parse_object("a(1,(susp(2,dual)))"), parse_object("obj1([0],(susp(2,dual)),[[1]])"))


def test_forms_and_subgroups():
    a, b = parse_forms("x+2y, y", ("x", "y"))
    assert a != b
    assert parse_subgroup("G").codim == 0
    assert parse_subgroup("1").codim == 2
    assert parse_subgroup("circle(1,2)").codim == 1


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("f(1,(cyc(0,1))", 1, 15),
        ("f(1,\n  (cyc(0,1)))x", 2, 14),
        ("obj1([0],(dual(0)),[[1,2]])", 1, None),
        ("g(1,(k))", 1, 1),
    ],
)
def test_errors_point_at_input(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_object(text)
    assert err.value.line == line
    if column is not None:
        assert err.value.column == column
    assert f"line {line}, column" in str(err.value)
