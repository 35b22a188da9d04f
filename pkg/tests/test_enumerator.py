from collections import Counter

import pytest

from cyclocwe.cyclotomic import GaussTypeValue
from cyclocwe.enumerator import (
    CweTable,
    brute_force_cwe,
    c1_case,
    c2_case,
    closed_form_cwe,
    code_dimension,
    collapse_to_weights,
    has_printed_repair,
    minimal_polynomial_dimension,
    normalize_code,
    printed_final_composition,
    repaired_final_composition,
    run_oracle,
    strategy_composition,
)
from cyclocwe.errors import BudgetExceeded, ParameterError
from cyclocwe.sweep import sweep


def codewords(ctx, l, code):
    """Every codeword listed explicitly, one evaluation at a time."""
    e = ctx.p**l + 1
    xs = list(ctx.nonzero_elements())
    bs = list(ctx.elements()) if code == "C2" else [None]
    words = set()
    for a in ctx.elements():
        for b in bs:
            word = []
            for x in xs:
                v = ctx.mul(a, ctx.pow(x, e))
                if b is not None:
                    v = ctx.add(v, ctx.mul(b, ctx.pow(x, 2)))
                word.append(ctx.trace(v))
            words.add(tuple(word))
    return words


@pytest.mark.parametrize("p,m,l,code", [(3, 2, 1, "C1"), (3, 2, 1, "C2"), (3, 3, 1, "C2"), (5, 2, 1, "C2")])
def test_oracle_matches_explicit_codeword_listing(field, p, m, l, code):
    ctx = field(p, m)
    words = codewords(ctx, l, code)
    assert len(words) == p ** code_dimension(m, l, code)
    expected = Counter(tuple(w.count(j) for j in range(p)) for w in words)
    assert brute_force_cwe(ctx, l, code).entries == dict(expected)


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (7, 2)])
def test_dimension_formula_matches_minimal_polynomials(field, p, m):
    ctx = field(p, m)
    for l in range(1, m):
        for code in ("C1", "C2"):
            assert minimal_polynomial_dimension(ctx, l, code) == code_dimension(m, l, code)


def test_case_labels():
    assert c1_case(2, 1) == "m=2l"
    assert c1_case(3, 1) == "v2(m)=0<=v2(l)"
    assert c1_case(6, 2) == "1<=v2(m)<=v2(l)"
    assert c1_case(6, 1) == "v2(m)=v2(l)+1"
    assert c1_case(4, 1) == "v2(m)>v2(l)+1"
    assert c2_case(3, 1) == "s odd, d odd"
    assert c2_case(6, 2) == "s odd, d even"
    assert c2_case(4, 3) == "s even, d odd"
    assert c2_case(4, 2) == "m=2l, d even"


def test_strategy_composition_rows():
    # even rank: value +p^k
    comp = strategy_composition(3, 4, GaussTypeValue(1, 0, 4), 4)
    assert comp == (32, 24, 24)
    # odd rank: value -i*3^(3/2) at m=2 splits the nonzero symbols unevenly
    comp = strategy_composition(3, 2, GaussTypeValue(-1, 1, 3), 1)
    assert sum(comp) == 8 and comp[1] != comp[2]


def test_normalize_code():
    assert normalize_code("c2") == "C2"
    with pytest.raises(ParameterError):
        normalize_code("C3")


@pytest.mark.parametrize("p,m", [(3, 4), (3, 8), (5, 4), (7, 4)])
def test_sign_repair_restores_row_sum(p, m):
    for d in (1, 3):
        if m % d or (m // d) % 2 or d % 2 == 0:
            continue
        printed = printed_final_composition(p, m, d)
        fixed = repaired_final_composition(p, m, d)
        assert sum(fixed) == p**m - 1
        assert sum(printed) != p**m - 1


def test_repair_flag():
    assert has_printed_repair(4, 3, "C2")
    assert has_printed_repair(4, 1, "C2")
    assert not has_printed_repair(4, 3, "C1")
    assert not has_printed_repair(6, 2, "C2")


@pytest.mark.parametrize("p,m,l", [(3, 4, 1), (3, 5, 2), (5, 3, 2)])
def test_workers_bit_identical(field, p, m, l):
    ctx = field(p, m)
    one = sweep(ctx, l, "C2", workers=1)
    many = sweep(ctx, l, "C2", workers=3)
    assert one.compositions == many.compositions
    assert one.weights.tolist() == many.weights.tolist()


def test_budget(field):
    with pytest.raises(BudgetExceeded):
        run_oracle(field(3, 4), 1, "C2", budget=100)


def test_table_helpers():
    t = closed_form_cwe(3, 2, 1, "C1")
    assert t.to_text() == "1*w0^8 + 2*w1^4*w2^4"
    assert t.to_json()["entries"][0] == {"composition": [8, 0, 0], "freq": 1}
    w = collapse_to_weights(t)
    assert w.min_distance == 8 and w.total() == 3
    other = CweTable("C1", 3, 2, 1, 1, {(8, 0, 0): 1, (0, 4, 4): 1})
    assert t.diff(other) == [{"composition": [0, 4, 4], "left": 2, "right": 1}]
    with pytest.raises(ValueError):
        other.validate()


def test_c1_frequencies_are_balanced_on_symbols():
    for p, m, l in [(3, 5, 1), (5, 3, 1), (7, 3, 2)]:
        if m != 2 * l:
            t = closed_form_cwe(p, m, l, "C1")
            totals = {sum(f * c[j] for c, f in t.entries.items()) for j in range(1, p)}
            assert len(totals) == 1
