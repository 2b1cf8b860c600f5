import pytest
from hypothesis import given, settings, strategies as st

from narayana.sequences import (
    SequenceSpec,
    TermVector,
    fibonacci_spec,
    lucas_spec,
    narayana_spec,
    rabinowitz_spec,
    term_at,
    term_iter,
    terms,
    window_satisfies_recurrence,
)

N_TEST = 300


def hand_iterate(initial, coeffs, n_max):
    # independent reference: straight textbook iteration
    a = list(initial)
    while len(a) <= n_max:
        a.append(sum(c * a[-i] for i, c in enumerate(coeffs, start=1)))
    return a[: n_max + 1]


def all_specs():
    return [narayana_spec(k) for k in range(2, 9)] + [fibonacci_spec(), lucas_spec(), rabinowitz_spec()]


def test_narayana_spec_k3():
    s = narayana_spec(3)
    assert s.initial_terms == (0, 1, 1)
    assert s.recurrence_coeffs == (1, 0, 1)
    assert s.order == 3


def test_narayana_spec_k2_is_fibonacci():
    s = narayana_spec(2)
    f = fibonacci_spec()
    assert (s.order, s.recurrence_coeffs, s.initial_terms) == (f.order, f.recurrence_coeffs, f.initial_terms)


def test_narayana_spec_k6():
    s = narayana_spec(6)
    assert s.initial_terms == (0, 1, 1, 1, 1, 1)
    assert s.recurrence_coeffs == (1, 0, 0, 0, 0, 1)


@pytest.mark.parametrize("k", [1, 0, -3])
def test_narayana_spec_rejects_small_k(k):
    with pytest.raises(ValueError):
        narayana_spec(k)


def test_spec_validates_lengths():
    with pytest.raises(ValueError):
        SequenceSpec(2, (1,), (0, 1))
    with pytest.raises(ValueError):
        SequenceSpec(2, (1, 1), (0,))


def test_named_sequences():
    assert terms(lucas_spec(), 6).values == (2, 1, 3, 4, 7, 11, 18)
    assert terms(rabinowitz_spec(), 7).values == (0, 0, 1, 1, 1, 2, 3, 4)
    assert terms(fibonacci_spec(), 5).values == (0, 1, 1, 2, 3, 5)


def test_narayana_terms():
    assert terms(narayana_spec(3), 10).values == (0, 1, 1, 1, 2, 3, 4, 6, 9, 13, 19)
    assert terms(narayana_spec(4), 10).values == (0, 1, 1, 1, 1, 2, 3, 4, 5, 7, 10)


def test_terms_n_max_zero():
    for s in all_specs():
        assert terms(s, 0).values == (s.initial_terms[0],)


def test_terms_matches_hand_iteration():
    for s in all_specs():
        assert list(terms(s, 200).values) == hand_iterate(s.initial_terms, s.recurrence_coeffs, 200)


def test_term_at_examples():
    assert term_at(narayana_spec(3), 10) == 19
    assert term_at(fibonacci_spec(), 20) == 6765
    for s in all_specs():
        assert term_at(s, 0) == s.initial_terms[0]


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        term_at(fibonacci_spec(), -1)
    with pytest.raises(ValueError):
        term_iter(fibonacci_spec(), -1)
    with pytest.raises(ValueError):
        terms(fibonacci_spec(), -1)


def test_bad_modulus_rejected():
    with pytest.raises(ValueError):
        term_at(fibonacci_spec(), 5, 1)


@pytest.mark.parametrize("spec", all_specs(), ids=lambda s: s.name)
def test_term_at_matches_terms(spec):
    tv = terms(spec, N_TEST).values
    assert [term_at(spec, n) for n in range(N_TEST + 1)] == list(tv)
    assert [term_iter(spec, n) for n in range(0, N_TEST + 1, 17)] == list(tv[::17])


@pytest.mark.parametrize("p", [2, 3, 5, 101, 1_000_000_007])
def test_modular_term_at_is_reduction(p):
    for spec in all_specs():
        tv = terms(spec, 150).values
        for n in range(151):
            assert term_at(spec, n, p) == tv[n] % p
        assert terms(spec, 150, p).values == tuple(v % p for v in tv)


def test_composite_modulus():
    tv = terms(narayana_spec(5), 400).values
    assert all(term_at(narayana_spec(5), n, 10**6) == tv[n] % 10**6 for n in range(0, 401, 7))


def test_shift_identity_rabinowitz():
    x = terms(rabinowitz_spec(), 500).values
    r = terms(narayana_spec(3), 500).values
    assert all(x[n] == r[n - 1] for n in range(1, 501))


@pytest.mark.parametrize("k", range(2, 13))
def test_kth_term_is_one(k):
    assert terms(narayana_spec(k), k).values[k] == 1


@pytest.mark.parametrize("k", range(2, 13))
def test_monotone(k):
    v = terms(narayana_spec(k), 400).values
    assert all(a <= b for a, b in zip(v, v[1:]))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=1, max_value=5).flatmap(
        lambda k: st.tuples(
            st.lists(st.integers(-3, 3), min_size=k, max_size=k),
            st.lists(st.integers(-5, 5), min_size=k, max_size=k),
        )
    ),
    st.integers(min_value=0, max_value=120),
)
def test_term_at_arbitrary_recurrences(coeffs_init, n):
    coeffs, init = coeffs_init
    spec = SequenceSpec(len(coeffs), coeffs, init)
    expected = hand_iterate(init, coeffs, n)[n]
    assert term_at(spec, n) == expected
    assert term_iter(spec, n) == expected
    assert term_at(spec, n, 97) == expected % 97


def test_term_vector_at():
    tv = TermVector(5, (10, 11, 12))
    assert tv.at(6) == 11
    with pytest.raises(IndexError):
        tv.at(4)
    with pytest.raises(IndexError):
        tv.at(8)


def test_window_satisfies_recurrence():
    s = narayana_spec(4)
    v = terms(s, 20).values
    assert window_satisfies_recurrence(s, v[10:15])
    assert not window_satisfies_recurrence(s, v[10:14] + (v[14] + 1,))


def test_characteristic_polynomial():
    assert narayana_spec(3).characteristic_polynomial().coeffs == (-1, 0, -1, 1)
