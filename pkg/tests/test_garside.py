import pytest
from hypothesis import given

from artin.freeword import alternating, concat, parse
from artin.garside import Atom, DeltaOverflowError, FormBuilder, GarsideForm, garside_trace, normal_form
from artin.oracles import all_words, free_reduce, nf_key, rewriting_classes
from coxeter import image
from strategies import coefficients, words

EXAMPLE = "a b a^2 b^-1 a^-1 b a b a^2 b^4 a b"


def test_worked_example():
    form = normal_form(3, parse(EXAMPLE))
    assert [str(a) for a in form.atoms] == ["b", "b", "b", "ba", "a", "a"]
    assert form.delta_exp == 2
    assert str(form.word()) == "b^4 a^3 b a b a b a"


def test_worked_example_stages():
    trace = garside_trace(3, parse(EXAMPLE))
    assert trace.render(1) == "b a^-1 b^-1 a^2 b^3 Δ_a Δ_b Δ_a"
    assert trace.render(2) == "b^4 a^3 Δ_b Δ_a"


@pytest.mark.parametrize(
    "text, atoms, n",
    [("", [], 0), ("a b a", [], 1), ("a^-1", ["ba"], -1), ("b a b", [], 1), ("a b a b a b", [], 2)],
)
def test_small_forms(text, atoms, n):
    form = normal_form(3, parse(text))
    assert [str(a) for a in form.atoms] == atoms
    assert form.delta_exp == n


def test_inverse_letter_form_is_free_identity():
    # ba·Δ^-1 = b a (a b a)^-1 reduces freely to a^-1
    assert free_reduce("ba" + "ABA") == "A"


def test_even_coefficient():
    form = normal_form(4, parse("a b a b"))
    assert form.atoms == () and form.delta_exp == 1
    assert normal_form(4, parse("a^-1")).atoms == (Atom("b", 3),)


def test_atom_validation():
    with pytest.raises(ValueError):
        GarsideForm(3, (Atom("a", 3),), 0)
    with pytest.raises(ValueError):
        GarsideForm(3, (Atom("a", 2), Atom("a", 1)), 0)


def test_delta_overflow_is_checked():
    b = FormBuilder(3)
    b.n = 2**63 - 1
    with pytest.raises(DeltaOverflowError):
        b.mul_word(parse("a b a"))


def test_census_against_rewriting_oracle():
    for m in (3, 4):
        classes = rewriting_classes(m, 4, slack=m)
        oracle, forms = {}, {}
        for k in range(5):
            for w in all_words(k):
                oracle.setdefault(classes[free_reduce(w)], set()).add(w)
                forms.setdefault(nf_key(m, w), set()).add(w)
        assert sorted(map(sorted, oracle.values())) == sorted(map(sorted, forms.values()))


@given(words, coefficients)
def test_trace_agrees_with_builder(u, m):
    assert garside_trace(m, u).form() == normal_form(m, u)


@given(words, coefficients)
def test_printed_word_is_a_fixed_point(u, m):
    form = normal_form(m, u)
    assert normal_form(m, form.word()) == form


@given(words, words, coefficients)
def test_homomorphism(u, v, m):
    left = normal_form(m, concat(u, v))
    right = normal_form(m, concat(normal_form(m, u).word(), normal_form(m, v).word()))
    assert left == right


@given(words, coefficients)
def test_coxeter_image_is_invariant(u, m):
    assert image(m, u) == image(m, normal_form(m, u).word())


@given(words, coefficients)
def test_consecutive_atoms_share_letters(u, m):
    atoms = normal_form(m, u).atoms
    for x, y in zip(atoms, atoms[1:]):
        assert x.last == y.start
    assert all(1 <= a.length < m for a in atoms)


@given(words, coefficients)
def test_relation_insertion(u, m):
    left = concat(u, alternating("a", m))
    right = concat(u, alternating("b", m))
    assert normal_form(m, left) == normal_form(m, right)
