import itertools
import random
from fractions import Fraction

import pytest

from qcstar.coefficients import QLaurent
from qcstar.ncalgebra import (
    AlgebraPresentation,
    ExpressionError,
    PresentationError,
    RewriteBudgetError,
    check_local_confluence,
    even_generator_count,
    even_word_length,
    presentation,
    random_element,
)

ALGEBRAS = ("sphere", "disc", "rp2", "suq2_mod_b")


def test_presentation_lookup():
    for name in ALGEBRAS:
        p = presentation(name)
        assert p.name == name
    with pytest.raises(PresentationError):
        presentation("torus")
    with pytest.raises(PresentationError):
        presentation("disc", s=Fraction(1, 2))
    with pytest.raises(PresentationError):
        presentation("sphere", s=Fraction(3, 2))


def test_presentations_are_cached():
    assert presentation("rp2") is presentation("rp2")
    assert presentation("sphere") is presentation("sphere", s=1)
    assert presentation("sphere", s=Fraction(1, 2)) is not presentation("sphere")


def test_element_arithmetic():
    p = presentation("sphere")
    k, l = p.gen("K"), p.gen("L")
    x = 2 * k + l * k - k.scale(QLaurent.q_power(2))
    assert x.coefficient("K") == QLaurent({0: 2, 2: -1})
    assert x.coefficient("L", "K") == QLaurent.one()
    assert (x - x).is_zero()
    assert (-x + x).is_zero()
    assert x.degree() == 2
    assert p.one().degree() == 0
    assert p.zero().degree() == 0
    assert p.zero().is_zero()


def test_element_equality_and_hash():
    p = presentation("disc")
    a = p.parse("x x* + 1")
    b = p.one() + p.gen("x") * p.gen("x*")
    assert a == b and hash(a) == hash(b)
    assert a != p.parse("x x*")


def test_star_is_an_antihomomorphism():
    p = presentation("rp2")
    x = p.parse("P R + q^2 T")
    y = p.parse("T* - (1/3) R*")
    lhs = (x * y).star()
    rhs = y.star() * x.star()
    assert lhs == rhs
    assert x.star().star() == x


def test_mixed_presentation_operations_rejected():
    a = presentation("disc").gen("x")
    b = presentation("sphere").gen("K")
    with pytest.raises(PresentationError):
        a + b
    with pytest.raises(PresentationError):
        a * b


# -- parser ------------------------------------------------------------------

def test_parse_round_trip_str():
    p = presentation("rp2")
    for text in ("P", "P R T", "q^-4 P - q^4 P^2", "(1/2) + R* T*",
                 "1 - 3 P + (7/5)q^2 R"):
        x = p.parse(text)
        assert p.parse(str(x)) == x


def test_parse_prime_suffix_equals_star():
    p = presentation("sphere")
    assert p.parse("L' L") == p.parse("L* L")
    d = presentation("disc")
    assert d.parse("x' x") == d.parse("x* x")


def test_parse_powers_and_rationals():
    p = presentation("sphere")
    assert p.parse("K^3") == p.word("K", "K", "K")
    assert p.parse("2/3 K") == p.gen("K").scale(Fraction(2, 3))
    assert p.parse("(3/2)q^-4 K L*") == \
        p.word("K", "L*").scale(QLaurent.q_power(-4, Fraction(3, 2)))
    assert p.parse("q^2") == p.one().scale(QLaurent.q_power(2))
    assert p.parse("-K") == -p.gen("K")
    assert p.parse("7") == p.one().scale(7)


def test_parse_parens_distribute():
    p = presentation("sphere")
    assert p.parse("(K + L)^2") == p.parse("K^2 + K L + L K + L^2")
    assert p.parse("2(K - L)(K + L)") == \
        p.parse("2 K^2 + 2 K L - 2 L K - 2 L^2")


@pytest.mark.parametrize("bad", [
    "", "Z", "K^-1", "K^", "q^", "(K", "K)", "K +", "1/0", "q^-",
    "K ^ 1.5", "**",
])
def test_parse_errors(bad):
    p = presentation("sphere")
    with pytest.raises(ExpressionError):
        p.parse(bad)


def test_parse_negative_power_only_on_q():
    p = presentation("sphere")
    assert p.parse("q^-6 K") == p.gen("K").scale(QLaurent.q_power(-6))
    with pytest.raises(ExpressionError):
        p.parse("L^-2")


# -- normal forms, hand-checked ------------------------------------------------

def test_sphere_normal_forms():
    p = presentation("sphere")  # s = 1
    assert p.normal_form(p.parse("L K")) == p.parse("q^2 K L")
    assert p.normal_form(p.parse("L* K")) == p.parse("q^-2 K L*")
    assert p.normal_form(p.parse("L* L")) == p.parse("1 - K^2")
    assert p.normal_form(p.parse("L L*")) == p.parse("1 - q^4 K^2")


def test_sphere_normal_forms_general_s():
    p = presentation("sphere", s=Fraction(1, 2))
    assert p.normal_form(p.parse("L* L")) == \
        p.parse("1/4 + (3/4) K - K^2")
    assert p.normal_form(p.parse("L L*")) == \
        p.parse("1/4 + (3/4)q^2 K - q^4 K^2")


def test_disc_normal_form():
    p = presentation("disc")
    assert p.normal_form(p.parse("x* x")) == p.parse("q x x* + 1 - q")
    nf = p.normal_form(p.parse("x* x* x x"))
    for word, _ in nf.named_terms():
        assert p.in_declared_basis(word)


def test_rp2_normal_forms():
    p = presentation("rp2")
    assert p.normal_form(p.parse("T T*")) == p.parse("P - q^4 P^2")
    assert p.normal_form(p.parse("T* T")) == p.parse("q^-4 P - q^-4 P^2")
    assert p.normal_form(p.parse("R R*")) == \
        p.parse("1 - (q^4 + q^8) P + q^12 P^2")
    assert p.normal_form(p.parse("R* R")) == \
        p.parse("1 - (1 + q^-4) P + q^-4 P^2")
    assert p.normal_form(p.parse("T T")) == p.parse("q^2 P R")
    assert p.normal_form(p.parse("T R")) == p.parse("q^-4 R T")


def test_suq2_normal_forms():
    p = presentation("suq2_mod_b")
    assert p.normal_form(p.parse("b a")) == p.parse("q^-2 a b")
    assert p.normal_form(p.parse("b b")) == p.parse("1 - a a*")
    assert p.normal_form(p.parse("a* a")) == \
        p.parse("q^-4 a a* + 1 - q^-4")


def test_normal_form_is_linear():
    p = presentation("rp2")
    rng = random.Random(5)
    for _ in range(20):
        x = random_element(p, rng)
        y = random_element(p, rng)
        assert p.normal_form(x + y) == \
            p.normal_form(x) + p.normal_form(y)
    assert p.normal_form(p.zero()).is_zero()


def test_normal_form_method_matches_function():
    p = presentation("sphere")
    x = p.parse("L L* K + K L")
    assert x.normal_form() == p.normal_form(x)


# -- exhaustive small-degree checks ---------------------------------------------

def all_words(p, max_len):
    n = len(p.generators)
    for length in range(1, max_len + 1):
        for combo in itertools.product(range(n), repeat=length):
            yield tuple(p.generators[i] for i in combo)


@pytest.mark.parametrize("name,max_len", [
    ("sphere", 5), ("disc", 6), ("rp2", 4), ("suq2_mod_b", 5),
])
def test_exhaustive_normal_form_properties(name, max_len):
    p = presentation(name)
    for names in all_words(p, max_len):
        x = p.word(*names)
        nf = p.normal_form(x)
        # every monomial of a normal form lies in the declared basis
        for word, _ in nf.named_terms():
            assert p.in_declared_basis(word), (names, word)
        # reduction is idempotent
        assert p.normal_form(nf) == nf
        # star consistency: reducing commutes with the involution
        assert p.normal_form(nf.star()) == p.normal_form(x.star())


@pytest.mark.parametrize("name,max_len", [
    ("sphere", 5), ("disc", 6), ("rp2", 4), ("suq2_mod_b", 5),
])
def test_irreducible_words_are_exactly_the_declared_basis(name, max_len):
    p = presentation(name)
    for names in all_words(p, max_len):
        word = tuple(p.gen_index(g) for g in names)
        assert p.is_normal_word(word) == p.in_declared_basis(word), names


@pytest.mark.parametrize("name", ALGEBRAS)
def test_local_confluence_no_unresolved_overlaps(name):
    assert check_local_confluence(presentation(name)) == []


@pytest.mark.parametrize("s", [0, Fraction(1, 2), Fraction(3, 7)])
def test_local_confluence_sphere_any_s(s):
    assert check_local_confluence(presentation("sphere", s=s)) == []


@pytest.mark.parametrize("name", ALGEBRAS)
def test_star_closure(name):
    assert presentation(name).check_star_closure()


# -- construction-time validation and budget ------------------------------------

def test_rules_must_decrease_order():
    with pytest.raises(PresentationError):
        AlgebraPresentation(
            "bad", ("u",), {"u": "u"},
            [(("u",), {("u", "u"): QLaurent.one()})])


def test_duplicate_generator_rejected():
    with pytest.raises(PresentationError):
        AlgebraPresentation("bad", ("u", "u"), {"u": "u"}, [])


def test_rewrite_budget():
    rules = [(("x*", "x"),
              {("x", "x*"): QLaurent.q_power(1),
               (): QLaurent({0: 1, 1: -1})})]
    tiny = AlgebraPresentation("tiny", ("x", "x*"), {"x": "x*", "x*": "x"},
                               rules, step_budget=4)
    deep = tiny.word(*(["x*"] * 3 + ["x"] * 3))
    with pytest.raises(RewriteBudgetError):
        tiny.normal_form(deep)
    roomy = AlgebraPresentation("roomy", ("x", "x*"), {"x": "x*", "x*": "x"},
                                rules)
    assert not roomy.normal_form(roomy.word(*(["x*"] * 3 + ["x"] * 3))).is_zero()


# -- parity helpers --------------------------------------------------------------

def test_even_generator_count():
    p = presentation("sphere")
    assert even_generator_count(p.parse("K^2 + L L*"), "K")
    assert not even_generator_count(p.parse("K"), "K")
    assert even_generator_count(p.parse("L"), "K")
    assert even_generator_count(p.zero(), "K")


def test_even_word_length():
    p = presentation("sphere")
    assert even_word_length(p.parse("K^2 + K L"))
    assert not even_word_length(p.parse("K^2 + L"))
    assert even_word_length(p.one())


def test_random_element_is_seed_deterministic():
    p = presentation("suq2_mod_b")
    a = random_element(p, random.Random(11))
    b = random_element(p, random.Random(11))
    assert a == b
    assert a.degree() <= 6
