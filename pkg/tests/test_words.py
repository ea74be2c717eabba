import pytest

from cactus.words import (
    Generator,
    Perm,
    SplitForm,
    Word,
    WordSyntaxError,
    free_reduce,
    gen,
    generator_perm,
    is_pure,
    longest_perm,
    named_presentation,
    parse_word,
    pi,
    presentation,
    sigma,
    split_form,
    split_inverse,
    split_mul,
    word_inverse,
)


def w4(text):
    return parse_word(text, 4)


def test_generator_rejects_bad_indices():
    with pytest.raises(ValueError):
        Generator(3, 2)
    with pytest.raises(ValueError):
        Generator(2, 2)
    assert str(Generator(1, 3)) == "s13"
    assert gen("s24") == Generator(2, 4)


def test_parse_word_separators_and_inverse_marks():
    assert w4("s12*s13 s23^-1") == Word((gen("s12"), gen("s13"), gen("s23")), 4)
    assert len(w4("")) == 0


@pytest.mark.parametrize("text,pos", [("s12 x13", 4), ("s32", 0), ("s15", 0), ("s12s13", 3)])
def test_parse_word_errors_carry_position(text, pos):
    with pytest.raises(WordSyntaxError) as err:
        parse_word(text, 4)
    assert err.value.position == pos


def test_word_degree_enforced():
    with pytest.raises(ValueError):
        Word((gen("s14"),), 3)


def test_free_reduce_and_inverse():
    assert free_reduce(w4("s12 s13 s13 s12 s23")) == w4("s23")
    assert word_inverse(w4("s12 s13 s24")) == w4("s24 s13 s12")


def test_generator_perm_is_interval_reversal():
    assert generator_perm(gen("s13"), 4).images == (3, 2, 1, 4)
    assert generator_perm(gen("s24"), 4).images == (1, 4, 3, 2)
    assert longest_perm(4).images == (4, 3, 2, 1)


def test_pi_rightmost_letter_acts_first():
    # s13 s23: 1 -> 1 -> 3, 2 -> 3 -> 1, 3 -> 2 -> 2
    assert pi(w4("s13 s23")).images == (3, 1, 2, 4)
    assert pi(w4("s13 s24")).images == (3, 4, 1, 2)


def test_pi_respects_defining_relation():
    # s12 s13 = s13 s23
    assert pi(w4("s12 s13")) == pi(w4("s13 s23"))


def test_perm_algebra():
    p = Perm((2, 3, 1, 4))
    assert (p * p.inverse()).is_identity()
    assert p(1) == 2
    with pytest.raises(ValueError):
        Perm((1, 1, 2))


def test_listed_elements_are_pure():
    assert is_pure(w4("s13 s24 s13 s24"))
    assert is_pure(w4("s23 s12 s23 s13"))
    assert not is_pure(w4("s13 s24"))


def test_presentation_relator_counts():
    pres = named_presentation("j4-23")
    assert len(pres.generators) == 5
    # squares, commutator s12 s34, and nesting relators in s13 and s24
    assert any(len(r) == 2 for r in pres.relators)
    lengths = sorted(len(r) for r in pres.long_relators())
    assert set(lengths) == {4}
    j3 = named_presentation("j3-2")
    assert len(j3.long_relators()) == 0
    assert len(presentation(4).generators) == 6


def test_nesting_relator_present():
    pres = named_presentation("j4-23")
    keys = {tuple(str(g) for g in r.letters) for r in pres.long_relators()}
    # s13 s12 s13 s23 up to rotation and reversal
    target = ("s13", "s12", "s13", "s23")
    rots = set()
    for seq in (target, target[::-1]):
        for k in range(4):
            rots.add(seq[k:] + seq[:k])
    assert keys & rots


def test_sigma_swaps_outer_generators():
    assert sigma(w4("s12 s13 s23 s24 s34")) == w4("s34 s24 s23 s13 s12")


def test_split_form_moves_s14_right():
    f = split_form(w4("s12 s14 s12"))
    assert f.flip
    assert f.w == w4("s12 s34")
    assert split_form(w4("s14 s14")) == SplitForm(Word((), 4), False)


def test_split_form_rejects_top_generator():
    with pytest.raises(ValueError):
        SplitForm(w4("s14"), False)


def test_split_mul_and_inverse():
    a = split_form(w4("s13 s14 s12"))
    b = split_form(w4("s24 s14"))
    assert split_mul(a, b) == split_form(w4("s13 s14 s12 s24 s14"))
    e = split_mul(a, split_inverse(a))
    assert not e.flip
    assert free_reduce(e.w) == Word((), 4)
