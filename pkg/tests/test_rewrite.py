import pytest

from cactus.rewrite import kb_complete, rewrite
from cactus.words import Word, named_presentation, parse_word


@pytest.mark.parametrize("name,count", [("j3-2", 2), ("j3", 7), ("j4-23", 17), ("j4", 23)])
def test_completion_is_confluent(name, count):
    system = kb_complete(named_presentation(name))
    assert system.confluent
    assert len(system) == count


def test_rewrite_normal_forms():
    system = kb_complete(named_presentation("j4-23"))
    w = parse_word
    assert rewrite(system, w("s12 s12", 4)) == Word((), 4)
    assert rewrite(system, w("s12 s13", 4)) == rewrite(system, w("s13 s23", 4))
    assert rewrite(system, w("s13 s24 s13 s24", 4)) != Word((), 4)


def test_rule_strings_use_e_for_empty():
    system = kb_complete(named_presentation("j3-2"))
    assert str(system).splitlines() == ["s12 s12 -> e", "s23 s23 -> e"]


def test_cap_reported():
    system = kb_complete(named_presentation("j4"), max_rules=6)
    assert system.status == "capped"
    assert not system.confluent


def test_unknown_letter_rejected():
    system = kb_complete(named_presentation("j3-2"))
    with pytest.raises(ValueError):
        rewrite(system, parse_word("s13", 3))
