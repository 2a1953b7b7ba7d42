"""Unit tests for noun-phrase ordering and inflection."""

import pytest

from serbest.caseframe import validate_np
from serbest.errors import RealizationError
from serbest.featstruct import parse_fs
from serbest.models import Case, NounPhrase


def realize(generator, text: str, case: str = "nom", role=None) -> str:
    return generator.realize_np(parse_fs(text), case, role)


def kinds(generator, text: str):
    np = validate_np(parse_fs(text), generator.lexicon)
    return [slot.kind for slot in generator.np_engine.plan_np(np)]


POSSESSED = "((ref ((arg kitap))) (poss ((argument ((ref ((arg ben))))))))"


# ── possessors ─────────────────────────────────────────────────────────────

def test_possessor_before_head(generator):
    assert realize(generator, POSSESSED) == "benim kitabım"


def test_dropped_possessor_keeps_agreement(generator):
    text = "((ref ((arg kitap))) (poss ((argument ((ref ((arg ben))))) (control ((drop +))))))"
    assert realize(generator, text) == "kitabım"


def test_moved_possessor_follows_head(generator):
    text = "((ref ((arg kitap))) (poss ((argument ((ref ((arg ben))))) (control ((move +))))))"
    assert realize(generator, text) == "kitabım benim"


def test_third_person_possessor_and_case(generator):
    text = '((ref ((arg ev))) (poss ((argument ((ref ((arg "Ali"))))))))'
    assert realize(generator, text, "loc") == "Ali'nin evinde"


# ── modifiers ──────────────────────────────────────────────────────────────

def test_quantity_modifier_with_case(generator):
    assert realize(generator, "((ref ((arg dakika))) (modf ((quant-mod 3))))", "loc") == "3 dakikada"


def test_quantity_before_quality_by_default(generator):
    text = "((ref ((arg kitap))) (modf ((quant-mod 3) (qualy-mod [kalın]))))"
    assert realize(generator, text) == "3 kalın kitap"


def test_emphasized_kind_sits_next_to_head(generator):
    quant = "((ref ((arg kitap))) (modf ((quant-mod 3) (qualy-mod [kalın]) (control ((emphasis quant))))))"
    qual = "((ref ((arg kitap))) (modf ((quant-mod 3) (qualy-mod [kalın]) (control ((emphasis qual))))))"
    assert realize(generator, quant) == "kalın 3 kitap"
    assert realize(generator, qual) == "3 kalın kitap"


def test_several_qualities_keep_their_order(generator):
    text = "((ref ((arg kitap))) (modf ((qualy-mod [büyük kırmızı]))))"
    assert realize(generator, text) == "büyük kırmızı kitap"


@pytest.mark.parametrize("ordinal,expected", [
    ("((position 3))", "üçüncü kitap"),
    ("((position 1) (intensifier +))", "en birinci kitap"),
    ("((position 11))", "11. kitap"),
])
def test_ordinals(generator, ordinal, expected):
    assert realize(generator, f"((ref ((arg kitap))) (modf ((ordinal {ordinal}))))") == expected


def test_text_relative_modifier(generator):
    text = '((ref ((arg kitap))) (modf ((mod-rel ["dün gelen"]))))'
    assert realize(generator, text) == "dün gelen kitap"


# ── specifiers and articles ────────────────────────────────────────────────

def test_demonstrative(generator):
    assert realize(generator, "((ref ((arg kitap))) (spec ((demons bu))))", "acc") == "bu kitabı"


def test_determiner_positions(generator):
    pre = "((ref ((arg kitap) (agr 3pl))) (spec ((det ((quantifier bütün))) (demons bu))))"
    post = "((ref ((arg kitap))) (spec ((det ((quantifier her))) (demons bu))))"
    assert realize(generator, pre) == "bütün bu kitaplar"
    assert realize(generator, post) == "bu her kitap"


def test_indefinite_specific_article(generator):
    assert realize(generator, "((ref ((arg kitap))) (spec ((det ((definite -) (specific +))))))") == "bir kitap"


def test_article_after_quality(generator):
    text = "((ref ((arg kitap))) (modf ((qualy-mod [kalın]))) (spec ((det ((definite -) (referential +))))))"
    assert realize(generator, text) == "kalın bir kitap"


def test_no_article_for_plurals_or_nonspecifics(generator):
    plural = "((ref ((arg kitap) (agr 3pl))) (spec ((det ((definite -) (specific +))))))"
    bare = "((ref ((arg kitap))) (spec ((det ((definite -))))))"
    assert realize(generator, plural) == "kitaplar"
    assert realize(generator, bare) == "kitap"


def test_indefinite_object_stays_nominative(generator):
    text = "((ref ((arg kitap))) (spec ((det ((definite -))))))"
    assert realize(generator, text, "acc", "dir-obj") == "kitap"
    assert realize(generator, "((ref ((arg kitap))))", "acc", "dir-obj") == "kitabı"


def test_partitive_set(generator):
    text = "((ref ((arg öğrenci))) (spec ((set-spec [((ref ((arg çocuk) (agr 3pl))))]))))"
    assert realize(generator, text) == "çocuklardan öğrenci"


def test_classifier_compound(generator):
    assert realize(generator, "((ref ((arg kitap))) (class okul))") == "okul kitabı"


# ── heads ──────────────────────────────────────────────────────────────────

def test_plural_head(generator):
    assert realize(generator, "((ref ((arg kitap) (agr 3pl))))", "acc") == "kitapları"


def test_pronoun_takes_no_plural_suffix(generator):
    assert realize(generator, "((ref ((arg biz))))", "gen") == "bizim"


def test_wh_pro_form_is_fixed(generator):
    assert generator.np_engine.realize_np(NounPhrase(arg="nereye"), Case.DAT) == ["nereye"]


def test_dropped_phrase_is_empty(generator):
    text = "((ref ((arg ben) (control ((drop +))))))"
    assert realize(generator, text) == ""


def test_unknown_head(generator):
    with pytest.raises(RealizationError) as exc:
        generator.np_engine.realize_np(NounPhrase(arg="zebra"))
    assert exc.value.code == "unknown-lexeme"


def test_gapped_roles_are_not_generated(generator):
    with pytest.raises(RealizationError) as exc:
        realize(generator, "((ref ((arg kitap))) (roles subject))")
    assert exc.value.code == "roles-present"


# ── slot order ─────────────────────────────────────────────────────────────

def test_specifiers_then_modifiers_then_head(generator):
    text = """
        ((ref ((arg kitap)))
         (poss ((argument ((ref ((arg ben)))))))
         (spec ((demons bu)))
         (modf ((ordinal ((position 2))) (quant-mod 3) (qualy-mod [kalın]))))
    """
    assert kinds(generator, text) == ["possessor", "demons", "ordinal", "quant", "qual", "head"]


def test_head_slot_always_planned(generator):
    assert kinds(generator, "((ref ((arg kitap))))") == ["head"]


def test_agreement_from_lexicon(generator):
    engine = generator.np_engine
    assert engine.agreement(NounPhrase(arg="ben")).value == "1sg"
    assert engine.agreement(NounPhrase(arg="kitap")).value == "3sg"
    assert engine.agreement(NounPhrase(arg="kitap", agr="3pl")).value == "3pl"
