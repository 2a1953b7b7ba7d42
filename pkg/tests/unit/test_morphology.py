"""Unit tests for word-form generation and the phonological validators."""

import pytest

from serbest.errors import MorphologyError
from serbest.models import Harmony
from serbest.morphology import (
    Morphology,
    PhonContext,
    Suffix,
    WordForm,
    check_buffers,
    check_harmony,
    check_voicing,
    harmonize_particle,
    parse_tag_string,
    select_morphemes,
    surface,
    tr_capitalize,
    tr_lower,
    validate_word,
)


@pytest.fixture(scope="module")
def morph(generator) -> Morphology:
    return generator.morphology


def _word(morph: Morphology, tags: str) -> WordForm:
    return morph.word(parse_tag_string(tags))


# ── glossed forms ──────────────────────────────────────────────────────────

GLOSSED = [
    ("kitap+ACC", "kitabı"),
    ("kitap+P1SG", "kitabım"),
    ("kitap+PL", "kitaplar"),
    ("kitap+P3SG+ACC", "kitabını"),
    ("kitap+PL+P1SG+ABL", "kitaplarımdan"),
    ("masa+LOC", "masada"),
    ("masa+P3SG", "masası"),
    ("ev+ABL", "evden"),
    ("ev+P3SG+LOC", "evinde"),
    ("okul+DAT", "okula"),
    ("bura+DAT", "buraya"),
    ("otobüs+INS", "otobüsle"),
    ("dakika+LOC", "dakikada"),
    ("iş+ACC", "işi"),
    ("renk+ACC", "rengi"),
    ("oğul+P1SG", "oğlum"),
    ("saat+ACC", "saati"),
    ("gol+ACC", "golü"),
    ("Ali+ACC", "Ali'yi"),
    ("Ayşe+GEN", "Ayşe'nin"),
    ("ben+GEN", "benim"),
    ("biz+GEN", "bizim"),
    ("o+GEN", "onun"),
    ("o+DAT", "ona"),
    ("o+ABL", "ondan"),
    ("bırak+PAST", "bıraktı"),
    ("git+PAST", "gitti"),
    ("git+PAST+A1PL", "gittik"),
    ("gör+NEG+PAST+A1SG", "görmedim"),
    ("kolaylaştır+PAST", "kolaylaştırdı"),
    ("kolaylaş+CAUS+PAST", "kolaylaştırdı"),
    ("gel+PROG", "geliyor"),
    ("gel+PROG+A2SG", "geliyorsun"),
    ("gel+PROG+PAST", "geliyordu"),
    ("oku+PROG", "okuyor"),
    ("bekle+PROG", "bekliyor"),
    ("gel+AOR", "gelir"),
    ("git+AOR", "gider"),
    ("oku+AOR", "okur"),
    ("sev+AOR", "sever"),
    ("gel+NEG+AOR", "gelmez"),
    ("gel+NEG+AOR+A1SG", "gelmem"),
    ("gel+NEG+AOR+A1PL", "gelmeyiz"),
    ("git+FUT", "gidecek"),
    ("git+FUT+A1SG", "gideceğim"),
    ("gel+FUT+PAST", "gelecekti"),
    ("gel+ABIL+PAST", "gelebildi"),
    ("gel+ABIL+NEG+PAST", "gelemedi"),
    ("gel+OPT+A1PL", "gelelim"),
    ("gel+COND+A1SG", "gelsem"),
    ("gel+NEC", "gelmeli"),
    ("gel+IMP", "gel"),
    ("gel+IMP+A2PL", "gelin"),
    ("çalış+CAUS", "çalıştır"),
    ("oku+CAUS", "okut"),
    ("yaz+PASS", "yazıl"),
    ("al+PASS", "alın"),
    ("oku+PASS", "okun"),
    ("gel+INF-MA+P3SG", "gelmesi"),
    ("gel+INF-IS+P3SG+ACC", "gelişini"),
    ("bitir+INF-MA+P1PL+ACC", "bitirmemizi"),
    ("üç+ORD", "üçüncü"),
    ("iki+ORD", "ikinci"),
    ("dört+ORD", "dördüncü"),
    ("kalın+PAST", "kalındı"),
    ("hasta+PAST", "hastaydı"),
]


@pytest.mark.parametrize("tags,expected", GLOSSED)
def test_glossed_forms(morph, tags, expected):
    assert morph.generate(parse_tag_string(tags)) == expected


@pytest.mark.parametrize("tags,expected", GLOSSED)
def test_glossed_forms_pass_validators(morph, tags, expected):
    assert validate_word(_word(morph, tags)) == []


def test_tags_are_case_insensitive(morph):
    assert morph.generate(parse_tag_string("kitap+acc")) == "kitabı"


def test_inflect_skips_empty_tags(morph):
    assert morph.inflect("masa", "", "LOC") == "masada"


def test_roots_outside_lexicon_use_default_flags(morph):
    assert morph.generate(parse_tag_string("kalem+ACC")) == "kalemi"
    assert morph.generate(parse_tag_string("zurna+DAT")) == "zurnaya"


def test_select_morphemes_archiphonemes():
    suffixes = select_morphemes(parse_tag_string("ev+P3SG+LOC"))
    assert suffixes == [Suffix("P3SG", "(s)I"), Suffix("LOC", "nDA")]


# ── tag errors ─────────────────────────────────────────────────────────────

@pytest.mark.parametrize("tags,code", [
    ("kitap+ACC+P3SG", "tag-order-violation"),
    ("kitap+ACC+ACC", "tag-order-violation"),
    ("gel+A1SG", "unsupported-combination"),
    ("gel+IMP+A1SG", "unsupported-combination"),
    ("gel+INF-MA+PROG", "unsupported-combination"),
])
def test_bad_tag_sequences(morph, tags, code):
    with pytest.raises(MorphologyError) as exc:
        morph.generate(parse_tag_string(tags))
    assert exc.value.code == code


@pytest.mark.parametrize("text", ["kitap+FOO", "+ACC", ""])
def test_unknown_tag(text):
    with pytest.raises(MorphologyError) as exc:
        parse_tag_string(text)
    assert exc.value.code == "unknown-tag"


# ── particles and casing ───────────────────────────────────────────────────

@pytest.mark.parametrize("word,particle", [
    ("gitti", "mi"),
    ("bıraktı", "mı"),
    ("okul", "mu"),
    ("gördü", "mü"),
])
def test_question_particle_harmony(word, particle):
    assert harmonize_particle(word) == particle


def test_particle_carries_agreement(morph):
    assert morph.particle("geliyor", "A2SG") == "musun"
    assert morph.particle("gelecek", "A1SG") == "miyim"
    assert morph.particle("gitti") == "mi"


@pytest.mark.parametrize("text,expected", [
    ("ilk", "İlk"),
    ("ışık", "Işık"),
    ("ahmet", "Ahmet"),
    ("", ""),
])
def test_tr_capitalize(text, expected):
    assert tr_capitalize(text) == expected


def test_tr_lower():
    assert tr_lower("IŞIK") == "ışık"
    assert tr_lower("İstanbul") == "istanbul"


# ── surface and validators ─────────────────────────────────────────────────

def test_surface_context_seeds_harmony():
    assert surface("2", [Suffix("LOC", "DA")], PhonContext(last_vowel="i")) == "2de"
    assert surface("saat", [Suffix("ACC", "(y)I")]) == "saatı"
    assert surface("saat", [Suffix("ACC", "(y)I")], PhonContext(harmony_override=Harmony.FRONT)) == "saati"


def _form(text: str, root: str, *suffix_chars):
    alignment = tuple(("root", ch) for ch in root) + tuple(suffix_chars)
    return WordForm(text, root, (), alignment)


def test_voicing_violation():
    word = _form("kitapda", "kitap", ("D", "d"), ("A", "a"))
    assert check_voicing(word)
    assert not check_harmony(word)


def test_harmony_violation():
    word = _form("evda", "ev", ("D", "d"), ("A", "a"))
    assert check_harmony(word)


def test_rounding_violation():
    word = _form("okulı", "okul", ("I", "ı"))
    assert check_harmony(word)


def test_buffer_violation():
    word = _form("evyi", "ev", ("(y)", "y"), ("I", "i"))
    assert check_buffers(word)
    assert validate_word(word)


def test_observer_sees_every_word(generator):
    seen = []
    local = Morphology(generator.lexicon)
    local.add_observer(seen.append)
    local.generate(parse_tag_string("kitap+ACC"))
    local.particle("geliyor", "A2SG")
    assert [w.text for w in seen] == ["kitabı", "musun"]
