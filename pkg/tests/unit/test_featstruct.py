"""Unit tests for feature structures: reading, printing, paths and unification."""

import random

import pytest

from serbest.errors import FeatureStructureError, UnificationClash
from serbest.featstruct import (
    EMPTY,
    UNDEFINED,
    Atom,
    FeatureStructure,
    Path,
    Text,
    ValueList,
    constrain_eq,
    get,
    parse_fs,
    parse_fs_many,
    print_fs,
    put,
    remove_at,
    unify,
)

SAMPLE = """
; a comment
((verb ((root "bırak") (tense past)))
 (args ((subject ((ref ((arg "Ahmet")))))
        (dir-obj ((ref ((arg kitap)))))))
 (ques ((const [goal time]))))
"""


# ── reading ────────────────────────────────────────────────────────────────

def test_parse_nested_structure():
    fs = parse_fs(SAMPLE)
    assert get(fs, "verb.root") == Text("bırak")
    assert get(fs, "verb.tense") == Atom("past")
    assert get(fs, "args.subject.ref.arg") == Text("Ahmet")
    assert fs.at("ques.const") == ValueList((Atom("goal"), Atom("time")))


def test_atoms_are_case_insensitive_text_is_not():
    fs = parse_fs('((Tense PAST) (name "Ahmet"))')
    assert fs["tense"] == Atom("past")
    assert fs["name"] == Text("Ahmet")


def test_feature_order_is_kept():
    fs = parse_fs("((c 1) (a 2) (b 3))")
    assert list(fs) == ["c", "a", "b"]


def test_parse_many():
    structures = parse_fs_many("((a 1)) ((b 2))\n((c 3))")
    assert [list(fs) for fs in structures] == [["a"], ["b"], ["c"]]


def test_parse_one_rejects_two():
    with pytest.raises(FeatureStructureError):
        parse_fs("((a 1)) ((b 2))")


def test_escaped_quotes_in_text():
    fs = parse_fs(r'((say "he said \"hi\""))')
    assert fs["say"] == Text('he said "hi"')


@pytest.mark.parametrize("text", [
    "((a 1)",
    "((a 1)))",
    "((a 1]",
    '((a "open))',
    "((a 1 2))",
    "(((a) 1))",
])
def test_malformed_text(text):
    with pytest.raises(FeatureStructureError) as exc:
        parse_fs(text)
    assert exc.value.code == "syntax-error"


def test_error_reports_position():
    with pytest.raises(FeatureStructureError) as exc:
        parse_fs("((a 1)\n (b 2)")
    assert exc.value.line == 1


def test_duplicate_feature():
    with pytest.raises(FeatureStructureError) as exc:
        parse_fs("((tense past) (tense future))")
    assert exc.value.code == "duplicate-feature"


# ── printing ───────────────────────────────────────────────────────────────

def test_print_reads_back():
    fs = parse_fs(SAMPLE)
    assert parse_fs(print_fs(fs)) == fs
    assert parse_fs(print_fs(fs, compact=True)) == fs


def test_print_compact():
    fs = parse_fs('((a x) (b ((c "Y"))) (d [p q]))')
    assert print_fs(fs, compact=True) == '((a x)(b ((c "Y")))(d [p q]))'


def test_print_empty():
    assert print_fs(EMPTY) == "()"


# ── paths ──────────────────────────────────────────────────────────────────

def test_get_missing_path_is_none():
    fs = parse_fs(SAMPLE)
    assert get(fs, "args.goal") is None
    assert get(fs, "verb.tense.deeper") is None


def test_put_creates_levels_and_copies():
    fs = parse_fs("((a 1))")
    out = put(fs, "b.c.d", Atom("x"))
    assert get(out, "b.c.d") == Atom("x")
    assert "b" not in fs


def test_put_through_atom():
    fs = parse_fs("((a 1))")
    with pytest.raises(FeatureStructureError) as exc:
        put(fs, "a.b", Atom("x"))
    assert exc.value.code == "path-through-atom"
    assert exc.value.path == "a"


def test_remove():
    fs = parse_fs("((present ((subject +) (time +))))")
    out = remove_at(fs, "present.subject")
    assert list(out["present"]) == ["time"]
    assert remove_at(out, "present.subject") == out


def test_path_of_spellings():
    assert Path.of("args.subject") == Path.of(["args", "subject"]) == Path(("args", "subject"))
    with pytest.raises(FeatureStructureError):
        Path(())


# ── constraints and unification ────────────────────────────────────────────

def test_constrain_eq():
    fs = parse_fs("((control ((topic time))))")
    assert constrain_eq(fs, "control.topic", "time")
    assert not constrain_eq(fs, "control.topic", "subject")
    assert constrain_eq(fs, "control.focus", UNDEFINED)
    assert not constrain_eq(fs, "control.topic", UNDEFINED)


def test_constrain_eq_needs_an_atom():
    fs = parse_fs("((control ((topic ((nested +))))))")
    assert not constrain_eq(fs, "control.topic", "nested")


def test_unify_merges():
    a = parse_fs("((verb ((root gel))) (x 1))")
    b = parse_fs("((verb ((tense past))) (y 2))")
    out = unify(a, b)
    assert get(out, "verb.root") == Atom("gel")
    assert get(out, "verb.tense") == Atom("past")
    assert set(out) == {"verb", "x", "y"}


def test_unify_is_symmetric_on_success():
    a = parse_fs("((p ((q 1))))")
    b = parse_fs("((p ((r 2))))")
    assert unify(a, b) == unify(b, a)


def test_unify_clash_names_path():
    a = parse_fs("((verb ((tense past))))")
    b = parse_fs("((verb ((tense future))))")
    with pytest.raises(UnificationClash) as exc:
        unify(a, b)
    assert exc.value.path == "verb.tense"
    assert exc.value.code == "clash"


# ── python conversion ──────────────────────────────────────────────────────

def test_from_python():
    fs = FeatureStructure.from_python({"Verb": {"root": "gel"}, "drop": True, "const": ["goal"]})
    assert get(fs, "verb.root") == Atom("gel")
    assert fs["drop"] == Atom("+")
    assert fs["const"] == ValueList((Atom("goal"),))
    assert fs.to_python() == {"verb": {"root": "gel"}, "drop": "+", "const": ["goal"]}


def test_invalid_feature_name():
    with pytest.raises(FeatureStructureError):
        FeatureStructure({"Bad Name": Atom("x")})


def test_structures_hash_by_content():
    assert hash(parse_fs("((a 1) (b 2))")) == hash(parse_fs("((b 2) (a 1))"))


def test_turkish_atoms_fold_with_dotted_and_dotless_i():
    assert Atom("IŞIK").name == "ışık"
    assert Atom("İZMİR").name == "izmir"
    assert Atom("KITAP") == Atom("kitap")
    assert parse_fs("((arg IŞIK))")["arg"] == Atom("ışık")


def test_ascii_atoms_keep_plain_lowercasing():
    assert Atom("INSTRUMENT").name == "instrument"
    assert Atom("PAST") == Atom("past")


# ── laws over random structures ────────────────────────────────────────────

NAMES = ["a", "b", "verb", "args", "dir-obj", "x0", "tense", "ref"]
ATOMS = ["past", "+", "-", "3", "ışık", "gel", "*undefined*", "kitap"]
TEXTS = ["Ahmet", "Ayşe", 'say "hi"', "back\\slash", "İzmir", ""]


def random_value(rng, depth):
    roll = rng.random()
    if depth < 3 and roll < 0.3:
        return random_fs(rng, depth + 1)
    if roll < 0.4:
        return ValueList(tuple(Atom(rng.choice(ATOMS)) for _ in range(rng.randint(0, 3))))
    if roll < 0.6:
        return Text(rng.choice(TEXTS))
    return Atom(rng.choice(ATOMS))


def random_fs(rng, depth=0):
    names = rng.sample(NAMES, rng.randint(1, 4))
    return FeatureStructure({name: random_value(rng, depth) for name in names})


def random_path(rng):
    return ".".join(rng.choice(NAMES) for _ in range(rng.randint(1, 3)))


def test_print_parse_round_trip_on_random_structures():
    rng = random.Random(7)
    for _ in range(1000):
        fs = random_fs(rng)
        assert parse_fs(print_fs(fs)) == fs
        assert parse_fs(print_fs(fs, compact=True)) == fs


def test_get_after_put_on_random_structures():
    rng = random.Random(11)
    for _ in range(1000):
        fs, path, value = random_fs(rng), random_path(rng), random_value(rng, 2)
        try:
            out = put(fs, path, value)
        except FeatureStructureError as e:
            assert e.code == "path-through-atom"
            continue
        assert get(out, path) == value


def test_unify_is_idempotent_and_commutative_on_random_structures():
    rng = random.Random(13)
    for _ in range(1000):
        a, b = random_fs(rng), random_fs(rng)
        assert unify(a, a) == a
        try:
            ab = unify(a, b)
        except UnificationClash:
            with pytest.raises(UnificationClash):
                unify(b, a)
            continue
        assert ab == unify(b, a)
