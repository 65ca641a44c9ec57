from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobmult.dsl import TASK_SCHEMA, Task, TaskFile, parse_taskfile
from frobmult.errors import DSLSyntaxError, NonPrimeModulus, UnknownVariable

EXAMPLE = "ring { p = 2; vars = [x,y]; relations = [x^2*y^2]; } analyze { q = [x+y]; }"

CORPUS = [
    EXAMPLE,
    "ring { p = 2; vars = [x, y]; relations = [x^2*y^2]; }",
    "ring { p = 3; vars = [x]; relations = []; }\nsample_fte { trials = 4; seed = 7; }",
    """# the Example, every task kind
ring {
  p = 2;
  vars = [x, y];
  relations = [x^2*y^2];
}
analyze { q = [x + y]; flags = [gorenstein]; e_max = 6; n_cap = 10; patience = 3; }
closure { q = [x + y]; e_max = 5; fte_bound = 1; }
bounds { l = 1; Q = 2; }
family { name = monomial_hypersurface; p = 3; a = 2; trials = 2; }
family { name = random_artinian_ci; p = 2; n_vars = 3; max_deg = 3; seed = 4; free = 1; }
""",
    "ring { relations = [y^2 - x*z, z^2 - x^2*y, x^3 - y*z]; vars = [x, y, z]; p = 5; }\n"
    "analyze { q = [x]; }\nclosure { q = [(x + 2*y)^2 - z]; }",
    "ring{p=7;vars=[a,b];relations=[3*a*b+10*b^3];}analyze{}",
]


def test_example_parses():
    tf = parse_taskfile(EXAMPLE)
    assert (tf.p, tf.variables, tf.relations) == (2, ("x", "y"), ("x^2*y^2",))
    assert tf.tasks == [Task("analyze", {"q": ["x + y"]})]
    assert (tf.tasks[0].line, tf.tasks[0].col) == (1, 54)


def test_polynomials_are_canonical():
    tf = parse_taskfile("ring { p = 7; vars = [a, b]; relations = [3*a*b + 10*b^3]; }")
    assert tf.relations == ("3*b^3 + 3*a*b",)


def test_non_prime_modulus():
    with pytest.raises(NonPrimeModulus) as exc:
        parse_taskfile("ring { p = 4; vars = [x]; relations = [x]; }")
    assert "line 1, column 12" in str(exc.value)


def test_unknown_variable_position():
    text = "ring { p = 2;\n  vars = [x, y];\n  relations = [x^2*z]; }"
    with pytest.raises(UnknownVariable) as exc:
        parse_taskfile(text)
    assert (exc.value.name, exc.value.line, exc.value.col) == ("z", 3, 20)
    with pytest.raises(UnknownVariable):
        parse_taskfile(EXAMPLE.replace("x+y", "x+w"))


@pytest.mark.parametrize("text,line,col,token", [
    ("ring { p = 2; vars = [x]; relations = [x] }", 1, 43, "}"),
    ("ring { p = 2 vars = [x]; relations = []; }", 1, 14, "vars"),
    ("rung { p = 2; }", 1, 1, "rung"),
    ("ring { p = 2; vars = [x]; relations = [x]; }\nanalyze { q = [x] ; e_max = two; }", 2, 29, "two"),
    ("ring { p = 2; vars = [x]; relations = [x]; }\nfrobnicate { }", 2, 1, "frobnicate"),
    ("ring { p = 2; vars = [x]; relations = [x]; }\nanalyze { bogus = 1; }", 2, 11, "bogus"),
    ("ring { p = 2; vars = [x]; relations = [x]; }\nanalyze { e_max = 1; e_max = 2; }", 2, 22, "e_max"),
    ("ring { p = 2; vars = [x]; relations = [x]; }\nclosure { e_max = 1; }", 2, 1, "closure"),
    ("ring { p = 2; vars = [x]; relations = [x]; }\nanalyze { flags = [f_pure, smooth]; }", 2, 28, "smooth"),
    ("ring { p = 2; vars = [x, x]; relations = []; }", 1, 22, "["),
    ("ring { p = 2; vars = []; relations = []; }", 1, 15, "vars"),
    ("ring { p = 2; vars = [x]; }", 1, 1, "ring"),
    ("ring { p = 2; p = 3; vars = [x]; relations = []; }", 1, 15, "p"),
    ("ring { p = 2; vars = [x]; relations = [x +]; }", 1, 43, ""),  # polynomial ends early
    ("ring { p = 2; vars = [x]; relations = [x,, x]; }", 1, 39, "["),
    ("ring { p = 2; vars = [x]; relations = [x]; }\nanalyze { q = [x]", 2, 18, ""),
])
def test_syntax_errors_carry_position(text, line, col, token):
    with pytest.raises(DSLSyntaxError) as exc:
        parse_taskfile(text)
    assert (exc.value.line, exc.value.col, exc.value.token) == (line, col, token), str(exc.value)


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text):
    tf = parse_taskfile(text)
    again = parse_taskfile(tf.to_dsl())
    assert again == tf
    assert again.to_dsl() == tf.to_dsl()
    assert again.to_json() == tf.to_json()


def test_empty_relations_and_task_list():
    tf = parse_taskfile("ring { p = 3; vars = [x]; relations = []; }")
    assert tf.relations == () and tf.tasks == []
    assert tf.to_json() == {"ring": {"p": 3, "vars": ["x"], "relations": []}, "tasks": []}


def test_comments_ignored():
    tf = parse_taskfile("# leading\nring { p = 2; # inline\n vars = [x]; relations = []; }\n# trailing\n")
    assert tf.variables == ("x",)


def _random_taskfile(rng: random.Random) -> TaskFile:
    p = rng.choice((2, 3, 5, 7))
    names = tuple(rng.sample(["x", "y", "z", "w", "u"], rng.randint(1, 3)))

    def poly():
        terms = []
        for _ in range(rng.randint(1, 3)):
            mono = "*".join(f"{rng.choice(names)}^{rng.randint(1, 4)}" for _ in range(rng.randint(1, 2)))
            terms.append(f"{rng.randint(1, 12)}*{mono}")
        return " + ".join(terms)

    rels = [poly() for _ in range(rng.randint(0, 2))]
    text = [f"ring {{ p = {p}; vars = [{', '.join(names)}]; relations = [{', '.join(rels)}]; }}"]
    for _ in range(rng.randint(0, 4)):
        name = rng.choice(sorted(TASK_SCHEMA))
        body = []
        for key, kind in TASK_SCHEMA[name].items():
            if rng.random() < 0.5 and not (name == "closure" and key == "q") \
                    and not (name == "family" and key == "name"):
                continue
            if kind == "int":
                val = str(rng.randint(0, 50))
            elif kind == "ident":
                val = rng.choice(["monomial_hypersurface", "random_artinian_ci"])
            elif kind == "idents":
                val = "[" + ", ".join(rng.sample(["f_pure", "gorenstein", "f_nilpotent"], 2)) + "]"
            else:
                val = "[" + ", ".join(poly() for _ in range(rng.randint(1, 2))) + "]"
            body.append(f"{key} = {val};")
        text.append(f"{name} {{ {' '.join(body)} }}")
    return parse_taskfile("\n".join(text))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_round_trip_random(seed):
    tf = _random_taskfile(random.Random(seed))
    assert parse_taskfile(tf.to_dsl()) == tf
