"""Hypothesis properties over the text-facing surfaces."""

from hypothesis import given, settings
from hypothesis import strategies as st

from emrkit.dsl import parse_emr, repair
from emrkit.pipeline import chunk_document
from emrkit.runtime import Action
from emrkit.sut import fingerprint

identifier = st.from_regex(r"[a-z][a-zA-Z0-9_]{0,8}", fullmatch=True).filter(
    lambda s: s not in {"for", "if", "continue", "var", "true", "false"}
)


@st.composite
def simple_bool_call(draw):
    name = draw(identifier)
    args = draw(st.lists(st.sampled_from(["true", "false", "Input(1)"]), max_size=2))
    return f"{name}({', '.join(args)})"


@given(antecedent=simple_bool_call(), consequent=simple_bool_call())
@settings(max_examples=60, deadline=None)
def test_injected_ampersand_defect_always_repairs(antecedent, consequent):
    parse_emr(f"MR {{{{ IMPLIES({antecedent}, {consequent}); }}}}")
    defective = f"MR {{{{ IMPLIES({antecedent} & {consequent}); }}}}"
    fixed, log = repair(defective)
    assert len(log.entries) == 1
    parse_emr(fixed)
    again, log2 = repair(fixed)
    assert again == fixed and not log2.entries


@given(
    text=st.text(alphabet="ab c\n#", min_size=0, max_size=4000),
    budget=st.integers(min_value=20, max_value=500),
)
@settings(max_examples=80, deadline=None)
def test_chunks_fit_budget_and_lose_no_section(text, budget):
    chunks = chunk_document(text, budget)
    assert all(len(chunk) <= budget for chunk in chunks)
    if len(text) <= budget:
        assert chunks == [text]
    # No heading marker disappears.
    assert "".join(chunks).count("#") == text.count("#")


@given(
    kind=st.sampled_from(["search", "login", "view"]),
    params=st.dictionaries(identifier, st.one_of(st.integers(), st.text(max_size=5), st.booleans()), max_size=5),
)
@settings(max_examples=60, deadline=None)
def test_fingerprint_ignores_parameter_order(kind, params):
    forward = Action(0, kind, dict(params))
    backward = Action(0, kind, dict(reversed(list(params.items()))))
    assert fingerprint(forward) == fingerprint(backward)
    different = Action(0, kind, {**params, "extra_marker_key": 1})
    assert fingerprint(different) != fingerprint(forward)
