from astgen import ProgramGen
from emrkit.dsl import has_errors, parse_emr, stub_names, validate
from emrkit.sut import ApiCatalog, ApiEntry, load_api_catalog
from emrkit.resources import fixture_path

FIG4_STUBS = [
    "isSearchAction",
    "getFilterTypes",
    "applyFilter",
    "notSameFilterApplied",
    "fewerResults",
    "moreRelevantResults",
]


def entry(name, params=0):
    return ApiEntry(name, [(f"p{i}", "Object") for i in range(params)], "Object", f"doc for {name}")


def test_search_filter_stubs_with_empty_catalog(filter_emr_ast):
    diags = validate(filter_emr_ast)
    assert stub_names(diags) == FIG4_STUBS
    assert not has_errors(diags)
    assert all(d.severity == "stub" for d in diags)


def test_search_filter_clean_with_full_catalog(filter_emr_ast):
    catalog = load_api_catalog(fixture_path("api_catalog_search_filter.json"))
    assert catalog.names() == FIG4_STUBS
    assert validate(filter_emr_ast, catalog) == []


def test_implies_arity_error():
    ast = parse_emr("MR {{ IMPLIES(true); }}")
    diags = validate(ast)
    assert any(d.severity == "error" and "IMPLIES expects 2" in d.message for d in diags)


def test_construct_arities():
    bad = [
        ("Input()", "Input"),
        ("Output(1, 2, 3)", "Output"),
        ("CREATE(Input(2))", "CREATE"),
        ("NOT(true, false)", "NOT"),
        ("OR(true)", "OR"),
        ("AND(true)", "AND"),
    ]
    for snippet, name in bad:
        diags = validate(parse_emr("MR {{ var x = %s; }}" % snippet))
        assert any(d.severity == "error" and d.symbol == name for d in diags), snippet


def test_create_target_must_be_input():
    diags = validate(parse_emr("MR {{ CREATE(probe, other); }}"))
    assert any(d.severity == "error" and d.symbol == "CREATE" for d in diags)


def test_boolean_position_literal_errors():
    diags = validate(parse_emr('MR {{ IMPLIES(1, "no"); }}'))
    errors = [d for d in diags if d.severity == "error"]
    assert len(errors) == 2


def test_integer_position_literal_errors():
    diags = validate(parse_emr('MR {{ var x = Input("one"); }}'))
    assert any(d.severity == "error" for d in diags)


def test_continue_outside_loop():
    diags = validate(parse_emr("MR {{ continue; }}"))
    assert any(d.severity == "error" and "continue" in d.message for d in diags)


def test_unknown_method_is_warning_not_error(filter_emr_ast):
    diags = validate(parse_emr("MR {{ var x = Input(1).frobnicate(); }}"))
    assert any(d.severity == "warning" and d.symbol == "frobnicate" for d in diags)
    assert not has_errors(diags)


def test_stub_diagnostics_deduplicated_by_name():
    ast = parse_emr("MR {{ var a = probe(); var b = probe(); }}")
    diags = validate(ast)
    assert stub_names(diags) == ["probe"]


def test_catalog_arity_checked_when_known():
    catalog = ApiCatalog([entry("probe", params=2)])
    diags = validate(parse_emr("MR {{ var a = probe(); }}"), catalog)
    assert has_errors(diags)


def test_monotonicity_adding_catalog_entries_never_adds_stubs():
    for seed in range(40):
        ast = ProgramGen(seed).program()
        base = stub_names(validate(ast))
        if not base:
            continue
        grown = ApiCatalog([entry(base[0])])
        # Catalog arity may disagree; only the stub count matters here.
        after = stub_names(validate(ast, grown))
        assert set(after) <= set(base)
        assert len(after) < len(base)


def test_lines_reference_symbol_bearing_source_lines(filter_emr_ast, filter_emr_source):
    lines = filter_emr_source.split("\n")
    for diag in validate(filter_emr_ast):
        assert diag.symbol in lines[diag.line - 1]
