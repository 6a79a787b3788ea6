import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from emrkit.dsl import parse_emr
from emrkit.resources import fixture_path, load_emr_suite, read_fixture
from emrkit.runtime import ActionSequence

INPUT_NAMES = ["search_chair", "search_table", "search_all", "login_search_desk", "login_only"]


@pytest.fixture(scope="session")
def filter_emr_source() -> str:
    return read_fixture("search_filter.smrl")


@pytest.fixture(scope="session")
def filter_emr_ast(filter_emr_source):
    return parse_emr(filter_emr_source, "search_filter")


@pytest.fixture(scope="session")
def emr_suite():
    return load_emr_suite()


@pytest.fixture(scope="session")
def shop_inputs() -> list[ActionSequence]:
    inputs = []
    for name in INPUT_NAMES:
        data = json.loads(fixture_path("inputs", f"{name}.json").read_text(encoding="utf-8"))
        inputs.append(ActionSequence.from_json(data))
    return inputs
