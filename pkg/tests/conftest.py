from __future__ import annotations

from pathlib import Path

import pytest

from godp import expand, parse_library, resolve, stratify_ontology
from godp.ontology import FlatOntology
from godp.resolver import ResolvedLibrary

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def resolve_text(text: str, file: str = "<test>") -> ResolvedLibrary:
    resolved = resolve(parse_library(text, file), file)
    assert not resolved.errors, [d.format() for d in resolved.errors]
    return resolved


def flatten_text(text: str, target: str, stratify: bool = True) -> FlatOntology:
    result = expand(resolve_text(text), target)
    return stratify_ontology(result.ontology) if stratify else result.ontology


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def driving() -> ResolvedLibrary:
    return resolve_text(fixture_text("driving.gdol"), "driving.gdol")


@pytest.fixture(scope="session")
def role() -> ResolvedLibrary:
    return resolve_text(fixture_text("role.gdol"), "role.gdol")


@pytest.fixture(scope="session")
def obligations_lib() -> ResolvedLibrary:
    return resolve_text(fixture_text("obligations.gdol"), "obligations.gdol")
