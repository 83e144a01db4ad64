from importlib import resources

import pytest

from scriptkb.kb import KnowledgeBase


def data_text(name: str) -> str:
    return resources.files("scriptkb.data").joinpath(name).read_text("utf-8")


def data_path(name: str) -> str:
    return str(resources.files("scriptkb.data").joinpath(name))


@pytest.fixture(scope="session")
def core_text():
    return data_text("core.kb")


@pytest.fixture(scope="session")
def scripts_text():
    return data_text("scripts.kb")


@pytest.fixture(scope="session")
def demo_text():
    return data_text("demo.kb")


@pytest.fixture(scope="session")
def kb(core_text, scripts_text, demo_text):
    """The full bundled fixture base; immutable, shared across tests."""
    return KnowledgeBase.from_texts([
        ("core.kb", core_text),
        ("scripts.kb", scripts_text),
        ("demo.kb", demo_text),
    ])


@pytest.fixture(scope="session")
def kb_classic(core_text, scripts_text):
    """Core plus the three classic scripts only (census fixtures)."""
    return KnowledgeBase.from_texts([
        ("core.kb", core_text),
        ("scripts.kb", scripts_text),
    ])
