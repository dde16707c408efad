import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from semreg.demo import init_demo
from semreg.ontology import load_ontology_files
from semreg.store import Store


@pytest.fixture(scope="session")
def demo_env(tmp_path_factory):
    base = tmp_path_factory.mktemp("demo")
    ontology_paths, store_dir = init_demo(base)
    return ontology_paths, store_dir


@pytest.fixture(scope="session")
def demo_tbox(demo_env):
    ontology_paths, _ = demo_env
    return load_ontology_files(ontology_paths)


@pytest.fixture(scope="session")
def demo_store(demo_env, demo_tbox):
    """Read-only store over the session demo data; do not mutate."""
    _, store_dir = demo_env
    return Store(store_dir, demo_tbox)


@pytest.fixture(scope="session")
def demo_ctx(demo_store):
    return demo_store.context()


@pytest.fixture
def fresh_demo(tmp_path):
    """A private demo copy for tests that mutate the store."""
    ontology_paths, store_dir = init_demo(tmp_path)
    tbox = load_ontology_files(ontology_paths)
    return Store(store_dir, tbox), ontology_paths
