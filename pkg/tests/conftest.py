import threading
import urllib.error
import urllib.request
from pathlib import Path

import pytest

from owlport.imports import make_fetcher
from owlport.repository import RepositoryManager, build_entry, load_config_file
from owlport.server import make_server

FIXTURES = Path(__file__).parent / "fixtures"

HP_URI = "http://example.org/hp_mini.owl"
GO_URI = "http://example.org/go_mini.owl"
NBO_URI = "http://example.org/nbo_mini.owl"

FIXTURE_MAPPINGS = {
    HP_URI: str(FIXTURES / "hp_mini.ofn"),
    GO_URI: str(FIXTURES / "go_mini.ofn"),
    NBO_URI: str(FIXTURES / "nbo_mini.ofn"),
    "http://example.org/imports/base.owl": str(FIXTURES / "imports/base.ofn"),
    "http://example.org/imports/mid.owl": str(FIXTURES / "imports/mid.ofn"),
    "http://example.org/imports/leaf.owl": str(FIXTURES / "imports/leaf.ofn"),
    "http://example.org/imports/cycle_a.owl": str(FIXTURES / "imports/cycle_a.ofn"),
    "http://example.org/imports/cycle_b.owl": str(FIXTURES / "imports/cycle_b.ofn"),
    "http://example.org/imports/broken_import.owl": str(FIXTURES / "imports/broken_import.ofn"),
}


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_fetcher():
    return make_fetcher(mappings=FIXTURE_MAPPINGS)


@pytest.fixture(scope="session")
def hp_entry(fixture_fetcher):
    return build_entry(HP_URI, fixture_fetcher)


@pytest.fixture(scope="session")
def go_entry(fixture_fetcher):
    return build_entry(GO_URI, fixture_fetcher)


@pytest.fixture(scope="session")
def nbo_entry(fixture_fetcher):
    return build_entry(NBO_URI, fixture_fetcher)


def build_demo_manager() -> RepositoryManager:
    return RepositoryManager(load_config_file(FIXTURES / "demo.cfg"))


@pytest.fixture(scope="session")
def demo_manager() -> RepositoryManager:
    """Shared read-only repository: hp_mini + go_mini + the corpus index.

    Tests that add or refresh ontologies must build their own manager
    (build_demo_manager) instead of mutating this one.
    """
    return build_demo_manager()


class LiveServer:
    def __init__(self, manager: RepositoryManager):
        self.server = make_server(manager, "127.0.0.1:0")
        self.manager = manager
        port = self.server.server_address[1]
        self.base_url = f"http://127.0.0.1:{port}"
        self._thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self._thread.start()

    def stop(self):
        self.server.shutdown()
        self.server.server_close()

    def request(self, method: str, path: str, body: bytes | None = None):
        """Returns (status, headers, body bytes) without raising on 4xx/5xx."""
        req = urllib.request.Request(self.base_url + path, data=body, method=method)
        try:
            with urllib.request.urlopen(req, timeout=10) as response:
                return response.status, dict(response.headers), response.read()
        except urllib.error.HTTPError as err:
            return err.code, dict(err.headers), err.read()

    def get(self, path: str):
        return self.request("GET", path)

    def post(self, path: str, body: bytes = b""):
        return self.request("POST", path, body)


@pytest.fixture(scope="session")
def live_server(demo_manager):
    server = LiveServer(demo_manager)
    yield server
    server.stop()


@pytest.fixture()
def scratch_server():
    """A server over its own repository, safe for mutating tests."""
    server = LiveServer(build_demo_manager())
    yield server
    server.stop()
