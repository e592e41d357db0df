import json
import os
import shutil
import subprocess
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("ANTIPODE_CLI") or shutil.which("antipode")
    if not path:
        candidate = ROOT / "build" / "antipode"
        path = str(candidate) if candidate.exists() else None
    if not path:
        pytest.skip("antipode executable not found")

    def run(*args, env=None):
        full_env = dict(os.environ)
        full_env.update(env or {})
        return subprocess.run([path, *map(str, args)], capture_output=True, text=True, env=full_env)

    return run


def load_schema(name):
    directory = Path(os.environ.get("ANTIPODE_SCHEMA_DIR", ROOT / "schema"))
    return json.loads((directory / name).read_text())


@pytest.fixture(scope="session")
def report_validator():
    jsonschema = pytest.importorskip("jsonschema")
    return jsonschema.Draft202012Validator(load_schema("analysis-report.schema.json"))


@pytest.fixture(scope="session")
def sample_validator():
    jsonschema = pytest.importorskip("jsonschema")
    return jsonschema.Draft202012Validator(load_schema("sample-report.schema.json"))
