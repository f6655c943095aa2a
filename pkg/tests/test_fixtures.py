from pathlib import Path

import pytest

from orbit_isom.errors import ValidationError
from orbit_isom.fixtures import (
    FIXTURE_NAMES,
    fixture_document,
    fixture_json,
    fixture_spec,
    write_fixture_files,
)

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def test_fixture_names_complete():
    assert len(FIXTURE_NAMES) == 8
    assert "c5" in FIXTURE_NAMES and "q8" in FIXTURE_NAMES


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_shipped_files_match_generator(name):
    path = FIXTURE_DIR / f"{name}.json"
    assert path.exists()
    assert path.read_text() == fixture_json(name)


def test_unknown_fixture_rejected():
    with pytest.raises(ValidationError, match="unknown fixture"):
        fixture_document("nope")


def test_documents_are_fresh_copies():
    a = fixture_document("c5")
    a["generators"][0][0][0] = "tampered"
    b = fixture_document("c5")
    assert b["generators"][0][0][0] != "tampered"


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_specs_parse_and_validate(name):
    spec = fixture_spec(name)
    assert spec.dimension == fixture_document(name)["dimension"]


def test_write_fixture_files(tmp_path):
    written = write_fixture_files(tmp_path)
    assert len(written) == 8
    for path in written:
        assert path.read_text() == fixture_json(path.stem)
