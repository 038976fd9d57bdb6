import shutil

import pandas as pd
import pytest

from backend.core.exactalg import TowerElement
from backend.core.heckechars import branch_scale, create_character
from backend.services.file_handler import (
    APPENDIX1_FILE,
    APPENDIX2_FILE,
    FIXTURE_FILES,
    MANIFEST_FILE,
    FileHandler,
    parse_fixture_token,
)
from backend.utils.exceptions import FixtureError
from backend.utils.validators import validate_appendix1, validate_fixture_frame


@pytest.fixture
def fixture_copy(tmp_path, file_handler):
    for name in FIXTURE_FILES + (MANIFEST_FILE,):
        shutil.copy(file_handler.fixtures_dir / name, tmp_path / name)
    return FileHandler(fixtures_dir=tmp_path, output_dir=tmp_path / "out")


def test_shipped_fixtures_load(fixtures):
    assert len(fixtures.appendix1) == 1000
    assert fixtures.appendix1[:6] == [-2, -1, 2, 1, 2, -2]
    assert len(fixtures.appendix2) == 64
    assert list(fixtures.appendix2.columns) == ["n", "a", "b", "c", "quarantine"]
    assert fixtures.appendix2["b"].dtype.kind == "i"
    assert len(fixtures.appendix3) == 256
    assert fixtures.appendix3["n"].dtype.kind == "i"


def test_quarantined_rows(fixtures):
    assert fixtures.quarantined == {
        "appendix2": {109: "inconsistent"},
        "appendix3": {
            1: "unscaled",
            269: "inconsistent",
            637: "ordering",
            683: "imaginary",
            749: "asterisk",
        },
    }


def test_checksum_mismatch(fixture_copy):
    path = fixture_copy.fixtures_dir / APPENDIX1_FILE
    path.write_text(path.read_text() + "\n0\n")
    with pytest.raises(FixtureError, match="Checksum mismatch"):
        fixture_copy.verify_checksums()
    with pytest.raises(FixtureError, match="1000 entries"):
        fixture_copy.load_appendix1()


def test_appendix1_rows_hold_23_entries(fixture_copy):
    path = fixture_copy.fixtures_dir / APPENDIX1_FILE
    lines = path.read_text().splitlines()
    # move the first entry of row 2 to the end of row 1: same 1000 entries, wrong layout
    first, second = lines[0].split(), lines[1].split()
    lines[0] = " ".join(first + second[:1])
    lines[1] = " ".join(second[1:])
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(FixtureError, match="row 1 has 24 entries"):
        fixture_copy.load_appendix1()


def test_validate_appendix1_layout():
    rows = [[0] * 23 for _ in range(43)] + [[1] * 11]
    values = validate_appendix1(rows)
    assert len(values) == 1000
    assert values[-11:] == [1] * 11
    with pytest.raises(FixtureError, match="1000 entries"):
        validate_appendix1(rows[:-1])
    with pytest.raises(FixtureError, match="row 42 has 46 entries"):
        validate_appendix1(rows[:41] + [[0] * 46] + [[1] * 11])
    with pytest.raises(FixtureError, match="last row has 34 entries"):
        validate_appendix1(rows[:42] + [[0] * 34])


def test_missing_fixture(fixture_copy):
    (fixture_copy.fixtures_dir / APPENDIX2_FILE).unlink()
    with pytest.raises(FixtureError, match="missing"):
        fixture_copy.load_all()


def test_malformed_manifest(fixture_copy):
    (fixture_copy.fixtures_dir / MANIFEST_FILE).write_text("deadbeef\n")
    with pytest.raises(FixtureError):
        fixture_copy.load_manifest()


def test_fixture_frame_rejects_even_n():
    df = pd.DataFrame({"n": [1, 4], "a": [0, 0], "b": [1, 1], "c": [1, 1]})
    with pytest.raises(FixtureError, match="coprime to 6"):
        validate_fixture_frame(df, ["n", "a", "b", "c"], "table")


def test_fixture_tokens():
    t = branch_scale(create_character("130"))
    sqrt6 = TowerElement.sqrt6()
    assert parse_fixture_token("-7") == -7
    assert parse_fixture_token("*") is None
    assert parse_fixture_token("17t", t) == 17 * t
    assert parse_fixture_token("-15i") == -15 * TowerElement.i()
    assert parse_fixture_token("-2*sqrt6*t", t) == -2 * sqrt6 * t
    assert parse_fixture_token("2*sqrt6") == 2 * sqrt6
    assert parse_fixture_token("4/sqrt6") * sqrt6 == 4
    with pytest.raises(FixtureError):
        parse_fixture_token("7t")
    with pytest.raises(FixtureError):
        parse_fixture_token("7x")


def test_output_path_is_confined(tmp_path):
    handler = FileHandler(output_dir=tmp_path / "out")
    path = handler.write_json("scan.json", {"b_max": 4})
    assert path.parent == (tmp_path / "out").resolve()
    with pytest.raises(FixtureError):
        handler.output_path("../escape.json")


def test_write_dataframe(tmp_path):
    handler = FileHandler(output_dir=tmp_path)
    path = handler.write_dataframe("density.csv", pd.DataFrame({"x": [1000], "zeros": [900]}))
    assert pd.read_csv(path)["zeros"].tolist() == [900]
