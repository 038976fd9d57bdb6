import pytest

from backend.services.pipeline import ScanPipeline, _scan_task
from backend.services.response_builder import format_lacunary_summary
from backend.utils.exceptions import ParseError, UnsupportedInstanceError
from config.settings import settings


@pytest.fixture
def pipeline():
    return ScanPipeline(jobs=1, progress=False)


@pytest.mark.asyncio
async def test_scan_small_range(pipeline):
    report = await pipeline.run_scan(6)
    assert [v["b"] for v in report["verdicts"]] == [1, 2, 3, 4, 5, 6]
    assert report["lacunary"] == [1, 2, 3, 4]
    assert report["summary"] == "lacunary: {1,2,3,4}"
    assert report["errors"] == []
    assert report["mode"] == "adaptive"


@pytest.mark.asyncio
async def test_empty_scan(pipeline):
    report = await pipeline.run_scan(0)
    assert report["verdicts"] == []
    assert report["summary"] == "lacunary: {}"


@pytest.mark.asyncio
async def test_scan_limits(pipeline):
    with pytest.raises(UnsupportedInstanceError):
        await pipeline.run_scan(settings.B_LIMIT + 1)
    with pytest.raises(ParseError):
        await pipeline.run_scan(-1)


def test_scan_task_records_errors():
    record = _scan_task(5, "sideways", None, None)
    assert not record["success"]
    assert record["b"] == 5
    assert record["error_type"] == "ValueError"


@pytest.mark.asyncio
async def test_witness_search_over_lacunary_b(pipeline, euler_table):
    report = await pipeline.run_witness_search(1, 4, euler_table)
    assert report["found"] == {}
    assert report["missing"] == [1, 2, 3, 4]
    assert report["inconclusive"] == []


def test_lacunary_summary():
    assert format_lacunary_summary([16, 1, 4, 3, 2]) == "lacunary: {1,2,3,4,16}"
