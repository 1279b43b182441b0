import json

import pytest

from markovsum import MarkovStream, check_muc, restore
from markovsum.muc import report_json
from conftest import duplicated_stream


def test_check_muc_smallest_bound():
    report = check_muc(max_value=2)
    assert report.verified_distinct == 2
    assert report.max_value == 2
    assert report.duplicates == []
    assert report.holds


def test_check_muc_matches_brute_force(brute_numbers_1e4):
    report = check_muc(max_value=10**4)
    assert report.holds
    assert report.verified_distinct == len(brute_numbers_1e4)
    assert report.max_value == brute_numbers_1e4[-1]


def test_limit_modes_agree(brute_numbers_1e4):
    by_value = check_muc(max_value=10**4)
    by_count = check_muc(count=len(brute_numbers_1e4))
    assert by_value.verified_distinct == by_count.verified_distinct
    assert by_value.max_value == by_count.max_value
    assert by_value.duplicates == by_count.duplicates


def test_exactly_one_limit_required():
    with pytest.raises(ValueError):
        check_muc()
    with pytest.raises(ValueError):
        check_muc(max_value=10, count=10)
    with pytest.raises(ValueError):
        check_muc(max_value=0)


def test_report_determinism():
    a = check_muc(max_value=10**3).to_dict()
    b = check_muc(max_value=10**3).to_dict()
    a.pop("wall_time_s"), b.pop("wall_time_s")
    assert a == b


def test_report_json_stable_keys():
    text = report_json(check_muc(max_value=100))
    doc = json.loads(text)
    assert list(doc) == sorted(doc)
    assert doc["holds"] is True
    assert doc["limit_kind"] == "max_value"


def test_duplicate_witnesses_recorded():
    report = check_muc(max_value=40, stream=duplicated_stream())
    assert not report.holds
    assert len(report.duplicates) == 2  # forged 13 plus its re-expanded subtree at 34
    first = report.duplicates[0]
    assert first.value == 13
    assert first.first.as_tuple() == (1, 5, 13)
    assert first.second.as_tuple() == (1, 5, 13)
    doc = report.to_dict()
    assert doc["holds"] is False
    assert doc["duplicates"][0]["value"] == 13


def test_count_mode_drains_boundary_duplicates():
    # distinct count reached exactly at a duplicated value: the duplicate
    # must still be surfaced, not cut off by the limit
    report = check_muc(count=4, stream=duplicated_stream())
    assert [w.value for w in report.duplicates] == [13]


def test_checkpointed_stream_continues_counting():
    stream = MarkovStream()
    for _ in range(5):
        stream.next_markov()
    resumed = restore(stream.checkpoint())
    report = check_muc(max_value=10**4, stream=resumed)
    assert report.verified_distinct == check_muc(max_value=10**4).verified_distinct


def test_progress_lines_go_to_stderr(capsys):
    check_muc(count=30, progress=True)
    out, err = capsys.readouterr()
    assert out == ""
    # 30 distinct values arrive well before the 10^4-emission cadence
    assert err == ""
