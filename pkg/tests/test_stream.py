import numpy as np
import pytest

from streamscale.stream import (LinkStream, ParseError, parse_konect, parse_tsv,
                                stream_summary, write_tsv)


def test_single_line_normalization():
    s = parse_tsv("a b 100\n")
    assert s.node_count == 2
    assert s.horizon == 1
    assert s.t_origin == 100
    assert list(s.events()) == [(0, 1, 0)]


def test_duplicate_removal():
    s = parse_tsv("a b 5\na b 5\n")
    assert s.event_count == 1
    assert s.duplicates_dropped == 1
    assert s.raw_event_count == 2


def test_labels_first_appearance_order():
    s = parse_tsv("b a 3\nc a 1\n")
    assert s.labels == ("b", "a", "c")
    # events re-sorted by (t, u, v) after mapping
    assert list(s.events()) == [(1, 2, 0), (0, 1, 2)]


def test_undirected_mirror_events_collapse():
    assert parse_tsv("a b 5\nb a 5\n").event_count == 1
    assert parse_tsv("a b 5\nb a 5\n", directed=True).event_count == 2


def test_self_loops_dropped_and_counted():
    s = parse_tsv("a a 5\na b 6\n")
    assert s.event_count == 1
    assert s.self_loops_dropped == 1


def test_label_only_in_self_loops_gets_no_id():
    s = parse_tsv("c c 5\na b 6\n")
    assert s.labels == ("a", "b")


def test_comments_and_extra_fields_ignored():
    s = parse_tsv("# header\n% other\na b 1 extra stuff\n")
    assert s.event_count == 1


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError, match="line 2"):
        parse_tsv("a b 1\na b xyz\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_tsv("a b\n")
    with pytest.raises(ParseError):
        parse_tsv("# nothing\n")


def test_konect_two_line_file():
    s = parse_konect("% meta\n1 2 1 10\n2 3 1 11\n")
    assert s.node_count == 3
    assert s.event_count == 2
    assert s.horizon == 2


def test_konect_untimestamped_rejected():
    with pytest.raises(ParseError, match="untimestamped"):
        parse_konect("1 2\n2 3\n")
    with pytest.raises(ParseError, match="untimestamped"):
        parse_konect("1 2 1\n")


def test_normalized_time_range():
    s = parse_tsv("a b 50\nb c 90\na c 70\n")
    assert int(s.t.min()) == 0
    assert int(s.t.max()) == s.horizon - 1


def test_roundtrip_identity():
    text = "a b 50\nb c 90\na c 70\nc d 90\n"
    s1 = parse_tsv(text, directed=True)
    s2 = parse_tsv(write_tsv(s1), directed=True)
    assert s1 == s2


def test_dedup_idempotent():
    text = "a b 5\nb c 9\na c 7\n"
    once = parse_tsv(text)
    twice = parse_tsv(text + text)
    assert once == twice
    assert twice.duplicates_dropped == 3


def test_constructor_rejects_bad_invariants():
    with pytest.raises(ValueError):
        LinkStream([0], [0], [0], ["a"], 1)  # self loop
    with pytest.raises(ValueError):
        LinkStream([5], [0], [1], ["a", "b"], 3)  # t >= horizon
    with pytest.raises(ValueError):
        LinkStream([0], [0], [1], ["a", "b", "c"], 1)  # non-dense ids
    with pytest.raises(ValueError):
        LinkStream([1, 0], [0, 0], [1, 1], ["a", "b"], 2)  # unsorted


def test_summary_single_event_one_day():
    s = LinkStream.from_events([(0, 1, 0)], labels=["a", "b"], horizon=86400,
                               normalize_times=False)
    summary = stream_summary(s)
    assert summary.activity_per_person_day == pytest.approx(0.5)
    assert summary.mean_inter_contact_s == pytest.approx(86400.0)
    assert summary.horizon_days == pytest.approx(1.0)
