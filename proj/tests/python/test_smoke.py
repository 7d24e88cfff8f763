import random

import pytest

import pstray


def test_prev_and_spe_examples():
    assert pstray.prev("yxzAyyyBxzz", "xyz") == [0, 0, 0, "A", 4, 1, 1, "B", 7, 7, 1]
    assert pstray.spe("yxzAyyyBxzz", "xyz") == "xyzAxxxByzz"
    assert pstray.spe(["b", "=", "a"], ["a", "b"]) == ["a", "=", "b"]
    assert pstray.p_match("xyzAxxxByzz", "zxyAzzzBxyy", "xyz")
    assert not pstray.p_match("x", "A", "xyz")


def test_query_examples():
    index = pstray.Index.build("xyzAxxxAyyzAzx", params="xyz", statics="A")
    assert index.query("yAzz") == [3, 7]
    fig2 = pstray.Index.from_spec("zAxAyyxyAxxy", "pi: x y z\nsigma: A\nmode: bytes\n")
    positions, stats = fig2.query_stats("xAyy")
    assert positions == [3, 8]
    assert stats["max_range_searched"] <= 3
    report = fig2.stats()
    assert report["pnodes"] == 5
    assert report["branching_pnodes"] == 2
    assert fig2.check() is None
    assert len(fig2) == 13


def test_token_mode():
    index = pstray.Index.build("foo = bar + foo ;", params=["foo", "bar"], mode="tokens")
    assert index.query(["bar", "=", "foo"]) == [1]
    # under the complement policy an unknown token is a static absent from the text
    assert index.query(["x", "=", "y"]) == []
    assert index.query("bar + bar") == []


def test_errors():
    index = pstray.Index.build("xyAx", params="xy", statics="A")
    with pytest.raises(pstray.Error, match="query error"):
        index.query("")
    with pytest.raises(pstray.Error, match="classification error"):
        pstray.Index.build("xq", params="x", statics="A")
    with pytest.raises(pstray.Error, match="input error"):
        pstray.Index.build("x$", params="x")


def test_save_load_round_trip(tmp_path):
    rng = random.Random(5)
    text = "".join(rng.choice("abcdAB") for _ in range(500))
    index = pstray.Index.build(text, params="abcd", statics="AB")
    path = tmp_path / "random.idx"
    index.save(path)
    back = pstray.Index.load(path)
    assert back.serialize() == index.serialize()
    assert back.text == text
    for _ in range(50):
        start = rng.randrange(len(text) - 8)
        pattern = text[start : start + rng.randint(1, 8)]
        assert back.query(pattern) == index.query(pattern) == index.scan(pattern)
    with pytest.raises(pstray.Error, match="load error"):
        pstray.Index.deserialize(index.serialize()[:-3])
