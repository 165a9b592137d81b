import pytest

from superdirac.golden import EXAMPLES


@pytest.mark.parametrize("example", EXAMPLES, ids=[e.__name__ for e in EXAMPLES])
def test_example(example):
    for rec in example():
        assert rec["status"] == "pass", rec
