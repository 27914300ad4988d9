"""Acceptance criteria 1-8 and the weak poset-minimality check, one line each."""

import json

import pytest

from symblob.acceptance import CRITERIA, run


@pytest.mark.parametrize("key", list(CRITERIA))
def test_criterion(key, capsys):
    result = run(key)
    with capsys.disabled():
        print("\n" + result.line())
    json.dumps(result.to_json())
    assert result.passed, json.dumps([c.__dict__ for c in result.failures()], default=str, indent=1)
