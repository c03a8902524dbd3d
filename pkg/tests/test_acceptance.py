"""One check per acceptance criterion; each prints its pass/fail line."""

import pytest

from cousinet.acceptance import CRITERIA, run_one


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    r = run_one(k)
    print(r.line())
    assert r.ok, r.detail
