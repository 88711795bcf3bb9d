"""Shared fixtures.

The three large enumerator runs are session-scoped: the B = 10^5 run takes
on the order of a minute and is shared by the strategy-budget test and the
leading-constant fit test.
"""

import pytest

from e6count.enumerator import count_total


@pytest.fixture(scope="session")
def count_1k():
    return count_total(10**3, strategy="residue")


@pytest.fixture(scope="session")
def count_10k():
    return count_total(10**4, strategy="residue")


@pytest.fixture(scope="session")
def count_100k():
    return count_total(10**5, strategy="residue")
