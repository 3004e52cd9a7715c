from __future__ import annotations

import pytest

from fbt import EntryMode, ScreenGeometry, build_layout


@pytest.fixture(scope="session")
def geometry():
    return ScreenGeometry(480, 800)


@pytest.fixture(scope="session")
def single_layout(geometry):
    return build_layout(geometry, EntryMode.SINGLE_DIGIT)


@pytest.fixture(scope="session")
def double_layout(geometry):
    return build_layout(geometry, EntryMode.DOUBLE_DIGIT)
