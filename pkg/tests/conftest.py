import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from crittermine.blocks import TestProgram
from crittermine.board import make_board

TestProgram.__test__ = False  # not a test class, despite the name
from crittermine.fixtures import (
    forked_level,
    ridge_level,
    tutorial_level,
    tutorial_prescribed_mines,
)


@pytest.fixture
def strip_board():
    """3x1 all-dirt corridor, tower at the right end."""
    return make_board(["DDD"], spawn=(1, 1), tower=(3, 1))


@pytest.fixture
def square_board():
    """2x2 all-grass board with two descending routes."""
    return make_board(["GG", "GG"], spawn=(1, 1), tower=(2, 2))


@pytest.fixture
def tutorial():
    return tutorial_level()


@pytest.fixture
def forked():
    return forked_level()


@pytest.fixture
def ridge():
    return ridge_level()


@pytest.fixture
def all_fixture_levels(tutorial, forked, ridge):
    return [tutorial, forked, ridge]


@pytest.fixture
def prescribed_mines():
    return tutorial_prescribed_mines()
