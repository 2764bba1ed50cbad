import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from course_fixture import course_model  # noqa: E402


@pytest.fixture
def course():
    return course_model()
