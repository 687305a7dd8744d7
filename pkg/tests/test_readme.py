import doctest
from pathlib import Path

README = Path(__file__).parent.parent / "README.md"


def test_readme_session():
    result = doctest.testfile(str(README), module_relative=False)
    assert result.attempted > 0 and result.failed == 0
