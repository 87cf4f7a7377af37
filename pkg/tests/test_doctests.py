import doctest

import pytest

from popsort import classes, enumeration, machines, perms, preimage, verify, words


@pytest.mark.parametrize("module", [perms, machines, words, preimage, classes, enumeration, verify],
                         ids=lambda m: m.__name__)
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
