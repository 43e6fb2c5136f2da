import pytest

from trunsym.exact_linalg import GF, QQ

FIELDS = [QQ, GF(2), GF(3), GF(5)]


@pytest.fixture(params=FIELDS, ids=lambda F: F.name)
def field(request):
    return request.param
