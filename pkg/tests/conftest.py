import pytest

from finite_groups import cyclic_group, parse_group_spec, symmetric_group, trivial_group
from qseries import j_expansion


@pytest.fixture(scope="session")
def j40():
    return j_expansion(40)


@pytest.fixture(scope="session")
def j60():
    return j_expansion(60)


@pytest.fixture(scope="session")
def j72():
    """T_6 需要 72 阶才能保留 12 项。"""
    return j_expansion(72)


@pytest.fixture
def trivial():
    return trivial_group()


@pytest.fixture
def z2():
    return cyclic_group(2)


@pytest.fixture
def s3():
    return symmetric_group(3)


SMALL_GROUPS = ["1", "Z/2", "Z/3", "Z/2xZ/2", "S3"]


@pytest.fixture(params=SMALL_GROUPS)
def small_group(request):
    return parse_group_spec(request.param)
