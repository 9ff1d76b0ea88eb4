import pytest

from scpanneal.instances import ScpInstance


@pytest.fixture
def t1() -> ScpInstance:
    # hand-checkable worked instance: optimum {S1, S3}, cost 0.8
    return ScpInstance(n=2, sets=[{1}, {1, 2}, {2}], weights=(0.5, 0.9, 0.3))


@pytest.fixture
def t2() -> ScpInstance:
    # three identical singleton sets; optimum {S1}, cost 0.2
    return ScpInstance(n=1, sets=[{1}, {1}, {1}], weights=(0.2, 0.5, 0.4))
