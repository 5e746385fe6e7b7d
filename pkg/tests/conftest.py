import pytest

from matchpoint import PatternSet, _kernels


@pytest.fixture
def sample_patterns():
    """Four keywords with shared prefixes and an embedded sub-pattern."""
    return PatternSet([b"AB", b"ABG", b"BEDE", b"ED"])


@pytest.fixture(params=["python", "native"])
def backend(request):
    """Run the test under each kernel backend."""
    if request.param == "native" and _kernels._native is None:
        pytest.skip("compiled backend not built")
    previous = _kernels.active_backend()
    _kernels.use_backend(request.param)
    yield request.param
    _kernels.use_backend(previous)
