import pytest

from fricke import kernels, modfunc
from fricke import families

BACKENDS = sorted(kernels.available_backends())


def _reset():
    modfunc.clear_caches()
    families._generator_series.cache_clear()


@pytest.fixture(params=BACKENDS)
def backend(request):
    """Run the test once per importable kernel backend."""
    prev = kernels.use_backend(request.param)
    _reset()
    yield request.param
    kernels.use_backend(prev)
    _reset()
