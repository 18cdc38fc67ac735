import importlib

import pytest

from sunrise import _pykernels

BACKENDS = [pytest.param(_pykernels, id="python")]
try:
    BACKENDS.append(pytest.param(importlib.import_module("sunrise._ckernels"), id="cython"))
except ImportError:
    BACKENDS.append(pytest.param(None, id="cython", marks=pytest.mark.skip("extension not built")))


@pytest.fixture(params=BACKENDS)
def kernels(request):
    return request.param
