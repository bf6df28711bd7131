import pytest


@pytest.fixture(autouse=True)
def add_standard_imports(doctest_namespace):
    import numpy as np
    import xarray as xr

    import kirbykit

    doctest_namespace["np"] = np
    doctest_namespace["xr"] = xr
    doctest_namespace["kirbykit"] = kirbykit

    # always seed numpy.random to make the examples deterministic
    np.random.seed(0)
