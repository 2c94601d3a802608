import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    # never touch the user's real cache from the test suite
    old = os.environ.get("RECTMAC_CACHE_DIR")
    os.environ["RECTMAC_CACHE_DIR"] = str(tmp_path_factory.mktemp("rectmac-cache"))
    yield
    if old is None:
        os.environ.pop("RECTMAC_CACHE_DIR", None)
    else:
        os.environ["RECTMAC_CACHE_DIR"] = old
