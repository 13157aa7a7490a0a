import os

import pytest


def pytest_collection_modifyitems(config, items):
    if os.environ.get("FROBERG_HEAVY") == "1":
        return
    skip = pytest.mark.skip(reason="heavy verification run; set FROBERG_HEAVY=1")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)
