import os
import sys

import hypothesis
import pytest

sys.path.insert(0, os.path.dirname(__file__))

hypothesis.settings.register_profile("default", deadline=None, max_examples=100)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.register_profile("thorough", deadline=None, max_examples=1000)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def paper_set():
    from mubcert.bentset import paper_bent_set_h2
    return paper_bent_set_h2()


@pytest.fixture(scope="session")
def kerdock():
    from mubcert.bentset import kerdock_construct
    cache = {}

    def get(h):
        if h not in cache:
            cache[h] = kerdock_construct(h)
        return cache[h]
    return get
