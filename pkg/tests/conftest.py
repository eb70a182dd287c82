import numpy as np
import pytest
from hypothesis import settings

from pseudofib import sampling

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture
def rng():
    return sampling.make_rng(12345)
