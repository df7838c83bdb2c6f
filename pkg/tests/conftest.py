import pytest
from hypothesis import HealthCheck, settings

from khcable.corpus import CORPUS

settings.register_profile("khcable", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("khcable")


@pytest.fixture(params=sorted(CORPUS))
def corpus_item(request):
    return request.param, CORPUS[request.param]
