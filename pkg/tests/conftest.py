import pytest
from hypothesis import HealthCheck, settings

from dvre import DvreNode, load_config, wallet_from_private_key

# 2024-03-26 00:00:00 UTC; the member window and simulated clock steps in the
# scenario tests all hang off this origin.
GENESIS = 1_711_411_200
WINDOW_FROM = 1_711_497_600        # 2024-03-27 00:00:00
WINDOW_TO = 1_711_756_799          # 2024-03-29 23:59:59
INSIDE_WINDOW = 1_711_627_200      # 2024-03-28 12:00:00
AFTER_WINDOW = 1_711_765_000       # 2024-03-30 02:16:40

settings.register_profile(
    "local",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("local")


def wallet_of(index: int):
    """Deterministic wallet #index; stable addresses across test runs."""
    return wallet_from_private_key(index.to_bytes(32, "big"))


@pytest.fixture
def node(tmp_path):
    config = load_config(None, data_dir=str(tmp_path / "data"),
                         genesis_time=GENESIS, allow_time_travel=True)
    built = DvreNode(config)
    yield built
    built.close()


@pytest.fixture
def alice():
    return wallet_of(1)


@pytest.fixture
def bob():
    return wallet_of(2)


@pytest.fixture
def carol():
    return wallet_of(3)
