import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from teapot import dataset


@pytest.fixture(scope="session")
def cloud_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("clouds")


@pytest.fixture(scope="session")
def omega_cloud_16(cloud_dir):
    path = cloud_dir / "omega16.csv"
    dataset.build_point_cloud("periodic", 16, str(path))
    return str(path)


@pytest.fixture(scope="session")
def teapot_cloud_18(cloud_dir):
    path = cloud_dir / "teapot18.csv"
    dataset.build_point_cloud("teapot", 18, str(path))
    return str(path)


@pytest.fixture(scope="session")
def pre_cloud_14(cloud_dir):
    path = cloud_dir / "pre14.csv"
    dataset.build_point_cloud("preperiodic", 14, str(path))
    return str(path)


@pytest.fixture(scope="session")
def omega_cloud_14(cloud_dir):
    path = cloud_dir / "omega14.csv"
    dataset.build_point_cloud("periodic", 14, str(path))
    return str(path)


@pytest.fixture(scope="session")
def admissible_words_12():
    return list(dataset.enumerate_admissible(12))
