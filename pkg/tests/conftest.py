import json

import pytest

from multipole import ChargeCluster, PointCharge


@pytest.fixture
def asymmetric_cluster():
    return ChargeCluster((
        PointCharge(2.0, 0.5, 0.1),
        PointCharge(-1.0, -0.4, 0.3),
        PointCharge(0.5, 0.1, -0.6),
    ))


@pytest.fixture
def cluster_file(tmp_path):
    """Writes a cluster JSON document and returns its path"""

    def write(data, name="cluster.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    return write
