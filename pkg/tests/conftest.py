from __future__ import annotations

import pytest

from schemamatch import parse_dataset

VEG_SOURCE_CSV = """u_heightCode,treesp_3
8,Eucalyptus rossii
0,Eucalyptus bridgesiana
2,Allocasuarina verticillata
"""

VEG_DEST_CSV = """u_height_class,u_species_3
0,Eucalyptus bridgesiana
1,Atalaya hemiglauca
5,Pomaderris aspera
"""


@pytest.fixture
def veg_source():
    return parse_dataset(VEG_SOURCE_CSV, "state")


@pytest.fixture
def veg_dest():
    return parse_dataset(VEG_DEST_CSV, "registry")
