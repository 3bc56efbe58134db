import pytest

# Hand-checked worked example: one village and its seven neighbors, with
# the weights the village assigns to each neighbor given as inputs.
# Weighted expectation: .41*.14 + .26*.15 + .08*.61 + .07*.56 + .07*.41
#                      + .06*.64 + .05*.61 = 0.282
# Uniform expectation:  (.14+.15+.61+.56+.41+.64+.61)/7 = 3.12/7
VILLAGE_VALUES = {
    "27": 0.26,
    "29": 0.14,
    "28": 0.15,
    "21": 0.61,
    "39": 0.56,
    "13": 0.41,
    "30": 0.64,
    "42": 0.61,
}
VILLAGE_WEIGHTS = {
    "29": 0.41,
    "28": 0.26,
    "21": 0.08,
    "39": 0.07,
    "13": 0.07,
    "30": 0.06,
    "42": 0.05,
}


@pytest.fixture
def village_values():
    return dict(VILLAGE_VALUES)


@pytest.fixture
def village_weights():
    return dict(VILLAGE_WEIGHTS)
