import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from germkit.parsing import parse_polynomial
from germkit.poly import WeightVector

VARS4 = ("x", "y", "z", "t")


def P(text: str, variables=VARS4):
    return parse_polynomial(text, variables)


def W(*values, variables=None):
    if variables is None:
        variables = VARS4[: len(values)]
    return WeightVector.for_variables(variables, values)
