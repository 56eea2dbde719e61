import functools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from quivercrystal import build_ar, parse_quiver


@functools.lru_cache(maxsize=None)
def ar_of(spec: str):
    return build_ar(parse_quiver(spec))


A3_LINEAR = "A3: 3->2, 2->1"
A3_MIDDLE = "A3: 2->1, 2->3"
A2 = "A2: 2->1"
