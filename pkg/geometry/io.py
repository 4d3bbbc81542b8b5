import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
import pandas as pd

from geometry.domain import DomainRegion
from geometry.points import PointSet
from utils.errors import InvalidInputError


def write_pointset(X: PointSet, path: Union[str, Path], provenance: Optional[Dict[str, Any]] = None) -> None:
    """Write one point per line with 17 significant digits under a ``# d=<dim>`` header.

    A ``provenance`` mapping is stored as a second comment line ``# provenance=<json>``.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(X.points)
    with path.open("w", newline="") as f:
        f.write(f"# d={X.dim}\n")
        if provenance is not None:
            f.write(f"# provenance={json.dumps(provenance, sort_keys=True)}\n")
        frame.to_csv(f, header=False, index=False, float_format="%.17g", lineterminator="\n")


def read_pointset(path: Union[str, Path], domain: DomainRegion, d: Optional[int] = None) -> PointSet:
    path = Path(path)
    with path.open() as f:
        first = f.readline().strip()
    if first.startswith("#") and "d=" in first:
        d = int(first.split("d=", 1)[1])
    frame = pd.read_csv(path, comment="#", header=None, float_precision="round_trip")
    points = frame.to_numpy(dtype=float)
    if d is not None and points.shape[1] != d:
        raise InvalidInputError(f"{path} declares d={d} but has {points.shape[1]} columns")
    return PointSet(np.asarray(points), domain)


def read_provenance(path: Union[str, Path]) -> Optional[Dict[str, Any]]:
    """The ``# provenance=`` comment of a CSV written by this package, if any."""
    with Path(path).open() as f:
        for line in f:
            if not line.startswith("#"):
                break
            if line.startswith("# provenance="):
                return json.loads(line[len("# provenance=") :])
    return None
