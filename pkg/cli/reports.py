import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from cli.config import ExperimentConfig, config_hash
from cli.settings import cli_settings
from diagnostics.fits import RateReport, report_to_frame
from geometry.footprint import Footprint
from interpolation.lagrange import BasisVariant, LagrangeFunction
from kernels.spec import KernelSpec
from localization.local import LocalLagrange
from utils.errors import InvalidInputError


def provenance(config: ExperimentConfig) -> Dict[str, Any]:
    return {
        "config": config.provenance_dump(),
        "config_sha256": config_hash(config),
        "seed": config.seed,
        "version": cli_settings.version,
    }


def write_json(path: Path, payload: Dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def read_json(path: Path) -> Dict[str, Any]:
    if not path.exists():
        raise InvalidInputError(f"missing input file {path}")
    return json.loads(path.read_text())


def _footprint_record(f: LagrangeFunction) -> Optional[Dict[str, Any]]:
    if isinstance(f, LocalLagrange):
        fp: Footprint = f.footprint
        return {"member_indices": fp.member_indices.tolist(), "radius": fp.radius, "K": fp.K}
    if f.variant == BasisVariant.TRUNCATED:
        return {"member_indices": f.support.tolist()}
    return None


def basis_record(f: LagrangeFunction) -> Dict[str, Any]:
    return {
        "center_index": int(f.center),
        "support_indices": f.support.tolist(),
        "kernel_coeffs": f.kernel_coeffs.tolist(),
        "poly_coeffs": f.poly_coeffs.tolist(),
        "variant": f.variant.value,
        "condition": float(f.condition),
        "footprint": _footprint_record(f),
    }


def write_basis_dump(
    path: Path, functions: Sequence[LagrangeFunction], config: ExperimentConfig, extra: Dict[str, Any]
) -> None:
    write_json(path, {"provenance": provenance(config), **extra, "functions": [basis_record(f) for f in functions]})


def read_basis_dump(path: Path, spec: KernelSpec, points: np.ndarray) -> List[LagrangeFunction]:
    """Rebuild the Lagrange functions of a dump over the point array it was built on."""
    dump = read_json(path)
    functions = []
    for record in dump["functions"]:
        support = np.asarray(record["support_indices"], dtype=int)
        functions.append(
            LagrangeFunction(
                spec=spec,
                centers=points[support],
                kernel_coeffs=np.asarray(record["kernel_coeffs"], dtype=float),
                poly_coeffs=np.asarray(record["poly_coeffs"], dtype=float),
                center=int(record["center_index"]),
                support=support,
                variant=BasisVariant(record["variant"]),
                condition=float(record.get("condition", 1.0)),
            )
        )
    return functions


def write_report(directory: Path, report: RateReport, config: ExperimentConfig) -> Path:
    """Write ``<name>.json`` and the ``<name>.csv`` sample table, both carrying the provenance block."""
    path = directory / f"{report.name}.json"
    write_json(path, {"provenance": provenance(config), "report": report.model_dump(mode="json", by_alias=True)})
    with (directory / f"{report.name}.csv").open("w", newline="") as f:
        f.write(f"# provenance={json.dumps(provenance(config), sort_keys=True)}\n")
        report_to_frame(report).to_csv(f, index=False, float_format="%.17g", lineterminator="\n")
    return path
