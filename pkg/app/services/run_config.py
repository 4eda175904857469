import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from app.middleware.error import InputOutputError, ValidationFailure
from app.schemas import RunConfig, TableSource
from app.services.potentials import load_table

logger = logging.getLogger(__name__)

# Flags that describe the potential rather than the run
POTENTIAL_KEYS = ("q", "lc", "omega", "a", "x1", "v0", "table", "order", "offset")


def load_config_file(path: str) -> Dict[str, Any]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputOutputError(f"cannot read config file {path}: {exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationFailure(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ValidationFailure(f"config file {path} must hold a JSON object")
    return data


def merge_config(file_config: Dict[str, Any], flags: Dict[str, Any]) -> Dict[str, Any]:
    """
    Overlay command-line flags (None means unset) on the file config.
    Potential flags go into the nested potential block; --potential names
    its family and --wells is shared with the potential.
    """
    merged = dict(file_config)
    potential = dict(merged.get("potential") or {})

    family = flags.get("potential")
    if family is not None and potential.get("family") not in (None, family):
        # a different family from the command line replaces the file's block
        potential = {}
    if family is not None:
        potential["family"] = family

    for key, value in flags.items():
        if value is None or key == "potential":
            continue
        if key in POTENTIAL_KEYS:
            potential[key] = value
        else:
            merged[key] = value

    if potential:
        if "wells" in merged and potential.get("family") in ("cosine", "parabolic-chain"):
            potential["wells"] = merged["wells"]
        if potential.get("family") == "parabolic-chain":
            # the chain's m omega^2 and the run mass are one mass; a --mass flag wins
            if flags.get("mass") is not None:
                potential["mass"] = flags["mass"]
            elif merged.get("mass") is not None:
                potential.setdefault("mass", merged["mass"])
        merged["potential"] = potential
    return merged


def _resolve_table(potential: Dict[str, Any]) -> Dict[str, Any]:
    if potential.get("family") != "tabulated" or "table" not in potential:
        return potential
    source = TableSource.model_validate(potential)
    spec = load_table(source.table, order=source.order)
    return spec.model_dump()


def build_run_config(command: str, flags: Dict[str, Any], config_path: Optional[str] = None) -> RunConfig:
    file_config = load_config_file(config_path) if config_path else {}
    merged = merge_config(file_config, flags)
    merged["command"] = command
    if merged.get("potential"):
        merged["potential"] = _resolve_table(merged["potential"])
    config = RunConfig.model_validate(merged)
    logger.debug(f"Run config: {config.model_dump(exclude_none=True)}")
    return config
