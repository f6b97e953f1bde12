"""
config.py - Workspace configuration
===================================

Search bounds, catalog location and reproducibility seed. Defaults live in
DEFAULT_CONFIG; a JSON file named by ROTABAXTER_CONFIG and a handful of
environment variables override them.
"""
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ParseError

logger = logging.getLogger(__name__)

# Default workspace configuration
DEFAULT_CONFIG: Dict[str, Any] = {
    "hom_search_bound": 24,          # |G1| for Hom(G1, G2) backtracking
    "operator_search_bound": 8,      # |H|, |G| for operator enumeration
    "isoclinism_search_bound": 16,   # quotient / commutator orders
    "cocycle_variable_bound": 10_000,
    "oracle_candidate_bound": 1 << 16,
    "parallelism": 1,
    "catalog_path": "catalog.jsonl",
    "seed": 20240601,
    "debug": False,
}

# Environment overrides: variable -> config key
ENV_OVERRIDES = {
    "ROTABAXTER_DEBUG": "debug",
    "ROTABAXTER_CATALOG": "catalog_path",
    "ROTABAXTER_SEED": "seed",
    "ROTABAXTER_WORKERS": "parallelism",
}


class WorkspaceConfig(BaseModel):
    """
    Validated configuration shared by the library and the CLI.
    """
    hom_search_bound: int = Field(
        DEFAULT_CONFIG["hom_search_bound"],
        description="Largest domain order accepted by enumerate_homs",
        examples=[24],
    )
    operator_search_bound: int = Field(
        DEFAULT_CONFIG["operator_search_bound"],
        description="Largest |H| and |G| for relative Rota-Baxter operator enumeration",
        examples=[8],
    )
    isoclinism_search_bound: int = Field(
        DEFAULT_CONFIG["isoclinism_search_bound"],
        description="Largest quotient/commutator order explored by isoclinism searches",
        examples=[16],
    )
    cocycle_variable_bound: int = Field(
        DEFAULT_CONFIG["cocycle_variable_bound"],
        description="Largest number of cochain coordinates in one linear system",
        examples=[10_000],
    )
    oracle_candidate_bound: int = Field(
        DEFAULT_CONFIG["oracle_candidate_bound"],
        description="Largest number of tables a brute-force oracle may enumerate",
        examples=[65536],
    )
    parallelism: int = Field(
        DEFAULT_CONFIG["parallelism"],
        description="Worker processes for catalog sweeps",
        examples=[1, 4],
    )
    catalog_path: str = Field(
        DEFAULT_CONFIG["catalog_path"],
        description="Append-only JSON-lines result catalog",
        examples=["catalog.jsonl"],
    )
    seed: int = Field(
        DEFAULT_CONFIG["seed"],
        description="Seed for randomized checks, recorded in every result",
        examples=[20240601],
    )
    debug: bool = Field(
        DEFAULT_CONFIG["debug"],
        description="Check Smith normal form postconditions on every call",
    )

    @field_validator(
        "hom_search_bound",
        "operator_search_bound",
        "isoclinism_search_bound",
        "cocycle_variable_bound",
        "oracle_candidate_bound",
        "parallelism",
    )
    @classmethod
    def _positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("bounds must be positive")
        return value


def load_config(path: Optional[Union[str, Path]] = None) -> WorkspaceConfig:
    """
    Build the configuration: defaults, then file, then environment.

    Args:
        path: JSON file; falls back to $ROTABAXTER_CONFIG when omitted

    Returns:
        WorkspaceConfig validated

    Raises:
        ParseError: unreadable file or invalid values
    """
    load_dotenv()
    data = DEFAULT_CONFIG.copy()

    path = path or os.getenv("ROTABAXTER_CONFIG")
    if path:
        try:
            data.update(json.loads(Path(path).read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError) as e:
            raise ParseError(f"{path}: cannot read config: {e}", {"path": str(path)})
        logger.info(f"⚙️ Config caricata da {path}")

    for env_name, key in ENV_OVERRIDES.items():
        raw = os.getenv(env_name)
        if raw is not None:
            data[key] = raw.lower() in ("1", "true", "yes") if key == "debug" else raw

    try:
        return WorkspaceConfig(**data)
    except ValidationError as e:
        first = e.errors()[0]
        field = " -> ".join(str(p) for p in first["loc"])
        raise ParseError(f"config: {field}: {first['msg']}", {"field": field})


_active: Optional[WorkspaceConfig] = None


def get_config() -> WorkspaceConfig:
    """Active configuration (loaded lazily from defaults and environment)"""
    global _active
    if _active is None:
        _active = load_config()
    return _active


def set_config(config: WorkspaceConfig) -> None:
    global _active
    _active = config
