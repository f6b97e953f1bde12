"""
models.py - Pydantic Models
===========================

File formats (group, RRB group, module, cocycle) and the catalog record.
Every document carries a schema_version; load_* helpers turn the validated
documents into library objects and report parse failures as ParseError
naming the file, the field path and, for JSON syntax errors, the line.
"""
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from rotabaxter.cohomology import Cocycle4, TrivialRRBModule
from rotabaxter.errors import ParseError, ShapeMismatch
from rotabaxter.groups import FiniteGroup, build_group
from rotabaxter.rrb import RRBGroup, verify_rrb

SCHEMA_VERSION = 1

PathLike = Union[str, Path]
M = TypeVar("M", bound=BaseModel)


class GroupFile(BaseModel):
    """
    Cayley table with the identity at index 0.
    """
    schema_version: int = Field(SCHEMA_VERSION, description="File format version", examples=[1])
    name: str = Field(..., description="Display name", examples=["Z3"])
    order: int = Field(..., description="Number of elements", examples=[3])
    table: List[List[int]] = Field(
        ...,
        description="table[a][b] = index of a*b",
        examples=[[[0, 1, 2], [1, 2, 0], [2, 0, 1]]],
    )

    @field_validator("order")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("order must be positive")
        return value

    @model_validator(mode="after")
    def _square(self) -> "GroupFile":
        if len(self.table) != self.order:
            raise ValueError(f"table has {len(self.table)} rows, expected {self.order}")
        for i, row in enumerate(self.table):
            if len(row) != self.order:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.order}")
        return self


class RRBFile(BaseModel):
    """
    (H, G, phi, R); H and G are paths relative to this file.
    """
    schema_version: int = Field(SCHEMA_VERSION, description="File format version", examples=[1])
    name: str = Field("", description="Display name", examples=["trivial_z2"])
    H: str = Field(..., description="Group file of H", examples=["z2.json"])
    G: str = Field(..., description="Group file of G", examples=["z2.json"])
    phi: List[List[int]] = Field(..., description="|G| rows: phi[g][h] = phi_g(h)", examples=[[[0, 1], [0, 1]]])
    R: List[int] = Field(..., description="|H| indices into G", examples=[[0, 1]])


class ModuleFile(BaseModel):
    """
    Trivial coefficient pair K = ⊕ Z/K_i, L = ⊕ Z/L_j with S as a matrix.
    """
    schema_version: int = Field(SCHEMA_VERSION, description="File format version", examples=[1])
    name: str = Field("", description="Display name", examples=["Z2 pair"])
    K: List[int] = Field(default_factory=list, description="Cyclic factors of K", examples=[[2]])
    L: List[int] = Field(default_factory=list, description="Cyclic factors of L", examples=[[2]])
    S: Optional[List[List[int]]] = Field(
        None,
        description="dL x dK matrix of S; identity-like when omitted",
        examples=[[[1]]],
    )

    def to_module(self) -> TrivialRRBModule:
        if self.S is None:
            S = np.eye(len(self.L), len(self.K), dtype=np.int64)
        else:
            S = self.S
        return TrivialRRBModule(self.K, self.L, S, self.name)


class CocycleFile(BaseModel):
    """
    Four flat integer arrays, reshaped against the RRB group and the module.
    """
    schema_version: int = Field(SCHEMA_VERSION, description="File format version", examples=[1])
    K: List[int] = Field(..., description="Moduli of K coordinates", examples=[[2]])
    L: List[int] = Field(..., description="Moduli of L coordinates", examples=[[2]])
    tau1: List[int] = Field(..., description="m*m*dK values")
    tau2: List[int] = Field(..., description="n*n*dL values")
    rho: List[int] = Field(..., description="m*n*dK values")
    chi: List[int] = Field(..., description="m*dL values")

    def to_cocycle(self, rrb: RRBGroup, module: TrivialRRBModule) -> Cocycle4:
        """
        Raises:
            ShapeMismatch: moduli or array lengths disagree with rrb/module
        """
        if tuple(self.K) != module.K or tuple(self.L) != module.L:
            raise ShapeMismatch("cocycle moduli differ from the module", {"K": self.K, "L": self.L})
        m, n, dK, dL = rrb.H.order, rrb.G.order, module.dK, module.dL
        shapes = {"tau1": (m, m, dK), "tau2": (n, n, dL), "rho": (m, n, dK), "chi": (m, dL)}
        arrays = {}
        for name, shape in shapes.items():
            values = getattr(self, name)
            if len(values) != int(np.prod(shape)):
                raise ShapeMismatch(f"{name} has {len(values)} values, expected {int(np.prod(shape))}", {"field": name})
            arrays[name] = np.array(values, dtype=np.int64).reshape(shape)
        return Cocycle4(**arrays)

    @classmethod
    def from_cocycle(cls, c: Cocycle4, module: TrivialRRBModule) -> "CocycleFile":
        return cls(
            K=list(module.K),
            L=list(module.L),
            **{name: np.asarray(getattr(c, name)).ravel().tolist() for name in Cocycle4.FIELDS},
        )


class CatalogRecord(BaseModel):
    """
    One line of the append-only result catalog.
    """
    schema_version: int = Field(SCHEMA_VERSION, description="Record format version", examples=[1])
    operation: str = Field(..., description="Subcommand that produced the record", examples=["multiplier"])
    digests: Dict[str, str] = Field(
        default_factory=dict,
        description="sha256 of every input file, keyed by argument name",
        examples=[{"rrb": "3f1c..."}],
    )
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Bounds, flags, seed")
    result: Dict[str, Any] = Field(default_factory=dict, description="Deterministic result payload")
    tool_version: str = Field(..., description="rotabaxter version", examples=["0.3.0"])
    seed: int = Field(..., description="Seed recorded for reproducibility", examples=[20240601])
    created_at: datetime = Field(
        default_factory=lambda: datetime.now(timezone.utc),
        description="Timestamp (UTC), excluded from determinism checks",
    )


# ===== LOADING =====

def read_json(path: PathLike) -> Any:
    """
    Raises:
        ParseError: unreadable file, or a JSON syntax error with its line
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: cannot read: {e.strerror}", {"file": str(path)})
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno}: {e.msg}", {"file": str(path), "line": e.lineno})


def _parse(path: PathLike, model: Type[M]) -> M:
    data = read_json(path)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = " -> ".join(str(p) for p in first["loc"]) or "(document)"
        raise ParseError(f"{path}: {field}: {first['msg']}", {"file": str(path), "field": field})


def _check_version(path: PathLike, doc: BaseModel) -> None:
    version = getattr(doc, "schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"{path}: unsupported schema_version {version}", {"file": str(path)})


def load_document(path: PathLike, model: Type[M]) -> M:
    doc = _parse(path, model)
    _check_version(path, doc)
    return doc


def load_group(path: PathLike) -> FiniteGroup:
    """Group file -> validated FiniteGroup (group axioms checked by build_group)"""
    doc = load_document(path, GroupFile)
    return build_group(doc.table, doc.name)


def load_rrb(path: PathLike) -> RRBGroup:
    """
    RRB file -> RRBGroup through verify_rrb.

    Raises:
        ParseError: unreadable or malformed files
        AlgebraError: the data fails the RRB axioms
    """
    path = Path(path)
    doc = load_document(path, RRBFile)
    H = load_group(path.parent / doc.H)
    G = load_group(path.parent / doc.G)
    return verify_rrb(H, G, doc.phi, doc.R, doc.name or path.stem)


def load_module(path: PathLike) -> TrivialRRBModule:
    return load_document(path, ModuleFile).to_module()


def load_cocycle(path: PathLike, rrb: RRBGroup, module: TrivialRRBModule) -> Cocycle4:
    return load_document(path, CocycleFile).to_cocycle(rrb, module)


def group_document(group: FiniteGroup) -> GroupFile:
    return GroupFile(name=group.name, order=group.order, table=group.table.tolist())
