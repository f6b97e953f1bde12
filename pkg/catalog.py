"""
catalog.py - Result Catalog Service
===================================

Append-only JSON-lines store for command results. Each record keeps the
digests of its inputs so a later run can re-load the files, recompute the
payload and compare.
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Union

import pandas as pd
from pydantic import ValidationError

from models import CatalogRecord
from rotabaxter.errors import ParseError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def file_digest(path: PathLike) -> str:
    """sha256 of the canonical re-serialization of a JSON document"""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ParseError(f"{path}: cannot digest: {e}", {"file": str(path)})
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def payload_digest(payload: Dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


class CatalogService:
    """
    Servizio catalogo risultati

    Gestisce:
    - Append di record validati (una riga JSON per record)
    - Rilettura e validazione dei record
    - Vista pandas ed export parquet
    """

    def __init__(self, path: PathLike):
        """
        Args:
            path: file JSON-lines; creato al primo append
        """
        self.path = Path(path)

    def append(self, record: CatalogRecord) -> CatalogRecord:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", encoding="utf-8") as fh:
            fh.write(record.model_dump_json() + "\n")
        logger.debug(f"📊 Record {record.operation} aggiunto a {self.path}")
        return record

    def __iter__(self) -> Iterator[CatalogRecord]:
        if not self.path.exists():
            return
        with self.path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    yield CatalogRecord.model_validate_json(line)
                except ValidationError as e:
                    first = e.errors()[0]
                    field = " -> ".join(str(p) for p in first["loc"]) or "(record)"
                    raise ParseError(
                        f"{self.path}: line {lineno}: {field}: {first['msg']}",
                        {"file": str(self.path), "line": lineno, "field": field},
                    )

    def records(self, operation: Optional[str] = None) -> List[CatalogRecord]:
        return [r for r in self if operation is None or r.operation == operation]

    def dataframe(self) -> pd.DataFrame:
        """Flattened records; nested payload keys become dotted columns"""
        rows = [r.model_dump(mode="json") for r in self]
        if not rows:
            return pd.DataFrame(columns=["operation", "created_at"])
        return pd.json_normalize(rows)

    def export(self, target: PathLike) -> Path:
        """
        Writes the flattened catalog to parquet through fastparquet.

        Nested lists are stored as JSON strings.
        """
        target = Path(target)
        df = self.dataframe()
        for column in df.columns:
            if df[column].map(lambda v: isinstance(v, (list, dict))).any():
                df[column] = df[column].map(lambda v: json.dumps(v, sort_keys=True))
        df.to_parquet(target, engine="fastparquet", index=False)
        logger.info(f"✅ Esportati {len(df)} record in {target}")
        return target
