"""
main.py - rotabaxter command line
=================================

Entry point with:
- configurazione da .env, file JSON e variabili d'ambiente
- un sottocomando per ogni operazione (verify, h2, multiplier, cover,
  isoclinic, ybe, survey, report)
- catalogo append-only dei risultati e codici di uscita stabili
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from dotenv import load_dotenv
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from catalog import CatalogService
from commands import COMMANDS, CommandResult
from rotabaxter.config import load_config, set_config
from rotabaxter.errors import EXIT_BOUND, EXIT_OK, AlgebraError

logger = logging.getLogger(__name__)


# ================================
# CONFIGURAZIONE
# ================================
load_dotenv()
CONFIG_PATH = os.getenv("ROTABAXTER_CONFIG")
LOG_LEVEL = os.getenv("ROTABAXTER_LOG_LEVEL", "INFO")

console = Console()


# ================================
# ARGOMENTI
# ================================

def build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotabaxter",
        description="Relative Rota-Baxter groups: cohomology, Schur multipliers, covers, isoclinism",
    )
    parser.add_argument("--config", help="JSON configuration file (overrides ROTABAXTER_CONFIG)")
    parser.add_argument("-v", "--verbose", action="store_true", help="DEBUG logging")
    parser.add_argument("--no-catalog", dest="no_catalog", action="store_true", help="do not append to the catalog")
    parser.add_argument("--json", dest="as_json", action="store_true", help="print the raw payload")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="validate group and RRB group files")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("h2", help="second cohomology with trivial coefficients")
    p.add_argument("rrb")
    p.add_argument("--kind", choices=["rrb", "group", "slb"], default="rrb")
    p.add_argument("--module", help="module file; defaults to (Zn, Zn, trivial, id)")
    p.add_argument("--coefficients", type=int, default=2, help="n for the default module")
    p.add_argument("--classify", help="cocycle file to locate in H²")
    p.add_argument("--oracle", action="store_true", help="cross-check with the brute-force count")

    p = sub.add_parser("multiplier", help="Schur multiplier M_RRB")
    p.add_argument("rrb")
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("cover", help="build and check a Schur cover")
    p.add_argument("rrb")
    p.add_argument("--alternative", action="store_true", help="also build a cover from a second generator system")

    p = sub.add_parser("isoclinic", help="decide (weak) isoclinism of two RRB groups")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--mode", choices=["strict", "weak"], default="strict")
    p.add_argument("--invariants", action="store_true", help="also report the shared invariants")

    p = sub.add_parser("ybe", help="Yang-Baxter map of the induced brace")
    p.add_argument("rrb")

    p = sub.add_parser("survey", help="exponent law over the generated catalog")
    p.add_argument("--max-product", dest="max_product", type=int, default=16)
    p.add_argument("--limit", type=int)
    p.add_argument("--group", dest="groups", action="append", help="restrict H and G to this small group (repeatable)")
    p.add_argument("--workers", type=int, help="process pool size (config parallelism by default)")

    p = sub.add_parser("report", help="summarize the catalog")
    p.add_argument("--catalog", help="catalog path (config catalog_path by default)")
    p.add_argument("--export", help="write the flattened catalog to a parquet file")
    p.add_argument("--reverify", action="store_true", help="recompute every replayable record")
    return parser


# ================================
# OUTPUT
# ================================

def render(result: CommandResult, as_json: bool = False) -> None:
    if as_json:
        console.print_json(json.dumps(result.payload, default=str))
        return
    rows = result.payload.get("rows")
    body = {k: v for k, v in result.payload.items() if k != "rows"}
    style = "green" if result.exit_code == EXIT_OK else "yellow" if result.exit_code == EXIT_BOUND else "red"
    console.print(Panel(json.dumps(body, indent=2, default=str), title=f"📊 {result.operation}", style=style))
    if rows:
        table = Table(title="survey")
        for column in ("rrb", "N", "factors", "exponent_divides", "stable"):
            table.add_column(column)
        for row in rows:
            table.add_row(*(str(row.get(c, row.get("error", ""))) for c in ("rrb", "N", "factors", "exponent_divides", "stable")))
        console.print(table)


def render_error(error: AlgebraError) -> None:
    console.print(Panel(
        json.dumps(error.to_dict(), indent=2, default=str),
        title=f"❌ {type(error).__name__}",
        style="red",
    ))


# ================================
# MAIN
# ================================

def main(argv: Optional[List[str]] = None) -> int:
    args = build_argparser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else getattr(logging, LOG_LEVEL.upper(), logging.INFO))
    try:
        config = load_config(args.config or CONFIG_PATH)
        set_config(config)
        command = COMMANDS[args.command]
        result = command(args)
    except AlgebraError as e:
        logger.error(f"❌ {type(e).__name__}: {e.message}")
        render_error(e)
        return e.exit_code

    if not args.no_catalog and args.command != "report":
        CatalogService(config.catalog_path).append(result.to_record())
    render(result, args.as_json)
    return result.exit_code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n🛑 Interrotto")
        sys.exit(130)
