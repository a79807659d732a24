import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Union

from .combinatorics import precompute_triangles
from .errors import UnknownIdentityError
from .identities import identity_registry
from .identities.report import Grid, IdentityReport, Verdict, Witness
from .ring import Polynomial
from .sequences import SequenceProvider

logger = logging.getLogger(__name__)

REPORT_CSV_HEADER = ["id", "verdict", "n_max", "k_max", "witness_n", "witness_k", "route", "lhs", "rhs"]


class VerificationSuite:
    """Runs registered identity checkers over a grid and collects their reports"""

    def __init__(self, provider: Optional[SequenceProvider] = None, truncation: Optional[int] = None):
        self.provider = provider or SequenceProvider()
        self.truncation = truncation

    @staticmethod
    def resolve_ids(ids: Union[str, Iterable[str]]) -> List[str]:
        """'all' or a list of ids (comma lists allowed); unknown ids raise UnknownIdentityError."""
        if isinstance(ids, str):
            ids = [ids]
        names: List[str] = []
        for item in ids:
            names.extend(part.strip() for part in item.split(",") if part.strip())
        if not names or names == ["all"]:
            return identity_registry.get_available_identities()
        known = identity_registry.get_available_identities()
        for name in names:
            if name not in known:
                raise UnknownIdentityError(name)
        # registry order, duplicates dropped
        return [name for name in known if name in names]

    def check(self, identity_id: str, grid: Grid) -> IdentityReport:
        logger.info("🔧 checking %s", identity_id)
        try:
            report = identity_registry.execute_identity(identity_id, grid, self.provider, self.truncation)
        except Exception as e:
            logger.error("❌ %s crashed: %s", identity_id, e)
            zero = Polynomial.zero()
            return IdentityReport(
                identity_id=identity_id,
                grid=grid,
                verdict=Verdict.FAIL,
                witness=Witness(n=-1, k=-1, lhs=zero, rhs=zero, route="error"),
            )
        if report.passed:
            logger.info("✅ %s passed (%d comparisons)", identity_id, report.checked)
        else:
            witness = report.witness
            logger.warning("❌ %s failed at n=%d, k=%d (%s)", identity_id, witness.n, witness.k, witness.route)
        return report

    def run(self, ids: Union[str, Iterable[str]], grid: Grid, jobs: int = 1) -> List[IdentityReport]:
        """Reports in registry order regardless of how many workers ran them"""
        names = self.resolve_ids(ids)
        precompute_triangles(grid.n_max)
        if jobs <= 1 or len(names) <= 1:
            return [self.check(name, grid) for name in names]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda name: self.check(name, grid), names))


def reports_to_json(reports: List[IdentityReport]) -> str:
    return json.dumps([report.to_json_dict() for report in reports], indent=2) + "\n"


def _csv_value(value) -> str:
    return ";".join(value) if isinstance(value, list) else value


def reports_to_csv(reports: List[IdentityReport]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_CSV_HEADER)
    for report in reports:
        row = [report.identity_id, report.verdict.value, report.grid.n_max, report.grid.k_max]
        if report.witness is None:
            row += ["", "", "", "", ""]
        else:
            witness = report.witness.model_dump()
            row += [
                witness["n"],
                witness["k"],
                witness["route"],
                _csv_value(witness["lhs"]),
                _csv_value(witness["rhs"]),
            ]
        writer.writerow(row)
    return buffer.getvalue()
