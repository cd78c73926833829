"""
Output writers

CSV tables go through pandas, JSON through the pydantic records. Both
write floats in shortest round-trip form, so a value read back from either
format is bit-identical.
"""

import json
import logging
from typing import List

import pandas as pd
from pydantic import BaseModel

from ..models.records import CSV_COLUMNS, OutputRecord, VerifyReport

logger = logging.getLogger(__name__)


def records_to_csv(records: List[OutputRecord]) -> str:
    """Header ``x,value,abs_err,method``, one row per record, LF line endings"""
    rows = [record.model_dump(by_alias=True) for record in records]
    frame = pd.DataFrame(rows, columns=CSV_COLUMNS)
    return frame.to_csv(index=False, lineterminator="\n")


def model_to_json(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json", by_alias=True))


def verify_to_text(report: VerifyReport) -> str:
    lines = [summary.line() for summary in report.suites]
    return "\n".join(lines) + "\n"
