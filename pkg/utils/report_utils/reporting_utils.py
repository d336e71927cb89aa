import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional
import pandas as pd # type: ignore

REPORT_VERSION = '1.0'
STATUSES = ('pass', 'fail', 'skip')


@dataclass
class CheckRecord:
    """
    Outcome of one verification check.

    Attributes:
        id (str): "<suite>.<check>"
        params (Dict[str, Any]): parameters the check ran with; a skip carries its 'reason' here
        status (str): 'pass', 'fail' or 'skip'
        witness (Any): counterexample or error text of a failed check, otherwise None
        elapsed_ms (int): wall time of the check
    """
    id: str
    params: Dict[str, Any] = field(default_factory=dict)
    status: str = 'pass'
    witness: Any = None
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"Unknown check status '{self.status}' for {self.id}")
        if self.status == 'fail' and self.witness is None:
            raise ValueError(f"Failed check {self.id} carries no witness")
        if self.status == 'skip' and 'reason' not in self.params:
            raise ValueError(f"Skipped check {self.id} carries no reason")

    def to_dict(self) -> Dict[str, Any]:
        return {'id': self.id, 'params': self.params, 'status': self.status,
                'witness': self.witness, 'elapsed_ms': self.elapsed_ms}


def report_schema() -> Dict[str, Any]:
    """JSON Schema of the verify report."""
    check = {
        'type': 'object',
        'required': ['id', 'params', 'status', 'witness', 'elapsed_ms'],
        'properties': {
            'id': {'type': 'string'},
            'params': {'type': 'object'},
            'status': {'enum': list(STATUSES)},
            'witness': {},
            'elapsed_ms': {'type': 'integer', 'minimum': 0},
        },
    }
    return {
        '$schema': 'https://json-schema.org/draft/2020-12/schema',
        'type': 'object',
        'required': ['version', 'config', 'field', 'ring', 'checks', 'summary'],
        'properties': {
            'version': {'const': REPORT_VERSION},
            'config': {'type': 'object'},
            'field': {'type': 'object', 'required': ['f', 'q', 'modulus_bits']},
            'ring': {'type': 'object', 'required': ['m']},
            'checks': {'type': 'array', 'items': check},
            'summary': {'type': 'object', 'required': list(STATUSES)},
        },
    }


class VerificationReporter:
    """Assembles check records into the verify report and writes it out."""

    def __init__(self, config: Any, logger: Any):
        self.config = config
        self.logger = logger

    def summarize(self, records: List[CheckRecord]) -> Dict[str, int]:
        summary = {status: 0 for status in STATUSES}
        for record in records:
            summary[record.status] += 1
        return summary

    def build_report(self, records: List[CheckRecord], field_info: Dict[str, Any]) -> Dict[str, Any]:
        """Report with its keys in fixed order; two runs with the same settings differ only in elapsed_ms."""
        return {
            'version': REPORT_VERSION,
            'config': self.config.echo(),
            'field': field_info,
            'ring': {'m': self.config.m},
            'checks': [r.to_dict() for r in records],
            'summary': self.summarize(records),
        }

    def write_json(self, report: Dict[str, Any], path: Optional[str | Path] = None) -> Path:
        out = Path(path or self.config.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, 'w') as f:
            json.dump(report, f, indent=2)
            f.write('\n')
        self.logger.info(f"Report written to {out}")
        return out

    def write_csv(self, records: List[CheckRecord], path: Optional[str | Path] = None) -> Optional[Path]:
        target = path or self.config.csv
        if target is None:
            return None
        out = Path(target)
        out.parent.mkdir(parents=True, exist_ok=True)
        df = pd.DataFrame([{'id': r.id, 'status': r.status, 'elapsed_ms': r.elapsed_ms} for r in records],
                          columns=['id', 'status', 'elapsed_ms'])
        df.to_csv(out, index=False)
        self.logger.info(f"Check summary CSV written to {out}")
        return out
