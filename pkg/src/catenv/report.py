"""Report assembly: plain text and a stable JSON document.

Reports are deterministic for a fixed config: seeded numerics, ordered entries,
no timestamps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "catenv-report/1"

_EXIT_BY_STATUS = {"certified": 0, "rejected": 2, "bounded-evidence": 3}


@dataclass
class Report:
    command: str
    fixture: str
    config: dict
    entries: list = field(default_factory=list)

    def add(self, check, status, detail="", data=None):
        entry = {"check": check, "status": status, "detail": detail}
        if data:
            entry["data"] = data
        self.entries.append(entry)

    def extend(self, pipeline_entries):
        for e in pipeline_entries:
            self.entries.append(e.as_dict() if hasattr(e, "as_dict") else
                                {"check": e.check, "status": e.status,
                                 "detail": e.detail})

    @property
    def exit_code(self) -> int:
        codes = [_EXIT_BY_STATUS.get(e["status"], 2) for e in self.entries]
        if 2 in codes:
            return 2
        if 3 in codes:
            return 3
        return 0

    def as_json(self) -> str:
        doc = {"schema": SCHEMA, "command": self.command, "fixture": self.fixture,
               "config": self.config, "entries": self.entries,
               "exit": self.exit_code}
        return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n"

    def as_text(self) -> str:
        lines = [f"{self.command} {self.fixture}"]
        cfg = " ".join(f"{k}={v}" for k, v in sorted(self.config.items()))
        lines.append(f"config: {cfg}")
        lines.append("-" * 72)
        for e in self.entries:
            lines.append(f"[{e['status']:>16}] {e['check']}: {e['detail']}")
            if "data" in e:
                lines.append(f"{'':18} {json.dumps(e['data'], sort_keys=True, default=_jsonable)}")
        lines.append("-" * 72)
        lines.append(f"exit: {self.exit_code}")
        return "\n".join(lines) + "\n"


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=str)
    if hasattr(x, "tolist"):
        return x.tolist()
    return str(x)
