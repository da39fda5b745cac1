"""Result records for law-checking runs."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class LawReport:
    """Outcome of checking one law on one instance.

    ``seconds`` is informational only and is never serialized, so that
    reports are byte-identical across runs.
    """

    suite: str
    instance: str
    ok: bool
    witness: str | None = None
    seconds: float = 0.0

    def text(self):
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.suite} {self.instance}"
        if not self.ok and self.witness:
            line += f" witness={self.witness}"
        return line

    def json_obj(self):
        return {"suite": self.suite, "instance": self.instance,
                "ok": self.ok, "witness": self.witness}
