"""Run reports for pipelines: stage artifacts, timings, scalar results."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class StageRecord:
    name: str
    path: str
    ms: float


@dataclass
class PipelineReport:
    """Key=value summary of one pipeline run.

    Wall times go to the textual report only; stage files themselves stay
    deterministic.
    """

    stages: list[StageRecord] = field(default_factory=list)
    results: dict[str, object] = field(default_factory=dict)

    def add_stage(self, name: str, path: str, ms: float) -> None:
        self.stages.append(StageRecord(name, path, ms))

    def to_text(self) -> str:
        lines = []
        for stage in self.stages:
            lines.append(f"stage.{stage.name}.path={stage.path}")
            lines.append(f"stage.{stage.name}.ms={stage.ms:.3f}")
        for key, value in self.results.items():
            lines.append(f"result.{key}={value}")
        return "\n".join(lines) + "\n"
