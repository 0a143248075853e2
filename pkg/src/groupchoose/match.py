"""Located pattern occurrences: which host vertices (and faces) realize a
named configuration.  Matches are plain data; validation lives next to the
configuration definitions so a match can always be re-checked."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class ConfigurationMatch:
    config: str
    vertex_map: dict[str, int]
    face_map: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def canonical(self) -> tuple:
        return (
            self.config,
            tuple(sorted(self.vertex_map.items())),
            tuple(sorted((k, tuple(v)) for k, v in self.face_map.items())),
        )

    def to_json(self) -> dict:
        return {
            "config": self.config,
            "vertices": dict(sorted(self.vertex_map.items())),
            "faces": {k: list(v) for k, v in sorted(self.face_map.items())},
        }
