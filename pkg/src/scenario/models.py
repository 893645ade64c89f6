"""
Pydantic models for the scenario file schema.

A Scenario is immutable once validated and may be shared across runs.
"""

from enum import Enum
from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

Point = Tuple[float, float]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class AreaBounds(_Frozen):
    """Axis-aligned mission rectangle in meters."""
    x_min: float = 0.0
    y_min: float = 0.0
    width: float = Field(10_000.0, gt=0)
    height: float = Field(10_000.0, gt=0)

    @property
    def x_max(self) -> float:
        return self.x_min + self.width

    @property
    def y_max(self) -> float:
        return self.y_min + self.height

    def contains(self, p: Point) -> bool:
        return self.x_min <= p[0] <= self.x_max and self.y_min <= p[1] <= self.y_max

    def clamp(self, p: Point) -> Point:
        return (
            min(max(p[0], self.x_min), self.x_max),
            min(max(p[1], self.y_min), self.y_max),
        )


class ImportanceField(_Frozen):
    """Radial importance peak; weight decays with distance from center."""
    center: Point
    sigma_m: float = Field(2_500.0, gt=0)
    peak: float = Field(1.0, gt=0, le=1)


class UavSpec(_Frozen):
    """Static description of one drone."""
    id: int = Field(ge=0)
    start_pos: Point
    coverage_radius_m: float = Field(1_500.0, gt=0)
    comm_range_m: float = Field(3_000.0, gt=0)
    transceivers: int = Field(2, ge=1)
    ground_link_quality: float = Field(0.0, ge=0, le=1)
    relay_quota: int = Field(0, ge=0)
    max_move_m: float = Field(250.0, ge=0)


class DirectiveKind(str, Enum):
    ADD_FIELD = "add_field"
    REMOVE_FIELD = "remove_field"
    FORCE_SPLIT = "force_split"
    FORCE_MERGE = "force_merge"


# payload keys that must be present, per kind (alternatives separated by "|")
_REQUIRED_PAYLOAD = {
    DirectiveKind.ADD_FIELD: ("field",),
    DirectiveKind.REMOVE_FIELD: ("index",),
    DirectiveKind.FORCE_SPLIT: ("coalition|coalition_of", "members"),
    DirectiveKind.FORCE_MERGE: ("coalition|coalition_of", "other|other_of"),
}


class TaskDirective(_Frozen):
    """
    Scripted ground-controller command executed at a given step.

    Coalitions are named either by id ("coalition", "other") or by a UAV whose
    primary coalition is meant ("coalition_of", "other_of").
    """
    step: int = Field(ge=0)
    kind: DirectiveKind
    payload: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_payload(self) -> "TaskDirective":
        for key in _REQUIRED_PAYLOAD[self.kind]:
            options = key.split("|")
            if not any(option in self.payload for option in options):
                raise ValueError(f"{self.kind.value} directive needs payload key {' or '.join(options)}")
        if self.kind is DirectiveKind.ADD_FIELD:
            ImportanceField.model_validate(self.payload["field"])
        if self.kind is DirectiveKind.FORCE_SPLIT and not self.payload["members"]:
            raise ValueError("force_split members must be non-empty")
        return self

    @property
    def field(self) -> ImportanceField:
        return ImportanceField.model_validate(self.payload["field"])

    @property
    def members(self) -> List[int]:
        return sorted(int(m) for m in self.payload.get("members", []))


class GameWeights(_Frozen):
    """Weights and normalizers of the coverage/overhead objective."""
    w_cov: float = Field(1.0, ge=0)
    w_ovh: float = Field(0.1, ge=0)
    overhead_ref_m: float = Field(1_000.0, gt=0)
    path_loss_exp: float = Field(2.0, ge=1)
    p_unreach: float = Field(10.0, ge=0)
    channel_eps_m: float = Field(1.0, gt=0)

    @model_validator(mode="after")
    def _check_sum(self) -> "GameWeights":
        if self.w_cov + self.w_ovh <= 0:
            raise ValueError("w_cov + w_ovh must be positive")
        return self


class Scenario(_Frozen):
    """
    Immutable world description.

    Cells that do not fit entirely inside the area (when cell_size_m does not
    divide it) are dropped from the importance grid.
    """
    area: AreaBounds = Field(default_factory=AreaBounds)
    cell_size_m: float = Field(250.0, gt=0)
    max_steps: int = Field(200, ge=0)
    seed: int = Field(0, ge=0, lt=2**64)
    weights: GameWeights = Field(default_factory=GameWeights)
    channels: int = Field(3, ge=1)
    emergency_theta: float = Field(0.1, ge=0, le=1)
    allow_overlap: bool = True
    require_backhaul: bool = True
    random_start: bool = False
    fields: List[ImportanceField] = Field(default_factory=list)
    uavs: List[UavSpec]
    directives: List[TaskDirective] = Field(default_factory=list)

    @field_validator("uavs")
    @classmethod
    def _check_roster(cls, uavs: List[UavSpec], info: ValidationInfo) -> List[UavSpec]:
        if not uavs:
            raise ValueError("scenario needs at least one UAV")
        ids = [u.id for u in uavs]
        if len(set(ids)) != len(ids):
            raise ValueError("UAV ids must be unique")
        area = info.data.get("area")
        for u in uavs:
            if area is not None and not area.contains(u.start_pos):
                raise ValueError(f"UAV {u.id} starts outside the area")
        return uavs

    @field_validator("directives")
    @classmethod
    def _check_schedule(cls, directives: List[TaskDirective], info: ValidationInfo) -> List[TaskDirective]:
        max_steps = info.data.get("max_steps")
        steps = [d.step for d in directives]
        if steps != sorted(steps):
            raise ValueError("directives must be ordered by step")
        if max_steps is not None and steps and steps[-1] > max_steps:
            raise ValueError(f"directive at step {steps[-1]} is beyond max_steps {max_steps}")
        return directives

    @property
    def specs(self) -> Dict[int, UavSpec]:
        return {u.id: u for u in self.uavs}

    @property
    def grid_shape(self) -> Tuple[int, int]:
        """(rows, cols) of the importance grid."""
        return int(self.area.height // self.cell_size_m), int(self.area.width // self.cell_size_m)
