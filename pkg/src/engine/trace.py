"""
Trace records: per-step metrics, the event log and the final-state summary.
"""

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from coalition.events import TraceEvent
from coalition.partition import PartitionState
from scenario.models import GameWeights, Point, UavSpec

METRICS_COLUMNS = [
    "step", "coverage", "overhead", "objective", "n_coalitions",
    "safety_msgs", "fusion_msgs", "inter_msgs", "emergencies", "accepted_moves", "relayed",
]
EVENT_COLUMNS = ["step", "kind", "coalitions", "uavs", "detail"]


class MetricsRecord(BaseModel):
    """One step's indices and message counts."""
    model_config = ConfigDict(frozen=True)

    step: int = Field(ge=0)
    coverage: float = Field(ge=0)
    overhead: float = Field(ge=0)
    objective: float
    n_coalitions: int = Field(ge=0)
    safety_msgs: int = Field(ge=0)
    fusion_msgs: int = Field(ge=0)
    inter_msgs: int = Field(ge=0)
    emergencies: int = Field(ge=0)
    accepted_moves: int = Field(ge=0)
    relayed: int = Field(0, ge=0)

    def consistent(self, weights: GameWeights, rel_tol: float = 1e-9) -> bool:
        expected = weights.w_cov * self.coverage - weights.w_ovh * self.overhead
        return abs(self.objective - expected) <= rel_tol * max(1.0, abs(expected))


class CoalitionSummary(BaseModel):
    id: int
    members: List[int]
    ground_leader: int
    task_leader: int
    channel: int
    emergency: bool


class UavSummary(BaseModel):
    id: int
    position: Point
    coverage_radius_m: float
    primary: int


class FinalState(BaseModel):
    """What the layout plot needs from the last world state."""
    step: int
    area: Tuple[float, float, float, float]
    uavs: List[UavSummary]
    coalitions: List[CoalitionSummary]
    channel_potential: float = 0.0

    @classmethod
    def capture(cls, step: int, area: Tuple[float, float, float, float], partition: PartitionState,
                positions: Dict[int, Point], specs: Dict[int, UavSpec],
                channel_potential: float = 0.0) -> "FinalState":
        uavs = [
            UavSummary(id=u, position=positions[u], coverage_radius_m=specs[u].coverage_radius_m,
                       primary=partition.primary_of[u])
            for u in sorted(positions)
        ]
        coalitions = [
            CoalitionSummary(id=c.id, members=sorted(c.members), ground_leader=c.ground_leader,
                             task_leader=c.task_leader, channel=c.channel, emergency=c.emergency)
            for c in (partition.coalitions[cid] for cid in sorted(partition.coalitions))
        ]
        return cls(step=step, area=area, uavs=uavs, coalitions=coalitions, channel_potential=channel_potential)


class Trace(BaseModel):
    """Everything one run produced, in memory."""
    metrics: List[MetricsRecord] = Field(default_factory=list)
    events: List[TraceEvent] = Field(default_factory=list)
    final: Optional[FinalState] = None
    history: List[float] = Field(default_factory=list)
    converged_at: Optional[int] = None

    @property
    def steps(self) -> int:
        return len(self.metrics)

    @property
    def final_objective(self) -> Optional[float]:
        return self.metrics[-1].objective if self.metrics else None
