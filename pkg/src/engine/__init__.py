"""
Deterministic time-stepped simulation engine.

Public API: initialize, step, run, simulate, write_trace
"""

from .baselines import BASELINES, BaselineResult, compare_baselines, coverage_only, overhead_only
from .export import (
    MANIFEST, ArtifactExists, ArtifactWriter, events_frame, manifest_header, metrics_frame, read_manifest,
    write_csv, write_trace
)
from .simulator import EmergencyRound, final_state, handle_emergencies, relay_assignments, run, simulate, step
from .state import WorldState, initialize
from .trace import EVENT_COLUMNS, METRICS_COLUMNS, FinalState, MetricsRecord, Trace

__all__ = [
    'BASELINES',
    'EVENT_COLUMNS',
    'MANIFEST',
    'METRICS_COLUMNS',
    'ArtifactExists',
    'ArtifactWriter',
    'BaselineResult',
    'EmergencyRound',
    'FinalState',
    'MetricsRecord',
    'Trace',
    'WorldState',
    'compare_baselines',
    'coverage_only',
    'events_frame',
    'final_state',
    'handle_emergencies',
    'initialize',
    'manifest_header',
    'metrics_frame',
    'overhead_only',
    'read_manifest',
    'relay_assignments',
    'run',
    'simulate',
    'step',
    'write_csv',
    'write_trace'
]
