"""
Radio layer: link quality, relay routing, relay matching, traffic accounting.

Public API: link_quality, relay_path, relay_matching, account_traffic
"""

from .links import Link, link_quality, make_link
from .matching import RelayMatching, blocking_pairs, relay_matching
from .routing import RelayPath, Unreachable, hop_cost, leader_routes, relay_path
from .traffic import MessageClass, TrafficTally, account_traffic

__all__ = [
    'Link',
    'MessageClass',
    'RelayMatching',
    'RelayPath',
    'TrafficTally',
    'Unreachable',
    'account_traffic',
    'blocking_pairs',
    'hop_cost',
    'leader_routes',
    'link_quality',
    'make_link',
    'relay_matching',
    'relay_path'
]
