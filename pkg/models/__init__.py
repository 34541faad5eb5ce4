"""Models package."""
from .schemas import (
    Certificate,
    RecordStatus,
    BelRankResult,
    BelTriple,
    NucleiReport,
    KnuthProfile,
    SpreadStatistics,
    ConfigurationReport,
    InvariantRecord,
    BatchReport
)

__all__ = [
    'Certificate',
    'RecordStatus',
    'BelRankResult',
    'BelTriple',
    'NucleiReport',
    'KnuthProfile',
    'SpreadStatistics',
    'ConfigurationReport',
    'InvariantRecord',
    'BatchReport'
]
