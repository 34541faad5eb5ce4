"""Core modules."""
from .errors import SemifieldError, ParseError, NotASemifieldError, SearchSpaceTooLargeError
from .gf import FieldCtx, get_context
from .linmap import LinMap
from .rank import MatrixQN, matrix_rank
from .semifield import SemifieldCoeffs, is_semifield, nuclei
from .belrank import bel_rank, bel_triple, mrk, mrk_class
from .belconfig import (
    BelDecomposition,
    BelConfiguration,
    configuration_from_decomposition,
    decomposition_from_rank_factorization,
    verify_configuration
)
from .families import field_semifield, gtf, gtf_find_c
from .formats import read_algebra, read_decomposition

__all__ = [
    'SemifieldError',
    'ParseError',
    'NotASemifieldError',
    'SearchSpaceTooLargeError',
    'FieldCtx',
    'get_context',
    'LinMap',
    'MatrixQN',
    'matrix_rank',
    'SemifieldCoeffs',
    'is_semifield',
    'nuclei',
    'bel_rank',
    'bel_triple',
    'mrk',
    'mrk_class',
    'BelDecomposition',
    'BelConfiguration',
    'configuration_from_decomposition',
    'decomposition_from_rank_factorization',
    'verify_configuration',
    'field_semifield',
    'gtf',
    'gtf_find_c',
    'read_algebra',
    'read_decomposition'
]
