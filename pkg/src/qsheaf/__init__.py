"""Cohomology tables, Qregularity and splitting criteria for sheaves on smooth quadrics."""

from .calculus import ExprTable, euler_char, table
from .core import (
    NEG_INF,
    AmbiguityError,
    CohomValue,
    Generator,
    InconsistentTableError,
    Kind,
    QsheafError,
    Quadric,
    StructuralError,
    atom,
    bidegree,
    line,
    normalize,
    rank,
    skyscraper,
    spinor,
)
from .dsl import ParseError, parse, to_text
from .regularity import check_sandwich, cm_reg, is_qregular, is_qregular_alt, is_regular, qreg
from .splitting import eg_check, knorrer_check, line_split_check, peel, rank2_check

__version__ = "0.1.0"
