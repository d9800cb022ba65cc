"""Coevents (0/1 set functions), quantum integrals, q-measures and generation."""

from coevents.algebra import (
    Coevent,
    SampleSpace,
    atom,
    canonical_type,
    classify,
    coevent_count,
    complement,
    enumerate_coevents,
    evaluation_map,
    lower_star,
    one,
    psi,
    upper_star,
)
from coevents.expr import format_coevent, parse_coevent, parse_event
from coevents.integral import double_integral, q_integral, q_integral_over
from coevents.qmeasure import NotAQMeasure, QMeasure, from_low_order, is_q_measure

__all__ = [
    "Coevent", "SampleSpace", "atom", "canonical_type", "classify", "coevent_count",
    "complement", "enumerate_coevents", "evaluation_map", "lower_star", "one", "psi",
    "upper_star", "format_coevent", "parse_coevent", "parse_event", "double_integral",
    "q_integral", "q_integral_over", "NotAQMeasure", "QMeasure", "from_low_order",
    "is_q_measure",
]
