"""Finite Routley-Meyer model theory for infinitary relevant logic."""
from .bisim import (
    DirectedPair, DropRecord, Stratification, check_bisim, distinguish,
    distinguishing_formula, max_bisim, stratify,
)
from .charform import CharKey, FormulaDag, char_formula, stabilization_stage, theta
from .correspond import fo_eval, fo_text, translate
from .formula import (
    BOT, TOP, Atom, Bottom, Conj, Disj, Formula, Impl, Neg, degree, omega_arrow, to_text,
)
from .frames import FrameReport, SystemClass, check_frame, generate_model
from .model import RMModel, fixture_a, fixture_b, load_model, satisfies, validate
from .parser import FormulaSyntaxError, parse

__all__ = [
    "Atom", "BOT", "Bottom", "CharKey", "Conj", "DirectedPair", "Disj", "DropRecord",
    "Formula", "FormulaDag", "FormulaSyntaxError", "FrameReport", "Impl", "Neg", "RMModel",
    "Stratification", "SystemClass", "TOP", "char_formula", "check_bisim", "check_frame",
    "degree", "distinguish", "distinguishing_formula", "fixture_a", "fixture_b", "fo_eval",
    "fo_text", "generate_model", "load_model", "max_bisim", "omega_arrow", "parse",
    "satisfies", "stabilization_stage", "stratify", "theta", "to_text", "translate",
    "validate",
]
