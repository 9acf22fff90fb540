"""Configuration templates and the matcher that finds them in a matroid."""

from .bowties import BowtieViolation, HypothesisReport, bowtie_orientations, check_hypothesis_vii, is_good_bowtie
from .matching import ConfigMatch, brute_force_bowties, bowtie_triple, match, validate_match, violations
from .template import ConfigTemplate, builtin, builtin_names, builtin_text, load_template, parse_template

__all__ = [
    "BowtieViolation", "HypothesisReport", "bowtie_orientations", "check_hypothesis_vii", "is_good_bowtie",
    "ConfigMatch", "ConfigTemplate", "bowtie_triple", "brute_force_bowties", "builtin",
    "builtin_names", "builtin_text", "load_template", "match", "parse_template",
    "validate_match", "violations",
]
