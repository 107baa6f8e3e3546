"""Natural deduction for PLv with full negation, implication and Split."""
from .kernel import (ARITY, CLASSICAL_RULES, DISCHARGE_SLOTS, Derivation, ProofError, Rule, Sequent,
                     SideConditionError, check, derivation_from_json, derivation_to_json, dumps, loads)
from .build import Builder, NotDerivable, bridge, derive_dnf, prove, prove_classical, replacement
from .derived import DERIVED_RULES, InstantiationError, derived_rule, expand_neg_anton

__all__ = [
    "ARITY", "CLASSICAL_RULES", "DERIVED_RULES", "DISCHARGE_SLOTS", "Builder", "Derivation", "InstantiationError",
    "NotDerivable", "ProofError", "Rule", "Sequent", "SideConditionError", "bridge", "check", "derivation_from_json",
    "derivation_to_json", "derive_dnf", "derived_rule", "dumps", "expand_neg_anton", "loads", "prove",
    "prove_classical", "replacement",
]
