"""Team-semantics engine for propositional logics with full intuitionistic negation."""
