"""Left I-orders in bisimple inverse omega-semigroups, checked inside finite windows."""
from .group import (Endomorphism, GroupTable, cyclic_group, endo_power, identity_endomorphism,
                    scaling_endomorphism, trivial_group, validate_endomorphism, validate_group)
from .reilly import (BicyclicElement, HClassIndex, Reilly, ReillyElement, green, idempotent_leq,
                     invert, multiply, to_bicyclic)
from .verdicts import Status, Verdict
from .window import (SWindow, Window, close_generators, l_class_coverage, load_abstract,
                     reference_window)
from .verifier import (ConditionReport, check_A, check_B, check_C, check_lclass, check_straight,
                       recheck, verdict)
from .quotient import (PairClass, QuotientWindow, SigmaPair, StructureReport, classes,
                       compare_to_reference, embed, idempotents, invert_class, lemma_suite,
                       multiply_classes, tilde, verify_quotient)

__version__ = "0.1.0"
