"""Finite-scale free completions of categories.

Families (free coproduct completion), formal limits (free finite-limit
completion), their composite with explicit exponentials, and brute-force
universal-property verification, all over finite composition-table base
categories.
"""

from .core import Category, Cocone, Cone, Diagram, TableCategory
from .errors import (BaseLimitMissingError, CyclicGraphError, FreecatError,
                     NotAPosetError, ParseError, PreconditionViolatedError,
                     SizeGuardError, UnknownObjectError)
from .fam import FamCategory, FamMorphism, FamObject, flatten, flatten_mor
from .fincat import (FinCategory, Functor, ShapeClass, build,
                     chain_lattice, check_category_axioms, check_functor,
                     discrete, free_category, gallery, initial_category,
                     pairs_of_sets_category, poset_category, product_category,
                     terminal_category, walking_arrow)
from .lextensive import (ExponentialWitness, check_distributive,
                         check_exp_preserves_coproducts, check_extensive,
                         check_flatten_preserves, check_reflection, curry,
                         exp_of_generator, exponential, verify_exponential)
from .limcomp import FormalLimit, LimCategory, LimMorphism
from .report import Report, RunConfig
from .setcalc import (ColimitResult, SetDiagram, UnionFind, colimit_of_sets,
                      limit_of_sets)

__version__ = "0.1.0"
