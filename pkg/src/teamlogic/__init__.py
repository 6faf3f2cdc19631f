"""Workbench for modal dependence logics under team semantics."""

from .syntax import (BOT, TOP, And, Bot, Box, Dep, Diamond, Formula, Fragment,
                     FragmentError, Implies, Neg, Or, ParseError, Prop, Tensor,
                     fragment_check, in_fragment, is_classical, parse, to_text)
from .kripke import KripkeModel, disjoint_union, enumerate_models, format_team, parse_team
from .teameval import eval_team, eval_world, oracle_entails, oracle_flat, oracle_valid
from .normalform import dnf, realize, realize_all, realizations
from .kcore import k_entails, k_valid
from .decide import decide_entails, decide_equivalent, decide_valid, flat_characterize
from .powerset import (IntModel, build_full_powerset, build_powerset,
                       check_conditions, check_pmorphism, endpoint_map,
                       sat_int, sat_int_bullet)
from .fotrans import standard_translate
from .hilbert import SystemId, check_derivation, load_derivation, match_axiom

__version__ = "0.1.0"
