"""Numerical semigroups with negative Eliahou number.

Exact construction and classification of numerical semigroups around the
Wilf conjecture: Farey intervals, B_h sumsets, closed-form Eliahou numbers
for parametric families, and an exhaustive bitfield tree search.
"""

from .farey import FareyInterval, farey_cover, farey_predecessor, phi, phi_prime
from .sumsets import canonical_bh_set, hfold_sumset, is_bh_set, multichoose
from .semigroup import (ClassificationRecord, EliahouRecord, Params, Semigroup,
                        classify, detect_h, numbers, params, parse_semigroup,
                        render_critical_interval, render_semigroup,
                        representation_count, semigroup_from)
from .family import (ClosedForm, CriteriaVerdict, FamilyParams,
                     binomial_family, closed_form_e, closed_form_k, construct,
                     criteria, hat_params, inflate_m, iter_sweep,
                     shift_numerator, split_family)
from .explorer import (BitsetWidthError, Emission, ExplorerState, SearchTask,
                       add_gap, add_left_gen, add_non_gen, eliahou_test,
                       explore, init_root, plan_tasks, postprocess_extend,
                       required_width, run_search)
from .records import build_record, family_attribution

__version__ = "0.1.0"
