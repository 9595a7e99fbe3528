"""LTL objectives for tabular reinforcement learning.

Formula syntax and semantics, omega-automata, temporal-hierarchy
classification, uncommittable-word extraction, exact probabilistic model
checking, hard two-MDP benchmark families, reward-scheme products, tabular
learners, a finite-horizon PAC learner, and a Monte-Carlo experiment harness.
"""

from .automata import (
    ClassReport, Dfa, Dra, Nba, build_dfa_finitary, classify,
    dra_accepts_lasso, dra_for, dump_dfa, dump_dra, dump_nba, evaluate_lasso,
    ltl_to_nba, nba_accepts_lasso, nba_for, nba_to_dra,
)
from .exceptions import (
    AlphabetMismatchError, AutomatonTooLargeError, BoundViolatedError,
    FinitaryFormulaError, FormulaSyntaxError, InvalidPError,
    InvalidShapeError, InvalidToleranceError, InvalidWitnessError, LtlRlError,
    MultiplePairsUnsupportedError, NotFinitaryError, UnknownAtomError,
    UnknownStateOrActionError,
)
from .family import (
    CounterexamplePair, counterexample_pair, gridworld,
    instantiate_from_witness, simple_pair,
)
from .formulas import (
    Formula, LassoWord, Letter, all_letters, lasso, node_to_text, parse,
    progress, to_nnf,
)
from .harness import (
    CurvePoint, ExperimentConfig, check_lower_bound, estimate_pac_prob,
    find_intercept, sample_lower_bound, smoke_config, sweep, wilson_stderr,
    write_curves_csv, write_curves_svg,
)
from .learn import (
    ALGOS, Hyper, PacCertificate, default_hyper, learn_finitary, train,
    train_table,
)
from .mdp import (
    Dtmc, FiniteMemoryPolicy, Labeling, Mdp, MemoryTransducer,
    TransitionSample, induce_dtmc, load_model, load_policy, make_labeling,
    make_mdp, memoryless, sample_step, save_model, save_policy,
    simulate_episode, uniform_policy,
)
from .probcheck import ValueResult, dra_memory, optimal_value, policy_value
from .schemes import (
    SCHEMES, ProductMdp, SchemeParams, build_product, greedy_policy,
    product_to_dict, value_iteration,
)
from .witness import (
    UNCOMMITTABLE_ACCEPTING, UNCOMMITTABLE_REJECTING, Witness, check_witness,
    find_uncommittable,
)

__version__ = "0.1.0"
