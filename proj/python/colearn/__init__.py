from ._colearn import (
    NOT_FOUND,
    RESULT_COLUMNS,
    Algorithm,
    BudgetLadder,
    BudgetSearchSpec,
    HardInstance,
    Instance,
    InvariantError,
    IoError,
    LogBase,
    PreconditionError,
    Rate,
    ResultRow,
    RunConfig,
    RunResult,
    SampleSizeProfile,
    TestMode,
    basic_round_count,
    budget_search,
    budget_search_instance,
    gen_class_dup,
    generate,
    load_instance,
    load_results,
    mw_round_count,
    run,
    sample_size,
    test_sample_count,
    tuned_round_count,
    tuned_test_sample_count,
    weak_test_sample_count,
    write_results,
)
from .results import read_result_table

__all__ = [name for name in dir() if not name.startswith("_")]
