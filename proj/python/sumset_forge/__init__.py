from ._core import (
    BudgetExceeded,
    ContextMismatch,
    ESet,
    Field,
    FieldError,
    HypothesisError,
    check_hypothesis,
    check_plunnecke,
    check_ruzsa_sum_form,
    check_ruzsa_triangle,
    collision_energy,
    diffset,
    dilate,
    is_subfield,
    mult_energy,
    negate,
    pigeonhole,
    productset,
    quotientset,
    ratio_of_differences,
    reciprocals,
    run_main_theorem,
    run_suite,
    search,
    subfields,
    sumset,
    translate,
    verify_certificate_text,
)

__all__ = [name for name in dir() if not name.startswith("_")]
