"""Complete fields, membership scripts, the planner, the descended-field
span check, and the staged verification pipeline."""

from .certificates import (
    CertKind,
    CompletenessCertificate,
    diagonal_certificate,
    function_times_field_certificate,
    is_locally_nilpotent,
    lnd_certificate,
    verify_completeness,
)
from .fields import StandardFields, standard_fields, word_field
from .planner import (
    UnsupportedTargetError,
    module_generator_word,
    plan_delta_target,
    plan_eps_target,
    plan_membership,
    plan_module_element,
)
from .pipeline import (
    RunConfig,
    StageResult,
    STAGE_NAMES,
    VerificationReport,
    density_pipeline,
)
from .scripts import (
    MembershipScript,
    ScriptCheck,
    ScriptStep,
    StepKind,
    script_from_json,
    script_to_json,
    verify_script,
)
from .spanning import (
    DescendedField,
    SurfacePoint,
    descend,
    find_spanning_point,
    matrix_rank,
    spanning_check,
)

__all__ = [
    "CertKind",
    "CompletenessCertificate",
    "diagonal_certificate",
    "function_times_field_certificate",
    "is_locally_nilpotent",
    "lnd_certificate",
    "verify_completeness",
    "StandardFields",
    "standard_fields",
    "word_field",
    "UnsupportedTargetError",
    "module_generator_word",
    "plan_delta_target",
    "plan_eps_target",
    "plan_membership",
    "plan_module_element",
    "RunConfig",
    "StageResult",
    "STAGE_NAMES",
    "VerificationReport",
    "density_pipeline",
    "MembershipScript",
    "ScriptCheck",
    "ScriptStep",
    "StepKind",
    "script_from_json",
    "script_to_json",
    "verify_script",
    "DescendedField",
    "SurfacePoint",
    "descend",
    "find_spanning_point",
    "matrix_rank",
    "spanning_check",
]
