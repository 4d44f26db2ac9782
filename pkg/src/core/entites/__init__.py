from .models import (
    ParametricMarginal,
    EmpiricalMarginal,
    Marginal,
    CorrelationMatrix,
    CopulaModel,
    FitReport,
    ClassModel,
    NormalClassModel,
    Standardization,
    ClassifierKind,
    Classifier,
    Dataset,
)
from .schemas import (
    BaseResponse,
    Family,
    FAMILY_PARAMS,
    CopulaKind,
    CorrelationStructure,
    MarginalSpec,
    ClassCopulaSpec,
    DatasetSpec,
    ClassifierConfig,
    NormalConfig,
    ParametricMarginalDocument,
    EmpiricalMarginalDocument,
    CopulaDocument,
    ClassModelDocument,
    NormalClassModelDocument,
    StandardizationDocument,
    ClassifierDocument,
    Evaluation,
    BenchConfig,
    RunManifest,
)

__all__ = [
    "ParametricMarginal",
    "EmpiricalMarginal",
    "Marginal",
    "CorrelationMatrix",
    "CopulaModel",
    "FitReport",
    "ClassModel",
    "NormalClassModel",
    "Standardization",
    "ClassifierKind",
    "Classifier",
    "Dataset",
    "BaseResponse",
    "Family",
    "FAMILY_PARAMS",
    "CopulaKind",
    "CorrelationStructure",
    "MarginalSpec",
    "ClassCopulaSpec",
    "DatasetSpec",
    "ClassifierConfig",
    "NormalConfig",
    "ParametricMarginalDocument",
    "EmpiricalMarginalDocument",
    "CopulaDocument",
    "ClassModelDocument",
    "NormalClassModelDocument",
    "StandardizationDocument",
    "ClassifierDocument",
    "Evaluation",
    "BenchConfig",
    "RunManifest",
]
