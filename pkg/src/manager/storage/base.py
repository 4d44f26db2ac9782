from typing import TypeAlias, overload

import numpy as np
from scipy import linalg

from ..copula import make_correlation
from ...core import (
    ClassModel,
    Classifier,
    ClassifierKind,
    CopulaModel,
    EmpiricalMarginal,
    Marginal,
    NormalClassModel,
    ParametricMarginal,
    Standardization,
    ClassifierDocument,
    ClassModelDocument,
    CopulaDocument,
    EmpiricalMarginalDocument,
    NormalClassModelDocument,
    ParametricMarginalDocument,
    StandardizationDocument,
)

_MarginalDocument: TypeAlias = ParametricMarginalDocument | EmpiricalMarginalDocument


class BaseStorage:
    """
    Базовый класс хранилищ.

    Предоставляет методы преобразования доменных объектов (классификатор,
    маргиналы, копулы) в документы pydantic и обратно. Числа переносятся
    без округления, поэтому восстановленная модель классифицирует точки
    в точности так же, как исходная.
    """

    @overload
    def _build_marginal(self, marginal: Marginal) -> _MarginalDocument:
        """
        Преобразует маргинал в документ.

        :param marginal: Параметрический или эмпирический маргинал
        :return: Документ маргинала
        """

    @overload
    def _build_marginal(self, marginal: _MarginalDocument) -> Marginal:
        """
        Восстанавливает маргинал из документа.

        :param marginal: Документ маргинала
        :return: Маргинал
        """

    def _build_marginal(self, marginal: Marginal | _MarginalDocument) -> Marginal | _MarginalDocument:
        """
        Универсальный метод преобразования маргиналов.

        :param marginal: Маргинал или его документ
        :return: Документ или маргинал соответственно
        :raises TypeError: Если передан неподдерживаемый тип
        """
        if isinstance(marginal, ParametricMarginal):
            return ParametricMarginalDocument(family=marginal.family, params=dict(marginal.params))
        elif isinstance(marginal, EmpiricalMarginal):
            return EmpiricalMarginalDocument(
                sorted_samples=marginal.sorted_samples.tolist(),
                grid_x=marginal.grid_x.tolist(),
                grid_logpdf=marginal.grid_logpdf.tolist(),
                density_floor=marginal.density_floor,
            )
        elif isinstance(marginal, ParametricMarginalDocument):
            return ParametricMarginal(family=marginal.family, params=marginal.params)
        elif isinstance(marginal, EmpiricalMarginalDocument):
            return EmpiricalMarginal(
                sorted_samples=np.asarray(marginal.sorted_samples),
                grid_x=np.asarray(marginal.grid_x),
                grid_logpdf=np.asarray(marginal.grid_logpdf),
                density_floor=marginal.density_floor,
            )
        raise TypeError(f"Неподдерживаемый тип маргинала {type(marginal).__name__}")

    @overload
    def _build_copula(self, copula: CopulaModel) -> CopulaDocument: ...

    @overload
    def _build_copula(self, copula: CopulaDocument) -> CopulaModel: ...

    def _build_copula(self, copula: CopulaModel | CopulaDocument) -> CopulaDocument | CopulaModel:
        """
        Преобразует копулу в документ и обратно.

        Матрица ρ хранится целиком построчно; при загрузке повторно проверяется
        и факторизуется.
        """
        if isinstance(copula, CopulaModel):
            return CopulaDocument(
                kind=copula.kind,
                rho=copula.rho.entries.tolist(),
                nu=copula.nu,
                repaired=copula.rho.repaired,
            )
        elif isinstance(copula, CopulaDocument):
            rho = make_correlation(copula.rho)
            if copula.repaired and not rho.repaired:
                rho = type(rho)(entries=rho.entries, chol=rho.chol, logdet=rho.logdet, repaired=True)
            return CopulaModel(kind=copula.kind, rho=rho, nu=copula.nu)
        raise TypeError(f"Неподдерживаемый тип копулы {type(copula).__name__}")

    def _build_class(self, model):
        """
        Преобразует модель класса (копульную или нормальную) в документ и обратно.

        :raises TypeError: Если передан неподдерживаемый тип
        """
        if isinstance(model, ClassModel):
            return ClassModelDocument(
                label=model.label,
                prior=model.prior,
                marginals=[self._build_marginal(m) for m in model.marginals],
                copula=self._build_copula(model.copula),
            )
        elif isinstance(model, NormalClassModel):
            return NormalClassModelDocument(
                label=model.label,
                prior=model.prior,
                mean=model.mean.tolist(),
                covariance=model.covariance.tolist(),
                ridge=model.ridge,
            )
        elif isinstance(model, ClassModelDocument):
            return ClassModel(
                label=model.label,
                prior=model.prior,
                marginals=tuple(self._build_marginal(m) for m in model.marginals),
                copula=self._build_copula(model.copula),
            )
        elif isinstance(model, NormalClassModelDocument):
            covariance = np.asarray(model.covariance, dtype=float)
            chol = linalg.cholesky(covariance, lower=True)
            return NormalClassModel(
                label=model.label,
                prior=model.prior,
                mean=np.asarray(model.mean, dtype=float),
                covariance=covariance,
                chol=chol,
                logdet=2.0 * float(np.sum(np.log(np.diag(chol)))),
                ridge=model.ridge,
            )
        raise TypeError(f"Неподдерживаемый тип модели класса {type(model).__name__}")

    @overload
    def _build_classifier(self, clf: Classifier) -> ClassifierDocument: ...

    @overload
    def _build_classifier(self, clf: ClassifierDocument) -> Classifier: ...

    def _build_classifier(self, clf: Classifier | ClassifierDocument) -> ClassifierDocument | Classifier:
        """
        Преобразует классификатор в документ модели и обратно.

        :param clf: Классификатор или документ
        :return: Документ или классификатор
        :raises TypeError: Если передан неподдерживаемый тип
        """
        if isinstance(clf, Classifier):
            standardization = None
            if clf.standardization is not None:
                standardization = StandardizationDocument(
                    center=clf.standardization.center.tolist(),
                    scale=clf.standardization.scale.tolist(),
                )
            return ClassifierDocument(
                kind=clf.kind.value,
                classes=[self._build_class(m) for m in clf.classes],
                standardization=standardization,
            )
        elif isinstance(clf, ClassifierDocument):
            standardization = None
            if clf.standardization is not None:
                standardization = Standardization(
                    center=np.asarray(clf.standardization.center),
                    scale=np.asarray(clf.standardization.scale),
                )
            return Classifier(
                kind=ClassifierKind(clf.kind),
                classes=tuple(self._build_class(m) for m in clf.classes),
                standardization=standardization,
            )
        raise TypeError(f"Неподдерживаемый тип классификатора {type(clf).__name__}")
