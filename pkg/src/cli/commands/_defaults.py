import argparse
from string import Template

from ...core import ClassifierConfig, CopulaKind, Family, MarginalSpec, NormalConfig

EVAL_TEXT = Template("accuracy: ${accuracy}\nn: ${n}\nconfusion (rows = true, columns = predicted):\n${confusion}")

SUMMARY_HEADER = "preset,dim,method,mean_accuracy,count"


def add_classifier_arguments(parser: argparse.ArgumentParser) -> None:
    """Аргументы копула-дискриминанта, общие для train и bench."""
    parser.add_argument("--copula", choices=[k.value for k in CopulaKind], default=CopulaKind.GAUSSIAN.value)
    parser.add_argument("--marginals", choices=["parametric", "empirical"], default="empirical")
    parser.add_argument(
        "--families",
        nargs="+",
        choices=[f.value for f in Family],
        help="Семейства параметрических маргиналов, назначаются признакам по кругу",
    )
    parser.add_argument(
        "--estimation",
        choices=["eml", "cml"],
        help="Метод оценки копулы (по умолчанию eml для gaussian и cml для t)",
    )
    parser.add_argument("--uniform-priors", action="store_true", help="Равные априорные вероятности классов")
    parser.add_argument(
        "--standardize",
        action="store_true",
        help="Стандартизация признаков для нормального дискриминанта",
    )


def classifier_config(args: argparse.Namespace) -> ClassifierConfig:
    """
    Собирает ClassifierConfig из аргументов.

    :raises ValueError: Если сочетание аргументов недопустимо
    """
    kind = CopulaKind(args.copula)
    estimation = args.estimation or ("cml" if kind is CopulaKind.STUDENT_T else "eml")
    return ClassifierConfig(
        copula_kind=kind,
        marginal_mode=args.marginals,
        families=args.families,
        estimation=estimation,
        uniform_priors=args.uniform_priors,
    )


def normal_config(args: argparse.Namespace) -> NormalConfig:
    return NormalConfig(uniform_priors=args.uniform_priors, standardize=args.standardize)


def parse_marginal(text: str) -> MarginalSpec:
    """
    Разбирает маргинал генератора вида ``gamma:shape=4,scale=2``.

    :param text: Семейство и параметры через двоеточие
    :return: Спецификация маргинала
    :raises ValueError: При неверном формате
    """
    family, _, raw = text.partition(":")
    params = {}
    for item in filter(None, raw.split(",")):
        name, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"Ожидался параметр вида имя=значение, получено '{item}'")
        params[name.strip()] = float(value)
    return MarginalSpec(family=Family(family.strip()), params=params)


def format_confusion(confusion: list[list[int]], labels: list[int]) -> str:
    width = max(len(str(v)) for row in confusion for v in [*row, *labels])
    lines = [" " * (width + 1) + " ".join(f"{label:>{width}}" for label in labels)]
    for label, row in zip(labels, confusion):
        lines.append(f"{label:>{width}} " + " ".join(f"{v:>{width}}" for v in row))
    return "\n".join(lines)
