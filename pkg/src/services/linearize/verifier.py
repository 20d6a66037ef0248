"""类别方程校验: 重新生成相等且判据为零"""

from dataclasses import dataclass
from typing import Tuple

from ...core.algebra import RationalFunction
from ...core.jet import JetPolynomial, shape
from ...core.models.forms import FormClass, RootCoefficients
from ...utils.logger import Logger
from .catalog import readout, shape_problems
from .criteria import tresse_criteria
from .generator import generate

logger = Logger(__name__)


@dataclass(frozen=True)
class Verification:
    form: FormClass
    regenerated: bool
    residual_names: Tuple[str, ...]
    criteria: Tuple[RationalFunction, RationalFunction]

    @property
    def criteria_ok(self) -> bool:
        return not any(self.criteria)

    @property
    def ok(self) -> bool:
        return self.regenerated and self.criteria_ok


def verify(f: JetPolynomial, form: FormClass, root: RootCoefficients) -> Verification:
    """比较 generate(root, form) 与 f, 并计算两个判据残差

    形状不符时残差列表给出形状问题, 否则给出取值不同的具名系数。
    """
    generated = generate(root, form)
    criteria = tresse_criteria(root)
    if generated == f:
        return Verification(form, True, (), criteria)

    problems = shape_problems(shape(f), form)
    if problems:
        names = tuple(f"shape: {p}" for p in problems)
    else:
        names = readout(f, form).differing(readout(generated, form))
    logger.debug(f"{form.label} 校验不通过: {names}")
    return Verification(form, False, names, criteria)
