"""线性化判定服务"""

from .catalog import readout, rebuild
from .classifier import ClassificationReport, EquationClassifier, Verdict, classify
from .constraints import audit
from .criteria import is_linearizable, lie_form, tresse_criteria
from .exactness import is_total_derivative
from .extractor import CoefficientExtractor
from .generator import generate, reduce_on_root, root_equation
from .verifier import verify

__all__ = [
    'readout',
    'rebuild',
    'ClassificationReport',
    'EquationClassifier',
    'Verdict',
    'classify',
    'audit',
    'is_linearizable',
    'lie_form',
    'tresse_criteria',
    'is_total_derivative',
    'CoefficientExtractor',
    'generate',
    'reduce_on_root',
    'root_equation',
    'verify',
]
