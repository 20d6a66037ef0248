"""数据模型"""

from .forms import (
    CLASSIFICATION_ORDER,
    FOURTH_ORDER_CLASSES,
    FormClass,
    FormCoefficients,
    RootCoefficients,
)
from .geometry import ChristoffelSet, CurvatureComponents, GaugeChoice, MetricState
from .report import ClassificationModel

__all__ = [
    'CLASSIFICATION_ORDER',
    'FOURTH_ORDER_CLASSES',
    'FormClass',
    'FormCoefficients',
    'RootCoefficients',
    'ChristoffelSet',
    'CurvatureComponents',
    'GaugeChoice',
    'MetricState',
    'ClassificationModel',
]
