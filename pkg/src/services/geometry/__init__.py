"""几何服务: 规范补全、曲率、规范搜索与度规积分"""

from .curvature import complete, curvature, geodesic_conditions, is_flat
from .gauge import GaugeSearch, gauge_search
from .metric import MetricIntegrator, metric_integrate, path_independence_check

__all__ = [
    'complete',
    'curvature',
    'geodesic_conditions',
    'is_flat',
    'GaugeSearch',
    'gauge_search',
    'MetricIntegrator',
    'metric_integrate',
    'path_independence_check',
]
