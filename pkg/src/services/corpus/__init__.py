"""例题库服务"""

from .cases import CorpusCase, corpus_cases, load_corpus, published_diff
from .implicit import ImplicitRelation, verify_implicit_solution
from .runner import CorpusRunner, CorpusSummary, run_corpus

__all__ = [
    'CorpusCase',
    'corpus_cases',
    'load_corpus',
    'published_diff',
    'ImplicitRelation',
    'verify_implicit_solution',
    'CorpusRunner',
    'CorpusSummary',
    'run_corpus',
]
