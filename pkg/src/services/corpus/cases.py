"""例题库: 由根系数重新生成的十二个四阶方程

方程一律由 generate(root, class) 得到; 显示文本只用来生成差异报告。
"""

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator

from ...core import algebra
from ...core.jet import JetPolynomial
from ...core.models.forms import ROOT_NAMES, FormClass, RootCoefficients
from ...core.parser import monomial_text, parse, parse_rational, print_rational
from ...utils.config_manager import ConfigManager
from ...utils.exceptions import AppError, CorpusError
from ...utils.logger import Logger
from ..linearize.generator import generate

logger = Logger(__name__)


class RootEntry(BaseModel):
    parameters: List[str] = []
    root: Dict[str, str]
    published_root: Optional[Dict[str, str]] = None
    notes: List[str] = []

    @field_validator('root')
    @classmethod
    def validate_root(cls, v: Dict[str, str]) -> Dict[str, str]:
        missing = [name for name in ROOT_NAMES if name not in v]
        if missing:
            raise ValueError(f"缺少根系数: {missing}")
        return v


class CaseEntry(BaseModel):
    id: int = Field(ge=1)
    root: str
    form: FormClass = Field(alias="class")
    exact: bool
    published: str
    expression: str
    notes: List[str] = []


class CompanionEntry(BaseModel):
    root: str
    form: FormClass = Field(alias="class")
    published: str
    expression: str


class RelationEntry(BaseModel):
    name: str
    published: str
    polynomial: str
    parameters: List[str] = []
    root: Optional[str] = None
    cases: List[int] = []


class CorpusFile(BaseModel):
    roots: Dict[str, RootEntry]
    cases: List[CaseEntry]
    companions: List[CompanionEntry] = []
    relations: List[RelationEntry] = []


@dataclass(frozen=True)
class CorpusCase:
    id: int
    form: FormClass
    root_name: str
    parameters: Tuple[str, ...]
    root: RootCoefficients
    expected_exact: bool
    published: str
    expression: str
    notes: Tuple[str, ...] = ()

    @property
    def jet(self) -> JetPolynomial:
        return generate(self.root, self.form)

    def with_root(self, root: RootCoefficients) -> "CorpusCase":
        return CorpusCase(
            self.id, self.form, self.root_name, self.parameters, root,
            self.expected_exact, self.published, self.expression, self.notes,
        )


@dataclass(frozen=True)
class Companion:
    """与例题同根的低阶方程"""

    form: FormClass
    root_name: str
    parameters: Tuple[str, ...]
    root: RootCoefficients
    published: str
    expression: str

    @property
    def jet(self) -> JetPolynomial:
        return generate(self.root, self.form)


@dataclass(frozen=True)
class Corpus:
    cases: Tuple[CorpusCase, ...]
    companions: Tuple[Companion, ...]
    relations: Tuple[RelationEntry, ...]
    root_notes: Dict[str, Tuple[str, ...]]

    def case(self, case_id: int) -> CorpusCase:
        for case in self.cases:
            if case.id == case_id:
                return case
        raise CorpusError(f"no corpus case {case_id}", {"id": case_id})


def corpus_path() -> Path:
    return ConfigManager().resolve_path("corpus", "path", "data/corpus/corpus.json")


def _parse_root(entry: RootEntry) -> RootCoefficients:
    values = {name: parse_rational(entry.root[name], entry.parameters) for name in ROOT_NAMES}
    return RootCoefficients.from_mapping(values)


def _published_root_notes(name: str, entry: RootEntry, root: RootCoefficients) -> List[str]:
    """显示的辨识结果与采用的根不同之处"""
    if not entry.published_root:
        return []
    notes = []
    for key, text in entry.published_root.items():
        published = parse_rational(text, entry.parameters)
        used = getattr(root, key)
        if published != algebra.lift(used, published.field):
            notes.append(f"root '{name}': published {key} = {text}, used {print_rational(used)}")
    return notes


@lru_cache(maxsize=4)
def load_corpus(path: Optional[Path] = None) -> Corpus:
    path = Path(path) if path else corpus_path()
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        data = CorpusFile.model_validate(raw)
    except (OSError, json.JSONDecodeError, ValidationError) as e:
        logger.error(f"加载例题库失败: {str(e)}")
        raise CorpusError(f"cannot load corpus {path}: {e}", {"path": str(path)})

    roots: Dict[str, RootCoefficients] = {}
    notes: Dict[str, Tuple[str, ...]] = {}
    for name, entry in data.roots.items():
        try:
            roots[name] = _parse_root(entry)
        except AppError as e:
            raise CorpusError(f"root '{name}' does not parse: {e.message}", {"root": name})
        notes[name] = tuple(entry.notes) + tuple(_published_root_notes(name, entry, roots[name]))

    def lookup(name: str) -> RootCoefficients:
        if name not in roots:
            raise CorpusError(f"unknown root '{name}'", {"root": name})
        return roots[name]

    cases = tuple(
        CorpusCase(
            id=c.id, form=c.form, root_name=c.root,
            parameters=tuple(data.roots[c.root].parameters) if c.root in data.roots else (),
            root=lookup(c.root), expected_exact=c.exact,
            published=c.published, expression=c.expression,
            notes=tuple(c.notes) + notes[c.root],
        )
        for c in sorted(data.cases, key=lambda c: c.id)
    )
    companions = tuple(
        Companion(
            form=c.form, root_name=c.root, parameters=tuple(data.roots[c.root].parameters),
            root=lookup(c.root), published=c.published, expression=c.expression,
        )
        for c in data.companions
    )
    logger.info(f"例题库已加载: {len(cases)} 个例题")
    return Corpus(cases, companions, tuple(data.relations), notes)


def corpus_cases(path: Optional[Path] = None) -> List[CorpusCase]:
    return list(load_corpus(path).cases)


def published_diff(jet: JetPolynomial, expression: str, parameters: Tuple[str, ...]) -> List[Dict[str, str]]:
    """显示文本与重新生成的方程逐项比较, 返回系数不同的项"""
    published = parse(expression, parameters)
    field = algebra.merge_fields(published.field, jet.field)
    published, jet = published.with_field(field), jet.with_field(field)
    differences = []
    monomials = sorted(set(published.terms) | set(jet.terms), reverse=True)
    for monomial in monomials:
        lhs, rhs = published.coefficient(monomial), jet.coefficient(monomial)
        if lhs != rhs:
            differences.append({
                "term": monomial_text(monomial) or "1",
                "published": print_rational(lhs),
                "generated": print_rational(rhs),
            })
    return differences
