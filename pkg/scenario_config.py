#!/usr/bin/env python3
"""
Growth Lab - Scenario Configuration

Scenario files (TOML, or YAML with a .yaml/.yml suffix) are validated by
pydantic models before anything is computed, then turned into algebra
objects by the build_* helpers.

    label = "polynomial-2"
    n_max = 6
    seed = 42

    [field]
    kind = "rational"            # or "prime" with p = 7

    [algebra]
    kind = "polynomial"          # field | structure_constants | polynomial |
    variables = 2                # free | lie | enveloping
    names = ["x", "y"]

    [[elements]]
    terms = [["x", 1]]           # (basis name, numerator[, denominator])

See README.md for every section and key.
"""

from __future__ import annotations

import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveInt,
    ValidationError,
    field_validator,
    model_validator,
)

from algebra_errors import AlgebraError, ConfigError, InvalidIndexError
from base_algebra import (
    AlgebraElement,
    BaseAlgebra,
    EnvelopingAlgebra,
    FreeAssociativeAlgebra,
    LieStructure,
    PolynomialAlgebra,
    StructureConstantsAlgebra,
    adjoin_unit,
    default_names,
    field_algebra,
    matrix_extend,
)
from scalars import ScalarField

logger = logging.getLogger(__name__)

Term = Tuple[str, int, int]


def _normalize_terms(value: Any) -> Any:
    """Accept [name, num] or [name, num, den]; names may be written as numbers"""
    if not isinstance(value, list):
        return value
    out = []
    for term in value:
        if isinstance(term, (list, tuple)) and len(term) == 2:
            term = [term[0], term[1], 1]
        if isinstance(term, (list, tuple)) and len(term) == 3 and isinstance(term[0], int):
            term = [str(term[0]), term[1], term[2]]
        out.append(term)
    return out


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class FieldSection(StrictModel):
    kind: Literal["rational", "prime"] = Field("rational", description="Ground field")
    p: Optional[int] = Field(None, description="Prime modulus when kind = prime")

    @model_validator(mode="after")
    def check_modulus(self) -> "FieldSection":
        if self.kind == "prime" and self.p is None:
            raise ValueError("prime field needs p")
        if self.kind == "rational" and self.p is not None:
            raise ValueError("rational field takes no p")
        return self


class ElementSection(StrictModel):
    terms: List[Term] = Field(..., description="Linear combination of named basis elements")

    @field_validator("terms", mode="before")
    @classmethod
    def pad_terms(cls, value):
        return _normalize_terms(value)


class ProductEntry(StrictModel):
    left: str
    right: str
    result: List[Term] = Field(default_factory=list)

    @field_validator("result", mode="before")
    @classmethod
    def pad_result(cls, value):
        return _normalize_terms(value)


class AlgebraBase(StrictModel):
    matrix: bool = Field(False, description="Wrap the algebra as 2x2 matrices over it")


class FieldAlgebraSection(AlgebraBase):
    kind: Literal["field"]


class StructureConstantsSection(AlgebraBase):
    kind: Literal["structure_constants"]
    dimension: PositiveInt
    names: Optional[List[str]] = None
    products: List[ProductEntry] = Field(default_factory=list)
    unit: Optional[List[Term]] = None
    adjoin_unit: bool = Field(False, description="Use the unital hull (slot 0 becomes the unit)")

    @field_validator("unit", mode="before")
    @classmethod
    def pad_unit(cls, value):
        return _normalize_terms(value)


class PolynomialSection(AlgebraBase):
    kind: Literal["polynomial"]
    variables: PositiveInt
    names: Optional[List[str]] = None


class FreeSection(AlgebraBase):
    kind: Literal["free"]
    generators: PositiveInt
    names: Optional[List[str]] = None


class LieSection(AlgebraBase):
    kind: Literal["lie"]
    dimension: PositiveInt
    names: Optional[List[str]] = None
    brackets: List[ProductEntry] = Field(default_factory=list)
    order: Optional[List[str]] = Field(None, description="PBW order of the generators")


class EnvelopingSection(LieSection):
    kind: Literal["enveloping"]


AlgebraSection = Annotated[
    Union[
        FieldAlgebraSection,
        StructureConstantsSection,
        PolynomialSection,
        FreeSection,
        LieSection,
        EnvelopingSection,
    ],
    Field(discriminator="kind"),
]


class GrowthSection(StrictModel):
    kind: Literal["assoc", "lie", "commutator"] = "assoc"


class VerifySection(StrictModel):
    trials: PositiveInt = 500
    c_max: PositiveInt = 2


class OracleSection(StrictModel):
    window: PositiveInt = 8
    trials: PositiveInt = 500
    truncation: Optional[PositiveInt] = 16
    max_offset: NonNegativeInt = 3
    max_cell: PositiveInt = 4
    max_degree: NonNegativeInt = 2


class ScenarioConfig(StrictModel):
    label: str = "scenario"
    n_max: PositiveInt
    seed: int = 42
    field: FieldSection = Field(default_factory=FieldSection)
    algebra: AlgebraSection
    elements: List[ElementSection] = Field(default_factory=list)
    growth: GrowthSection = Field(default_factory=GrowthSection)
    verify: VerifySection = Field(default_factory=VerifySection)
    oracle: OracleSection = Field(default_factory=OracleSection)


def _parse_text(path: Path, text: str) -> Dict[str, Any]:
    suffix = path.suffix.lower()
    if suffix == ".toml":
        try:
            return tomllib.loads(text)
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"cannot parse {path}", [str(e)]) from None
    if suffix in (".yaml", ".yml"):
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark is not None else ""
            raise ConfigError(f"cannot parse {path}", [f"{where}{getattr(e, 'problem', None) or e}"]) from None
        if data is None:
            return {}
        if not isinstance(data, dict):
            raise ConfigError(f"cannot parse {path}", ["top level must be a mapping"])
        return data
    raise ConfigError(f"unsupported config format {path.suffix!r} (use .toml, .yaml or .yml)")


def _diagnostics(error: ValidationError) -> List[str]:
    lines = []
    for err in error.errors():
        loc = ".".join(str(part) for part in err["loc"]) or "<root>"
        lines.append(f"{loc}: {err['msg']}")
    return lines


def validate_config(data: Mapping[str, Any], source: str = "<config>") -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(dict(data))
    except ValidationError as e:
        raise ConfigError(f"invalid scenario {source}", _diagnostics(e)) from None


def load_config(path: Union[str, Path], overrides: Optional[Mapping[str, Any]] = None) -> ScenarioConfig:
    """
    Read and validate a scenario file. Non-None overrides (n_max, seed)
    replace top-level keys before validation.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e.strerror}") from None
    data = _parse_text(path, text)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    config = validate_config(data, str(path))
    logger.debug(f"Loaded scenario {config.label!r} from {path}")
    return config


# Builders


def build_field(section: FieldSection) -> ScalarField:
    if section.kind == "prime":
        try:
            return ScalarField.prime(section.p)
        except AlgebraError as e:
            raise ConfigError("invalid field", [f"field.p: {e}"]) from None
    return ScalarField.rational()


def _scalar(field: ScalarField, num: int, den: int, where: str):
    try:
        return field(num, den)
    except AlgebraError as e:
        raise ConfigError("invalid scalar", [f"{where}: {e}"]) from None


def _index_of(names: Sequence[str], name: str, where: str) -> int:
    if name in names:
        return names.index(name)
    raise ConfigError("unknown basis name", [f"{where}: {name!r} is not one of {list(names)}"])


def _constant_table(
    field: ScalarField, names: Sequence[str], entries: Sequence[ProductEntry], section: str
) -> Dict[Tuple[int, int], Dict[int, Any]]:
    table: Dict[Tuple[int, int], Dict[int, Any]] = {}
    for n, entry in enumerate(entries):
        where = f"algebra.{section}.{n}"
        i = _index_of(names, entry.left, f"{where}.left")
        j = _index_of(names, entry.right, f"{where}.right")
        if (i, j) in table:
            raise ConfigError("duplicate entry", [f"{where}: ({entry.left}, {entry.right}) given twice"])
        row: Dict[int, Any] = {}
        for t, (name, num, den) in enumerate(entry.result):
            k = _index_of(names, name, f"{where}.result.{t}")
            row[k] = row.get(k, field.zero) + _scalar(field, num, den, f"{where}.result.{t}")
        table[(i, j)] = row
    return table


def _names(section, count: int, default: Sequence[str]) -> Tuple[str, ...]:
    names = tuple(section.names) if section.names else tuple(default)
    if len(names) != count:
        raise ConfigError("wrong number of names", [f"algebra.names: expected {count}, got {len(names)}"])
    if len(set(names)) != count:
        raise ConfigError("duplicate names", [f"algebra.names: {list(names)}"])
    return names


def build_lie(config: ScenarioConfig) -> LieStructure:
    """Lie structure of a lie/enveloping algebra section (Jacobi-checked)"""
    section = config.algebra
    if not isinstance(section, LieSection):
        raise ConfigError("algebra is not a Lie algebra", [f"algebra.kind: expected lie or enveloping, got {section.kind!r}"])
    field = build_field(config.field)
    names = _names(section, section.dimension, default_names(section.dimension))
    brackets = _constant_table(field, names, section.brackets, "brackets")
    return LieStructure(field, section.dimension, brackets, names=names)


def lie_order(config: ScenarioConfig, lie: LieStructure) -> Optional[List[int]]:
    section = config.algebra
    if not isinstance(section, LieSection) or section.order is None:
        return None
    return [_index_of(lie.names, name, f"algebra.order.{n}") for n, name in enumerate(section.order)]


def build_algebra(config: ScenarioConfig) -> BaseAlgebra:
    """Associative (or, for kind = lie, bracket) algebra of the scenario"""
    section = config.algebra
    field = build_field(config.field)
    if isinstance(section, FieldAlgebraSection):
        algebra: BaseAlgebra = field_algebra(field)
    elif isinstance(section, StructureConstantsSection):
        names = _names(section, section.dimension, [f"e{i}" for i in range(section.dimension)])
        products = _constant_table(field, names, section.products, "products")
        unit = None
        if section.unit is not None:
            unit = {}
            for t, (name, num, den) in enumerate(section.unit):
                k = _index_of(names, name, f"algebra.unit.{t}")
                unit[k] = unit.get(k, field.zero) + _scalar(field, num, den, f"algebra.unit.{t}")
        algebra = StructureConstantsAlgebra(field, section.dimension, products, unit=unit, names=names)
        if section.adjoin_unit:
            algebra = adjoin_unit(algebra)
    elif isinstance(section, PolynomialSection):
        algebra = PolynomialAlgebra(field, section.variables, section.names and _names(section, section.variables, []))
    elif isinstance(section, FreeSection):
        algebra = FreeAssociativeAlgebra(field, section.generators, section.names and _names(section, section.generators, []))
    elif isinstance(section, EnvelopingSection):
        lie = build_lie(config)
        algebra = EnvelopingAlgebra(lie, lie_order(config, lie))
    else:
        algebra = build_lie(config).as_algebra()
    if section.matrix:
        algebra = matrix_extend(algebra)
    logger.info(f"Scenario {config.label!r}: algebra {algebra}")
    return algebra


def parse_element(algebra: BaseAlgebra, terms: Sequence[Term], where: str = "element") -> AlgebraElement:
    total = algebra.zero()
    for t, (name, num, den) in enumerate(terms):
        try:
            monomial = algebra.parse_monomial(name)
        except InvalidIndexError as e:
            raise ConfigError("unknown basis element", [f"{where}.terms.{t}: {e}"]) from None
        total = total + monomial.scale(_scalar(algebra.field, num, den, f"{where}.terms.{t}"))
    return total


def build_elements(config: ScenarioConfig, algebra: BaseAlgebra) -> List[AlgebraElement]:
    return [parse_element(algebra, e.terms, f"elements.{n}") for n, e in enumerate(config.elements)]


def require_elements(config: ScenarioConfig, algebra: BaseAlgebra) -> List[AlgebraElement]:
    """Elements a_1..a_m; at least one, none zero"""
    elements = build_elements(config, algebra)
    if not elements:
        raise ConfigError("missing elements", ["elements: at least one element is required"])
    for n, a in enumerate(elements):
        if not a:
            raise ConfigError("zero element", [f"elements.{n}: element is zero"])
    return elements
