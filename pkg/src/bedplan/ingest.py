"""Parsing and serialization of the toolkit's interchange files.

Formats (all semicolon-separated text, ``#`` starts a comment line):

* DRG table: header row, then
  ``code;mc;admissions;days;mean_days;mean_days_below_threshold;threshold;
  one_day_admissions;pct_1d;pct_2_3d;pct_4d_to_threshold;pct_above_threshold;
  days_above_threshold``. Percentage columns may be blank; when present they
  are retained on the record for cross-checks.
* Bed inventory: rows ``sector;regime;care;count``.
* Inappropriateness lists: one DRG code per line.
* Scenario files: INI text with a ``[scenario]`` section and ``[step N]``
  override blocks (grammar documented in the README).

Numbers are accepted in both decimal-comma and decimal-point form
("1.234,5" and "1234.5" parse alike); everything internal uses decimal
points. Parsing and serialization round-trip exactly.
"""

from __future__ import annotations

import configparser
import enum
import io
import logging
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Iterable, Optional, Union

from .constraints import ConstraintThresholds
from .finance import CostModel
from .model import (
    BedEntry,
    BedInventory,
    Care,
    DrgKind,
    DrgRecord,
    DrgTable,
    LeaClassifier,
    Population,
    Provenance,
    Regime,
    Sector,
    TableRegime,
)
from .scenario import (
    DrgClass,
    ScenarioSpec,
    ScenarioSpecError,
    SourceBucket,
    StepRule,
    base_step_rules,
)

logger = logging.getLogger(__name__)

EXPECTED_LEA45_SIZE = 43
EXPECTED_LEA45PLUS_SIZE = 65

DRG_TABLE_HEADER = (
    "code;mc;admissions;days;mean_days;mean_days_below_threshold;threshold;"
    "one_day_admissions;pct_1d;pct_2_3d;pct_4d_to_threshold;"
    "pct_above_threshold;days_above_threshold"
)
BED_FILE_HEADER = "sector;regime;care;count"


class IngestError(ValueError):
    """Malformed input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PrivateBedAssumption(enum.Enum):
    """Whether reported private bed totals include day-hospital beds (A)
    or exclude them (B). Mandatory and explicit: the two readings give
    quantitatively different networks."""

    INCLUDES_DH = "A"
    EXCLUDES_DH = "B"


def _text(data: Union[str, bytes]) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


_THOUSAND_GROUPS = re.compile(r"^[+-]?\d{1,3}(\.\d{3})+$")


def _normalize_number(raw: str) -> Decimal:
    s = raw.strip().replace(" ", "")
    if "," in s:
        s = s.replace(".", "").replace(",", ".")
    elif s.count(".") > 1:
        s = s.replace(".", "")
    return Decimal(s)


def _parse_int(raw: str, what: str, line: int) -> int:
    s = raw.strip().replace(" ", "")
    if _THOUSAND_GROUPS.match(s):
        s = s.replace(".", "")
    try:
        value = _normalize_number(s)
    except InvalidOperation:
        raise IngestError(f"{what} is not a number: {raw!r}", line) from None
    if value != value.to_integral_value():
        raise IngestError(f"{what} must be an integer, got {raw!r}", line)
    return int(value)


def _parse_float(raw: str, what: str, line: int) -> float:
    try:
        return float(_normalize_number(raw))
    except InvalidOperation:
        raise IngestError(f"{what} is not a number: {raw!r}", line) from None


def _parse_optional_float(raw: str, what: str, line: int) -> Optional[float]:
    if not raw.strip():
        return None
    return _parse_float(raw, what, line)


def _parse_share(raw: str, what: str, line: int) -> float:
    """A percentage column (0-100) into a fraction, exactly."""
    try:
        return float(_normalize_number(raw) / 100)
    except InvalidOperation:
        raise IngestError(f"{what} is not a number: {raw!r}", line) from None


def _parse_optional_share(raw: str, what: str, line: int) -> Optional[float]:
    if not raw.strip():
        return None
    return _parse_share(raw, what, line)


def _share_str(fraction: Optional[float]) -> str:
    """A fraction as the percentage string that parses back exactly."""
    if fraction is None:
        return ""
    return str(Decimal(repr(fraction)) * 100)


def _float_str(value: Optional[float]) -> str:
    return "" if value is None else repr(value)


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield number, line


def parse_drg_table(
    data: Union[str, bytes],
    regime: TableRegime = TableRegime.ACUTE_RO,
    year: str = "",
) -> DrgTable:
    """Parse a DRG demand table. Row order is preserved; an empty input is
    an empty table."""
    lines = list(_content_lines(_text(data)))
    if not lines:
        return DrgTable(records=(), year=year, regime=regime)

    first_number, first_line = lines[0]
    if first_line.split(";")[0].strip().lower() != "code":
        raise IngestError(
            f"missing header row (expected {DRG_TABLE_HEADER!r})", first_number
        )

    records: list[DrgRecord] = []
    seen: set[str] = set()
    for number, line in lines[1:]:
        fields = [f.strip() for f in line.split(";")]
        if len(fields) != 13:
            raise IngestError(
                f"expected 13 columns, got {len(fields)}", number
            )
        code = fields[0]
        if not code:
            raise IngestError("empty DRG code", number)
        if code in seen:
            raise IngestError(f"duplicate DRG code {code}", number)
        seen.add(code)
        try:
            kind = DrgKind(fields[1].upper())
        except ValueError:
            raise IngestError(
                f"DRG kind must be M or C, got {fields[1]!r}", number
            ) from None
        records.append(
            DrgRecord(
                code=code,
                kind=kind,
                admissions=_parse_int(fields[2], "admissions", number),
                total_days=_parse_int(fields[3], "days", number),
                mean_stay_days=_parse_optional_float(fields[4], "mean_days", number),
                mean_stay_below_threshold=_parse_optional_float(
                    fields[5], "mean_days_below_threshold", number
                ),
                threshold_days=_parse_int(fields[6], "threshold", number),
                one_day_admissions=_parse_int(
                    fields[7], "one_day_admissions", number
                ),
                one_day_share=_parse_optional_share(fields[8], "pct_1d", number),
                share_2_3_days=_parse_optional_share(fields[9], "pct_2_3d", number),
                share_4_to_threshold=_parse_optional_share(
                    fields[10], "pct_4d_to_threshold", number
                ),
                above_threshold_admission_share=_parse_share(
                    fields[11], "pct_above_threshold", number
                ),
                days_above_threshold=_parse_int(
                    fields[12], "days_above_threshold", number
                ),
            )
        )
    return DrgTable(records=tuple(records), year=year, regime=regime)


def serialize_drg_table(table: DrgTable) -> str:
    out = io.StringIO()
    out.write(DRG_TABLE_HEADER + "\n")
    for r in table.records:
        out.write(
            ";".join(
                (
                    r.code,
                    r.kind.value,
                    str(r.admissions),
                    str(r.total_days),
                    _float_str(r.mean_stay_days),
                    _float_str(r.mean_stay_below_threshold),
                    str(r.threshold_days),
                    str(r.one_day_admissions),
                    _share_str(r.one_day_share),
                    _share_str(r.share_2_3_days),
                    _share_str(r.share_4_to_threshold),
                    _share_str(r.above_threshold_admission_share),
                    str(r.days_above_threshold),
                )
            )
            + "\n"
        )
    return out.getvalue()


_SECTORS = {s.value: s for s in Sector}
_REGIMES = {r.value.lower(): r for r in Regime}
_CARES = {c.value: c for c in Care}


def parse_bed_inventory(
    data: Union[str, bytes], assumption: PrivateBedAssumption
) -> BedInventory:
    """Parse a bed inventory.

    Private-sector entries carry the chosen reading of the reported totals:
    under ``INCLUDES_DH`` the private ordinary figure still contains an
    unknown day-hospital share, so it is flagged estimated and the split is
    left pending for the stock-estimation analysis. A private acute DH
    entry is synthesized at zero (estimated) whenever the file has none,
    since that count is never reported.
    """
    entries: dict[tuple[Sector, Regime, Care], BedEntry] = {}
    for number, line in _content_lines(_text(data)):
        if line.lower().replace(" ", "") == BED_FILE_HEADER:
            continue
        fields = [f.strip() for f in line.split(";")]
        if len(fields) != 4:
            raise IngestError(f"expected 4 columns, got {len(fields)}", number)
        sector = _SECTORS.get(fields[0].lower())
        if sector is None:
            raise IngestError(f"unknown sector {fields[0]!r}", number)
        regime = _REGIMES.get(fields[1].lower())
        if regime is None:
            raise IngestError(f"unknown regime {fields[1]!r}", number)
        care = _CARES.get(fields[2].lower())
        if care is None:
            raise IngestError(f"unknown care type {fields[2]!r}", number)
        count = _parse_int(fields[3], "bed count", number)
        if count < 0:
            raise IngestError(f"bed count is negative ({count})", number)
        key = (sector, regime, care)
        if key in entries:
            raise IngestError(
                f"duplicate entry {fields[0]}/{fields[1]}/{fields[2]}", number
            )
        if sector is Sector.PRIVATE:
            provenance = (
                Provenance.ESTIMATED
                if assumption is PrivateBedAssumption.INCLUDES_DH
                else Provenance.REPORTED
            )
        else:
            provenance = Provenance.REPORTED
        entries[key] = BedEntry(count, provenance)

    pending = (Sector.PRIVATE, Regime.DH, Care.ACUTE)
    if pending not in entries:
        entries[pending] = BedEntry(0, Provenance.ESTIMATED)
    return BedInventory(entries=entries)


def serialize_bed_inventory(inventory: BedInventory) -> str:
    """Inverse of :func:`parse_bed_inventory` for inventories it produced:
    synthesized zero entries are omitted and re-created on parse."""
    pending = (Sector.PRIVATE, Regime.DH, Care.ACUTE)
    out = io.StringIO()
    out.write(BED_FILE_HEADER + "\n")
    for key, entry in sorted(
        inventory.entries.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value, kv[0][2].value)
    ):
        if key == pending and entry.count == 0 and entry.provenance is Provenance.ESTIMATED:
            continue
        sector, regime, care = key
        out.write(f"{sector.value};{regime.value};{care.value};{entry.count}\n")
    return out.getvalue()


def _parse_code_list(data: Union[str, bytes]) -> frozenset[str]:
    codes = set()
    for _, line in _content_lines(_text(data)):
        codes.add(line.split("#")[0].strip())
    return frozenset(codes)


def parse_lea_lists(
    data45: Union[str, bytes], data45plus: Union[str, bytes]
) -> LeaClassifier:
    """Parse the two inappropriateness code lists.

    The customary list sizes (43 and 65) are checked only as a warning,
    since regions revise the lists; overlap between them is an error.
    """
    lea45 = _parse_code_list(data45)
    lea45plus = _parse_code_list(data45plus)
    overlap = lea45 & lea45plus
    if overlap:
        raise IngestError(
            "codes present in both lists: " + ", ".join(sorted(overlap))
        )
    if lea45 and len(lea45) != EXPECTED_LEA45_SIZE:
        logger.warning(
            "first inappropriateness list has %d codes (customarily %d)",
            len(lea45),
            EXPECTED_LEA45_SIZE,
        )
    if lea45plus and len(lea45plus) != EXPECTED_LEA45PLUS_SIZE:
        logger.warning(
            "extension list has %d codes (customarily %d)",
            len(lea45plus),
            EXPECTED_LEA45PLUS_SIZE,
        )
    return LeaClassifier(lea45=lea45, lea45plus=lea45plus)


def serialize_lea_lists(classifier: LeaClassifier) -> tuple[str, str]:
    return (
        "".join(f"{code}\n" for code in sorted(classifier.lea45)),
        "".join(f"{code}\n" for code in sorted(classifier.lea45plus)),
    )


_SOURCE_NAMES = {
    "dh": SourceBucket.DH,
    "ro1d-": SourceBucket.RO_ONE_DAY,
    "ro1d+": SourceBucket.RO_MULTI_DAY,
    "at": SourceBucket.ABOVE_THRESHOLD_DAYS,
}
_CLASS_NAMES = {c.value: c for c in DrgClass}
_FRACTION_KEYS = ("to_dh", "to_ambul", "to_rsa", "to_amau", "to_rehab", "stay")


def parse_scenario(data: Union[str, bytes]) -> ScenarioSpec:
    """Parse a scenario file.

    ``[scenario]`` carries name, included steps, and the balancing target;
    each ``[step N]`` block overrides that step's fractions (and optionally
    its source bucket, otherwise the base mapping for the id applies).
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        parser.read_string(_text(data))
    except configparser.Error as exc:
        raise ScenarioSpecError(f"unparseable scenario file: {exc}") from exc
    if "scenario" not in parser:
        raise ScenarioSpecError("scenario file needs a [scenario] section")
    main = parser["scenario"]
    name = main.get("name", "").strip()
    if not name:
        raise ScenarioSpecError("scenario file needs a name")

    steps_raw = main.get("steps", "1 2 3 4 5 6 7").replace(",", " ")
    try:
        steps = tuple(int(tok) for tok in steps_raw.split())
    except ValueError:
        raise ScenarioSpecError(f"bad steps list {steps_raw!r}") from None

    def opt_float(key: str) -> Optional[float]:
        raw = main.get(key, "").strip()
        if not raw:
            return None
        try:
            return float(_normalize_number(raw))
        except InvalidOperation:
            raise ScenarioSpecError(f"bad number for {key}: {raw!r}") from None

    overrides = []
    base = base_step_rules()
    for section in parser.sections():
        if not section.startswith("step"):
            if section != "scenario":
                raise ScenarioSpecError(f"unknown section [{section}]")
            continue
        try:
            step_id = int(section[len("step"):].strip())
        except ValueError:
            raise ScenarioSpecError(f"bad step section [{section}]") from None
        if not 1 <= step_id <= 7:
            raise ScenarioSpecError(f"step id must be 1-7, got {step_id}")
        block = parser[section]
        for key in block:
            if key not in _FRACTION_KEYS and key != "source":
                raise ScenarioSpecError(
                    f"unknown key {key!r} in [{section}]"
                )
        if "source" in block:
            tokens = block["source"].split()
            if (
                len(tokens) != 2
                or tokens[0] not in _CLASS_NAMES
                or tokens[1] not in _SOURCE_NAMES
            ):
                raise ScenarioSpecError(
                    f"bad source {block['source']!r} in [{section}]"
                )
            drg_class = _CLASS_NAMES[tokens[0]]
            source = _SOURCE_NAMES[tokens[1]]
        else:
            drg_class = base[step_id].drg_class
            source = base[step_id].source
        fractions = {}
        for key in _FRACTION_KEYS:
            raw = block.get(key, "").strip()
            if raw:
                try:
                    fractions[key] = float(_normalize_number(raw))
                except InvalidOperation:
                    raise ScenarioSpecError(
                        f"bad number for {key} in [{section}]: {raw!r}"
                    ) from None
        overrides.append(
            StepRule(step=step_id, drg_class=drg_class, source=source, **fractions)
        )

    return ScenarioSpec(
        name=name,
        steps=steps,
        overrides=tuple(sorted(overrides, key=lambda r: r.step)),
        beta=opt_float("beta"),
        acute_density=opt_float("acute_density"),
        rehab_density=opt_float("rehab_density"),
        rsa_share=opt_float("rsa_share"),
    )


def serialize_scenario(spec: ScenarioSpec) -> str:
    out = io.StringIO()
    out.write("[scenario]\n")
    out.write(f"name = {spec.name}\n")
    out.write("steps = " + " ".join(str(s) for s in spec.steps) + "\n")
    if spec.beta is not None:
        out.write(f"beta = {spec.beta!r}\n")
    if spec.acute_density is not None:
        out.write(f"acute_density = {spec.acute_density!r}\n")
    if spec.rehab_density is not None:
        out.write(f"rehab_density = {spec.rehab_density!r}\n")
    if spec.rsa_share is not None:
        out.write(f"rsa_share = {spec.rsa_share!r}\n")
    for rule in sorted(spec.overrides, key=lambda r: r.step):
        out.write(f"\n[step {rule.step}]\n")
        out.write(f"source = {rule.drg_class.value} {rule.source.value}\n")
        for key in _FRACTION_KEYS:
            value = getattr(rule, key)
            if value:
                out.write(f"{key} = {value!r}\n")
    return out.getvalue()


def _parse_keyvalue(
    data: Union[str, bytes], allowed: Iterable[str], what: str
) -> dict[str, str]:
    allowed = set(allowed)
    values: dict[str, str] = {}
    for number, line in _content_lines(_text(data)):
        if "=" not in line:
            raise IngestError(f"expected 'key = value' in {what} file", number)
        key, _, raw = line.partition("=")
        key = key.strip()
        if key not in allowed:
            raise IngestError(f"unknown {what} key {key!r}", number)
        if key in values:
            raise IngestError(f"duplicate {what} key {key!r}", number)
        values[key] = raw.strip()
    return values


@dataclass(frozen=True)
class PopulationInputs:
    """Resident population plus the optional admission counts for the
    non-acute regimes, which the demand tables do not cover."""

    population: Population
    rehab_ro_admissions: Optional[int] = None
    rehab_dh_admissions: Optional[int] = None
    ltc_admissions: Optional[int] = None


_POPULATION_KEYS = (
    "residents",
    "inflow_admissions",
    "outflow_admissions",
    "rehab_ro_admissions",
    "rehab_dh_admissions",
    "ltc_admissions",
)


def parse_population(data: Union[str, bytes]) -> PopulationInputs:
    values = _parse_keyvalue(data, _POPULATION_KEYS, "population")
    if "residents" not in values:
        raise IngestError("population file must set residents")

    def get_int(key: str, default: Optional[int]) -> Optional[int]:
        if key not in values:
            return default
        return _parse_int(values[key], key, 0)

    return PopulationInputs(
        population=Population(
            residents=_parse_int(values["residents"], "residents", 0),
            inflow_admissions=get_int("inflow_admissions", 0),
            outflow_admissions=get_int("outflow_admissions", 0),
        ),
        rehab_ro_admissions=get_int("rehab_ro_admissions", None),
        rehab_dh_admissions=get_int("rehab_dh_admissions", None),
        ltc_admissions=get_int("ltc_admissions", None),
    )


_THRESHOLD_KEYS = (
    "max_total_density",
    "max_acute_density",
    "max_rehab_ltc_density",
    "max_hospitalization_rate",
    "min_dh_admission_share",
    "min_dh_bed_share",
)


def parse_thresholds(data: Union[str, bytes]) -> ConstraintThresholds:
    values = _parse_keyvalue(data, _THRESHOLD_KEYS, "thresholds")
    kwargs = {k: _parse_float(v, k, 0) for k, v in values.items()}
    return ConstraintThresholds(**kwargs)


_COST_KEYS = (
    "acute_bed_pa",
    "rehab_ltc_bed_pa",
    "rsa_bed_pa",
    "ambulatory_service",
    "rsa_days_per_bed",
)


def parse_costs(data: Union[str, bytes]) -> CostModel:
    values = _parse_keyvalue(data, _COST_KEYS, "costs")
    kwargs = {k: _parse_float(v, k, 0) for k, v in values.items()}
    return CostModel(**kwargs)
