"""
File documents

Instances, quotas, allocations and verdicts are exchanged as JSON
documents. Rationals are written as "p/q" strings in lowest terms and
integers bare, so documents are exact and canonical: serializing a
parsed canonical document reproduces it byte for byte.
"""

import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import core as _core
from . import exceptions as _exceptions
from . import fairness as _fairness
from . import util as _util
from .constants import UNBOUNDED

logger: logging.Logger = logging.getLogger(__name__)

Document = dict[str, Any]

# Top-level instance blocks describing how the instance was produced.
PROVENANCE_BLOCKS: tuple[str, ...] = ("gadget", "random")


def _require(doc: Any, field: str, kind: type | tuple[type, ...], where: str = "") -> Any:
    path: str = f"{where}.{field}" if where else field
    if not isinstance(doc, dict) or field not in doc:
        raise _exceptions.DocumentException(f"missing field {path}")

    value: Any = doc[field]
    if isinstance(value, bool) or not isinstance(value, kind):
        raise _exceptions.DocumentException(f"wrong type at {path}")

    return value


def _integer_list(values: Any, where: str, length: int | None = None) -> tuple[int, ...]:
    if not isinstance(values, list):
        raise _exceptions.DocumentException(f"wrong type at {where}")
    if length is not None and len(values) != length:
        raise _exceptions.DocumentException(
            f"expected {length} entries at {where}, found {len(values)}"
        )

    for index, value in enumerate(values):
        if isinstance(value, bool) or not isinstance(value, int):
            raise _exceptions.DocumentException(f"integer expected at {where}[{index}]")

    return tuple(values)


def _plain(value: Any) -> Any:
    """
    Converts metadata values into document values.
    """

    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return _util.format_rational(value)
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]

    return str(value)


################################################################################
# Quotas                                                                       #
################################################################################


def quota_to_document(quota: _core.Quota) -> Document:
    """
    Serializes a quota.

    :param quota: Quota.
    :return: Document with "lower" and "upper" arrays.
    """

    return {"lower": list(quota.lower), "upper": list(quota.upper)}


def quota_from_document(doc: Any, n: int | None = None, where: str = "quota") -> _core.Quota:
    """
    Parses a quota.

    :param doc: Document.
    :param n: Expected number of agents.
    :param where: Field path used in diagnostics.
    :return: Quota.
    """

    if not isinstance(doc, dict):
        raise _exceptions.DocumentException(f"wrong type at {where}")

    lower = _integer_list(doc.get("lower"), f"{where}.lower", n)
    upper = _integer_list(doc.get("upper"), f"{where}.upper", n)

    try:
        return _core.Quota(lower=lower, upper=upper)
    except _exceptions.InvalidParameterException as exc:
        raise _exceptions.DocumentException(f"{exc} at {where}") from exc


################################################################################
# Instances                                                                    #
################################################################################


def instance_to_document(inst: _core.Instance, quota: _core.Quota | None = None) -> Document:
    """
    Serializes an instance, its quota and its provenance.

    :param inst: Instance.
    :param quota: Optional quota stored alongside.
    :return: Document.
    """

    doc: Document = {
        "agents": inst.n,
        "items": list(inst.item_labels) if inst.item_labels is not None else inst.m,
        "values": [[_util.format_rational(value) for value in row] for row in inst.values],
    }

    if quota is not None:
        doc["quota"] = quota_to_document(quota)

    for block in PROVENANCE_BLOCKS:
        if block in inst.metadata:
            doc[block] = _plain(inst.metadata[block])

    return doc


def instance_from_document(doc: Any) -> tuple[_core.Instance, _core.Quota | None]:
    """
    Parses an instance document.

    :param doc: Document.
    :return: Instance and its quota, if the document carries one.
    """

    n: int = _require(doc, "agents", int)
    if n < 1:
        raise _exceptions.DocumentException("at least one agent required at agents")

    items: int | list = _require(doc, "items", (int, list))
    labels: tuple[str, ...] | None = None
    if isinstance(items, list):
        for index, label in enumerate(items):
            if not isinstance(label, str):
                raise _exceptions.DocumentException(f"string expected at items[{index}]")
        labels = tuple(items)
        m: int = len(labels)
    else:
        m = items
        if m < 0:
            raise _exceptions.DocumentException("negative item count at items")

    rows: list = _require(doc, "values", list)
    if len(rows) != n:
        raise _exceptions.DocumentException(f"expected {n} rows at values, found {len(rows)}")

    values: list[tuple[Fraction, ...]] = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise _exceptions.DocumentException(f"expected {m} values at values[{i}]")

        parsed: list[Fraction] = []
        for g, raw in enumerate(row):
            value: Fraction = _util.parse_rational(raw, f"values[{i}][{g}]")
            if value < 0:
                raise _exceptions.DocumentException(f"negative value at values[{i}][{g}]")
            parsed.append(value)
        values.append(tuple(parsed))

    quota: _core.Quota | None = None
    if "quota" in doc:
        quota = quota_from_document(doc["quota"], n)

    metadata: dict[str, Any] = {block: doc[block] for block in PROVENANCE_BLOCKS if block in doc}
    return _core.Instance(values=tuple(values), item_labels=labels, metadata=metadata), quota


################################################################################
# Allocations and verdicts                                                     #
################################################################################


def witness_to_document(witness: _fairness.EnvyWitness | None) -> Document | None:
    """
    Serializes an envy witness.

    :param witness: Witness, or None.
    :return: Document, or None.
    """

    if witness is None:
        return None

    return {
        "envious": witness.envious,
        "envied": witness.envied,
        "removed_item": witness.removed_item,
        "margin": _util.format_rational(witness.margin),
    }


def verdicts_document(
    inst: _core.Instance,
    allocation: _core.Allocation,
    quota: _core.Quota | None = None,
    alpha: Fraction | None = None,
    eps: Fraction | None = None,
) -> Document:
    """
    Runs the fairness checkers and records their outcomes.

    :param inst: Instance.
    :param allocation: Complete allocation.
    :param quota: Quota to test, if any.
    :param alpha: α to test, if any.
    :param eps: ε to test, if any.
    :return: Verdict block.
    """

    aef, aef_witness = _fairness.is_aef(inst, allocation)
    aef1, aef1_outcome = _fairness.is_aef1(inst, allocation)
    ratio = _fairness.max_alpha(inst, allocation)

    verdicts: Document = {
        "aef": aef,
        "aef1": aef1,
        "max_alpha": "unbounded" if ratio is UNBOUNDED else _util.format_rational(ratio),
        "witnesses": {
            "aef": witness_to_document(aef_witness),
            "aef1": None if aef1 else witness_to_document(aef1_outcome),
        },
    }

    if alpha is not None:
        verdicts["alpha"] = {
            "value": _util.format_rational(alpha),
            "holds": _fairness.is_alpha_aef1(inst, allocation, alpha),
        }

    if eps is not None:
        verdicts["eps"] = {
            "value": _util.format_rational(eps),
            "holds": _fairness.is_eps_aef1(inst, allocation, eps),
        }

    if quota is not None:
        verdicts["quota_satisfied"] = _core.satisfies_quota(allocation, quota)[0]

    return verdicts


def allocation_to_document(
    allocation: _core.Allocation, verdicts: Document | None = None
) -> Document:
    """
    Serializes an allocation.

    :param allocation: Allocation.
    :param verdicts: Optional verdict block.
    :return: Document.
    """

    doc: Document = {"owner": list(allocation.owner)}
    if verdicts is not None:
        doc["verdicts"] = verdicts

    return doc


def allocation_from_document(doc: Any, inst: _core.Instance | None = None) -> _core.Allocation:
    """
    Parses an allocation document.

    :param doc: Document.
    :param inst: When given, owners are checked against its shape.
    :return: Allocation.
    """

    if not isinstance(doc, dict) or "owner" not in doc:
        raise _exceptions.DocumentException("missing field owner")

    owner = _integer_list(doc["owner"], "owner", None if inst is None else inst.m)
    if inst is not None:
        for item, agent in enumerate(owner):
            if not 0 <= agent < inst.n:
                raise _exceptions.DocumentException(f"owner index out of range at owner[{item}]")

    return _core.Allocation(owner)


NO_DOCUMENT: Document = {"verdict": "NO"}


################################################################################
# Files                                                                        #
################################################################################


def dumps_document(doc: Document, compact: bool = False) -> str:
    """
    Renders a document canonically.

    :param doc: Document.
    :param compact: Whether to write the document on a single line.
    :return: JSON text with two-space indentation, or on one line, and a trailing newline.
    """

    if compact:
        return json.dumps(doc, ensure_ascii=False) + "\n"

    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def dump_document(doc: Document, path: str | Path | None = None, compact: bool = False) -> None:
    """
    Writes a document to a file, or to standard output.

    :param doc: Document.
    :param path: Destination; None or "-" for standard output.
    :param compact: Whether to write the document on a single line.
    """

    text: str = dumps_document(doc, compact)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return

    Path(path).write_text(text, encoding="utf-8")
    logger.debug("Wrote %s", path)


def load_document(path: str | Path) -> Any:
    """
    Reads a document.

    :param path: Source file.
    :return: Parsed JSON value.
    """

    try:
        text: str = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _exceptions.DocumentException(f"cannot read {path}: {exc.strerror}") from exc

    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise _exceptions.DocumentException(
            f"malformed document {path}: {exc.msg} at line {exc.lineno}"
        ) from exc


__all__: tuple[str, ...] = (
    "Document",
    "NO_DOCUMENT",
    "quota_to_document",
    "quota_from_document",
    "instance_to_document",
    "instance_from_document",
    "witness_to_document",
    "verdicts_document",
    "allocation_to_document",
    "allocation_from_document",
    "dumps_document",
    "dump_document",
    "load_document",
)
