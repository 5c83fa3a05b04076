"""Text formats: cycle/sequence strings, choice-set documents, report output."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path

from .core import DIGITS, FeedbackTable, Params, encode, word_str
from .errors import FormatError

SCHEMA_VERSION = 1


def parse_symbols(text: str, m: int) -> tuple:
    """Digits 0-9 then a-z; whitespace is ignored."""
    if m > len(DIGITS):
        raise FormatError(f"text format supports m <= {len(DIGITS)}, got m={m}")
    out = []
    for k, ch in enumerate("".join(text.split()).lower()):
        v = DIGITS.find(ch)
        if v < 0 or v >= m:
            raise FormatError(f"character {ch!r} at position {k} is not a digit below m={m}")
        out.append(v)
    return tuple(out)


def format_symbols(symbols, m: int) -> str:
    if m > len(DIGITS):
        raise FormatError(f"text format supports m <= {len(DIGITS)}, got m={m}")
    return word_str(symbols)


# -- choice-set documents -------------------------------------------------
#
# {"m": 3, "n": 3, "suffixes": ["01", "02", "10", "12"]}
# {"m": 3, "n": 3, "mask_hex": "1e9"}
#
# bit k of int(mask_hex, 16) is b at prefix k; the hex string has exactly
# ceil(m**(n-1) / 4) digits.


def choice_set_to_dict(b: FeedbackTable, style: str = "suffixes") -> dict:
    p = b.params
    doc = {"m": p.m, "n": p.n}
    if style == "suffixes":
        doc["suffixes"] = [format_symbols(y, p.m) for y in b.choice_set()]
    elif style == "mask_hex":
        width = -(-p.prefix_size // 4)
        doc["mask_hex"] = format(b.mask, f"0{width}x")
    else:
        raise ValueError(f"unknown choice-set style {style!r}")
    return doc


def choice_set_from_dict(doc: dict) -> FeedbackTable:
    try:
        p = Params(int(doc["m"]), int(doc["n"]))
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"choice-set document needs integer m and n: {e}") from e
    has_suffixes = "suffixes" in doc
    has_mask = "mask_hex" in doc
    if has_suffixes == has_mask:
        raise FormatError("choice-set document needs exactly one of 'suffixes' and 'mask_hex'")
    if has_suffixes:
        words = []
        for s in doc["suffixes"]:
            w = parse_symbols(s, p.m)
            if len(w) != p.n - 1:
                raise FormatError(f"suffix {s!r} does not have length n-1 = {p.n - 1}")
            words.append(w)
        if len({encode(w, p.m) for w in words}) != len(words):
            raise FormatError("duplicate suffix in choice set")
        return FeedbackTable.from_choice_set(p, words)
    text = str(doc["mask_hex"])
    width = -(-p.prefix_size // 4)
    if len(text) != width:
        raise FormatError(f"mask_hex must have {width} hex digits, got {len(text)}")
    try:
        mask = int(text, 16)
    except ValueError as e:
        raise FormatError(f"mask_hex is not hexadecimal: {text!r}") from e
    if mask >> p.prefix_size:
        raise FormatError("mask_hex sets bits beyond the last prefix")
    return FeedbackTable.from_mask(p, mask)


def load_choice_set(path: str | Path) -> FeedbackTable:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}: not a JSON document: {e}") from e
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return choice_set_from_dict(doc)


def save_choice_set(b: FeedbackTable, path: str | Path, style: str = "suffixes") -> None:
    Path(path).write_text(json.dumps(choice_set_to_dict(b, style), indent=2) + "\n")


# -- report output ----------------------------------------------------------


def _plain(value):
    if isinstance(value, Enum):
        return value.value
    if is_dataclass(value):
        return _plain(asdict(value))
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def to_json(kind: str, record: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind}
    doc.update(_plain(record))
    return json.dumps(doc, sort_keys=True, indent=2)


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    fields = list(rows[0])
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in rows:
        w.writerow({k: _csv_cell(_plain(v)) for k, v in row.items()})
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return v


def to_text(record: dict) -> str:
    width = max((len(k) for k in record), default=0)
    lines = []
    for k, v in record.items():
        v = _plain(v)
        if isinstance(v, (list, dict)):
            v = json.dumps(v, sort_keys=True)
        lines.append(f"{k.ljust(width)}  {v}")
    return "\n".join(lines) + "\n"


def burnside_csv(report) -> str:
    """Per-k fix counts, then footer rows for N, dihedral_orbits and rfix."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "fix_rotation", "fix_reflection"])
    for k, (rot, ref) in enumerate(zip(report.rotation_fixes, report.reflection_fixes)):
        w.writerow([k, rot, ref])
    w.writerow(["N", report.necklaces, ""])
    w.writerow(["dihedral_orbits", report.dihedral_orbits, ""])
    w.writerow(["rfix", "" if report.rfix is None else report.rfix, ""])
    return buf.getvalue()

