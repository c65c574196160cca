"""
Text, JSON and CSV codecs for elements, verification results and reports.

Every writer here is deterministic: canonical term order, fixed key order,
``\\n`` line endings, a trailing newline.
"""

import csv
import io
import json
import os
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from plmagnus.algebra.element import AlgebraMode, Element, Monomial
from plmagnus.algebra.exact import parse_rational
from plmagnus.algebra.trees import TreeParseError, parse_tree
from plmagnus.utils.logger import logger

ELEMENT_FORMAT = "plmagnus-element/1"


def element_to_text(element: Element) -> str:
    """``coefficient<TAB>word`` lines; ``0`` for the zero element."""
    return (element.format() or "0") + "\n"


def element_to_json(element: Element, operation: str) -> str:
    """
    Element as JSON: metadata then one ``[[trees...], numerator, denominator]`` record per line.

    Args:
        element: Element to write
        operation: Name of the computation that produced it

    Returns:
        JSON document ending in a newline
    """
    lines = [
        "{",
        f'  "format": {json.dumps(ELEMENT_FORMAT)},',
        f'  "operation": {json.dumps(operation)},',
        f'  "mode": {json.dumps(element.mode.value)},',
        f'  "order": {element.order},',
    ]
    records = [
        json.dumps([[t.encoding for t in word], c.numerator, c.denominator])
        for word, c in element.items()
    ]
    if records:
        lines.append('  "terms": [')
        lines.extend(f"    {record}," for record in records[:-1])
        lines.append(f"    {records[-1]}")
        lines.append("  ]")
    else:
        lines.append('  "terms": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def element_from_json(text: str) -> Element:
    """
    Parse a document written by :func:`element_to_json`.

    Raises:
        ValueError: If the format tag or a record is malformed
    """
    payload = json.loads(text)
    if payload.get("format") != ELEMENT_FORMAT:
        raise ValueError(f"Unsupported element format {payload.get('format')!r}")
    terms: Dict[Monomial, Fraction] = {}
    for record in payload["terms"]:
        trees, numerator, denominator = record
        word = tuple(parse_tree(enc) for enc in trees)
        terms[word] = terms.get(word, 0) + Fraction(numerator, denominator)
    return Element(terms, payload["order"], AlgebraMode(payload["mode"]))


_TERM_RE = re.compile(r"\s*(?:(?P<coef>[^*\[\]]+)\*)?\s*(?P<word>.*?)\s*$")


def parse_element(text: str, mode: AlgebraMode, order: int) -> Element:
    """
    Parse an operand such as ``[] [[]] + -1/2*[[]]``.

    Terms are joined by ``+``; a term is an optional ``coefficient*``
    followed by whitespace-separated tree encodings, or ``1`` for the unit.

    Raises:
        TreeParseError: With the position of the offending character
    """
    if not text.strip():
        raise TreeParseError("Empty operand", 0)

    terms: Dict[Monomial, Fraction] = {}
    offset = 0
    for chunk in text.split("+"):
        match = _TERM_RE.match(chunk)
        coefficient = Fraction(1)
        word_text = match.group("word")
        word_start = offset + match.start("word")
        if match.group("coef") is not None:
            try:
                coefficient = parse_rational(match.group("coef"))
            except ValueError:
                raise TreeParseError(f"Bad coefficient {match.group('coef').strip()!r}", offset + match.start("coef"))

        if word_text == "1":
            word: Monomial = ()
        elif not word_text:
            raise TreeParseError("Missing word in term", word_start)
        else:
            letters = []
            for token in re.finditer(r"\S+", word_text):
                letters.append(parse_tree(token.group(), word_start + token.start()))
            word = tuple(letters)
        terms[word] = terms.get(word, 0) + coefficient
        offset += len(chunk) + 1

    return Element(terms, order, mode)


def results_to_text(results: Sequence[Any]) -> str:
    """One aligned line per suite result."""
    width = max((len(r.name) for r in results), default=0)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  {r.name.ljust(width)}  residual={r.residual:.3e}  tol={r.tolerance:g}  {r.detail}")
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} suites passed")
    return "\n".join(lines) + "\n"


def results_to_json(results: Sequence[Any]) -> str:
    payload = [
        {
            "name": r.name,
            "group": r.group,
            "passed": r.passed,
            "residual": r.residual if r.residual != float("inf") else "inf",
            "tolerance": r.tolerance,
            "detail": r.detail,
        }
        for r in results
    ]
    return json.dumps(payload, indent=2) + "\n"


def report_to_csv(report) -> str:
    """Columns ``h,error,fitted_slope``; the slope reads ``exact`` when errors are at rounding level."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["h", "error", "fitted_slope"])
    slope = "exact" if report.exact else ("" if report.slope is None else f"{report.slope:.6f}")
    for h, error in zip(report.steps, report.errors):
        writer.writerow([repr(h), f"{error:.12e}", slope])
    return buffer.getvalue()


def report_to_json(report) -> str:
    return json.dumps(report.as_dict(), indent=2) + "\n"


def write_output(text: str, path: Optional[str]) -> None:
    """
    Write to ``path``, or to stdout when no path is given.

    Raises:
        OSError: If the file cannot be written
    """
    if not path:
        print(text, end="")
        return
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", newline="\n") as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def split_list(value: str) -> List[str]:
    """Comma-separated flag value to a list of stripped, non-empty items."""
    return [item.strip() for item in value.split(",") if item.strip()]
