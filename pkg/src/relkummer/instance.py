"""Line-oriented instance files.

Example::

    # B = <t> over GF(5), cyclic group of order 4
    label = "hand-2-2-5"
    p = 2
    l = 2
    field = GF(5)
    generators = ["t"]
    seed = 0

``zeta`` may be given explicitly (an integer or ``[c0,c1,...]`` literal);
otherwise the canonical primitive p^l-th root of unity is used.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .errors import ParseError, UnsupportedInstanceError
from .expr import parse_field_element, parse_ratfunc
from .ffield import GF, prime_power
from .ratfield import FactoredElement, GaloisContext

KEYS = ("label", "p", "l", "field", "zeta", "generators", "seed")
_FIELD_RE = re.compile(r"^\s*GF\(\s*(\d+)\s*(?:\^\s*(\d+)\s*)?\)\s*(?:modulus\s*=\s*\[([\d\s,]*)\])?\s*$")


def parse_field(text: str) -> GF:
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"malformed field {text!r}; expected GF(r) or GF(r^m) [modulus=[...]]", 0)
    base, exp, modulus = m.group(1), m.group(2), m.group(3)
    if exp is None:
        pp = prime_power(int(base))
        if pp is None:
            raise UnsupportedInstanceError(f"{base} is not a prime power")
        r, deg = pp
    else:
        r, deg = int(base), int(exp)
    coeffs = None
    if modulus is not None:
        coeffs = [int(c) for c in modulus.split(",") if c.strip()]
    return GF(r, deg, coeffs)


@dataclass
class InstanceFile:
    p: int
    l: int
    field: str
    generators: list[str] = field(default_factory=list)
    zeta: str | None = None
    seed: int | None = None
    label: str | None = None
    # 1-based (line, column) of the first character of each generator, for diagnostics
    generator_positions: list[tuple[int, int]] = field(default_factory=list, compare=False, repr=False)

    def context(self) -> GaloisContext:
        k = parse_field(self.field)
        zeta = parse_field_element(self.zeta, k) if self.zeta is not None else None
        return GaloisContext.create(self.p, self.l, k, zeta)

    def parsed_generators(self, ctx: GaloisContext) -> list[FactoredElement]:
        out = []
        for i, text in enumerate(self.generators):
            try:
                out.append(parse_ratfunc(text, ctx, seed=self.seed or 0))
            except ParseError as exc:
                if i >= len(self.generator_positions):
                    raise ParseError(f"generator {i}: {exc.message}", exc.pos) from None
                line, col = self.generator_positions[i]
                raise ParseError(f"generator {i}: {exc.message}", exc.pos, line, col + (exc.pos or 0)) from None
        return out

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "p": self.p,
            "l": self.l,
            "field": self.field,
            "zeta": self.zeta,
            "generators": list(self.generators),
            "seed": self.seed,
        }


def format_instance(inst: InstanceFile) -> str:
    lines = []
    if inst.label is not None:
        lines.append(f"label = {json.dumps(inst.label)}")
    lines.append(f"p = {inst.p}")
    lines.append(f"l = {inst.l}")
    lines.append(f"field = {inst.field}")
    if inst.zeta is not None:
        lines.append(f"zeta = {inst.zeta}")
    lines.append(f"generators = {json.dumps(list(inst.generators))}")
    if inst.seed is not None:
        lines.append(f"seed = {inst.seed}")
    return "\n".join(lines) + "\n"


def _strip_comment(line: str) -> str:
    # '#' inside a quoted string is kept
    in_str = False
    for i, ch in enumerate(line):
        if ch == '"' and (i == 0 or line[i - 1] != "\\"):
            in_str = not in_str
        elif ch == "#" and not in_str:
            return line[:i]
    return line


def _int_value(key: str, value: str, lineno: int, col: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value!r}", None, lineno, col) from None


def _locate_strings(lines: list[str], start_line: int, start_col: int, items: list[str]) -> list[tuple[int, int]]:
    """(line, column) just inside the opening quote of each JSON string, in order."""
    out = []
    ln, col = start_line, start_col
    for item in items:
        needle = json.dumps(item)
        while ln <= len(lines):
            j = lines[ln - 1].find(needle, col - 1)
            if j >= 0:
                out.append((ln, j + 2))
                col = j + 1 + len(needle)
                break
            ln, col = ln + 1, 1
        else:
            out.append((start_line, start_col))
    return out


def parse_instance(text: str) -> InstanceFile:
    values: dict[str, object] = {}
    positions: list[tuple[int, int]] = []
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        raw = lines[i]
        lineno = i + 1
        i += 1
        line = _strip_comment(raw)
        if not line.strip():
            continue
        if "=" not in line:
            col = len(line) - len(line.lstrip()) + 1
            raise ParseError("expected 'key = value'", None, lineno, col)
        key, _, value = line.partition("=")
        key = key.strip()
        vcol = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        value = value.strip()
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", None, lineno, len(raw) - len(raw.lstrip()) + 1)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", None, lineno, 1)
        if key == "generators":
            # a list may span several lines until brackets balance
            start_line = lineno
            buf = value
            while buf.count("[") > buf.count("]") and i < len(lines):
                buf += "\n" + _strip_comment(lines[i])
                i += 1
            try:
                gens = json.loads(buf)
            except json.JSONDecodeError as exc:
                raise ParseError(f"generators: {exc.msg}", None, start_line + exc.lineno - 1,
                                 (vcol - 1 if exc.lineno == 1 else 0) + exc.colno) from None
            if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
                raise ParseError("generators must be a list of strings", None, start_line, vcol)
            values[key] = gens
            positions = _locate_strings(lines, start_line, vcol, gens)
        elif key == "label":
            if value.startswith('"'):
                try:
                    values[key] = json.loads(value)
                except json.JSONDecodeError as exc:
                    raise ParseError(f"label: {exc.msg}", None, lineno, vcol + exc.colno - 1) from None
            else:
                values[key] = value
        elif key in ("p", "l", "seed"):
            values[key] = _int_value(key, value, lineno, vcol)
        else:
            values[key] = value
    for req in ("p", "l", "field"):
        if req not in values:
            raise ParseError(f"missing required key {req!r}", None, len(lines) or 1, 1)
    gens = values.get("generators", [])
    return InstanceFile(
        p=values["p"], l=values["l"], field=values["field"], generators=list(gens),
        zeta=values.get("zeta"), seed=values.get("seed"), label=values.get("label"),
        generator_positions=positions,
    )
