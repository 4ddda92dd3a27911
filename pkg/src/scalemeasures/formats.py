"""Reading and writing contexts, assignments, and exploration scripts.

Two context serializations are supported: the classic plain-text cross
table (`.cxt`) and a JSON document.  Both round-trip names and order
exactly.  Parsers raise FormatError with a line or key reference instead
of propagating bare exceptions.
"""

from __future__ import annotations

import json
from pathlib import Path

from .context import FormalContext
from .errors import FcaError, FormatError
from .explore import Accept, Counterexample, ScriptStep


# ---------------------------------------------------------------------------
# cross table format


def parse_cxt(text: str) -> FormalContext:
    """Parse a cross table document.

    Layout: a `B` header, an optional name line, object and attribute
    counts, the object names, the attribute names, then one row of `X`
    and `.` per object.  Blank lines between sections are tolerated.
    """
    lines = [line.rstrip("\n\r") for line in text.splitlines()]
    pos = 0

    def next_line(allow_blank: bool = False) -> str:
        nonlocal pos
        while pos < len(lines):
            line = lines[pos]
            pos += 1
            if line.strip() or allow_blank:
                return line
        raise FormatError("unexpected end of cross table")

    header = next_line().strip()
    if header != "B":
        raise FormatError(f"expected header 'B', found {header!r}")
    name = ""
    first = next_line().strip()
    if not _is_int(first):
        name = first
        first = next_line().strip()
    try:
        n_objects = int(first)
        n_attributes = int(next_line().strip())
    except ValueError as exc:
        raise FormatError(f"bad count line: {exc}") from None
    if n_objects < 1:
        raise FormatError("a context needs at least one object")
    objects = [next_line() for _ in range(n_objects)]
    attributes = [next_line() for _ in range(n_attributes)]
    incidence = []
    for i in range(n_objects):
        # rows of an attribute-free context are legitimately empty
        row = next_line(allow_blank=n_attributes == 0)
        cells = row.strip()
        if len(cells) != n_attributes:
            raise FormatError(
                f"row for object {objects[i]!r} has {len(cells)} cells, "
                f"expected {n_attributes}")
        for j, cell in enumerate(cells):
            if cell in "Xx":
                incidence.append((objects[i], attributes[j]))
            elif cell != ".":
                raise FormatError(
                    f"unexpected cell {cell!r} in row for {objects[i]!r}")
    try:
        return FormalContext(objects, attributes, incidence, name=name)
    except FcaError as exc:
        raise FormatError(str(exc)) from None


def _is_int(token: str) -> bool:
    try:
        int(token)
    except ValueError:
        return False
    return True


def write_cxt(ctx: FormalContext) -> str:
    out = ["B"]
    if ctx.name:
        out.append(ctx.name)
    out.append(str(ctx.n_objects))
    out.append(str(ctx.n_attributes))
    out.append("")
    out.extend(ctx.objects)
    out.extend(ctx.attributes)
    for i, g in enumerate(ctx.objects):
        row = ctx._rows[i]
        out.append("".join("X" if (row >> j) & 1 else "."
                           for j in range(ctx.n_attributes)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# JSON documents


def context_to_doc(ctx: FormalContext) -> dict:
    return {
        "type": "context",
        "version": 1,
        "name": ctx.name,
        "objects": list(ctx.objects),
        "attributes": list(ctx.attributes),
        "incidence": [[g, m] for g, m in ctx.incidence_pairs()],
    }


def context_from_doc(doc: dict) -> FormalContext:
    if not isinstance(doc, dict):
        raise FormatError("context document must be an object")
    if doc.get("type") not in (None, "context"):
        raise FormatError(f"not a context document: type={doc.get('type')!r}")
    for key in ("objects", "attributes", "incidence"):
        if key not in doc:
            raise FormatError(f"context document misses {key!r}")
    pairs = []
    for entry in doc["incidence"]:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
            raise FormatError(f"bad incidence entry {entry!r}")
        pairs.append((entry[0], entry[1]))
    try:
        return FormalContext(doc["objects"], doc["attributes"], pairs,
                             name=doc.get("name", ""))
    except FcaError as exc:
        raise FormatError(str(exc)) from None


def assignment_from_doc(doc: dict) -> dict[str, str]:
    if not isinstance(doc, dict):
        raise FormatError("assignment document must be an object")
    mapping = doc.get("assignment", doc if "type" not in doc else None)
    if not isinstance(mapping, dict):
        raise FormatError("assignment document needs an 'assignment' object")
    out = {}
    for k, v in mapping.items():
        if not isinstance(k, str) or not isinstance(v, str):
            raise FormatError(f"assignment entries must map names: {k!r}: {v!r}")
        out[k] = v
    return out


def script_from_doc(doc: dict) -> list[ScriptStep]:
    """Parse an exploration script: a list of premise-checked answers."""
    if not isinstance(doc, dict) or "steps" not in doc:
        raise FormatError("script document needs a 'steps' list")
    steps = []
    for k, entry in enumerate(doc["steps"]):
        if not isinstance(entry, dict):
            raise FormatError(f"step {k} must be an object")
        premise = entry.get("premise")
        if premise is not None:
            premise = frozenset(premise)
        if entry.get("accept"):
            steps.append(ScriptStep(answer=Accept(), premise=premise))
        elif "counterexample" in entry:
            attrs = entry["counterexample"]
            if not isinstance(attrs, list):
                raise FormatError(f"step {k}: counterexample must be a list")
            steps.append(ScriptStep(answer=Counterexample(frozenset(attrs)),
                                    premise=premise))
        else:
            raise FormatError(
                f"step {k} needs either accept=true or a counterexample")
    return steps


def script_to_doc(steps: list[ScriptStep]) -> dict:
    out = []
    for step in steps:
        entry: dict = {}
        if step.premise is not None:
            entry["premise"] = sorted(step.premise)
        if isinstance(step.answer, Accept):
            entry["accept"] = True
        else:
            entry["counterexample"] = sorted(step.answer.attributes)
        out.append(entry)
    return {"type": "exploration-script", "version": 1, "steps": out}


# ---------------------------------------------------------------------------
# file loading


def load_context(path: str | Path, require_attributes: bool = True) -> FormalContext:
    """Load a context from a .cxt or .json file.

    Base contexts read from disk must declare at least one attribute;
    pass require_attributes=False for scale snapshots that may be bare.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
        ctx = context_from_doc(doc)
    else:
        ctx = parse_cxt(text)
    if require_attributes and ctx.n_attributes == 0:
        raise FormatError(f"{path}: context declares no attributes")
    if not ctx.name:
        ctx = FormalContext(ctx.objects, ctx.attributes, ctx.incidence_pairs(),
                            name=path.stem)
    return ctx


def load_json(path: str | Path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from None
