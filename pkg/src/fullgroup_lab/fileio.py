"""File formats: spec documents, generator sets, points, tables, manifests.

All documents are UTF-8 JSON with sorted keys and no trailing whitespace;
CSV uses '.' decimals and repr floats, so a rerun with the same inputs
reproduces every output byte for byte.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import __version__
from .cocycles import GeneratorSet, element_from_dict, fibonacci_generators
from .errors import ValidationError
from .points import (
    ExplicitPoint,
    MechanicalPoint,
    PeriodicPoint,
    Point,
    SubstitutionFixedPoint,
    ToeplitzPoint,
)
from .subshifts import (
    SturmianSpec,
    SubshiftSpec,
    SubstitutionSpec,
    ToeplitzSpec,
    build_spec,
    spec_to_dict,
)


def dumps_json(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_json(path: Path, doc: Any) -> None:
    path.write_text(dumps_json(doc), encoding="utf-8")


def load_json(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read JSON document {path}: {exc}") from exc


def load_spec(path: Path) -> SubshiftSpec:
    doc = load_json(path)
    if not isinstance(doc, Mapping):
        raise ValidationError(f"spec document {path} is not an object")
    return build_spec(doc)


def save_spec(path: Path, spec: SubshiftSpec, point: Mapping | None = None) -> None:
    doc = spec_to_dict(spec)
    if point is not None:
        doc["point"] = dict(point)
    write_json(path, doc)


def point_from_dict(spec: SubshiftSpec, desc: Mapping, validate: bool = False) -> Point:
    kind = desc.get("kind")
    if kind == "substitution_fixed_point":
        if not isinstance(spec, SubstitutionSpec):
            raise ValidationError("substitution_fixed_point needs a substitution spec")
        left, right, power = desc.get("left"), desc.get("right"), desc.get("power")
        return SubstitutionFixedPoint(spec, left, right, power, validate=validate)
    if kind == "mechanical":
        if not isinstance(spec, SturmianSpec):
            raise ValidationError("mechanical points need a sturmian spec")
        return MechanicalPoint(spec, int(desc.get("intercept", 0)), validate=validate)
    if kind == "toeplitz":
        if not isinstance(spec, ToeplitzSpec):
            raise ValidationError("toeplitz points need a toeplitz spec")
        return ToeplitzPoint(spec, int(desc.get("anchor", 0)), validate=validate)
    if kind == "periodic":
        return PeriodicPoint(desc["word"], int(desc.get("phase", 0)), spec, validate=validate)
    if kind == "explicit":
        return ExplicitPoint(
            desc["left_period"], desc.get("center", ""), desc["right_period"],
            spec, validate=validate,
        )
    raise ValidationError(f"unknown point kind {kind!r}")


def load_point_descriptor(spec_path: Path) -> Mapping | None:
    doc = load_json(spec_path)
    desc = doc.get("point")
    if desc is not None and not isinstance(desc, Mapping):
        raise ValidationError("'point' must be an object")
    return desc


def parse_fraction(value) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, int):
        return Fraction(value)
    raise ValidationError(f"weights must be exact rationals like '1/3', got {value!r}")


def load_generator_set(path: Path, spec: SubshiftSpec) -> tuple[GeneratorSet, dict[str, Fraction] | None]:
    """Load a generator-set document against an already-loaded spec.

    The document may reference its spec by path (checked for consistency),
    name the builtin family, or carry explicit cocycle tables.  Optional
    weights are exact rationals keyed by generator name.
    """
    doc = load_json(path)
    if not isinstance(doc, Mapping):
        raise ValidationError(f"generator document {path} is not an object")
    ref = doc.get("spec")
    if isinstance(ref, str):
        ref_spec = load_spec((Path(path).parent / ref).resolve())
        if ref_spec != spec:
            raise ValidationError("generator file references a different spec")
    elif isinstance(ref, Mapping):
        if build_spec(ref) != spec:
            raise ValidationError("generator file embeds a different spec")

    if doc.get("builtin") == "fibonacci":
        gens = fibonacci_generators(spec)
    elif "generators" in doc:
        named = []
        for name, data in doc["generators"].items():
            named.append((str(name), element_from_dict(spec, data)))
        named.sort(key=lambda item: item[0])
        gens = GeneratorSet(spec, tuple(named))
    else:
        raise ValidationError("generator document needs 'builtin' or 'generators'")

    weights = None
    if "weights" in doc:
        weights = {name: parse_fraction(w) for name, w in doc["weights"].items()}
        if set(weights) != set(gens.names):
            raise ValidationError("weights must cover exactly the generator names")
    return gens, weights


def save_generator_set(path: Path, gens: GeneratorSet, spec_ref: str | None = None,
                       weights: Mapping[str, Fraction] | None = None) -> None:
    doc: dict[str, Any] = {
        "generators": {name: g.to_dict() for name, g in gens.elements},
    }
    if spec_ref is not None:
        doc["spec"] = spec_ref
    if weights is not None:
        doc["weights"] = {name: str(w) for name, w in weights.items()}
    write_json(path, doc)


def format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, Fraction):
        return repr(float(value))
    return str(value)


def write_table(path_base: Path, headers: Sequence[str], rows: Sequence[Sequence],
                fmt: str) -> Path:
    """Write a rectangular table as CSV or as a JSON array of objects."""
    if fmt == "csv":
        path = path_base.with_suffix(".csv")
        lines = [",".join(headers)]
        lines.extend(",".join(format_cell(v) for v in row) for row in rows)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    elif fmt == "json":
        path = path_base.with_suffix(".json")
        doc = [dict(zip(headers, [_jsonable(v) for v in row])) for row in rows]
        write_json(path, doc)
    else:
        raise ValidationError(f"unknown table format {fmt!r}")
    return path


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    return value


def write_manifest(out_dir: Path, command: str, argv: Sequence[str],
                   parameters: Mapping, outputs: Sequence[str]) -> Path:
    doc = {
        "tool": "fullgroup-lab",
        "version": __version__,
        "command": command,
        "argv": list(argv),
        "parameters": {k: _jsonable(v) for k, v in sorted(parameters.items())},
        "outputs": sorted(outputs),
    }
    path = out_dir / "manifest.json"
    write_json(path, doc)
    return path
