"""Input documents (TOML or JSON) describing a computation.

Two modes::

    mode = "sigma10"
    [sigma10]
    d = "s*t^2 + s^3"
    field = { generator = "i", minpoly = "i^2 + 1" }   # optional, default Q

    mode = "combinatorial"
    [combinatorial]
    vertices = [{ id = 0, euler = -1 }]
    edges = []
    arrowheads = [{ id = 1, attach = 0 }, { id = 2, attach = 0, m_at_attach = 1 }]
    pairs = [{ i = 1, sigma_i = 2, vi = -4 }]

Pair ``lambda`` lists hold ``[λ_i, λ_σ(i)]`` (one entry for a self-pair).
All structural problems raise :class:`SchemaError`.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

from ..algebra.fields import QQ, NumberField
from ..boundary import Pair, PairingData
from ..errors import MilnorError, SchemaError
from ..resolution import ResolutionGraph
from ..sigma10 import Sigma10Germ
from .expr import parse_bivariate, parse_univariate

MODES = ("sigma10", "combinatorial")


@dataclass
class Sigma10Input:
    germ: Sigma10Germ
    d_text: str


@dataclass
class CombinatorialInput:
    graph: ResolutionGraph
    pairing: PairingData
    supplied_m: dict[int, int]  # arrowhead index -> claimed m_i(v(i))
    arrow_ids: list[Any]


def load_document(path: str | Path) -> dict[str, Any]:
    """Read a TOML (default) or JSON (``.json``) document."""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if path.suffix.lower() == ".json":
            doc = json.loads(raw)
        else:
            doc = tomllib.loads(raw.decode("utf-8"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise SchemaError(f"{path}: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("the input document must be a table/object")
    return doc


def parse_input(doc: Mapping[str, Any]) -> Sigma10Input | CombinatorialInput:
    present = [m for m in MODES if m in doc]
    mode = doc.get("mode")
    if mode is None and len(present) == 1:
        mode = present[0]
    if mode not in MODES:
        raise SchemaError(f"'mode' must be one of {MODES}, got {mode!r}")
    if present != [mode]:
        raise SchemaError(f"exactly the [{mode}] section must be present, found {present}")
    section = doc[mode]
    if not isinstance(section, Mapping):
        raise SchemaError(f"[{mode}] must be a table")
    if mode == "sigma10":
        return parse_sigma10(section)
    return parse_combinatorial(section)


def load_input(path: str | Path) -> Sigma10Input | CombinatorialInput:
    return parse_input(load_document(path))


# -- sigma10 ---------------------------------------------------------------


def parse_field(spec: Any) -> tuple[NumberField, str | None]:
    """``{generator, minpoly}`` → number field; ``None`` → ℚ."""
    if spec is None:
        return QQ, None
    if not isinstance(spec, Mapping):
        raise SchemaError("field must be a table {generator, minpoly}")
    gen = spec.get("generator")
    minpoly = spec.get("minpoly")
    if not isinstance(gen, str) or not gen.isidentifier() or gen in ("s", "t"):
        raise SchemaError(f"field generator must be a fresh identifier, got {gen!r}")
    if isinstance(minpoly, str):
        coeffs = parse_univariate(minpoly, gen)
    elif isinstance(minpoly, list) and all(isinstance(c, int) and not isinstance(c, bool) for c in minpoly):
        coeffs = list(minpoly)  # lowest degree first
    else:
        raise SchemaError("minpoly must be an expression string or a list of integer coefficients")
    try:
        return NumberField(gen, coeffs), gen
    except MilnorError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"invalid minimal polynomial {minpoly!r}: {exc}") from None


def parse_sigma10(section: Mapping[str, Any]) -> Sigma10Input:
    _reject_unknown(section, {"d", "field"}, "sigma10")
    d_text = section.get("d")
    if not isinstance(d_text, str):
        raise SchemaError("[sigma10] needs d as an expression string")
    field, gen = parse_field(section.get("field"))
    d = parse_bivariate(d_text, field, gen)
    return Sigma10Input(Sigma10Germ(d), d_text)


# -- combinatorial -----------------------------------------------------------


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{what} must be an integer, got {value!r}")
    return value


def _reject_unknown(entry: Mapping[str, Any], allowed: set[str], what: str) -> None:
    extra = set(entry) - allowed
    if extra:
        raise SchemaError(f"unknown key(s) {sorted(extra)} in {what}")


def _table_list(section: Mapping[str, Any], key: str, required: bool = True) -> list:
    val = section.get(key, None if required else [])
    if not isinstance(val, list):
        raise SchemaError(f"[combinatorial] needs '{key}' as an array")
    return val


def parse_combinatorial(section: Mapping[str, Any]) -> CombinatorialInput:
    _reject_unknown(section, {"vertices", "edges", "arrowheads", "pairs"}, "combinatorial")
    vertex_index: dict[Any, int] = {}
    euler: list[int] = []
    for v in _table_list(section, "vertices"):
        if not isinstance(v, Mapping) or "id" not in v or "euler" not in v:
            raise SchemaError(f"vertex entries need id and euler, got {v!r}")
        _reject_unknown(v, {"id", "euler"}, "vertex")
        if v["id"] in vertex_index:
            raise SchemaError(f"duplicate vertex id {v['id']!r}")
        vertex_index[v["id"]] = len(euler)
        euler.append(_int(v["euler"], "euler"))
    if not euler:
        raise SchemaError("at least one vertex is required")

    edges = []
    for e in _table_list(section, "edges", required=False):
        if not isinstance(e, list) or len(e) != 2:
            raise SchemaError(f"edges are [id, id] pairs, got {e!r}")
        try:
            edges.append((vertex_index[e[0]], vertex_index[e[1]]))
        except (KeyError, TypeError):
            raise SchemaError(f"edge {e!r} references an unknown vertex") from None

    arrow_index: dict[Any, int] = {}
    attach: list[int] = []
    supplied_m: dict[int, int] = {}
    for a in _table_list(section, "arrowheads"):
        if not isinstance(a, Mapping) or "id" not in a or "attach" not in a:
            raise SchemaError(f"arrowhead entries need id and attach, got {a!r}")
        _reject_unknown(a, {"id", "attach", "m_at_attach"}, "arrowhead")
        if a["id"] in arrow_index:
            raise SchemaError(f"duplicate arrowhead id {a['id']!r}")
        if a["attach"] not in vertex_index:
            raise SchemaError(f"arrowhead {a['id']!r} attaches to unknown vertex {a['attach']!r}")
        k = len(attach)
        arrow_index[a["id"]] = k
        attach.append(vertex_index[a["attach"]])
        if "m_at_attach" in a:
            supplied_m[k] = _int(a["m_at_attach"], "m_at_attach")

    pairs: list[Pair] = []
    for p in _table_list(section, "pairs"):
        if not isinstance(p, Mapping) or "i" not in p or "sigma_i" not in p:
            raise SchemaError(f"pair entries need i and sigma_i, got {p!r}")
        _reject_unknown(p, {"i", "sigma_i", "vi", "lambda", "v", "alpha"}, "pair")
        try:
            members = (arrow_index[p["i"]], arrow_index[p["sigma_i"]])
        except (KeyError, TypeError):
            raise SchemaError(f"pair {p!r} references an unknown arrowhead") from None
        self_pair = members[0] == members[1]
        lambdas = p.get("lambda")
        if lambdas is not None:
            if not isinstance(lambdas, list) or len(lambdas) != (1 if self_pair else 2):
                raise SchemaError(f"pair {p!r}: lambda must list {1 if self_pair else 2} integer(s)")
            lambdas = [_int(x, "lambda") for x in lambdas]
            if not self_pair and members[0] > members[1]:
                lambdas.reverse()
        vi = _int(p["vi"], "vi") if "vi" in p else None
        v = _int(p["v"], "v") if "v" in p else None
        al = _int(p["alpha"], "alpha") if "alpha" in p else None
        if al is None and vi is None and (lambdas is None or v is None):
            raise SchemaError(f"pair {p!r} needs alpha, vi, or both lambda and v")
        pairs.append(Pair(members, vi=vi, lambdas=tuple(lambdas) if lambdas is not None else None, v=v, alpha=al))

    covered = sorted(i for p in pairs for i in p.members)
    if covered != list(range(len(attach))):
        raise SchemaError("pairs must partition the arrowheads (each arrowhead in exactly one pair)")
    try:
        graph = ResolutionGraph(euler, edges, attach)
        pd = PairingData.from_pairs(len(attach), pairs)
    except MilnorError as exc:
        raise SchemaError(str(exc)) from None
    ids = [None] * len(attach)
    for key, k in arrow_index.items():
        ids[k] = key
    return CombinatorialInput(graph, pd, supplied_m, ids)
