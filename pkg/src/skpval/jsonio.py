"""Problem-file schemas: loading and serializing the JSON interchange forms.

Rationals travel as strings "p/q" (or "p"), group values as arrays of such
strings (a bare string or number is accepted for dimension one), infinite
indices as the string "inf", and table indices as "i,j" keys.
"""

from fractions import Fraction

from .classify import PseudoSkpArithmetic, RowArithmetic
from .errors import SchemaError
from .fields import QQ, field_from_spec, field_to_spec
from .ordgroup import GroupValue, format_index
from .poly import TruncationContext
from .realize import SemigroupSpec
from .skp import LimitTail, build_skp
from .valtable import compute_relations

KINDS = ("values", "skp", "expansion", "valuation", "classify", "realize")


def _require(cond, message):
    if not cond:
        raise SchemaError(message)


def load_rational(data):
    if isinstance(data, bool):
        raise SchemaError(f"bad rational {data!r}")
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, str):
        return QQ.parse(data)
    raise SchemaError(f"bad rational {data!r}")


def load_group_value(data, dim=None):
    if isinstance(data, (int, str)):
        data = [data]
    _require(isinstance(data, list) and data, f"bad group value {data!r}")
    v = GroupValue([load_rational(c) for c in data])
    if dim is not None and v.dim != dim:
        raise SchemaError(f"group value {data!r} has dimension {v.dim}, want {dim}")
    return v


def dump_group_value(v):
    return [str(c) for c in v.coords]


def load_index_key(key):
    try:
        i, j = key.split(",")
        return (int(i), int(j))
    except (ValueError, AttributeError) as exc:
        raise SchemaError(f"bad table index {key!r} (want \"i,j\")") from exc


def load_table(data):
    _require(isinstance(data, dict), "table must be an object")
    rows = data.get("rows")
    _require(isinstance(rows, list), "table needs a \"rows\" array")
    _require(
        any(isinstance(r, list) and r for r in rows),
        "table rows are empty",
    )
    for r in rows:
        _require(isinstance(r, list), "each table row must be an array")
    dim = data.get("dimension")
    raw_rows = [[load_group_value(v, dim) for v in row] for row in rows]
    labels = {
        load_index_key(k): int(t)
        for k, t in (data.get("limit_labels") or {}).items()
    }
    try:
        return compute_relations(raw_rows, dimension=dim, limit_labels=labels)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def dump_table(table):
    out = {
        "dimension": table.dimension,
        "rows": [[dump_group_value(v) for v in row] for row in table.rows],
    }
    if table.limit_labels:
        out["limit_labels"] = {
            f"{i},{j}": t for (i, j), t in sorted(table.limit_labels.items())
        }
    return out


def load_limit_tail(data):
    _require(isinstance(data, dict), "limit tail must be an object")
    try:
        exponents = {
            load_index_key(k): (int(a), int(b))
            for k, (a, b) in data["exponents"].items()
        }
        return LimitTail(
            row=int(data["row"]),
            at=int(data["at"]),
            exponents=exponents,
            theta=load_rational(data.get("theta", 1)),
            depth=int(data.get("depth", 64)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad limit tail {data!r}") from exc


def load_skp_problem(data):
    """An skp/valuation problem: the table plus build options."""
    table_data = data.get("values", data)
    table = load_table(table_data)
    field = field_from_spec(data.get("field"))
    thetas = {
        load_index_key(k): field.parse(str(v)) if isinstance(v, str) else field.of(v)
        for k, v in (data.get("thetas") or {}).items()
    }
    tails = [load_limit_tail(t) for t in data.get("limit_tails") or []]
    cutoff = data.get("cutoff")
    truncation = TruncationContext(int(cutoff)) if cutoff is not None else None
    return table, thetas, truncation, field, tails


def build_from_problem(data):
    table, thetas, truncation, field, tails = load_skp_problem(data)
    return build_skp(
        table, thetas=thetas, truncation=truncation, field=field, limit_tails=tails
    )


def load_alpha(data, skp):
    if data is None:
        return None
    if isinstance(data, str):
        data = [int(a) for a in data.split(",")]
    _require(isinstance(data, list), f"bad acceptable vector {data!r}")
    try:
        return tuple(int(a) for a in data)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad acceptable vector {data!r}") from exc


def dump_skp(skp):
    entries = {}
    for index in skp.order:
        e = skp.entries[index]
        key = f"{index[0]},{index[1]}"
        entries[key] = {
            "beta": dump_group_value(e.beta),
            "n": format_index(e.n),
            "d": e.d,
            "poly": str(e.poly),
            "relation": {
                f"{i},{j}": m for (i, j), m in sorted(e.relation.items())
            },
        }
        if e.limit_label is not None:
            entries[key]["limit_label"] = e.limit_label
        if e.truncated_limit:
            entries[key]["truncated_limit"] = True
        if e.unroll_report is not None:
            entries[key]["unroll"] = e.unroll_report.to_json()
    out = {
        "field": field_to_spec(skp.field),
        "entries": entries,
    }
    if skp.truncation.active:
        out["cutoff"] = skp.truncation.cutoff
    return out


def load_arithmetic(data):
    _require(isinstance(data, dict), "arithmetic must be an object")
    rows_data = data.get("rows")
    _require(
        isinstance(rows_data, list) and len(rows_data) == 2,
        "arithmetic needs exactly two rows (rows 1 and 2)",
    )
    rows = []
    for rd in rows_data:
        _require(isinstance(rd, dict), "each arithmetic row must be an object")
        infinite = bool(rd.get("infinite", False))
        final = rd.get("final")
        rows.append(
            RowArithmetic(infinite, load_group_value(final) if final is not None else None)
        )
    beta01 = data.get("beta01")
    declared = data.get("declared")
    try:
        return PseudoSkpArithmetic(
            beta01=load_group_value(beta01) if beta01 is not None else None,
            rows=rows,
            declared=declared,
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def load_semigroup_spec(data):
    _require(isinstance(data, dict), "realize problem must be an object")
    gens = data.get("generators")
    _require(isinstance(gens, list) and gens, "need a nonempty \"generators\" array")
    try:
        return SemigroupSpec(
            [load_group_value(g) for g in gens],
            limit_labels=data.get("limit_labels") or (),
            field=field_from_spec(data.get("field")),
            coeff_bound=int(data.get("coeff_bound", 4)),
            degree_bound=int(data.get("degree_bound", 8)),
            samples=int(data.get("samples", 200)),
            minimality_bound=int(data.get("minimality_bound", 8)),
        )
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def load_thetas_for_realize(data, field):
    out = {}
    for k, v in (data.get("thetas") or {}).items():
        out[load_index_key(k)] = field.parse(str(v)) if isinstance(v, str) else field.of(v)
    return out
