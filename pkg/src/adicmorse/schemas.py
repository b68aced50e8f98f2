"""JSON schemas for the ``--format json`` output of every ``morse`` subcommand."""

_INT = {"type": "integer"}
_INTS = {"type": "array", "items": _INT}
_POINT = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
_BITS = {"type": "string", "pattern": r"^[01]*\([01]+\)$"}

_POINT_MAP = {
    "type": "object",
    "required": ["input", "output", "output_bits"],
    "properties": {"input": _POINT, "output": _POINT, "output_bits": _BITS},
    "additionalProperties": False,
}

INTERVAL = {
    "type": "object",
    "required": ["b", "c", "order", "min", "max"],
    "properties": {"b": _INT, "c": _INT, "order": _INTS, "min": _INT, "max": _INT},
    "additionalProperties": False,
}

_FREQ_TABLE = {"type": "object", "additionalProperties": {"type": "object",
                                                           "additionalProperties": {"type": "number"}}}

SCHEMAS = {
    "step": _POINT_MAP,
    "inverse": _POINT_MAP,
    "derivative": _POINT_MAP,
    "table": {
        "type": "array",
        "items": {"type": "object", "required": ["n", "M"],
                  "properties": {"n": _INT, "M": _INT}, "additionalProperties": False},
    },
    "aseq": {
        "type": "array",
        "items": {"type": "object", "required": ["r", "a"],
                  "properties": {"r": _INT, "a": _INT}, "additionalProperties": False},
    },
    "thue": {
        "type": "object",
        "required": ["length", "word"],
        "properties": {"length": _INT, "word": {"type": "string", "pattern": "^[01]*$"}},
        "additionalProperties": False,
    },
    "perm": {
        "type": "object",
        "required": ["n", "cycle", "table"],
        "properties": {"n": _INT, "cycle": _INTS,
                       "table": {"type": "array", "items": {"type": "array", "items": _INT,
                                                            "minItems": 2, "maxItems": 2}}},
        "additionalProperties": False,
    },
    "order": {
        "type": "object",
        "required": ["n", "kind", "order"],
        "properties": {"n": _INT, "kind": {"enum": ["tau", "taubar"]}, "order": _INTS},
        "additionalProperties": False,
    },
    "trace": {
        "type": "object",
        "required": ["base", "window", "values"],
        "properties": {
            "base": _POINT, "window": _INT,
            "values": {"type": "array",
                       "items": {"type": "object", "required": ["k", "t"],
                                 "properties": {"k": _INT, "t": _INT},
                                 "additionalProperties": False}},
        },
        "additionalProperties": False,
    },
    "build-order": {
        "type": "object",
        "required": ["base", "params", "intervals"],
        "properties": {
            "base": _POINT,
            "params": {"type": "object", "required": ["r", "eps"],
                       "properties": {"r": _INTS, "eps": {"enum": [0, 1]}},
                       "additionalProperties": False},
            "intervals": {"type": "array", "items": INTERVAL},
        },
        "additionalProperties": False,
    },
    "window": {
        "type": "object",
        "required": ["base", "window", "interval"],
        "properties": {"base": _POINT, "window": _INT, "interval": INTERVAL},
        "additionalProperties": False,
    },
    "stats": {
        "type": "object",
        "required": ["sample_count", "kmax", "seed", "frequencies", "expected", "z_scores",
                     "pathological", "jump_mismatches", "corr_r1_gap1"],
        "properties": {
            "sample_count": _INT, "kmax": _INT, "seed": _INT,
            "frequencies": _FREQ_TABLE,
            "expected": {"type": "object", "additionalProperties": {"type": "number"}},
            "z_scores": _FREQ_TABLE,
            "pathological": _INT, "jump_mismatches": _INT,
            "corr_r1_gap1": {"type": "number"},
        },
        "additionalProperties": False,
    },
    "verify": {
        "type": "object",
        "required": ["seed", "passed", "checks"],
        "properties": {
            "seed": _INT, "passed": {"type": "boolean"},
            "checks": {"type": "array", "items": {
                "type": "object",
                "required": ["number", "name", "passed", "ok", "elapsed", "limit", "detail"],
                "properties": {"number": _INT, "name": {"type": "string"},
                               "passed": {"type": "boolean"}, "ok": {"type": "boolean"},
                               "elapsed": {"type": "number"}, "limit": {"type": "number"},
                               "detail": {"type": "string"}},
                "additionalProperties": False}},
        },
        "additionalProperties": False,
    },
}

for _schema in SCHEMAS.values():
    _schema.setdefault("$schema", "https://json-schema.org/draft/2020-12/schema")
