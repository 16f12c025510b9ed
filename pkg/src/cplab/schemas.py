"""JSON Schemas (draft 2020-12) for the CLI's machine output.

Plain data; validate with any JSON Schema implementation.
"""

_edge = {"type": "string", "pattern": r"^\d+-\d+$"}

PARAMS = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cplab/params/1",
    "type": "object",
    "required": ["schema", "k", "p", "s", "r", "m", "t", "pPrime", "chi", "chiPredicted",
                 "turanApplicable", "spectralApplicable"],
    "properties": {
        "schema": {"const": "cplab/params/1"},
        "k": {"type": "integer", "minimum": 3},
        "p": {"type": "integer", "minimum": 1},
        "s": {"type": "integer", "minimum": 1},
        "r": {"type": "integer", "minimum": 0},
        "m": {"type": ["integer", "null"]},
        "t": {"type": ["integer", "null"]},
        "pPrime": {"type": ["integer", "null"]},
        "chi": {"type": "integer"},
        "chiPredicted": {"type": "integer"},
        "turanApplicable": {"type": "boolean"},
        "spectralApplicable": {"type": "boolean"},
    },
}

_criticality = {
    "oneOf": [
        {"type": "string"},
        {
            "type": "object",
            "required": ["target", "chi", "edgeSetB", "edgeRemovalDropsChi", "worstVertexSubset", "verdict"],
            "properties": {
                "target": {"type": "integer"},
                "chi": {"type": "integer"},
                "edgeSetB": {"type": ["array", "null"], "items": _edge},
                "edgeRemovalDropsChi": {"type": "boolean"},
                "worstVertexSubset": {"type": ["array", "null"], "items": {"type": "integer"}},
                "verdict": {"type": "boolean"},
            },
        },
    ]
}

_config = {
    "type": "object",
    "required": ["tol", "tolSource", "cacheDir", "cacheDirSource", "backend"],
    "properties": {
        "tol": {"type": "number", "exclusiveMinimum": 0},
        "tolSource": {"enum": ["flag", "env", "default"]},
        "cacheDir": {"type": "string"},
        "cacheDirSource": {"enum": ["flag", "env", "default"]},
        "backend": {"enum": ["native", "python"]},
    },
}

VERIFY_COLORING = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cplab/verify-coloring/1",
    "type": "object",
    "required": ["schema", "grid", "rows", "pass"],
    "properties": {
        "schema": {"const": "cplab/verify-coloring/1"},
        "grid": {"type": "object", "required": ["kmax", "pmax"]},
        "config": _config,
        "pass": {"type": "boolean"},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "p", "s", "r", "chiPredicted", "chiComputed", "chiMatch", "criticality", "pass"],
                "properties": {
                    "chiPredicted": {"type": "integer"},
                    "chiComputed": {"type": "integer"},
                    "chiMatch": {"type": "boolean"},
                    "edgeSetB": {"type": "array", "items": _edge},
                    "gWitness": {"type": "array", "items": _edge},
                    "criticality": _criticality,
                    "pass": {"type": "boolean"},
                },
            },
        },
    },
}

_check = {"type": "object", "required": ["pass"], "properties": {"pass": {"type": "boolean"}}}

VERIFY_SPECTRAL = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cplab/verify-spectral/1",
    "type": "object",
    "required": ["schema", "n", "k", "p", "params", "checks", "notes", "pass"],
    "properties": {
        "schema": {"const": "cplab/verify-spectral/1"},
        "n": {"type": "integer"},
        "k": {"type": "integer"},
        "p": {"type": "integer"},
        "params": {"type": "object"},
        "config": _config,
        "notes": {"type": "array", "items": {"type": "string"}},
        "pass": {"type": "boolean"},
        "checks": {
            "type": "object",
            "required": ["free", "rayleighBound", "quotientAgreement", "closedForm", "balancing"],
            "additionalProperties": _check,
        },
    },
}

SEARCH = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cplab/search/1",
    "type": "object",
    "required": ["schema", "n", "k", "p", "mode", "value", "witnesses", "exhaustive", "method", "wallTime"],
    "properties": {
        "schema": {"const": "cplab/search/1"},
        "n": {"type": "integer", "minimum": 0},
        "k": {"type": "integer"},
        "p": {"type": "integer"},
        "mode": {"enum": ["ex", "spex"]},
        "value": {"type": "number"},
        "witnesses": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "exhaustive": {"type": "boolean"},
        "method": {"type": "string"},
        "wallTime": {"type": "number", "minimum": 0},
        "config": _config,
        "fromCache": {"type": "boolean"},
    },
}

GRAPH = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": "cplab/graph/1",
    "type": "object",
    "required": ["schema", "n", "edges", "graph6"],
    "properties": {
        "schema": {"const": "cplab/graph/1"},
        "n": {"type": "integer", "minimum": 0},
        "edges": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2,
                                             "maxItems": 2}},
        "graph6": {"type": "string"},
    },
}

BY_ID = {s["$id"]: s for s in (PARAMS, VERIFY_COLORING, VERIFY_SPECTRAL, SEARCH, GRAPH)}
