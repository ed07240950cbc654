"""Feed a polytope and a group through the JSON layer and print the report.

Run: python3 demos/custom_group_json.py
"""
import json

from eqehrhart.equivariant import hstar_series, validate_setup
from eqehrhart.io import group_from_json, hstar_to_json, polytope_from_json

doc = {
    "polytope": {"ambient_dim": 2, "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]},
    # rotation by 90 degrees, cyclic of order 4
    "group": {"generators": [[[0, -1], [1, 0]]], "preset": "cyclic", "labels": {"g": 0}},
}

P = polytope_from_json(doc["polytope"])
G, T = group_from_json(doc["group"])
report = hstar_series(validate_setup(P, G, T))
print(json.dumps(hstar_to_json(report), indent=2))
