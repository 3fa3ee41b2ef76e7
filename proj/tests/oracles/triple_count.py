# Copyright 2026 The apkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Predicts the number of triples emitted for an instance document.

Each map node contributes one rdf:type triple, plus one per value of its `rdf_type` slot. Every
other populated slot-value pair contributes one triple. Reserved `@` keys and nulls contribute none.
Usage: triple_count.py FILE
"""

import json
import sys

import yaml


class StringDateLoader(yaml.SafeLoader):
    pass


StringDateLoader.yaml_implicit_resolvers = {
    key: [(tag, regexp) for tag, regexp in resolvers if tag != "tag:yaml.org,2002:timestamp"]
    for key, resolvers in yaml.SafeLoader.yaml_implicit_resolvers.items()
}


def count(node):
    if not isinstance(node, dict):
        return 0
    total = 1
    for key, value in node.items():
        if key.startswith("@"):
            continue
        values = value if isinstance(value, list) else [value]
        for v in values:
            if v is None:
                continue
            total += 1 + count(v)
    return total


def main():
    path = sys.argv[1]
    with open(path, encoding="utf-8") as f:
        doc = json.load(f) if path.endswith(".json") else yaml.load(f, Loader=StringDateLoader)
    print(count(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
