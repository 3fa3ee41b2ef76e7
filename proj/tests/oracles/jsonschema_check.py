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

"""Checks instance files against a JSON Schema with an independent draft 2020-12 validator.

Usage: jsonschema_check.py SCHEMA FILE...
Prints one line per file, `VALID <file>` or `INVALID <file>: <first error>`. Exit status is 0.
YAML timestamps are kept as strings so date checks see the authored text.
"""

import json
import sys

import jsonschema
import yaml


class StringDateLoader(yaml.SafeLoader):
    pass


StringDateLoader.yaml_implicit_resolvers = {
    key: [(tag, regexp) for tag, regexp in resolvers if tag != "tag:yaml.org,2002:timestamp"]
    for key, resolvers in yaml.SafeLoader.yaml_implicit_resolvers.items()
}


def load(path):
    with open(path, encoding="utf-8") as f:
        if path.endswith(".json"):
            return json.load(f)
        return yaml.load(f, Loader=StringDateLoader)


def main():
    with open(sys.argv[1], encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema, format_checker=jsonschema.Draft202012Validator.FORMAT_CHECKER)
    for path in sys.argv[2:]:
        errors = sorted(validator.iter_errors(load(path)), key=lambda e: list(e.absolute_path))
        if errors:
            print(f"INVALID {path}: {errors[0].message[:200]}")
        else:
            print(f"VALID {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
