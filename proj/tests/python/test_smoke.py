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

import json
import os
import pathlib
import threading
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer

import jsonschema
import pytest
import yaml

import apkit

ROOT = pathlib.Path(os.environ.get("APKIT_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
FIXTURES = ROOT / "tests" / "fixtures"
PROFILES = ROOT / "resources" / "profiles"


@pytest.fixture(scope="module")
def mini():
    return apkit.load_profile(PROFILES / "dcat-ap-mini.profile.json")


@pytest.fixture(scope="module")
def chem():
    return apkit.load_profile(PROFILES / "chem-dcat-ap.profile.json")


def test_compile_shacl_matches_bundled_profile(mini):
    text = (FIXTURES / "shacl" / "dcat-ap-mini.jsonld").read_text()
    profile, report = apkit.compile_shacl(text, "dcat-ap-mini", "3.0.0")
    assert report["conformant"]
    assert profile == mini
    assert len(profile.classes) == 10
    assert profile.class_uri("Dataset") == "http://www.w3.org/ns/dcat#Dataset"


def test_extend_plus_then_chem(mini, chem):
    extended = apkit.extend(apkit.extend(mini, "plus"), "chem")
    assert extended.to_json() == chem.to_json()
    assert extended.lineage == ["dcat-ap-mini", "dcat-ap-plus"]
    assert extended.subsumes("EvaluatedEntity", "SubstanceSample")


def test_lint_rejects_dropped_mandatory(mini):
    report = apkit.lint(mini, str(FIXTURES / "layers" / "dropped-mandatory.layer.json"))
    assert [f["rule"] for f in report["findings"]] == ["MANDATORY_DROPPED"]
    with pytest.raises(apkit.ApkitError) as info:
        apkit.extend(mini, str(FIXTURES / "layers" / "dropped-mandatory.layer.json"))
    assert info.value.code == "INADMISSIBLE_EXTENSION"


def test_validate_fixture_and_mutant(chem):
    ok = apkit.validate(chem, FIXTURES / "instances" / "nmr-13c-ethyl-acetate.yaml")
    assert ok == {"conformant": True, "findings": []}
    bad = apkit.validate(chem, FIXTURES / "instances" / "mutants" / "nmr-bad-inchikey.yaml")
    assert not bad["conformant"]
    assert len(bad["findings"]) == 1


def test_validate_mapping(mini):
    report = apkit.validate(mini, {"title": "t", "description": "d", "release_date": "2024-02-30"})
    assert [f["path"] for f in report["findings"]] == ["/release_date"]


def test_convert_round_trips_through_ntriples(chem):
    nt = apkit.convert(chem, FIXTURES / "instances" / "nmr-13c-ethyl-acetate.yaml")
    lines = nt.splitlines()
    assert lines == sorted(lines)
    assert len(lines) == 40
    assert apkit.convert(chem, FIXTURES / "instances" / "nmr-13c-ethyl-acetate.yaml") == nt
    with pytest.raises(apkit.ApkitError) as info:
        apkit.convert(chem, FIXTURES / "instances" / "mutants" / "nmr-bad-date.yaml")
    assert info.value.code == "NOT_CONFORMANT"


def test_projection_is_valid_in_base(chem):
    plus = apkit.load_profile(PROFILES / "dcat-ap-plus.profile.json")
    doc = apkit.instance(FIXTURES / "instances" / "reaction-hydrogenation.json", "Dataset")
    projected = apkit.project(doc, chem, plus)
    assert apkit.validate(plus, projected)["conformant"]
    assert "used_catalyst" not in projected.to_json()


def test_jsonschema_agrees_with_fixtures(chem):
    schema = apkit.gen_jsonschema(chem, "Dataset")
    validator = jsonschema.Draft202012Validator(schema, format_checker=jsonschema.FormatChecker())
    loader = type("Loader", (yaml.SafeLoader,), {})
    loader.yaml_implicit_resolvers = {
        k: [r for r in v if r[0] != "tag:yaml.org,2002:timestamp"] for k, v in yaml.SafeLoader.yaml_implicit_resolvers.items()
    }
    good = yaml.load((FIXTURES / "instances" / "nmr-13c-ethyl-acetate.yaml").read_text(), Loader=loader)
    assert not list(validator.iter_errors(good))
    bad = yaml.load((FIXTURES / "instances" / "mutants" / "nmr-unknown-slot.yaml").read_text(), Loader=loader)
    assert list(validator.iter_errors(bad))


def test_shacl_and_docs(chem):
    ttl = apkit.gen_shacl(chem, mode="path")
    assert "https://w3id.org/apkit/shapes/DatasetShape" in ttl
    jsonld = apkit.gen_shacl(chem, syntax="jsonld")
    again, report = apkit.compile_shacl(jsonld, chem.id, chem.version)
    assert report["conformant"]
    assert apkit.content_view(again) == apkit.content_view(chem)
    docs = apkit.gen_docs(chem)
    assert "index.md" in docs and "SubstanceSample.md" in docs
    assert apkit.gen_context(chem)["@context"]["Dataset"] == "dcat:Dataset"
    assert json.loads(apkit.builtin_layer("chem"))["layer_of"] == "dcat-ap-plus"


def test_harvest_against_local_server(tmp_path):
    directory = str(FIXTURES / "harvest")

    class Handler(SimpleHTTPRequestHandler):
        def __init__(self, *args, **kwargs):
            super().__init__(*args, directory=directory, **kwargs)

        def translate_path(self, path):
            return super().translate_path(path.replace("/catalog", "", 1))

        def log_message(self, *args):
            pass

    server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        source = tmp_path / "source.yaml"
        source.write_text(
            "name: py\n"
            f"url: http://127.0.0.1:{server.server_port}/catalog/page-1.json\n"
            f"profile: {PROFILES / 'chem-dcat-ap.profile.json'}\n"
            "root_class: Dataset\n"
        )
        run = apkit.harvest(str(source), str(tmp_path / "out"))
    finally:
        server.shutdown()
    assert (run["fetched"], run["conformant"], run["pages"]) == (4, 3, 2)
    graph = (tmp_path / "out" / "graph.nt").read_text()
    assert "dataset-4" not in graph


def test_errors_carry_codes(mini):
    with pytest.raises(apkit.ApkitError) as info:
        apkit.validate(mini, {}, "Nope")
    assert info.value.code == "UNKNOWN_ROOT_CLASS"
    with pytest.raises(apkit.ApkitError) as info:
        apkit.extend(mini, "chem")
    assert info.value.code == "MISSING_BASE_LAYER"
