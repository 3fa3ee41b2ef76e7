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

"""Application-profile toolkit for DCAT-AP, DCAT-AP+ and ChemDCAT-AP."""

from __future__ import annotations

import os
from typing import Any, Union

from ._core import (
    ApkitError,
    Instance,
    Profile,
    builtin_layer,
    compile_shacl,
    content_view,
    extend,
    gen_context,
    gen_docs,
    gen_jsonschema,
    gen_shacl,
    harvest,
    lint,
    project,
)
from . import _core

__all__ = [
    "ApkitError",
    "Instance",
    "Profile",
    "builtin_layer",
    "compile_shacl",
    "content_view",
    "convert",
    "extend",
    "gen_context",
    "gen_docs",
    "gen_jsonschema",
    "gen_shacl",
    "harvest",
    "instance",
    "lint",
    "load_profile",
    "project",
    "validate",
]

__version__ = "0.1.0"

InstanceLike = Union[Instance, str, os.PathLike, dict]


def load_profile(path: Union[str, os.PathLike]) -> Profile:
    """Load a `.profile.json` file."""
    return Profile.load(os.fspath(path))


def instance(value: InstanceLike, root_class: str) -> Instance:
    """Build an instance from a YAML/JSON file path or a plain mapping."""
    if isinstance(value, Instance):
        return value
    if isinstance(value, dict):
        return _core.instance_from_object(value, root_class)
    return Instance.load(os.fspath(value), root_class)


def validate(profile: Profile, value: InstanceLike, root_class: str = "Dataset") -> dict[str, Any]:
    """Validate an instance; returns the report as a dict."""
    return _core.validate(profile, instance(value, root_class))


def convert(
    profile: Profile,
    value: InstanceLike,
    root_class: str = "Dataset",
    format: str = "nt",
    materialize_super: bool = False,
) -> str:
    """Emit a conformant instance as N-Triples (`nt`) or Turtle (`ttl`)."""
    return _core.convert(profile, instance(value, root_class), format, materialize_super)
