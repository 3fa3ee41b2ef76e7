// Copyright 2026 The apkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>

#include "apkit/artifact.hpp"
#include "apkit/error.hpp"
#include "apkit/harvest.hpp"
#include "apkit/instance.hpp"
#include "apkit/profile_extend.hpp"
#include "apkit/rdf.hpp"
#include "apkit/schema_ir.hpp"
#include "apkit/shacl.hpp"
#include "apkit/validate.hpp"

namespace py = pybind11;

namespace {

py::object to_python(const std::string& json_text) { return py::module_::import("json").attr("loads")(json_text); }

std::string from_python(const py::object& value) { return py::module_::import("json").attr("dumps")(value).cast<std::string>(); }

apkit::ExtensionLayer resolve_layer(const std::string& layer, const apkit::SchemaIR& base) {
  if (layer == "plus" || layer == "chem") return apkit::builtin_layer_for(layer, base);
  return apkit::load_layer(layer);
}

apkit::ShapeIriPolicy policy_for(const std::string& base, const std::string& mode) {
  if (mode == "fragment") return apkit::ShapeIriPolicy::fragment(base);
  if (mode == "path") return apkit::ShapeIriPolicy::path(base);
  throw apkit::Error(apkit::ErrorCode::kInvalidPolicy, "unknown shape IRI mode '" + mode + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of apkit";

  static py::exception<apkit::Error> error_type(m, "ApkitError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const apkit::Error& e) {
      py::object instance = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      instance.attr("code") = std::string(apkit::to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), instance.ptr());
    }
  });

  py::class_<apkit::SchemaIR>(m, "Profile")
      .def_static("load", &apkit::load_profile, py::arg("path"))
      .def_static(
          "from_json", [](const std::string& text) { return apkit::ir_from_json(nlohmann::json::parse(text)); },
          py::arg("text"))
      .def_readonly("id", &apkit::SchemaIR::id)
      .def_readonly("version", &apkit::SchemaIR::version)
      .def_readonly("layer_of", &apkit::SchemaIR::layer_of)
      .def_readonly("lineage", &apkit::SchemaIR::lineage)
      .def_property_readonly("classes",
                             [](const apkit::SchemaIR& ir) {
                               std::vector<std::string> out;
                               for (const auto& [name, cls] : ir.classes) out.push_back(name);
                               return out;
                             })
      .def_property_readonly("slots",
                             [](const apkit::SchemaIR& ir) {
                               std::vector<std::string> out;
                               for (const auto& [name, slot] : ir.slots) out.push_back(name);
                               return out;
                             })
      .def("class_uri", [](const apkit::SchemaIR& ir, const std::string& name) -> std::optional<std::string> {
        const auto* cls = ir.find_class(name);
        if (cls == nullptr) return std::nullopt;
        return cls->class_uri;
      })
      .def("effective_slots",
           [](const apkit::SchemaIR& ir, const std::string& class_name) {
             if (ir.find_class(class_name) == nullptr) {
               throw apkit::Error(apkit::ErrorCode::kUnknownClass, "no class '" + class_name + "'");
             }
             std::vector<std::string> out;
             for (const auto& [name, slot] : apkit::effective_slots(ir, class_name)) out.push_back(name);
             return out;
           })
      .def("subsumes", [](const apkit::SchemaIR& ir, const std::string& ancestor,
                          const std::string& descendant) { return apkit::subsumes(ir, ancestor, descendant); })
      .def("to_json", &apkit::canonical_string)
      .def("save", &apkit::save_profile, py::arg("path"))
      .def("__eq__", [](const apkit::SchemaIR& a, const apkit::SchemaIR& b) { return a == b; })
      .def("__repr__", [](const apkit::SchemaIR& ir) {
        return "<Profile " + ir.id + " classes=" + std::to_string(ir.classes.size()) +
               " slots=" + std::to_string(ir.slots.size()) + ">";
      });

  py::class_<apkit::InstanceDocument>(m, "Instance")
      .def_static("load", &apkit::load_instance, py::arg("path"), py::arg("root_class"))
      .def_static(
          "from_json",
          [](const std::string& text, const std::string& root_class) {
            return apkit::InstanceDocument{root_class, apkit::node_from_json(nlohmann::ordered_json::parse(text)), "<json>"};
          },
          py::arg("text"), py::arg("root_class"))
      .def_readonly("root_class", &apkit::InstanceDocument::root_class)
      .def("to_json", [](const apkit::InstanceDocument& doc) { return apkit::to_json(doc.root).dump(); });

  m.def(
      "compile_shacl",
      [](const std::string& text, const std::string& profile_id, const std::string& version,
         const std::optional<std::string>& context_override) {
        apkit::ParseOptions options;
        if (context_override) options.context_override = nlohmann::ordered_json::parse(*context_override);
        auto result = apkit::compile(apkit::parse_jsonld(text, options), profile_id, version);
        return py::make_tuple(std::move(result.ir), to_python(result.report.to_json().dump()));
      },
      py::arg("text"), py::arg("profile_id"), py::arg("version") = "", py::arg("context_override") = py::none());

  m.def(
      "extend",
      [](const apkit::SchemaIR& base, const std::string& layer) { return apkit::merge_layers(base, resolve_layer(layer, base)); },
      py::arg("base"), py::arg("layer"));
  m.def(
      "lint",
      [](const apkit::SchemaIR& base, const std::string& layer) {
        return to_python(apkit::lint_extension(base, resolve_layer(layer, base)).to_json().dump());
      },
      py::arg("base"), py::arg("layer"));
  m.def("builtin_layer", &apkit::builtin_layer_text, py::arg("name"));

  m.def(
      "validate",
      [](const apkit::SchemaIR& ir, const apkit::InstanceDocument& doc) {
        return to_python(apkit::validate(doc, ir).to_json().dump());
      },
      py::arg("profile"), py::arg("instance"));
  m.def("project", &apkit::project_to_base, py::arg("instance"), py::arg("extension"), py::arg("base"));
  m.def(
      "convert",
      [](const apkit::SchemaIR& ir, const apkit::InstanceDocument& doc, const std::string& format, bool materialize_super) {
        auto triples = apkit::to_triples(doc, ir);
        if (materialize_super) triples = apkit::materialize_super_properties(triples, ir);
        if (format == "nt") return apkit::to_ntriples(triples);
        if (format == "ttl") return apkit::to_turtle(triples, ir.prefix_map);
        throw apkit::Error(apkit::ErrorCode::kIo, "unknown RDF format '" + format + "'");
      },
      py::arg("profile"), py::arg("instance"), py::arg("format") = "nt", py::arg("materialize_super") = false);

  m.def(
      "gen_shacl",
      [](const apkit::SchemaIR& ir, const std::string& base, const std::string& mode, const std::string& syntax) {
        return apkit::gen_shacl(ir, policy_for(base, mode),
                                syntax == "jsonld" ? apkit::ShaclSyntax::kJsonLd : apkit::ShaclSyntax::kTurtle);
      },
      py::arg("profile"), py::arg("base") = "https://w3id.org/apkit/shapes", py::arg("mode") = "fragment",
      py::arg("syntax") = "ttl");
  m.def(
      "gen_jsonschema",
      [](const apkit::SchemaIR& ir, const std::string& root_class) {
        return to_python(apkit::gen_jsonschema(ir, root_class).dump());
      },
      py::arg("profile"), py::arg("root_class"));
  m.def(
      "gen_context", [](const apkit::SchemaIR& ir) { return to_python(apkit::gen_context(ir).dump()); }, py::arg("profile"));
  m.def("gen_docs", &apkit::gen_docs, py::arg("profile"));
  m.def("content_view", [](const apkit::SchemaIR& ir) { return to_python(apkit::content_view(ir).dump()); }, py::arg("profile"));

  m.def(
      "harvest",
      [](const std::filesystem::path& source, const std::filesystem::path& out_dir) {
        const auto run = [&] {
          py::gil_scoped_release release;
          return apkit::harvest(apkit::load_source(source), out_dir);
        }();
        return to_python(run.to_json().dump());
      },
      py::arg("source"), py::arg("out_dir"));

  m.def(
      "instance_from_object",
      [](const py::object& value, const std::string& root_class) {
        return apkit::InstanceDocument{root_class, apkit::node_from_json(nlohmann::ordered_json::parse(from_python(value))),
                                       "<object>"};
      },
      py::arg("value"), py::arg("root_class"));
}
