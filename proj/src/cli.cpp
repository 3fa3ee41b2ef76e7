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

#include "apkit/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include <CLI11.hpp>

#include "apkit/artifact.hpp"
#include "apkit/error.hpp"
#include "apkit/harvest.hpp"
#include "apkit/instance.hpp"
#include "apkit/profile_extend.hpp"
#include "apkit/rdf.hpp"
#include "apkit/schema_ir.hpp"
#include "apkit/shacl.hpp"
#include "apkit/validate.hpp"

namespace apkit::cli {

namespace {

enum class LogLevel { kQuiet, kError, kWarn, kInfo };

struct Diagnostics {
  std::ostream& err;
  LogLevel level = LogLevel::kWarn;
  bool color = false;

  void log(LogLevel at, const std::string& text) const {
    if (static_cast<int>(at) <= static_cast<int>(level)) err << text << "\n";
  }
  std::string paint(const std::string& text, const char* code) const {
    return color ? std::string("\033[") + code + "m" + text + "\033[0m" : text;
  }
  std::string report_text(const ValidationReport& report) const {
    std::ostringstream out;
    for (const auto& f : report.findings()) {
      const bool error = f.severity == Severity::kError;
      out << paint(error ? "ERROR" : "WARNING", error ? "31" : "33") << " " << f.rule << " at " << f.path << ": "
          << f.message << "\n";
    }
    return out.str();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const std::string& text, const std::string& output, std::ostream& out) {
  if (output.empty() || output == "-") {
    out << text;
    return;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot write '" + output + "'");
  file << text;
}

SchemaIR apply_layer_arg(const SchemaIR& base, const std::string& layer) {
  if (layer == "plus" || layer == "chem") return merge_layers(base, builtin_layer_for(layer, base));
  return merge_layers(base, load_layer(layer));
}

ExtensionLayer layer_arg(const SchemaIR& base, const std::string& layer) {
  if (layer == "plus" || layer == "chem") return builtin_layer_for(layer, base);
  return load_layer(layer);
}

ShapeIriPolicy policy_for(const std::string& mode, const std::string& base) {
  return mode == "path" ? ShapeIriPolicy::path(base) : ShapeIriPolicy::fragment(base);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"apkit: application-profile toolkit for DCAT-AP, DCAT-AP+ and ChemDCAT-AP", "apkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version-info", "apkit 0.1.0");

  std::string log_level = "warn";
  std::string color = "auto";
  app.add_option("--log-level", log_level, "Diagnostic verbosity")
      ->check(CLI::IsMember({"quiet", "error", "warn", "info"}))
      ->capture_default_str();
  app.add_option("--color", color, "Colorize text reports")
      ->check(CLI::IsMember({"auto", "always", "never"}))
      ->capture_default_str();

  std::string input;
  std::string output;
  std::string profile;
  std::string root_class;
  std::string report_format = "text";
  std::string rdf_format = "nt";
  std::string shacl_syntax = "ttl";
  std::vector<std::string> layers;

  auto* import_cmd = app.add_subcommand("import-shacl", "Compile a SHACL JSON-LD shapes file into a profile");
  std::string profile_id;
  std::string profile_version;
  std::string context_override;
  import_cmd->add_option("input", input, "SHACL shapes (.jsonld)")->required();
  import_cmd->add_option("-o,--output", output, "Output .profile.json (default stdout)");
  import_cmd->add_option("--id", profile_id, "Profile id (default: input file stem)");
  import_cmd->add_option("--profile-version", profile_version, "Profile version string");
  import_cmd->add_option("--context-override", context_override, "Local JSON-LD context replacing remote @context IRIs");

  auto* extend_cmd = app.add_subcommand("extend", "Apply extension layers to a profile, left to right");
  extend_cmd->add_option("base", input, "Base .profile.json")->required();
  extend_cmd->add_option("--layer", layers, "plus, chem, or a .layer.json file")->required();
  extend_cmd->add_option("-o,--output", output, "Output .profile.json (default stdout)");

  auto* lint_cmd = app.add_subcommand("lint", "Check that a layer is an admissible extension of a profile");
  lint_cmd->add_option("base", input, "Base .profile.json")->required();
  lint_cmd->add_option("--layer", layers, "plus, chem, or a .layer.json file")->required()->expected(1);
  lint_cmd->add_option("--format", report_format, "Report format")->check(CLI::IsMember({"text", "json"}))->default_val("text");

  auto* validate_cmd = app.add_subcommand("validate", "Validate an instance document against a profile");
  validate_cmd->add_option("instance", input, "Instance (.yaml or .json)")->required();
  validate_cmd->add_option("--profile", profile, "Profile (.profile.json)")->required();
  validate_cmd->add_option("--class", root_class, "Root class name")->required();
  validate_cmd->add_option("--format", report_format, "Report format")->check(CLI::IsMember({"text", "json"}))->default_val("text");

  auto* convert_cmd = app.add_subcommand("convert", "Convert a conformant instance to RDF");
  bool materialize = false;
  convert_cmd->add_option("instance", input, "Instance (.yaml or .json)")->required();
  convert_cmd->add_option("--profile", profile, "Profile (.profile.json)")->required();
  convert_cmd->add_option("--class", root_class, "Root class name")->required();
  convert_cmd->add_option("--format", rdf_format, "RDF syntax")->check(CLI::IsMember({"nt", "ttl"}))->default_val("nt");
  convert_cmd->add_flag("--materialize-super", materialize, "Add triples for every super-property");
  convert_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  auto* gen_cmd = app.add_subcommand("gen", "Generate artifacts from a profile");
  std::string target;
  std::string shape_base = "https://w3id.org/apkit/shapes";
  std::string mode = "fragment";
  std::string out_dir;
  gen_cmd->add_option("target", target, "Artifact kind")
      ->required()
      ->check(CLI::IsMember({"shacl", "jsonschema", "docs", "context"}));
  gen_cmd->add_option("--profile", profile, "Profile (.profile.json)")->required();
  gen_cmd->add_option("--shape-base", shape_base, "Base IRI for generated shapes")->capture_default_str();
  gen_cmd->add_option("--mode", mode, "Shape IRI policy")->check(CLI::IsMember({"fragment", "path"}))->capture_default_str();
  gen_cmd->add_option("--syntax", shacl_syntax, "SHACL syntax")->check(CLI::IsMember({"ttl", "jsonld"}))->default_val("ttl");
  gen_cmd->add_option("--root", root_class, "Root class for jsonschema");
  gen_cmd->add_option("--out-dir", out_dir, "Directory for docs");
  gen_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  auto* harvest_cmd = app.add_subcommand("harvest", "Harvest, validate and convert records from a remote source");
  std::string source_config;
  harvest_cmd->add_option("--source", source_config, "Source config (.yaml)")->required();
  harvest_cmd->add_option("--out", out_dir, "Output directory")->required();

  auto* export_cmd = app.add_subcommand("export-layer", "Print a builtin layer definition");
  export_cmd->add_option("name", target, "Builtin layer")->required()->check(CLI::IsMember({"plus", "chem"}));

  std::vector<const char*> argv{"apkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "apkit: " << e.what() << "\n";
    const CLI::App* failing = &app;
    for (const auto* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return kUsage;
  }

  Diagnostics diag{err};
  diag.level = log_level == "quiet"   ? LogLevel::kQuiet
               : log_level == "error" ? LogLevel::kError
               : log_level == "info"  ? LogLevel::kInfo
                                      : LogLevel::kWarn;
  diag.color = color == "always" || (color == "auto" && &out == &std::cout && ::isatty(STDOUT_FILENO) != 0);

  try {
    if (*import_cmd) {
      ParseOptions options;
      if (!context_override.empty()) options.context_override = nlohmann::ordered_json::parse(read_file(context_override));
      const auto shapes = parse_jsonld(read_file(input), options);
      if (profile_id.empty()) {
        profile_id = std::filesystem::path(input).stem().string();
      }
      const auto result = compile(shapes, profile_id, profile_version);
      for (const auto& f : result.report.findings()) {
        diag.log(f.severity == Severity::kError ? LogLevel::kError : LogLevel::kWarn,
                 (f.severity == Severity::kError ? "error: " : "warning: ") + f.rule + " at " + f.path + ": " + f.message);
      }
      emit(canonical_string(result.ir), output, out);
      diag.log(LogLevel::kInfo, "compiled " + std::to_string(result.ir.classes.size()) + " classes and " +
                                    std::to_string(result.ir.slots.size()) + " slots");
      return result.report.conformant() ? kOk : kFindings;
    }
    if (*extend_cmd) {
      auto ir = load_profile(input);
      for (const auto& layer : layers) {
        ir = apply_layer_arg(ir, layer);
        diag.log(LogLevel::kInfo, "applied layer " + ir.id);
      }
      emit(canonical_string(ir), output, out);
      return kOk;
    }
    if (*lint_cmd) {
      const auto base = load_profile(input);
      const auto report = lint_extension(base, layer_arg(base, layers.front()));
      out << (report_format == "json" ? report.to_json().dump(2) + "\n" : diag.report_text(report));
      return report.empty() ? kOk : kFindings;
    }
    if (*validate_cmd) {
      const auto ir = load_profile(profile);
      const auto doc = load_instance(input, root_class);
      const auto report = validate(doc, ir);
      if (report_format == "json") {
        out << report.to_json().dump(2) << "\n";
      } else {
        out << diag.report_text(report);
        out << (report.conformant() ? diag.paint("CONFORMANT", "32") : diag.paint("NOT CONFORMANT", "31")) << " ("
            << report.error_count() << " errors, " << report.warning_count() << " warnings)\n";
      }
      return report.conformant() ? kOk : kFindings;
    }
    if (*convert_cmd) {
      const auto ir = load_profile(profile);
      const auto doc = load_instance(input, root_class);
      const auto report = validate(doc, ir);
      if (!report.conformant()) {
        err << diag.report_text(report);
        err << "apkit: instance is not conformant; nothing emitted\n";
        return kFindings;
      }
      auto triples = to_triples(doc, ir);
      if (materialize) triples = materialize_super_properties(triples, ir);
      emit(serialize(triples, rdf_format == "ttl" ? RdfFormat::kTurtle : RdfFormat::kNTriples, ir.prefix_map), output, out);
      return kOk;
    }
    if (*gen_cmd) {
      const auto ir = load_profile(profile);
      if (target == "shacl") {
        emit(gen_shacl(ir, policy_for(mode, shape_base), shacl_syntax == "jsonld" ? ShaclSyntax::kJsonLd : ShaclSyntax::kTurtle),
             output, out);
      } else if (target == "jsonschema") {
        if (root_class.empty()) throw CLI::RequiredError("--root");
        emit(gen_jsonschema(ir, root_class).dump(2) + "\n", output, out);
      } else if (target == "context") {
        emit(gen_context(ir).dump(2) + "\n", output, out);
      } else {
        const auto files = gen_docs(ir);
        if (out_dir.empty()) {
          for (const auto& [name, text] : files) out << "<!-- " << name << " -->\n" << text << "\n";
        } else {
          write_files(files, out_dir);
          diag.log(LogLevel::kInfo, "wrote " + std::to_string(files.size()) + " pages to " + out_dir);
        }
      }
      return kOk;
    }
    if (*harvest_cmd) {
      const auto source = load_source(source_config);
      const auto run = harvest(source, out_dir);
      out << run.to_json().dump(2) << "\n";
      diag.log(LogLevel::kInfo, "fetched " + std::to_string(run.fetched) + ", conformant " + std::to_string(run.conformant));
      return run.conformant == run.fetched ? kOk : kFindings;
    }
    if (*export_cmd) {
      out << builtin_layer_text(target);
      return kOk;
    }
  } catch (const CLI::RequiredError& e) {
    err << "apkit: " << e.what() << "\n" << gen_cmd->help();
    return kUsage;
  } catch (const Error& e) {
    err << "apkit: " << e.what() << "\n";
    if (e.code() == ErrorCode::kInadmissibleExtension || e.code() == ErrorCode::kNotConformant) return kFindings;
    return kInternal;
  } catch (const std::exception& e) {
    err << "apkit: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace apkit::cli
