// Command-line driver: reads an input document, runs one pipeline through the
// C interface and writes the JSON report (and optionally the DOT tree).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "folred/folred.h"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitResource = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int exit_code(folred_status s) {
  switch (folred_classify_status(s)) {
    case FOLRED_CLASS_OK: return 0;
    case FOLRED_CLASS_PRECONDITION: return kExitPrecondition;
    case FOLRED_CLASS_RESOURCE: return kExitResource;
    default: return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  folred_config defaults;
  folred_config_default(&defaults);

  std::vector<std::string> pipelines;
  for (std::size_t i = 0; folred_pipeline_name(i); ++i) pipelines.emplace_back(folred_pipeline_name(i));

  CLI::App app{"Reduction of singular foliations and pairs of foliations, normal forms and formal conjugacy"};
  std::string pipeline = defaults.pipeline, input, dot_path, json_path;
  int order = defaults.order, depth_limit = defaults.depth_limit;
  bool timing = false;

  app.add_option("--pipeline", pipeline, "Pipeline to run")->check(CLI::IsMember(pipelines))->capture_default_str();
  app.add_option("--order", order, "Truncation order N")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--depth-limit", depth_limit, "Blow-ups allowed per chain")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--input", input, "Input file, or the document text itself")->required();
  app.add_option("--emit-dot", dot_path, "Write the reduction tree as DOT");
  app.add_option("--json", json_path, "Write the report here instead of stdout");
  app.add_flag("--timing", timing, "Include timings in the report");
  app.set_config("--config", "", "TOML/INI file with default option values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitPrecondition;
  }

  std::string document;
  if (std::filesystem::is_regular_file(input)) {
    if (!read_file(input, document)) {
      std::cerr << "error: cannot read " << input << "\n";
      return kExitInternal;
    }
  } else {
    document = input;
  }

  folred_config cfg{pipeline.c_str(), order, depth_limit, timing ? 1 : 0};
  folred_report* report = nullptr;
  folred_status status = folred_run(document.c_str(), &cfg, &report);
  if (!report) {
    std::cerr << "error: " << folred_last_error() << "\n";
    return exit_code(status);
  }

  int rc = exit_code(status);
  const char* json = folred_report_json(report);
  if (json_path.empty()) {
    std::cout << json;
  } else if (!write_file(json_path, json)) {
    std::cerr << "error: cannot write " << json_path << "\n";
    rc = kExitInternal;
  }
  if (!dot_path.empty()) {
    const char* dot = folred_report_dot(report);
    if (!dot) {
      std::cerr << "note: pipeline '" << pipeline << "' builds no tree; " << dot_path << " not written\n";
    } else if (!write_file(dot_path, dot)) {
      std::cerr << "error: cannot write " << dot_path << "\n";
      rc = kExitInternal;
    }
  }
  if (status != FOLRED_OK) std::cerr << "error: " << folred_status_name(status) << "\n";
  folred_report_free(report);
  return rc;
}
