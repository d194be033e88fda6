#include "folred/folred.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "folred/parse.hpp"
#include "folred/pipeline.hpp"

struct folred_germ {
  folred::FoliationGerm germ;
};

struct folred_report {
  folred::PipelineReport report;
};

namespace {

thread_local std::string last_error;

folred_status set_error(folred_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs f, translating exceptions into status codes.
template <class F>
folred_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const folred::Error& e) {
    return set_error(static_cast<folred_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FOLRED_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FOLRED_ERR_INTERNAL, e.what());
  }
}

}  // namespace

extern "C" {

const char* folred_version(void) { return "1.0.0"; }

const char* folred_status_name(folred_status status) {
  if (status == FOLRED_ERR_NULL_ARGUMENT) return "null-argument";
  if (status < FOLRED_OK || status > FOLRED_ERR_IO) return "unknown";
  return folred::to_string(static_cast<folred::ErrorCode>(status)).data();
}

folred_status_class folred_classify_status(folred_status status) {
  switch (status) {
    case FOLRED_OK: return FOLRED_CLASS_OK;
    case FOLRED_ERR_DEPTH_LIMIT:
    case FOLRED_ERR_INSUFFICIENT_ORDER:
    case FOLRED_ERR_UNRESOLVED_LOCUS: return FOLRED_CLASS_RESOURCE;
    case FOLRED_ERR_INTERNAL:
    case FOLRED_ERR_IO: return FOLRED_CLASS_INTERNAL;
    default: return FOLRED_CLASS_PRECONDITION;
  }
}

const char* folred_last_error(void) { return last_error.c_str(); }

void folred_string_free(char* s) { std::free(s); }

const char* folred_pipeline_name(size_t index) {
  const auto& names = folred::pipeline_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

void folred_config_default(folred_config* cfg) {
  if (!cfg) return;
  cfg->pipeline = "classify";
  cfg->order = 12;
  cfg->depth_limit = 24;
  cfg->timing = 0;
}

folred_status folred_germ_parse(const char* text, folred_germ** out) {
  if (!text || !out) return set_error(FOLRED_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new folred_germ{folred::parse_germ(text).germ};
    return FOLRED_OK;
  });
}

folred_status folred_germ_print(const folred_germ* germ, char** out) {
  if (!germ || !out) return set_error(FOLRED_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(folred::print_germ(germ->germ));
    return *out ? FOLRED_OK : set_error(FOLRED_ERR_INTERNAL, "out of memory");
  });
}

int folred_germ_equal(const folred_germ* a, const folred_germ* b) {
  if (!a || !b) return -1;
  return a->germ == b->germ ? 1 : 0;
}

void folred_germ_free(folred_germ* germ) { delete germ; }

folred_status folred_run(const char* document, const folred_config* cfg, folred_report** out) {
  if (!document || !out) return set_error(FOLRED_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    folred::PipelineConfig c;
    if (cfg) {
      if (cfg->pipeline) c.pipeline = cfg->pipeline;
      if (cfg->order > 0) c.order = cfg->order;
      if (cfg->depth_limit >= 0) c.depth_limit = cfg->depth_limit;
      c.timing = cfg->timing != 0;
    }
    auto* r = new folred_report{folred::run_pipeline(document, c)};
    *out = r;
    folred_status s = static_cast<folred_status>(r->report.status);
    if (s != FOLRED_OK) last_error = "pipeline failed: " + std::string(folred_status_name(s));
    return s;
  });
}

const char* folred_report_json(const folred_report* report) { return report ? report->report.json.c_str() : nullptr; }

const char* folred_report_dot(const folred_report* report) {
  if (!report || report->report.dot.empty()) return nullptr;
  return report->report.dot.c_str();
}

folred_status folred_report_status(const folred_report* report) {
  return report ? static_cast<folred_status>(report->report.status) : FOLRED_ERR_NULL_ARGUMENT;
}

void folred_report_free(folred_report* report) { delete report; }

}  // extern "C"
