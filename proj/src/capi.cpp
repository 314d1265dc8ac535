#include "inpkit/inpkit.h"

#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

#include "inpkit/kb.hpp"
#include "inpkit/orders.hpp"
#include "inpkit/patterns.hpp"
#include "inpkit/report.hpp"
#include "inpkit/serialize.hpp"

struct inpkit_kb_element {
  inpkit::kb::KbElement value;
};

struct inpkit_pattern {
  inpkit::patterns::PatternInstance value;
};

struct inpkit_verdict {
  inpkit::patterns::Verdict value;
};

struct inpkit_report {
  inpkit::report::Report value;
};

namespace {

thread_local std::string last_error;

inpkit_status fail(inpkit_status s, const std::string& message) {
  last_error = message;
  return s;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs body, mapping exceptions to status codes.
template <class F>
inpkit_status guarded(F&& body, inpkit_status invalid = INPKIT_E_ARGUMENT) {
  try {
    last_error.clear();
    body();
    return INPKIT_OK;
  } catch (const inpkit::report::UnknownDemo& e) {
    return fail(INPKIT_E_UNKNOWN_DEMO, e.what());
  } catch (const inpkit::report::InvalidOption& e) {
    return fail(INPKIT_E_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(invalid, e.what());
  } catch (const std::logic_error& e) {
    return fail(INPKIT_E_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(INPKIT_E_INTERNAL, e.what());
  } catch (...) {
    return fail(INPKIT_E_INTERNAL, "unknown error");
  }
}

std::optional<long> option(std::int64_t v, const char* flag) {
  if (v == INPKIT_UNSET) return std::nullopt;
  if (v <= 0) throw inpkit::report::InvalidOption(std::string(flag) + " must be positive, got " + std::to_string(v));
  if (v > std::numeric_limits<long>::max()) throw inpkit::report::InvalidOption(std::string(flag) + " is too large");
  return static_cast<long>(v);
}

}  // namespace

extern "C" {

const char* inpkit_last_error(void) { return last_error.c_str(); }

const char* inpkit_version(void) { return "0.1.0"; }

void inpkit_string_free(char* s) { delete[] s; }

inpkit_status inpkit_kb_new(const char* n, const char* m, inpkit_kb_element** out) {
  if (!n || !m || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] {
    *out = new inpkit_kb_element{{inpkit::parse_integer(n), inpkit::parse_integer(m)}};
  }, INPKIT_E_PARSE);
}

inpkit_status inpkit_kb_mul(const inpkit_kb_element* a, const inpkit_kb_element* b, inpkit_kb_element** out) {
  if (!a || !b || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] { *out = new inpkit_kb_element{inpkit::kb::mul(a->value, b->value)}; });
}

inpkit_status inpkit_kb_inv(const inpkit_kb_element* a, inpkit_kb_element** out) {
  if (!a || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] { *out = new inpkit_kb_element{inpkit::kb::inv(a->value)}; });
}

inpkit_status inpkit_kb_compare(const inpkit_kb_element* a, const inpkit_kb_element* b, int* out) {
  if (!a || !b || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] {
    switch (inpkit::orders::compare(a->value, b->value)) {
      case inpkit::orders::Ordering::Less: *out = -1; break;
      case inpkit::orders::Ordering::Equal: *out = 0; break;
      case inpkit::orders::Ordering::Greater: *out = 1; break;
    }
  });
}

inpkit_status inpkit_kb_to_string(const inpkit_kb_element* a, char** out) {
  if (!a || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] { *out = copy_string(inpkit::kb::to_string(a->value)); });
}

void inpkit_kb_free(inpkit_kb_element* a) { delete a; }

inpkit_status inpkit_pattern_kb_depth2(size_t n_cols, size_t j_cols, inpkit_pattern** out) {
  if (!out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] { *out = new inpkit_pattern{inpkit::patterns::build_kb_depth2(n_cols, j_cols)}; });
}

inpkit_status inpkit_pattern_free_chain(size_t n, size_t cols, inpkit_pattern** out) {
  if (!out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] { *out = new inpkit_pattern{inpkit::patterns::build_free_chain_pattern(n, cols)}; });
}

inpkit_status inpkit_pattern_to_json(const inpkit_pattern* p, char** out) {
  if (!p || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] { *out = copy_string(inpkit::serialize::pattern(p->value).dump(2)); });
}

void inpkit_pattern_free(inpkit_pattern* p) { delete p; }

inpkit_status inpkit_verify(const inpkit_pattern* p, unsigned threads, inpkit_verdict** out) {
  if (!p || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] {
    inpkit::patterns::VerifyOptions options;
    options.threads = threads;
    *out = new inpkit_verdict{inpkit::patterns::verify_pattern(p->value, options)};
  });
}

inpkit_verdict_kind inpkit_verdict_get_kind(const inpkit_verdict* v) {
  if (!v) return INPKIT_UNKNOWN;
  if (std::holds_alternative<inpkit::patterns::Verified>(v->value)) return INPKIT_VERIFIED;
  if (std::holds_alternative<inpkit::patterns::Refuted>(v->value)) return INPKIT_REFUTED;
  return INPKIT_UNKNOWN;
}

size_t inpkit_verdict_witness_count(const inpkit_verdict* v) {
  if (!v) return 0;
  const auto* ok = std::get_if<inpkit::patterns::Verified>(&v->value);
  return ok ? ok->paths.size() : 0;
}

inpkit_status inpkit_verdict_to_json(const inpkit_verdict* v, char** out) {
  if (!v || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] { *out = copy_string(inpkit::serialize::verdict(v->value).dump(2)); });
}

void inpkit_verdict_free(inpkit_verdict* v) { delete v; }

size_t inpkit_demo_count(void) { return inpkit::report::demo_names().size(); }

const char* inpkit_demo_name(size_t i) {
  const auto& names = inpkit::report::demo_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

void inpkit_demo_options_init(inpkit_demo_options* o) {
  if (!o) return;
  o->depth = o->cols = o->bound = o->cap = INPKIT_UNSET;
  o->seed = 1;
}

inpkit_status inpkit_run_demo(const char* name, const inpkit_demo_options* o, inpkit_report** out) {
  if (!name || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] {
    inpkit::report::DemoOptions options;
    if (o) {
      options.depth = option(o->depth, "--depth");
      options.cols = option(o->cols, "--cols");
      options.bound = option(o->bound, "--bound");
      if (auto cap = option(o->cap, "--cap")) options.cap = static_cast<std::uint64_t>(*cap);
      options.seed = o->seed;
    }
    *out = new inpkit_report{inpkit::report::run_demo(name, options)};
  });
}

int inpkit_report_passed(const inpkit_report* r) { return r && r->value.passed() ? 1 : 0; }

inpkit_status inpkit_report_emit(const inpkit_report* r, inpkit_format format, int include_timing, char** out) {
  if (!r || !out) return fail(INPKIT_E_NULL, "null argument");
  return guarded([&] {
    const auto f = format == INPKIT_FORMAT_JSON ? inpkit::report::Format::Json : inpkit::report::Format::Table;
    *out = copy_string(inpkit::report::emit(r->value, f, include_timing != 0));
  });
}

void inpkit_report_free(inpkit_report* r) { delete r; }

}  // extern "C"
