#include "qbm/qbm.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <functional>
#include <string>

#include "json.hpp"
#include "qbm/characters.hpp"
#include "qbm/error.hpp"
#include "qbm/padic.hpp"
#include "qbm/qbernoulli.hpp"
#include "qbm/report.hpp"

struct qbm_context {
  std::string last_error;
};

struct qbm_value {
  qbm::FieldElem v;
};

namespace {

qbm_status status_of(qbm::ErrorCode c) { return static_cast<qbm_status>(static_cast<int>(c)); }

template <class F>
qbm_status guard(qbm_context* ctx, F&& f) {
  try {
    f();
    return QBM_OK;
  } catch (const qbm::Error& e) {
    if (ctx) ctx->last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    if (ctx) ctx->last_error = e.what();
    return QBM_INTERNAL;
  } catch (...) {
    if (ctx) ctx->last_error = "unknown failure";
    return QBM_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw qbm::Error(qbm::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

qbm_status emit(qbm_context* ctx, qbm_value** out, const std::function<qbm::FieldElem()>& make) {
  return guard(ctx, [&] {
    need(out, "out");
    *out = new qbm_value{make()};
  });
}

}  // namespace

extern "C" {

qbm_context* qbm_context_new(void) { return new (std::nothrow) qbm_context(); }

void qbm_context_free(qbm_context* ctx) { delete ctx; }

const char* qbm_last_error(const qbm_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

const char* qbm_status_name(qbm_status status) {
  if (status == QBM_OK) return "OK";
  if (status == QBM_INTERNAL) return "Internal";
  if (status < QBM_INVALID_ARGUMENT || status > QBM_CONFIG) return "Unknown";
  return qbm::error_code_name(static_cast<qbm::ErrorCode>(status));
}

const char* qbm_version(void) { return "1.0.0"; }

void qbm_string_free(char* s) { std::free(s); }

void qbm_value_free(qbm_value* v) { delete v; }

qbm_status qbm_qbernoulli(qbm_context* ctx, const char* family, long param, long n, qbm_value** out) {
  return emit(ctx, out, [&] {
    need(family, "family");
    return qbm::qbern(qbm::parse_family(family), param, n);
  });
}

qbm_status qbm_qnumber(qbm_context* ctx, long x, long c, qbm_value** out) {
  return emit(ctx, out, [&] { return qbm::qnumber(x, c); });
}

qbm_status qbm_weighted_poly(qbm_context* ctx, long alpha, long n, long x, qbm_value** out) {
  return emit(ctx, out, [&] { return qbm::weighted_beta_poly(alpha, n, x); });
}

qbm_status qbm_generalized(qbm_context* ctx, long d, long j, long alpha, long n, qbm_value** out) {
  return emit(ctx, out, [&] { return qbm::generalized_beta(qbm::dirichlet_character(d, j), alpha, n); });
}

qbm_status qbm_value_arith(qbm_context* ctx, const qbm_value* a, const qbm_value* b, char op, qbm_value** out) {
  return emit(ctx, out, [&] {
    need(a, "a");
    need(b, "b");
    switch (op) {
      case '+':
        return qbm::field_arith(a->v, b->v, qbm::FieldOp::Add);
      case '-':
        return qbm::field_arith(a->v, b->v, qbm::FieldOp::Sub);
      case '*':
        return qbm::field_arith(a->v, b->v, qbm::FieldOp::Mul);
      case '/':
        return qbm::field_arith(a->v, b->v, qbm::FieldOp::Div);
      default:
        throw qbm::Error(qbm::ErrorCode::InvalidArgument, std::string("unknown operator '") + op + "'");
    }
  });
}

int qbm_value_is_zero(const qbm_value* v) { return v != nullptr && v->v.is_zero() ? 1 : 0; }

int qbm_value_equal(const qbm_value* a, const qbm_value* b) {
  if (a == nullptr || b == nullptr) return 0;
  return a->v == b->v ? 1 : 0;
}

qbm_status qbm_value_string(qbm_context* ctx, const qbm_value* v, char** out) {
  return guard(ctx, [&] {
    need(v, "value");
    need(out, "out");
    *out = dup(v->v.to_string());
  });
}

qbm_status qbm_value_limit(qbm_context* ctx, const qbm_value* v, char** out) {
  return guard(ctx, [&] {
    need(v, "value");
    need(out, "out");
    *out = dup(qbm::eval_at_one(v->v).to_string());
  });
}

qbm_status qbm_value_padic(qbm_context* ctx, const qbm_value* v, long p, const char* q, long prec, char** out) {
  return guard(ctx, [&] {
    need(v, "value");
    need(q, "q");
    need(out, "out");
    if (prec < 1) throw qbm::Error(qbm::ErrorCode::InvalidArgument, "precision must be >= 1");
    if (!qbm::is_prime(p)) throw qbm::Error(qbm::ErrorCode::InvalidArgument, "p must be prime");
    qbm::QPoint base = qbm::QPoint::parse(p, q);
    qbm::CycPAdic x = qbm::eval_field_elem(v->v, base.value());
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : x.coords()) {
      qbm::PAdic t = c.is_exact() || c.prec() > prec ? c.with_precision(prec) : c;
      coords.push_back({{"p", p}, {"value", t.value().get_str()}, {"prec", t.prec()}, {"digits", t.digits()}});
    }
    nlohmann::json doc{{"zeta_order", x.order()}, {"coords", coords}};
    *out = dup(doc.dump());
  });
}

qbm_status qbm_run(qbm_context* ctx, const char* config_json, char** report, int* exit_code) {
  return guard(ctx, [&] {
    need(config_json, "config");
    need(report, "report");
    need(exit_code, "exit_code");
    qbm::RunResult r = qbm::run_command(config_json);
    *report = dup(r.output);
    *exit_code = r.exit_code;
  });
}

}  // extern "C"
