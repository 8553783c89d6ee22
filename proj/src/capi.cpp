#include "casimir/casimir.h"

#include <fstream>
#include <new>
#include <sstream>
#include <stdexcept>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/limits.hpp"

struct casimir_model {
  casimir::DielectricModel model;
};

struct casimir_result {
  casimir::ForceResult result;
};

struct casimir_trace {
  casimir::LimitTrace trace;
};

namespace {

thread_local std::string last_error;

casimir_status fail(casimir_status status, const std::string& what) {
  last_error = what;
  return status;
}

// Runs body, translating engine exceptions into status codes.
template <class Body>
casimir_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const casimir::FormatError& e) {
    return fail(CASIMIR_E_FORMAT, e.what());
  } catch (const casimir::ExtrapolationError& e) {
    return fail(CASIMIR_E_EXTRAPOLATION, e.what());
  } catch (const casimir::ConvergenceError& e) {
    return fail(CASIMIR_E_CONVERGENCE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CASIMIR_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(CASIMIR_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CASIMIR_E_INTERNAL, e.what());
  }
}

casimir::SumConfig to_config(const casimir_sum_config* cfg) {
  casimir::SumConfig out;
  if (!cfg) return out;
  out.term_rel_tol = cfg->term_rel_tol;
  out.max_terms = cfg->max_terms;
  out.quad.rel_tol = cfg->quad_rel_tol;
  out.quad.abs_tol = cfg->quad_abs_tol;
  out.quad.max_subdivisions = cfg->quad_max_subdivisions;
  out.quad.tail_cut = cfg->quad_tail_cut;
  return out;
}

casimir::Prescription to_prescription(casimir_prescription p) {
  switch (p) {
    case CASIMIR_POINTWISE: return casimir::Prescription::PointwiseLimit;
    case CASIMIR_IDEAL_TE_ZERO: return casimir::Prescription::IdealTEZero;
  }
  throw std::invalid_argument("unknown prescription");
}

casimir_status make_model(casimir_model** out, casimir::DielectricModel model) {
  *out = new casimir_model{std::move(model)};
  return CASIMIR_OK;
}

#define CASIMIR_REQUIRE(ptr)                                                  \
  do {                                                                        \
    if (!(ptr)) return fail(CASIMIR_E_INVALID_ARGUMENT, #ptr " is null");     \
  } while (0)

}  // namespace

extern "C" {

const char* casimir_version(void) { return "1.0.0"; }

const char* casimir_last_error(void) { return last_error.c_str(); }

const char* casimir_status_string(casimir_status status) {
  switch (status) {
    case CASIMIR_OK: return "ok";
    case CASIMIR_E_INVALID_ARGUMENT: return "invalid argument";
    case CASIMIR_E_FORMAT: return "format error";
    case CASIMIR_E_EXTRAPOLATION: return "extrapolation error";
    case CASIMIR_E_CONVERGENCE: return "convergence failure";
    case CASIMIR_E_TRUNCATION: return "Matsubara sum truncated";
    case CASIMIR_E_IO: return "i/o error";
    case CASIMIR_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

double casimir_const_hbar(void) { return casimir::constants::hbar; }
double casimir_const_c(void) { return casimir::constants::c; }
double casimir_const_kb(void) { return casimir::constants::k_B; }
double casimir_ev_to_rad_per_s(double energy_ev) { return casimir::constants::ev_to_rad_per_s(energy_ev); }

casimir_status casimir_model_ideal(casimir_model** out) {
  CASIMIR_REQUIRE(out);
  return guarded([&] { return make_model(out, casimir::DielectricModel::ideal_metal()); });
}

casimir_status casimir_model_vacuum(casimir_model** out) {
  CASIMIR_REQUIRE(out);
  return guarded([&] { return make_model(out, casimir::DielectricModel::vacuum()); });
}

casimir_status casimir_model_plasma(double omega_p, casimir_model** out) {
  CASIMIR_REQUIRE(out);
  return guarded([&] { return make_model(out, casimir::DielectricModel::plasma(omega_p)); });
}

casimir_status casimir_model_drude(double omega_p, double gamma_d, casimir_model** out) {
  CASIMIR_REQUIRE(out);
  return guarded([&] { return make_model(out, casimir::DielectricModel::drude(omega_p, gamma_d)); });
}

casimir_status casimir_model_load_table(const char* path, casimir_model** out) {
  CASIMIR_REQUIRE(path);
  CASIMIR_REQUIRE(out);
  std::ifstream in(path);
  if (!in) return fail(CASIMIR_E_IO, std::string("cannot open dielectric table ") + path);
  return guarded([&] { return make_model(out, casimir::load_tabulated(in)); });
}

casimir_status casimir_model_parse_table(const char* text, casimir_model** out) {
  CASIMIR_REQUIRE(text);
  CASIMIR_REQUIRE(out);
  std::istringstream in(text);
  return guarded([&] { return make_model(out, casimir::load_tabulated(in)); });
}

void casimir_model_free(casimir_model* model) { delete model; }

const char* casimir_model_name(const casimir_model* model) {
  return model ? model->model.name().data() : "";
}

casimir_status casimir_model_eps(const casimir_model* model, double xi, double* eps, int* is_infinite) {
  CASIMIR_REQUIRE(model);
  CASIMIR_REQUIRE(eps);
  return guarded([&] {
    const casimir::Permittivity e = casimir::eval_eps(model->model, xi);
    *eps = e.value();
    if (is_infinite) *is_infinite = e.is_infinite() ? 1 : 0;
    return CASIMIR_OK;
  });
}

void casimir_sum_config_default(casimir_sum_config* cfg) {
  if (!cfg) return;
  const casimir::SumConfig d;
  cfg->term_rel_tol = d.term_rel_tol;
  cfg->max_terms = d.max_terms;
  cfg->quad_rel_tol = d.quad.rel_tol;
  cfg->quad_abs_tol = d.quad.abs_tol;
  cfg->quad_max_subdivisions = d.quad.max_subdivisions;
  cfg->quad_tail_cut = d.quad.tail_cut;
}

casimir_status casimir_pressure(const casimir_model* model, double d, double T,
                                casimir_prescription prescription, const casimir_sum_config* cfg,
                                casimir_result** out) {
  CASIMIR_REQUIRE(model);
  CASIMIR_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    const casimir::PlateSystem system{d, T, model->model, to_prescription(prescription)};
    try {
      *out = new casimir_result{casimir::pressure(system, to_config(cfg))};
    } catch (const casimir::TruncationError& e) {
      *out = new casimir_result{e.partial()};
      return fail(CASIMIR_E_TRUNCATION, e.what());
    }
    return CASIMIR_OK;
  });
}

void casimir_result_free(casimir_result* result) { delete result; }

double casimir_result_pressure(const casimir_result* r) { return r ? r->result.pressure : 0.0; }
double casimir_result_free_energy(const casimir_result* r) { return r ? r->result.free_energy_area : 0.0; }
double casimir_result_eta(const casimir_result* r) { return r ? r->result.eta : 0.0; }
size_t casimir_result_n_used(const casimir_result* r) { return r ? r->result.n_used : 0; }
double casimir_result_est_rel_err(const casimir_result* r) { return r ? r->result.est_rel_err : 0.0; }
size_t casimir_result_term_count(const casimir_result* r) { return r ? r->result.terms.size() : 0; }

casimir_status casimir_result_term(const casimir_result* result, size_t index, casimir_term* term) {
  CASIMIR_REQUIRE(result);
  CASIMIR_REQUIRE(term);
  if (index >= result->result.terms.size())
    return fail(CASIMIR_E_INVALID_ARGUMENT, "term index out of range");
  const auto& e = result->result.terms[index];
  *term = casimir_term{e.n, e.xi, e.te, e.tm};
  return CASIMIR_OK;
}

casimir_status casimir_free_energy(const casimir_model* model, double d, double T,
                                   casimir_prescription prescription, const casimir_sum_config* cfg,
                                   double* out) {
  CASIMIR_REQUIRE(model);
  CASIMIR_REQUIRE(out);
  return guarded([&] {
    const casimir::PlateSystem system{d, T, model->model, to_prescription(prescription)};
    try {
      *out = casimir::free_energy(system, to_config(cfg));
    } catch (const casimir::TruncationError& e) {
      *out = e.partial().free_energy_area;
      return fail(CASIMIR_E_TRUNCATION, e.what());
    }
    return CASIMIR_OK;
  });
}

casimir_status casimir_pressure_t0(const casimir_model* model, double d, const casimir_sum_config* cfg,
                                   double* out) {
  CASIMIR_REQUIRE(model);
  CASIMIR_REQUIRE(out);
  return guarded([&] {
    *out = casimir::pressure_t0(d, model->model, to_config(cfg));
    return CASIMIR_OK;
  });
}

casimir_status casimir_pfa_sphere_plate(const casimir_model* model, double radius, double d, double T,
                                        casimir_prescription prescription,
                                        const casimir_sum_config* cfg, double* force, int* pfa_valid) {
  CASIMIR_REQUIRE(model);
  CASIMIR_REQUIRE(force);
  return guarded([&] {
    const casimir::PlateSystem system{d, T, model->model, to_prescription(prescription)};
    try {
      const casimir::PfaResult r = casimir::pfa_sphere_plate(radius, system, to_config(cfg));
      *force = r.force;
      if (pfa_valid) *pfa_valid = r.pfa_valid ? 1 : 0;
    } catch (const casimir::TruncationError& e) {
      *force = 2.0 * casimir::constants::pi * radius * e.partial().free_energy_area;
      if (pfa_valid) *pfa_valid = radius >= 100.0 * d ? 1 : 0;
      return fail(CASIMIR_E_TRUNCATION, e.what());
    }
    return CASIMIR_OK;
  });
}

casimir_status casimir_trace_limit(const casimir_model* model, casimir_path_kind kind, double path_param,
                                   double xi_start, int decades, int per_decade, casimir_trace** out) {
  CASIMIR_REQUIRE(model);
  CASIMIR_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    casimir::LimitPath path = casimir::FixedQ{path_param};
    if (kind == CASIMIR_PATH_FIXED_P) {
      path = casimir::FixedP{path_param};
    } else if (kind != CASIMIR_PATH_FIXED_Q) {
      return fail(CASIMIR_E_INVALID_ARGUMENT, "unknown path kind");
    }
    *out = new casimir_trace{casimir::trace_limit(path, model->model, xi_start, decades, per_decade)};
    return CASIMIR_OK;
  });
}

void casimir_trace_free(casimir_trace* trace) { delete trace; }

size_t casimir_trace_row_count(const casimir_trace* trace) { return trace ? trace->trace.rows.size() : 0; }

casimir_status casimir_trace_get_row(const casimir_trace* trace, size_t index, casimir_trace_row* row) {
  CASIMIR_REQUIRE(trace);
  CASIMIR_REQUIRE(row);
  if (index >= trace->trace.rows.size()) return fail(CASIMIR_E_INVALID_ARGUMENT, "row index out of range");
  const auto& r = trace->trace.rows[index];
  *row = casimir_trace_row{r.xi, r.gamma0, r.gamma1, r.diff, r.ratio, r.rte2};
  return CASIMIR_OK;
}

casimir_status casimir_trace_classify(const casimir_trace* trace, casimir_limit_class* out) {
  CASIMIR_REQUIRE(trace);
  CASIMIR_REQUIRE(out);
  return guarded([&] {
    switch (casimir::classify_limit(trace->trace)) {
      case casimir::LimitClass::TEVanishes: *out = CASIMIR_TE_VANISHES; break;
      case casimir::LimitClass::TEIdeal: *out = CASIMIR_TE_IDEAL; break;
      case casimir::LimitClass::Indeterminate: *out = CASIMIR_INDETERMINATE; break;
    }
    return CASIMIR_OK;
  });
}

const char* casimir_limit_class_name(casimir_limit_class cls) {
  switch (cls) {
    case CASIMIR_TE_VANISHES: return "TEVanishes";
    case CASIMIR_TE_IDEAL: return "TEIdeal";
    case CASIMIR_INDETERMINATE: return "Indeterminate";
  }
  return "Indeterminate";
}

}  // extern "C"
