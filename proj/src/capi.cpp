#include "../include/cmg.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "certify.hpp"
#include "geometry.hpp"

using namespace cmg;

struct cmg_poly {
  MPoly v;
};
struct cmg_tpoly {
  TPoly v;
};
struct cmg_graph {
  MarkedGraph v;
};
struct cmg_sites {
  Sites v;
};
struct cmg_geo {
  GeoGraph v;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
cmg_status guarded(Fn&& fn) {
  try {
    fn();
    return CMG_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CMG_ERROR_INVALID;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return CMG_ERROR_DOMAIN;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CMG_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CMG_ERROR_INTERNAL;
  }
}

cmg_status require(bool cond, const char* msg) {
  if (cond) return CMG_OK;
  g_last_error = msg;
  return CMG_ERROR_INVALID;
}

std::vector<int> vec_from(const int* data, int len) {
  return std::vector<int>(data, data + len);
}

Assignment assignment_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("assignment must be an object");
  Assignment a;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int var = std::stoi(it.key());
    const auto& t = it.value();
    if (t.is_number_integer() && t.get<long long>() == 0) {
      a.emplace(var, SpecTarget::zero());
    } else if (t.is_object() && t.contains("var")) {
      a.emplace(var, SpecTarget::variable(t.at("var").get<int>()));
    } else if (t.is_object() && t.contains("value")) {
      a.emplace(var, SpecTarget::value(Int(t.at("value").get<std::string>())));
    } else if (t.is_number_integer()) {
      a.emplace(var, SpecTarget::value(Int(t.get<long long>())));
    } else {
      throw std::invalid_argument("malformed assignment entry");
    }
  }
  return a;
}

}  // namespace

extern "C" {

const char* cmg_version(void) { return "1.0.0"; }

const char* cmg_status_name(cmg_status s) {
  switch (s) {
    case CMG_OK:
      return "ok";
    case CMG_ERROR_INVALID:
      return "invalid";
    case CMG_ERROR_DOMAIN:
      return "domain";
    case CMG_ERROR_STRUCTURE:
      return "structure";
    default:
      return "internal";
  }
}

const char* cmg_last_error(void) { return g_last_error.c_str(); }

void cmg_free_string(char* s) { std::free(s); }

/* ---- poly ---- */

cmg_status cmg_poly_zero(int nvars, cmg_poly** out) {
  if (auto s = require(out && nvars >= 0, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{MPoly(nvars)}; });
}

cmg_status cmg_poly_constant(int nvars, const char* decimal, cmg_poly** out) {
  if (auto s = require(out && decimal && nvars >= 0, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{MPoly::constant(nvars, Int(decimal))}; });
}

cmg_status cmg_poly_variable(int nvars, int index, cmg_poly** out) {
  if (auto s = require(out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{MPoly::variable(nvars, index)}; });
}

cmg_status cmg_poly_monomial(int nvars, const int* exponents_doubled,
                             const char* coeff_decimal, cmg_poly** out) {
  if (auto s = require(out && exponents_doubled && coeff_decimal && nvars >= 0,
                       "bad arguments"))
    return s;
  return guarded([&] {
    Exp e(nvars);
    for (int i = 0; i < nvars; ++i) {
      if (exponents_doubled[i] < 0 || exponents_doubled[i] > 0xffff)
        throw std::invalid_argument("exponent out of range");
      e[i] = static_cast<std::uint16_t>(exponents_doubled[i]);
    }
    *out = new cmg_poly{MPoly::monomial(nvars, std::move(e), Int(coeff_decimal))};
  });
}

cmg_status cmg_poly_clone(const cmg_poly* p, cmg_poly** out) {
  if (auto s = require(p && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{p->v}; });
}

void cmg_poly_free(cmg_poly* p) { delete p; }

int cmg_poly_nvars(const cmg_poly* p) { return p ? p->v.nvars() : -1; }
int cmg_poly_is_zero(const cmg_poly* p) { return p && p->v.is_zero() ? 1 : 0; }
int cmg_poly_equal(const cmg_poly* a, const cmg_poly* b) {
  return a && b && a->v == b->v ? 1 : 0;
}

#define CMG_POLY_BINOP(name, expr)                                        \
  cmg_status name(const cmg_poly* a, const cmg_poly* b, cmg_poly** out) { \
    if (auto s = require(a && b && out, "bad arguments")) return s;       \
    return guarded([&] { *out = new cmg_poly{expr}; });                   \
  }

CMG_POLY_BINOP(cmg_poly_add, a->v + b->v)
CMG_POLY_BINOP(cmg_poly_sub, a->v - b->v)
CMG_POLY_BINOP(cmg_poly_mul, a->v * b->v)
#undef CMG_POLY_BINOP

cmg_status cmg_poly_neg(const cmg_poly* a, cmg_poly** out) {
  if (auto s = require(a && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{-a->v}; });
}

cmg_status cmg_poly_pow(const cmg_poly* a, unsigned k, cmg_poly** out) {
  if (auto s = require(a && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{a->v.pow(k)}; });
}

cmg_status cmg_poly_partial(const cmg_poly* a, int index, cmg_poly** out) {
  if (auto s = require(a && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{a->v.partial(index)}; });
}

cmg_status cmg_poly_reduce_mod(const cmg_poly* a, unsigned long long prime,
                               cmg_poly** out) {
  if (auto s = require(a && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{a->v.reduce_mod(Int(prime))}; });
}

cmg_status cmg_poly_specialize(const cmg_poly* a, const char* assignment_json,
                               cmg_poly** out) {
  if (auto s = require(a && assignment_json && out, "bad arguments")) return s;
  return guarded([&] {
    *out = new cmg_poly{a->v.specialize(assignment_from_json(assignment_json))};
  });
}

cmg_status cmg_poly_sqrt(const cmg_poly* a, cmg_poly** out, int* has_root) {
  if (auto s = require(a && has_root, "bad arguments")) return s;
  return guarded([&] {
    auto r = a->v.sqrt();
    *has_root = r.has_value() ? 1 : 0;
    if (out) *out = r ? new cmg_poly{*r} : nullptr;
  });
}

cmg_status cmg_poly_render(const cmg_poly* p, char** out) {
  if (auto s = require(p && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(p->v.render()); });
}

cmg_status cmg_poly_to_json(const cmg_poly* p, char** out) {
  if (auto s = require(p && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(p->v.to_json().dump()); });
}

cmg_status cmg_poly_from_json(const char* json, cmg_poly** out) {
  if (auto s = require(json && out, "bad arguments")) return s;
  return guarded([&] {
    *out = new cmg_poly{MPoly::from_json(nlohmann::json::parse(json))};
  });
}

/* ---- normal-form building blocks ---- */

cmg_status cmg_poly_a(int r, int m, cmg_poly** out) {
  if (auto s = require(out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{poly_A(r, m)}; });
}

cmg_status cmg_edge_coeff(int q, int m, const int* ell, cmg_poly** out) {
  if (auto s = require(ell && out && m >= 1, "bad arguments")) return s;
  return guarded([&] {
    *out = new cmg_poly{edge_coeff(make_edge(vec_from(ell, m), q), q, m)};
  });
}

cmg_status cmg_linear_form(int q, int m, const int* a_vec, cmg_poly** out) {
  if (auto s = require(a_vec && out && m >= 1, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{linear_form(vec_from(a_vec, m), q, m)}; });
}

cmg_status cmg_diag_entry(int q, int m, const int* a_vec, int sigma,
                          cmg_poly** out) {
  if (auto s = require(a_vec && out && m >= 1 && (sigma == 1 || sigma == -1),
                       "bad arguments"))
    return s;
  return guarded([&] {
    *out = new cmg_poly{diag_entry(GElem{vec_from(a_vec, m), sigma}, q, m)};
  });
}

/* ---- tpoly ---- */

void cmg_tpoly_free(cmg_tpoly* p) { delete p; }

cmg_status cmg_tpoly_clone(const cmg_tpoly* p, cmg_tpoly** out) {
  if (auto s = require(p && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_tpoly{p->v}; });
}

int cmg_tpoly_degree(const cmg_tpoly* p) { return p ? p->v.degree() : -2; }
int cmg_tpoly_equal(const cmg_tpoly* a, const cmg_tpoly* b) {
  return a && b && a->v == b->v ? 1 : 0;
}

cmg_status cmg_tpoly_coeff(const cmg_tpoly* p, int k, cmg_poly** out) {
  if (auto s = require(p && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{p->v.coeff(k)}; });
}

cmg_status cmg_tpoly_mul(const cmg_tpoly* a, const cmg_tpoly* b, cmg_tpoly** out) {
  if (auto s = require(a && b && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_tpoly{a->v * b->v}; });
}

cmg_status cmg_tpoly_resultant(const cmg_tpoly* a, const cmg_tpoly* b,
                               cmg_poly** out) {
  if (auto s = require(a && b && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{tp_resultant(a->v, b->v)}; });
}

cmg_status cmg_tpoly_discriminant(const cmg_tpoly* a, cmg_poly** out) {
  if (auto s = require(a && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_poly{tp_discriminant(a->v)}; });
}

cmg_status cmg_tpoly_render(const cmg_tpoly* p, char** out) {
  if (auto s = require(p && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(p->v.render()); });
}

cmg_status cmg_tpoly_to_json(const cmg_tpoly* p, char** out) {
  if (auto s = require(p && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(p->v.to_json().dump()); });
}

cmg_status cmg_tpoly_from_json(const char* json, cmg_tpoly** out) {
  if (auto s = require(json && out, "bad arguments")) return s;
  return guarded([&] {
    *out = new cmg_tpoly{TPoly::from_json(nlohmann::json::parse(json))};
  });
}

/* ---- graphs ---- */

cmg_status cmg_enumerate_edges_json(int q, int m, char** out) {
  if (auto s = require(out, "bad arguments")) return s;
  return guarded([&] {
    auto edges = enumerate_edges(q, m);
    nlohmann::json black = nlohmann::json::array();
    nlohmann::json red = nlohmann::json::array();
    for (const auto& e : edges)
      (e.color == Color::Black ? black : red).push_back(e.n);
    nlohmann::json j{{"schema", "cmg.edges/1"},
                     {"q", q},
                     {"m", m},
                     {"black", std::move(black)},
                     {"red", std::move(red)}};
    j["black_count"] = j["black"].size();
    j["red_count"] = j["red"].size();
    *out = dup_string(j.dump());
  });
}

cmg_status cmg_graph_from_json(const char* json, cmg_graph** out) {
  if (auto s = require(json && out, "bad arguments")) return s;
  return guarded([&] {
    *out = new cmg_graph{MarkedGraph::from_json(nlohmann::json::parse(json))};
  });
}

cmg_status cmg_graph_to_json(const cmg_graph* g, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(g->v.to_json().dump()); });
}

void cmg_graph_free(cmg_graph* g) { delete g; }

cmg_status cmg_graph_one_edge(int q, int m, const int* ell, cmg_graph** out) {
  if (auto s = require(ell && out && m >= 1, "bad arguments")) return s;
  return guarded([&] {
    Edge e = make_edge(vec_from(ell, m), q);
    GElem other{e.n, e.color == Color::Black ? 1 : -1};
    *out = new cmg_graph{MarkedGraph(q, m, {g_identity(m), other})};
  });
}

int cmg_graph_size(const cmg_graph* g) { return g ? g->v.size() : -1; }

cmg_status cmg_graph_canonicalize(const cmg_graph* g, cmg_graph** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_graph{canonicalize(g->v)}; });
}

cmg_status cmg_graph_components_json(const cmg_graph* g, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : connected_components(g->v)) arr.push_back(c.to_json());
    *out = dup_string(arr.dump());
  });
}

cmg_status cmg_graph_matrix_json(const cmg_graph* g, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] {
    nlohmann::json j = build_matrix(g->v).to_json();
    j["schema"] = "cmg.matrix/1";
    *out = dup_string(j.dump());
  });
}

cmg_status cmg_graph_charpoly(const cmg_graph* g, cmg_tpoly** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] { *out = new cmg_tpoly{charpoly(g->v)}; });
}

cmg_status cmg_charpoly_one_edge(int q, int m, const int* ell, cmg_tpoly** out) {
  if (auto s = require(ell && out && m >= 1, "bad arguments")) return s;
  return guarded([&] {
    *out = new cmg_tpoly{charpoly_one_edge(make_edge(vec_from(ell, m), q), q, m)};
  });
}

cmg_status cmg_verify_deletion_json(const cmg_graph* g, int var_index, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] {
    *out = dup_string(verify_deletion_factorization(g->v, var_index).to_json().dump());
  });
}

/* ---- certification ---- */

cmg_status cmg_certify_json(const cmg_tpoly* chi, int budget, char** out) {
  if (auto s = require(chi && out, "bad arguments")) return s;
  return guarded([&] {
    *out = dup_string(irreducible(chi->v, budget).to_json().dump());
  });
}

cmg_status cmg_separated_json(const cmg_tpoly* a, const cmg_tpoly* b, char** out) {
  if (auto s = require(a && b && out, "bad arguments")) return s;
  return guarded([&] {
    *out = dup_string(separated(a->v, b->v).to_json().dump());
  });
}

cmg_status cmg_run_suite_json(int q, int m, int max_dimension,
                              const char* options_json, char** out) {
  if (auto s = require(out, "bad arguments")) return s;
  return guarded([&] {
    SuiteOptions opt;
    if (options_json && *options_json) {
      nlohmann::json j = nlohmann::json::parse(options_json);
      opt.budget = j.value("budget", opt.budget);
      opt.graph_cap = j.value("graph_cap", opt.graph_cap);
      opt.jobs = j.value("jobs", opt.jobs);
      opt.pairs = j.value("pairs", opt.pairs);
    }
    *out = dup_string(run_suite(q, m, max_dimension, opt).to_json().dump());
  });
}

/* ---- geometry ---- */

cmg_status cmg_sites_from_json(const char* json, cmg_sites** out) {
  if (auto s = require(json && out, "bad arguments")) return s;
  return guarded([&] {
    *out = new cmg_sites{Sites::from_json(nlohmann::json::parse(json))};
  });
}

cmg_status cmg_sites_to_json(const cmg_sites* s, char** out) {
  if (auto st = require(s && out, "bad arguments")) return st;
  return guarded([&] { *out = dup_string(s->v.to_json().dump()); });
}

void cmg_sites_free(cmg_sites* s) { delete s; }

cmg_status cmg_geo_build(const cmg_sites* s, int q, long long box, cmg_geo** out) {
  if (auto st = require(s && out, "bad arguments")) return st;
  return guarded([&] { *out = new cmg_geo{geo_graph(s->v, q, box)}; });
}

void cmg_geo_free(cmg_geo* g) { delete g; }

cmg_status cmg_geo_to_json(const cmg_geo* g, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(g->v.to_json().dump()); });
}

cmg_status cmg_geo_components_json(const cmg_geo* g, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(g->v.components_json().dump()); });
}

cmg_status cmg_geo_genericity_json(const cmg_geo* g, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] {
    *out = dup_string(genericity_check(g->v).to_json().dump());
  });
}

int cmg_geo_component_count(const cmg_geo* g) {
  return g ? g->v.component_count : -1;
}

cmg_status cmg_geo_lift(const cmg_geo* g, int component, cmg_graph** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  cmg_status rc = guarded([&] {
    *out = new cmg_graph{lift_component(g->v, component)};
  });
  // a lift that does not close is a structural failure, not a domain error
  if (rc == CMG_ERROR_DOMAIN &&
      g_last_error.find("does not lift") != std::string::npos)
    return CMG_ERROR_STRUCTURE;
  return rc;
}

cmg_status cmg_geo_dot(const cmg_geo* g, char** out) {
  if (auto s = require(g && out, "bad arguments")) return s;
  return guarded([&] { *out = dup_string(g->v.to_dot()); });
}

cmg_status cmg_pair_set_json(const cmg_sites* s, int q, const int* ell, int m,
                             long long box, char** out) {
  if (auto st = require(s && ell && out && m >= 1, "bad arguments")) return st;
  return guarded([&] {
    PairSet ps = pair_set(make_edge(vec_from(ell, m), q), s->v, box);
    *out = dup_string(ps.to_json().dump());
  });
}

cmg_status cmg_search_generic_sites(int n, int m, int q, long long box,
                                    unsigned long long seed, int max_attempts,
                                    cmg_sites** out) {
  if (auto st = require(out && max_attempts >= 1, "bad arguments")) return st;
  return guarded([&] {
    auto s = search_generic_sites(n, m, q, box, seed, max_attempts);
    if (!s) throw std::domain_error("no generic site set found within the attempt budget");
    *out = new cmg_sites{*s};
  });
}

}  // extern "C"
