// Command-line front end.  Talks to the core exclusively through the C API
// in cmg.h; structured results pass as JSON.
//
// Exit codes: 0 all certified / success, 2 mathematical failure found,
// 3 incomplete (budget or box), 64 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitUsage = 64;

using nlohmann::json;

struct StringDeleter {
  void operator()(char* s) const { cmg_free_string(s); }
};
using CStr = std::unique_ptr<char, StringDeleter>;

[[noreturn]] void die(const std::string& msg, int code) {
  std::cerr << "cmg: " << msg << "\n";
  std::exit(code);
}

void check(cmg_status s, int usage_exit = kExitUsage) {
  if (s == CMG_OK) return;
  die(std::string(cmg_status_name(s)) + ": " + cmg_last_error(),
      s == CMG_ERROR_INVALID ? usage_exit : kExitMathFailure);
}

std::vector<int> parse_vector(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      v.push_back(std::stoi(tok));
    } catch (...) {
      die("cannot parse vector entry '" + tok + "'", kExitUsage);
    }
  }
  if (v.empty()) die("empty vector", kExitUsage);
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open " + path, kExitUsage);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) die("cannot write " + out_path, kExitUsage);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

int env_jobs() {
  const char* e = std::getenv("CMG_JOBS");
  if (!e) return 1;
  int v = std::atoi(e);
  return v >= 1 ? v : 1;
}

// --config file may preload any of these defaults
struct Config {
  int q = 0, m = 0, max_dim = -1, budget = 8, jobs = env_jobs();
  long long box = 0;
  std::string sites_path;
};

Config load_config(const std::string& path) {
  Config c;
  if (path.empty()) return c;
  json j = json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) die("malformed config JSON", kExitUsage);
  c.q = j.value("q", c.q);
  c.m = j.value("m", c.m);
  c.max_dim = j.value("max_dimension", c.max_dim);
  c.budget = j.value("budget", c.budget);
  c.jobs = j.value("jobs", c.jobs);
  c.box = j.value("R", c.box);
  c.sites_path = j.value("sites", c.sites_path);
  return c;
}

// ---------------------------------------------------------------------------

int cmd_edges(int q, int m, const std::string& format, const std::string& out) {
  char* raw = nullptr;
  check(cmg_enumerate_edges_json(q, m, &raw));
  CStr guard(raw);
  json j = json::parse(raw);
  if (format == "json") {
    write_output(j.dump(2), out);
  } else {
    std::ostringstream os;
    for (const auto& e : j["black"]) os << "black " << e.dump() << "\n";
    for (const auto& e : j["red"]) os << "red   " << e.dump() << "\n";
    os << j["black_count"].get<long>() << " black, " << j["red_count"].get<long>()
       << " red";
    write_output(os.str(), out);
  }
  return kExitOk;
}

cmg_graph* load_graph(const std::string& graph_path, const std::string& one_edge,
                      int q, int m) {
  if (graph_path.empty() == one_edge.empty())
    die("exactly one of --graph or --one-edge is required", kExitUsage);
  cmg_graph* g = nullptr;
  if (!graph_path.empty()) {
    check(cmg_graph_from_json(read_file(graph_path).c_str(), &g));
  } else {
    std::vector<int> ell = parse_vector(one_edge);
    if (m > 0 && m != static_cast<int>(ell.size()))
      die("--m disagrees with the edge vector length", kExitUsage);
    check(cmg_graph_one_edge(q, static_cast<int>(ell.size()), ell.data(), &g));
  }
  return g;
}

int cmd_charpoly(const std::string& graph_path, const std::string& one_edge,
                 int q, int m, const std::string& format, const std::string& out) {
  cmg_graph* g = load_graph(graph_path, one_edge, q, m);
  cmg_tpoly* chi = nullptr;
  check(cmg_graph_charpoly(g, &chi));
  if (format == "json") {
    char* js = nullptr;
    check(cmg_tpoly_to_json(chi, &js));
    CStr guard(js);
    write_output(json::parse(js).dump(2), out);
  } else {
    char* text = nullptr;
    check(cmg_tpoly_render(chi, &text));
    CStr guard(text);
    write_output(text, out);
  }
  cmg_tpoly_free(chi);
  cmg_graph_free(g);
  return kExitOk;
}

int cmd_matrix(const std::string& graph_path, const std::string& one_edge, int q,
               int m, const std::string& out) {
  cmg_graph* g = load_graph(graph_path, one_edge, q, m);
  char* js = nullptr;
  check(cmg_graph_matrix_json(g, &js));
  CStr guard(js);
  write_output(json::parse(js).dump(2), out);
  cmg_graph_free(g);
  return kExitOk;
}

int run_self_test(const std::string& which) {
  // negative controls exercised through the public API
  if (which == "plant-reducible") {
    // t^2 - x1^2 must certify Reducible
    const char* tp =
        R"({"nvars":1,"coeffs":[
             {"nvars":1,"terms":[{"exponents_doubled":[4],"coeff":"-1"}]},
             {"nvars":1,"terms":[]},
             {"nvars":1,"terms":[{"exponents_doubled":[0],"coeff":"1"}]}]})";
    cmg_tpoly* p = nullptr;
    check(cmg_tpoly_from_json(tp, &p));
    char* cert = nullptr;
    check(cmg_certify_json(p, 8, &cert));
    CStr guard(cert);
    json j = json::parse(cert);
    std::cout << j.dump(2) << "\n";
    cmg_tpoly_free(p);
    return j["verdict"] == "Reducible" ? kExitMathFailure : kExitOk;
  }
  if (which == "plant-equal-pair") {
    std::vector<int> ell{1, -1};
    cmg_tpoly* chi = nullptr;
    check(cmg_charpoly_one_edge(1, 2, ell.data(), &chi));
    char* rep = nullptr;
    check(cmg_separated_json(chi, chi, &rep));
    CStr guard(rep);
    json j = json::parse(rep);
    std::cout << j.dump(2) << "\n";
    cmg_tpoly_free(chi);
    return j["separated"].get<bool>() ? kExitOk : kExitMathFailure;
  }
  die("unknown self test '" + which + "'", kExitUsage);
}

int cmd_certify(int q, int m, int max_dim, int budget, int jobs,
                const std::string& self_test, const std::string& out) {
  if (!self_test.empty()) return run_self_test(self_test);
  if (q < 1 || m < 1 || max_dim < 0)
    die("--q, --m and --max-dim are required", kExitUsage);
  json opts{{"budget", budget}, {"jobs", jobs}};
  char* rep = nullptr;
  check(cmg_run_suite_json(q, m, max_dim, opts.dump().c_str(), &rep));
  CStr guard(rep);
  json j = json::parse(rep);
  write_output(j.dump(2), out);
  const auto& summary = j["summary"];
  bool failure = summary["reducible"].get<long>() > 0 ||
                 !summary["all_separated"].get<bool>();
  if (failure) return kExitMathFailure;
  if (j["incomplete"].get<bool>()) return kExitIncomplete;
  if (summary["unknown"].get<long>() > 0)
    std::cerr << "cmg: warning: " << summary["unknown"].get<long>()
              << " certificate(s) exhausted the budget (Unknown)\n";
  return kExitOk;
}

int cmd_geometry(const std::string& sites_path, int q, long long box,
                 bool components, bool check_generic, bool lift,
                 const std::string& pairs_edge, const std::string& dot_path,
                 int budget, const std::string& out) {
  if (sites_path.empty()) die("--sites is required", kExitUsage);
  if (q < 1 || box < 1) die("--q and --R are required", kExitUsage);
  cmg_sites* sites = nullptr;
  check(cmg_sites_from_json(read_file(sites_path).c_str(), &sites));

  if (!pairs_edge.empty()) {
    std::vector<int> ell = parse_vector(pairs_edge);
    char* js = nullptr;
    check(cmg_pair_set_json(sites, q, ell.data(), static_cast<int>(ell.size()),
                            box, &js));
    CStr guard(js);
    write_output(json::parse(js).dump(2), out);
    cmg_sites_free(sites);
    return kExitOk;
  }

  cmg_geo* geo = nullptr;
  check(cmg_geo_build(sites, q, box, &geo));

  if (!dot_path.empty()) {
    char* dot = nullptr;
    check(cmg_geo_dot(geo, &dot));
    CStr guard(dot);
    std::ofstream f(dot_path);
    if (!f) die("cannot write " + dot_path, kExitUsage);
    f << dot;
  }

  int rc = kExitOk;
  if (check_generic) {
    char* js = nullptr;
    check(cmg_geo_genericity_json(geo, &js));
    CStr guard(js);
    json j = json::parse(js);
    write_output(j.dump(2), out);
    if (!j["pass"].get<bool>()) rc = kExitMathFailure;
  } else if (lift) {
    // lift every complete component, certify, and separate the distinct
    // canonical classes
    char* comp_js = nullptr;
    check(cmg_geo_components_json(geo, &comp_js));
    CStr comp_guard(comp_js);
    json comps = json::parse(comp_js);
    std::vector<cmg_tpoly*> chis;
    json entries = json::array();
    bool incomplete = false, failure = false;
    std::vector<std::string> seen_keys;
    for (const auto& c : comps["components"]) {
      if (!c["complete"].get<bool>()) {
        incomplete = true;
        continue;
      }
      cmg_graph* lifted = nullptr;
      check(cmg_geo_lift(geo, c["id"].get<int>(), &lifted));
      cmg_graph* canon = nullptr;
      check(cmg_graph_canonicalize(lifted, &canon));
      char* key = nullptr;
      check(cmg_graph_to_json(canon, &key));
      CStr key_guard(key);
      std::string ks(key);
      cmg_graph_free(lifted);
      bool dup = false;
      for (const auto& s : seen_keys) dup = dup || s == ks;
      if (dup) {
        cmg_graph_free(canon);
        continue;
      }
      seen_keys.push_back(ks);
      cmg_tpoly* chi = nullptr;
      check(cmg_graph_charpoly(canon, &chi));
      char* cert = nullptr;
      check(cmg_certify_json(chi, budget, &cert));
      CStr cert_guard(cert);
      json cj = json::parse(cert);
      if (cj["verdict"] == "Reducible") failure = true;
      entries.push_back(json{{"component", c["id"]},
                             {"canonical", json::parse(ks)},
                             {"certificate", cj}});
      chis.push_back(chi);
      cmg_graph_free(canon);
    }
    json pairs = json::array();
    for (std::size_t i = 0; i < chis.size(); ++i)
      for (std::size_t j2 = i + 1; j2 < chis.size(); ++j2) {
        char* rep = nullptr;
        check(cmg_separated_json(chis[i], chis[j2], &rep));
        CStr rep_guard(rep);
        json rj = json::parse(rep);
        if (!rj["separated"].get<bool>()) failure = true;
        rj["i"] = i;
        rj["j"] = j2;
        pairs.push_back(std::move(rj));
      }
    for (auto* c : chis) cmg_tpoly_free(c);
    json outj{{"schema", "cmg.lift-report/1"},
              {"classes", std::move(entries)},
              {"pairs", std::move(pairs)},
              {"incomplete", incomplete}};
    write_output(outj.dump(2), out);
    if (failure)
      rc = kExitMathFailure;
    else if (incomplete)
      rc = kExitIncomplete;
  } else if (components) {
    char* js = nullptr;
    check(cmg_geo_components_json(geo, &js));
    CStr guard(js);
    write_output(json::parse(js).dump(2), out);
  } else {
    char* js = nullptr;
    check(cmg_geo_to_json(geo, &js));
    CStr guard(js);
    write_output(json::parse(js).dump(2), out);
  }
  cmg_geo_free(geo);
  cmg_sites_free(sites);
  return rc;
}

int cmd_search_sites(int n, int m, int q, long long box, unsigned long long seed,
                     int attempts, const std::string& out) {
  cmg_sites* sites = nullptr;
  cmg_status s = cmg_search_generic_sites(n, m, q, box, seed, attempts, &sites);
  if (s == CMG_ERROR_DOMAIN) {
    std::cerr << "cmg: " << cmg_last_error() << "\n";
    return kExitIncomplete;
  }
  check(s);
  char* js = nullptr;
  check(cmg_sites_to_json(sites, &js));
  CStr guard(js);
  write_output(json::parse(js).dump(2), out);
  cmg_sites_free(sites);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certification of colored-marked-graph blocks"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file preloading defaults");

  // edges
  auto* edges = app.add_subcommand("edges", "enumerate the generator sets X_q");
  int e_q = 0, e_m = 0;
  std::string e_format = "text", e_out;
  edges->add_option("--q", e_q)->required();
  edges->add_option("--m", e_m)->required();
  edges->add_option("--format", e_format)->check(CLI::IsMember({"text", "json"}));
  edges->add_option("--out", e_out);

  // charpoly
  auto* cp = app.add_subcommand("charpoly", "characteristic polynomial of a graph");
  std::string cp_graph, cp_edge, cp_format = "text", cp_out;
  int cp_q = 0, cp_m = 0;
  cp->add_option("--graph", cp_graph, "graph JSON file");
  cp->add_option("--one-edge", cp_edge, "inline edge, e.g. \"+1,-1\"");
  cp->add_option("--q", cp_q);
  cp->add_option("--m", cp_m);
  cp->add_option("--format", cp_format)->check(CLI::IsMember({"text", "json"}));
  cp->add_option("--out", cp_out);

  // matrix
  auto* mx = app.add_subcommand("matrix", "normalized matrix of a graph");
  std::string mx_graph, mx_edge, mx_out;
  int mx_q = 0, mx_m = 0;
  mx->add_option("--graph", mx_graph);
  mx->add_option("--one-edge", mx_edge);
  mx->add_option("--q", mx_q);
  mx->add_option("--m", mx_m);
  mx->add_option("--out", mx_out);

  // certify
  auto* ct = app.add_subcommand("certify", "irreducibility/separation batch run");
  int ct_q = 0, ct_m = 0, ct_maxdim = -1, ct_budget = 0, ct_jobs = 0;
  std::string ct_out, ct_selftest;
  ct->add_option("--q", ct_q);
  ct->add_option("--m", ct_m);
  ct->add_option("--max-dim", ct_maxdim);
  ct->add_option("--budget", ct_budget);
  ct->add_option("--jobs", ct_jobs);
  ct->add_option("--out", ct_out);
  ct->add_option("--self-test", ct_selftest,
                 "negative control: plant-reducible | plant-equal-pair");

  // geometry
  auto* ge = app.add_subcommand("geometry", "geometric graph of tangential sites");
  std::string ge_sites, ge_pairs, ge_dot, ge_out;
  int ge_q = 0, ge_budget = 0;
  long long ge_box = 0;
  bool ge_components = false, ge_generic = false, ge_lift = false;
  ge->add_option("--sites", ge_sites, "sites JSON file");
  ge->add_option("--q", ge_q);
  ge->add_option("--R", ge_box, "coordinate box bound");
  ge->add_flag("--components", ge_components);
  ge->add_flag("--check-generic", ge_generic);
  ge->add_flag("--lift", ge_lift, "lift components and certify them");
  ge->add_option("--pairs", ge_pairs, "pair set of one edge, e.g. \"-1,-1\"");
  ge->add_option("--dot", ge_dot, "write a DOT rendering to this file");
  ge->add_option("--budget", ge_budget);
  ge->add_option("--out", ge_out);

  // search-sites
  auto* ss = app.add_subcommand("search-sites", "search for generic tangential sites");
  int ss_n = 0, ss_m = 0, ss_q = 0, ss_attempts = 500;
  long long ss_box = 0;
  unsigned long long ss_seed = 1;
  std::string ss_out;
  ss->add_option("--n", ss_n)->required();
  ss->add_option("--m", ss_m)->required();
  ss->add_option("--q", ss_q);
  ss->add_option("--R", ss_box);
  ss->add_option("--seed", ss_seed);
  ss->add_option("--attempts", ss_attempts);
  ss->add_option("--out", ss_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Config cfg = load_config(config_path);
  auto pick = [](int flag_value, int cfg_value, int fallback) {
    if (flag_value > 0) return flag_value;
    if (cfg_value > 0) return cfg_value;
    return fallback;
  };

  try {
    if (edges->parsed()) return cmd_edges(e_q, e_m, e_format, e_out);
    if (cp->parsed())
      return cmd_charpoly(cp_graph, cp_edge, pick(cp_q, cfg.q, 0), cp_m,
                          cp_format, cp_out);
    if (mx->parsed())
      return cmd_matrix(mx_graph, mx_edge, pick(mx_q, cfg.q, 0), mx_m, mx_out);
    if (ct->parsed())
      return cmd_certify(pick(ct_q, cfg.q, 0), pick(ct_m, cfg.m, 0),
                         ct_maxdim >= 0 ? ct_maxdim : cfg.max_dim,
                         pick(ct_budget, cfg.budget, 8),
                         pick(ct_jobs, cfg.jobs, 1), ct_selftest, ct_out);
    if (ge->parsed())
      return cmd_geometry(!ge_sites.empty() ? ge_sites : cfg.sites_path,
                          pick(ge_q, cfg.q, 0),
                          ge_box > 0 ? ge_box : cfg.box, ge_components,
                          ge_generic, ge_lift, ge_pairs, ge_dot,
                          pick(ge_budget, cfg.budget, 8), ge_out);
    if (ss->parsed())
      return cmd_search_sites(ss_n, ss_m, pick(ss_q, cfg.q, 0),
                              ss_box > 0 ? ss_box : cfg.box, ss_seed,
                              ss_attempts, ss_out);
  } catch (const std::exception& e) {
    die(e.what(), kExitUsage);
  }
  return kExitUsage;
}
