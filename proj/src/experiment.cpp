#include "c0wave/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace c0wave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool to_double(const std::string& s, double& v) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  return ec == std::errc() && p == e && std::isfinite(v);
}

template <class Int>
bool to_int(const std::string& s, Int& v) {
  const char* b = s.data();
  const char* e = b + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  return ec == std::errc() && p == e;
}

bool to_bool(const std::string& s, bool& v) {
  if (s == "true" || s == "1" || s == "yes") {
    v = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no") {
    v = false;
    return true;
  }
  return false;
}

template <class T, class F>
bool to_list(const std::string& s, std::vector<T>& out, F&& conv) {
  out.clear();
  for (const auto& item : split(s, ',')) {
    T v{};
    if (item.empty() || !conv(item, v)) return false;
    out.push_back(v);
  }
  return !out.empty();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

bool near_integer(double x, double rel) {
  const double r = std::round(x);
  return r >= 1.0 && std::abs(x - r) <= rel * r;
}

}  // namespace

Suite parse_suite(const std::string& name) {
  static const std::map<std::string, Suite> names{
      {"tau_refine", Suite::tau_refine},   {"p_refine", Suite::p_refine},
      {"spacetime_refine", Suite::spacetime_refine}, {"long_time", Suite::long_time},
      {"effectivity", Suite::effectivity}, {"adaptive", Suite::adaptive}};
  const auto it = names.find(name);
  if (it == names.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  return it->second;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::tau_refine: return "tau_refine";
    case Suite::p_refine: return "p_refine";
    case Suite::spacetime_refine: return "spacetime_refine";
    case Suite::long_time: return "long_time";
    case Suite::effectivity: return "effectivity";
    case Suite::adaptive: return "adaptive";
  }
  return "unknown";
}

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error([&] {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

int intervals_for(double T, double tau) {
  if (!(T > 0.0) || !(tau > 0.0)) throw std::invalid_argument("T and tau must be positive");
  const double ratio = T / tau;
  if (!near_integer(ratio, 0.05)) {
    throw std::invalid_argument("tau = " + num(tau) + " does not divide T = " + num(T));
  }
  return static_cast<int>(std::lround(ratio));
}

namespace {

void collect_violations(const ExperimentConfig& c, std::vector<std::string>& v) {
  if (c.case_id == CaseId::case2 && !(c.params.alpha > 1.5)) v.push_back("alpha: case2 requires alpha > 1.5");
  if (c.case_id == CaseId::case3 && (c.params.mode_n < 1 || c.params.mode_m < 1)) {
    v.push_back("mode_n, mode_m: case3 requires integer modes >= 1");
  }
  if (c.tau.empty()) v.push_back("tau: sequence must be non-empty");
  for (double t : c.tau) {
    if (!(t > 0.0)) v.push_back("tau: entries must be positive");
  }
  for (std::size_t i = 1; i < c.tau.size(); ++i) {
    if (!(c.tau[i] < c.tau[i - 1])) {
      v.push_back("tau: sequence must be strictly decreasing");
      break;
    }
  }
  if (c.pt.empty()) v.push_back("pt: sequence must be non-empty");
  for (int p : c.pt) {
    if (p < 2) v.push_back("pt: time degree must satisfy pt >= 2 (got " + std::to_string(p) + ")");
  }
  if (c.T.empty()) v.push_back("T: sequence must be non-empty");
  for (double t : c.T) {
    if (!(t > 0.0)) v.push_back("T: entries must be positive");
  }
  for (double T : c.T) {
    for (double t : c.tau) {
      if (T > 0.0 && t > 0.0 && !near_integer(T / t, 0.05)) {
        v.push_back("tau: " + num(t) + " does not divide T = " + num(T));
      }
    }
  }
  if (c.px.follows_pt) {
    if (c.px.offset < -1) v.push_back("px: offset must keep the spatial degree >= 1");
  } else {
    if (c.px.values.empty()) v.push_back("px: sequence must be non-empty");
    if (c.px.values.size() > 1 && c.px.values.size() != c.pt.size()) {
      v.push_back("px: list must have one entry or one per pt entry");
    }
    for (int p : c.px.values) {
      if (p < 1) v.push_back("px: spatial degree must be >= 1");
    }
  }
  std::vector<double> widths;
  if (c.h.follows_tau) {
    if (!(c.h.factor > 0.0)) v.push_back("h: tau factor must be positive");
    for (double t : c.tau) widths.push_back(c.h.factor * t);
  } else {
    if (c.h.values.empty()) v.push_back("h: sequence must be non-empty");
    if (c.h.values.size() > 1 && c.h.values.size() != c.tau.size()) {
      v.push_back("h: list must have one entry or one per tau entry");
    }
    widths = c.h.values;
  }
  for (double h : widths) {
    if (!(h > 0.0) || !near_integer(2.0 / h, 0.05)) {
      v.push_back("h: " + num(h) + " does not divide the domain width 2");
    }
  }
  if (!(c.theta > 0.0 && c.theta <= 1.0)) v.push_back("theta: must lie in (0, 1]");
  if (c.max_iters < 1) v.push_back("max_iters: must be >= 1");
  if (!(c.eta_tol >= 0.0)) v.push_back("eta_tol: must be >= 0");
  if (c.output.empty()) v.push_back("output: path must be non-empty");
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  std::vector<std::string> v;
  collect_violations(config, v);
  if (!v.empty()) throw ConfigError(std::move(v));
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::vector<std::string> v;
  bool has_case = false;
  bool has_suite = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::map<std::string, int> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      v.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (seen[key]++) v.push_back(key + ": given more than once");
    const auto bad = [&](const std::string& what) { v.push_back(key + ": " + what + " (got '" + val + "')"); };
    if (key == "case") {
      try {
        c.case_id = parse_case_id(val);
        has_case = true;
      } catch (const std::invalid_argument&) {
        bad("expected case1, case2 or case3");
      }
    } else if (key == "suite") {
      try {
        c.suite = parse_suite(val);
        has_suite = true;
      } catch (const std::invalid_argument&) {
        bad("expected tau_refine, p_refine, spacetime_refine, long_time, effectivity or adaptive");
      }
    } else if (key == "alpha") {
      if (!to_double(val, c.params.alpha)) bad("expected a number");
    } else if (key == "omega") {
      if (!to_double(val, c.params.omega)) bad("expected a number");
    } else if (key == "mode_n") {
      if (!to_int(val, c.params.mode_n)) bad("expected an integer");
    } else if (key == "mode_m") {
      if (!to_int(val, c.params.mode_m)) bad("expected an integer");
    } else if (key == "tau") {
      if (!to_list(val, c.tau, to_double)) bad("expected a comma separated list of numbers");
    } else if (key == "T") {
      if (!to_list(val, c.T, to_double)) bad("expected a comma separated list of numbers");
    } else if (key == "pt") {
      if (!to_list(val, c.pt, to_int<int>)) bad("expected a comma separated list of integers");
    } else if (key == "px") {
      if (val.rfind("pt", 0) == 0) {
        c.px.follows_pt = true;
        const std::string rest = trim(val.substr(2));
        c.px.offset = 0;
        if (!rest.empty() && (rest[0] != '+' || !to_int(trim(rest.substr(1)), c.px.offset))) {
          bad("expected integers, pt or pt+K");
        }
      } else if (!to_list(val, c.px.values, to_int<int>)) {
        bad("expected integers, pt or pt+K");
      }
    } else if (key == "h") {
      const auto star = val.find('*');
      const std::string tail = star == std::string::npos ? val : trim(val.substr(star + 1));
      if (tail == "tau") {
        c.h.follows_tau = true;
        c.h.factor = 1.0;
        if (star != std::string::npos && !to_double(trim(val.substr(0, star)), c.h.factor)) {
          bad("expected numbers, tau or K*tau");
        }
      } else if (!to_list(val, c.h.values, to_double)) {
        bad("expected numbers, tau or K*tau");
      }
    } else if (key == "theta") {
      if (!to_double(val, c.theta)) bad("expected a number");
    } else if (key == "max_iters") {
      if (!to_int(val, c.max_iters)) bad("expected an integer");
    } else if (key == "eta_tol") {
      if (!to_double(val, c.eta_tol)) bad("expected a number");
    } else if (key == "include_osc") {
      if (!to_bool(val, c.include_osc)) bad("expected true or false");
    } else if (key == "output") {
      c.output = val;
    } else if (key == "seed") {
      if (!to_int(val, c.seed)) bad("expected an unsigned 64-bit integer");
    } else {
      v.push_back(key + ": unknown key");
    }
  }
  if (!has_case) v.push_back("case: required key missing");
  if (!has_suite) v.push_back("suite: required key missing");
  collect_violations(c, v);
  if (!v.empty()) throw ConfigError(std::move(v));
  return c;
}

bool ExperimentResult::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ResultRow& r) { return r.status == "ok"; });
}

int thread_count() {
  if (const char* env = std::getenv("C0WAVE_THREADS")) {
    int n = 0;
    if (to_int(trim(env), n) && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct Job {
  int group = 0;
  int level = 0;
  int pt = 2;
  int px = 2;
  double tau = 0.2;
  double h = 0.4;
  double T = 1.0;
};

int spatial_degree(const ExperimentConfig& c, std::size_t pt_index) {
  if (c.px.follows_pt) return c.pt[pt_index] + c.px.offset;
  return c.px.values.size() == 1 ? c.px.values[0] : c.px.values[pt_index];
}

double mesh_width(const ExperimentConfig& c, std::size_t tau_index) {
  if (c.h.follows_tau) return c.h.factor * c.tau[tau_index];
  return c.h.values.size() == 1 ? c.h.values[0] : c.h.values[tau_index];
}

Job make_job(const ExperimentConfig& c, int group, int level, std::size_t ip, std::size_t it,
             std::size_t iT) {
  Job j;
  j.group = group;
  j.level = level;
  j.pt = c.pt[ip];
  j.px = spatial_degree(c, ip);
  j.tau = c.tau[it];
  j.h = mesh_width(c, it);
  j.T = c.T[iT];
  return j;
}

std::vector<Job> uniform_jobs(const ExperimentConfig& c) {
  std::vector<Job> jobs;
  int group = 0;
  switch (c.suite) {
    case Suite::p_refine:
      for (std::size_t iT = 0; iT < c.T.size(); ++iT) {
        for (std::size_t it = 0; it < c.tau.size(); ++it, ++group) {
          for (std::size_t ip = 0; ip < c.pt.size(); ++ip) {
            jobs.push_back(make_job(c, group, static_cast<int>(ip), ip, it, iT));
          }
        }
      }
      break;
    case Suite::long_time:
      for (std::size_t ip = 0; ip < c.pt.size(); ++ip) {
        for (std::size_t it = 0; it < c.tau.size(); ++it, ++group) {
          for (std::size_t iT = 0; iT < c.T.size(); ++iT) {
            jobs.push_back(make_job(c, group, static_cast<int>(iT), ip, it, iT));
          }
        }
      }
      break;
    default:
      for (std::size_t ip = 0; ip < c.pt.size(); ++ip) {
        for (std::size_t iT = 0; iT < c.T.size(); ++iT, ++group) {
          for (std::size_t it = 0; it < c.tau.size(); ++it) {
            jobs.push_back(make_job(c, group, static_cast<int>(it), ip, it, iT));
          }
        }
      }
      break;
  }
  return jobs;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double safe_kappa(double eta, double err) {
  try {
    return effectivity(eta, err);
  } catch (const std::domain_error&) {
    return kNaN;
  }
}

ResultRow run_uniform_level(const ExperimentConfig& c, const ManufacturedCase& mc, const Job& j) {
  const auto start = std::chrono::steady_clock::now();
  ResultRow r;
  r.suite = suite_name(c.suite);
  r.run = "uniform";
  r.group = j.group;
  r.level = j.level;
  r.T = j.T;
  r.h = j.h;
  r.tau = j.tau;
  r.px = j.px;
  r.pt = j.pt;
  try {
    r.N = intervals_for(j.T, j.tau);
    const TimeGrid grid = TimeGrid::uniform(j.T, r.N, j.pt);
    r.tau = grid.tau(0);
    auto space = std::make_shared<const SpatialSpace>(square_mesh(j.h), j.px);
    r.dofs = degrees_of_freedom(grid, *space);
    const ProblemData data = mc.data();
    const SlabSolution sol = march(data, space, grid);
    r.err = compute_errors(sol, mc);
    const auto rep = estimate(sol, data.f, c.include_osc, EstimatorMode::global);
    const auto loc = estimate(sol, data.f, false, EstimatorMode::localized);
    r.eta = rep.eta;
    r.eta_localized = loc.eta;
    r.eta1 = rep.eta1;
    r.eta2 = rep.eta2;
    r.osc = rep.osc;
    r.kappa = safe_kappa(rep.total(), r.err.Linf_L2);
    const auto st = stability_check(sol, data);
    r.stability_lhs = st.lhs;
    r.stability_rhs = st.rhs;
    r.stable = st.satisfied ? 1 : 0;
  } catch (const std::exception& e) {
    r.status = std::string("failed: ") + e.what();
  }
  r.wall_time = seconds_since(start);
  return r;
}

std::vector<ResultRow> run_adaptive_group(const ExperimentConfig& c, const ManufacturedCase& mc,
                                          std::size_t ip, int group) {
  std::vector<ResultRow> rows;
  const auto start = std::chrono::steady_clock::now();
  const int pt = c.pt[ip];
  const int px = spatial_degree(c, ip);
  const double h = mesh_width(c, 0);
  const double T = c.T[0];
  ResultRow base;
  base.suite = suite_name(c.suite);
  base.run = "adaptive";
  base.group = group;
  base.T = T;
  base.h = h;
  base.px = px;
  base.pt = pt;
  try {
    const TimeGrid initial = TimeGrid::uniform(T, intervals_for(T, c.tau[0]), pt);
    auto space = std::make_shared<const SpatialSpace>(square_mesh(h), px);
    AdaptiveOptions opt;
    opt.theta = c.theta;
    opt.max_iters = c.max_iters;
    opt.eta_tol = c.eta_tol;
    const auto state = run_adaptive(mc.data(), space, initial, opt, &mc);
    for (std::size_t k = 0; k < state.history.size(); ++k) {
      const auto& s = state.history[k];
      ResultRow r = base;
      r.level = static_cast<int>(k);
      r.N = s.grid.size();
      r.tau = 0.0;
      for (int n = 0; n < r.N; ++n) r.tau = std::max(r.tau, s.grid.tau(n));
      r.dofs = s.dofs;
      r.err = s.errors.value_or(ErrorBundle{});
      r.eta = s.global.eta;
      r.eta_localized = s.report.eta;
      r.eta1 = s.global.eta1;
      r.eta2 = s.global.eta2;
      r.osc = 0.0;
      r.kappa = safe_kappa(s.global.eta, r.err.Linf_L2);
      r.stability_lhs = s.stability.lhs;
      r.stability_rhs = s.stability.rhs;
      r.stable = s.stability.satisfied ? 1 : 0;
      r.wall_time = seconds_since(start);
      rows.push_back(r);
    }
    if (state.failed()) {
      ResultRow r = base;
      r.level = static_cast<int>(state.history.size());
      r.status = "failed: " + state.failure;
      rows.push_back(r);
    }
  } catch (const std::exception& e) {
    ResultRow r = base;
    r.status = std::string("failed: ") + e.what();
    rows.push_back(r);
  }
  return rows;
}

double rate_param(const ResultRow& r) {
  if (r.run == "adaptive") return static_cast<double>(r.dofs);
  if (r.suite == "long_time") return r.T;
  if (r.suite == "p_refine") return r.pt;
  return r.tau;
}

double one_rate(double e0, double e1, double h0, double h1) {
  if (!(e0 > 0.0) || !(e1 > 0.0) || !(h0 > 0.0) || !(h1 > 0.0) || h0 == h1) return kNaN;
  return rate({e0, e1}, {h0, h1})[0];
}

}  // namespace

void fill_rates(ExperimentResult& result) {
  auto& rows = result.rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    const ResultRow* prev = nullptr;
    for (std::size_t k = i; k-- > 0;) {
      const auto& q = rows[k];
      if (q.suite == r.suite && q.run == r.run && q.group == r.group) {
        if (q.status == "ok") prev = &q;
        break;
      }
    }
    if (!prev || r.status != "ok") {
      r.rate_W1inf_L2 = r.rate_Linf_H1 = r.rate_L2_H1 = r.rate_H1deriv_L2L2 = kNaN;
      r.rate_Linf_L2 = r.rate_jump = r.rate_eta = kNaN;
      continue;
    }
    const double h0 = rate_param(*prev);
    const double h1 = rate_param(r);
    r.rate_W1inf_L2 = one_rate(prev->err.max_W1inf_L2, r.err.max_W1inf_L2, h0, h1);
    r.rate_Linf_H1 = one_rate(prev->err.max_Linf_H1, r.err.max_Linf_H1, h0, h1);
    r.rate_L2_H1 = one_rate(prev->err.L2_H1, r.err.L2_H1, h0, h1);
    r.rate_H1deriv_L2L2 = one_rate(prev->err.H1deriv_L2L2, r.err.H1deriv_L2L2, h0, h1);
    r.rate_Linf_L2 = one_rate(prev->err.Linf_L2, r.err.Linf_L2, h0, h1);
    r.rate_jump = one_rate(prev->err.jump_err, r.err.jump_err, h0, h1);
    r.rate_eta = one_rate(prev->eta, r.eta, h0, h1);
  }
}

ExperimentResult run_suite(const ExperimentConfig& config) {
  validate_config(config);
  const ManufacturedCase mc = make_case(config.case_id, config.params);
  std::vector<Job> jobs;
  if (config.suite == Suite::adaptive) {
    ExperimentConfig uni = config;
    uni.suite = Suite::tau_refine;
    uni.T = {config.T[0]};
    jobs = uniform_jobs(uni);
  } else {
    jobs = uniform_jobs(config);
  }

  std::vector<ResultRow> uniform(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      uniform[i] = run_uniform_level(config, mc, jobs[i]);
    }
  };
  const int nthreads = std::min<int>(thread_count(), static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ExperimentResult result;
  if (config.suite == Suite::adaptive) {
    for (std::size_t ip = 0; ip < config.pt.size(); ++ip) {
      for (auto& r : uniform) {
        if (r.group == static_cast<int>(ip)) result.rows.push_back(r);
      }
      for (auto& r : run_adaptive_group(config, mc, ip, static_cast<int>(ip))) result.rows.push_back(r);
    }
  } else {
    result.rows = std::move(uniform);
  }
  fill_rates(result);
  return result;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "suite",         "run",          "group",         "level",          "T",
      "h",             "tau",          "px",            "pt",             "N",
      "dofs",          "max_W1inf_L2", "max_Linf_H1",   "L2_H1",          "H1deriv_L2L2",
      "Linf_L2",       "jump_err",     "eta",           "eta_localized",  "eta1",
      "eta2",          "osc",          "kappa",         "stability_lhs",  "stability_rhs",
      "stable",        "rate_W1inf_L2", "rate_Linf_H1", "rate_L2_H1",     "rate_H1deriv_L2L2",
      "rate_Linf_L2",  "rate_jump",    "rate_eta",      "status",         "wall_time"};
  return cols;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string clean(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

double parse_num(const std::string& s) {
  if (s == "nan" || s == "-nan") return kNaN;
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

void emit_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : result.rows) {
    const std::vector<std::string> f{
        clean(r.suite), clean(r.run), std::to_string(r.group), std::to_string(r.level), fmt(r.T),
        fmt(r.h), fmt(r.tau), std::to_string(r.px), std::to_string(r.pt), std::to_string(r.N),
        std::to_string(r.dofs), fmt(r.err.max_W1inf_L2), fmt(r.err.max_Linf_H1), fmt(r.err.L2_H1),
        fmt(r.err.H1deriv_L2L2), fmt(r.err.Linf_L2), fmt(r.err.jump_err), fmt(r.eta),
        fmt(r.eta_localized), fmt(r.eta1), fmt(r.eta2), fmt(r.osc), fmt(r.kappa),
        fmt(r.stability_lhs), fmt(r.stability_rhs), std::to_string(r.stable), fmt(r.rate_W1inf_L2),
        fmt(r.rate_Linf_H1), fmt(r.rate_L2_H1), fmt(r.rate_H1deriv_L2L2), fmt(r.rate_Linf_L2),
        fmt(r.rate_jump), fmt(r.rate_eta), clean(r.status), fmt(r.wall_time)};
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
    out << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

ExperimentResult read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path + "' has no header");
  const auto header = split(line, ',');
  if (header != csv_columns()) throw std::runtime_error("'" + path + "' has unexpected columns");
  ExperimentResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != header.size()) throw std::runtime_error("'" + path + "' has a malformed row");
    ResultRow r;
    std::size_t i = 0;
    r.suite = f[i++];
    r.run = f[i++];
    r.group = std::stoi(f[i++]);
    r.level = std::stoi(f[i++]);
    r.T = parse_num(f[i++]);
    r.h = parse_num(f[i++]);
    r.tau = parse_num(f[i++]);
    r.px = std::stoi(f[i++]);
    r.pt = std::stoi(f[i++]);
    r.N = std::stoi(f[i++]);
    r.dofs = std::stoll(f[i++]);
    for (double* d : {&r.err.max_W1inf_L2, &r.err.max_Linf_H1, &r.err.L2_H1, &r.err.H1deriv_L2L2,
                      &r.err.Linf_L2, &r.err.jump_err, &r.eta, &r.eta_localized, &r.eta1, &r.eta2,
                      &r.osc, &r.kappa, &r.stability_lhs, &r.stability_rhs}) {
      *d = parse_num(f[i++]);
    }
    r.stable = std::stoi(f[i++]);
    for (double* d : {&r.rate_W1inf_L2, &r.rate_Linf_H1, &r.rate_L2_H1, &r.rate_H1deriv_L2L2,
                      &r.rate_Linf_L2, &r.rate_jump, &r.rate_eta}) {
      *d = parse_num(f[i++]);
    }
    r.status = f[i++];
    r.wall_time = parse_num(f[i++]);
    result.rows.push_back(r);
  }
  return result;
}

}  // namespace c0wave
