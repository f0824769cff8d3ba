#include "berezin/report_json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "berezin/operand_file.hpp"

namespace berezin {

double round15(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

namespace {

Json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

Json complex_json(Complex z) { return Json::array({real(z.real()), real(z.imag())}); }

Json grid_json(const DiskGrid& g) {
  return {{"radial", g.radial}, {"angular", g.angular}, {"r_min", real(g.r_min)}, {"r_max", real(g.r_max)}};
}

Json vector_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v[i]));
  return out;
}

}  // namespace

Json to_json(const VerifyParams& p) {
  Json j;
  j["theta"] = p.theta ? real(*p.theta) : Json(nullptr);
  j["alpha"] = p.alpha ? real(*p.alpha) : Json(nullptr);
  j["t_grid"] = p.t_grid;
  j["n"] = p.n;
  j["grid"] = grid_json(p.grid);
  j["frame_grid"] = grid_json(p.frame_grid);
  j["truncation"] = p.truncation;
  j["refine_iters"] = p.refine_iters;
  j["slack"] = real(p.slack);
  return j;
}

Json to_json(const InequalityReport& r) {
  Json j;
  j["theorem"] = theorem_name(r.theorem);
  j["lhs"] = real(r.lhs);
  j["rhs"] = real(r.rhs);
  j["direction"] = r.direction == Direction::LessEqual ? "<=" : ">=";
  j["satisfied"] = r.satisfied;
  j["margin"] = real(r.margin);
  j["vacuous"] = r.vacuous;
  Json hyps = Json::array();
  for (const auto& h : r.hypotheses) hyps.push_back({{"name", h.name}, {"pass", h.pass}, {"evidence", h.evidence}});
  j["hypotheses"] = hyps;
  j["params"] = to_json(r.params);
  j["theta_used"] = real(r.theta_used);
  if (r.alpha_used) j["alpha_used"] = real(*r.alpha_used);
  if (r.t_used) j["t_used"] = real(*r.t_used);
  Json details = Json::object();
  for (const auto& [k, v] : r.details) details[k] = real(v);
  j["details"] = details;
  j["seed"] = r.seed;
  return j;
}

Json to_json(const FalsifyReport& r) {
  Json j;
  j["theorem"] = theorem_name(r.theorem);
  j["family"] = family_name(r.options.family);
  j["dim"] = r.options.dim;
  j["seed"] = r.options.seed;
  j["trials"] = r.trials;
  j["vacuous"] = r.vacuous;
  j["violations"] = r.violations;
  j["satisfied"] = r.violations == 0;
  j["min_margin"] = r.argmin_trial >= 0 ? real(r.min_margin) : Json(nullptr);
  j["argmin_trial"] = r.argmin_trial;
  if (!r.argmin_vectors.empty()) {
    j["argmin_x"] = vector_json(r.argmin_vectors[0]);
    j["argmin_y"] = vector_json(r.argmin_vectors[1]);
    if (r.argmin_t) j["argmin_t"] = *r.argmin_t;
  } else if (r.argmin_trial >= 0) {
    j["argmin_operands"] = operands_to_json(r.argmin_operands);
  }
  j["violating_trials"] = r.violating_trials;
  j["chain_checks"] = r.chain_checks;
  Json chains = Json::array();
  for (const auto& c : r.chain_failures)
    chains.push_back({{"trial", c.trial}, {"chain", c.chain}, {"better", real(c.better)}, {"weaker", real(c.weaker)}});
  j["chain_failures"] = chains;
  j["params"] = to_json(r.options.params);
  return j;
}

Json to_json(const SectorReport& r) {
  Json j;
  j["success"] = r.success;
  j["index"] = real(r.index);
  j["witness"] = complex_json(r.witness);
  j["witness_index"] = r.witness_index;
  j["violations"] = r.violations.size();
  if (!r.violations.empty()) j["first_violation"] = complex_json(r.violations.front());
  return j;
}

Json to_json(const Classification& c) {
  Json j;
  j["berezin"] = to_json(c.berezin_index);
  j["classical"] = to_json(c.classical_index);
  j["classical_2n"] = to_json(c.classical_index_2n);
  j["truncation"] = c.truncation;
  j["radius_drift"] = real(c.radius_drift);
  j["advisory"] = c.advisory;
  return j;
}

Json to_json(const DphiBounds& b) {
  Json j;
  j["rho"] = real(b.rho);
  j["norm"] = real(b.norm);
  j["r1"] = real(b.r1);
  j["r2"] = real(b.r2);
  j["r3"] = real(b.r3);
  j["aluthge_norm"] = real(b.aluthge_norm);
  j["berezin_radius"] = real(b.berezin_radius);
  j["r3_aluthge"] = real(b.r3_aluthge);
  j["r1_numeric"] = real(b.r1_numeric);
  j["norm_numeric"] = real(b.norm_numeric);
  j["aluthge_norm_numeric"] = real(b.aluthge_norm_numeric);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace berezin
