#include "berezin/operand_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace berezin {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

void allow_keys(const json& obj, const std::string& where, std::set<std::string> allowed) {
  allowed.insert("kind");
  allowed.insert("shift");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) fail(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing key '" + key + "'");
  return *it;
}

double real(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  return v.get<double>();
}

Complex complex_value(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where + ": expected [re, im]");
  return {real(v[0], where), real(v[1], where)};
}

std::vector<Complex> complex_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + ": expected a list of [re, im] pairs");
  std::vector<Complex> out;
  for (const auto& e : v) out.push_back(complex_value(e, where));
  return out;
}

std::vector<double> real_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + ": expected a list of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(real(e, where));
  return out;
}

WeightRule parse_rule(const json& obj, const std::string& where) {
  const json& rule = require(obj, "rule", where);
  if (!rule.is_string()) fail(where + ": 'rule' must be a string");
  const std::string name = rule.get<std::string>();
  if (name == "constant" || name == "c_over_n") {
    allow_keys(obj, where, {"rule", "c"});
    const Complex c = complex_value(require(obj, "c", where), where + ".c");
    return name == "constant" ? WeightRule::constant(c) : WeightRule::c_over_n(c);
  }
  allow_keys(obj, where, {"rule", "values"});
  const json& values = require(obj, "values", where);
  if (name == "real_list") return WeightRule::real_list(real_list(values, where + ".values"));
  if (name == "imaginary_list") return WeightRule::imaginary_list(real_list(values, where + ".values"));
  if (name == "list") return WeightRule::list(complex_list(values, where + ".values"));
  fail(where + ": unknown rule '" + name + "'");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json complex_list_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (Complex z : v) out.push_back(complex_json(z));
  return out;
}

json leaf_json(const OperatorModel& op) {
  return std::visit(
      [&](const auto& n) -> json {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, model::Matrix>) {
          json rows = json::array();
          for (Eigen::Index i = 0; i < n.entries.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < n.entries.cols(); ++j) row.push_back(complex_json(n.entries(i, j)));
            rows.push_back(row);
          }
          return {{"kind", "matrix"}, {"entries", rows}};
        } else if constexpr (std::is_same_v<N, model::CompositionDifferentiation>) {
          return {{"kind", "dphi"}, {"rho", n.rho}};
        } else if constexpr (std::is_same_v<N, model::ToeplitzHarmonic>) {
          const auto& b = n.symbol.coanalytic.coefficients();
          std::vector<Complex> co(b.size() > 1 ? b.begin() + 1 : b.end(), b.end());
          return {{"kind", "toeplitz"},
                  {"alpha", n.alpha},
                  {"analytic", complex_list_json(n.symbol.analytic.coefficients())},
                  {"coanalytic", complex_list_json(co)}};
        } else if constexpr (std::is_same_v<N, model::DirichletShift>) {
          const WeightRule& r = n.rule;
          json out = {{"kind", "dirichlet_shift"}};
          switch (r.kind) {
            case WeightRule::Kind::Constant:
              out["rule"] = "constant";
              out["c"] = complex_json(r.c);
              break;
            case WeightRule::Kind::COverN:
              out["rule"] = "c_over_n";
              out["c"] = complex_json(r.c);
              break;
            case WeightRule::Kind::RealList: {
              out["rule"] = "real_list";
              json v = json::array();
              for (Complex z : r.values) v.push_back(z.real());
              out["values"] = v;
              break;
            }
            case WeightRule::Kind::ImaginaryList: {
              out["rule"] = "imaginary_list";
              json v = json::array();
              for (Complex z : r.values) v.push_back(z.imag());
              out["values"] = v;
              break;
            }
            case WeightRule::Kind::List:
              out["rule"] = "list";
              out["values"] = complex_list_json(r.values);
              break;
          }
          return out;
        } else if constexpr (std::is_same_v<N, model::FiniteRank>) {
          json pairs = json::array();
          for (const auto& p : n.pairs)
            pairs.push_back({{"g", complex_list_json(p.g.coefficients())},
                             {"h", complex_list_json(p.h.coefficients())}});
          return {{"kind", "finite_rank"}, {"pairs", pairs}};
        } else {
          return nullptr;
        }
      },
      op.node());
}

}  // namespace

OperatorModel parse_operand(const nlohmann::ordered_json& spec) {
  const std::string where = "operand";
  if (!spec.is_object()) fail("operand must be a JSON object");
  const json& kind_v = require(spec, "kind", where);
  if (!kind_v.is_string()) fail("'kind' must be a string");
  const std::string kind = kind_v.get<std::string>();
  const std::string at = where + " (" + kind + ")";

  OperatorModel op = OperatorModel::zero(KernelSpace::standard_finite(1));
  if (kind == "matrix") {
    allow_keys(spec, at, {"entries"});
    const json& rows = require(spec, "entries", at);
    if (!rows.is_array() || rows.empty()) fail(at + ": 'entries' must be a non-empty list of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const std::vector<Complex> row = complex_list(rows[i], at + ".entries");
      if (static_cast<Eigen::Index>(row.size()) != n) fail(at + ": 'entries' must be square");
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[j];
    }
    op = OperatorModel::matrix(m);
  } else if (kind == "dphi") {
    allow_keys(spec, at, {"rho"});
    op = OperatorModel::composition_differentiation(real(require(spec, "rho", at), at + ".rho"));
  } else if (kind == "dirichlet_shift") {
    op = OperatorModel::dirichlet_shift(parse_rule(spec, at));
  } else if (kind == "finite_rank") {
    allow_keys(spec, at, {"pairs"});
    const json& pairs = require(spec, "pairs", at);
    if (!pairs.is_array()) fail(at + ": 'pairs' must be a list");
    std::vector<RankOnePair> out;
    for (const json& p : pairs) {
      if (!p.is_object()) fail(at + ": each pair must be an object");
      for (const auto& [key, value] : p.items()) {
        (void)value;
        if (key != "g" && key != "h") fail(at + ": unknown pair key '" + key + "'");
      }
      out.push_back({Polynomial(complex_list(require(p, "g", at), at + ".g")),
                     Polynomial(complex_list(require(p, "h", at), at + ".h"))});
    }
    op = OperatorModel::finite_rank(std::move(out));
  } else if (kind == "toeplitz") {
    allow_keys(spec, at, {"alpha", "analytic", "coanalytic"});
    const double alpha = spec.contains("alpha") ? real(spec["alpha"], at + ".alpha") : 0.0;
    std::vector<Complex> a = complex_list(require(spec, "analytic", at), at + ".analytic");
    std::vector<Complex> b{Complex(0.0, 0.0)};
    if (spec.contains("coanalytic")) {
      const auto co = complex_list(spec["coanalytic"], at + ".coanalytic");
      b.insert(b.end(), co.begin(), co.end());
    }
    op = OperatorModel::toeplitz(HarmonicSymbol{Polynomial(a), Polynomial(b)}, alpha);
  } else {
    fail("unknown operand kind '" + kind + "'");
  }
  if (spec.contains("shift")) op = shift_identity(op, complex_value(spec["shift"], at + ".shift"));
  return op;
}

Operands parse_operands(const nlohmann::ordered_json& doc) {
  if (!doc.is_object() || doc.empty()) fail("operand document must be a non-empty JSON object");
  Operands out;
  for (const auto& [name, spec] : doc.items()) {
    try {
      out.emplace(name, parse_operand(spec));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParseError) throw;
      throw Error(e.code(), "operand '" + name + "': " + e.what());
    }
  }
  return out;
}

Operands parse_operands_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  return parse_operands(doc);
}

Operands load_operands(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read operand file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_operands_text(buf.str());
}

nlohmann::ordered_json operand_to_json(const OperatorModel& op) {
  json leaf = leaf_json(op);
  if (!leaf.is_null()) return leaf;
  if (const auto* lin = std::get_if<model::Linear>(&op.node())) {
    if (lin->terms.size() == 1 && lin->terms[0].first == Complex(1.0, 0.0)) {
      json inner = leaf_json(*lin->terms[0].second);
      if (!inner.is_null()) {
        inner["shift"] = complex_json(lin->shift);
        return inner;
      }
    }
  }
  if (op.space().is_finite())
    return {{"kind", "matrix"}, {"entries", leaf_json(OperatorModel::matrix(truncate(op, 1)))["entries"]}};
  throw Error(ErrorCode::InvalidArgument, "cannot serialize operand " + op.describe());
}

nlohmann::ordered_json operands_to_json(const Operands& ops) {
  json out = json::object();
  for (const auto& [name, op] : ops) out[name] = operand_to_json(op);
  return out;
}

}  // namespace berezin
