#include "posh/serialize.hpp"

#include <cmath>

#include "posh/errors.hpp"

namespace posh {

namespace {

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

MultiIndex multi_index_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) {
    throw ParseError("multi-index must be an array of " + std::to_string(n) + " integers");
  }
  std::vector<int> e;
  for (const auto& x : j) {
    if (!x.is_number_integer() || x.get<long long>() < 0) {
      throw ParseError("multi-index entries must be non-negative integers");
    }
    e.push_back(x.get<int>());
  }
  return MultiIndex(std::move(e));
}

Json multi_index_to_json(const MultiIndex& a) { return Json(a.exponents()); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json complex_to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers are [re, im] pairs");
  return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

Json point_to_json(const Point& z) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) out.push_back(complex_to_json(z[i]));
  return out;
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("points are non-empty arrays of [re, im] pairs");
  Point z(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) z[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  return z;
}

Json to_json(const HermitianPoly& r) {
  Json terms = Json::array();
  for (const auto& [key, c] : r.terms()) {
    terms.push_back({{"a", multi_index_to_json(key.first)},
                     {"b", multi_index_to_json(key.second)},
                     {"c", complex_to_json(c)}});
  }
  return {{"n", r.dim()}, {"terms", std::move(terms)}};
}

HermitianPoly polynomial_from_json(const Json& j) {
  const Json& nj = field(j, "n");
  if (!nj.is_number_integer() || nj.get<long long>() < 1) throw ParseError("'n' must be a positive integer");
  const auto n = nj.get<std::size_t>();
  const Json& tj = field(j, "terms");
  if (!tj.is_array()) throw ParseError("'terms' must be an array");
  std::vector<Term> terms;
  for (const auto& t : tj) {
    terms.push_back({multi_index_from_json(field(t, "a"), n), multi_index_from_json(field(t, "b"), n),
                     complex_from_json(field(t, "c"))});
  }
  return HermitianPoly::from_terms(n, terms);
}

HermitianPoly parse_polynomial(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return polynomial_from_json(j);
}

Json to_json(const GramReport& report) {
  Json matrix = Json::array();
  for (Eigen::Index i = 0; i < report.matrix.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < report.matrix.cols(); ++k) row.push_back(complex_to_json(report.matrix(i, k)));
    matrix.push_back(std::move(row));
  }
  Json out{{"matrix", std::move(matrix)},
           {"eigenvalues", std::vector<double>(report.eigenvalues.begin(), report.eigenvalues.end())},
           {"min_eig", report.min_eigenvalue},
           {"determinant", report.determinant},
           {"psd", report.psd}};
  if (report.quadratic_form) out["quadratic_form"] = *report.quadratic_form;
  return out;
}

Json to_json(const Witness& w) {
  Json points = Json::array();
  for (const auto& z : w.cfg.points()) points.push_back(point_to_json(z));
  return {{"k", w.cfg.size()}, {"points", std::move(points)}, {"min_eig", w.min_eigenvalue},
          {"kind", to_string(w.kind)}};
}

Witness witness_from_json(const Json& j) {
  const Json& pj = field(j, "points");
  if (!pj.is_array() || pj.empty()) throw ParseError("'points' must be a non-empty array");
  std::vector<Point> pts;
  for (const auto& p : pj) pts.push_back(point_from_json(p));
  Witness w;
  try {
    w.cfg = PointConfig(std::move(pts));
  } catch (const DimensionMismatch& e) {
    throw ParseError(e.what());
  }
  if (j.contains("k") && (!j["k"].is_number_integer() || j["k"].get<std::size_t>() != w.cfg.size())) {
    throw ParseError("'k' does not match the number of points");
  }
  if (j.contains("min_eig")) w.min_eigenvalue = finite_number(j["min_eig"], "min_eig");
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw ParseError("'kind' must be a string");
    w.kind = witness_kind_from_string(j["kind"].get<std::string>());
  }
  return w;
}

Json to_json(const MembershipVerdict& v) {
  Json out{{"k", v.k}};
  if (v.violated()) {
    out["verdict"] = "Violated";
    out["witness"] = to_json(v.witness());
  } else {
    const auto& nv = std::get<NoViolationFound>(v.outcome);
    out["verdict"] = "NoViolationFound";
    out["restarts"] = nv.restarts;
    out["best_min_eig"] = nv.best_min_eigenvalue;
    out["seed"] = nv.seed;
  }
  out["budget"] = {{"restarts", v.budget.restarts}, {"steps", v.budget.steps},
                   {"radius", v.budget.radius}, {"tol", v.budget.tol}};
  return out;
}

Json to_json(const PshVerdict& v) {
  Json out{{"mode", to_string(v.mode)}};
  if (v.violated()) {
    out["verdict"] = "Violated";
    out["point"] = point_to_json(v.violation().point);
    out["min_eig"] = v.violation().min_eigenvalue;
  } else {
    const auto& nv = std::get<NoViolationFound>(v.outcome);
    out["verdict"] = "NoViolationFound";
    out["restarts"] = nv.restarts;
    out["best_min_eig"] = nv.best_min_eigenvalue;
    out["seed"] = nv.seed;
  }
  return out;
}

Json to_json(const ThresholdResult& t) {
  return {{"k", t.k},
          {"bracket", {t.lower, t.upper}},
          {"bisection_tol", t.bisection_tol},
          {"probes", t.probes},
          {"witness", to_json(t.witness_at_upper)}};
}

Json family_table_json(const std::string& family, std::optional<int> m, const StabilityTable& table) {
  Json out{{"family", family}};
  if (m) out["m"] = *m;
  Json thresholds = Json::object();
  for (const auto& [k, t] : table.thresholds) thresholds[std::to_string(k)] = {t.lower, t.upper};
  out["thresholds"] = std::move(thresholds);
  out["pinf"] = table.pinf;
  out["index"] = table.index;
  return out;
}

}  // namespace posh
