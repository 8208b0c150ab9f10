#include "thetakit/json_io.hpp"

#include <fstream>

namespace thetakit {

namespace {

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json real_rows(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json complex_rows(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd read_square(const Json& j, int g, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != g)
    throw JsonFormatError(std::string("period matrix: '") + what + "' must have g rows");
  Eigen::MatrixXd m(g, g);
  for (int r = 0; r < g; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != g)
      throw JsonFormatError(std::string("period matrix: '") + what + "' must have g columns");
    for (int c = 0; c < g; ++c) {
      if (!j[r][c].is_number()) throw JsonFormatError("period matrix: entries must be numbers");
      m(r, c) = j[r][c].get<double>();
    }
  }
  return m;
}

Json chars_json(const std::vector<Characteristic>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back(c.to_string());
  return out;
}

}  // namespace

Json to_json(const PeriodMatrix& tau) {
  return Json{{"g", tau.genus()}, {"re", real_rows(tau.tau().real())}, {"im", real_rows(tau.tau().imag())}};
}

PeriodMatrix period_matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("re") || !j.contains("im"))
    throw JsonFormatError("period matrix: expected {\"g\", \"re\", \"im\"}");
  if (!j["g"].is_number_integer()) throw JsonFormatError("period matrix: 'g' must be an integer");
  const int g = j["g"].get<int>();
  if (g < 1 || g > kMaxGenus) throw JsonFormatError("period matrix: genus out of range");
  const Eigen::MatrixXd re = read_square(j["re"], g, "re");
  const Eigen::MatrixXd im = read_square(j["im"], g, "im");
  CMatrix tau(g, g);
  tau.real() = re;
  tau.imag() = im;
  return PeriodMatrix(tau);
}

Json to_json(const ThetaValue& v) {
  return Json{{"re", v.value.real()}, {"im", v.value.imag()}, {"tail", v.tail_bound}};
}

Json to_json(const IntPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) terms.push_back(Json{{"mono", mono.vars()}, {"c", c}});
  return Json{{"g", p.genus()}, {"terms", std::move(terms)}};
}

IntPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("terms") || !j["terms"].is_array())
    throw JsonFormatError("polynomial: expected {\"g\", \"terms\"}");
  const int g = j["g"].get<int>();
  if (g < 1 || g > kMaxPolyGenus) throw JsonFormatError("polynomial: genus out of range");
  IntPolynomial p(g);
  for (const auto& t : j["terms"]) {
    if (!t.contains("mono") || !t.contains("c")) throw JsonFormatError("polynomial: term needs 'mono' and 'c'");
    auto vars = t["mono"].get<std::vector<BitVec>>();
    for (BitVec v : vars)
      if (v >> g) throw JsonFormatError("polynomial: variable index out of range");
    if (vars.size() > static_cast<std::size_t>(kMaxDegree)) throw JsonFormatError("polynomial: degree too high");
    p.add_term(Monomial(std::move(vars)), t["c"].get<std::int64_t>());
  }
  return p;
}

Json to_json(const BranchPointSet& bp) {
  Json pts = Json::array();
  for (double x : bp.finite_points()) pts.push_back(x);
  if (bp.has_infinity()) pts.push_back("inf");
  return Json{{"points", std::move(pts)}};
}

BranchPointSet branch_points_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
    throw JsonFormatError("branch points: expected {\"points\": [...]}");
  std::vector<double> pts;
  bool inf = false;
  for (const auto& p : j["points"]) {
    if (inf) throw JsonFormatError("branch points: 'inf' must come last");
    if (p.is_string() && p.get<std::string>() == "inf") {
      inf = true;
    } else if (p.is_number()) {
      pts.push_back(p.get<double>());
    } else {
      throw JsonFormatError("branch points: entries must be numbers or \"inf\"");
    }
  }
  if (!inf && pts.size() % 2 == 1) inf = true;
  return BranchPointSet(std::move(pts), inf);
}

Json to_json(const SymplecticMatrix& gamma) {
  Json rows = Json::array();
  const IntMat& m = gamma.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json certificate_json(const std::vector<std::string>& word, const SymplecticMatrix& gamma) {
  return Json{{"word", word}, {"gamma", to_json(gamma)}};
}

Json to_json(const ResidualReport& r) {
  Json j{{"label", r.label},
         {"max_abs_residual", r.max_abs_residual},
         {"scale", r.scale},
         {"relative", r.relative},
         {"samples", r.samples},
         {"seed", r.seed},
         {"tail_allowance", r.tail_allowance}};
  if (!r.extras.empty()) j["extras"] = r.extras;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

Json to_json(const ClassificationReport& r) {
  Json constants = Json::array();
  for (const auto& c : r.constants)
    constants.push_back(
        Json{{"m", c.m.to_string()}, {"re", c.value.real()}, {"im", c.value.imag()}, {"ratio", c.ratio}});
  Json residuals = Json::array();
  for (const auto& res : r.residuals) residuals.push_back(to_json(res));
  return Json{{"genus", r.genus},
              {"threshold_ratio", r.threshold_ratio},
              {"verdict", to_string(r.verdict)},
              {"vanishing", chars_json(r.vanishing)},
              {"expected_count", r.expected_count},
              {"largest_vanishing_ratio", r.largest_vanishing_ratio},
              {"smallest_nonvanishing_ratio", r.smallest_nonvanishing_ratio},
              {"reason", r.reason},
              {"constants", std::move(constants)},
              {"residuals", std::move(residuals)}};
}

Json to_json(const TransportResult& r) {
  Json j{{"success", r.success}, {"message", r.message}, {"states_explored", r.states_explored}};
  if (r.gamma) {
    j["certificate"] = certificate_json(r.word, *r.gamma);
  } else {
    j["best_word"] = r.word;
    j["best_overlap"] = r.best_overlap;
    j["best_image"] = chars_json(r.best_image);
  }
  if (r.tau_prime) j["tau"] = to_json(*r.tau_prime);
  if (r.validation) j["validation"] = chars_json(r.validation->vanishing);
  return j;
}

Json to_json(const GunningReport& r) {
  Json samples = Json::array();
  for (const auto& s : r.samples)
    samples.push_back(Json{{"dependence_ratio", s.dependence_ratio}, {"sign_rule_error", s.sign_rule_error}});
  return Json{{"max_dependence_ratio", r.max_dependence_ratio},
              {"max_sign_rule_error", r.max_sign_rule_error},
              {"gram_product_error", r.gram_product_error},
              {"block_equal_error", r.block_equal_error},
              {"off_block_relative", r.off_block_relative},
              {"gram_rank", r.gram_rank},
              {"gram_singular_values", r.gram_singular_values},
              {"gram", complex_rows(r.gram)},
              {"samples", std::move(samples)}};
}

Json to_json(const PeriodResult& r) {
  return Json{{"tau", to_json(r.tau)},
              {"symmetry_defect", r.symmetry_defect},
              {"refinement_change", r.refinement_change},
              {"nodes", r.nodes},
              {"min_eigenvalue_im", r.tau.min_eigenvalue()},
              {"warnings", r.warnings}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonFormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw JsonFormatError("'" + path + "': " + e.what());
  }
}

}  // namespace thetakit
