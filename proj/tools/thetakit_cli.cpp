// Command-line front end. Every report is JSON on stdout (or --out);
// exit 0 when all checks pass, 1 on a failed check, 2 on bad input.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "thetakit/acceptance.hpp"
#include "thetakit/heisenberg.hpp"
#include "thetakit/identities.hpp"
#include "thetakit/jacobian_tools.hpp"
#include "thetakit/json_io.hpp"

using namespace thetakit;

namespace {

struct Globals {
  std::uint64_t seed = 7;
  std::optional<double> tol;
  std::string tau_file;
  std::string out_file;
  bool pretty = false;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void print_pretty(std::ostream& os, const Json& j, const std::string& indent) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured() && !(value.is_array() && !value.empty() && value.front().is_primitive())) {
        os << indent << key << ":\n";
        print_pretty(os, value, indent + "  ");
      } else {
        os << indent << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_structured()) {
        os << indent << "-\n";
        print_pretty(os, value, indent + "  ");
      } else {
        os << indent << "- " << value.dump() << "\n";
      }
    }
  } else {
    os << indent << j.dump() << "\n";
  }
}

void emit(const Globals& g, const Json& report) {
  std::ostringstream text;
  if (g.pretty) {
    print_pretty(text, report, "");
  } else {
    text << report.dump(2) << "\n";
  }
  if (g.out_file.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(g.out_file);
    if (!out) throw UsageError("cannot write '" + g.out_file + "'");
    out << text.str();
  }
}

PeriodMatrix load_tau(const Globals& g) {
  if (g.tau_file.empty()) throw UsageError("--tau FILE is required");
  const Json j = read_json_file(g.tau_file);
  // the output of `periods` (and of `transport`) nests the matrix
  if (j.is_object() && !j.contains("g") && j.contains("tau")) return period_matrix_from_json(j["tau"]);
  return period_matrix_from_json(j);
}

// Period matrix from --tau, or a random one of the requested genus.
PeriodMatrix tau_or_random(const Globals& g, int genus, Rng& rng) {
  if (!g.tau_file.empty()) return load_tau(g);
  if (genus < 1) throw UsageError("give --tau FILE or --genus G");
  return random_tau(genus, rng);
}

// "re,im;re,im;..." one coordinate per ';'. An empty string means z = 0.
CVector parse_z(const std::string& text, int genus) {
  CVector z = CVector::Zero(genus);
  if (text.empty()) return z;
  std::stringstream in(text);
  std::string item;
  int k = 0;
  while (std::getline(in, item, ';')) {
    if (k >= genus) throw UsageError("--z has more than g coordinates");
    double re = 0.0, im = 0.0;
    char comma = 0;
    std::stringstream coord(item);
    coord >> re;
    if (coord >> comma) {
      if (comma != ',' || !(coord >> im)) throw UsageError("--z coordinate '" + item + "' is not 're,im'");
    }
    if (coord.fail() && !coord.eof()) throw UsageError("--z coordinate '" + item + "' is not numeric");
    z[k++] = Complex(re, im);
  }
  if (k != genus) throw UsageError("--z needs exactly g coordinates");
  return z;
}

std::vector<long> parse_long_bits(const std::string& text, int genus) {
  const BitVec v = parse_bits(text, genus);
  std::vector<long> out(genus);
  for (int k = 0; k < genus; ++k) out[k] = (v >> k) & 1u;
  return out;
}

double tolerance(const Globals& g, double fallback) { return g.tol.value_or(fallback); }

// ---------------------------------------------------------------- theta

int cmd_theta(const Globals& g, int genus, const std::string& chr, const std::string& sigma, const std::string& ztext,
              bool all_second_order) {
  Rng rng(g.seed);
  const PeriodMatrix tau = tau_or_random(g, genus, rng);
  const CVector z = parse_z(ztext, tau.genus());
  Json report{{"tau", to_json(tau)}};
  if (all_second_order) {
    Json values = Json::array();
    for (const auto& v : th2_map(tau, z)) values.push_back(to_json(v));
    report["th2"] = values;
  } else if (!sigma.empty()) {
    report["sigma"] = sigma;
    report["value"] = to_json(theta2(parse_bits(sigma, tau.genus()), tau, z));
  } else {
    const Characteristic m = chr.empty() ? Characteristic::zero(tau.genus()) : Characteristic::parse(chr);
    if (m.genus() != tau.genus()) throw UsageError("characteristic genus does not match tau");
    report["char"] = m.to_string();
    report["value"] = to_json(theta1(m, tau, z));
  }
  emit(g, report);
  return 0;
}

// ----------------------------------------------------------- identities

int cmd_identities(const Globals& g, const std::string& which, int genus, int samples, const std::string& xs,
                   const std::string& ys) {
  Rng rng(g.seed);
  const double tol = tolerance(g, 1e-9);
  auto total = make_report(which, g.seed);
  Json extra;
  for (int s = 0; s < samples; ++s) {
    const PeriodMatrix tau = tau_or_random(g, genus, rng);
    const int gg = tau.genus();
    const BitVec n = BitVec{1} << gg;
    const CVector z = random_z(gg, rng);
    if (which == "addition") {
      const CVector w = random_z(gg, rng);
      total.merge(addition_formula_residual(tau, z, w, rng.below(n), rng.below(n), rng.below(n)));
    } else if (which == "riemann") {
      if (gg > kMaxRelationGenus) throw UsageError("riemann: genus must be <= 3");
      const auto space = relation_space(gg, 0, 0);
      std::vector<long> x(gg), y(gg);
      for (int k = 0; k < gg; ++k) {
        x[k] = rng.below(3) - 1;
        y[k] = rng.below(3) - 1;
      }
      for (const auto& v : space.kernel) total.merge(riemann_residual(tau, z, v, x, y));
    } else if (which == "frobenius") {
      const auto f = standard_fundamental_system(gg);
      total.merge(frobenius_residual(tau, f, z, random_z(gg, rng), random_z(gg, rng)));
    } else if (which == "grushevsky") {
      const auto th2 = th2_map(tau, z);
      for (BitVec sigma = 0; sigma < n; ++sigma) total.merge(grushevsky_residual_th2(gg, sigma, th2));
    } else if (which == "rf") {
      total.merge(rf_residual(tau, z));
    } else if (which == "rf2a") {
      const auto th2 = th2_map(tau, z);
      for (const auto& p : admissible_pairs(gg)) {
        auto r = rf2a_residual_th2(gg, th2, p.eps(), p.delta());
        r.notes.clear();
        total.merge(r);
      }
    } else if (which == "rf2") {
      total.merge(rf2_residual(tau, z, parse_long_bits(xs, gg), parse_long_bits(ys, gg)));
    } else if (which == "genus4") {
      if (gg != 4) throw UsageError("genus4: tau must have genus 4");
      const auto sys = genus4_system(tau);
      extra = Json{{"rank", sys.rank}, {"singular_values", sys.singular_values},
                   {"determinant_residual", sys.determinant_residual}};
      emit(g, Json{{"which", which}, {"genus4_system", extra}, {"passed", sys.rank == 5}});
      return sys.rank == 5 ? 0 : 1;
    }
    if (!g.tau_file.empty()) genus = tau.genus();
  }
  const bool passed = total.passes(tol);
  emit(g, Json{{"which", which}, {"tolerance", tol}, {"report", to_json(total)}, {"passed", passed}});
  return passed ? 0 : 1;
}

// ------------------------------------------------------------- symbolic

int cmd_ranks(const Globals& g, int genus, const std::string& set) {
  std::vector<Characteristic> pairs;
  if (set == "hyperelliptic") {
    pairs = predicted_vanishing_set(genus);
  } else if (set == "varley-debarre") {
    pairs = varley_debarre_sets(genus, VarleyDebarreVariant::weight_two_three);
  } else if (set == "varley-debarre-n") {
    pairs = varley_debarre_sets(genus, VarleyDebarreVariant::explicit_n);
  } else {
    throw UsageError("unknown --set '" + set + "'");
  }
  const auto polys = cubics_from_quadrics(pairs);
  const auto rank = span_rank(polys);
  emit(g, Json{{"genus", genus}, {"set", set}, {"characteristics", pairs.size()}, {"generators", polys.size()},
               {"rank", rank}, {"cubic_space_dimension", cubic_space_dimension(genus)}});
  return 0;
}

int cmd_relation_dim(const Globals& g, int genus, const std::string& sigma, const std::string& rho) {
  const auto space = relation_space(genus, parse_bits(sigma, genus), parse_bits(rho, genus));
  Json kernel = Json::array();
  bool all_zero = true;
  for (const auto& v : space.kernel) {
    Json coeffs = Json::array();
    for (const auto& t : v.terms) coeffs.push_back(Json{{"pair", t.pair.to_string()}, {"c", t.coeff.get_str()}});
    kernel.push_back(coeffs);
    all_zero = all_zero && relation_quartic(v).is_zero();
  }
  emit(g, Json{{"genus", genus}, {"sigma", sigma}, {"rho", rho}, {"support", space.support.size()},
               {"dimension", space.dimension()}, {"kernel_expands_to_zero", all_zero}, {"kernel", kernel}});
  return all_zero ? 0 : 1;
}

int cmd_frobenius_witness(const Globals& g, int genus) {
  const auto w = frobenius_vector_in_kernel(genus);
  Json coeffs = Json::array();
  for (const auto& t : w.vector.terms) coeffs.push_back(Json{{"pair", t.pair.to_string()}, {"c", t.coeff.get_str()}});
  const bool ok = w.found && w.expansion.is_zero();
  emit(g, Json{{"genus", genus}, {"found", w.found}, {"vector", coeffs}, {"expansion", to_json(w.expansion)}});
  return ok ? 0 : 1;
}

int cmd_counts(const Globals& g, int genus) {
  const int n = 1 << genus;
  Json others = Json::object();
  for (BitVec ystar = 0; ystar < static_cast<BitVec>(n); ++ystar)
    for (BitVec y = 0; y < static_cast<BitVec>(n); ++y) {
      if (ystar == 0 && y == 0) continue;
      const std::string key = format_bits(ystar, genus) + "|" + format_bits(y, genus);
      others[key] = quartic_eigenspace_dim(genus, HCharacter{ystar, y});
    }
  emit(g, Json{{"genus", genus},
               {"q_basis", admissible_pairs(genus).size()},
               {"quartic_trivial", quartic_eigenspace_dim(genus, HCharacter{0, 0})},
               {"quartic_by_character", others},
               {"cubic_space_dimension", cubic_space_dimension(genus)}});
  return 0;
}

// ------------------------------------------------------- jacobian tools

int cmd_periods(const Globals& g, const std::string& points, const std::string& file, int nodes) {
  if (points.empty() == file.empty()) throw UsageError("give exactly one of --branch-points or --file");
  const BranchPointSet bp = file.empty() ? BranchPointSet::parse(points) : branch_points_from_json(read_json_file(file));
  const auto result = hyperelliptic_periods(bp, nodes);
  const auto pattern = vanishing_pattern(result.tau, 1e-5);
  Json report = to_json(result);
  report["branch_points"] = to_json(bp);
  report["vanishing"] = to_json(pattern)["vanishing"];
  report["expected_count"] = pattern.expected_count;
  emit(g, report);
  return 0;
}

int cmd_classify(const Globals& g, double threshold) {
  const auto tau = load_tau(g);
  const auto report = vanishing_pattern(tau, threshold);
  emit(g, to_json(report));
  return report.verdict == Verdict::consistent_hyperelliptic ? 0 : 1;
}

int cmd_transport(const Globals& g, double threshold, int max_length) {
  const auto tau = load_tau(g);
  const auto report = vanishing_pattern(tau, threshold);
  if (report.verdict != Verdict::consistent_hyperelliptic) {
    emit(g, Json{{"classification", to_json(report)}, {"success", false}});
    return 1;
  }
  TransportOptions options;
  options.max_word_length = max_length;
  const auto result = transport_to_standard(tau, report, options);
  emit(g, to_json(result));
  return result.success ? 0 : 1;
}

int cmd_gunning(const Globals& g, int genus, int samples) {
  Rng rng(g.seed);
  const auto tau = tau_or_random(g, genus, rng);
  std::vector<CVector> zs;
  for (int s = 0; s < samples; ++s) zs.push_back(random_z(tau.genus(), rng));
  const auto report = gunning_check(tau, zs);
  const double dep_tol = tolerance(g, 1e-6);
  const auto irreducible = irreducibility_witness(tau);
  Json j = to_json(report);
  j["irreducibility"] = Json{{"status", to_string(irreducible.status)}, {"word", irreducible.word},
                             {"words_examined", irreducible.words_examined}};
  const bool ok = report.passes(tau.genus(), dep_tol) && report.max_sign_rule_error < 1e-10;
  j["passed"] = ok;
  emit(g, j);
  return ok ? 0 : 1;
}

int cmd_acceptance(const Globals& g, const std::string& only) {
  AcceptanceOptions options;
  options.seed = g.seed;
  if (!only.empty()) {
    std::stringstream in(only);
    std::string item;
    while (std::getline(in, item, ',')) {
      const int id = std::stoi(item);
      if (id < 1 || id > kCriterionCount) throw UsageError("--only ids must be in 1..13");
      options.only.insert(id);
    }
  }
  const auto results = run_acceptance(options);
  const Json report = acceptance_json(results, g.seed);
  emit(g, report);
  return report["all_passed"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta functions with characteristics, hyperelliptic period matrices and the identities among them."};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for the mt19937_64 stream")->capture_default_str();
  app.add_option("--tol", g.tol, "override the pass tolerance of the command");
  app.add_option("--tau", g.tau_file, "period matrix JSON {\"g\", \"re\", \"im\"}, or an object holding it under \"tau\"");
  app.add_option("--out", g.out_file, "write the report here instead of stdout");
  app.add_flag("--pretty", g.pretty, "indented key: value text instead of JSON");

  std::function<int()> action;

  int genus = 0;
  std::string chr, sigma, ztext;
  bool th2 = false;
  auto* theta = app.add_subcommand(
      "theta", "Evaluate theta[eps;delta](tau, z) = sum_n exp(pi i (n+eps/2)^t tau (n+eps/2) + 2 pi i (n+eps/2)^t (z+delta/2)),\n"
               "or the second order Theta[sigma](tau, z) = theta[sigma;0](2 tau, 2 z), with a rigorous tail bound.");
  theta->add_option("--genus", genus, "genus of a random tau when --tau is absent");
  theta->add_option("--char", chr, "characteristic 'e1..eg|d1..dg'");
  theta->add_option("--sigma", sigma, "second order index 'b1..bg'");
  theta->add_flag("--th2", th2, "all 2^g second order values");
  theta->add_option("--z", ztext, "'re,im;re,im;...' (default 0)");
  theta->callback([&] { action = [&] { return cmd_theta(g, genus, chr, sigma, ztext, th2); }; });

  std::string which, xs, ys;
  int samples = 10;
  auto* identities = app.add_subcommand("identities", "Numerical residuals of theta identities.");
  auto* check = identities->add_subcommand(
      "check",
      "addition: theta[e;d](2tau,2z) theta[e+e';d](2tau,2w) as a sum over sigma of products at z+w and z-w.\n"
      "riemann: the biquadratic relations from the kernel of v -> sum v Q Q, at shifted characteristics.\n"
      "frobenius: sum_j eps_U(j) prod_i theta[m_j](z_i) = 0 over a fundamental system (hyperelliptic tau).\n"
      "grushevsky: the cubics R_sigma in second order thetas (hyperelliptic tau in standard form).\n"
      "rf, rf2a, rf2: their quartic consequences; genus4: rank of the six-equation system.");
  identities->require_subcommand(1);
  check->add_option("--which", which, "identity to check")
      ->required()
      ->check(CLI::IsMember({"addition", "riemann", "frobenius", "grushevsky", "rf", "rf2", "rf2a", "genus4"}));
  check->add_option("--genus", genus, "genus of random tau when --tau is absent");
  check->add_option("--samples", samples, "number of random samples")->capture_default_str();
  check->add_option("--x", xs, "rf2: bits of x");
  check->add_option("--y", ys, "rf2: bits of y");
  check->callback([&] { action = [&] { return cmd_identities(g, which, genus, samples, xs, ys); }; });

  auto* symbolic = app.add_subcommand("symbolic", "Exact computations with polynomials in the X_sigma.");
  symbolic->require_subcommand(1);
  std::string set = "hyperelliptic", rho;
  auto* ranks = symbolic->add_subcommand(
      "ranks", "Exact rank of the cubics X_rho Q[eps,delta] over a characteristic set: the hyperelliptic\n"
               "vanishing set of the standard fundamental system, or the weight 2/3 (varley-debarre) set.");
  ranks->add_option("--genus", genus)->required();
  ranks->add_option("--set", set)->check(CLI::IsMember({"hyperelliptic", "varley-debarre", "varley-debarre-n"}));
  ranks->callback([&] { action = [&] { return cmd_ranks(g, genus, set); }; });
  auto* reldim = symbolic->add_subcommand(
      "relation-dim", "Kernel of v -> sum (-1)^<sigma,delta> v Q[eps,delta] Q[eps+sigma,delta+rho]; (2^2g - 1)/3 at (0,0).");
  reldim->add_option("--genus", genus)->required();
  reldim->add_option("--sigma", sigma, "bits of sigma (default 0)");
  reldim->add_option("--rho", rho, "bits of rho (default 0)");
  reldim->callback([&] {
    action = [&] {
      const std::string zero(genus > 0 ? genus : 1, '0');
      return cmd_relation_dim(g, genus, sigma.empty() ? zero : sigma, rho.empty() ? zero : rho);
    };
  });
  auto* witness = symbolic->add_subcommand(
      "frobenius-witness", "Relation vector with v_00 = 1, v_{s_k,e_{k+1}} = -1 whose quartic expands to zero.");
  witness->add_option("--genus", genus)->required();
  witness->callback([&] { action = [&] { return cmd_frobenius_witness(g, genus); }; });
  auto* counts = symbolic->add_subcommand(
      "counts", "Size of the Q[eps,eps'] basis, 2^(g-1)(2^g+1), and dimensions of the character eigenspaces of S^4.");
  counts->add_option("--genus", genus)->required();
  counts->callback([&] { action = [&] { return cmd_counts(g, genus); }; });

  std::string points, file;
  int nodes = 256;
  auto* periods = app.add_subcommand(
      "periods", "Normalized period matrix A^-1 B of y^2 = prod (x - lambda_i) for real branch points;\n"
                 "a-cycles around [l_{2i-1}, l_{2i}], b-cycles through the following gaps.");
  periods->add_option("--branch-points", points, "comma list, 'inf' allowed last");
  periods->add_option("--file", file, "JSON {\"points\": [...]}");
  periods->add_option("--nodes", nodes, "Gauss-Chebyshev nodes per segment")->capture_default_str();
  periods->callback([&] { action = [&] { return cmd_periods(g, points, file, nodes); }; });

  double threshold = 1e-5;
  auto* classify = app.add_subcommand(
      "classify", "Even theta constants below threshold * max; consistent when the count equals\n"
                  "2^(g-1)(2^g+1) - binom(2g+2, g+1)/2, the number vanishing on the hyperelliptic locus.");
  classify->add_option("--threshold", threshold)->capture_default_str();
  classify->callback([&] { action = [&] { return cmd_classify(g, threshold); }; });

  int max_length = 12;
  auto* transport = app.add_subcommand(
      "transport", "Breadth-first search over J, T_ij, U_ij acting on characteristics until the vanishing set is\n"
                   "the standard one; returns the word, gamma and gamma.tau.");
  transport->add_option("--threshold", threshold)->capture_default_str();
  transport->add_option("--max-length", max_length)->capture_default_str();
  transport->callback([&] { action = [&] { return cmd_transport(g, threshold, max_length); }; });

  auto* gunning = app.add_subcommand(
      "gunning", "Linear dependence of Th2(A_i + z), A_0 = 0, A_k = (tau s_{k-1} + e_k)/2, and the rank g+1 of\n"
                 "the Gram matrix at y = e_1/4. Needs tau with the standard vanishing pattern.");
  gunning->add_option("--genus", genus, "genus of a random tau when --tau is absent");
  gunning->add_option("--samples", samples)->capture_default_str();
  gunning->callback([&] { action = [&] { return cmd_gunning(g, genus, samples); }; });

  std::string only;
  bool all = false;
  auto* acceptance = app.add_subcommand("acceptance", "The thirteen end-to-end checks, one JSON entry each.");
  acceptance->add_flag("--all", all, "run every criterion (default)");
  acceptance->add_option("--only", only, "comma list of criterion ids");
  acceptance->callback([&] { action = [&] { return cmd_acceptance(g, only); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!action) {
    std::cerr << "no command given\n";
    return 2;
  }
  try {
    return action();
  } catch (const QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
