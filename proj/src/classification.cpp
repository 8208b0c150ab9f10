#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "thetakit/jacobian_tools.hpp"

namespace thetakit {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent_hyperelliptic:
      return "consistent-hyperelliptic";
    case Verdict::inconsistent:
      return "inconsistent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

ClassificationReport vanishing_pattern(const PeriodMatrix& tau, double threshold_ratio,
                                       const TruncationPolicy& policy) {
  if (!(threshold_ratio > 0.0 && threshold_ratio < 1.0))
    throw std::invalid_argument("vanishing_pattern: threshold ratio must lie in (0, 1)");
  const int g = tau.genus();
  ClassificationReport r;
  r.genus = g;
  r.threshold_ratio = threshold_ratio;
  r.expected_count = expected_vanishing_count(g);
  for (const auto& m : even_characteristics(g)) {
    ThetaValue v = theta_const(m, tau, policy);
    r.constants.push_back({m, v.value, v.tail_bound, 0.0});
    r.max_abs = std::max(r.max_abs, std::abs(v.value));
  }
  r.smallest_nonvanishing_ratio = 1.0;
  bool ambiguous = false;
  for (auto& c : r.constants) {
    c.ratio = std::abs(c.value) / r.max_abs;
    if (c.ratio < threshold_ratio) {
      r.vanishing.push_back(c.m);
      r.largest_vanishing_ratio = std::max(r.largest_vanishing_ratio, c.ratio);
    } else {
      r.smallest_nonvanishing_ratio = std::min(r.smallest_nonvanishing_ratio, c.ratio);
    }
    if (c.ratio > threshold_ratio / 10.0 && c.ratio < threshold_ratio * 10.0) ambiguous = true;
  }
  std::sort(r.vanishing.begin(), r.vanishing.end());

  if (ambiguous) {
    r.verdict = Verdict::inconclusive;
    r.reason = "a theta constant lies within a factor 10 of the threshold";
  } else if (static_cast<int>(r.vanishing.size()) == r.expected_count) {
    r.verdict = Verdict::consistent_hyperelliptic;
    r.reason = "vanishing count matches the hyperelliptic prediction";
  } else {
    r.verdict = Verdict::inconsistent;
    r.reason = "found " + std::to_string(r.vanishing.size()) + " vanishing constants, expected " +
               std::to_string(r.expected_count);
  }
  return r;
}

namespace {

using State = std::vector<std::uint16_t>;  // sorted characteristic indices

struct StateHash {
  std::size_t operator()(const State& s) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto v : s) h = (h ^ v) * 1099511628211ULL;
    return h;
  }
};

State to_state(const std::vector<Characteristic>& set) {
  State s;
  for (const auto& m : set) s.push_back(static_cast<std::uint16_t>(m.index()));
  std::sort(s.begin(), s.end());
  return s;
}

int overlap(const State& a, const State& b) {
  int n = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++n;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

}  // namespace

TransportResult transport_to_standard(const PeriodMatrix& tau, const ClassificationReport& report,
                                      const TransportOptions& options) {
  if (report.verdict != Verdict::consistent_hyperelliptic)
    throw std::invalid_argument("transport_to_standard: classification is not consistent-hyperelliptic");
  const int g = tau.genus();
  if (report.genus != g) throw std::invalid_argument("transport_to_standard: genus mismatch");

  const auto gens = standard_generators(g);
  const std::uint32_t n_chars = 1u << (2 * g);
  std::vector<std::vector<std::uint16_t>> perm(gens.size(), std::vector<std::uint16_t>(n_chars));
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::uint32_t i = 0; i < n_chars; ++i)
      perm[k][i] = static_cast<std::uint16_t>(char_act(gens[k].gamma, Characteristic::from_index(g, i)).index());

  const State start = to_state(report.vanishing);
  const State target = to_state(predicted_vanishing_set(g));

  struct Node {
    std::size_t parent;
    int generator;
    int depth;
  };
  std::vector<Node> nodes{{0, -1, 0}};
  std::vector<State> states{start};
  std::unordered_map<State, std::size_t, StateHash> seen{{start, 0}};
  std::deque<std::size_t> queue{0};

  TransportResult result;
  result.best_overlap = overlap(start, target);
  std::size_t best_node = 0;
  std::optional<std::size_t> found;
  if (start == target) found = 0;

  while (!found && !queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    if (nodes[cur].depth >= options.max_word_length) continue;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      State next;
      next.reserve(states[cur].size());
      for (auto v : states[cur]) next.push_back(perm[k][v]);
      std::sort(next.begin(), next.end());
      if (seen.count(next)) continue;
      const std::size_t id = nodes.size();
      nodes.push_back({cur, static_cast<int>(k), nodes[cur].depth + 1});
      states.push_back(next);
      seen.emplace(next, id);
      const int ov = overlap(next, target);
      if (ov > result.best_overlap) {
        result.best_overlap = ov;
        best_node = id;
      }
      if (next == target) {
        found = id;
        break;
      }
      queue.push_back(id);
    }
    if (seen.size() > options.max_states) break;
  }
  result.states_explored = seen.size();

  auto word_of = [&](std::size_t node) {
    std::vector<std::string> word;
    for (std::size_t n = node; nodes[n].generator >= 0; n = nodes[n].parent) word.push_back(gens[nodes[n].generator].name);
    std::reverse(word.begin(), word.end());
    return word;
  };

  if (!found) {
    result.word = word_of(best_node);
    for (auto v : states[best_node]) result.best_image.push_back(Characteristic::from_index(g, v));
    result.message = "search exhausted (word length cap " + std::to_string(options.max_word_length) + ", " +
                     std::to_string(result.states_explored) + " states); best overlap " +
                     std::to_string(result.best_overlap) + "/" + std::to_string(target.size());
    return result;
  }

  result.word = word_of(*found);
  result.gamma = word_product(g, result.word);
  result.tau_prime = sp_act(*result.gamma, tau);
  result.validation = vanishing_pattern(*result.tau_prime, report.threshold_ratio);
  const bool valid = result.validation->verdict == Verdict::consistent_hyperelliptic &&
                     result.validation->vanishing == predicted_vanishing_set(g);
  result.success = valid;
  result.message = valid ? "transported in " + std::to_string(result.word.size()) + " steps"
                         : "word found but re-evaluation at gamma tau does not show the standard pattern";
  return result;
}

}  // namespace thetakit
