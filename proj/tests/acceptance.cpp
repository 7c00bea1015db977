// End-to-end checks. Prints one PASS/FAIL line per check; exits 1 if any fail.

#include "choice_attach/recurrence.hpp"
#include "choice_attach/tree_simulator.hpp"
#include "choice_attach/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace choice_attach;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void check(const char* name, double time_limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  o.detail.precision(12);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit_s > 0 && elapsed >= time_limit_s) {
    o.pass = false;
    o.detail << " [over time limit " << time_limit_s << " s]";
  }
  if (!o.pass) ++failures;
  std::printf("%s %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", name, elapsed, o.detail.str().c_str());
  std::fflush(stdout);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void cutoff_table(Outcome& o) {
  struct Row {
    int r;
    Index k0;
    double p;
  };
  for (const Row& row : {Row{2, 4, 0.7761155642}, Row{3, 18, 0.9793382628}, Row{4, 98, 0.9977982955},
                         Row{5, 2416, 0.9999471884}}) {
    const CutoffResult c = cutoff_k0(make_params(row.r, 2), 100'000);
    const double err = std::abs(c.p_k0 - row.p);
    o.detail << " (" << row.r << ",2): k0=" << c.k0 << " p=" << c.p_k0 << " err=" << err << ";";
    o.require(c.k0 == row.k0, "k0 for r=" + std::to_string(row.r));
    o.require(err <= 1e-8, "p_k0 for r=" + std::to_string(row.r));
  }
}

void thresholds(Outcome& o) {
  o.require(threshold_r(1) == 3, "r(1) == 3");
  o.require(threshold_r(2) == 7, "r(2) == 7");
  o.require(threshold_r(3) == 10, "r(3) == 10");
  o.detail << " r(s), s=1..10:";
  for (int s = 1; s <= 10; ++s) {
    const int r = threshold_r(s);
    o.detail << " " << r;
    o.require(r >= 2 * s, "r(" + std::to_string(s) + ") >= 2s");
  }
}

void crossing_62(Outcome& o) {
  const Index lo = 213'778, hi = 24'864'713;
  PkStepper stepper(make_params(6, 2));
  double p_lo = 0.0;
  while (stepper.current().k < hi) {
    stepper.advance();
    if (stepper.current().k == lo) p_lo = stepper.current().p;
  }
  const double p_hi = stepper.current().p;
  o.detail << " p_" << lo << "=" << p_lo << " p_" << hi << "=" << p_hi;
  o.require(p_lo < 0.7, "p_213778 < 0.7");
  o.require(p_hi > 0.7, "p_24864713 > 0.7");
  const SandwichResult sw = sandwich_bounds(make_params(6, 2), 0.7, 100'000'000);
  if (sw.last_k_below && sw.first_k_above)
    o.detail << "; enclosure bracket " << *sw.last_k_below << " < k < " << *sw.first_k_above;
}

void pstar_values(Outcome& o) {
  o.require(pstar(make_params(2, 1)).kind == PStarKind::One, "(2,1) -> One");

  // Oracle: rational bisection on p^3 - 2p + 1 over [0, 0.9], where it
  // changes sign exactly once.
  BigRational a = 0, b = BigRational(9, 10);
  auto g = [](const BigRational& p) { return p * p * p - 2 * p + 1; };
  for (int i = 0; i < 60; ++i) {
    const BigRational mid = (a + b) / 2;
    (g(mid) > 0 ? a : b) = mid;
  }
  const double oracle = static_cast<double>((a + b) / 2);
  const PStarResult p31 = pstar(make_params(3, 1));
  o.detail << " (3,1)=" << p31.value << " oracle=" << oracle;
  o.require(p31.kind == PStarKind::Root, "(3,1) -> Root");
  o.require(std::abs(p31.value - oracle) <= 1e-9, "(3,1) vs bisection");
  o.require(std::abs(p31.value - 0.6180339887) <= 1e-9, "(3,1) vs 0.6180339887");

  const PStarResult p72 = pstar(make_params(7, 2));
  o.detail << " (7,2)=" << p72.value;
  o.require(p72.kind == PStarKind::Root && p72.value > 0.55 && p72.value < 0.56, "(7,2) in (0.55, 0.56)");
}

void greedy_band(Outcome& o) {
  const GreedySeries g = greedy_asymptotic_series(1'000'000);
  o.detail << " a_1e6=" << g.rows.back().a << " band violations " << g.lower_band_violations.size() << "/"
           << g.a_band_violations.size();
  o.require(g.lower_band_violations.empty(), "p_k > 1 - 2/log(k+1)");
  o.require(g.a_band_violations.empty(), "1 < a_k < 2");

  const RankKernel kernel(make_params(2, 1));
  double generic = 0.0, worst = 0.0;
  for (Index k = 1; k <= 10'000; ++k) {
    generic = next_pk(kernel, k, generic);
    worst = std::max(worst, std::abs(generic - g.rows[k].p));
  }
  o.detail << " max |closed - generic| = " << worst;
  o.require(worst <= 1e-10, "closed form vs root finder");
}

void doubly_exponential(Outcome& o) {
  for (int r : {2, 3}) {
    const auto params = make_params(r, 2);
    const PkTable table = pk_sequence(params, 41);
    const TailRatioReport ratios = tail_ratio_diagnostic(table);
    double lo = 1e300, hi = -1e300;
    std::vector<Index> outside;
    for (const auto& row : ratios.rows) {
      if (row.k < 20 || row.k > 40) continue;
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
      if (!(row.ratio >= 1.9 && row.ratio <= 2.1)) outside.push_back(row.k);
    }
    o.detail << " (" << r << ",2): ratios in [" << lo << ", " << hi << "]";
    if (!outside.empty()) o.detail << " outside at k=" << outside.front() << ".." << outside.back();
    o.require(outside.empty(), "ratios in [1.9, 2.1] for (" + std::to_string(r) + ",2)");

    const Index k0 = cutoff_k0(params, 100'000).k0;
    const LeadingOrderReport bound = leading_order_bound_check(table, k0);
    o.detail << "; leading-order bound checked " << bound.checked << " k > " << k0 << " (" << bound.unresolved
             << " within rounding);";
    o.require(bound.violations.empty(), "leading-order bound for (" + std::to_string(r) + ",2)");
  }
}

void markov_frequencies(Outcome& o) {
  TreeState state = new_tree(make_params(2, 2), 2024);
  while (state.vertex_count() < 1000) grow_step(state);
  const TransitionReport rep = transition_frequency_test(state, 2, 1'000'000);
  for (const auto& out : rep.outcomes)
    o.detail << " dF=" << out.delta << ": p=" << out.probability << " f=" << out.frequency << ";";
  o.require(rep.all_pass(), "frozen (2,2) tree within 4 sigma");

  const TransitionReport first = transition_frequency_test(new_tree(make_params(2, 2), 7), 1, 10'000);
  o.detail << " m=1: freq(dF=0)=" << first.outcomes[1].frequency;
  o.require(first.outcomes[1].delta == 0 && first.outcomes[1].frequency == 1.0, "m=1 gives dF(1)=0 always");
}

void convergence(Outcome& o) {
  const ConvergenceReport a = convergence_report(make_params(2, 2), 200'000, 32, 6);
  const ConvergenceReport b = convergence_report(make_params(1, 1), 200'000, 32, 6);
  double worst_closed = 0.0;
  for (const auto& row : b.rows)
    worst_closed = std::max(worst_closed, std::abs(row.p_empirical - double(row.k) / (row.k + 2)));
  o.detail << " (2,2) max gap " << a.max_gap(6) << "; (1,1) max gap vs k/(k+2) " << worst_closed;
  o.require(a.max_gap(6) < 0.005, "(2,2) gaps < 0.005");
  o.require(worst_closed < 0.01, "(1,1) gaps < 0.01");
}

void condensation(Outcome& o) {
  const auto params = make_params(3, 1);
  const ConvergenceReport rep = convergence_report(params, 100'000, 16, 20);
  const double p20 = rep.rows.back().p_theory;
  const double empirical = 1.0 - rep.rows.back().p_empirical;
  o.detail << " 1-F(20)/2m=" << empirical << " vs 1-p_20=" << 1.0 - p20
           << "; mean max_degree/2m=" << rep.mean_max_degree_fraction;
  o.require(std::abs(empirical - (1.0 - p20)) <= 0.03, "upper mass within 0.03");
  o.require(rep.mean_max_degree_fraction > 0.1, "max degree fraction > 0.1");
}

void without_replacement(Outcome& o) {
  const auto params = make_params(2, 2, SamplingMode::AllDistinct);
  const Time steps = 100'000;
  const auto sims = run_sims(params, steps, 1, 16, {1 + steps}, 4);
  const PkTable theory = pk_sequence(params, 4);
  double min_pm = 1.0, worst = 0.0;
  for (const auto& sim : sims) min_pm = std::min(min_pm, sim.pm_estimate);
  for (Index k = 1; k <= 4; ++k) {
    double mean = 0.0;
    for (const auto& sim : sims) mean += sim.checkpoints.back().census.fraction(k) / sims.size();
    worst = std::max(worst, std::abs(mean - theory.at(k).p));
  }
  o.detail << " min pm_estimate " << min_pm << "; max gap " << worst;
  o.require(min_pm > 0.99, "pm_estimate > 0.99");
  o.require(worst < 0.01, "gaps < 0.01 for k <= 4");
}

void max_degree_ordering(Outcome& o) {
  // 200 vertices: the initial edge plus 198 steps.
  auto med = [](int r, int s) {
    const auto sims = run_sims(make_params(r, s), 198, 1, 50, {199}, 1);
    std::vector<double> maxima;
    for (const auto& sim : sims) maxima.push_back(static_cast<double>(sim.checkpoints.back().census.max_degree));
    return median(maxima);
  };
  const double min_choice = med(2, 2), plain = med(1, 1), max_choice = med(2, 1);
  o.detail << " medians: min-choice " << min_choice << ", plain " << plain << ", max-choice " << max_choice;
  o.require(min_choice < plain && plain < max_choice, "strict ordering of medians");
}

}  // namespace

int main() {
  check("cutoff-table", 10, cutoff_table);
  check("thresholds", 60, thresholds);
  check("crossing-6-2", 300, crossing_62);
  check("pstar-values", 0, pstar_values);
  check("greedy-band", 30, greedy_band);
  check("doubly-exponential", 0, doubly_exponential);
  check("markov-frequencies", 0, markov_frequencies);
  check("convergence", 300, convergence);
  check("condensation", 0, condensation);
  check("without-replacement", 0, without_replacement);
  check("max-degree-ordering", 0, max_degree_ordering);
  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
