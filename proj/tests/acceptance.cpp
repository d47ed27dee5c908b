// Acceptance run: one line per criterion, exit 1 if a blocking one fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "locallim/experiment.hpp"

using namespace locallim;
using json = nlohmann::json;

namespace {

struct Run {
  std::vector<ReportRow> rows;
  std::string csv;
  double seconds = 0;
};

std::map<std::string, json> configs() {
  return {
      {"UNIFORMITY", {{"suite", "UNIFORMITY"}, {"seed", 1}}},
      {"BOREL", {{"suite", "BOREL"}, {"seed", 1}}},
      {"ER_CENSUS", {{"suite", "ER_CENSUS"}, {"seed", 1}}},
      {"NONCOMPLEX_LIMIT", {{"suite", "NONCOMPLEX_LIMIT"}, {"seed", 1}}},
      {"COMPLEX_PART_LIMIT", {{"suite", "COMPLEX_PART_LIMIT"}, {"seed", 1}}},
      {"CORE_KERNEL_LIMIT", {{"suite", "CORE_KERNEL_LIMIT"}, {"seed", 1}}},
      {"SUBDIVISION_GROWTH", {{"suite", "SUBDIVISION_GROWTH"}, {"seed", 1}}},
      {"TREE_DISTANCE", {{"suite", "TREE_DISTANCE"}, {"seed", 1}}},
      {"CAYLEY_GW", {{"suite", "CAYLEY_GW"}, {"seed", 1}}},
      {"PLANAR_SMALL", {{"suite", "PLANAR_SMALL"}, {"seed", 1}}},
      {"MIXTURE", {{"suite", "MIXTURE"}, {"seed", 1}}},
      {"PLANAR_STRUCTURE", {{"suite", "PLANAR_STRUCTURE"}, {"seed", 1}}},
  };
}

Run run(const json& cfg) {
  auto start = std::chrono::steady_clock::now();
  Run r;
  r.rows = run_suite(config_from_json(cfg));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.csv = to_csv(r.rows);
  return r;
}

bool all_pass(const Run& r) {
  if (r.rows.empty()) return false;
  for (const auto& row : r.rows)
    if (!row.pass) return false;
  return true;
}

const ReportRow* find(const Run& r, const std::string& statistic) {
  for (const auto& row : r.rows)
    if (row.statistic == statistic) return &row;
  return nullptr;
}

const ReportRow* find_prefix(const Run& r, const std::string& prefix) {
  for (const auto& row : r.rows)
    if (row.statistic.rfind(prefix, 0) == 0) return &row;
  return nullptr;
}

std::string failing(const Run& r) {
  std::string out;
  for (const auto& row : r.rows)
    if (!row.pass) {
      char buf[512];
      std::snprintf(buf, sizeof buf, " [%s %s=%.6g tol=%.6g; %s]", row.parameters.c_str(),
                    row.statistic.c_str(), row.observed, row.tolerance, row.reason.c_str());
      out += buf;
    }
  return out;
}

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  auto cfgs = configs();
  std::map<std::string, Run> runs;
  auto get = [&](const std::string& suite) -> const Run& {
    auto it = runs.find(suite);
    if (it == runs.end()) it = runs.emplace(suite, run(cfgs.at(suite))).first;
    return it->second;
  };
  std::map<int, bool> verdict;
  char buf[512];

  {
    const Run& r = get("UNIFORMITY");
    double worst = 0;
    int spaces = 0, over = 0;
    for (const auto& row : r.rows)
      if (row.statistic == "tv") {
        ++spaces;
        worst = std::max(worst, row.observed);
        over += !row.pass;
      }
    bool ok = all_pass(r) && r.seconds < 30;
    std::snprintf(buf, sizeof buf, "spaces=%d over_tolerance=%d max_tv=%.5f limit=0.01 runtime=%.1fs limit=30s",
                  spaces, over, worst, r.seconds);
    report(1, ok, buf + failing(r));
    verdict[1] = ok;
  }
  {
    const Run& r = get("BOREL");
    const auto* sum = find(r, "sum_abs_dev_k1_10");
    const auto* cap = find(r, "capped_fraction");
    bool ok = all_pass(r) && sum && sum->observed < 0.005 && cap && cap->observed < 0.01 && r.seconds < 60;
    std::snprintf(buf, sizeof buf, "sum_abs_dev=%.5f limit=0.005 capped=%.5f runtime=%.1fs limit=60s",
                  sum ? sum->observed : -1, cap ? cap->observed : -1, r.seconds);
    report(2, ok, buf + failing(r));
    verdict[2] = ok;
  }
  {
    const Run& r = get("ER_CENSUS");
    double worst = 0;
    int seeds = 0;
    for (const auto& row : r.rows)
      if (row.statistic == "max_abs_dev") {
        ++seeds;
        worst = std::max(worst, row.observed);
      }
    bool ok = all_pass(r) && seeds == 5 && worst < 0.01 && r.seconds < 120;
    std::snprintf(buf, sizeof buf, "seeds=%d max_abs_dev=%.5f limit=0.01 runtime=%.1fs limit=120s", seeds,
                  worst, r.seconds);
    report(3, ok, buf + failing(r));
    verdict[3] = ok;
  }
  {
    const Run& r = get("NONCOMPLEX_LIMIT");
    const auto* tv = find_prefix(r, "tv_vs_GW");
    bool ok = all_pass(r) && tv && tv->observed < 0.05 && r.seconds < 300;
    std::snprintf(buf, sizeof buf, "tv=%.5f limit=0.05 runtime=%.1fs limit=300s", tv ? tv->observed : -1,
                  r.seconds);
    report(4, ok, buf + failing(r));
    verdict[4] = ok;
  }
  {
    const Run& r = get("COMPLEX_PART_LIMIT");
    const auto* tv = find_prefix(r, "tv_vs_");
    bool ok = all_pass(r) && tv && tv->observed < 0.05;
    std::snprintf(buf, sizeof buf, "tv=%.5f limit=0.05 runtime=%.1fs", tv ? tv->observed : -1, r.seconds);
    report(5, ok, buf + failing(r));
    verdict[5] = ok;
  }
  {
    const Run& r = get("CORE_KERNEL_LIMIT");
    const auto* two = find(r, "freq_2_ray_code");
    const auto* three = find(r, "freq_3_ray_code");
    bool ok = all_pass(r) && two && two->observed >= 0.99 && three && three->observed >= 0.95;
    std::snprintf(buf, sizeof buf, "freq_2_ray=%.4f limit>=0.99 freq_3_ray=%.4f limit>=0.95",
                  two ? two->observed : -1, three ? three->observed : -1);
    report(6, ok, buf + failing(r));
    verdict[6] = ok;
  }
  {
    const Run& r = get("SUBDIVISION_GROWTH");
    std::string medians;
    for (const auto& row : r.rows)
      if (row.statistic == "median_subdivision") {
        std::snprintf(buf, sizeof buf, "%s%.1f", medians.empty() ? "" : "/", row.observed);
        medians += buf;
      }
    const auto* inc = find(r, "medians_strictly_increasing");
    bool ok = all_pass(r) && inc && inc->observed == 1;
    report(7, ok, "medians=" + medians + " last within factor 2 of k/6" + failing(r));
    verdict[7] = ok;
  }
  {
    const Run& r = get("TREE_DISTANCE");
    const auto* frac = find(r, "frac_dist>n^(1/3)");
    const auto* med = find(r, "median_dist/sqrt(n)");
    const auto* win = find(r, "window_check_median/sqrt(n)");
    bool ok = all_pass(r) && frac && frac->observed >= 0.99 && med && med->observed >= 0.8 &&
              med->observed <= 1.6 && win && win->pass;
    std::snprintf(buf, sizeof buf, "frac=%.4f limit>=0.99 (%s) median/sqrt(n)=%.3f window=[0.8,1.6]",
                  frac ? frac->observed : -1, frac ? frac->reason.c_str() : "", med ? med->observed : -1);
    report(8, ok, buf + failing(r));
    verdict[8] = ok;
  }
  {
    const Run& r = get("CAYLEY_GW");
    const auto* d = find(r, "max_abs_diff");
    bool ok = all_pass(r) && d && d->observed <= 1e-9;
    std::snprintf(buf, sizeof buf, "max_abs_diff=%.3g limit=1e-9", d ? d->observed : -1);
    report(9, ok, buf + failing(r));
    verdict[9] = ok;
  }
  {
    const Run& r = get("PLANAR_SMALL");
    const auto* tv = find(r, "tv_planar_vs_gnm");
    bool ok = all_pass(r) && tv && tv->observed < 0.05;
    std::snprintf(buf, sizeof buf, "tv=%.5f limit=0.05", tv ? tv->observed : -1);
    report(10, ok, buf + failing(r));
    verdict[10] = ok;
  }
  {
    const Run& r = get("MIXTURE");
    const auto* a = find(r, "mixture_vs_pointwise_max_abs_diff");
    const auto* b = find(r, "predicted_III_uniform_vs_mixture_max_abs_diff");
    bool ok = all_pass(r) && a && a->observed == 0 && b && b->observed == 0;
    std::snprintf(buf, sizeof buf, "pointwise_diff=%.3g predicted_diff=%.3g (exact)", a ? a->observed : -1,
                  b ? b->observed : -1);
    report(11, ok, buf + failing(r));
    verdict[11] = ok;
  }
  {
    const Run& r = get("PLANAR_STRUCTURE");
    const auto* v = find(r, "mean_v(L)/n");
    bool ok = all_pass(r) && v && std::abs(v->observed - 0.5) <= 0.15;
    std::snprintf(buf, sizeof buf, "mean_v(L)/n=%.4f target=0.5+-0.15 diagnostic (MCMC) runtime=%.1fs",
                  v ? v->observed : -1, r.seconds);
    report(12, ok, buf + failing(r));
    verdict[12] = ok;
  }
  {
    std::string mismatched;
    for (const auto& [suite, cfg] : cfgs)
      if (run(cfg).csv != get(suite).csv) mismatched += " " + suite;
    bool ok = mismatched.empty();
    report(13, ok, ok ? "all 12 suites byte-identical on rerun" : "mismatch:" + mismatched);
    verdict[13] = ok;
  }

  // Criterion 12 blocks only together with criterion 10.
  bool blocked = false;
  for (const auto& [id, ok] : verdict) {
    if (ok) continue;
    if (id == 12 && verdict[10]) continue;
    blocked = true;
  }
  return blocked ? 1 : 0;
}
