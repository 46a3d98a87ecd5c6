// qstat: statistical analysis of subjective quality (opinion score) data.
//
// Subcommands: describe, ttest, anova, check-variance, workflow, permute,
// sim clt, sim two-step, sim treatment. JSON goes to stdout or --out;
// histograms to --hist as CSV.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qstat/dataset.hpp"
#include "qstat/json_io.hpp"

namespace {

using qstat::ordered_json;

void emit(const ordered_json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << text;
  }
}

void emit_histogram(const qstat::HistogramData& h, const std::string& path) {
  if (path.empty()) return;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open histogram file: " + path);
  qstat::write_histogram_csv(h, os);
}

std::vector<qstat::GroupSample> select_groups(const qstat::OpinionDataset& ds,
                                              const std::vector<std::string>& conditions) {
  if (conditions.empty()) return ds.groups();
  std::vector<qstat::GroupSample> out;
  for (const auto& c : conditions) out.push_back(ds.group(c));
  return out;
}

qstat::DistSpec make_dist(const std::string& name,
                          const std::vector<std::string>& params) {
  const auto kind = qstat::dist_kind_from_string(name);
  // Table-style defaults for the four sampling distributions
  qstat::DistSpec spec;
  switch (kind) {
    case qstat::DistKind::normal: spec = qstat::DistSpec::normal(0.0, 1.0); break;
    case qstat::DistKind::uniform: spec = qstat::DistSpec::uniform(0.0, 1.0); break;
    case qstat::DistKind::exponential: spec = qstat::DistSpec::exponential(0.5); break;
    case qstat::DistKind::beta: spec = qstat::DistSpec::beta(0.5, 0.5); break;
    case qstat::DistKind::student_t: spec = qstat::DistSpec::student_t(1.0); break;
    case qstat::DistKind::f: spec = qstat::DistSpec::f(1.0, 1.0); break;
    case qstat::DistKind::chi_squared: spec = qstat::DistSpec::chi_squared(1.0); break;
  }
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--param expects key=value, got: " + p);
    spec.params[p.substr(0, eq)] = std::stod(p.substr(eq + 1));
  }
  spec.validate();
  return spec;
}

qstat::Tail parse_tail(const std::string& s) {
  if (s == "two_sided") return qstat::Tail::two_sided;
  if (s == "left") return qstat::Tail::left;
  if (s == "right") return qstat::Tail::right;
  throw std::runtime_error("unknown tail: " + s);
}

ordered_json base_report(std::optional<qstat::RngSeed> seed) {
  ordered_json j;
  j["schema_version"] = qstat::kSchemaVersion;
  j["seed"] = seed ? qstat::to_json(*seed) : ordered_json(nullptr);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistical analysis toolkit for subjective quality data"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  app.add_option("--out", out_path, "write the report to this file instead of stdout")
      ->configurable(false);

  // --- describe ---
  auto* cmd_describe = app.add_subcommand("describe", "per-condition summary statistics");
  std::string d_csv;
  double d_pdu_threshold = 3.0;
  cmd_describe->add_option("csv", d_csv, "input CSV (subject,condition,score)")->required();
  cmd_describe->add_option("--pdu-threshold", d_pdu_threshold,
                           "scores strictly below this count as dissatisfied");

  // --- ttest ---
  auto* cmd_ttest = app.add_subcommand("ttest", "two-sample t-test on two conditions");
  std::string t_csv, t_c1, t_c2, t_method = "pooled", t_tail = "two_sided";
  cmd_ttest->add_option("csv", t_csv)->required();
  cmd_ttest->add_option("--c1", t_c1, "first condition id")->required();
  cmd_ttest->add_option("--c2", t_c2, "second condition id")->required();
  cmd_ttest->add_option("--method", t_method, "pooled|welch");
  cmd_ttest->add_option("--tail", t_tail, "two_sided|left|right");

  // --- anova ---
  auto* cmd_anova = app.add_subcommand("anova", "one-way ANOVA across conditions");
  std::string a_csv;
  std::vector<std::string> a_conditions;
  cmd_anova->add_option("csv", a_csv)->required();
  cmd_anova->add_option("--conditions", a_conditions,
                        "condition ids (default: all)")->delimiter(',');

  // --- check-variance ---
  auto* cmd_var = app.add_subcommand("check-variance",
                                     "variance-homogeneity empirical rule");
  std::string v_csv;
  double v_threshold = 0.25;
  cmd_var->add_option("csv", v_csv)->required();
  cmd_var->add_option("--threshold", v_threshold, "min/max variance ratio threshold");

  // --- workflow ---
  auto* cmd_wf = app.add_subcommand("workflow", "recommended decision procedure");
  std::string w_csv;
  std::vector<std::string> w_conditions;
  double w_alpha = 0.05, w_threshold = 0.25;
  bool w_mean_not_adequate = false;
  std::size_t w_iters = 100000;
  std::uint64_t w_seed = 0;
  cmd_wf->add_option("csv", w_csv)->required();
  cmd_wf->add_option("--conditions", w_conditions)->delimiter(',');
  cmd_wf->add_option("--alpha", w_alpha);
  cmd_wf->add_option("--threshold", w_threshold);
  cmd_wf->add_flag("--mean-not-adequate", w_mean_not_adequate,
                   "assert that the mean does not summarize the scores adequately");
  cmd_wf->add_option("--iters", w_iters, "permutation iterations");
  cmd_wf->add_option("--seed", w_seed, "master seed for the permutation branch");

  // --- permute ---
  auto* cmd_perm = app.add_subcommand("permute", "permutation test + histogram export");
  std::string p_csv, p_kind = "t", p_hist;
  std::vector<std::string> p_conditions;
  std::size_t p_iters = 100000, p_bins = 100;
  std::uint64_t p_seed = 0;
  bool p_seed_set = false;
  cmd_perm->add_option("csv", p_csv)->required();
  cmd_perm->add_option("--kind", p_kind, "t (two conditions) or f (k conditions)");
  cmd_perm->add_option("--conditions", p_conditions)->delimiter(',');
  cmd_perm->add_option("--iters", p_iters);
  cmd_perm->add_option("--seed", p_seed)->each([&](const std::string&) { p_seed_set = true; });
  cmd_perm->add_option("--hist", p_hist, "histogram CSV output path");
  cmd_perm->add_option("--bins", p_bins);

  // --- sim ---
  auto* cmd_sim = app.add_subcommand("sim", "Monte Carlo experiments");
  cmd_sim->require_subcommand(1);

  auto* sim_clt = cmd_sim->add_subcommand(
      "clt", "sampling distribution of ANOVA F under a common population");
  std::string c_dist = "normal", c_hist;
  std::vector<std::string> c_params;
  std::size_t c_k = 5, c_n = 25, c_iters = 100000, c_bins = 100;
  std::uint64_t c_seed = 0;
  bool c_seed_set = false;
  sim_clt->add_option("--dist", c_dist, "normal|uniform|exponential|beta");
  sim_clt->add_option("--param", c_params, "distribution parameter key=value");
  sim_clt->add_option("--k", c_k, "group count");
  sim_clt->add_option("--n", c_n, "per-group size");
  sim_clt->add_option("--iters", c_iters);
  sim_clt->add_option("--seed", c_seed)->each([&](const std::string&) { c_seed_set = true; });
  sim_clt->add_option("--hist", c_hist);
  sim_clt->add_option("--bins", c_bins);

  auto* sim_two = cmd_sim->add_subcommand(
      "two-step", "Type-I error of normality-gated testing vs direct testing");
  std::string s_dist = "normal";
  std::vector<std::string> s_params;
  std::size_t s_n = 25, s_iters = 10000;
  double s_alpha = 0.05;
  std::uint64_t s_seed = 0;
  bool s_seed_set = false;
  sim_two->add_option("--dist", s_dist);
  sim_two->add_option("--param", s_params);
  sim_two->add_option("--n", s_n, "per-group size");
  sim_two->add_option("--alpha", s_alpha);
  sim_two->add_option("--iters", s_iters);
  sim_two->add_option("--seed", s_seed)->each([&](const std::string&) { s_seed_set = true; });

  auto* sim_treat = cmd_sim->add_subcommand(
      "treatment", "synthetic opinion scores under a treatment-effect model");
  double tr_mu = 4.0, tr_noise = 0.5, tr_hetero = 0.0;
  std::vector<double> tr_effects;
  std::string tr_mode = "systematic";
  std::size_t tr_subjects = 26;
  std::uint64_t tr_seed = 0;
  bool tr_seed_set = false;
  sim_treat->add_option("--mu", tr_mu, "baseline MOS");
  sim_treat->add_option("--effects", tr_effects, "per-condition effect values")
      ->delimiter(',')->required();
  sim_treat->add_option("--noise-sigma", tr_noise);
  sim_treat->add_option("--mode", tr_mode, "systematic|heterogeneous");
  sim_treat->add_option("--hetero-sigma", tr_hetero);
  sim_treat->add_option("--subjects", tr_subjects);
  sim_treat->add_option("--seed", tr_seed)->each([&](const std::string&) { tr_seed_set = true; });

  for (auto* sc : app.get_subcommands(nullptr)) {
    sc->fallthrough();
    for (auto* nested : sc->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (*cmd_describe) {
      const auto ds = qstat::load_csv(d_csv);
      ordered_json j = base_report(std::nullopt);
      j["pdu_threshold"] = d_pdu_threshold;
      ordered_json conds = ordered_json::array();
      for (const auto& g : ds.groups()) {
        ordered_json e = qstat::to_json(qstat::moments(g));
        e["id"] = g.id;
        e["pdu"] = qstat::pdu(g, d_pdu_threshold);
        conds.push_back(e);
      }
      j["conditions"] = conds;
      emit(j, out_path);
    } else if (*cmd_ttest) {
      const auto ds = qstat::load_csv(t_csv);
      const auto g1 = ds.group(t_c1);
      const auto g2 = ds.group(t_c2);
      const auto tail = parse_tail(t_tail);
      qstat::TestResult r;
      if (t_method == "pooled")
        r = qstat::t_test_pooled(g1, g2, tail);
      else if (t_method == "welch")
        r = qstat::t_test_welch(g1, g2, tail);
      else
        throw std::runtime_error("unknown --method: " + t_method);
      ordered_json j = base_report(std::nullopt);
      j["conditions"] = {t_c1, t_c2};
      j["result"] = qstat::to_json(r);
      emit(j, out_path);
    } else if (*cmd_anova) {
      const auto ds = qstat::load_csv(a_csv);
      const auto groups = select_groups(ds, a_conditions);
      const auto r = qstat::anova_oneway(groups);
      ordered_json j = base_report(std::nullopt);
      ordered_json ids = ordered_json::array();
      for (const auto& g : groups) ids.push_back(g.id);
      j["conditions"] = ids;
      j["result"] = qstat::to_json(r);
      emit(j, out_path);
    } else if (*cmd_var) {
      const auto ds = qstat::load_csv(v_csv);
      const auto groups = ds.groups();
      const auto vc = qstat::variance_homogeneity_check(groups, v_threshold);
      ordered_json j = base_report(std::nullopt);
      j["threshold"] = v_threshold;
      j["variance_ratio"] = vc.ratio;
      j["heterogeneous"] = vc.heterogeneous;
      j["offending_groups"] = vc.offending_groups;
      j["balanced"] = qstat::balanced_check(groups);
      emit(j, out_path);
    } else if (*cmd_wf) {
      const auto ds = qstat::load_csv(w_csv);
      const auto groups = select_groups(ds, w_conditions);
      qstat::WorkflowConfig cfg;
      cfg.alpha = w_alpha;
      cfg.variance_ratio_threshold = w_threshold;
      cfg.mean_adequate = !w_mean_not_adequate;
      cfg.permutation_iters = w_iters;
      cfg.seed = {w_seed, 0};
      const auto report = qstat::recommend(groups, cfg);
      ordered_json j = qstat::to_json(report);
      j["seed"] = qstat::to_json(cfg.seed);
      emit(j, out_path);
    } else if (*cmd_perm) {
      if (!p_seed_set) throw std::runtime_error("permute requires --seed");
      const auto ds = qstat::load_csv(p_csv);
      const auto groups = select_groups(ds, p_conditions);
      qstat::StatKind kind;
      if (p_kind == "t")
        kind = qstat::StatKind::t_pooled;
      else if (p_kind == "f")
        kind = qstat::StatKind::f_anova;
      else
        throw std::runtime_error("unknown --kind: " + p_kind);
      const qstat::RngSeed seed{p_seed, 0};
      const auto dist = qstat::permutation_null(groups, kind, p_iters, seed, p_bins);
      qstat::TestResult observed;
      qstat::Tail tail;
      if (kind == qstat::StatKind::t_pooled) {
        observed = qstat::t_test_pooled(groups.at(0), groups.at(1));
        tail = qstat::Tail::two_sided;
      } else {
        observed = qstat::anova_oneway(groups);
        tail = qstat::Tail::right;
      }
      ordered_json j = base_report(seed);
      ordered_json ids = ordered_json::array();
      for (const auto& g : groups) ids.push_back(g.id);
      j["conditions"] = ids;
      j["observed"] = qstat::to_json(observed);
      j["permutation_p"] =
          qstat::permutation_p_value(observed.statistic, dist, tail);
      j["empirical_distribution"] = qstat::to_json(dist);
      emit(j, out_path);
      emit_histogram(dist.histogram, p_hist);
    } else if (*sim_clt) {
      if (!c_seed_set) throw std::runtime_error("sim clt requires --seed");
      qstat::CltExperimentConfig cfg;
      cfg.dist = make_dist(c_dist, c_params);
      cfg.k = c_k;
      cfg.n = c_n;
      cfg.n_iter = c_iters;
      cfg.seed = {c_seed, 0};
      cfg.bins = c_bins;
      const auto dist = qstat::clt_experiment(cfg);
      ordered_json j = base_report(cfg.seed);
      j["config"] = {{"dist", qstat::to_json(cfg.dist)},
                     {"k", cfg.k},
                     {"n", cfg.n},
                     {"n_iter", cfg.n_iter},
                     {"bins", cfg.bins}};
      j["empirical_distribution"] = qstat::to_json(dist);
      emit(j, out_path);
      emit_histogram(dist.histogram, c_hist);
    } else if (*sim_two) {
      if (!s_seed_set) throw std::runtime_error("sim two-step requires --seed");
      const qstat::RngSeed seed{s_seed, 0};
      const auto spec = make_dist(s_dist, s_params);
      const auto r = qstat::two_step_experiment(s_n, spec, s_alpha, s_iters, seed);
      ordered_json j = base_report(seed);
      j["config"] = {{"dist", qstat::to_json(spec)},
                     {"n", s_n},
                     {"alpha", s_alpha},
                     {"n_iter", s_iters}};
      j["result"] = qstat::to_json(r);
      emit(j, out_path);
    } else if (*sim_treat) {
      if (!tr_seed_set) throw std::runtime_error("sim treatment requires --seed");
      qstat::TreatmentConfig cfg;
      cfg.mu_org = tr_mu;
      cfg.effects = tr_effects;
      cfg.noise_sigma = tr_noise;
      cfg.hetero_sigma = tr_hetero;
      cfg.n_subjects = tr_subjects;
      cfg.seed = {tr_seed, 0};
      if (tr_mode == "systematic")
        cfg.mode = qstat::TreatmentMode::systematic;
      else if (tr_mode == "heterogeneous")
        cfg.mode = qstat::TreatmentMode::heterogeneous;
      else
        throw std::runtime_error("unknown --mode: " + tr_mode);
      const auto groups = qstat::generate_treatment_groups(cfg);
      qstat::OpinionDataset ds;
      for (const auto& g : groups)
        for (std::size_t i = 0; i < g.scores.size(); ++i)
          ds.records.push_back({"s" + std::to_string(i + 1), g.id, g.scores[i]});
      if (out_path.empty()) {
        qstat::write_csv(ds, std::cout);
      } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file: " + out_path);
        qstat::write_csv(ds, os);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
